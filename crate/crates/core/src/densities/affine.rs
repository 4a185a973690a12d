use alloc::format;

use crate::error::{Error, Result};

/// An invertible affine change of coordinates `s -> scale * s + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    scale: f64,
    offset: f64,
}

impl AffineMap {
    pub fn new(scale: f64, offset: f64) -> Result<Self> {
        if scale == 0.0 || !scale.is_finite() {
            return Err(Error::InvalidParameter {
                name: "scale",
                reason: format!("must be nonzero and finite, got {scale}"),
            });
        }
        if !offset.is_finite() {
            return Err(Error::InvalidParameter {
                name: "offset",
                reason: format!("must be finite, got {offset}"),
            });
        }
        Ok(Self { scale, offset })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn apply(&self, s: f64) -> f64 {
        self.scale * s + self.offset
    }

    /// The map sending `scale * s + offset` back to `s`.
    pub fn inverse(&self) -> Self {
        Self {
            scale: 1.0 / self.scale,
            offset: -self.offset / self.scale,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_scale_rejected() {
        assert!(AffineMap::new(0.0, 1.0).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let u = AffineMap::new(-2.5, 3.0).unwrap();
        let inv = u.inverse();
        for s in [-4.0, 0.0, 1.5, 7.25] {
            assert!((inv.apply(u.apply(s)) - s).abs() < 1e-12);
        }
    }
}
