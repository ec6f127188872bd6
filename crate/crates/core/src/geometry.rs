//! Complex helpers and the target regions that show up as Ω or Δ.
//!
//! Membership here is exact and strict. Any tolerance band belongs to the
//! caller (see [`crate::admissibility`]).

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type ComplexValue = Complex64;

/// Principal square root, branch cut on the negative real axis.
pub fn principal_sqrt(w: ComplexValue) -> ComplexValue {
    // Stable form: avoids cancellation when |Re w| dominates.
    if w.re == 0.0 && w.im == 0.0 {
        return ComplexValue::new(0.0, 0.0);
    }
    let modulus = w.norm();
    let half = ((modulus + w.re.abs()) / 2.0).sqrt();
    if w.re >= 0.0 {
        ComplexValue::new(half, w.im / (2.0 * half))
    } else {
        let im = if w.im >= 0.0 { half } else { -half };
        ComplexValue::new(w.im.abs() / (2.0 * half), im)
    }
}

/// A codomain constraint: the lemniscate interior Δ, a disk, a left half-plane,
/// or the Möbius image of (2+z)/(2−z).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TargetRegion {
    /// `{w : |w² − 1| < 1, Re w > 0}`
    LemniscateDelta,
    /// `{w : |w − center| < radius}`
    Disk { center: ComplexValue, radius: f64 },
    /// `{w : Re w < bound}`
    HalfPlaneReLess { bound: f64 },
    /// `{w : |2(w − 1)/(w + 1)| < 1}`
    MoebiusDisk,
}

impl TargetRegion {
    pub fn disk(center: f64, radius: f64) -> Self {
        assert!(radius > 0.0, "disk radius must be positive");
        TargetRegion::Disk {
            center: ComplexValue::new(center, 0.0),
            radius,
        }
    }

    /// Strict interior test.
    pub fn contains(&self, w: ComplexValue) -> Result<bool> {
        Ok(self.margin(w)? < 0.0)
    }

    /// Signed defect: negative exactly on the interior, zero on the boundary.
    ///
    /// For Δ this is `max(|w²−1| − 1, −Re w)`.
    pub fn margin(&self, w: ComplexValue) -> Result<f64> {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite point {w}")));
        }
        Ok(match *self {
            TargetRegion::LemniscateDelta => ((w * w - 1.0).norm() - 1.0).max(-w.re),
            TargetRegion::Disk { center, radius } => (w - center).norm() - radius,
            TargetRegion::HalfPlaneReLess { bound } => w.re - bound,
            TargetRegion::MoebiusDisk => {
                let den = w + 1.0;
                if den.re == 0.0 && den.im == 0.0 {
                    return Err(Error::Pole(w.to_string()));
                }
                (2.0 * (w - 1.0) / den).norm() - 1.0
            }
        })
    }

    /// The defining quantity whose sublevel set carves out the region:
    /// `|w²−1|²` for Δ, `|w−c|²` for disks, `Re w` for the half-plane and
    /// `|2(w−1)/(w+1)|²` for the Möbius disk. Compare against [`Self::level_threshold`].
    pub fn level(&self, w: ComplexValue) -> Result<f64> {
        Ok(match *self {
            TargetRegion::LemniscateDelta => (w * w - 1.0).norm_sqr(),
            TargetRegion::Disk { center, .. } => (w - center).norm_sqr(),
            TargetRegion::HalfPlaneReLess { .. } => w.re,
            TargetRegion::MoebiusDisk => {
                let den = w + 1.0;
                if den.re == 0.0 && den.im == 0.0 {
                    return Err(Error::Pole(w.to_string()));
                }
                (2.0 * (w - 1.0) / den).norm_sqr()
            }
        })
    }

    pub fn level_threshold(&self) -> f64 {
        match *self {
            TargetRegion::LemniscateDelta | TargetRegion::MoebiusDisk => 1.0,
            TargetRegion::Disk { radius, .. } => radius * radius,
            TargetRegion::HalfPlaneReLess { bound } => bound,
        }
    }

    pub fn is_disk(&self) -> bool {
        matches!(self, TargetRegion::Disk { .. })
    }

    pub fn name(&self) -> String {
        match *self {
            TargetRegion::LemniscateDelta => "lemniscate".to_string(),
            TargetRegion::Disk { center, radius } => {
                format!("disk(center={}, radius={})", center, radius)
            }
            TargetRegion::HalfPlaneReLess { bound } => format!("re<{}", bound),
            TargetRegion::MoebiusDisk => "moebius".to_string(),
        }
    }
}

/// Point `√(2cos2θ)·e^{iθ}` on the right lemniscate loop.
pub fn lemniscate_boundary(theta: f64) -> Result<ComplexValue> {
    if !theta.is_finite() || theta.abs() >= FRAC_PI_4 {
        return Err(Error::Domain(format!("|theta| must be < pi/4, got {theta}")));
    }
    let rho = (2.0 * (2.0 * theta).cos()).sqrt();
    Ok(ComplexValue::from_polar(rho, theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_6, SQRT_2};

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::new(re, im)
    }

    #[test]
    fn delta_membership() {
        let delta = TargetRegion::LemniscateDelta;
        assert!(delta.contains(c(1.0, 0.0)).unwrap());
        assert!(!delta.contains(c(SQRT_2, 0.0)).unwrap());
        // |w²−1| = |0.35+0.72i| ≈ 0.8006
        assert!(delta.contains(c(1.2, 0.3)).unwrap());
        assert!(((c(1.2, 0.3) * c(1.2, 0.3) - 1.0).norm() - 0.800562).abs() < 1e-6);
        // left loop of the lemniscate is excluded
        assert!(!delta.contains(c(-1.0, 0.0)).unwrap());
    }

    #[test]
    fn disk_membership() {
        let d = TargetRegion::disk(1.0, 1.0 / (2.0 * SQRT_2));
        assert!(d.contains(c(1.0, 0.3)).unwrap());
        assert!(!d.contains(c(1.0, 0.36)).unwrap());
    }

    #[test]
    fn margins() {
        assert_eq!(TargetRegion::LemniscateDelta.margin(c(1.0, 0.0)).unwrap(), -1.0);
        assert_eq!(TargetRegion::disk(1.0, 1.0).margin(c(1.0, 0.0)).unwrap(), -1.0);
        let m = TargetRegion::LemniscateDelta.margin(c(SQRT_2, 0.0)).unwrap();
        assert!(m.abs() < 1e-15);
        assert_eq!(
            TargetRegion::HalfPlaneReLess { bound: 0.25 }.margin(c(0.5, 3.0)).unwrap(),
            0.25
        );
    }

    #[test]
    fn moebius_pole_is_an_error() {
        let err = TargetRegion::MoebiusDisk.contains(c(-1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::Pole(_)));
        assert!(TargetRegion::MoebiusDisk.contains(c(1.0, 0.0)).unwrap());
        // h(z) = (2+z)/(2-z) maps 0.99 close to 2.96
        assert!(TargetRegion::MoebiusDisk.contains(c(2.9, 0.0)).unwrap());
        assert!(!TargetRegion::MoebiusDisk.contains(c(3.1, 0.0)).unwrap());
    }

    #[test]
    fn non_finite_rejected() {
        assert!(TargetRegion::LemniscateDelta.margin(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn boundary_points() {
        let w = lemniscate_boundary(0.0).unwrap();
        assert!((w - c(SQRT_2, 0.0)).norm() < 1e-15);
        let w = lemniscate_boundary(FRAC_PI_6).unwrap();
        assert!((w - ComplexValue::from_polar(1.0, FRAC_PI_6)).norm() < 1e-12);
        let w = lemniscate_boundary(FRAC_PI_4 - 1e-4).unwrap();
        assert!(w.norm() < 0.021);
        assert!(lemniscate_boundary(FRAC_PI_4).is_err());
        assert!(lemniscate_boundary(-1.0).is_err());
    }

    #[test]
    fn sqrt_is_principal() {
        for &(re, im) in &[(4.0, 0.0), (-4.0, 1e-300), (0.0, 2.0), (-3.0, -4.0), (1e-6, 1e-6)] {
            let w = c(re, im);
            let r = principal_sqrt(w);
            assert!(r.re >= 0.0);
            assert!((r * r - w).norm() <= 1e-12 * w.norm());
        }
        assert_eq!(principal_sqrt(c(0.0, 0.0)), c(0.0, 0.0));
    }
}
