//! Boundary jets of q(z) = √(1+z).
//!
//! On `|ζ| = 1` the dominant takes the value `r = √(2cos2θ)·e^{iθ}` and the
//! admissibility data are
//!
//! ```text
//! s = m·e^{3iθ} / (2√(2cos2θ)),     Re(t·e^{−3iθ}) ≥ m(3m−4) / (8√(2cos2θ)),
//! ```
//!
//! with `θ ∈ (−π/4, π/4)` and `m ≥ 1`.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{lemniscate_boundary, ComplexValue};

/// Default distance kept from the nodes `θ = ±π/4`, where sec 2θ blows up.
pub const THETA_MARGIN: f64 = 1e-6;

/// Admissibility data at one boundary parameter `(θ, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleTriple {
    pub theta: f64,
    pub m: f64,
    /// `q(ζ)`
    pub r: ComplexValue,
    /// `m·ζ·q'(ζ)`
    pub s: ComplexValue,
    /// Lower bound on `Re(t·e^{−3iθ})`.
    pub tau_min: f64,
    /// The boundary point of the unit circle that produced `r`.
    pub zeta: ComplexValue,
}

/// `{t : Re(t·conj(direction)) ≥ offset}`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub direction: ComplexValue,
    pub offset: f64,
}

impl HalfPlane {
    pub fn contains(&self, t: ComplexValue) -> bool {
        (t * self.direction.conj()).re >= self.offset
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() || theta.abs() >= FRAC_PI_4 {
        return Err(Error::Domain(format!("|theta| must be < pi/4, got {theta}")));
    }
    Ok(())
}

pub fn make_triple(theta: f64, m: f64) -> Result<AdmissibleTriple> {
    check_theta(theta)?;
    if !(m >= 1.0) || !m.is_finite() {
        return Err(Error::Domain(format!("m must be a finite value >= 1, got {m}")));
    }
    let c2 = (2.0 * theta).cos();
    let root = (2.0 * c2).sqrt();
    let r = lemniscate_boundary(theta)?;
    let s = ComplexValue::from_polar(m / (2.0 * root), 3.0 * theta);
    let tau_min = m * (3.0 * m - 4.0) / (8.0 * root);
    let zeta = ComplexValue::from_polar(2.0 * c2, 2.0 * theta) - 1.0;
    Ok(AdmissibleTriple {
        theta,
        m,
        r,
        s,
        tau_min,
        zeta,
    })
}

/// `Re(e^{−2iθ}/(4cos2θ) + 1/2)`, the value of `Re(ζq''(ζ)/q'(ζ) + 1)` on the
/// boundary. Identically 3/4.
pub fn curvature_identity(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let v = ComplexValue::from_polar(1.0, -2.0 * theta) / (4.0 * (2.0 * theta).cos()) + 0.5;
    Ok(v.re)
}

/// The constraint on the second-order slot `t` as a half-plane.
pub fn t_halfplane(triple: &AdmissibleTriple) -> HalfPlane {
    HalfPlane {
        direction: ComplexValue::from_polar(1.0, 3.0 * triple.theta),
        offset: triple.tau_min,
    }
}

/// Symmetric θ grid on `[−π/4 + margin, π/4 − margin]`. With an odd number of
/// points the middle sample is exactly zero.
pub fn theta_grid(points: usize, margin: f64) -> Vec<f64> {
    let half = FRAC_PI_4 - margin;
    if points == 1 {
        return vec![0.0];
    }
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| half * (2.0 * i as f64 / last - 1.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_6, SQRT_2};

    #[test]
    fn triple_at_zero() {
        let t = make_triple(0.0, 1.0).unwrap();
        assert!((t.r.re - SQRT_2).abs() < 1e-15 && t.r.im == 0.0);
        assert!((t.s.re - 0.353553390593).abs() < 1e-12);
        assert!((t.tau_min + 0.0883883476483).abs() < 1e-12);
        assert!((t.zeta - ComplexValue::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn triple_at_pi_over_six() {
        let t = make_triple(FRAC_PI_6, 2.0).unwrap();
        assert!((t.r - ComplexValue::from_polar(1.0, FRAC_PI_6)).norm() < 1e-12);
        assert!((t.s - ComplexValue::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn tau_min_for_m_two() {
        let t = make_triple(0.0, 2.0).unwrap();
        assert!((t.tau_min - 1.0 / (2.0 * SQRT_2)).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(make_triple(FRAC_PI_4, 1.0).is_err());
        assert!(make_triple(0.1, 0.5).is_err());
        assert!(make_triple(0.1, f64::NAN).is_err());
        assert!(curvature_identity(-0.8).is_err());
    }

    #[test]
    fn curvature_examples() {
        for th in [0.0, 0.5, -0.3] {
            assert!((curvature_identity(th).unwrap() - 0.75).abs() < 1e-12);
        }
    }

    #[test]
    fn halfplane_offsets() {
        let h = t_halfplane(&make_triple(0.0, 1.0).unwrap());
        assert!((h.direction - ComplexValue::new(1.0, 0.0)).norm() < 1e-15);
        assert!((h.offset + 1.0 / (8.0 * SQRT_2)).abs() < 1e-15);
        let h = t_halfplane(&make_triple(0.0, 4.0 / 3.0).unwrap());
        assert!(h.offset.abs() < 1e-15);
        let h = t_halfplane(&make_triple(0.2, 2.0).unwrap());
        let expected = 4.0 / (8.0 * (2.0 * (0.4f64).cos()).sqrt());
        assert!((h.offset - expected).abs() < 1e-14);
    }

    #[test]
    fn grid_is_symmetric_with_exact_zero() {
        let g = theta_grid(2001, THETA_MARGIN);
        assert_eq!(g.len(), 2001);
        assert_eq!(g[1000], 0.0);
        assert_eq!(g[0], -g[2000]);
        assert!(g[2000] < FRAC_PI_4);
    }
}
