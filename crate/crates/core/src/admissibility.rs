//! Grid verification of the admissibility condition
//! `ψ(r, s, t) ∉ Ω` over the boundary data of √(1+z).
//!
//! The (θ, m) grid is scanned in parallel. Reductions pick the smallest margin
//! with ties broken by grid index, so results do not depend on scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{make_triple, t_halfplane, theta_grid, AdmissibleTriple, THETA_MARGIN};
use crate::error::{Error, Result};
use crate::geometry::{ComplexValue, TargetRegion};
use crate::psi::{evaluate, PsiForm};

/// Sampled rectangle of the t half-plane, in coordinates along and across the
/// boundary line. Only a cross-check: the exact minimizer is always included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TBox {
    pub tau_span: f64,
    pub sigma_span: f64,
    pub points: usize,
}

impl Default for TBox {
    fn default() -> Self {
        TBox {
            tau_span: 10.0,
            sigma_span: 10.0,
            points: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub theta_points: usize,
    pub theta_margin: f64,
    /// Class index n of H[1, n].
    pub m_min: f64,
    pub m_max: f64,
    pub m_points: usize,
    /// Width of the boundary band counted as outside Ω.
    pub eps_adm: f64,
    pub t_box: TBox,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            theta_points: 2001,
            theta_margin: THETA_MARGIN,
            m_min: 1.0,
            m_max: 8.0,
            m_points: 64,
            eps_adm: 1e-9,
            t_box: TBox::default(),
        }
    }
}

impl GridSpec {
    pub fn with_m_min(mut self, m_min: f64) -> Self {
        self.m_min = m_min;
        self
    }

    /// Same grid with θ and m resolution doubled.
    pub fn refined(mut self) -> Self {
        self.theta_points = 2 * self.theta_points - 1;
        self.m_points = 2 * self.m_points - 1;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Configuration(msg.to_string()));
        if self.theta_points < 1000 {
            return bad("theta_points must be >= 1000");
        }
        if !(self.theta_margin > 0.0 && self.theta_margin < std::f64::consts::FRAC_PI_4) {
            return bad("theta_margin must lie in (0, pi/4)");
        }
        if !(self.m_min >= 1.0) {
            return bad("m_min must be >= 1");
        }
        if !(self.m_max > self.m_min) || !self.m_max.is_finite() {
            return bad("m_max must exceed m_min");
        }
        if self.m_points < 2 {
            return bad("m_points must be >= 2");
        }
        if !(self.eps_adm >= 0.0) {
            return bad("eps_adm must be non-negative");
        }
        let tb = &self.t_box;
        if !(tb.tau_span > 0.0 && tb.sigma_span > 0.0) || tb.points < 2 {
            return bad("t_box spans must be positive with at least 2 points");
        }
        Ok(())
    }

    pub fn thetas(&self) -> Vec<f64> {
        theta_grid(self.theta_points, self.theta_margin)
    }

    pub fn ms(&self) -> Vec<f64> {
        let n = self.m_points;
        (0..n)
            .map(|j| {
                if j + 1 == n {
                    self.m_max
                } else {
                    self.m_min + (self.m_max - self.m_min) * j as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub theta: f64,
    pub m: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<ComplexValue>,
    pub psi_value: ComplexValue,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Smallest region margin seen anywhere on the grid.
    pub min_objective_seen: f64,
    /// Margin at `m_max` exceeds the margin at `m_max/2` for every θ.
    pub tail_monotone: bool,
}

/// Minimizer of `|ψ(t) − center|` over the admissible t half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TStar {
    pub t_star: ComplexValue,
    pub objective: f64,
}

/// ψ is affine in t with real slope κ, so the image of the t half-plane is a
/// half-plane and the closest point to the disk center is a projection.
pub fn min_over_t(form: &PsiForm, triple: &AdmissibleTriple, region: &TargetRegion) -> Result<TStar> {
    let kappa = form
        .t_coefficient()
        .ok_or_else(|| Error::Arity("min_over_t needs a second-order form".into()))?;
    let center = match *region {
        TargetRegion::Disk { center, .. } => center,
        _ => {
            return Err(Error::Unsupported(format!(
                "min_over_t needs a disk region, got {}",
                region.name()
            )))
        }
    };
    if kappa == 0.0 {
        return Err(Error::Degenerate("t coefficient is zero".into()));
    }
    let hp = t_halfplane(triple);
    let base = evaluate(form, triple, Some(ComplexValue::new(0.0, 0.0)))?;
    // Image: Re(w·conj(normal)) ≥ offset
    let normal = hp.direction * kappa.signum();
    let offset = (base * normal.conj()).re + kappa.abs() * hp.offset;
    let height = (center * normal.conj()).re;
    let w_star = if height >= offset {
        center
    } else {
        center + normal * (offset - height)
    };
    let t_star = (w_star - base) / kappa;
    let psi = evaluate(form, triple, Some(t_star))?;
    Ok(TStar {
        t_star,
        objective: (psi - center).norm(),
    })
}

fn margin_or_outside(region: &TargetRegion, w: ComplexValue) -> Result<f64> {
    match region.margin(w) {
        Ok(v) => Ok(v),
        // the pole of the Möbius map lies outside its disk
        Err(Error::Pole(_)) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    margin: f64,
    t: Option<ComplexValue>,
    psi: ComplexValue,
}

fn t_box_samples(triple: &AdmissibleTriple, tb: TBox) -> impl Iterator<Item = ComplexValue> {
    let hp = t_halfplane(triple);
    let p = tb.points;
    (0..p).flat_map(move |i| {
        (0..p).map(move |j| {
            let along = tb.tau_span * i as f64 / (p - 1) as f64;
            let across = -tb.sigma_span + 2.0 * tb.sigma_span * j as f64 / (p - 1) as f64;
            hp.direction * ComplexValue::new(hp.offset + along, across)
        })
    })
}

/// Most-interior sample at one `(θ, m)`.
fn worst_at(
    form: &PsiForm,
    region: &TargetRegion,
    grid: &GridSpec,
    theta: f64,
    m: f64,
) -> Result<Sample> {
    let triple = make_triple(theta, m)?;
    if form.order() == 1 {
        let psi = evaluate(form, &triple, None)?;
        return Ok(Sample {
            margin: margin_or_outside(region, psi)?,
            t: None,
            psi,
        });
    }
    let exact = min_over_t(form, &triple, region)?;
    let psi = evaluate(form, &triple, Some(exact.t_star))?;
    let mut best = Sample {
        margin: margin_or_outside(region, psi)?,
        t: Some(exact.t_star),
        psi,
    };
    for t in t_box_samples(&triple, grid.t_box) {
        let psi = evaluate(form, &triple, Some(t))?;
        let margin = margin_or_outside(region, psi)?;
        if margin < best.margin {
            best = Sample {
                margin,
                t: Some(t),
                psi,
            };
        }
    }
    Ok(best)
}

fn check_pairing(form: &PsiForm, region: &TargetRegion, grid: &GridSpec) -> Result<()> {
    grid.validate()?;
    form.validate()?;
    if form.order() == 2 && !region.is_disk() {
        return Err(Error::Configuration(format!(
            "second-order form {} is only paired with disk targets, got {}",
            form.label(),
            region.name()
        )));
    }
    if form.order() == 2 && form.t_coefficient() == Some(0.0) {
        return Err(Error::Degenerate("t coefficient is zero".into()));
    }
    Ok(())
}

/// Decide `ψ(r, s, t) ∉ Ω` on the sampled boundary data.
pub fn check_admissible(form: &PsiForm, region: &TargetRegion, grid: &GridSpec) -> Result<Verdict> {
    check_pairing(form, region, grid)?;
    let thetas = grid.thetas();
    let ms = grid.ms();
    let half = grid.m_max / 2.0;

    // (margin, theta index, m index, sample) per θ, plus the tail check
    let per_theta: Vec<((f64, usize, usize, Sample), bool)> = thetas
        .par_iter()
        .enumerate()
        .map(|(i, &theta)| -> Result<_> {
            let mut best: Option<(f64, usize, usize, Sample)> = None;
            for (j, &m) in ms.iter().enumerate() {
                let s = worst_at(form, region, grid, theta, m)?;
                if best.is_none_or(|b| s.margin < b.0) {
                    best = Some((s.margin, i, j, s));
                }
            }
            let tail = if half >= grid.m_min {
                let top = worst_at(form, region, grid, theta, grid.m_max)?.margin;
                let mid = worst_at(form, region, grid, theta, half)?.margin;
                top > mid
            } else {
                true
            };
            Ok((best.expect("m grid is non-empty"), tail))
        })
        .collect::<Result<_>>()?;

    let tail_monotone = per_theta.iter().all(|(_, t)| *t);
    let (margin, i, j, sample) = per_theta
        .into_iter()
        .map(|(b, _)| b)
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)))
        .expect("theta grid is non-empty");

    let admissible = margin >= -grid.eps_adm;
    let witness = (!admissible).then(|| Witness {
        theta: thetas[i],
        m: ms[j],
        t: sample.t,
        psi_value: sample.psi,
        margin,
    });
    Ok(Verdict {
        admissible,
        witness,
        min_objective_seen: margin,
        tail_monotone,
    })
}

/// Per-θ minimum over (m, t) of the region's defining quantity
/// (see [`TargetRegion::level`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub theta: f64,
    pub objective: f64,
    pub m_at_min: f64,
}

fn level_at(form: &PsiForm, region: &TargetRegion, theta: f64, m: f64) -> Result<f64> {
    let triple = make_triple(theta, m)?;
    let psi = if form.order() == 2 {
        let best = min_over_t(form, &triple, region)?;
        evaluate(form, &triple, Some(best.t_star))?
    } else {
        evaluate(form, &triple, None)?
    };
    match region.level(psi) {
        Err(Error::Pole(_)) => Ok(f64::INFINITY),
        other => other,
    }
}

pub fn scan_profile(form: &PsiForm, region: &TargetRegion, grid: &GridSpec) -> Result<Vec<ProfilePoint>> {
    check_pairing(form, region, grid)?;
    let ms = grid.ms();
    grid.thetas()
        .par_iter()
        .map(|&theta| {
            let mut best = (f64::INFINITY, ms[0]);
            for &m in &ms {
                let v = level_at(form, region, theta, m)?;
                if v < best.0 {
                    best = (v, m);
                }
            }
            Ok(ProfilePoint {
                theta,
                objective: best.0,
                m_at_min: best.1,
            })
        })
        .collect()
}

/// Arg-min location of a profile (first index on ties).
pub fn profile_argmin(profile: &[ProfilePoint]) -> Option<ProfilePoint> {
    profile
        .iter()
        .copied()
        .min_by(|a, b| a.objective.total_cmp(&b.objective))
}

/// True when, for every sampled m, no sampled θ beats θ = 0 on the region's
/// defining quantity.
pub fn theta_zero_is_minimizer(form: &PsiForm, region: &TargetRegion, grid: &GridSpec) -> Result<bool> {
    check_pairing(form, region, grid)?;
    let thetas = grid.thetas();
    let ms = grid.ms();
    let flags = ms
        .par_iter()
        .map(|&m| -> Result<bool> {
            let at_zero = level_at(form, region, 0.0, m)?;
            let slack = 1e-14 * at_zero.abs().max(1.0);
            for &theta in &thetas {
                if level_at(form, region, theta, m)? < at_zero - slack {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(flags.into_iter().all(|f| f))
}
