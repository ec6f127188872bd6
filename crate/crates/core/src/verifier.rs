//! Subordination checks on concrete functions.
//!
//! √(1+z) is univalent on the disk, so `p ≺ √(1+z)` is equivalent to
//! `p(0) = 1` together with `p(𝔻) ⊂ Δ`. Containment is probed on concentric
//! circles close to the unit circle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{LemmaId, LemmaParams};
use crate::error::{Error, Result};
use crate::geometry::{principal_sqrt, ComplexValue, TargetRegion};
use crate::series::TruncatedSeries;

/// `p(z)`, `z·p'(z)` and `z²·p''(z)` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub p: ComplexValue,
    pub zp: ComplexValue,
    pub z2p2: ComplexValue,
}

/// Something analytic on the disk that can report its second-order jet.
pub trait Analytic: Sync {
    fn jet(&self, z: ComplexValue) -> Jet;

    fn value(&self, z: ComplexValue) -> ComplexValue {
        self.jet(z).p
    }

    /// Bound on the truncation error at `radius`, if the source is truncated.
    fn truncation_bound(&self, _radius: f64) -> f64 {
        0.0
    }
}

/// A series together with its exact Euler-operator derivatives.
#[derive(Debug, Clone)]
pub struct SeriesJet {
    p: TruncatedSeries,
    zp: TruncatedSeries,
    z2p2: TruncatedSeries,
}

impl SeriesJet {
    pub fn new(p: &TruncatedSeries) -> Self {
        SeriesJet {
            p: p.clone(),
            zp: p.z_derivative(),
            z2p2: p.z2_second_derivative(),
        }
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.p
    }
}

impl Analytic for SeriesJet {
    fn jet(&self, z: ComplexValue) -> Jet {
        Jet {
            p: self.p.evaluate(z),
            zp: self.zp.evaluate(z),
            z2p2: self.z2p2.evaluate(z),
        }
    }

    fn truncation_bound(&self, radius: f64) -> f64 {
        self.p.tail_estimate(radius)
    }
}

impl Analytic for TruncatedSeries {
    fn jet(&self, z: ComplexValue) -> Jet {
        Jet {
            p: self.evaluate(z),
            zp: self.z_derivative().evaluate(z),
            z2p2: self.z2_second_derivative().evaluate(z),
        }
    }

    fn value(&self, z: ComplexValue) -> ComplexValue {
        self.evaluate(z)
    }

    fn truncation_bound(&self, radius: f64) -> f64 {
        self.tail_estimate(radius)
    }
}

/// Closed-form √(1+z) with principal branch.
#[derive(Debug, Clone, Copy, Default)]
pub struct SqrtOnePlusZ;

impl Analytic for SqrtOnePlusZ {
    fn jet(&self, z: ComplexValue) -> Jet {
        let q = principal_sqrt(z + 1.0);
        Jet {
            p: q,
            zp: z / (2.0 * q),
            z2p2: -z * z / (4.0 * q * (z + 1.0)),
        }
    }
}

/// Pointwise evaluator without a jet; only usable for image probes.
pub struct FnSource<F>(pub F);

impl<F> Analytic for FnSource<F>
where
    F: Fn(ComplexValue) -> ComplexValue + Sync,
{
    fn jet(&self, z: ComplexValue) -> Jet {
        let nan = ComplexValue::new(f64::NAN, f64::NAN);
        Jet {
            p: (self.0)(z),
            zp: nan,
            z2p2: nan,
        }
    }

    fn value(&self, z: ComplexValue) -> ComplexValue {
        (self.0)(z)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSpec {
    pub radii: Vec<f64>,
    pub angular_points: usize,
}

impl Default for ProbeSpec {
    fn default() -> Self {
        ProbeSpec {
            radii: vec![0.9, 0.99, 0.999],
            angular_points: 4096,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbePoint {
    pub z: ComplexValue,
    pub w: ComplexValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageProbe {
    pub radial_levels: Vec<f64>,
    pub angular_points: usize,
    pub max_margin: f64,
    pub worst_point: ProbePoint,
    /// Largest truncation bound over the probed radii.
    pub truncation_bound: f64,
}

impl ImageProbe {
    pub fn contained(&self) -> bool {
        self.max_margin < 0.0
    }
}

fn validate_probe(probe: &ProbeSpec) -> Result<()> {
    if probe.radii.is_empty() || probe.angular_points == 0 {
        return Err(Error::Configuration("probe needs radii and angular points".into()));
    }
    if probe.radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return Err(Error::Configuration("probe radii must lie in (0, 1)".into()));
    }
    Ok(())
}

/// Largest region margin of `map(z)` over the probe circles. Points where the
/// map is undefined count as outside (margin +∞).
fn probe_map<F>(map: F, region: &TargetRegion, probe: &ProbeSpec) -> Result<(f64, ProbePoint)>
where
    F: Fn(ComplexValue) -> Result<ComplexValue> + Sync,
{
    let n = probe.angular_points;
    let points: Vec<ComplexValue> = probe
        .radii
        .iter()
        .flat_map(|&r| {
            (0..n).map(move |k| {
                ComplexValue::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64)
            })
        })
        .collect();
    let scored = points
        .par_iter()
        .enumerate()
        .map(|(idx, &z)| -> Result<(f64, usize, ProbePoint)> {
            let (margin, w) = match map(z) {
                Ok(w) => match region.margin(w) {
                    Ok(m) => (m, w),
                    Err(Error::Pole(_)) => (f64::INFINITY, w),
                    Err(Error::Domain(_)) => (f64::INFINITY, w),
                    Err(e) => return Err(e),
                },
                Err(Error::Domain(_)) => (f64::INFINITY, ComplexValue::new(f64::NAN, f64::NAN)),
                Err(e) => return Err(e),
            };
            Ok((margin, idx, ProbePoint { z, w }))
        })
        .collect::<Result<Vec<_>>>()?;
    let (margin, _, point) = scored
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)))
        .expect("probe is non-empty");
    Ok((margin, point))
}

/// Probe `p(𝔻) ⊂ region`.
///
/// For Δ the anchor `p(0)` must equal `q(0) = 1`; for other regions it must
/// lie inside the region.
pub fn image_in_region(source: &dyn Analytic, region: &TargetRegion, probe: &ProbeSpec) -> Result<ImageProbe> {
    validate_probe(probe)?;
    let anchor = source.value(ComplexValue::new(0.0, 0.0));
    let anchored = match region {
        TargetRegion::LemniscateDelta => (anchor - 1.0).norm() <= 1e-12,
        _ => region.contains(anchor).unwrap_or(false),
    };
    if !anchored {
        return Err(Error::Normalization(format!(
            "p(0) = {anchor} does not match the anchor of {}",
            region.name()
        )));
    }
    let (max_margin, worst_point) = probe_map(|z| Ok(source.value(z)), region, probe)?;
    let truncation_bound = probe
        .radii
        .iter()
        .map(|&r| source.truncation_bound(r))
        .fold(0.0, f64::max);
    Ok(ImageProbe {
        radial_levels: probe.radii.clone(),
        angular_points: probe.angular_points,
        max_margin,
        worst_point,
        truncation_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ImplicationStatus {
    /// hypothesis and conclusion both hold
    Confirmed,
    /// hypothesis fails
    Vacuous,
    /// hypothesis holds, conclusion fails
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImplicationReport {
    pub lemma: LemmaId,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub status: ImplicationStatus,
    pub hypothesis_margin: f64,
    pub hypothesis_worst: ProbePoint,
    pub conclusion_margin: f64,
    pub conclusion_worst: ProbePoint,
}

/// Check `p ∈ H[1, n]` for the lemma's class index n.
fn check_normalized(lemma: LemmaId, p: &TruncatedSeries) -> Result<()> {
    if (p.coeff(0) - 1.0).norm() > 1e-12 {
        return Err(Error::Normalization(format!("p(0) = {} but must be 1", p.coeff(0))));
    }
    let n = lemma.class_index();
    if let Some(k) = p.leading_power() {
        if k < n {
            return Err(Error::Normalization(format!(
                "{lemma} needs p in H[1,{n}] but coefficient {k} is non-zero"
            )));
        }
    }
    Ok(())
}

/// Evaluate the lemma's hypothesis and conclusion on a concrete p.
pub fn verify_implication(
    lemma: LemmaId,
    p: &TruncatedSeries,
    params: &LemmaParams,
    probe: &ProbeSpec,
) -> Result<ImplicationReport> {
    validate_probe(probe)?;
    check_normalized(lemma, p)?;
    let form = lemma.form(params)?;
    let region = lemma.region();
    let jet = SeriesJet::new(p);
    let second = form.order() == 2;

    let (h_margin, h_worst) = probe_map(
        |z| {
            let j = jet.jet(z);
            form.apply(j.p, j.zp, second.then_some(j.z2p2))
        },
        &region,
        probe,
    )?;
    let (c_margin, c_worst) = probe_map(|z| Ok(jet.value(z)), &TargetRegion::LemniscateDelta, probe)?;

    let hypothesis_holds = h_margin < 0.0;
    let conclusion_holds = c_margin < 0.0;
    let status = match (hypothesis_holds, conclusion_holds) {
        (false, _) => ImplicationStatus::Vacuous,
        (true, true) => ImplicationStatus::Confirmed,
        (true, false) => ImplicationStatus::Counterexample,
    };
    Ok(ImplicationReport {
        lemma,
        hypothesis_holds,
        conclusion_holds,
        status,
        hypothesis_margin: h_margin,
        hypothesis_worst: h_worst,
        conclusion_margin: c_margin,
        conclusion_worst: c_worst,
    })
}

/// `Re(z/(2(1+z)))` at `z = 1 − δ`: the value of `Re(zp'/p)` for p = √(1+z).
pub fn sharpness_probe_example2(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Domain(format!("delta must lie in (0, 1], got {delta}")));
    }
    let z = 1.0 - delta;
    Ok(z / (2.0 * (1.0 + z)))
}

/// Seeded random `p = 1 + Σ_{k ≥ n} a_k z^k` with `|a_k| ≤ 0.5/k²`.
pub fn random_normalized_p(seed: u64, degree: usize, class_index: usize, order: usize) -> TruncatedSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![ComplexValue::new(0.0, 0.0); order + 1];
    coeffs[0] = ComplexValue::new(1.0, 0.0);
    for (k, slot) in coeffs.iter_mut().enumerate().take(degree.min(order) + 1).skip(class_index.max(1)) {
        let radius = rng.gen::<f64>() * 0.5 / (k * k) as f64;
        let angle = rng.gen::<f64>() * std::f64::consts::TAU;
        *slot = ComplexValue::from_polar(radius, angle);
    }
    TruncatedSeries::new(coeffs)
}
