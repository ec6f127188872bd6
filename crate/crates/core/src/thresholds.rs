//! β-threshold recovery by bisection on a boolean predicate.

use serde::{Deserialize, Serialize};

use crate::admissibility::{check_admissible, theta_zero_is_minimizer, GridSpec};
use crate::catalog::{LemmaId, LemmaParams, ThresholdCriterion};
use crate::error::{Error, Result};

/// Default bisection tolerance.
pub const DEFAULT_TOL: f64 = 1e-4;

/// Default search bracket for β.
pub const DEFAULT_BRACKET: (f64, f64) = (0.05, 10.0);

/// Number of evenly spaced samples used to pre-check monotonicity.
const MONOTONE_SAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// predicate false below the transition, true above
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub lemma_id: LemmaId,
    pub criterion: ThresholdCriterion,
    pub direction: Direction,
    pub beta_low: f64,
    pub beta_high: f64,
    pub beta_star: f64,
    pub tolerance: f64,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<f64>,
}

/// Bisect a predicate `f` on `[lo, hi]` after checking that it flips exactly
/// once across `MONOTONE_SAMPLES` evenly spaced points.
///
/// Returns `(low, high, iterations, direction)` with `f` differing at the ends.
pub fn bisect_predicate<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64, usize, Direction)>
where
    F: FnMut(f64) -> Result<bool>,
{
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::Configuration(format!("invalid bracket [{lo}, {hi}] or tol {tol}")));
    }
    let xs: Vec<f64> = (0..MONOTONE_SAMPLES)
        .map(|i| lo + (hi - lo) * i as f64 / (MONOTONE_SAMPLES - 1) as f64)
        .collect();
    let vals = xs.iter().map(|&x| f(x)).collect::<Result<Vec<bool>>>()?;
    let flips: Vec<usize> = (0..vals.len() - 1).filter(|&i| vals[i] != vals[i + 1]).collect();
    let k = match flips.as_slice() {
        [] => return Err(Error::Bracket { lo, hi }),
        [k] => *k,
        _ => {
            return Err(Error::Monotonicity(format!(
                "{} sign changes across samples {:?}",
                flips.len(),
                vals
            )))
        }
    };
    let direction = if vals[k + 1] {
        Direction::Increasing
    } else {
        Direction::Decreasing
    };
    let (mut a, mut b) = (xs[k], xs[k + 1]);
    let fa = vals[k];
    let mut iterations = 0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if f(mid)? == fa {
            a = mid;
        } else {
            b = mid;
        }
        iterations += 1;
    }
    Ok((a, b, iterations, direction))
}

fn predicate(
    lemma: LemmaId,
    criterion: ThresholdCriterion,
    gamma: f64,
    grid: &GridSpec,
) -> impl FnMut(f64) -> Result<bool> + '_ {
    let region = lemma.region();
    move |beta| {
        let form = lemma.form(&LemmaParams::with_gamma(beta, gamma))?;
        match criterion {
            ThresholdCriterion::Admissibility => Ok(check_admissible(&form, &region, grid)?.admissible),
            ThresholdCriterion::MinimizerAtZero => theta_zero_is_minimizer(&form, &region, grid),
        }
    }
}

/// Locate the β transition of `criterion` for `lemma` within `tol`.
pub fn find_beta_threshold_with(
    lemma: LemmaId,
    criterion: ThresholdCriterion,
    bracket: (f64, f64),
    tol: f64,
    grid: &GridSpec,
) -> Result<ThresholdResult> {
    let grid = grid.with_m_min(grid.m_min.max(lemma.class_index() as f64));
    let gamma = lemma.reference_params().gamma;
    let (low, high, iterations, direction) =
        bisect_predicate(predicate(lemma, criterion, gamma, &grid), bracket.0, bracket.1, tol)?;
    Ok(ThresholdResult {
        lemma_id: lemma,
        criterion,
        direction,
        beta_low: low,
        beta_high: high,
        beta_star: 0.5 * (low + high),
        tolerance: tol,
        iterations,
        closed_form: lemma.closed_form_beta(),
    })
}

/// Locate the transition that the lemma's stated bound describes.
pub fn find_beta_threshold(
    lemma: LemmaId,
    bracket: (f64, f64),
    tol: f64,
    grid: &GridSpec,
) -> Result<ThresholdResult> {
    let criterion = lemma.threshold_criterion().ok_or_else(|| {
        Error::Unsupported(format!("{lemma} has no beta threshold"))
    })?;
    find_beta_threshold_with(lemma, criterion, bracket, tol, grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisects_a_step() {
        let (lo, hi, it, dir) = bisect_predicate(|x| Ok(x >= 1.2345), 0.0, 10.0, 1e-6).unwrap();
        assert!(lo < 1.2345 && 1.2345 <= hi && hi - lo <= 1e-6);
        assert!(it > 0);
        assert_eq!(dir, Direction::Increasing);
        let (lo, hi, _, dir) = bisect_predicate(|x| Ok(x < 3.0), 0.0, 10.0, 1e-6).unwrap();
        assert!(lo < 3.0 && 3.0 <= hi);
        assert_eq!(dir, Direction::Decreasing);
    }

    #[test]
    fn bracket_and_monotonicity_errors() {
        assert!(matches!(
            bisect_predicate(|_| Ok(true), 0.0, 1.0, 1e-3),
            Err(Error::Bracket { .. })
        ));
        assert!(matches!(
            bisect_predicate(|x| Ok((2.0..5.0).contains(&x)), 0.0, 7.0, 1e-3),
            Err(Error::Monotonicity(_))
        ));
        assert!(bisect_predicate(|x| Ok(x > 0.5), 1.0, 0.0, 1e-3).is_err());
    }

    #[test]
    fn bisection_keeps_one_endpoint_on_each_side() {
        let mut seen = Vec::new();
        let (lo, hi, _, _) = bisect_predicate(
            |x| {
                seen.push(x);
                Ok(x > std::f64::consts::E)
            },
            0.0,
            7.0,
            1e-9,
        )
        .unwrap();
        assert!(lo <= std::f64::consts::E && std::f64::consts::E < hi);
    }

    #[test]
    fn unconditional_lemma_has_no_threshold() {
        let r = find_beta_threshold(LemmaId::First0, DEFAULT_BRACKET, 1e-3, &GridSpec::default());
        assert!(matches!(r, Err(Error::Unsupported(_))));
        let r = find_beta_threshold_with(
            LemmaId::First0,
            ThresholdCriterion::Admissibility,
            DEFAULT_BRACKET,
            1e-3,
            &GridSpec::default(),
        );
        assert!(matches!(r, Err(Error::Bracket { .. })));
    }

    #[test]
    fn one0_matches_closed_form() {
        let r = find_beta_threshold(LemmaId::One0, DEFAULT_BRACKET, DEFAULT_TOL, &GridSpec::default()).unwrap();
        assert!(r.beta_low < r.beta_star && r.beta_star <= r.beta_high);
        assert!(r.beta_high - r.beta_low <= DEFAULT_TOL);
        assert!((r.beta_star - r.closed_form.unwrap()).abs() <= 2e-3);
    }
}
