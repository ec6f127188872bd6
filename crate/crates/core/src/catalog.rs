//! Lemma catalog: every subordination implication the toolkit knows about,
//! with its functional, its target region and the closed-form objective g(θ)
//! used as an independent oracle.
//!
//! | id | hypothesis | target |
//! |----|------------|--------|
//! | `first0`..`first4` | p + βzp'/pⁿ | Δ |
//! | `sq-1`..`sq2` | p² + βzp'/pⁿ (n = −1: p² + βpzp') | 1 + z |
//! | `sqrat` | p² + zp'/(βp + γ) | 1 + z |
//! | `one0`..`one2` | 1 + βzp'/pⁿ | Δ |
//! | `ex1` | 1 + zp' | \|w − 1\| < 1/(2√2) |
//! | `ex2` | zp'/p | Re w < 1/4 |
//! | `ex3` | 1 + zp'/p² | \|w − 1\| < 1/(4√2) |
//! | `moebius` | p² + βpzp' | (2 + z)/(2 − z) |
//! | `second-sum` | zp' + z²p'' | \|w\| < 3/(8√2) |
//! | `second-sqsum` | p² + zp' + z²p'', p ∈ H[1,2] | \|w − 1\| < 1 + 3/(2√2) |
//! | `second-weighted` | γzp' + βz²p'' | \|w\| < 1/(8√2) |

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::admissibility::min_over_t;
use crate::boundary::make_triple;
use crate::error::{Error, Result};
use crate::geometry::{ComplexValue, TargetRegion};
use crate::psi::{evaluate, PsiForm};

/// Stable lemma identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LemmaId {
    #[serde(rename = "first0")]
    First0,
    #[serde(rename = "first1")]
    First1,
    #[serde(rename = "first2")]
    First2,
    #[serde(rename = "first3")]
    First3,
    #[serde(rename = "first4")]
    First4,
    #[serde(rename = "sq-1")]
    SqMinus1,
    #[serde(rename = "sq0")]
    Sq0,
    #[serde(rename = "sq1")]
    Sq1,
    #[serde(rename = "sq2")]
    Sq2,
    #[serde(rename = "sqrat")]
    SqRat,
    #[serde(rename = "one0")]
    One0,
    #[serde(rename = "one1")]
    One1,
    #[serde(rename = "one2")]
    One2,
    #[serde(rename = "ex1")]
    Ex1,
    #[serde(rename = "ex2")]
    Ex2,
    #[serde(rename = "ex3")]
    Ex3,
    #[serde(rename = "moebius")]
    Moebius,
    #[serde(rename = "second-sum")]
    SecondSum,
    #[serde(rename = "second-sqsum")]
    SecondSqSum,
    #[serde(rename = "second-weighted")]
    SecondWeighted,
}

/// Free parameters of a lemma. Lemmas ignore the ones they do not use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaParams {
    pub beta: ComplexValue,
    pub gamma: f64,
}

impl LemmaParams {
    pub fn real(beta: f64) -> Self {
        LemmaParams {
            beta: ComplexValue::new(beta, 0.0),
            gamma: 1.0,
        }
    }

    pub fn with_gamma(beta: f64, gamma: f64) -> Self {
        LemmaParams {
            beta: ComplexValue::new(beta, 0.0),
            gamma,
        }
    }

    fn beta_re(&self) -> f64 {
        self.beta.re
    }
}

/// Which quantity of ψ the closed form g(θ) describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GQuantity {
    /// `|ψ² − 1|²`
    LemniscateSq,
    /// `|ψ − c|²`
    DistSq(f64),
    /// `|ψ − c|`, minimized over t for second-order forms
    Dist(f64),
    /// `|2(ψ − 1)/(ψ + 1)|²`
    MoebiusSq,
    /// `Re ψ`
    RealPart,
}

impl GQuantity {
    pub fn of(&self, psi: ComplexValue) -> f64 {
        match *self {
            GQuantity::LemniscateSq => (psi * psi - 1.0).norm_sqr(),
            GQuantity::DistSq(c) => (psi - c).norm_sqr(),
            GQuantity::Dist(c) => (psi - c).norm(),
            GQuantity::MoebiusSq => (2.0 * (psi - 1.0) / (psi + 1.0)).norm_sqr(),
            GQuantity::RealPart => psi.re,
        }
    }
}

/// Predicate whose β-transition a lemma's stated bound describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdCriterion {
    /// ψ is admissible on the whole (θ, m) grid.
    Admissibility,
    /// For every sampled m, θ = 0 is a global minimizer of g(θ).
    MinimizerAtZero,
}

/// How the parameter condition of a lemma reads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StatedBound {
    BetaPositive,
    ReBetaPositive,
    BetaGammaPositive,
    /// β above this value
    Beta { value: f64 },
    /// γ ≥ β > 0 and 4γ − β ≥ 1
    WeightedCondition,
    /// no free parameter
    Fixed,
}

impl StatedBound {
    pub fn describe(&self) -> String {
        match *self {
            StatedBound::BetaPositive => "beta>0".into(),
            StatedBound::ReBetaPositive => "Re beta>0".into(),
            StatedBound::BetaGammaPositive => "beta,gamma>0".into(),
            StatedBound::Beta { value } => format!("beta>={value:.6}"),
            StatedBound::WeightedCondition => "gamma>=beta>0, 4gamma-beta>=1".into(),
            StatedBound::Fixed => "fixed".into(),
        }
    }
}

const ALL: [LemmaId; 20] = [
    LemmaId::First0,
    LemmaId::First1,
    LemmaId::First2,
    LemmaId::First3,
    LemmaId::First4,
    LemmaId::SqMinus1,
    LemmaId::Sq0,
    LemmaId::Sq1,
    LemmaId::Sq2,
    LemmaId::SqRat,
    LemmaId::One0,
    LemmaId::One1,
    LemmaId::One2,
    LemmaId::Ex1,
    LemmaId::Ex2,
    LemmaId::Ex3,
    LemmaId::Moebius,
    LemmaId::SecondSum,
    LemmaId::SecondSqSum,
    LemmaId::SecondWeighted,
];

impl LemmaId {
    pub fn all() -> &'static [LemmaId] {
        &ALL
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::First0 => "first0",
            LemmaId::First1 => "first1",
            LemmaId::First2 => "first2",
            LemmaId::First3 => "first3",
            LemmaId::First4 => "first4",
            LemmaId::SqMinus1 => "sq-1",
            LemmaId::Sq0 => "sq0",
            LemmaId::Sq1 => "sq1",
            LemmaId::Sq2 => "sq2",
            LemmaId::SqRat => "sqrat",
            LemmaId::One0 => "one0",
            LemmaId::One1 => "one1",
            LemmaId::One2 => "one2",
            LemmaId::Ex1 => "ex1",
            LemmaId::Ex2 => "ex2",
            LemmaId::Ex3 => "ex3",
            LemmaId::Moebius => "moebius",
            LemmaId::SecondSum => "second-sum",
            LemmaId::SecondSqSum => "second-sqsum",
            LemmaId::SecondWeighted => "second-weighted",
        }
    }

    /// Differential expression that appears on the left of the hypothesis.
    pub fn hypothesis(&self) -> &'static str {
        match self {
            LemmaId::First0 => "p + beta*zp'",
            LemmaId::First1 => "p + beta*zp'/p",
            LemmaId::First2 => "p + beta*zp'/p^2",
            LemmaId::First3 => "p + beta*zp'/p^3",
            LemmaId::First4 => "p + beta*zp'/p^4",
            LemmaId::SqMinus1 => "p^2 + beta*p*zp'",
            LemmaId::Sq0 => "p^2 + beta*zp'",
            LemmaId::Sq1 => "p^2 + beta*zp'/p",
            LemmaId::Sq2 => "p^2 + beta*zp'/p^2",
            LemmaId::SqRat => "p^2 + zp'/(beta*p + gamma)",
            LemmaId::One0 => "1 + beta*zp'",
            LemmaId::One1 => "1 + beta*zp'/p",
            LemmaId::One2 => "1 + beta*zp'/p^2",
            LemmaId::Ex1 => "1 + zp'",
            LemmaId::Ex2 => "zp'/p",
            LemmaId::Ex3 => "1 + zp'/p^2",
            LemmaId::Moebius => "p^2 + beta*p*zp'",
            LemmaId::SecondSum => "zp' + z^2p''",
            LemmaId::SecondSqSum => "p^2 + zp' + z^2p''",
            LemmaId::SecondWeighted => "gamma*zp' + beta*z^2p''",
        }
    }

    pub fn form(&self, params: &LemmaParams) -> Result<PsiForm> {
        let beta = params.beta;
        let b = params.beta_re();
        let form = match self {
            LemmaId::First0 => PsiForm::FirstOrderPlus { n: 0, beta },
            LemmaId::First1 => PsiForm::FirstOrderPlus { n: 1, beta },
            LemmaId::First2 => PsiForm::FirstOrderPlus { n: 2, beta },
            LemmaId::First3 => PsiForm::FirstOrderPlus { n: 3, beta },
            LemmaId::First4 => PsiForm::FirstOrderPlus { n: 4, beta },
            LemmaId::SqMinus1 | LemmaId::Moebius => PsiForm::SquarePlus { n: -1, beta },
            LemmaId::Sq0 => PsiForm::SquarePlus { n: 0, beta },
            LemmaId::Sq1 => PsiForm::SquarePlus { n: 1, beta },
            LemmaId::Sq2 => PsiForm::SquarePlus { n: 2, beta },
            LemmaId::SqRat => PsiForm::SquareRational {
                beta: b,
                gamma: params.gamma,
            },
            LemmaId::One0 => PsiForm::OnePlus { n: 0, beta: b },
            LemmaId::One1 => PsiForm::OnePlus { n: 1, beta: b },
            LemmaId::One2 => PsiForm::OnePlus { n: 2, beta: b },
            LemmaId::Ex1 => PsiForm::OnePlus { n: 0, beta: 1.0 },
            LemmaId::Ex2 => PsiForm::ExampleDerivOverP,
            LemmaId::Ex3 => PsiForm::OnePlus { n: 2, beta: 1.0 },
            LemmaId::SecondSum => PsiForm::SecondOrderSum,
            LemmaId::SecondSqSum => PsiForm::SecondOrderSquareSum,
            LemmaId::SecondWeighted => PsiForm::SecondOrderWeighted {
                gamma: params.gamma,
                beta: b,
            },
        };
        if *self == LemmaId::Moebius && beta.im != 0.0 {
            return Err(Error::Configuration("moebius lemma takes real beta".into()));
        }
        form.validate()?;
        Ok(form)
    }

    pub fn region(&self) -> TargetRegion {
        match self {
            LemmaId::First0
            | LemmaId::First1
            | LemmaId::First2
            | LemmaId::First3
            | LemmaId::First4
            | LemmaId::One0
            | LemmaId::One1
            | LemmaId::One2 => TargetRegion::LemniscateDelta,
            LemmaId::SqMinus1 | LemmaId::Sq0 | LemmaId::Sq1 | LemmaId::Sq2 | LemmaId::SqRat => {
                TargetRegion::disk(1.0, 1.0)
            }
            LemmaId::Ex1 => TargetRegion::disk(1.0, 1.0 / (2.0 * SQRT_2)),
            LemmaId::Ex2 => TargetRegion::HalfPlaneReLess { bound: 0.25 },
            LemmaId::Ex3 => TargetRegion::disk(1.0, 1.0 / (4.0 * SQRT_2)),
            LemmaId::Moebius => TargetRegion::MoebiusDisk,
            LemmaId::SecondSum => TargetRegion::disk(0.0, 3.0 / (8.0 * SQRT_2)),
            LemmaId::SecondSqSum => TargetRegion::disk(1.0, 1.0 + 3.0 / (2.0 * SQRT_2)),
            LemmaId::SecondWeighted => TargetRegion::disk(0.0, 1.0 / (8.0 * SQRT_2)),
        }
    }

    /// The n of H[1, n]; the smallest admissible m.
    pub fn class_index(&self) -> usize {
        match self {
            LemmaId::SecondSqSum => 2,
            _ => 1,
        }
    }

    pub fn g_quantity(&self) -> GQuantity {
        match self {
            LemmaId::First0
            | LemmaId::First1
            | LemmaId::First2
            | LemmaId::First3
            | LemmaId::First4
            | LemmaId::One0
            | LemmaId::One1
            | LemmaId::One2 => GQuantity::LemniscateSq,
            LemmaId::SqMinus1 | LemmaId::Sq0 | LemmaId::Sq1 | LemmaId::Sq2 | LemmaId::SqRat => {
                GQuantity::DistSq(1.0)
            }
            LemmaId::Ex1 | LemmaId::Ex3 | LemmaId::SecondSqSum => GQuantity::Dist(1.0),
            LemmaId::Ex2 => GQuantity::RealPart,
            LemmaId::Moebius => GQuantity::MoebiusSq,
            LemmaId::SecondSum | LemmaId::SecondWeighted => GQuantity::Dist(0.0),
        }
    }

    /// Value g must stay at or above for the functional to be admissible.
    pub fn g_threshold(&self) -> f64 {
        match self.g_quantity() {
            GQuantity::Dist(_) => match self.region() {
                TargetRegion::Disk { radius, .. } => radius,
                _ => unreachable!(),
            },
            _ => self.region().level_threshold(),
        }
    }

    pub fn stated_bound(&self) -> StatedBound {
        match self {
            LemmaId::First0 | LemmaId::First1 | LemmaId::First2 => StatedBound::BetaPositive,
            LemmaId::Sq0 | LemmaId::Sq1 => StatedBound::BetaPositive,
            LemmaId::First3 => StatedBound::Beta { value: 1.1874 },
            LemmaId::First4 => StatedBound::Beta { value: 3.58095 },
            LemmaId::SqMinus1 => StatedBound::ReBetaPositive,
            LemmaId::Sq2 => StatedBound::Beta { value: 2.0 * SQRT_2 },
            LemmaId::SqRat => StatedBound::BetaGammaPositive,
            LemmaId::One0 => StatedBound::Beta { value: 4.0 - 2.0 * SQRT_2 },
            LemmaId::One1 => StatedBound::Beta { value: 4.0 * SQRT_2 - 4.0 },
            LemmaId::One2 => StatedBound::Beta { value: 8.0 - 4.0 * SQRT_2 },
            LemmaId::Moebius => StatedBound::Beta { value: 2.0 },
            LemmaId::Ex1 | LemmaId::Ex2 | LemmaId::Ex3 => StatedBound::Fixed,
            LemmaId::SecondSum | LemmaId::SecondSqSum => StatedBound::Fixed,
            LemmaId::SecondWeighted => StatedBound::WeightedCondition,
        }
    }

    /// Exact β threshold where a factorization gives one.
    pub fn closed_form_beta(&self) -> Option<f64> {
        match self {
            // (β+2√2)²(β−4+2√2)(β+4+2√2) ≥ 0
            LemmaId::One0 => Some(4.0 - 2.0 * SQRT_2),
            // (β+4)²(β+4+4√2)(β+4−4√2) ≥ 0
            LemmaId::One1 => Some(4.0 * SQRT_2 - 4.0),
            // (β+4√2)²(β−4√2(√2−1))(β+4√2(√2+1)) ≥ 0
            LemmaId::One2 => Some(8.0 - 4.0 * SQRT_2),
            // 3(1+β/2)² − 4 − 4(1+β/2) ≥ 0
            LemmaId::Moebius => Some(2.0),
            LemmaId::Sq2 => Some(2.0 * SQRT_2),
            _ => None,
        }
    }

    /// The predicate whose transition the stated β bound marks.
    ///
    /// For `first3`, `first4` and `sq2` the stated β₀ is where θ = 0 becomes the
    /// global minimizer of g; the functional is already admissible well below it.
    pub fn threshold_criterion(&self) -> Option<ThresholdCriterion> {
        match self {
            LemmaId::First3 | LemmaId::First4 | LemmaId::Sq2 => {
                Some(ThresholdCriterion::MinimizerAtZero)
            }
            LemmaId::One0 | LemmaId::One1 | LemmaId::One2 | LemmaId::Moebius => {
                Some(ThresholdCriterion::Admissibility)
            }
            _ => None,
        }
    }

    /// Whether the objective grows without bound in m at every θ.
    pub fn grows_in_m(&self) -> bool {
        !matches!(self, LemmaId::Moebius)
    }

    /// Parameters inside the lemma's stated admissible range.
    pub fn reference_params(&self) -> LemmaParams {
        match self {
            LemmaId::First3 => LemmaParams::real(1.5),
            LemmaId::First4 => LemmaParams::real(4.0),
            LemmaId::SqMinus1 => LemmaParams {
                beta: ComplexValue::new(1.0, 0.5),
                gamma: 1.0,
            },
            LemmaId::Sq2 => LemmaParams::real(3.0),
            LemmaId::SqRat => LemmaParams::with_gamma(1.0, 1.0),
            LemmaId::One0 => LemmaParams::real(1.2),
            LemmaId::One1 => LemmaParams::real(1.7),
            LemmaId::One2 => LemmaParams::real(2.4),
            LemmaId::Moebius => LemmaParams::real(2.0),
            LemmaId::SecondWeighted => LemmaParams::with_gamma(0.25, 0.5),
            _ => LemmaParams::real(1.0),
        }
    }

    /// Closed-form g(θ) for this lemma.
    ///
    /// For second-order lemmas this is the minimum of `|ψ − c|` over the
    /// admissible t half-plane, which coincides with the analytic lower bound
    /// whenever that bound is positive.
    pub fn closed_form_g(&self, theta: f64, m: f64, params: &LemmaParams) -> Result<f64> {
        make_triple(theta, m)?;
        let c2 = (2.0 * theta).cos();
        let sec = 1.0 / c2;
        let x = params.beta_re() * m;
        let root_sec1 = (sec + 1.0).sqrt();
        let g = match self {
            LemmaId::First0 => {
                1.0 + 2.0 * x + 1.25 * x * x + x.powi(3) / 4.0 + x.powi(4) / 64.0 * sec * sec
            }
            LemmaId::First1 => {
                1.0 + x.powi(4) / 256.0 * sec.powi(4)
                    + x * x / 8.0 * sec * sec
                    + x * x / 2.0 * sec
                    + x * root_sec1
                    + x.powi(3) / 16.0 * root_sec1 * sec * sec
            }
            LemmaId::First2 => {
                1.0 + x
                    + 5.0 * x * x / 16.0 * sec * sec
                    + x.powi(3) / 32.0 * sec.powi(4)
                    + x.powi(4) / 1024.0 * sec.powi(6)
            }
            LemmaId::First3 => {
                1.0 + x * x / 32.0 * (4.0 * sec.powi(3) + 2.0 * sec * sec - sec.powi(4))
                    + x / SQRT_2 * sec.powf(1.5) * (3.0 * theta).cos()
                    + x.powi(4) / 4096.0 * sec.powi(8)
                    + x.powi(3) / (64.0 * SQRT_2) * sec.powf(5.5) * theta.cos()
            }
            LemmaId::First4 => {
                1.0 + x * (1.0 - 0.5 * sec * sec)
                    + x * x / 64.0 * (sec.powi(4) + 4.0 * sec * sec)
                    + x.powi(3) / 256.0 * sec.powi(6)
                    + x.powi(4) / (128.0 * 128.0) * sec.powi(10)
            }
            LemmaId::SqMinus1 => (1.0 + params.beta * m / 2.0).norm_sqr(),
            LemmaId::Sq0 => 1.0 + x * x / 8.0 * sec + x / 2.0 * root_sec1,
            LemmaId::Sq1 => 1.0 + x * x / (16.0 * c2 * c2) + x / 2.0,
            LemmaId::Sq2 => {
                1.0 + x * x / (32.0 * c2.powi(3))
                    + x * (3.0 * theta).cos() / (2.0 * SQRT_2 * c2.powf(1.5))
            }
            LemmaId::SqRat => {
                let (b, g) = (params.beta_re(), params.gamma);
                let d = 2.0 * b * b + g * g * sec + 2.0 * b * g * root_sec1;
                let d2 = d * d;
                1.0 + b * b * m * m * sec * sec / (4.0 * d2)
                    + g * g * m * m * sec.powi(3) / (8.0 * d2)
                    + b * g * m * m * root_sec1 * sec * sec / (4.0 * d2)
                    + b * m / d
                    + g * m * root_sec1 * sec / (2.0 * d)
            }
            LemmaId::One0 => {
                x.powi(4) / 64.0 * sec * sec
                    + x.powi(3) / (4.0 * SQRT_2) * sec.powf(1.5) * (3.0 * theta).cos()
                    + x * x / 2.0 * sec
            }
            LemmaId::One1 => {
                x.powi(4) / 256.0 * sec.powi(4) + (x * x / 4.0 + x.powi(3) / 16.0) * sec * sec
            }
            LemmaId::One2 => {
                x.powi(4) / 1024.0 * sec.powi(6)
                    + x * x / 8.0 * sec.powi(3)
                    + x.powi(3) / 64.0 * sec.powi(4) * root_sec1
            }
            LemmaId::Moebius => {
                let y = 1.0 + x / 2.0;
                4.0 * y * y / (y * y + 4.0 + 4.0 * y * (4.0 * theta).cos())
            }
            LemmaId::Ex1 => m / (2.0 * (2.0 * c2).sqrt()),
            LemmaId::Ex2 => m / 4.0,
            LemmaId::Ex3 => m / (4.0 * SQRT_2 * c2.powf(1.5)),
            LemmaId::SecondSum => 3.0 * m * m / (8.0 * (2.0 * c2).sqrt()),
            LemmaId::SecondSqSum => theta.cos() + 3.0 * m * m / (8.0 * SQRT_2) * sec.sqrt(),
            LemmaId::SecondWeighted => {
                let (b, g) = (params.beta_re(), params.gamma);
                (4.0 * m * (g - b) + 3.0 * b * m * m) / (8.0 * (2.0 * c2).sqrt())
            }
        };
        Ok(g)
    }

    /// The θ = 0 value of g as a polynomial/rational expression in m and β.
    ///
    /// This is the minimum of g only where θ = 0 is the minimizer, which for
    /// `first3`, `first4` and `sq2` requires β·m above the stated bound.
    pub fn min_g_formula(&self, m: f64, params: &LemmaParams) -> f64 {
        let x = params.beta_re() * m;
        match self {
            LemmaId::First0 => 1.0 + 2.0 * x + 5.0 * x * x / 4.0 + x.powi(3) / 4.0 + x.powi(4) / 64.0,
            LemmaId::First1 => {
                1.0 + SQRT_2 * x
                    + 5.0 * x * x / 8.0
                    + x.powi(3) / (8.0 * SQRT_2)
                    + x.powi(4) / 256.0
            }
            LemmaId::First2 => {
                1.0 + x + 5.0 * x * x / 16.0 + x.powi(3) / 32.0 + x.powi(4) / 1024.0
            }
            LemmaId::First3 => {
                1.0 + x / SQRT_2
                    + 5.0 * x * x / 32.0
                    + x.powi(3) / (64.0 * SQRT_2)
                    + x.powi(4) / 4096.0
            }
            LemmaId::First4 => {
                1.0 + x / 2.0 + 5.0 * x * x / 64.0 + x.powi(3) / 256.0 + x.powi(4) / (128.0 * 128.0)
            }
            LemmaId::SqMinus1 => (1.0 + params.beta * m / 2.0).norm_sqr(),
            LemmaId::Sq0 => 1.0 + x * x / 8.0 + x / SQRT_2,
            LemmaId::Sq1 => 1.0 + x * x / 16.0 + x / 2.0,
            LemmaId::Sq2 => 1.0 + x * x / 32.0 + x / (2.0 * SQRT_2),
            LemmaId::SqRat => {
                let (b, g) = (params.beta_re(), params.gamma);
                let e = b * SQRT_2 + g;
                let (e2, e4) = (e * e, e.powi(4));
                1.0 + b * b * m * m / (4.0 * e4)
                    + g * g * m * m / (8.0 * e4)
                    + b * g * m * m / (2.0 * SQRT_2 * e4)
                    + b * m / e2
                    + g * m / (SQRT_2 * e2)
            }
            LemmaId::One0 => x.powi(4) / 64.0 + x.powi(3) / (4.0 * SQRT_2) + x * x / 2.0,
            LemmaId::One1 => x.powi(4) / 256.0 + x * x / 4.0 + x.powi(3) / 16.0,
            LemmaId::One2 => x.powi(4) / 1024.0 + x * x / 8.0 + x.powi(3) / (32.0 * SQRT_2),
            LemmaId::Moebius => {
                let y = 1.0 + x / 2.0;
                4.0 * y * y / (y * y + 4.0 * y + 4.0)
            }
            LemmaId::Ex1 => m / (2.0 * SQRT_2),
            LemmaId::Ex2 => m / 4.0,
            LemmaId::Ex3 => m / (4.0 * SQRT_2),
            LemmaId::SecondSum => 3.0 * m * m / (8.0 * SQRT_2),
            LemmaId::SecondSqSum => 1.0 + 3.0 * m * m / (8.0 * SQRT_2),
            LemmaId::SecondWeighted => {
                let (b, g) = (params.beta_re(), params.gamma);
                (4.0 * m * (g - b) + 3.0 * b * m * m) / (8.0 * SQRT_2)
            }
        }
    }

    /// g(θ) computed from ψ itself rather than from the closed form.
    pub fn direct_g(&self, theta: f64, m: f64, params: &LemmaParams) -> Result<f64> {
        let triple = make_triple(theta, m)?;
        let form = self.form(params)?;
        let quantity = self.g_quantity();
        if form.order() == 2 {
            let best = min_over_t(&form, &triple, &self.region())?;
            return Ok(best.objective);
        }
        let psi = evaluate(&form, &triple, None)?;
        Ok(quantity.of(psi))
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL.iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

/// `closed_form_g` by string id.
pub fn closed_form_g(lemma_id: &str, theta: f64, m: f64, beta: f64, gamma: f64) -> Result<f64> {
    let id: LemmaId = lemma_id.parse()?;
    id.closed_form_g(theta, m, &LemmaParams::with_gamma(beta, gamma))
}

/// `min_g_formula` by string id.
pub fn min_g_formula(lemma_id: &str, m: f64, beta: f64, gamma: f64) -> Result<f64> {
    let id: LemmaId = lemma_id.parse()?;
    Ok(id.min_g_formula(m, &LemmaParams::with_gamma(beta, gamma)))
}

/// `closed_form_beta` by string id.
pub fn closed_form_beta(lemma_id: &str) -> Result<f64> {
    let id: LemmaId = lemma_id.parse()?;
    id.closed_form_beta()
        .ok_or_else(|| Error::Unsupported(format!("no closed-form threshold for {lemma_id}")))
}
