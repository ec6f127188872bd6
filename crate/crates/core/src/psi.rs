//! The differential functionals ψ(a, b[, c]) with `a = p`, `b = zp'`, `c = z²p''`.

use serde::{Deserialize, Serialize};

use crate::boundary::AdmissibleTriple;
use crate::error::{Error, Result};
use crate::geometry::ComplexValue;

/// Closed set of functionals. Extending it is a code change.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsiForm {
    /// `a + β·b/aⁿ`, n ∈ 0..=4
    FirstOrderPlus { n: u8, beta: ComplexValue },
    /// `a² + β·b/aⁿ`, n ∈ −1..=2 (n = −1 is `a² + β·a·b`)
    SquarePlus { n: i8, beta: ComplexValue },
    /// `a² + b/(β·a + γ)`
    SquareRational { beta: f64, gamma: f64 },
    /// `1 + β·b/aⁿ`, n ∈ 0..=2
    OnePlus { n: u8, beta: f64 },
    /// `b/a`
    ExampleDerivOverP,
    /// `b + c`
    SecondOrderSum,
    /// `a² + b + c`
    SecondOrderSquareSum,
    /// `γ·b + β·c`
    SecondOrderWeighted { gamma: f64, beta: f64 },
}

fn finite(z: ComplexValue) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl PsiForm {
    pub fn order(&self) -> u8 {
        match self {
            PsiForm::SecondOrderSum
            | PsiForm::SecondOrderSquareSum
            | PsiForm::SecondOrderWeighted { .. } => 2,
            _ => 1,
        }
    }

    /// Parameter checks. Complex β is only accepted for `a² + β·a·b`.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Configuration(msg));
        match *self {
            PsiForm::FirstOrderPlus { n, beta } => {
                if n > 4 {
                    return bad(format!("first-order exponent n={n} outside 0..=4"));
                }
                if !finite(beta) || beta.im != 0.0 {
                    return bad(format!("beta must be real and finite, got {beta}"));
                }
            }
            PsiForm::SquarePlus { n, beta } => {
                if !(-1..=2).contains(&n) {
                    return bad(format!("square exponent n={n} outside -1..=2"));
                }
                if !finite(beta) || (n != -1 && beta.im != 0.0) {
                    return bad(format!("beta must be real and finite for n={n}, got {beta}"));
                }
            }
            PsiForm::SquareRational { beta, gamma } => {
                if !(beta > 0.0 && gamma > 0.0 && beta.is_finite() && gamma.is_finite()) {
                    return bad(format!("beta, gamma must be positive, got {beta}, {gamma}"));
                }
            }
            PsiForm::OnePlus { n, beta } => {
                if n > 2 {
                    return bad(format!("exponent n={n} outside 0..=2"));
                }
                if !beta.is_finite() {
                    return bad("beta must be finite".into());
                }
            }
            PsiForm::SecondOrderWeighted { gamma, beta } => {
                if !(gamma.is_finite() && beta.is_finite()) {
                    return bad("gamma, beta must be finite".into());
                }
            }
            PsiForm::ExampleDerivOverP | PsiForm::SecondOrderSum | PsiForm::SecondOrderSquareSum => {}
        }
        Ok(())
    }

    /// ψ(a, b, c). `c` must be present exactly for second-order forms.
    pub fn apply(
        &self,
        a: ComplexValue,
        b: ComplexValue,
        c: Option<ComplexValue>,
    ) -> Result<ComplexValue> {
        match (self.order(), c) {
            (2, None) => return Err(Error::Arity("second-order form needs t".into())),
            (1, Some(_)) => return Err(Error::Arity("first-order form takes no t".into())),
            _ => {}
        }
        let inv_pow = |n: i32| -> Result<ComplexValue> {
            if a.re == 0.0 && a.im == 0.0 && n > 0 {
                return Err(Error::Domain("a = 0 in a denominator".into()));
            }
            Ok(a.powi(-n))
        };
        let value = match *self {
            PsiForm::FirstOrderPlus { n, beta } => a + beta * b * inv_pow(n as i32)?,
            PsiForm::SquarePlus { n, beta } => a * a + beta * b * inv_pow(n as i32)?,
            PsiForm::SquareRational { beta, gamma } => {
                let den = beta * a + gamma;
                if den.re == 0.0 && den.im == 0.0 {
                    return Err(Error::Domain("beta*a + gamma = 0".into()));
                }
                a * a + b / den
            }
            PsiForm::OnePlus { n, beta } => 1.0 + beta * b * inv_pow(n as i32)?,
            PsiForm::ExampleDerivOverP => b * inv_pow(1)?,
            PsiForm::SecondOrderSum => b + c.unwrap(),
            PsiForm::SecondOrderSquareSum => a * a + b + c.unwrap(),
            PsiForm::SecondOrderWeighted { gamma, beta } => gamma * b + beta * c.unwrap(),
        };
        Ok(value)
    }

    /// Coefficient κ in `ψ(a, b, t) = ψ(a, b, 0) + κ·t` for second-order forms.
    pub fn t_coefficient(&self) -> Option<f64> {
        match *self {
            PsiForm::SecondOrderSum | PsiForm::SecondOrderSquareSum => Some(1.0),
            PsiForm::SecondOrderWeighted { beta, .. } => Some(beta),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            PsiForm::FirstOrderPlus { n, beta } => format!("a + ({beta})*b/a^{n}"),
            PsiForm::SquarePlus { n: -1, beta } => format!("a^2 + ({beta})*a*b"),
            PsiForm::SquarePlus { n, beta } => format!("a^2 + ({beta})*b/a^{n}"),
            PsiForm::SquareRational { beta, gamma } => format!("a^2 + b/({beta}*a + {gamma})"),
            PsiForm::OnePlus { n, beta } => format!("1 + {beta}*b/a^{n}"),
            PsiForm::ExampleDerivOverP => "b/a".into(),
            PsiForm::SecondOrderSum => "b + c".into(),
            PsiForm::SecondOrderSquareSum => "a^2 + b + c".into(),
            PsiForm::SecondOrderWeighted { gamma, beta } => format!("{gamma}*b + {beta}*c"),
        }
    }
}

/// ψ(r, s, t) at boundary data.
pub fn evaluate(
    form: &PsiForm,
    triple: &AdmissibleTriple,
    t: Option<ComplexValue>,
) -> Result<ComplexValue> {
    form.apply(triple.r, triple.s, t)
}
