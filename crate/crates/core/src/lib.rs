//! Admissibility machinery for the lemniscate of Bernoulli, the image of the
//! unit disk under `q(z) = √(1+z)`.
//!
//! The crate checks, for a catalog of first- and second-order forms ψ,
//! whether ψ maps every boundary triple of the lemniscate class outside a
//! target region Ω. A form passing the check gives the differential
//! subordination implication `ψ(p, zp', z²p'') ∈ Ω ⇒ p ≺ √(1+z)`.

// `!(x > y)` is used on purpose so NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod admissibility;
pub mod boundary;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod psi;
pub mod series;
pub mod thresholds;
pub mod verifier;

pub use admissibility::{check_admissible, min_over_t, GridSpec, Verdict, Witness};
pub use boundary::{curvature_identity, make_triple, t_halfplane, AdmissibleTriple};
pub use catalog::{LemmaId, LemmaParams};
pub use error::{Error, Result};
pub use geometry::{ComplexValue, TargetRegion};
pub use psi::PsiForm;
pub use series::TruncatedSeries;
pub use thresholds::{find_beta_threshold, ThresholdResult};
pub use verifier::{image_in_region, verify_implication, ProbeSpec};
