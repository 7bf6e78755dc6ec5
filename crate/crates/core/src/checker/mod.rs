//! Exact realizability of period data.
//!
//! Cocycles take values in `R²` with coordinates that are rational
//! combinations of declared ℚ-independent reals. Lattice detection, `Ψ`,
//! and the min-max inequality of the realizability theorem are all decided
//! without floating point; only signs of irrational quantities use
//! certified interval bounds.

mod cocycle;
mod minmax;
mod scalar;

use thiserror::Error;

pub use cocycle::{
    gl2_act, is_lattice, point_push, psi_of_cocycle, restrict, surface_cocycle, synthetic_lattice_cocycle, theorem1_check,
    volume, AbsoluteCocycle, CocycleJson, ExactCocycle, FailedCondition, LatticeCheck, LatticeInfo, Matrix,
    Psi, RealizabilityVerdict, Vector,
};
pub use minmax::{minmax_assignment, Assignment};
pub use scalar::{DeclaredReal, ExactScalar, Monomial, RealBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("class sizes {sizes:?} do not add up to {count} weights")]
    SizeMismatch { sizes: Vec<usize>, count: usize },
    #[error("matrix determinant {0} is not positive")]
    SingularMatrix(String),
    #[error("relative shift for zero {0} is not in the absolute period image")]
    NotInAbsoluteImage(usize),
    #[error("cannot certify the sign of {0} with the given approximations")]
    SignUndetermined(String),
    #[error("volume {0} is not an integer multiple of the covolume {1}")]
    NonIntegralDegree(String, String),
    #[error("cocycle schema: {0}")]
    Schema(String),
}
