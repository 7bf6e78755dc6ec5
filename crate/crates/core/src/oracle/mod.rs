//! Brute-force ground truth.
//!
//! Exhaustive enumeration of small origamis, monodromy data of torus
//! covers with several branch points, their Hurwitz orbits, and
//! existence/nonexistence certificates used by the acceptance suite.

mod enumerate;
mod monodromy;

use thiserror::Error;

use crate::invariants::InvariantError;

pub use enumerate::{
    census, census_csv, cycle_type_representative, enumerate_origamis, partitions, CensusRow,
};
pub use monodromy::{
    canonical_tuple, certify, hurwitz_orbit, hurwitz_orbit_capped, Certificate, DatumJson, Evidence, MonodromyDatum,
    ORBIT_CAP,
};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("{requested} cells exceeds the enumeration bound {bound} (set STRATUMFORGE_MAX_CELLS to raise it)")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("invalid monodromy datum: {0}")]
    InvalidDatum(String),
    #[error("orbit exploration exceeded {0} states")]
    OrbitTooLarge(usize),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Enumeration bound, overridable through `STRATUMFORGE_MAX_CELLS`.
pub fn max_cells(default: usize) -> usize {
    std::env::var("STRATUMFORGE_MAX_CELLS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}
