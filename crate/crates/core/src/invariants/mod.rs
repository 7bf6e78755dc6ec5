//! Invariants that tell the components of a stratum apart.
//!
//! Spin parity comes from the Arf invariant of the quadratic form
//! `q(γ) = Ind(γ) + 1 mod 2` on simple closed curves; hyperellipticity from
//! an exhaustive search for `-1` involutions; [`component_of`] combines both
//! through the KZ table.

mod involution;
mod kz;

use thiserror::Error;

use crate::flat::{
    cylinder_decomposition, homology_symplectic_basis, CylinderDiagram, Detour, EdgePath, FlatError,
    GridSurface, SymplecticHomologyBasis,
};

pub use involution::{hyperelliptic_involution, involution_search, FlatInvolution};
pub use kz::{kz_components, ComponentLabel, ComponentTag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("spin parity needs all zero orders even (found order {0})")]
    OddOrderZero(usize),
    #[error("diagram has {0} cylinders, expected one")]
    NotSingleCylinder(usize),
    #[error("no zero to anchor the grid; involutions of an unbranched torus are not searched")]
    UnsupportedMarks,
    #[error("the path is not closed")]
    OpenPath,
    #[error("invariants give {tag} which is not a component of {stratum}")]
    Inconsistent { stratum: String, tag: String },
    #[error(transparent)]
    Flat(#[from] FlatError),
}

fn require_even(s: &GridSurface) -> Result<(), InvariantError> {
    match s.zeros().iter().find(|z| z.order % 2 == 1) {
        Some(z) => Err(InvariantError::OddOrderZero(z.order)),
        None => Ok(()),
    }
}

/// Parity of the winding index of a closed edge path, each vertex on the
/// path passed by `detour`.
pub fn winding_parity(s: &GridSurface, path: &EdgePath, detour: Detour) -> Result<u8, InvariantError> {
    require_even(s)?;
    if !path.is_closed(s) {
        return Err(InvariantError::OpenPath);
    }
    let t = path.turning_quarters(s, detour);
    debug_assert_eq!(t.rem_euclid(4), 0);
    Ok((t / 4).rem_euclid(2) as u8)
}

/// `q` on each generator of the basis (simple dual cycles).
fn generator_q(basis: &SymplecticHomologyBasis) -> Vec<i64> {
    basis
        .generators
        .iter()
        .map(|g| {
            let w = g.winding().expect("fundamental cycles never reverse");
            (w + 1).rem_euclid(2)
        })
        .collect()
}

/// `q` of an integer combination of generators.
fn q_of(basis: &SymplecticHomologyBasis, q_gen: &[i64], x: &[i64]) -> i64 {
    let mut t: i64 = x.iter().zip(q_gen).map(|(c, q)| c * q).sum();
    for i in 0..x.len() {
        if x[i] == 0 {
            continue;
        }
        for j in i + 1..x.len() {
            t += x[i] * x[j] * basis.generator_gram[i][j];
        }
    }
    t.rem_euclid(2)
}

/// Arf invariant of the spin structure, computed in a given basis.
/// Each `coefficients` row pair is taken as `(a_i, b_i)`.
pub fn arf_in_basis(s: &GridSurface, basis: &SymplecticHomologyBasis, rows: &[Vec<i64>]) -> Result<u8, InvariantError> {
    require_even(s)?;
    let q = generator_q(basis);
    let mut arf = 0;
    for pair in rows.chunks(2) {
        arf += q_of(basis, &q, &pair[0]) * q_of(basis, &q, &pair[1]);
    }
    Ok(arf.rem_euclid(2) as u8)
}

/// Spin parity `Σ q(a_i) q(b_i) mod 2`.
pub fn arf_invariant(s: &GridSurface) -> Result<u8, InvariantError> {
    require_even(s)?;
    let basis = homology_symplectic_basis(s);
    arf_in_basis(s, &basis, &basis.coefficients)
}

/// Zorich's criterion for one-cylinder surfaces: hyperelliptic iff the
/// bottom piece `B_i` is glued to `T_{k+1-i}` after rotating the top.
pub fn single_cylinder_hyperelliptic_check(d: &CylinderDiagram) -> Result<bool, InvariantError> {
    if d.cylinders.len() != 1 {
        return Err(InvariantError::NotSingleCylinder(d.cylinders.len()));
    }
    let c = &d.cylinders[0];
    let k = c.bottom.len();
    if k == 0 {
        return Ok(true);
    }
    let sigma: Vec<usize> = c.bottom.iter().map(|b| b.glued_to.1).collect();
    let first = sigma[0] % k;
    Ok(sigma.iter().enumerate().all(|(i, &t)| (t + i) % k == first))
}

pub fn is_single_cylinder(s: &GridSurface) -> bool {
    cylinder_decomposition(s).cylinders.len() == 1
}

/// The KZ component containing `s`.
pub fn component_of(s: &GridSurface) -> Result<ComponentLabel, InvariantError> {
    use ComponentTag::*;
    let stratum = s.stratum();
    let comps = kz_components(&stratum);
    let tag = if comps.len() == 1 {
        comps[0]
    } else if comps.contains(&Hyperelliptic) && hyperelliptic_involution(s)?.is_some() {
        Hyperelliptic
    } else if stratum.all_even() {
        match arf_invariant(s)? {
            0 => SpinEven,
            _ => SpinOdd,
        }
    } else {
        NonHyperelliptic
    };
    if !comps.contains(&tag) {
        return Err(InvariantError::Inconsistent { stratum: stratum.to_string(), tag: tag.to_string() });
    }
    Ok(ComponentLabel { stratum, tag })
}
