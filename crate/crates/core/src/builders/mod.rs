//! Explicit surfaces in every connected component.
//!
//! Zero classes `P` are given as lists of zero indices into
//! [`Stratum::orders`] (orders sorted in non-increasing order). Every
//! surface returned by [`build_component`] has been checked against its own
//! request: stratum, component, absolute periods `Z + iZ`, volume `d`, and
//! `Ψ = P` up to renaming zeros of equal order.

mod diagram;
mod patterns;
mod polygon;

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::checker::CheckError;
use crate::flat::{absolute_period_lattice, branch_profile, FlatError, GridSurface, Stratum};
use crate::invariants::{component_of, hyperelliptic_involution, ComponentTag, InvariantError};

pub use diagram::{compile_diagram, HSlit, Side, SlitTorusDiagram, VSlit};
pub use patterns::{
    build_even, build_general, build_hyp_double, build_hyp_minimal, build_odd, class_width, even_diagram,
    general_diagram, hyp_double_diagram, hyp_double_same_class_origami, hyp_minimal_diagram, odd_diagram,
};
pub use polygon::{build_genus2, verify_polygon_surface, EdgeRef, Polygon, PolygonSurface};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("overlapping slits: {0}")]
    OverlappingSlits(String),
    #[error("unmatched slit sides: {0}")]
    UnmatchedSides(String),
    #[error("invalid diagram: {0}")]
    BadDiagram(String),
    #[error("diagram line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("width d = {d} is too small: this construction needs d >= {needed}")]
    WidthTooSmall { needed: usize, d: usize },
    #[error("no such component: {stratum} has no {label} component")]
    NoSuchComponent { stratum: String, label: String },
    #[error("zero classes {0}")]
    BadClasses(String),
    #[error("built surface fails verification: {0}")]
    VerificationFailed(String),
    #[error("cocycle is not normalized: {0}")]
    NotNormalized(String),
    #[error("genus {0} is not supported by this construction")]
    WrongGenus(usize),
    #[error("inconsistent gluing: {0}")]
    InconsistentGluing(String),
    #[error(transparent)]
    Flat(#[from] FlatError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Checks that `classes` partitions the zero indices of `stratum`.
pub fn validate_classes(stratum: &Stratum, classes: &[Vec<usize>]) -> Result<(), BuildError> {
    let k = stratum.num_zeros();
    let mut seen = vec![false; k];
    for c in classes {
        if c.is_empty() {
            return Err(BuildError::BadClasses("contain an empty class".into()));
        }
        for &j in c {
            if j >= k || seen[j] {
                return Err(BuildError::BadClasses(format!("{classes:?} do not partition the {k} zeros of {stratum}")));
            }
            seen[j] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(BuildError::BadClasses(format!("{classes:?} miss some zeros of {stratum}")));
    }
    Ok(())
}

/// Orders of the zeros in each class.
pub fn class_orders(stratum: &Stratum, classes: &[Vec<usize>]) -> Vec<Vec<usize>> {
    classes.iter().map(|c| c.iter().map(|&j| stratum.orders()[j]).collect()).collect()
}

/// A partition up to renaming zeros of equal order: the sorted multiset of
/// sorted order lists.
pub fn class_shape(orders: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut shape: Vec<Vec<usize>> = orders
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable_by(|a, b| b.cmp(a));
            c
        })
        .collect();
    shape.sort_unstable_by(|a, b| b.cmp(a));
    shape
}

/// One representative of every zero partition of `stratum`, up to renaming
/// zeros of equal order.
pub fn zero_partitions(stratum: &Stratum) -> Vec<Vec<Vec<usize>>> {
    fn go(j: usize, k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if j == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..cur.len() {
            cur[i].push(j);
            go(j + 1, k, cur, out);
            cur[i].pop();
        }
        cur.push(vec![j]);
        go(j + 1, k, cur, out);
        cur.pop();
    }
    let mut all = Vec::new();
    go(0, stratum.num_zeros(), &mut Vec::new(), &mut all);
    let mut seen = BTreeSet::new();
    all.into_iter().filter(|p| seen.insert(class_shape(&class_orders(stratum, p)))).collect()
}

/// Parses `"1,2|3"`: classes separated by `|`, 1-based zero indices in the
/// order the stratum lists its zeros.
pub fn parse_classes(text: &str) -> Result<Vec<Vec<usize>>, BuildError> {
    text.split('|')
        .map(|c| {
            c.split(',')
                .map(|t| match t.trim().parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(BuildError::BadClasses(format!("bad zero index {t:?} in {text:?}"))),
                })
                .collect()
        })
        .collect()
}

pub fn format_classes(classes: &[Vec<usize>]) -> String {
    classes
        .iter()
        .map(|c| c.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

/// Everything the pipeline reports about a surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub stratum: String,
    pub genus: usize,
    pub component: String,
    pub volume: Rational64,
    pub lattice_is_standard: bool,
    pub lattice_covolume: Rational64,
    /// Orders of the zeros in each `Ψ` class; empty unless the lattice is
    /// standard.
    pub psi_orders: Vec<Vec<usize>>,
    pub psi: Vec<usize>,
    /// Fixed points of the hyperelliptic involution, when there is one.
    pub involution_fixed_points: Option<usize>,
    pub cylinders: usize,
}

pub fn surface_report(s: &GridSurface) -> Result<SurfaceReport, BuildError> {
    let stratum = s.stratum();
    let lattice = absolute_period_lattice(s)?;
    let (psi_orders, psi) = if lattice.is_standard {
        let profile = branch_profile(s)?;
        let orders: Vec<Vec<usize>> =
            profile.classes.iter().map(|c| c.iter().map(|&i| s.zeros()[i].order).collect()).collect();
        (class_shape(&orders), profile.psi)
    } else {
        (Vec::new(), Vec::new())
    };
    let (component, involution) = if stratum.genus() >= 2 {
        let tag = component_of(s)?.tag;
        let inv = if tag == ComponentTag::Hyperelliptic || stratum.genus() == 2 {
            hyperelliptic_involution(s)?.map(|i| i.fixed_points())
        } else {
            None
        };
        (tag.short().to_string(), inv)
    } else {
        (ComponentTag::Connected.short().to_string(), None)
    };
    Ok(SurfaceReport {
        stratum: stratum.to_string(),
        genus: stratum.genus(),
        component,
        volume: s.volume(),
        lattice_is_standard: lattice.is_standard,
        lattice_covolume: lattice.covolume,
        psi_orders,
        psi,
        involution_fixed_points: involution,
        cylinders: crate::flat::cylinder_decomposition(s).cylinders.len(),
    })
}

/// Checks a surface against a build request.
pub fn verify_build(
    s: &GridSurface,
    stratum: &Stratum,
    tag: ComponentTag,
    classes: &[Vec<usize>],
    d: usize,
) -> Result<SurfaceReport, BuildError> {
    let report = surface_report(s)?;
    let fail = |what: String| Err(BuildError::VerificationFailed(what));
    if report.stratum != stratum.to_string() {
        return fail(format!("stratum {} instead of {stratum}", report.stratum));
    }
    if report.component != tag.short() {
        return fail(format!("component {} instead of {}", report.component, tag.short()));
    }
    if report.volume != Rational64::from_integer(d as i64) {
        return fail(format!("volume {} instead of {d}", report.volume));
    }
    if !report.lattice_is_standard {
        return fail(format!("absolute periods have covolume {}", report.lattice_covolume));
    }
    let want = class_shape(&class_orders(stratum, classes));
    if report.psi_orders != want {
        return fail(format!("zero classes {:?} instead of {want:?}", report.psi_orders));
    }
    Ok(report)
}

/// A verified surface in component `tag` of `stratum`, volume `d`,
/// absolute periods `Z + iZ` and zero classes `classes`.
pub fn build_component(
    stratum: &Stratum,
    tag: ComponentTag,
    classes: &[Vec<usize>],
    d: usize,
) -> Result<GridSurface, BuildError> {
    use ComponentTag::*;
    validate_classes(stratum, classes)?;
    let no_such = || BuildError::NoSuchComponent { stratum: stratum.to_string(), label: tag.short().to_string() };
    if !crate::invariants::kz_components(stratum).contains(&tag) {
        return Err(no_such());
    }
    let g = stratum.genus();
    if g < 2 {
        // only the unit square has absolute periods Z + iZ
        if d != 1 {
            return Err(BuildError::WrongGenus(g));
        }
        return Ok(GridSurface::torus());
    }
    let needed = class_width(stratum, classes);
    if d < needed {
        return Err(BuildError::WidthTooSmall { needed, d });
    }
    let s = match tag {
        Hyperelliptic if stratum.is_minimal() => build_hyp_minimal(g, d)?,
        Hyperelliptic => build_hyp_double(g, d, classes.len() == 1)?,
        SpinOdd => build_odd(stratum, classes, d)?,
        SpinEven => build_even(stratum, classes, d)?,
        Connected if stratum.all_even() => build_hyp_minimal(g, d)?,
        // a single pair of simple zeros has only even horizontal periods
        // as a slit pattern, so H(1,1) with one class is square-tiled
        Connected if stratum.is_double() && classes.len() == 1 && g == 2 => build_hyp_double(g, d, true)?,
        Connected | NonHyperelliptic => build_general(stratum, classes, d)?,
    };
    verify_build(&s, stratum, tag, classes, d)?;
    Ok(s)
}
