//! Square-tiled and grid surfaces.
//!
//! A [`GridSurface`] is a finite set of congruent rectangles ("cells")
//! glued edge to edge by two permutations: `right(c)` is the cell glued to
//! the right side of `c`, `up(c)` the cell glued on top. With unit cells this
//! is an origami; refined grids (cell width `1/2`, height `1/l`) carry the
//! slit constructions of the builders module.
//!
//! Vertices are never embedded geometrically. A vertex is the orbit of a
//! cell's bottom-left corner under the corner map
//! `c ↦ up ∘ right ∘ up⁻¹ ∘ right⁻¹ (c)`, which walks counterclockwise
//! around the vertex one full turn (four quadrants) per step. A vertex whose
//! orbit has length `m` has cone angle `2πm` and is a zero of order `m - 1`.

mod cylinder;
pub(crate) mod format;
mod homology;
mod lattice;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{is_transitive, Perm};

pub use cylinder::{cylinder_decomposition, Cylinder, CylinderDiagram, SaddleConnection};
pub use format::{OrigamiJson, ParseOrigamiError};
pub use homology::{
    fundamental_cycles, homology_basis_from, homology_symplectic_basis, intersection,
    symplectic_reduce, CellPath, Detour, EdgeDir, EdgePath, EdgeStep, Move, SymplecticHomologyBasis,
};
pub use lattice::{absolute_period_lattice, branch_profile, zero_classes, BranchProfile, PeriodLattice};
pub(crate) use lattice::corner_positions;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlatError {
    #[error("right/up are not permutations of the same set of {0} cells")]
    BadPermutation(usize),
    #[error("the surface is not connected: <right, up> is not transitive")]
    NotTransitive,
    #[error("cell scales must be positive, got {0} x {1}")]
    BadScale(Rational64, Rational64),
    #[error("declared marks {declared} do not match the corner cycles {computed}")]
    MarksMismatch { declared: String, computed: String },
    #[error("period image has rank {0} < 2")]
    RankDeficient(usize),
    #[error("absolute periods span a proper sublattice of Z+iZ (covolume {0})")]
    NotPrimitive(Rational64),
}

/// A zero of the abelian differential: the vertex at the bottom-left corner
/// of `cell` (the smallest such cell), with its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZeroMark {
    pub cell: usize,
    pub order: usize,
}

/// Multiset of zero orders, kept in non-increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Stratum {
    orders: Vec<usize>,
}

impl Stratum {
    /// `orders` must be positive with an even sum. The empty stratum is the
    /// unbranched torus (genus one).
    pub fn new(mut orders: Vec<usize>) -> Option<Self> {
        if orders.iter().any(|&n| n == 0) || orders.iter().sum::<usize>() % 2 != 0 {
            return None;
        }
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Some(Stratum { orders })
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn num_zeros(&self) -> usize {
        self.orders.len()
    }

    pub fn genus(&self) -> usize {
        self.orders.iter().sum::<usize>() / 2 + 1
    }

    pub fn all_even(&self) -> bool {
        self.orders.iter().all(|n| n % 2 == 0)
    }

    /// `H(2g-2)`.
    pub fn is_minimal(&self) -> bool {
        self.orders.len() == 1
    }

    /// `H(g-1, g-1)`.
    pub fn is_double(&self) -> bool {
        self.orders.len() == 2 && self.orders[0] == self.orders[1]
    }

    /// Every stratum of genus `g`, in reverse lexicographic order of orders.
    pub fn all_of_genus(g: usize) -> Vec<Stratum> {
        fn parts(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                parts(rest - p, p, cur, out);
                cur.pop();
            }
        }
        if g == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        parts(2 * g - 2, 2 * g - 2, &mut Vec::new(), &mut out);
        out.into_iter().map(|orders| Stratum { orders }).collect()
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H(")?;
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Stratum {
    type Err = String;

    /// Accepts `H(3,3)`, `H(4)`, `H()` and the bare list `3,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix("H(")
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t);
        let orders = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|e| format!("bad order {x:?}: {e}")))
                .collect::<Result<Vec<_>, _>>()?
        };
        Stratum::new(orders).ok_or_else(|| format!("{s:?} is not a stratum (positive orders, even sum)"))
    }
}

/// A connected surface tiled by `n` congruent `scale_x × scale_y` cells.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GridSurface {
    right: Perm,
    up: Perm,
    right_inv: Perm,
    up_inv: Perm,
    scale_x: Rational64,
    scale_y: Rational64,
    corner: Perm,
    /// vertex index of each cell's bottom-left corner
    vertex_of: Vec<usize>,
    /// counterclockwise corner cycles, one per vertex
    vertices: Vec<Vec<usize>>,
    zeros: Vec<ZeroMark>,
}

impl GridSurface {
    /// Validating constructor; images are 0-based.
    pub fn new(
        right: Vec<usize>,
        up: Vec<usize>,
        scale_x: Rational64,
        scale_y: Rational64,
    ) -> Result<Self, FlatError> {
        let n = right.len();
        if n == 0 || up.len() != n {
            return Err(FlatError::BadPermutation(n));
        }
        let right = Perm::from_images(right).ok_or(FlatError::BadPermutation(n))?;
        let up = Perm::from_images(up).ok_or(FlatError::BadPermutation(n))?;
        Self::from_perms(right, up, scale_x, scale_y)
    }

    pub fn from_perms(
        right: Perm,
        up: Perm,
        scale_x: Rational64,
        scale_y: Rational64,
    ) -> Result<Self, FlatError> {
        let n = right.len();
        if n == 0 || up.len() != n {
            return Err(FlatError::BadPermutation(n));
        }
        if scale_x <= Rational64::zero() || scale_y <= Rational64::zero() {
            return Err(FlatError::BadScale(scale_x, scale_y));
        }
        if !is_transitive(n, &[&right, &up]) {
            return Err(FlatError::NotTransitive);
        }
        let right_inv = right.inverse();
        let up_inv = up.inverse();
        let corner = up.compose(&right).compose(&up_inv).compose(&right_inv);
        let vertices = corner.cycles();
        let mut vertex_of = vec![0; n];
        for (v, cyc) in vertices.iter().enumerate() {
            for &c in cyc {
                vertex_of[c] = v;
            }
        }
        let zeros = vertices
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| ZeroMark { cell: c[0], order: c.len() - 1 })
            .collect();
        Ok(GridSurface { right, up, right_inv, up_inv, scale_x, scale_y, corner, vertex_of, vertices, zeros })
    }

    /// Plain origami with unit cells.
    pub fn origami(right: Perm, up: Perm) -> Result<Self, FlatError> {
        Self::from_perms(right, up, Rational64::one(), Rational64::one())
    }

    /// The flat torus made of one unit square.
    pub fn torus() -> Self {
        Self::origami(Perm::identity(1), Perm::identity(1)).expect("one square is a valid surface")
    }

    pub fn n_cells(&self) -> usize {
        self.right.len()
    }

    pub fn right(&self) -> &Perm {
        &self.right
    }

    pub fn up(&self) -> &Perm {
        &self.up
    }

    pub fn right_inv(&self) -> &Perm {
        &self.right_inv
    }

    pub fn up_inv(&self) -> &Perm {
        &self.up_inv
    }

    pub fn scale_x(&self) -> Rational64 {
        self.scale_x
    }

    pub fn scale_y(&self) -> Rational64 {
        self.scale_y
    }

    /// `up ∘ right ∘ up⁻¹ ∘ right⁻¹`; its cycles are the vertices.
    pub fn corner_map(&self) -> &Perm {
        &self.corner
    }

    pub fn vertex_of_cell(&self, cell: usize) -> usize {
        self.vertex_of[cell]
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    /// Cone angle of vertex `v` in units of `2π`.
    pub fn vertex_angle(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    pub fn is_singular_vertex(&self, v: usize) -> bool {
        self.vertices[v].len() > 1
    }

    pub fn zeros(&self) -> &[ZeroMark] {
        &self.zeros
    }

    /// Area `n · scale_x · scale_y`.
    pub fn volume(&self) -> Rational64 {
        Rational64::from_integer(self.n_cells() as i64) * self.scale_x * self.scale_y
    }

    pub fn stratum(&self) -> Stratum {
        Stratum::new(self.zeros.iter().map(|z| z.order).collect()).expect("orders of a closed surface")
    }

    pub fn genus(&self) -> usize {
        self.stratum().genus()
    }

    /// Euler characteristic `V - E + F` of the cell complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - 2 * self.n_cells() as i64 + self.n_cells() as i64
    }

    /// Same gluings after renaming cell `c` to `perm(c)`.
    pub fn relabel(&self, perm: &Perm) -> Self {
        let inv = perm.inverse();
        let right = perm.compose(&self.right).compose(&inv);
        let up = perm.compose(&self.up).compose(&inv);
        Self::from_perms(right, up, self.scale_x, self.scale_y).expect("relabelling preserves validity")
    }

    /// Canonical relabelling: breadth-first numbering from a start cell,
    /// visiting `right` then `up`, minimised lexicographically over starts.
    pub fn canonical(&self) -> Self {
        let (r, u) = canonical_pair(&self.right, &self.up);
        Self::from_perms(r, u, self.scale_x, self.scale_y).expect("canonical form of a valid surface")
    }

    /// Cells refined into `kx × ky` sub-cells. Same surface, finer grid.
    pub fn refine(&self, kx: usize, ky: usize) -> Self {
        let n = self.n_cells();
        let idx = |c: usize, i: usize, j: usize| (c * ky + j) * kx + i;
        let mut right = vec![0; n * kx * ky];
        let mut up = vec![0; n * kx * ky];
        for c in 0..n {
            for j in 0..ky {
                for i in 0..kx {
                    right[idx(c, i, j)] = if i + 1 < kx { idx(c, i + 1, j) } else { idx(self.right.apply(c), 0, j) };
                    up[idx(c, i, j)] = if j + 1 < ky { idx(c, i, j + 1) } else { idx(self.up.apply(c), i, 0) };
                }
            }
        }
        let sx = self.scale_x / Rational64::from_integer(kx as i64);
        let sy = self.scale_y / Rational64::from_integer(ky as i64);
        Self::new(right, up, sx, sy).expect("refinement of a valid surface")
    }
}

/// Canonical `(right, up)` under simultaneous conjugation.
pub fn canonical_pair(right: &Perm, up: &Perm) -> (Perm, Perm) {
    let n = right.len();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    for start in 0..n {
        label.iter_mut().for_each(|x| *x = usize::MAX);
        order.clear();
        let mut queue = VecDeque::new();
        label[start] = 0;
        order.push(start);
        queue.push_back(start);
        while let Some(c) = queue.pop_front() {
            for next in [right.apply(c), up.apply(c)] {
                if label[next] == usize::MAX {
                    label[next] = order.len();
                    order.push(next);
                    queue.push_back(next);
                }
            }
        }
        if order.len() < n {
            // not transitive; fall back to the identity labelling
            return (right.clone(), up.clone());
        }
        let r: Vec<usize> = order.iter().map(|&c| label[right.apply(c)]).collect();
        let u: Vec<usize> = order.iter().map(|&c| label[up.apply(c)]).collect();
        let better = match &best {
            None => true,
            Some((br, bu)) => (&r, &u) < (br, bu),
        };
        if better {
            best = Some((r, u));
        }
    }
    let (r, u) = best.expect("at least one cell");
    (Perm::from_images(r).unwrap(), Perm::from_images(u).unwrap())
}

impl fmt::Debug for GridSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridSurface")
            .field("n", &self.n_cells())
            .field("right", &self.right)
            .field("up", &self.up)
            .field("scale", &(self.scale_x, self.scale_y))
            .field("stratum", &self.stratum())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_square() -> GridSurface {
        // r = (1 2 3), u = (1 2)
        let r = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let u = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        GridSurface::origami(r, u).unwrap()
    }

    #[test]
    fn unbranched_torus() {
        let t = GridSurface::torus();
        assert!(t.zeros().is_empty());
        assert_eq!(t.genus(), 1);
        assert_eq!(t.stratum().to_string(), "H()");
    }

    #[test]
    fn three_square_is_h2() {
        let s = three_square();
        assert_eq!(s.stratum().orders(), &[2]);
        assert_eq!(s.genus(), 2);
        // commutator computed by hand: a single 3-cycle plus no fixed vertex
        assert_eq!(s.vertices().len(), 1);
        assert_eq!(s.euler_characteristic(), -2);
    }

    #[test]
    fn malformed_inputs() {
        let one = Rational64::one();
        assert_eq!(GridSurface::new(vec![1, 0], vec![0], one, one), Err(FlatError::BadPermutation(2)));
        assert_eq!(GridSurface::new(vec![1, 1], vec![0, 1], one, one), Err(FlatError::BadPermutation(2)));
        assert_eq!(GridSurface::new(vec![0, 1], vec![0, 1], one, one), Err(FlatError::NotTransitive));
        assert!(matches!(
            GridSurface::new(vec![0], vec![0], Rational64::zero(), one),
            Err(FlatError::BadScale(..))
        ));
    }

    #[test]
    fn stratum_parsing() {
        let s: Stratum = "H(3,3)".parse().unwrap();
        assert_eq!(s.genus(), 4);
        assert!(s.is_double());
        assert!("H(3)".parse::<Stratum>().is_err());
        assert_eq!("1,3,3,5".parse::<Stratum>().unwrap().to_string(), "H(5,3,3,1)");
        assert_eq!(Stratum::all_of_genus(3).len(), 5);
    }

    #[test]
    fn canonical_form_is_conjugation_invariant() {
        let s = three_square();
        let p = Perm::from_cycles(3, &[&[0, 2]]).unwrap();
        assert_eq!(s.relabel(&p).canonical(), s.canonical());
        assert_eq!(s.canonical().canonical(), s.canonical());
    }

    #[test]
    fn refinement_keeps_stratum_and_volume() {
        let s = three_square().refine(2, 3);
        assert_eq!(s.n_cells(), 18);
        assert_eq!(s.stratum().orders(), &[2]);
        assert_eq!(s.volume(), Rational64::from_integer(3));
    }
}
