//! Absolute period lattice and the branched-cover picture over it.

use num_rational::Rational64;
use serde::Serialize;

use super::homology::{fundamental_cycles, Move};
use super::{FlatError, GridSurface};
use crate::hnf::{hermite_rows, reduce};

/// Image of `H_1(S, Z)` under the period map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodLattice {
    /// Echelon basis `(a, b), (0, c)` in cell units.
    pub grid_basis: [[i64; 2]; 2],
    /// The same basis in absolute coordinates.
    pub basis: [[Rational64; 2]; 2],
    pub covolume: Rational64,
    /// The lattice is exactly `Z + iZ`.
    pub is_standard: bool,
}

impl PeriodLattice {
    /// Canonical representative of a cell-unit point modulo the lattice.
    pub fn reduce_grid(&self, p: (i64, i64)) -> (i64, i64) {
        let basis: Vec<Vec<i64>> = self.grid_basis.iter().map(|r| r.to_vec()).collect();
        let v = reduce(&basis, &[p.0, p.1]);
        (v[0], v[1])
    }
}

pub fn absolute_period_lattice(s: &GridSurface) -> Result<PeriodLattice, FlatError> {
    let rows: Vec<Vec<i64>> = fundamental_cycles(s, 0, &[Move::Right, Move::Up, Move::Left, Move::Down])
        .iter()
        .map(|c| {
            let (x, y) = c.displacement();
            vec![x, y]
        })
        .collect();
    let h = hermite_rows(&rows);
    if h.len() < 2 {
        return Err(FlatError::RankDeficient(h.len()));
    }
    let (a, b, c) = (h[0][0], h[0][1], h[1][1]);
    let (sx, sy) = (s.scale_x(), s.scale_y());
    let r = Rational64::from_integer;
    let basis = [[r(a) * sx, r(b) * sy], [r(0), r(c) * sy]];
    let covolume = r(a * c) * sx * sy;
    let is_standard = basis[0][0] == r(1) && basis[0][1] == r(0) && basis[1][1] == r(1);
    Ok(PeriodLattice { grid_basis: [[a, b], [0, c]], basis, covolume, is_standard })
}

/// Bottom-left corner of every cell in cell units, relative to cell 0.
/// Well defined modulo the period lattice.
pub(crate) fn corner_positions(s: &GridSurface) -> Vec<(i64, i64)> {
    let n = s.n_cells();
    let mut pos = vec![None; n];
    pos[0] = Some((0i64, 0i64));
    let mut stack = vec![0];
    while let Some(c) = stack.pop() {
        let (x, y) = pos[c].unwrap();
        for (d, p) in [
            (s.right().apply(c), (x + 1, y)),
            (s.up().apply(c), (x, y + 1)),
            (s.right_inv().apply(c), (x - 1, y)),
            (s.up_inv().apply(c), (x, y - 1)),
        ] {
            if pos[d].is_none() {
                pos[d] = Some(p);
                stack.push(d);
            }
        }
    }
    pos.into_iter().map(Option::unwrap).collect()
}

/// Zeros grouped by their image on the base torus `C / Λ`.
///
/// Classes are ordered by their first zero (in the order of
/// [`GridSurface::zeros`]); this is the relation `Ψ` for any lattice.
pub fn zero_classes(s: &GridSurface, lattice: &PeriodLattice) -> (Vec<(i64, i64)>, Vec<Vec<usize>>) {
    let pos = corner_positions(s);
    let reduced: Vec<(i64, i64)> = s.zeros().iter().map(|z| lattice.reduce_grid(pos[z.cell])).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, p) in reduced.iter().enumerate() {
        match classes.iter_mut().find(|c| reduced[c[0]] == *p) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    (reduced, classes)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchProfile {
    /// Degree of the cover `S -> C / (Z + iZ)`.
    pub degree: usize,
    /// Base position of each zero, in `[0,1)²`, same order as the zeros.
    pub positions: Vec<(Rational64, Rational64)>,
    /// Indices of zeros sharing a base point.
    pub classes: Vec<Vec<usize>>,
    /// Class sizes, non-increasing.
    pub psi: Vec<usize>,
    /// Local degrees over each branch point, padded with ones to `degree`.
    pub branch_data: Vec<Vec<usize>>,
}

pub fn branch_profile(s: &GridSurface) -> Result<BranchProfile, FlatError> {
    let lattice = absolute_period_lattice(s)?;
    if !lattice.is_standard {
        return Err(FlatError::NotPrimitive(lattice.covolume));
    }
    let (reduced, classes) = zero_classes(s, &lattice);
    let degree = s.volume();
    assert!(degree.is_integer(), "volume over Z+iZ is an integer");
    let degree = degree.to_integer() as usize;
    let positions = reduced
        .iter()
        .map(|&(x, y)| {
            (
                Rational64::from_integer(x) * s.scale_x(),
                Rational64::from_integer(y) * s.scale_y(),
            )
        })
        .collect();
    let mut psi: Vec<usize> = classes.iter().map(Vec::len).collect();
    psi.sort_unstable_by(|a, b| b.cmp(a));
    let branch_data = classes
        .iter()
        .map(|c| {
            let mut part: Vec<usize> = c.iter().map(|&i| s.zeros()[i].order + 1).collect();
            part.sort_unstable_by(|a, b| b.cmp(a));
            let used: usize = part.iter().sum();
            part.extend(std::iter::repeat(1).take(degree - used));
            part
        })
        .collect();
    Ok(BranchProfile { degree, positions, classes, psi, branch_data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    #[test]
    fn torus_lattice() {
        let l = absolute_period_lattice(&GridSurface::torus()).unwrap();
        assert!(l.is_standard);
        assert_eq!(l.covolume, Rational64::from_integer(1));
        let b = branch_profile(&GridSurface::torus()).unwrap();
        assert!(b.classes.is_empty() && b.branch_data.is_empty());
        assert_eq!(b.degree, 1);
    }

    #[test]
    fn unbranched_double_cover() {
        let s = GridSurface::origami(Perm::cycle_prefix(2, 2), Perm::identity(2)).unwrap();
        let l = absolute_period_lattice(&s).unwrap();
        assert_eq!(l.grid_basis, [[2, 0], [0, 1]]);
        assert!(!l.is_standard);
        assert!(matches!(branch_profile(&s), Err(FlatError::NotPrimitive(_))));
    }

    #[test]
    fn three_square_profile() {
        let r = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let u = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = branch_profile(&GridSurface::origami(r, u).unwrap()).unwrap();
        assert_eq!(b.degree, 3);
        assert_eq!(b.psi, vec![1]);
        assert_eq!(b.branch_data, vec![vec![3]]);
    }
}
