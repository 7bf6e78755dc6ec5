//! Affine involutions with derivative `-1`.
//!
//! Such a map rotates every cell by `π` onto another cell, so it is a cell
//! permutation `s` with `s ∘ right = right⁻¹ ∘ s` and `s ∘ up = up⁻¹ ∘ s`.
//! Fixing `s(0)` determines `s` by propagation, which makes the search
//! exhaustive in `n` candidates.

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use super::InvariantError;
use crate::flat::{absolute_period_lattice, corner_positions, GridSurface};
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatInvolution {
    pub cells: Perm,
    /// The base torus map is `z ↦ -z + shift`, reduced modulo the periods.
    pub shift: (Rational64, Rational64),
    pub fixed_cells: Vec<usize>,
    /// Cells whose bottom edge midpoint is fixed.
    pub fixed_horizontal_edges: Vec<usize>,
    /// Cells whose left edge midpoint is fixed.
    pub fixed_vertical_edges: Vec<usize>,
    /// Fixed vertices (indices into `GridSurface::vertices`).
    pub fixed_vertices: Vec<usize>,
    /// Image of each zero (indices into `GridSurface::zeros`).
    pub zero_images: Vec<usize>,
    pub quotient_genus: usize,
}

impl FlatInvolution {
    pub fn fixed_points(&self) -> usize {
        self.fixed_cells.len()
            + self.fixed_horizontal_edges.len()
            + self.fixed_vertical_edges.len()
            + self.fixed_vertices.len()
    }

    pub fn swaps_zeros(&self) -> bool {
        self.zero_images.iter().enumerate().all(|(i, &j)| i != j)
    }
}

fn propagate(s: &GridSurface, image0: usize) -> Option<Vec<usize>> {
    let n = s.n_cells();
    let mut img = vec![usize::MAX; n];
    img[0] = image0;
    let mut stack = vec![0];
    while let Some(c) = stack.pop() {
        let x = img[c];
        for (d, y) in [
            (s.right().apply(c), s.right_inv().apply(x)),
            (s.up().apply(c), s.up_inv().apply(x)),
            (s.right_inv().apply(c), s.right().apply(x)),
            (s.up_inv().apply(c), s.up().apply(x)),
        ] {
            if img[d] == usize::MAX {
                img[d] = y;
                stack.push(d);
            } else if img[d] != y {
                return None;
            }
        }
    }
    Some(img)
}

/// All derivative `-1` involutions mapping cells to cells, sorted by cell map.
///
/// When the surface has a zero, every such involution maps the grid to
/// itself (zeros sit on grid vertices), so the list is complete. Without
/// zeros the grid is not intrinsic and the search refuses.
pub fn involution_search(s: &GridSurface) -> Result<Vec<FlatInvolution>, InvariantError> {
    if s.zeros().is_empty() {
        return Err(InvariantError::UnsupportedMarks);
    }
    let n = s.n_cells();
    let lattice = absolute_period_lattice(s)?;
    let pos = corner_positions(s);
    let g = s.genus() as i64;
    let mut out: Vec<FlatInvolution> = (0..n)
        .into_par_iter()
        .filter_map(|x| {
            let img = propagate(s, x)?;
            let perm = Perm::from_images(img)?;
            if !perm.is_involution() {
                return None;
            }
            Some(census(s, perm, &lattice, &pos, g))
        })
        .collect();
    out.sort_by(|a, b| a.cells.cmp(&b.cells));
    Ok(out)
}

fn census(
    s: &GridSurface,
    perm: Perm,
    lattice: &crate::flat::PeriodLattice,
    pos: &[(i64, i64)],
    g: i64,
) -> FlatInvolution {
    let n = s.n_cells();
    let fixed_cells = (0..n).filter(|&c| perm.apply(c) == c).collect();
    let fixed_horizontal_edges = (0..n).filter(|&c| s.up().apply(perm.apply(c)) == c).collect();
    let fixed_vertical_edges = (0..n).filter(|&c| s.right().apply(perm.apply(c)) == c).collect();
    // the bottom-left corner of c goes to the top-right corner of s(c)
    let vertex_image = |v: usize| {
        let c = s.vertices()[v][0];
        s.vertex_of_cell(s.up().apply(s.right().apply(perm.apply(c))))
    };
    let fixed_vertices: Vec<usize> = (0..s.vertices().len()).filter(|&v| vertex_image(v) == v).collect();
    let zero_vertex: Vec<usize> = s.zeros().iter().map(|z| s.vertex_of_cell(z.cell)).collect();
    let zero_images = zero_vertex
        .iter()
        .map(|&v| {
            let w = vertex_image(v);
            zero_vertex.iter().position(|&u| u == w).expect("zeros map to zeros")
        })
        .collect();
    let (px, py) = pos[perm.apply(0)];
    let (qx, qy) = pos[0];
    let (cx, cy) = lattice.reduce_grid((px + qx + 1, py + qy + 1));
    let shift = (
        Rational64::from_integer(cx) * s.scale_x(),
        Rational64::from_integer(cy) * s.scale_y(),
    );
    let mut inv = FlatInvolution {
        cells: perm,
        shift,
        fixed_cells,
        fixed_horizontal_edges,
        fixed_vertical_edges,
        fixed_vertices,
        zero_images,
        quotient_genus: 0,
    };
    // 2 - 2g = 2 (2 - 2h) - F
    let f = inv.fixed_points() as i64;
    let four_h = 2 + 2 * g - f;
    debug_assert!(four_h >= 0 && four_h % 4 == 0, "Riemann-Hurwitz violated: g={g}, F={f}");
    inv.quotient_genus = (four_h / 4) as usize;
    inv
}

/// The hyperelliptic involution, if the surface lies in a hyperelliptic
/// component: quotient genus zero, and the zeros swapped in the two-zero
/// case. Surfaces with three or more zeros never qualify, even when some
/// involution has a sphere quotient.
pub fn hyperelliptic_involution(s: &GridSurface) -> Result<Option<FlatInvolution>, InvariantError> {
    let two = s.zeros().len() == 2;
    if s.zeros().len() > 2 {
        involution_search(s)?;
        return Ok(None);
    }
    Ok(involution_search(s)?
        .into_iter()
        .find(|i| i.quotient_genus == 0 && (!two || i.swaps_zeros())))
}
