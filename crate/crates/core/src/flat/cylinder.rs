//! Horizontal cylinder decomposition.
//!
//! Rows of cells (cycles of `right`) stack into a cylinder as long as the
//! boundary between them carries no singular vertex. The top and bottom of
//! each cylinder split into saddle connections at singular vertices.

use num_rational::Rational64;
use serde::Serialize;

use super::GridSurface;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaddleConnection {
    /// First cell (left to right) lying under (top) or over (bottom) it.
    pub cell: usize,
    pub cells: usize,
    pub length: Rational64,
    /// `(cylinder, index)` of the boundary piece it is glued to.
    pub glued_to: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cylinder {
    /// One representative cell per row, bottom row first.
    pub rows: Vec<usize>,
    pub circumference_cells: usize,
    pub circumference: Rational64,
    pub height: Rational64,
    /// Top boundary, left to right.
    pub top: Vec<SaddleConnection>,
    /// Bottom boundary, left to right.
    pub bottom: Vec<SaddleConnection>,
}

impl Cylinder {
    pub fn area(&self) -> Rational64 {
        self.circumference * self.height
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CylinderDiagram {
    pub cylinders: Vec<Cylinder>,
}

impl CylinderDiagram {
    pub fn total_area(&self) -> Rational64 {
        self.cylinders.iter().map(Cylinder::area).sum()
    }
}

pub fn cylinder_decomposition(s: &GridSurface) -> CylinderDiagram {
    let n = s.n_cells();
    let rows = s.right().cycles();
    let mut row_of = vec![0; n];
    for (i, row) in rows.iter().enumerate() {
        for &c in row {
            row_of[c] = i;
        }
    }
    let singular_bl = |c: usize| s.is_singular_vertex(s.vertex_of_cell(c));
    let top_regular = |row: &[usize]| row.iter().all(|&c| !singular_bl(s.up().apply(c)));
    let bottom_regular = |row: &[usize]| row.iter().all(|&c| !singular_bl(c));

    // Chains of rows: start at rows with a singular bottom, climb while the
    // top is regular. Without singular vertices every chain closes up.
    let mut used = vec![false; rows.len()];
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let starts: Vec<usize> = (0..rows.len()).filter(|&i| !bottom_regular(&rows[i])).collect();
    let climb = |start: usize, used: &mut Vec<bool>| {
        let mut chain = vec![start];
        used[start] = true;
        let mut cur = start;
        while top_regular(&rows[cur]) {
            let next = row_of[s.up().apply(rows[cur][0])];
            if used[next] {
                break;
            }
            used[next] = true;
            chain.push(next);
            cur = next;
        }
        chain
    };
    for &st in &starts {
        chains.push(climb(st, &mut used));
    }
    for i in 0..rows.len() {
        if !used[i] {
            chains.push(climb(i, &mut used));
        }
    }

    // Boundary pieces in left-to-right order from the smallest split cell.
    let split = |row: &[usize], is_split: &dyn Fn(usize) -> bool| -> Vec<(usize, usize)> {
        let start = match row.iter().copied().filter(|&c| is_split(c)).min() {
            Some(c) => c,
            None => return Vec::new(),
        };
        let mut out = Vec::new();
        let mut c = start;
        loop {
            let first = c;
            let mut len = 0;
            loop {
                len += 1;
                c = s.right().apply(c);
                if is_split(c) {
                    break;
                }
            }
            out.push((first, len));
            if c == start {
                break;
            }
        }
        out
    };

    let mut tops = Vec::new();
    let mut bottoms = Vec::new();
    for ch in &chains {
        let bottom_row = &rows[ch[0]];
        let top_row = &rows[*ch.last().unwrap()];
        if bottom_regular(bottom_row) {
            // only happens without any singular vertex: a closed cylinder
            tops.push(Vec::new());
            bottoms.push(Vec::new());
        } else {
            tops.push(split(top_row, &|c| singular_bl(s.up().apply(c))));
            bottoms.push(split(bottom_row, &|c| singular_bl(c)));
        }
    }

    // bottom piece lookup by its first cell
    let mut bottom_index = std::collections::HashMap::new();
    for (k, b) in bottoms.iter().enumerate() {
        for (i, &(cell, _)) in b.iter().enumerate() {
            bottom_index.insert(cell, (k, i));
        }
    }
    let mut top_index = std::collections::HashMap::new();
    for (k, t) in tops.iter().enumerate() {
        for (i, &(cell, _)) in t.iter().enumerate() {
            top_index.insert(s.up().apply(cell), (k, i));
        }
    }

    let sx = s.scale_x();
    let cylinders = chains
        .iter()
        .enumerate()
        .map(|(k, ch)| {
            let width = rows[ch[0]].len();
            let piece = |&(cell, len): &(usize, usize), glued_to| SaddleConnection {
                cell,
                cells: len,
                length: sx * Rational64::from_integer(len as i64),
                glued_to,
            };
            Cylinder {
                rows: ch.iter().map(|&r| rows[r][0]).collect(),
                circumference_cells: width,
                circumference: sx * Rational64::from_integer(width as i64),
                height: s.scale_y() * Rational64::from_integer(ch.len() as i64),
                top: tops[k].iter().map(|p| piece(p, bottom_index[&s.up().apply(p.0)])).collect(),
                bottom: bottoms[k].iter().map(|p| piece(p, top_index[&p.0])).collect(),
            }
        })
        .collect();
    CylinderDiagram { cylinders }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    #[test]
    fn torus_is_one_closed_cylinder() {
        let d = cylinder_decomposition(&GridSurface::torus());
        assert_eq!(d.cylinders.len(), 1);
        assert!(d.cylinders[0].top.is_empty() && d.cylinders[0].bottom.is_empty());
        // two stacked rows with no vertices in between still form one cylinder
        let r = Perm::identity(2);
        let u = Perm::from_cycles(2, &[&[0, 1]]).unwrap();
        let d = cylinder_decomposition(&GridSurface::origami(r, u).unwrap());
        assert_eq!(d.cylinders.len(), 1);
        assert_eq!(d.cylinders[0].height, Rational64::from_integer(2));
    }

    #[test]
    fn three_square_l_shape() {
        let r = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let u = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let s = GridSurface::origami(r, u).unwrap();
        let d = cylinder_decomposition(&s);
        assert_eq!(d.cylinders.len(), 1);
        let c = &d.cylinders[0];
        assert_eq!(c.circumference_cells, 3);
        assert_eq!(c.top.len(), c.bottom.len());
        assert_eq!(d.total_area(), s.volume());
        let top_len: usize = c.top.iter().map(|p| p.cells).sum();
        assert_eq!(top_len, 3);
    }
}
