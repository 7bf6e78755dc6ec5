//! Row-style Hermite normal form over the integers.
//!
//! Every lattice computation in the crate (period lattices, base-point
//! reduction, subgroup membership for relative periods) reduces to the
//! echelon basis produced here.

use num_integer::Integer;
use num_traits::Signed;

/// Echelon basis of the integer row space of `rows`.
///
/// Returned rows are nonzero, pivots are strictly increasing columns with
/// positive pivot entries, and entries above each pivot lie in `[0, pivot)`.
pub fn hermite_rows<T>(rows: &[Vec<T>]) -> Vec<Vec<T>>
where
    T: Integer + Signed + Clone,
{
    let mut m: Vec<Vec<T>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if m.is_empty() {
        return m;
    }
    let ncols = m[0].len();
    let mut top = 0;
    for col in 0..ncols {
        if top == m.len() {
            break;
        }
        // Euclid on the column until a single nonzero entry remains at `top`.
        loop {
            let mut best: Option<usize> = None;
            for i in top..m.len() {
                if !m[i][col].is_zero() && best.map_or(true, |b| m[i][col].abs() < m[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            m.swap(top, b);
            let mut done = true;
            for i in top + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[top][col]);
                for j in col..ncols {
                    let t = m[top][j].clone() * q.clone();
                    m[i][j] = m[i][j].clone() - t;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < m.len() && !m[top][col].is_zero() {
            if m[top][col].is_negative() {
                for j in col..ncols {
                    m[top][j] = -m[top][j].clone();
                }
            }
            for i in 0..top {
                let q = m[i][col].div_floor(&m[top][col]);
                if !q.is_zero() {
                    for j in col..ncols {
                        let t = m[top][j].clone() * q.clone();
                        m[i][j] = m[i][j].clone() - t;
                    }
                }
            }
            top += 1;
        }
    }
    m.truncate(top);
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    m
}

fn pivot_col<T: Integer + Clone>(row: &[T]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Reduces `v` against an echelon basis; returns the remainder.
pub fn reduce<T>(basis: &[Vec<T>], v: &[T]) -> Vec<T>
where
    T: Integer + Signed + Clone,
{
    let mut v = v.to_vec();
    for row in basis {
        let Some(p) = pivot_col(row) else { continue };
        let q = v[p].div_floor(&row[p]);
        if !q.is_zero() {
            for j in p..v.len() {
                let t = row[j].clone() * q.clone();
                v[j] = v[j].clone() - t;
            }
        }
    }
    v
}

/// Integer membership of `v` in the row lattice of an echelon basis.
pub fn lattice_contains<T>(basis: &[Vec<T>], v: &[T]) -> bool
where
    T: Integer + Signed + Clone,
{
    reduce(basis, v).iter().all(|x| x.is_zero())
}
