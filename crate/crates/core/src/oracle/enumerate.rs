//! Exhaustive enumeration of small origamis and the component census.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use super::{max_cells, OracleError};
use crate::flat::{canonical_pair, GridSurface, Stratum};
use crate::invariants::{component_of, ComponentTag};
use crate::perm::{is_transitive, Perm};

/// Partitions of `n` in non-increasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// The permutation `(0 .. a-1)(a .. a+b-1)...` of a cycle type.
pub fn cycle_type_representative(cycle_type: &[usize]) -> Perm {
    let n = cycle_type.iter().sum();
    let mut images: Vec<usize> = (0..n).collect();
    let mut at = 0;
    for &len in cycle_type {
        for k in 0..len {
            images[at + k] = at + (k + 1) % len;
        }
        at += len;
    }
    Perm::from_images(images).unwrap()
}

/// Lexicographic successor; false after the last permutation.
fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Canonical pairs for one fixed `r` and all `u` with `u(0) = first`.
fn pairs_for(r: &Perm, first: usize) -> HashSet<(Perm, Perm)> {
    let n = r.len();
    let mut rest: Vec<usize> = (0..n).filter(|&x| x != first).collect();
    let mut out = HashSet::new();
    loop {
        let mut images = Vec::with_capacity(n);
        images.push(first);
        images.extend_from_slice(&rest);
        let u = Perm::from_images(images).unwrap();
        if is_transitive(n, &[r, &u]) {
            out.insert(canonical_pair(r, &u));
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    out
}

/// Every origami with `n` unit squares up to relabelling, canonical and
/// sorted, optionally restricted to one stratum.
pub fn enumerate_origamis(n: usize, stratum: Option<&Stratum>) -> Result<Vec<GridSurface>, OracleError> {
    let bound = max_cells(10);
    if n == 0 || n > bound {
        return Err(OracleError::BoundExceeded { requested: n, bound });
    }
    let jobs: Vec<(Perm, usize)> = partitions(n)
        .into_iter()
        .map(|t| cycle_type_representative(&t))
        .flat_map(|r| (0..n).map(move |f| (r.clone(), f)))
        .collect();
    let found: HashSet<(Perm, Perm)> = jobs
        .par_iter()
        .map(|(r, f)| pairs_for(r, *f))
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut pairs: Vec<(Perm, Perm)> = found.into_iter().collect();
    pairs.sort();
    Ok(pairs
        .into_iter()
        .map(|(r, u)| GridSurface::origami(r, u).expect("transitive pair"))
        .filter(|s| stratum.map_or(true, |st| &s.stratum() == st))
        .collect())
}

/// One census row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CensusRow {
    pub stratum: Stratum,
    pub tag: ComponentTag,
    pub n: usize,
    pub count: usize,
}

/// Counts of canonical origamis per `(stratum, component)` for every
/// number of squares up to `max_n`.
pub fn census(max_n: usize) -> Result<Vec<CensusRow>, OracleError> {
    let bound = max_cells(8);
    if max_n > bound {
        return Err(OracleError::BoundExceeded { requested: max_n, bound });
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let surfaces = enumerate_origamis(n, None)?;
        let labels: Vec<(Stratum, ComponentTag)> = surfaces
            .par_iter()
            .map(|s| {
                let st = s.stratum();
                let tag = if st.genus() < 2 {
                    ComponentTag::Connected
                } else {
                    component_of(s).map(|l| l.tag)?
                };
                Ok((st, tag))
            })
            .collect::<Result<_, crate::invariants::InvariantError>>()?;
        let mut counts: BTreeMap<(Stratum, ComponentTag), usize> = BTreeMap::new();
        for key in labels {
            *counts.entry(key).or_default() += 1;
        }
        rows.extend(counts.into_iter().map(|((stratum, tag), count)| CensusRow { stratum, tag, n, count }));
    }
    rows.sort_by(|a, b| (&a.stratum, a.tag, a.n).cmp(&(&b.stratum, b.tag, b.n)));
    Ok(rows)
}

pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("stratum,label,N,count\n");
    for r in rows {
        out.push_str(&format!("\"{}\",{},{},{}\n", r.stratum, r.tag, r.n, r.count));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_origamis(1, None).unwrap().len(), 1);
        // H(2) with three squares: one SL(2,Z) orbit of size three
        let h2: Stratum = "H(2)".parse().unwrap();
        let three = enumerate_origamis(3, Some(&h2)).unwrap();
        assert_eq!(three.len(), 3);
        for s in &three {
            assert_eq!(s.stratum(), h2);
        }
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(8).len(), 22);
    }
}
