//! Permutations of `{0, .., n-1}` stored as image arrays.
//!
//! Composition follows function notation: `a.compose(&b)` is `a ∘ b`, i.e.
//! apply `b` first. The monodromy code needs the opposite (path) order in a
//! few places and uses [`Perm::then`] for it.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Validates that `images` is a bijection of `{0, .., images.len()-1}`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm(images))
    }

    /// Builds a permutation of `{0, .., n-1}` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n || touched[a] {
                    return None;
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Some(Perm(images))
    }

    /// The cycle `(0 1 .. k-1)` inside `{0, .., n-1}`.
    pub fn cycle_prefix(n: usize, k: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for i in 0..k {
            images[i] = (i + 1) % k;
        }
        Perm(images)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    /// Path order: apply `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Self {
        other.compose(self)
    }

    /// `other⁻¹ ∘ self ∘ other`, the image of `self` under relabelling by `other⁻¹`.
    pub fn conjugate_by(&self, other: &Perm) -> Self {
        other.inverse().compose(self).compose(other)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| self.0[j] == i)
    }

    /// Cycles listed from their smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// True when the group generated by `gens` acts transitively on `{0, .., n-1}`.
pub fn is_transitive(n: usize, gens: &[&Perm]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(c) = stack.pop() {
        for g in gens {
            // forward images suffice: orbits of a finite group are closed under inverses
            let next = g.apply(c);
            if !seen[next] {
                seen[next] = true;
                count += 1;
                stack.push(next);
            }
        }
    }
    count == n
}

/// Uniformly random permutation of a given cycle type.
pub fn random_with_cycle_type<R: rand::Rng + ?Sized>(
    n: usize,
    cycle_type: &[usize],
    rng: &mut R,
) -> Perm {
    use rand::seq::SliceRandom;
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    let mut images: Vec<usize> = (0..n).collect();
    let mut at = 0;
    for &len in cycle_type {
        for k in 0..len {
            images[pts[at + k]] = pts[at + (k + 1) % len];
        }
        at += len;
    }
    Perm(images)
}

pub fn random_perm<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Perm {
    use rand::seq::SliceRandom;
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_function_order() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // (a∘b)(1) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(a.then(&b).apply(1), 0);
    }

    #[test]
    fn cycle_type_and_inverse() {
        let p = Perm::from_cycles(5, &[&[0, 2, 4], &[1, 3]]).unwrap();
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(format!("{:?}", p), "(1 3 5)(2 4)");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_none());
        assert!(Perm::from_images(vec![0, 2]).is_none());
    }

    #[test]
    fn transitivity() {
        let r = Perm::cycle_prefix(4, 2);
        let id = Perm::identity(4);
        assert!(!is_transitive(4, &[&r, &id]));
        let u = Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        assert!(is_transitive(4, &[&r, &u]));
    }
}
