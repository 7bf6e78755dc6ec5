//! Min-max assignment of weights to classes of prescribed sizes.
//!
//! Minimise `max_i Σ_{j ∈ A_i} w_j` over set partitions `A_1, .., A_l` with
//! `|A_i| = sizes[i]`. Branch and bound finds the optimum; a second pass
//! fixes weights one at a time to the smallest feasible class, which yields
//! the lexicographically smallest optimal assignment and makes the witness
//! independent of search order.

use super::CheckError;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Assignment {
    /// `class_of[j]` is the class of weight `j`.
    pub class_of: Vec<usize>,
    /// Weight indices per class.
    pub classes: Vec<Vec<usize>>,
    pub value: u64,
}

struct Search<'a> {
    weights: &'a [u64],
    /// indices still to place, heaviest first
    order: Vec<usize>,
    cap: Vec<usize>,
    load: Vec<u64>,
}

impl Search<'_> {
    /// Can the weights `order[k..]` be placed with every load ≤ bound?
    fn feasible(&mut self, k: usize, bound: u64) -> bool {
        if k == self.order.len() {
            return true;
        }
        let w = self.weights[self.order[k]];
        let mut tried: Vec<(usize, u64)> = Vec::new();
        for c in 0..self.cap.len() {
            if self.cap[c] == 0 || self.load[c] + w > bound {
                continue;
            }
            // classes in the same state are interchangeable
            let state = (self.cap[c], self.load[c]);
            if tried.contains(&state) {
                continue;
            }
            tried.push(state);
            self.cap[c] -= 1;
            self.load[c] += w;
            let ok = self.feasible(k + 1, bound);
            self.cap[c] += 1;
            self.load[c] -= w;
            if ok {
                return true;
            }
        }
        false
    }

    /// Best achievable maximum for `order[k..]`, given loads, below `best`.
    fn optimise(&mut self, k: usize, best: &mut u64) {
        let current = self.load.iter().copied().max().unwrap_or(0);
        if current >= *best {
            return;
        }
        if k == self.order.len() {
            *best = current;
            return;
        }
        let w = self.weights[self.order[k]];
        let mut tried: Vec<(usize, u64)> = Vec::new();
        for c in 0..self.cap.len() {
            if self.cap[c] == 0 {
                continue;
            }
            let state = (self.cap[c], self.load[c]);
            if tried.contains(&state) {
                continue;
            }
            tried.push(state);
            self.cap[c] -= 1;
            self.load[c] += w;
            self.optimise(k + 1, best);
            self.cap[c] += 1;
            self.load[c] -= w;
        }
    }
}

pub fn minmax_assignment(sizes: &[usize], weights: &[u64]) -> Result<Assignment, CheckError> {
    let k = weights.len();
    if sizes.iter().sum::<usize>() != k || sizes.iter().any(|&s| s == 0) {
        return Err(CheckError::SizeMismatch { sizes: sizes.to_vec(), count: k });
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
    let mut search = Search { weights, order, cap: sizes.to_vec(), load: vec![0; sizes.len()] };
    let mut best = weights.iter().sum::<u64>() + 1;
    search.optimise(0, &mut best);

    // Lexicographically smallest optimal assignment in weight order.
    let mut class_of = vec![usize::MAX; k];
    let mut cap = sizes.to_vec();
    let mut load = vec![0u64; sizes.len()];
    for j in 0..k {
        let placed = (0..sizes.len()).find(|&c| {
            if cap[c] == 0 || load[c] + weights[j] > best {
                return false;
            }
            cap[c] -= 1;
            load[c] += weights[j];
            let mut rest: Vec<usize> = (j + 1..k).collect();
            rest.sort_by(|&a, &b| weights[b].cmp(&weights[a]));
            let mut s = Search { weights, order: rest, cap: cap.clone(), load: load.clone() };
            let ok = s.feasible(0, best);
            if !ok {
                cap[c] += 1;
                load[c] -= weights[j];
            }
            ok
        });
        class_of[j] = placed.expect("the optimum is feasible");
    }
    let mut classes = vec![Vec::new(); sizes.len()];
    for (j, &c) in class_of.iter().enumerate() {
        classes[c].push(j);
    }
    Ok(Assignment { class_of, classes, value: best })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_class_and_singletons() {
        assert_eq!(minmax_assignment(&[3], &[2, 5, 1]).unwrap().value, 8);
        assert_eq!(minmax_assignment(&[1, 1, 1], &[2, 5, 1]).unwrap().value, 5);
    }

    #[test]
    fn two_pairs() {
        let a = minmax_assignment(&[2, 2], &[2, 2, 4, 6]).unwrap();
        assert_eq!(a.value, 8);
        assert_eq!(a.class_of, vec![0, 1, 0, 1]);
    }

    #[test]
    fn size_mismatch() {
        assert!(matches!(minmax_assignment(&[2], &[1, 1, 1]), Err(CheckError::SizeMismatch { .. })));
    }
}
