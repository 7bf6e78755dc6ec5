//! Monodromy data of branched torus covers, their Hurwitz orbits and
//! existence certificates.
//!
//! A datum of degree `d` with `m` branch points is a tuple
//! `(r, u, σ_1, .., σ_m)` in `S_d` generating a transitive group and
//! satisfying, in path order,
//!
//! ```text
//! σ_1 ; σ_2 ; .. ; σ_m  =  u⁻¹ ; r ; u ; r⁻¹
//! ```
//!
//! Branch point `t` sits at `(t / (m+1), 1/2)` on the unit torus. Its cut
//! runs straight down to the bottom side, which is the cut of `u`; the
//! left side is the cut of `r`. Crossing the cut of point `t` eastwards
//! applies `σ_t`, so a counterclockwise loop around point `t` has monodromy
//! `σ_t`.

use std::collections::{HashSet, VecDeque};

use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{cycle_type_representative, max_cells, OracleError};
use crate::builders::{class_orders, class_shape, format_classes, surface_report, validate_classes, SurfaceReport};
use crate::flat::{GridSurface, Stratum};
use crate::invariants::{kz_components, ComponentTag};
use crate::perm::{is_transitive, random_perm, random_with_cycle_type, Perm};

/// Default cap on the number of states a Hurwitz orbit may visit.
pub const ORBIT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonodromyDatum {
    pub r: Perm,
    pub u: Perm,
    pub sigmas: Vec<Perm>,
}

fn product_in_path_order(sigmas: &[Perm], d: usize) -> Perm {
    sigmas.iter().fold(Perm::identity(d), |acc, s| acc.then(s))
}

impl MonodromyDatum {
    /// Checks degrees, the product relation and transitivity.
    pub fn new(r: Perm, u: Perm, sigmas: Vec<Perm>) -> Result<Self, OracleError> {
        let d = r.len();
        let bad = |m: String| Err(OracleError::InvalidDatum(m));
        if d == 0 || u.len() != d || sigmas.iter().any(|s| s.len() != d) {
            return bad("all permutations must act on the same nonempty set".into());
        }
        if sigmas.iter().any(Perm::is_identity) {
            return bad("a branch permutation is the identity".into());
        }
        let lhs = product_in_path_order(&sigmas, d);
        let rhs = u.inverse().then(&r).then(&u).then(&r.inverse());
        if lhs != rhs {
            return bad("branch permutations do not multiply to the commutator of r and u".into());
        }
        let mut gens = vec![&r, &u];
        gens.extend(sigmas.iter());
        if !is_transitive(d, &gens) {
            return bad("the monodromy group is not transitive".into());
        }
        Ok(MonodromyDatum { r, u, sigmas })
    }

    pub fn degree(&self) -> usize {
        self.r.len()
    }

    /// Cycle types of the branch permutations.
    pub fn branch_data(&self) -> Vec<Vec<usize>> {
        self.sigmas.iter().map(Perm::cycle_type).collect()
    }

    /// The stratum read off from the branch data.
    pub fn stratum(&self) -> Stratum {
        let orders = self.branch_data().into_iter().flatten().filter(|&l| l > 1).map(|l| l - 1).collect();
        Stratum::new(orders).expect("Riemann-Hurwitz makes the total order even")
    }

    /// Base positions of the branch points.
    pub fn positions(&self) -> Vec<(Rational64, Rational64)> {
        let w = self.sigmas.len() as i64 + 1;
        (1..w).map(|t| (Rational64::new(t, w), Rational64::new(1, 2))).collect()
    }

    /// The cover as a square-tiled surface: each sheet is a grid of
    /// `m + 1` columns and two rows of cells of size `1/(m+1) × 1/2`.
    pub fn realize(&self) -> GridSurface {
        let d = self.degree();
        let m = self.sigmas.len();
        let w = m + 1;
        let cell = |k: usize, i: usize, j: usize| k * 2 * w + j * w + i;
        // label of the bottom side under column i
        let mut h = vec![self.u.clone()];
        for s in &self.sigmas {
            let next = s.compose(h.last().unwrap());
            h.push(next);
        }
        let n = 2 * w * d;
        let (mut right, mut up) = (vec![0; n], vec![0; n]);
        for k in 0..d {
            for j in 0..2 {
                for i in 0..w {
                    let c = cell(k, i, j);
                    right[c] = if i + 1 == w {
                        cell(self.r.apply(k), 0, j)
                    } else if j == 0 {
                        cell(self.sigmas[i].apply(k), i + 1, 0)
                    } else {
                        cell(k, i + 1, 1)
                    };
                    up[c] = if j == 0 { cell(k, i, 1) } else { cell(h[i].apply(k), i, 0) };
                }
            }
        }
        GridSurface::new(right, up, Rational64::new(1, w as i64), Rational64::new(1, 2))
            .expect("a valid datum is transitive")
    }

    /// Representative of the datum up to simultaneous conjugation.
    pub fn canonical(&self) -> Self {
        let mut all = vec![self.r.clone(), self.u.clone()];
        all.extend(self.sigmas.iter().cloned());
        let mut c = canonical_tuple(&all).into_iter();
        let r = c.next().unwrap();
        let u = c.next().unwrap();
        MonodromyDatum { r, u, sigmas: c.collect() }
    }

    /// Every elementary move: the braid moves of adjacent branch points
    /// in both directions, and the two torus moves `u ↦ u∘r` and
    /// `(r, σ_t) ↦ (r∘u, u⁻¹σ_t u)` with their inverses.
    pub fn moves(&self) -> Vec<MonodromyDatum> {
        let mut out = Vec::new();
        let m = self.sigmas.len();
        for t in 0..m.saturating_sub(1) {
            let (a, b) = (&self.sigmas[t], &self.sigmas[t + 1]);
            let mut s = self.sigmas.clone();
            s[t] = b.clone();
            s[t + 1] = b.compose(a).compose(&b.inverse());
            out.push(MonodromyDatum { r: self.r.clone(), u: self.u.clone(), sigmas: s });
            let mut s = self.sigmas.clone();
            s[t] = a.inverse().compose(b).compose(a);
            s[t + 1] = a.clone();
            out.push(MonodromyDatum { r: self.r.clone(), u: self.u.clone(), sigmas: s });
        }
        let ri = self.r.inverse();
        let ui = self.u.inverse();
        for rr in [&self.r, &ri] {
            out.push(MonodromyDatum { r: self.r.clone(), u: self.u.compose(rr), sigmas: self.sigmas.clone() });
        }
        for uu in [&self.u, &ui] {
            let sigmas = self.sigmas.iter().map(|s| s.conjugate_by(uu)).collect();
            out.push(MonodromyDatum { r: self.r.compose(uu), u: self.u.clone(), sigmas });
        }
        out
    }
}

/// Lexicographically least relabelling of a tuple of permutations whose
/// group is transitive; non-transitive tuples are returned unchanged.
pub fn canonical_tuple(perms: &[Perm]) -> Vec<Perm> {
    let n = perms.first().map_or(0, Perm::len);
    let mut best: Option<Vec<Vec<usize>>> = None;
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
            for p in perms {
                let next = p.apply(c);
                if label[next] == usize::MAX {
                    label[next] = order.len();
                    order.push(next);
                    queue.push_back(next);
                }
            }
        }
        if order.len() < n {
            return perms.to_vec();
        }
        let images: Vec<Vec<usize>> =
            perms.iter().map(|p| order.iter().map(|&c| label[p.apply(c)]).collect()).collect();
        if best.as_ref().map_or(true, |b| &images < b) {
            best = Some(images);
        }
    }
    match best {
        Some(b) => b.into_iter().map(|v| Perm::from_images(v).unwrap()).collect(),
        None => perms.to_vec(),
    }
}

/// The orbit of `datum` under the elementary moves, as canonical data.
pub fn hurwitz_orbit(datum: &MonodromyDatum) -> Result<Vec<MonodromyDatum>, OracleError> {
    hurwitz_orbit_capped(datum, ORBIT_CAP)
}

pub fn hurwitz_orbit_capped(datum: &MonodromyDatum, cap: usize) -> Result<Vec<MonodromyDatum>, OracleError> {
    let start = datum.canonical();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        for y in x.moves() {
            let y = y.canonical();
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(OracleError::OrbitTooLarge(cap));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

fn one_based(p: &Perm) -> Vec<usize> {
    p.images().iter().map(|x| x + 1).collect()
}

/// File form of a datum: 1-based image lists. `positions` is written for
/// reference and ignored on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumJson {
    pub degree: usize,
    pub r: Vec<usize>,
    pub u: Vec<usize>,
    pub sigmas: Vec<Vec<usize>>,
    #[serde(default)]
    pub positions: Vec<String>,
}

impl DatumJson {
    pub fn into_datum(self) -> Result<MonodromyDatum, OracleError> {
        let perm = |v: &[usize]| -> Result<Perm, OracleError> {
            if v.len() != self.degree {
                return Err(OracleError::InvalidDatum(format!("{v:?} does not have degree {}", self.degree)));
            }
            v.iter()
                .map(|&x| x.checked_sub(1))
                .collect::<Option<Vec<_>>>()
                .and_then(Perm::from_images)
                .ok_or_else(|| OracleError::InvalidDatum(format!("{v:?} is not a permutation of 1..{}", self.degree)))
        };
        let sigmas = self.sigmas.iter().map(|s| perm(s)).collect::<Result<_, _>>()?;
        MonodromyDatum::new(perm(&self.r)?, perm(&self.u)?, sigmas)
    }
}

impl From<&MonodromyDatum> for DatumJson {
    fn from(x: &MonodromyDatum) -> Self {
        DatumJson {
            degree: x.degree(),
            r: one_based(&x.r),
            u: one_based(&x.u),
            sigmas: x.sigmas.iter().map(one_based).collect(),
            positions: x.positions().iter().map(|(a, b)| format!("({a}, {b})")).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// A cover with the requested invariants.
    Witness { datum: DatumJson, surface: String, report: SurfaceReport },
    /// An obstruction that needs no search.
    Structural { reason: String },
    /// Every datum with the required branch data was examined.
    Exhaustive { data_checked: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub stratum: String,
    pub component: String,
    pub classes: String,
    pub psi_shape: Vec<Vec<usize>>,
    pub degree: usize,
    /// Branch partition over each branch point, including unramified sheets.
    pub branch_data: Vec<Vec<usize>>,
    pub exists: bool,
    pub seed: u64,
    pub evidence: Evidence,
}

/// Random draws before the exhaustive search takes over.
const RANDOM_TRIES: usize = 20_000;
/// Upper bound on `(r, u, σ)` tuples the exhaustive search may visit.
const EXHAUSTIVE_BUDGET: u128 = 2_000_000_000;

struct Target<'a> {
    tag: ComponentTag,
    shape: Vec<Vec<usize>>,
    stratum: &'a Stratum,
    partitions: Vec<Vec<usize>>,
}

impl Target<'_> {
    fn accepts(&self, x: &MonodromyDatum) -> Option<SurfaceReport> {
        let s = x.realize();
        let report = surface_report(&s).ok()?;
        let ok = report.stratum == self.stratum.to_string()
            && report.component == self.tag.short()
            && report.lattice_is_standard
            && report.psi_orders == self.shape;
        ok.then_some(report)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Size of the conjugacy class of a cycle type in `S_d`.
fn class_size(cycle_type: &[usize]) -> u128 {
    let d: usize = cycle_type.iter().sum();
    let mut denom: u128 = 1;
    let mut counts = std::collections::BTreeMap::new();
    for &l in cycle_type {
        *counts.entry(l).or_insert(0usize) += 1;
    }
    for (l, c) in counts {
        denom *= (l as u128).pow(c as u32) * factorial(c);
    }
    factorial(d) / denom
}

fn all_perms(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut v: Vec<usize> = (0..d).collect();
    loop {
        out.push(Perm::from_images(v.clone()).unwrap());
        // lexicographic successor
        let Some(i) = (1..d).rev().find(|&i| v[i - 1] < v[i]) else { break };
        let j = (i..d).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
    }
    out
}

fn random_search(t: &Target, d: usize, rng: &mut ChaCha8Rng) -> Option<(MonodromyDatum, SurfaceReport)> {
    let m = t.partitions.len();
    for _ in 0..RANDOM_TRIES {
        let r = random_perm(d, rng);
        let u = random_perm(d, rng);
        let mut sigmas: Vec<Perm> =
            t.partitions[..m.saturating_sub(1)].iter().map(|p| random_with_cycle_type(d, p, rng)).collect();
        let comm = u.inverse().then(&r).then(&u).then(&r.inverse());
        let before = product_in_path_order(&sigmas, d);
        let last = before.inverse().then(&comm);
        if m == 0 {
            if !last.is_identity() {
                continue;
            }
        } else {
            let mut ct = last.cycle_type();
            ct.sort_unstable_by(|a, b| b.cmp(a));
            if ct != t.partitions[m - 1] {
                continue;
            }
            sigmas.push(last);
        }
        let Ok(x) = MonodromyDatum::new(r, u, sigmas) else { continue };
        if let Some(rep) = t.accepts(&x) {
            return Some((x, rep));
        }
    }
    None
}

/// Every datum with the target branch data, up to conjugation of the first
/// branch permutation into a fixed representative.
fn exhaustive_search(t: &Target, d: usize) -> Result<(Option<(MonodromyDatum, SurfaceReport)>, u64), OracleError> {
    let m = t.partitions.len();
    let perms = all_perms(d);
    let mut work = factorial(d).pow(2);
    for p in t.partitions.iter().skip(1).take(m.saturating_sub(2)) {
        work = work.saturating_mul(class_size(p));
    }
    if work > EXHAUSTIVE_BUDGET {
        return Err(OracleError::BoundExceeded { requested: d, bound: 0 });
    }
    // prefixes σ_1 .. σ_{m-1}
    let mut prefixes: Vec<Vec<Perm>> = vec![Vec::new()];
    for (i, p) in t.partitions.iter().enumerate().take(m.saturating_sub(1)) {
        let choices: Vec<Perm> = if i == 0 {
            vec![cycle_type_representative(p)]
        } else {
            perms
                .iter()
                .filter(|q| {
                    let mut ct = q.cycle_type();
                    ct.sort_unstable_by(|a, b| b.cmp(a));
                    &ct == p
                })
                .cloned()
                .collect()
        };
        prefixes = prefixes
            .into_iter()
            .flat_map(|pre| {
                choices.iter().map(move |c| {
                    let mut v = pre.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    let mut checked = 0u64;
    for pre in &prefixes {
        let before_inv = product_in_path_order(pre, d).inverse();
        for r in &perms {
            let ri = r.inverse();
            for u in &perms {
                let comm = u.inverse().then(r).then(u).then(&ri);
                let last = before_inv.then(&comm);
                let mut sigmas = pre.clone();
                if m == 0 {
                    if !last.is_identity() {
                        continue;
                    }
                } else if m == 1 {
                    // conjugation fixes σ_1 to its representative
                    if last != cycle_type_representative(&t.partitions[0]) {
                        continue;
                    }
                    sigmas.push(last);
                } else {
                    let mut ct = last.cycle_type();
                    ct.sort_unstable_by(|a, b| b.cmp(a));
                    if ct != t.partitions[m - 1] {
                        continue;
                    }
                    sigmas.push(last);
                }
                let Ok(x) = MonodromyDatum::new(r.clone(), u.clone(), sigmas) else { continue };
                checked += 1;
                if let Some(rep) = t.accepts(&x) {
                    return Ok((Some((x, rep)), checked));
                }
            }
        }
    }
    Ok((None, checked))
}

/// Decides whether a cover of degree `d` of the unit torus realizes
/// component `tag` of `stratum` with zero classes `classes` and absolute
/// periods `Z + iZ`, and checks the answer against `expect_exists`.
///
/// Zeros in one class lie over one branch point, so the search ranges
/// over data whose branch partitions are `{n_j + 1 : j ∈ class}` padded
/// with ones. Witnesses are looked for by seeded random search first and
/// exhaustively after that; nonexistence is certified by a structural
/// obstruction or by exhausting every datum.
pub fn certify(
    stratum: &Stratum,
    tag: ComponentTag,
    classes: &[Vec<usize>],
    d: usize,
    expect_exists: bool,
    seed: u64,
) -> Result<Certificate, OracleError> {
    validate_classes(stratum, classes).map_err(|e| OracleError::CertificationFailed(e.to_string()))?;
    let bound = max_cells(6);
    if d == 0 || d > bound {
        return Err(OracleError::BoundExceeded { requested: d, bound });
    }
    let shape = class_shape(&class_orders(stratum, classes));
    let mut partitions: Vec<Vec<usize>> = shape
        .iter()
        .map(|c| {
            let mut p: Vec<usize> = c.iter().map(|n| n + 1).collect();
            let used: usize = p.iter().sum();
            p.extend(std::iter::repeat(1).take(d.saturating_sub(used)));
            p
        })
        .collect();
    partitions.sort_unstable_by(|a, b| b.cmp(a));
    let mut cert = Certificate {
        stratum: stratum.to_string(),
        component: tag.short().to_string(),
        classes: format_classes(classes),
        psi_shape: shape.clone(),
        degree: d,
        branch_data: partitions.clone(),
        exists: false,
        seed,
        evidence: Evidence::Structural { reason: String::new() },
    };
    let structural = if !kz_components(stratum).contains(&tag) {
        Some(format!("{stratum} has no {} component", tag.short()))
    } else if let Some(c) = shape.iter().find(|c| c.iter().map(|n| n + 1).sum::<usize>() > d) {
        Some(format!("a class of orders {c:?} needs {} sheets over one point", c.iter().map(|n| n + 1).sum::<usize>()))
    } else if stratum.genus() == 1 && d > 1 {
        Some(format!("an unbranched cover of degree {d} has periods of index {d}"))
    } else {
        None
    };
    let outcome = match structural {
        Some(reason) => {
            cert.evidence = Evidence::Structural { reason };
            false
        }
        None => {
            let target = Target { tag, shape, stratum, partitions };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let found = match random_search(&target, d, &mut rng) {
                Some(w) => Some(w),
                None => {
                    let (w, checked) = exhaustive_search(&target, d)?;
                    if w.is_none() {
                        cert.evidence = Evidence::Exhaustive { data_checked: checked };
                    }
                    w
                }
            };
            match found {
                Some((x, report)) => {
                    cert.evidence =
                        Evidence::Witness { datum: DatumJson::from(&x), surface: x.realize().to_text(), report };
                    true
                }
                None => false,
            }
        }
    };
    cert.exists = outcome;
    if outcome != expect_exists {
        return Err(OracleError::CertificationFailed(format!(
            "{} {} with classes {} at d = {d}: expected {}, found {}",
            cert.stratum,
            cert.component,
            cert.classes,
            if expect_exists { "a cover" } else { "none" },
            if outcome { "a cover" } else { "none" },
        )));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn single_point_matches_origami() {
        // the three-square L: r = (0 1), u = (0 2)
        let r = p(3, &[&[0, 1]]);
        let u = p(3, &[&[0, 2]]);
        let sigma = u.inverse().then(&r).then(&u).then(&r.inverse());
        let x = MonodromyDatum::new(r, u, vec![sigma]).unwrap();
        let s = x.realize();
        assert_eq!(s.stratum().to_string(), "H(2)");
        assert_eq!(s.volume(), Rational64::from_integer(3));
    }

    #[test]
    fn two_simple_points() {
        let t = p(2, &[&[0, 1]]);
        let id = Perm::identity(2);
        let x = MonodromyDatum::new(id.clone(), id, vec![t.clone(), t]).unwrap();
        let s = x.realize();
        assert_eq!(s.stratum().to_string(), "H(1,1)");
        assert_eq!(x.stratum(), s.stratum());
    }

    #[test]
    fn relation_is_checked() {
        let t = p(2, &[&[0, 1]]);
        let id = Perm::identity(2);
        assert!(MonodromyDatum::new(id.clone(), id, vec![t]).is_err());
    }
}
