//! Relative cocycles and the realizability decision.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::minmax::minmax_assignment;
use super::scalar::{ExactScalar, RealBasis};
use super::CheckError;
use crate::flat::{corner_positions, homology_symplectic_basis, GridSurface};
use crate::hnf::{hermite_rows, lattice_contains};

/// A vector of `R²` with exact coordinates.
pub type Vector = [ExactScalar; 2];

fn det(u: &Vector, v: &Vector) -> ExactScalar {
    &u[0] * &v[1] - &u[1] * &v[0]
}

/// Values of `χ ∈ H¹(S, Z; C)` on a symplectic basis `a_i, b_i` and on
/// paths `δ_j` from the first zero to zero `j` (`j = 2..k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCocycle {
    pub genus: usize,
    /// Zero orders, listed in the order the relative paths refer to.
    pub orders: Vec<usize>,
    pub reals: RealBasis,
    pub a: Vec<Vector>,
    pub b: Vec<Vector>,
    pub rel: Vec<Vector>,
}

/// The restriction of a cocycle to absolute homology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbsoluteCocycle {
    pub genus: usize,
    pub reals: RealBasis,
    pub a: Vec<Vector>,
    pub b: Vec<Vector>,
}

impl AbsoluteCocycle {
    pub fn volume(&self) -> ExactScalar {
        self.a.iter().zip(&self.b).fold(ExactScalar::zero(), |v, (a, b)| v + det(a, b))
    }
}

impl ExactCocycle {
    pub fn validate(&self) -> Result<(), CheckError> {
        let sum: usize = self.orders.iter().sum();
        if self.genus == 0 || sum != 2 * self.genus - 2 {
            return Err(CheckError::Schema(format!(
                "orders sum to {sum}, expected 2g-2 = {}",
                2 * self.genus as i64 - 2
            )));
        }
        if self.a.len() != self.genus || self.b.len() != self.genus {
            return Err(CheckError::Schema("need g values for a and for b".into()));
        }
        if self.rel.len() + 1 != self.orders.len().max(1) {
            return Err(CheckError::Schema(format!(
                "{} zeros need {} relative values, got {}",
                self.orders.len(),
                self.orders.len().max(1) - 1,
                self.rel.len()
            )));
        }
        let m = self.reals.dim();
        for v in self.a.iter().chain(&self.b).chain(&self.rel) {
            for x in v {
                if x.coords(m).is_none() {
                    return Err(CheckError::Schema(format!("value {x} is not linear in the declared reals")));
                }
            }
        }
        Ok(())
    }

    pub fn absolute_values(&self) -> impl Iterator<Item = &Vector> {
        self.a.iter().chain(&self.b)
    }

    /// Relative value of zero `j` (zero 0 is the base point).
    pub fn relative(&self, j: usize) -> Vector {
        if j == 0 {
            [ExactScalar::zero(), ExactScalar::zero()]
        } else {
            self.rel[j - 1].clone()
        }
    }
}

/// `V(χ) = Σ det(χ(a_i), χ(b_i))`.
pub fn volume(chi: &ExactCocycle) -> ExactScalar {
    restrict(chi).volume()
}

/// Drops the relative values.
pub fn restrict(chi: &ExactCocycle) -> AbsoluteCocycle {
    AbsoluteCocycle { genus: chi.genus, reals: chi.reals.clone(), a: chi.a.clone(), b: chi.b.clone() }
}

/// Integer coordinates of the absolute image, scaled by a common
/// denominator that also clears the relative values.
struct IntegerModel {
    m: usize,
    denom: BigInt,
    hnf: Vec<Vec<BigInt>>,
}

impl IntegerModel {
    fn new(chi: &ExactCocycle) -> Self {
        let m = chi.reals.dim();
        let all = chi.absolute_values().chain(&chi.rel);
        let mut denom = BigInt::one();
        for v in all {
            for x in v {
                for c in x.coords(m).expect("validated") {
                    denom = denom.lcm(c.denom());
                }
            }
        }
        let rows: Vec<Vec<BigInt>> = chi.absolute_values().map(|v| Self::scaled(v, m, &denom)).collect();
        IntegerModel { m, hnf: hermite_rows(&rows), denom }
    }

    fn scaled(v: &Vector, m: usize, denom: &BigInt) -> Vec<BigInt> {
        v.iter()
            .flat_map(|x| x.coords(m).expect("validated"))
            .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
            .collect()
    }

    /// Membership of `v` in the absolute image.
    fn contains(&self, v: &Vector) -> bool {
        let scaled: Vec<BigRational> = v
            .iter()
            .flat_map(|x| x.coords(self.m).expect("validated"))
            .map(|c| c * BigRational::from_integer(self.denom.clone()))
            .collect();
        if scaled.iter().any(|c| !c.is_integer()) {
            return false;
        }
        let ints: Vec<BigInt> = scaled.into_iter().map(|c| c.to_integer()).collect();
        lattice_contains(&self.hnf, &ints)
    }

    fn unscale(&self, row: &[BigInt]) -> Vector {
        let d = BigRational::from_integer(self.denom.clone());
        let coords: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone()) / &d).collect();
        let (x, y) = coords.split_at(self.m + 1);
        [ExactScalar::from_coords(x), ExactScalar::from_coords(y)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeInfo {
    pub basis: [Vector; 2],
    pub covolume: ExactScalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LatticeCheck {
    Lattice(LatticeInfo),
    /// The absolute image is not discrete and cocompact: `rank` is its
    /// rank as an abelian group.
    NotLattice { rank: usize },
}

/// Decides whether `χ(H_1(S, Z))` is a lattice of `R²`.
pub fn is_lattice(chi: &ExactCocycle) -> Result<LatticeCheck, CheckError> {
    chi.validate()?;
    let model = IntegerModel::new(chi);
    if model.hnf.len() != 2 {
        return Ok(LatticeCheck::NotLattice { rank: model.hnf.len() });
    }
    let e1 = model.unscale(&model.hnf[0]);
    let e2 = model.unscale(&model.hnf[1]);
    let d = det(&e1, &e2);
    let covolume = match d.sign(&chi.reals)? {
        Ordering::Equal => return Ok(LatticeCheck::NotLattice { rank: 2 }),
        Ordering::Greater => d,
        Ordering::Less => -d,
    };
    Ok(LatticeCheck::Lattice(LatticeInfo { basis: [e1, e2], covolume }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Psi {
    /// Zero indices per class, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// Class sizes, non-increasing.
    pub sizes: Vec<usize>,
}

/// Zeros `i ~ j` iff `χ(δ_i) - χ(δ_j)` lies in the absolute image.
pub fn psi_of_cocycle(chi: &ExactCocycle) -> Result<Psi, CheckError> {
    chi.validate()?;
    let model = IntegerModel::new(chi);
    let k = chi.orders.len();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..k {
        let rj = chi.relative(j);
        let found = classes.iter_mut().find(|c| {
            let ri = chi.relative(c[0]);
            let diff = [rj[0].clone() - ri[0].clone(), rj[1].clone() - ri[1].clone()];
            model.contains(&diff)
        });
        match found {
            Some(c) => c.push(j),
            None => classes.push(vec![j]),
        }
    }
    let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Psi { classes, sizes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailedCondition {
    /// `V(χ) ≤ 0`.
    Volume,
    /// `V / Area` is below the min-max bound.
    Inequality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizabilityVerdict {
    pub realizable: bool,
    pub failed: Option<FailedCondition>,
    pub volume: ExactScalar,
    pub lattice: Option<LatticeInfo>,
    /// `V / Area` when the absolute image is a lattice.
    pub degree: Option<String>,
    pub psi: Psi,
    /// Zero indices per class `A_i` of the optimal assignment.
    pub witness: Option<Vec<Vec<usize>>>,
    pub witness_value: Option<u64>,
    /// The verdict never depends on the connected component.
    pub component_independent: bool,
}

/// The two conditions of the realizability theorem, decided exactly.
pub fn theorem1_check(chi: &ExactCocycle) -> Result<RealizabilityVerdict, CheckError> {
    chi.validate()?;
    let v = volume(chi);
    let psi = psi_of_cocycle(chi)?;
    let mut verdict = RealizabilityVerdict {
        realizable: false,
        failed: None,
        volume: v.clone(),
        lattice: None,
        degree: None,
        psi: psi.clone(),
        witness: None,
        witness_value: None,
        component_independent: true,
    };
    if v.sign(&chi.reals)? != Ordering::Greater {
        verdict.failed = Some(FailedCondition::Volume);
        return Ok(verdict);
    }
    let LatticeCheck::Lattice(info) = is_lattice(chi)? else {
        verdict.realizable = true;
        return Ok(verdict);
    };
    let ratio = v
        .rational_ratio(&info.covolume)
        .filter(BigRational::is_integer)
        .ok_or_else(|| CheckError::NonIntegralDegree(v.to_string(), info.covolume.to_string()))?;
    let d = ratio.to_integer();
    // classes of the witness are listed in Ψ order (largest first)
    let mut sizes = psi.sizes.clone();
    sizes.retain(|&s| s > 0);
    let weights: Vec<u64> = chi.orders.iter().map(|&n| n as u64 + 1).collect();
    let best = if weights.is_empty() {
        None
    } else {
        Some(minmax_assignment(&sizes, &weights)?)
    };
    let value = best.as_ref().map_or(0, |b| b.value);
    verdict.realizable = BigInt::from(value) <= d && d.is_positive();
    if !verdict.realizable {
        verdict.failed = Some(FailedCondition::Inequality);
    }
    verdict.lattice = Some(info);
    verdict.degree = Some(d.to_string());
    verdict.witness = best.as_ref().map(|b| b.classes.clone());
    verdict.witness_value = best.map(|b| b.value);
    Ok(verdict)
}

/// A 2×2 rational matrix acting by postcomposition.
pub type Matrix = [[BigRational; 2]; 2];

fn apply(m: &Matrix, v: &Vector) -> Vector {
    [
        v[0].scale(&m[0][0]) + v[1].scale(&m[0][1]),
        v[0].scale(&m[1][0]) + v[1].scale(&m[1][1]),
    ]
}

pub fn gl2_act(m: &Matrix, chi: &ExactCocycle) -> Result<ExactCocycle, CheckError> {
    let d = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if !d.is_positive() {
        return Err(CheckError::SingularMatrix(d.to_string()));
    }
    let map = |vs: &[Vector]| vs.iter().map(|v| apply(m, v)).collect();
    Ok(ExactCocycle { a: map(&chi.a), b: map(&chi.b), rel: map(&chi.rel), ..chi.clone() })
}

/// Adds a relative-only cocycle whose values lie in the absolute image.
pub fn point_push(chi: &ExactCocycle, shift: &[Vector]) -> Result<ExactCocycle, CheckError> {
    chi.validate()?;
    if shift.len() != chi.rel.len() {
        return Err(CheckError::Schema(format!("expected {} relative shifts", chi.rel.len())));
    }
    let model = IntegerModel::new(chi);
    for (j, s) in shift.iter().enumerate() {
        if !model.contains(s) {
            return Err(CheckError::NotInAbsoluteImage(j + 2));
        }
    }
    let rel = chi
        .rel
        .iter()
        .zip(shift)
        .map(|(r, s)| [r[0].clone() + s[0].clone(), r[1].clone() + s[1].clone()])
        .collect();
    Ok(ExactCocycle { rel, ..chi.clone() })
}

/// A cocycle with absolute image `Z + iZ`, volume `d` and the given
/// classes of zeros (zero indices), for genus `g ≥ 2` and `d ≥ 1`.
pub fn synthetic_lattice_cocycle(orders: &[usize], classes: &[Vec<usize>], d: i64) -> ExactCocycle {
    let g = orders.iter().sum::<usize>() / 2 + 1;
    let e = |x: i64, y: i64| [ExactScalar::int(x), ExactScalar::int(y)];
    let mut a = vec![e(1, 0)];
    let mut b = vec![e(0, 1)];
    for i in 1..g {
        a.push(if i == 1 { e(d - 1, 0) } else { e(0, 0) });
        b.push(if i == 1 { e(0, 1) } else { e(0, 0) });
    }
    let l = classes.len().max(1) as i64;
    let class_of = |j: usize| classes.iter().position(|c| c.contains(&j)).unwrap_or(0) as i64;
    let base = class_of(0);
    let rel = (1..orders.len())
        .map(|j| [ExactScalar::ratio(class_of(j) - base, l), ExactScalar::int(0)])
        .collect();
    ExactCocycle { genus: g, orders: orders.to_vec(), reals: RealBasis::rational(), a, b, rel }
}

/// The period cocycle of a grid surface: values on the computed symplectic
/// basis and on tree paths from the first zero to the others.
pub fn surface_cocycle(s: &GridSurface) -> ExactCocycle {
    let (sx, sy) = (s.scale_x(), s.scale_y());
    let q = |n: i64, scale: Rational64| ExactScalar::ratio(n * *scale.numer(), *scale.denom());
    let vec = |(x, y): (i64, i64)| [q(x, sx), q(y, sy)];
    let basis = homology_symplectic_basis(s);
    let g = basis.genus;
    let a = (0..g).map(|i| vec(basis.displacement(&basis.coefficients[2 * i]))).collect();
    let b = (0..g).map(|i| vec(basis.displacement(&basis.coefficients[2 * i + 1]))).collect();
    let pos = corner_positions(s);
    let zeros = s.zeros();
    let rel = zeros
        .iter()
        .skip(1)
        .map(|z| {
            let (p, p0) = (pos[z.cell], pos[zeros[0].cell]);
            vec((p.0 - p0.0, p.1 - p0.1))
        })
        .collect();
    ExactCocycle {
        genus: g,
        orders: zeros.iter().map(|z| z.order).collect(),
        reals: RealBasis::rational(),
        a,
        b,
        rel,
    }
}

// ---- JSON ----

/// Coordinates over `(1, x_1, .., x_m)` as `"p/q"` strings.
type CoordsJson = Vec<String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub genus: usize,
    pub orders: Vec<usize>,
    #[serde(default)]
    pub basis_reals: Vec<super::scalar::DeclaredReal>,
    pub a: Vec<[CoordsJson; 2]>,
    pub b: Vec<[CoordsJson; 2]>,
    #[serde(default)]
    pub rel: Vec<[CoordsJson; 2]>,
}

fn parse_big_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl CocycleJson {
    pub fn into_cocycle(self) -> Result<ExactCocycle, CheckError> {
        let m = self.basis_reals.len();
        let scalar = |c: &CoordsJson| -> Result<ExactScalar, CheckError> {
            if c.len() > m + 1 {
                return Err(CheckError::Schema(format!("{} coordinates but only {} basis reals", c.len(), m)));
            }
            let coords = c
                .iter()
                .map(|s| parse_big_rational(s).ok_or_else(|| CheckError::Schema(format!("bad rational {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ExactScalar::from_coords(&coords))
        };
        let vecs = |v: &[[CoordsJson; 2]]| -> Result<Vec<Vector>, CheckError> {
            v.iter().map(|[x, y]| Ok([scalar(x)?, scalar(y)?])).collect()
        };
        let chi = ExactCocycle {
            genus: self.genus,
            orders: self.orders.clone(),
            reals: RealBasis { reals: self.basis_reals.clone() },
            a: vecs(&self.a)?,
            b: vecs(&self.b)?,
            rel: vecs(&self.rel)?,
        };
        chi.validate()?;
        Ok(chi)
    }

    pub fn from_cocycle(chi: &ExactCocycle) -> Self {
        let m = chi.reals.dim();
        let coords = |x: &ExactScalar| -> CoordsJson {
            x.coords(m).expect("linear values").iter().map(|c| c.to_string()).collect()
        };
        let vecs = |v: &[Vector]| v.iter().map(|[x, y]| [coords(x), coords(y)]).collect();
        CocycleJson {
            genus: chi.genus,
            orders: chi.orders.clone(),
            basis_reals: chi.reals.reals.clone(),
            a: vecs(&chi.a),
            b: vecs(&chi.b),
            rel: vecs(&chi.rel),
        }
    }
}

impl ExactCocycle {
    pub fn from_json_str(s: &str) -> Result<Self, CheckError> {
        let j: CocycleJson = serde_json::from_str(s).map_err(|e| CheckError::Schema(e.to_string()))?;
        j.into_cocycle()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&CocycleJson::from_cocycle(self)).expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> BigRational {
        BigRational::new(p.into(), r.into())
    }

    fn v(x: ExactScalar, y: ExactScalar) -> Vector {
        [x, y]
    }

    #[test]
    fn volume_examples() {
        let i = ExactScalar::int;
        // rotated genus-2 example: the sqrt2 terms cancel
        let s2 = ExactScalar::symbol(1, q(1, 1));
        let chi = ExactCocycle {
            genus: 2,
            orders: vec![2],
            reals: RealBasis::new(vec![("sqrt2", "1.41421356237309504880")]),
            a: vec![v(i(1), i(0)), v(i(0), i(1))],
            b: vec![v(s2, i(1)), v(i(-1), i(0))],
            rel: vec![],
        };
        assert_eq!(volume(&chi), i(2));
        // a_1 = 1 - 1/N, a_2 = 1/N, b_1 = b_2 = i
        let n = 7;
        let chi = ExactCocycle {
            genus: 2,
            orders: vec![1, 1],
            reals: RealBasis::rational(),
            a: vec![v(ExactScalar::ratio(n - 1, n), i(0)), v(ExactScalar::ratio(1, n), i(0))],
            b: vec![v(i(0), i(1)), v(i(0), i(1))],
            rel: vec![v(i(0), i(0))],
        };
        assert_eq!(volume(&chi), i(1));
        assert!(matches!(is_lattice(&chi).unwrap(), LatticeCheck::Lattice(_)));
    }

    #[test]
    fn double_zero_thresholds() {
        // H(3,3): Ψ = {2} needs d ≥ 8, Ψ = {1,1} needs d ≥ 4
        let same = |d| theorem1_check(&synthetic_lattice_cocycle(&[3, 3], &[vec![0, 1]], d)).unwrap().realizable;
        let apart = |d| theorem1_check(&synthetic_lattice_cocycle(&[3, 3], &[vec![0], vec![1]], d)).unwrap().realizable;
        assert!(same(8) && !same(7));
        assert!(apart(4) && !apart(3));
        let v = theorem1_check(&synthetic_lattice_cocycle(&[3, 3], &[vec![0], vec![1]], 3)).unwrap();
        assert_eq!(v.failed, Some(FailedCondition::Inequality));
        assert_eq!(v.psi.sizes, vec![1, 1]);
    }

    #[test]
    fn irrational_image_is_not_a_lattice() {
        let i = ExactScalar::int;
        let chi = ExactCocycle {
            genus: 2,
            orders: vec![2],
            reals: RealBasis::new(vec![("sqrt2", "1.41421356237309504880")]),
            a: vec![v(i(1), i(0)), v(ExactScalar::symbol(1, q(1, 1)), i(0))],
            b: vec![v(i(0), i(1)), v(i(0), i(0))],
            rel: vec![],
        };
        assert_eq!(is_lattice(&chi).unwrap(), LatticeCheck::NotLattice { rank: 3 });
        assert!(theorem1_check(&chi).unwrap().realizable);
    }

    #[test]
    fn point_push_rules() {
        let chi = synthetic_lattice_cocycle(&[1, 1], &[vec![0], vec![1]], 3);
        let pushed = point_push(&chi, &[[ExactScalar::int(1), ExactScalar::int(1)]]).unwrap();
        assert_eq!(psi_of_cocycle(&pushed).unwrap(), psi_of_cocycle(&chi).unwrap());
        assert_eq!(restrict(&pushed), restrict(&chi));
        assert!(matches!(
            point_push(&chi, &[[ExactScalar::ratio(1, 2), ExactScalar::int(0)]]),
            Err(CheckError::NotInAbsoluteImage(2))
        ));
    }

    #[test]
    fn json_round_trip() {
        let chi = synthetic_lattice_cocycle(&[3, 3], &[vec![0], vec![1]], 4);
        let back = ExactCocycle::from_json_str(&chi.to_json_string()).unwrap();
        assert_eq!(back, chi);
    }
}
