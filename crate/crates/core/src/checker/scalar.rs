//! Exact real numbers over a declared ℚ-independent basis.
//!
//! A scalar is a polynomial with rational coefficients in symbols
//! `x_1, .., x_m` standing for the declared reals; the empty monomial is
//! `1`. Period values are linear; products only appear in determinants.
//! Signs are certified by interval arithmetic on decimal approximations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::CheckError;

/// Sorted symbol indices (1-based); empty for the constant term.
pub type Monomial = Vec<usize>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: BTreeMap<Monomial, BigRational>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn rational(q: BigRational) -> Self {
        Self::monomial(Vec::new(), q)
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(p.into(), q.into()))
    }

    /// `q · x_symbol`.
    pub fn symbol(symbol: usize, q: BigRational) -> Self {
        Self::monomial(vec![symbol], q)
    }

    pub fn monomial(mut m: Monomial, q: BigRational) -> Self {
        m.sort_unstable();
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        ExactScalar { terms }
    }

    /// Linear scalar from coordinates over `(1, x_1, .., x_m)`.
    pub fn from_coords(coords: &[BigRational]) -> Self {
        let mut s = ExactScalar::zero();
        for (i, c) in coords.iter().enumerate() {
            let m = if i == 0 { Vec::new() } else { vec![i] };
            s = s + Self::monomial(m, c.clone());
        }
        s
    }

    /// Coordinates over `(1, x_1, .., x_m)`; `None` if not linear.
    pub fn coords(&self, m: usize) -> Option<Vec<BigRational>> {
        let mut out = vec![BigRational::zero(); m + 1];
        for (mono, c) in &self.terms {
            match mono.as_slice() {
                [] => out[0] = c.clone(),
                [i] if *i <= m => out[*i] = c.clone(),
                _ => return None,
            }
        }
        Some(out)
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(Vec::is_empty)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.is_rational() {
            return None;
        }
        Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return ExactScalar::zero();
        }
        ExactScalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    /// `self / other` when the quotient is a rational number.
    pub fn rational_ratio(&self, other: &ExactScalar) -> Option<BigRational> {
        let (m, c) = other.terms.iter().next()?;
        let q = self.terms.get(m).cloned().unwrap_or_else(BigRational::zero) / c;
        (other.scale(&q) == *self).then_some(q)
    }

    /// Sign, certified with the approximations in `reals`.
    pub fn sign(&self, reals: &RealBasis) -> Result<Ordering, CheckError> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(q) = self.to_rational() {
            return Ok(q.cmp(&BigRational::zero()));
        }
        let max_digits = reals.reals.iter().map(|r| r.digits()).min().unwrap_or(0);
        let mut digits = 4.min(max_digits);
        loop {
            let iv = self.interval(reals, digits)?;
            if iv.lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if iv.hi.is_negative() {
                return Ok(Ordering::Less);
            }
            if digits >= max_digits {
                return Err(CheckError::SignUndetermined(self.to_string()));
            }
            digits = (digits * 2).min(max_digits);
        }
    }

    fn interval(&self, reals: &RealBasis, digits: usize) -> Result<Interval, CheckError> {
        let mut total = Interval::point(BigRational::zero());
        for (m, c) in &self.terms {
            let mut iv = Interval::point(c.clone());
            for &sym in m {
                let r = reals
                    .reals
                    .get(sym - 1)
                    .ok_or_else(|| CheckError::Schema(format!("symbol {sym} not declared")))?;
                iv = iv.mul(&r.interval(digits)?);
            }
            total = total.add(&iv);
        }
        Ok(total)
    }

    /// Floating approximation, for display only.
    pub fn approx(&self, reals: &RealBasis) -> f64 {
        self.interval(reals, 15)
            .map(|iv| {
                let mid = (iv.lo + iv.hi) / BigRational::from_integer(2.into());
                num_traits::ToPrimitive::to_f64(&mid).unwrap_or(f64::NAN)
            })
            .unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for s in m {
                write!(f, "*x{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(mut self, rhs: ExactScalar) -> ExactScalar {
        for (m, c) in rhs.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                self.terms.remove(&m);
            }
        }
        self
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        self + (-rhs)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out = out + ExactScalar::monomial(m, c1 * c2);
            }
        }
        out
    }
}

impl Serialize for ExactScalar {
    /// A map from monomial (`"1"`, `"x1"`, `"x1*x2"`) to `"p/q"`.
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            let key = if m.is_empty() {
                "1".to_string()
            } else {
                m.iter().map(|s| format!("x{s}")).collect::<Vec<_>>().join("*")
            };
            map.serialize_entry(&key, &c.to_string())?;
        }
        map.end()
    }
}

/// Closed rational interval.
#[derive(Debug, Clone)]
struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

/// One declared real: a name and a decimal approximation, trusted to be
/// correct in every printed digit (truncation error below one unit in the
/// last place).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredReal {
    pub name: String,
    pub approx: String,
}

impl DeclaredReal {
    fn digits(&self) -> usize {
        self.approx.split_once('.').map_or(0, |(_, f)| f.trim().len())
    }

    /// Enclosure from the first `digits` fractional digits.
    fn interval(&self, digits: usize) -> Result<Interval, CheckError> {
        let bad = || CheckError::Schema(format!("bad decimal {:?} for {}", self.approx, self.name));
        let s = self.approx.trim();
        let (neg, s) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let frac: String = frac.chars().take(digits).collect();
        let k = frac.len();
        let digits_str = format!("{int}{frac}");
        if digits_str.is_empty() || !digits_str.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let num: BigInt = digits_str.parse().map_err(|_| bad())?;
        let den = BigInt::from(10).pow(k as u32);
        let mid = BigRational::new(num, den.clone());
        let ulp = BigRational::new(BigInt::one(), den);
        let (lo, hi) = (mid.clone() - &ulp, mid + ulp);
        Ok(if neg { Interval { lo: -hi, hi: -lo } } else { Interval { lo, hi } })
    }
}

/// The declared basis `x_1, .., x_m` (the number 1 is implicit).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RealBasis {
    pub reals: Vec<DeclaredReal>,
}

impl RealBasis {
    pub fn rational() -> Self {
        RealBasis::default()
    }

    pub fn new(reals: Vec<(&str, &str)>) -> Self {
        RealBasis {
            reals: reals
                .into_iter()
                .map(|(n, a)| DeclaredReal { name: n.to_string(), approx: a.to_string() })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.reals.len()
    }
}
