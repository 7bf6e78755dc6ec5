//! Genus-two surfaces from parallelograms, for period data whose absolute
//! image is not a lattice.
//!
//! Coordinates are exact scalars over the cocycle's declared reals. The
//! stratum of a polygon surface is read off from the corner cycles: the
//! angle at a vertex is counted in full turns by comparing edge directions
//! exactly, never by measuring it.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::BuildError;
use crate::checker::{ExactCocycle, ExactScalar, RealBasis, Vector};
use crate::flat::Stratum;

/// Counterclockwise polygon; edge `i` runs from vertex `i` to `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polygon {
    pub vertices: Vec<Vector>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeRef {
    pub polygon: usize,
    pub edge: usize,
}

/// Polygons with edges identified in pairs by translations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonSurface {
    #[serde(skip)]
    pub reals: RealBasis,
    pub polygons: Vec<Polygon>,
    pub pairing: Vec<(EdgeRef, EdgeRef)>,
}

fn add(u: &Vector, v: &Vector) -> Vector {
    [u[0].clone() + v[0].clone(), u[1].clone() + v[1].clone()]
}

fn sub(u: &Vector, v: &Vector) -> Vector {
    [u[0].clone() - v[0].clone(), u[1].clone() - v[1].clone()]
}

fn det(u: &Vector, v: &Vector) -> ExactScalar {
    &u[0] * &v[1] - &u[1] * &v[0]
}

fn origin() -> Vector {
    [ExactScalar::zero(), ExactScalar::zero()]
}

impl Polygon {
    pub fn edge(&self, i: usize) -> Vector {
        let n = self.vertices.len();
        sub(&self.vertices[(i + 1) % n], &self.vertices[i])
    }

    /// Twice the signed area.
    fn double_area(&self) -> ExactScalar {
        let n = self.vertices.len();
        (0..n).fold(ExactScalar::zero(), |acc, i| acc + det(&self.vertices[i], &self.vertices[(i + 1) % n]))
    }
}

/// `0` for directions in `[0, π)`, `1` for `[π, 2π)`.
fn half_plane(v: &Vector, reals: &RealBasis) -> Result<u8, BuildError> {
    Ok(match (v[1].sign(reals)?, v[0].sign(reals)?) {
        (Ordering::Greater, _) | (Ordering::Equal, Ordering::Greater) => 0,
        _ => 1,
    })
}

/// Compares the arguments of two nonzero vectors in `[0, 2π)`.
fn cmp_arg(u: &Vector, w: &Vector, reals: &RealBasis) -> Result<Ordering, BuildError> {
    let (hu, hw) = (half_plane(u, reals)?, half_plane(w, reals)?);
    if hu != hw {
        return Ok(hu.cmp(&hw));
    }
    // same half plane: w is counterclockwise from u iff det(u, w) > 0
    Ok(det(u, w).sign(reals)?.reverse())
}

/// Stratum (from corner cycles) and exact area.
pub fn verify_polygon_surface(p: &PolygonSurface) -> Result<(Stratum, ExactScalar), BuildError> {
    let bad = |m: String| Err(BuildError::InconsistentGluing(m));
    let sizes: Vec<usize> = p.polygons.iter().map(|q| q.vertices.len()).collect();
    let mut partner = vec![Vec::new(); sizes.len()];
    for (q, &n) in sizes.iter().enumerate() {
        if n < 3 {
            return bad(format!("polygon {q} has {n} vertices"));
        }
        partner[q] = vec![None; n];
    }
    for &(e, f) in &p.pairing {
        for (x, y) in [(e, f), (f, e)] {
            let slot = partner.get_mut(x.polygon).and_then(|v| v.get_mut(x.edge));
            match slot {
                Some(s @ None) if x != y => *s = Some(y),
                _ => return bad(format!("edge {x:?} is paired twice, with itself, or does not exist")),
            }
        }
        let sum = add(&p.polygons[e.polygon].edge(e.edge), &p.polygons[f.polygon].edge(f.edge));
        if !sum[0].is_zero() || !sum[1].is_zero() {
            return bad(format!("edges {e:?} and {f:?} have different holonomy"));
        }
    }
    for (q, edges) in partner.iter().enumerate() {
        if let Some(i) = edges.iter().position(Option::is_none) {
            return bad(format!("edge {i} of polygon {q} is not paired"));
        }
    }
    let mut area = ExactScalar::zero();
    for (q, poly) in p.polygons.iter().enumerate() {
        let a = poly.double_area();
        if a.sign(&p.reals)? != Ordering::Greater {
            return bad(format!("polygon {q} is not counterclockwise"));
        }
        area = area + a;
    }
    let area = area.scale(&BigRational::new(BigInt::from(1), BigInt::from(2)));

    // Corner (q, i) sits at vertex i of polygon q. Turning counterclockwise
    // from edge i we reach the reverse of edge i-1, which is the outgoing
    // edge of the corner glued next.
    let mut seen: Vec<Vec<bool>> = sizes.iter().map(|&n| vec![false; n]).collect();
    let mut orders = Vec::new();
    let mut n_vertices = 0i64;
    for q0 in 0..sizes.len() {
        for i0 in 0..sizes[q0] {
            if seen[q0][i0] {
                continue;
            }
            n_vertices += 1;
            let mut turns = 0;
            let (mut q, mut i) = (q0, i0);
            while !seen[q][i] {
                seen[q][i] = true;
                let poly = &p.polygons[q];
                let n = sizes[q];
                let out = poly.edge(i);
                let back = poly.edge((i + n - 1) % n);
                let back = [-back[0].clone(), -back[1].clone()];
                if cmp_arg(&back, &out, &p.reals)? != Ordering::Greater {
                    turns += 1;
                }
                let next = partner[q][(i + n - 1) % n].unwrap();
                (q, i) = (next.polygon, next.edge);
            }
            if (q, i) != (q0, i0) {
                return bad("corner cycles do not close".into());
            }
            if turns > 1 {
                orders.push(turns - 1);
            }
        }
    }
    let faces = sizes.len() as i64;
    let edges = sizes.iter().sum::<usize>() as i64 / 2;
    let chi = n_vertices - edges + faces;
    let excess: usize = orders.iter().sum();
    if excess as i64 != -chi {
        return bad(format!("angle excess {excess} does not match Euler characteristic {chi}"));
    }
    let stratum = Stratum::new(orders).ok_or_else(|| BuildError::InconsistentGluing("odd angle excess".into()))?;
    Ok((stratum, area))
}

/// A torus cut along a segment of holonomy `w` starting at a corner of
/// its parallelogram: the polygons, their internal pairings (local indices)
/// and the two lips of the slit, with holonomy `w` and `-w`.
struct SlitTorus {
    polygons: Vec<Polygon>,
    pairs: Vec<(EdgeRef, EdgeRef)>,
    lip_plus: EdgeRef,
    lip_minus: EdgeRef,
}

fn e(polygon: usize, edge: usize) -> EdgeRef {
    EdgeRef { polygon, edge }
}

/// `w = s a + t b` must satisfy `0 < s < 1` and `0 ≤ t < 1`, so that the
/// slit from the corner lies in the parallelogram (on its bottom side when
/// `t = 0`) and embeds in the torus.
fn slit_torus(a: &Vector, b: &Vector, w: &Vector, reals: &RealBasis, name: &str) -> Result<SlitTorus, BuildError> {
    let d = det(a, b);
    let s = det(w, b);
    let t = det(a, w);
    let inside = |x: &ExactScalar, strict: bool| -> Result<bool, BuildError> {
        let lo = x.sign(reals)?;
        let hi = (d.clone() - x.clone()).sign(reals)?;
        Ok(hi == Ordering::Greater && (lo == Ordering::Greater || (!strict && lo == Ordering::Equal)))
    };
    if !inside(&s, true)? || !inside(&t, false)? {
        return Err(BuildError::NotNormalized(format!(
            "the slit of holonomy ({}, {}) does not fit in the parallelogram of {name}",
            w[0], w[1]
        )));
    }
    let o = origin();
    let ab = add(a, b);
    if t.is_zero() {
        // slit along the bottom side: one hexagon
        let hex = Polygon { vertices: vec![o, w.clone(), a.clone(), ab.clone(), add(b, w), b.clone()] };
        return Ok(SlitTorus {
            polygons: vec![hex],
            pairs: vec![(e(0, 1), e(0, 3)), (e(0, 2), e(0, 5))],
            lip_plus: e(0, 0),
            lip_minus: e(0, 4),
        });
    }
    // slit inside: split along 0 → w → a + b
    let right = Polygon { vertices: vec![o.clone(), a.clone(), ab.clone(), w.clone()] };
    let left = Polygon { vertices: vec![o, w.clone(), ab, b.clone()] };
    Ok(SlitTorus {
        polygons: vec![right, left],
        pairs: vec![(e(0, 0), e(1, 2)), (e(0, 1), e(1, 3)), (e(0, 2), e(1, 1))],
        lip_plus: e(1, 0),
        lip_minus: e(0, 3),
    })
}

fn offset(r: EdgeRef, k: usize) -> EdgeRef {
    e(r.polygon + k, r.edge)
}

/// A genus-two surface with absolute periods `χ(a_i), χ(b_i)`.
///
/// `H(2)`: the torus of `(a_1, b_1)` is slit along `χ(a_2)` from a corner
/// and the parallelogram of `(a_2, b_2)`, glued along its `b_2` sides, is
/// sewn into the slit. `H(1,1)`: both tori are slit along the relative
/// period `χ(δ)` of the second zero and glued crosswise. The slits must
/// fit as described in [`SlitTorus`]; otherwise `NotNormalized`.
pub fn build_genus2(chi: &ExactCocycle, stratum: &Stratum) -> Result<PolygonSurface, BuildError> {
    if chi.genus != 2 || stratum.genus() != 2 {
        return Err(BuildError::WrongGenus(if chi.genus != 2 { chi.genus } else { stratum.genus() }));
    }
    chi.validate()?;
    let reals = &chi.reals;
    for i in 0..2 {
        if det(&chi.a[i], &chi.b[i]).sign(reals)? != Ordering::Greater {
            return Err(BuildError::NotNormalized(format!("det(χ(a_{0}), χ(b_{0})) is not positive", i + 1)));
        }
    }
    let (a1, b1, a2, b2) = (&chi.a[0], &chi.b[0], &chi.a[1], &chi.b[1]);
    let mut polygons = Vec::new();
    let mut pairing = Vec::new();
    if stratum.is_minimal() {
        let t1 = slit_torus(a1, b1, a2, reals, "(a_1, b_1)")?;
        let k = t1.polygons.len();
        polygons.extend(t1.polygons);
        pairing.extend(t1.pairs);
        polygons.push(Polygon { vertices: vec![origin(), a2.clone(), add(a2, b2), b2.clone()] });
        pairing.push((e(k, 1), e(k, 3)));
        pairing.push((t1.lip_plus, e(k, 2)));
        pairing.push((t1.lip_minus, e(k, 0)));
    } else {
        let w = chi.rel.first().ok_or_else(|| BuildError::NotNormalized("H(1,1) needs a relative period".into()))?;
        let t1 = slit_torus(a1, b1, w, reals, "(a_1, b_1)")?;
        let t2 = slit_torus(a2, b2, w, reals, "(a_2, b_2)")?;
        let k = t1.polygons.len();
        polygons.extend(t1.polygons);
        polygons.extend(t2.polygons);
        pairing.extend(t1.pairs);
        pairing.extend(t2.pairs.iter().map(|&(x, y)| (offset(x, k), offset(y, k))));
        pairing.push((t1.lip_plus, offset(t2.lip_minus, k)));
        pairing.push((offset(t2.lip_plus, k), t1.lip_minus));
    }
    Ok(PolygonSurface { reals: reals.clone(), polygons, pairing })
}
