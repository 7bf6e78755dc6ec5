//! The slit patterns and the per-component builders.
//!
//! Every construction is a [`SlitTorusDiagram`]: one horizontal line per
//! zero class, patterns packed from the left with a unit gap between them.

use num_rational::Rational64;

use super::diagram::{compile_diagram, half, int, HSlit, Side, SlitTorusDiagram, VSlit};
use super::{class_orders, validate_classes, BuildError};
use crate::flat::{GridSurface, Stratum};
use crate::invariants::{kz_components, ComponentTag};
use crate::perm::Perm;

/// Slits of one line, glued among themselves.
#[derive(Debug, Clone, Default)]
struct Line {
    slits: Vec<(Rational64, Rational64)>,
    /// `(i, j)`: bottom of slit `i` glued to top of slit `j`
    glue: Vec<(usize, usize)>,
}

impl Line {
    fn slit(&mut self, x0: Rational64, x1: Rational64) -> usize {
        self.slits.push((x0, x1));
        self.slits.len() - 1
    }

    fn shift(&mut self, dx: i64) {
        for s in &mut self.slits {
            s.0 += dx;
            s.1 += dx;
        }
    }
}

/// Odd-spin pattern for a zero of even order `n`: `n/2 + 1` unit slits,
/// the first two sharing an endpoint and the others a unit apart, glued
/// cyclically. Occupies `[s, s + n]`; the zero sits at every endpoint.
fn odd_pattern(line: &mut Line, s: i64, n: usize) -> i64 {
    if n == 0 {
        return s;
    }
    let k = n / 2 + 1;
    let mut idx = vec![line.slit(int(s), int(s + 1))];
    for j in 1..k as i64 {
        idx.push(line.slit(int(s + 2 * j - 1), int(s + 2 * j)));
    }
    for i in 0..k {
        line.glue.push((idx[i], idx[(i + 1) % k]));
    }
    s + n as i64
}

/// `2g - 2` contiguous unit slits, slit `i` glued to slit `2g - 1 - i`.
fn hyp_minimal_pattern(line: &mut Line, s: i64, g: usize) -> i64 {
    let m = 2 * g - 2;
    let idx: Vec<usize> = (0..m as i64).map(|i| line.slit(int(s + i), int(s + i + 1))).collect();
    for i in 0..m {
        line.glue.push((idx[i], idx[m - 1 - i]));
    }
    s + m as i64
}

/// Two runs of `g - 1` slits separated by one slit length, slit `i` glued
/// to slit `2g - 1 - i`. With half-length slits the two zeros lie over
/// different points of the base; with unit slits over the same point.
fn hyp_double_pattern(line: &mut Line, s: i64, g: usize, half_length: bool) -> Rational64 {
    let m = 2 * g - 2;
    let unit = |k: i64| if half_length { half(k) } else { int(k) };
    let idx: Vec<usize> = (1..=m as i64)
        .map(|i| {
            let left = if i <= g as i64 - 1 { i - 1 } else { i };
            line.slit(int(s) + unit(left), int(s) + unit(left + 1))
        })
        .collect();
    for i in 0..m {
        line.glue.push((idx[i], idx[m - 1 - i]));
    }
    int(s) + unit(m as i64 + 1)
}

/// Even-spin pattern for `n ≥ 4`: the `H(4)` pattern followed directly by
/// the odd pattern of order `n - 4`.
fn even_pattern(line: &mut Line, s: i64, n: usize) -> i64 {
    let e = hyp_minimal_pattern(line, s, 3);
    odd_pattern(line, e, n - 4)
}

/// Two zeros of odd orders `p ≤ q` over the same base point: two unit
/// slits a unit apart with swapped sides, flanked by the odd patterns of
/// orders `p - 1` and `q - 1`. Occupies `p + q + 1`.
fn two_odd_pattern(line: &mut Line, s: i64, p: usize, q: usize) -> i64 {
    let e = odd_pattern(line, s, p - 1);
    let a = line.slit(int(e), int(e + 1));
    let b = line.slit(int(e + 2), int(e + 3));
    line.glue.push((a, b));
    line.glue.push((b, a));
    odd_pattern(line, e + 3, q - 1)
}

/// Six slits realising four simple zeros over one base point with absolute
/// periods `Z + iZ`. Occupies `[s, s + 7]`.
fn exceptional_pattern(line: &mut Line, s: i64) -> i64 {
    const STARTS: [i64; 6] = [0, 1, 2, 3, 4, 6];
    const PARTNER: [usize; 6] = [2, 5, 4, 1, 0, 3];
    let idx: Vec<usize> = STARTS.iter().map(|&x| line.slit(int(s + x), int(s + x + 1))).collect();
    for (i, &j) in PARTNER.iter().enumerate() {
        line.glue.push((idx[i], idx[j]));
    }
    s + 7
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Piece {
    Odd(usize),
    Even(usize),
    TwoOdd(usize, usize),
    Exceptional,
    /// a marked point that vertical slits will turn into a zero
    Point,
}

/// Places pieces left to right with unit gaps; returns where the last one
/// ends.
fn lay_out(line: &mut Line, pieces: &[Piece]) -> i64 {
    let mut cursor = 0;
    let mut last = 0;
    for &p in pieces {
        last = match p {
            Piece::Odd(n) => odd_pattern(line, cursor, n),
            Piece::Even(n) => even_pattern(line, cursor, n),
            Piece::TwoOdd(p, q) => two_odd_pattern(line, cursor, p, q),
            Piece::Exceptional => exceptional_pattern(line, cursor),
            Piece::Point => cursor,
        };
        cursor = last + 1;
    }
    last
}

/// Pieces for a class with an even sum of orders: each even zero gets its
/// own pattern, odd zeros are paired in descending order.
fn even_sum_pieces(orders: &[usize], even_first: bool) -> Vec<Piece> {
    let mut sorted = orders.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut pending = None;
    let mut even_done = !even_first;
    for n in sorted {
        if n % 2 == 0 {
            if !even_done && n >= 4 {
                out.push(Piece::Even(n));
                even_done = true;
            } else {
                out.push(Piece::Odd(n));
            }
        } else if let Some(q) = pending.take() {
            out.push(Piece::TwoOdd(n, q));
        } else {
            pending = Some(n);
        }
    }
    debug_assert!(pending.is_none(), "odd orders pair up");
    out
}

/// Assembles lines (bottom to top) and vertical slit pairs `(x, level)`
/// joining `level` to `level + 1` at `x` and `x + 1` with swapped sides.
fn assemble(width: usize, lines: Vec<Line>, vpairs: &[(i64, usize)]) -> SlitTorusDiagram {
    let mut diag = SlitTorusDiagram::empty(width);
    diag.levels = lines.len().max(1);
    for (level, line) in lines.into_iter().enumerate() {
        let base = diag.hslits.len();
        for (x0, x1) in line.slits {
            diag.hslits.push(HSlit { level, x0, x1 });
        }
        for (i, j) in line.glue {
            diag.gluing.push((Side::Bottom(base + i), Side::Top(base + j)));
        }
    }
    for &(x, level) in vpairs {
        let a = diag.vslits.len();
        diag.vslits.push(VSlit { x: int(x), from: level, to: level + 1 });
        diag.vslits.push(VSlit { x: int(x + 1), from: level, to: level + 1 });
        diag.gluing.push((Side::Left(a), Side::Right(a + 1)));
        diag.gluing.push((Side::Left(a + 1), Side::Right(a)));
    }
    diag
}

fn need_width(needed: usize, d: usize) -> Result<(), BuildError> {
    if d < needed {
        Err(BuildError::WidthTooSmall { needed, d })
    } else {
        Ok(())
    }
}

/// `max_i Σ_{j ∈ A_i} (n_j + 1)`, the width the widest class needs.
pub fn class_width(stratum: &Stratum, classes: &[Vec<usize>]) -> usize {
    class_orders(stratum, classes).iter().map(|c| c.iter().map(|n| n + 1).sum()).max().unwrap_or(0)
}

fn require_label(stratum: &Stratum, tag: ComponentTag) -> Result<(), BuildError> {
    if kz_components(stratum).contains(&tag) {
        Ok(())
    } else {
        Err(BuildError::NoSuchComponent { stratum: stratum.to_string(), label: tag.short().to_string() })
    }
}

pub fn hyp_minimal_diagram(g: usize, d: usize) -> Result<SlitTorusDiagram, BuildError> {
    if g < 2 {
        return Err(BuildError::WrongGenus(g));
    }
    need_width(2 * g - 1, d)?;
    let mut line = Line::default();
    hyp_minimal_pattern(&mut line, 0, g);
    Ok(assemble(d, vec![line], &[]))
}

/// `H^hyp(2g-2)` with absolute periods `Z + iZ` and volume `d ≥ 2g - 1`.
pub fn build_hyp_minimal(g: usize, d: usize) -> Result<GridSurface, BuildError> {
    compile_diagram(&hyp_minimal_diagram(g, d)?)
}

/// Half-length slits: zeros over distinct base points, `d ≥ g`.
pub fn hyp_double_diagram(g: usize, d: usize) -> Result<SlitTorusDiagram, BuildError> {
    if g < 2 {
        return Err(BuildError::WrongGenus(g));
    }
    need_width(g, d)?;
    let mut line = Line::default();
    hyp_double_pattern(&mut line, 0, g, true);
    Ok(assemble(d, vec![line], &[]))
}

/// The square-tiled surface with `r = (1 .. 2g-1)` and `u` reversing
/// `1 .. 2g-2` and cycling `2g-1 .. d`. Both zeros lie over one point.
pub fn hyp_double_same_class_origami(g: usize, d: usize) -> Result<GridSurface, BuildError> {
    if g < 2 {
        return Err(BuildError::WrongGenus(g));
    }
    need_width(2 * g, d)?;
    let r = Perm::cycle_prefix(d, 2 * g - 1);
    // 0-based: u(i) = 2g-3-i on 0..2g-3, then the tail cycle 2g-2 .. d-1
    let t = 2 * g - 2;
    let up: Vec<usize> = (0..d)
        .map(|i| {
            if i < t {
                t - 1 - i
            } else if i + 1 < d {
                i + 1
            } else {
                t
            }
        })
        .collect();
    let u = Perm::from_images(up).expect("u is a permutation");
    Ok(GridSurface::origami(r, u)?)
}

/// `H^hyp(g-1, g-1)`; `same_class` puts both zeros over one base point.
pub fn build_hyp_double(g: usize, d: usize, same_class: bool) -> Result<GridSurface, BuildError> {
    if same_class {
        hyp_double_same_class_origami(g, d)
    } else {
        compile_diagram(&hyp_double_diagram(g, d)?)
    }
}

/// One line per class, each zero with its odd-spin pattern.
pub fn odd_diagram(stratum: &Stratum, classes: &[Vec<usize>], d: usize) -> Result<SlitTorusDiagram, BuildError> {
    validate_classes(stratum, classes)?;
    require_label(stratum, ComponentTag::SpinOdd)?;
    need_width(class_width(stratum, classes), d)?;
    let lines = class_orders(stratum, classes)
        .iter()
        .map(|orders| {
            let mut line = Line::default();
            lay_out(&mut line, &even_sum_pieces(orders, false));
            line
        })
        .collect();
    Ok(assemble(d, lines, &[]))
}

pub fn build_odd(stratum: &Stratum, classes: &[Vec<usize>], d: usize) -> Result<GridSurface, BuildError> {
    compile_diagram(&odd_diagram(stratum, classes, d)?)
}

/// Even spin. For `H(2, .., 2)` the two-run hyperelliptic pattern of genus
/// three creates two of the zeros; otherwise the largest zero gets the
/// even pattern. `H(4)` and `H(2,2)` come out hyperelliptic, which is their
/// even-spin component.
pub fn even_diagram(stratum: &Stratum, classes: &[Vec<usize>], d: usize) -> Result<SlitTorusDiagram, BuildError> {
    validate_classes(stratum, classes)?;
    if !stratum.all_even() || stratum.genus() < 3 {
        return Err(BuildError::NoSuchComponent { stratum: stratum.to_string(), label: "even".into() });
    }
    let orders = class_orders(stratum, classes);
    let needed = class_width(stratum, classes);
    if stratum.orders().iter().any(|&n| n >= 4) {
        need_width(needed, d)?;
        let big = orders.iter().position(|c| c.iter().any(|&n| n >= 4)).unwrap();
        let lines = orders
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut line = Line::default();
                lay_out(&mut line, &even_sum_pieces(c, i == big));
                line
            })
            .collect();
        return Ok(assemble(d, lines, &[]));
    }
    // all zeros of order two
    let mut lines = Vec::new();
    match orders.iter().position(|c| c.len() >= 2) {
        None => {
            need_width(needed, d)?;
            let mut first = Line::default();
            hyp_double_pattern(&mut first, 0, 3, true);
            lines.push(first);
            for _ in 2..orders.len() {
                let mut line = Line::default();
                odd_pattern(&mut line, 0, 2);
                lines.push(line);
            }
        }
        Some(big) => {
            need_width(needed.max(6), d)?;
            for (i, c) in orders.iter().enumerate() {
                let mut line = Line::default();
                let mut cursor = 0;
                let mut rest = c.len();
                if i == big {
                    hyp_double_pattern(&mut line, 0, 3, false);
                    cursor = 6;
                    rest -= 2;
                }
                for _ in 0..rest {
                    cursor = odd_pattern(&mut line, cursor, 2) + 1;
                }
                lines.push(line);
            }
        }
    }
    Ok(assemble(d, lines, &[]))
}

pub fn build_even(stratum: &Stratum, classes: &[Vec<usize>], d: usize) -> Result<GridSurface, BuildError> {
    compile_diagram(&even_diagram(stratum, classes, d)?)
}

/// The general construction. Classes with an even sum of orders pair their
/// odd zeros; classes of four or more simple zeros use the exceptional
/// pattern. Classes with an odd sum are paired in order: each gives up one
/// unit of its smallest odd zero, whose pattern is laid last on the line,
/// and two swapped vertical slits between the two lines restore it.
pub fn general_diagram(stratum: &Stratum, classes: &[Vec<usize>], d: usize) -> Result<SlitTorusDiagram, BuildError> {
    validate_classes(stratum, classes)?;
    if stratum.genus() < 2 {
        return Err(BuildError::WrongGenus(stratum.genus()));
    }
    need_width(class_width(stratum, classes).max(2), d)?;
    let orders = class_orders(stratum, classes);
    let mut lines = Vec::new();
    let mut vpairs = Vec::new();

    // Pairs of simple zeros on even lines have only even horizontal
    // periods; when every class is such a pair, two classes at a time are
    // made of marked points joined by two vertical slit pairs instead.
    let all_simple_pairs = orders.len() >= 2 && orders.iter().all(|c| c == &[1, 1]);
    let mut rest: &[Vec<usize>] = &orders;
    if all_simple_pairs {
        for _ in 0..orders.len() / 2 {
            let level = lines.len();
            lines.push(Line::default());
            lines.push(Line::default());
            vpairs.push((0, level));
            vpairs.push((2, level));
        }
        rest = &orders[2 * (orders.len() / 2)..];
    }

    let mut odd_lines = Vec::new();
    for c in rest {
        let sum: usize = c.iter().sum();
        let mut line = Line::default();
        if sum % 2 == 0 {
            let pieces = if c.len() >= 4 && c.iter().all(|&n| n == 1) {
                let mut p = vec![Piece::Exceptional];
                p.extend(std::iter::repeat(Piece::TwoOdd(1, 1)).take((c.len() - 4) / 2));
                p
            } else {
                even_sum_pieces(c, false)
            };
            lay_out(&mut line, &pieces);
            lines.push(line);
        } else {
            let mut sorted = c.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let at = sorted.iter().rposition(|&n| n % 2 == 1).unwrap();
            let n = sorted.remove(at);
            let mut pieces = even_sum_pieces(&sorted, false);
            pieces.push(if n == 1 { Piece::Point } else { Piece::Odd(n - 1) });
            let end = lay_out(&mut line, &pieces);
            odd_lines.push((line, end));
        }
    }
    for pair in odd_lines.chunks(2) {
        let [(a, ea), (b, eb)] = pair else { unreachable!("odd-sum classes come in pairs") };
        let (mut a, mut b) = (a.clone(), b.clone());
        let x = (*ea).max(*eb);
        a.shift(x - ea);
        b.shift(x - eb);
        vpairs.push((x, lines.len()));
        lines.push(a);
        lines.push(b);
    }
    Ok(assemble(d, lines, &vpairs))
}

pub fn build_general(stratum: &Stratum, classes: &[Vec<usize>], d: usize) -> Result<GridSurface, BuildError> {
    compile_diagram(&general_diagram(stratum, classes, d)?)
}
