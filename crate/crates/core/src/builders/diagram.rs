//! Slit diagrams on the standard torus of length `d` and their compilation
//! to grid surfaces.
//!
//! A diagram has `levels` horizontal lines at heights `t / levels`. Slit
//! endpoints have abscissae in `½Z`. Horizontal slits are cut at a level;
//! vertical slits run from one level up to a higher one. Gluing a bottom
//! side to a top side means that crossing the first slit upwards comes out
//! above the second. Likewise crossing a left side rightwards comes out to
//! the right of the paired slit.

use std::collections::HashSet;
use std::fmt;

use num_rational::Rational64;

use super::BuildError;
use crate::flat::format::parse_rational;
use crate::flat::GridSurface;

/// Horizontal slit `[x0, x1] × {level}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSlit {
    pub level: usize,
    pub x0: Rational64,
    pub x1: Rational64,
}

/// Vertical slit `{x} × [from, to]`, in levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSlit {
    pub x: Rational64,
    pub from: usize,
    pub to: usize,
}

/// One side of a slit, by index into the diagram's slit lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Bottom(usize),
    Top(usize),
    Left(usize),
    Right(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlitTorusDiagram {
    pub width: usize,
    pub levels: usize,
    pub hslits: Vec<HSlit>,
    pub vslits: Vec<VSlit>,
    pub gluing: Vec<(Side, Side)>,
}

impl SlitTorusDiagram {
    /// The unslit standard torus of length `width` with one line.
    pub fn empty(width: usize) -> Self {
        SlitTorusDiagram { width, levels: 1, hslits: Vec::new(), vslits: Vec::new(), gluing: Vec::new() }
    }

    pub fn needs_half_grid(&self) -> bool {
        let half = |x: &Rational64| !x.is_integer();
        self.hslits.iter().any(|s| half(&s.x0) || half(&s.x1)) || self.vslits.iter().any(|v| half(&v.x))
    }
}

fn grid_coord(x: Rational64, kx: i64) -> Result<i64, BuildError> {
    let v = x * Rational64::from_integer(kx);
    if !v.is_integer() {
        return Err(BuildError::BadDiagram(format!("abscissa {x} is not in ½Z")));
    }
    Ok(v.to_integer())
}

/// Grid surface of a diagram: cells of size `1/kx × 1/levels`, `kx = 2`
/// exactly when some endpoint is a half-integer.
pub fn compile_diagram(diag: &SlitTorusDiagram) -> Result<GridSurface, BuildError> {
    if diag.width == 0 || diag.levels == 0 {
        return Err(BuildError::BadDiagram("width and number of levels must be positive".into()));
    }
    let kx: i64 = if diag.needs_half_grid() { 2 } else { 1 };
    let w = diag.width as i64 * kx;
    let h = diag.levels as i64;
    let cell = |i: i64, j: i64| (j.rem_euclid(h) * w + i.rem_euclid(w)) as usize;
    let n = (w * h) as usize;
    let mut right: Vec<usize> = (0..n as i64).map(|c| cell(c % w + 1, c / w)).collect();
    let mut up: Vec<usize> = (0..n as i64).map(|c| cell(c % w, c / w + 1)).collect();

    // Cells on either side of each slit, in slit order.
    let mut h_edges = HashSet::new();
    let mut h_sides = Vec::new();
    for (k, s) in diag.hslits.iter().enumerate() {
        let (c0, c1) = (grid_coord(s.x0, kx)?, grid_coord(s.x1, kx)?);
        if s.level >= diag.levels || c0 < 0 || c0 >= w || c1 <= c0 || c1 - c0 > w {
            return Err(BuildError::BadDiagram(format!("horizontal slit h{} out of range", k + 1)));
        }
        let t = s.level as i64;
        let mut below = Vec::new();
        let mut above = Vec::new();
        for c in c0..c1 {
            if !h_edges.insert((c.rem_euclid(w), t)) {
                return Err(BuildError::OverlappingSlits(format!("h{} at x = {}", k + 1, Rational64::new(c, kx))));
            }
            below.push(cell(c, t - 1));
            above.push(cell(c, t));
        }
        h_sides.push((below, above));
    }
    let mut v_edges = HashSet::new();
    let mut v_sides = Vec::new();
    for (k, v) in diag.vslits.iter().enumerate() {
        let c = grid_coord(v.x, kx)?;
        if c < 0 || c >= w || v.from >= v.to || v.to > diag.levels {
            return Err(BuildError::BadDiagram(format!("vertical slit v{} out of range", k + 1)));
        }
        let mut left = Vec::new();
        let mut rgt = Vec::new();
        for row in v.from as i64..v.to as i64 {
            if !v_edges.insert((c, row)) {
                return Err(BuildError::OverlappingSlits(format!("v{} at row {row}", k + 1)));
            }
            left.push(cell(c - 1, row));
            rgt.push(cell(c, row));
        }
        v_sides.push((left, rgt));
    }

    let mut used = HashSet::new();
    for &(p, q) in &diag.gluing {
        for side in [p, q] {
            if !used.insert(side) {
                return Err(BuildError::UnmatchedSides(format!("{side} is glued twice")));
            }
        }
        let get = |side: Side| -> Result<&Vec<usize>, BuildError> {
            let missing = || BuildError::UnmatchedSides(format!("{side} names no slit"));
            match side {
                Side::Bottom(i) => h_sides.get(i).map(|s| &s.0).ok_or_else(missing),
                Side::Top(i) => h_sides.get(i).map(|s| &s.1).ok_or_else(missing),
                Side::Left(i) => v_sides.get(i).map(|s| &s.0).ok_or_else(missing),
                Side::Right(i) => v_sides.get(i).map(|s| &s.1).ok_or_else(missing),
            }
        };
        let (from, to, horizontal) = match (p, q) {
            (Side::Bottom(_), Side::Top(_)) | (Side::Left(_), Side::Right(_)) => (get(p)?, get(q)?, p.is_horizontal()),
            (Side::Top(_), Side::Bottom(_)) | (Side::Right(_), Side::Left(_)) => (get(q)?, get(p)?, p.is_horizontal()),
            _ => return Err(BuildError::UnmatchedSides(format!("{p} cannot be glued to {q}"))),
        };
        if from.len() != to.len() {
            return Err(BuildError::UnmatchedSides(format!("{p} and {q} have different lengths")));
        }
        let map = if horizontal { &mut up } else { &mut right };
        for (&a, &b) in from.iter().zip(to) {
            map[a] = b;
        }
    }
    let all_sides = (0..h_sides.len())
        .flat_map(|i| [Side::Bottom(i), Side::Top(i)])
        .chain((0..v_sides.len()).flat_map(|i| [Side::Left(i), Side::Right(i)]));
    for side in all_sides {
        if !used.contains(&side) {
            return Err(BuildError::UnmatchedSides(format!("{side} is not glued")));
        }
    }
    let sx = Rational64::new(1, kx);
    let sy = Rational64::new(1, h);
    Ok(GridSurface::new(right, up, sx, sy)?)
}

impl Side {
    fn is_horizontal(self) -> bool {
        matches!(self, Side::Bottom(_) | Side::Top(_))
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Side::Bottom(i) => write!(f, "h{}.bot", i + 1),
            Side::Top(i) => write!(f, "h{}.top", i + 1),
            Side::Left(i) => write!(f, "v{}.left", i + 1),
            Side::Right(i) => write!(f, "v{}.right", i + 1),
        }
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("bad side id {s:?}");
        let (slit, side) = s.split_once('.').ok_or_else(bad)?;
        let idx = |t: &str| t.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1).ok_or_else(bad);
        match (slit.strip_prefix('h'), slit.strip_prefix('v'), side) {
            (Some(i), _, "bot") => Ok(Side::Bottom(idx(i)?)),
            (Some(i), _, "top") => Ok(Side::Top(idx(i)?)),
            (_, Some(i), "left") => Ok(Side::Left(idx(i)?)),
            (_, Some(i), "right") => Ok(Side::Right(idx(i)?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SlitTorusDiagram {
    /// Text form: `d=`, one `line` per level, `vslit`s, then `glue` pairs.
    /// Slits are numbered `h1, h2, ..` and `v1, v2, ..` in order of
    /// appearance, which is level order for horizontal slits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d={}", self.width)?;
        let mut order: Vec<usize> = (0..self.hslits.len()).collect();
        order.sort_by_key(|&i| self.hslits[i].level);
        let renumber: Vec<usize> = {
            let mut r = vec![0; order.len()];
            for (new, &old) in order.iter().enumerate() {
                r[old] = new;
            }
            r
        };
        for level in 0..self.levels {
            write!(f, "line {level}:")?;
            for &i in order.iter().filter(|&&i| self.hslits[i].level == level) {
                write!(f, " slit {}-{}", self.hslits[i].x0, self.hslits[i].x1)?;
            }
            writeln!(f)?;
        }
        for v in &self.vslits {
            writeln!(f, "vslit {} {}-{}", v.x, v.from, v.to)?;
        }
        let fix = |s: Side| match s {
            Side::Bottom(i) => Side::Bottom(renumber[i]),
            Side::Top(i) => Side::Top(renumber[i]),
            other => other,
        };
        for &(p, q) in &self.gluing {
            writeln!(f, "glue {} {}", fix(p), fix(q))?;
        }
        Ok(())
    }
}

impl SlitTorusDiagram {
    pub fn from_text(text: &str) -> Result<Self, BuildError> {
        let syntax = |line: usize, msg: String| BuildError::Syntax { line, msg };
        let mut width = None;
        let mut levels = 0;
        let mut hslits = Vec::new();
        let mut vslits = Vec::new();
        let mut gluing = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let l = raw.split('#').next().unwrap().trim();
            if l.is_empty() {
                continue;
            }
            let rat = |t: &str| parse_rational(t).ok_or_else(|| syntax(line, format!("bad number {t:?}")));
            if let Some(d) = l.strip_prefix("d=") {
                width = Some(d.trim().parse::<usize>().map_err(|e| syntax(line, e.to_string()))?);
            } else if let Some(rest) = l.strip_prefix("line") {
                let (lvl, slits) = rest.split_once(':').ok_or_else(|| syntax(line, "missing ':'".into()))?;
                let lvl: usize = lvl.trim().parse().map_err(|_| syntax(line, format!("bad level {lvl:?}")))?;
                if lvl != levels {
                    return Err(syntax(line, format!("expected line {levels}, found line {lvl}")));
                }
                levels += 1;
                let toks: Vec<&str> = slits.split_whitespace().collect();
                for pair in toks.chunks(2) {
                    match pair {
                        ["slit", range] => {
                            let (a, b) = range.split_once('-').ok_or_else(|| syntax(line, format!("bad range {range:?}")))?;
                            hslits.push(HSlit { level: lvl, x0: rat(a)?, x1: rat(b)? });
                        }
                        _ => return Err(syntax(line, format!("expected 'slit x0-x1', found {pair:?}"))),
                    }
                }
            } else if let Some(rest) = l.strip_prefix("vslit") {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [x, range] = toks[..] else {
                    return Err(syntax(line, "expected 'vslit x l1-l2'".into()));
                };
                let (a, b) = range.split_once('-').ok_or_else(|| syntax(line, format!("bad range {range:?}")))?;
                let lv = |t: &str| t.parse::<usize>().map_err(|_| syntax(line, format!("bad level {t:?}")));
                vslits.push(VSlit { x: rat(x)?, from: lv(a)?, to: lv(b)? });
            } else if let Some(rest) = l.strip_prefix("glue") {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [p, q] = toks[..] else {
                    return Err(syntax(line, "expected 'glue side side'".into()));
                };
                gluing.push((p.parse().map_err(|e| syntax(line, e))?, q.parse().map_err(|e| syntax(line, e))?));
            } else {
                return Err(syntax(line, format!("unknown directive {l:?}")));
            }
        }
        let width = width.ok_or_else(|| syntax(1, "missing d=".into()))?;
        Ok(SlitTorusDiagram { width, levels: levels.max(1), hslits, vslits, gluing })
    }
}

pub(crate) fn half(n: i64) -> Rational64 {
    Rational64::new(n, 2)
}

pub(crate) fn int(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}
