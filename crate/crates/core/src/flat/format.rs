//! Origami text and JSON formats.
//!
//! ```text
//! n=3 sx=1 sy=1
//! r=2 3 1
//! u=2 1 3
//! marks=1:2
//! ```
//!
//! Cell indices are 1-based on disk. A mark `v:o` names the vertex at the
//! bottom-left corner of cell `v` (the smallest such cell) and its order.
//! The writer always emits `marks=` when the surface has zeros, so
//! `write(parse(text)) == text` for every text the writer produces.

use std::fmt::Write as _;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FlatError, GridSurface, ZeroMark};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseOrigamiError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] FlatError),
    #[error("bad json: {0}")]
    Json(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseOrigamiError {
    ParseOrigamiError::Syntax { line, msg: msg.into() }
}

pub(crate) fn parse_rational(s: &str) -> Option<Rational64> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational64::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rational64::from_integer(s.parse().ok()?)),
    }
}

fn images(line: usize, s: &str, n: usize) -> Result<Vec<usize>, ParseOrigamiError> {
    let v = s
        .split_whitespace()
        .map(|t| match t.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(syntax(line, format!("bad cell index {t:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(ParseOrigamiError::Invalid(FlatError::BadPermutation(n)));
    }
    Ok(v)
}

fn marks_string(marks: &[ZeroMark]) -> String {
    marks.iter().map(|m| format!("{}:{}", m.cell + 1, m.order)).collect::<Vec<_>>().join(",")
}

impl GridSurface {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let list = |p: &crate::perm::Perm| {
            p.images().iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
        };
        writeln!(out, "n={} sx={} sy={}", self.n_cells(), self.scale_x(), self.scale_y()).unwrap();
        writeln!(out, "r={}", list(self.right())).unwrap();
        writeln!(out, "u={}", list(self.up())).unwrap();
        if !self.zeros().is_empty() {
            writeln!(out, "marks={}", marks_string(self.zeros())).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ParseOrigamiError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.len() < 3 || lines.len() > 4 {
            return Err(syntax(lines.len(), "expected 3 or 4 lines"));
        }
        let (l1, head) = lines[0];
        let (mut n, mut sx, mut sy) = (None, None, None);
        for tok in head.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| syntax(l1, format!("expected key=value, got {tok:?}")))?;
            match k {
                "n" => n = Some(v.parse::<usize>().map_err(|_| syntax(l1, "bad n"))?),
                "sx" => sx = Some(parse_rational(v).ok_or_else(|| syntax(l1, "bad sx"))?),
                "sy" => sy = Some(parse_rational(v).ok_or_else(|| syntax(l1, "bad sy"))?),
                _ => return Err(syntax(l1, format!("unknown key {k:?}"))),
            }
        }
        let n = n.ok_or_else(|| syntax(l1, "missing n"))?;
        let sx = sx.ok_or_else(|| syntax(l1, "missing sx"))?;
        let sy = sy.ok_or_else(|| syntax(l1, "missing sy"))?;
        let field = |(ln, l): (usize, &str), key: &str| -> Result<String, ParseOrigamiError> {
            l.strip_prefix(key)
                .and_then(|x| x.strip_prefix('='))
                .map(str::to_string)
                .ok_or_else(|| syntax(ln, format!("expected {key}=")))
        };
        let r = images(lines[1].0, &field(lines[1], "r")?, n)?;
        let u = images(lines[2].0, &field(lines[2], "u")?, n)?;
        let s = GridSurface::new(r, u, sx, sy)?;
        if let Some(&ml) = lines.get(3) {
            let declared = field(ml, "marks")?;
            let computed = marks_string(s.zeros());
            if declared.replace(' ', "") != computed {
                return Err(FlatError::MarksMismatch { declared, computed }.into());
            }
        }
        Ok(s)
    }

    pub fn to_json(&self) -> OrigamiJson {
        OrigamiJson {
            n: self.n_cells(),
            sx: self.scale_x().to_string(),
            sy: self.scale_y().to_string(),
            r: self.right().images().iter().map(|i| i + 1).collect(),
            u: self.up().images().iter().map(|i| i + 1).collect(),
            marks: self.zeros().iter().map(|m| [m.cell + 1, m.order]).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain data serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self, ParseOrigamiError> {
        let j: OrigamiJson = serde_json::from_str(text).map_err(|e| ParseOrigamiError::Json(e.to_string()))?;
        j.into_surface()
    }
}

/// JSON mirror of the text format, with the same 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrigamiJson {
    pub n: usize,
    pub sx: String,
    pub sy: String,
    pub r: Vec<usize>,
    pub u: Vec<usize>,
    #[serde(default)]
    pub marks: Vec<[usize; 2]>,
}

impl OrigamiJson {
    pub fn into_surface(self) -> Result<GridSurface, ParseOrigamiError> {
        let bad = |k: &str| ParseOrigamiError::Json(format!("bad {k}"));
        let sx = parse_rational(&self.sx).ok_or_else(|| bad("sx"))?;
        let sy = parse_rational(&self.sy).ok_or_else(|| bad("sy"))?;
        let shift = |v: &[usize]| -> Result<Vec<usize>, ParseOrigamiError> {
            if v.len() != self.n {
                return Err(FlatError::BadPermutation(self.n).into());
            }
            v.iter().map(|&i| i.checked_sub(1).ok_or_else(|| bad("cell index"))).collect()
        };
        let s = GridSurface::new(shift(&self.r)?, shift(&self.u)?, sx, sy)?;
        let computed: Vec<[usize; 2]> = s.zeros().iter().map(|m| [m.cell + 1, m.order]).collect();
        if !self.marks.is_empty() && self.marks != computed {
            return Err(FlatError::MarksMismatch {
                declared: format!("{:?}", self.marks),
                computed: format!("{computed:?}"),
            }
            .into());
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const THREE: &str = "n=3 sx=1 sy=1\nr=2 3 1\nu=2 1 3\nmarks=1:2\n";

    #[test]
    fn text_round_trip() {
        let s = GridSurface::from_text(THREE).unwrap();
        assert_eq!(s.to_text(), THREE);
        assert_eq!(s.stratum().orders(), &[2]);
    }

    #[test]
    fn json_round_trip() {
        let s = GridSurface::from_text(THREE).unwrap();
        let j = s.to_json_string();
        assert_eq!(j, r#"{"n":3,"sx":"1","sy":"1","r":[2,3,1],"u":[2,1,3],"marks":[[1,2]]}"#);
        assert_eq!(GridSurface::from_json_str(&j).unwrap(), s);
    }

    #[test]
    fn refined_scales_print_as_fractions() {
        let s = GridSurface::from_text(THREE).unwrap().refine(2, 1);
        let t = s.to_text();
        assert!(t.starts_with("n=6 sx=1/2 sy=1\n"));
        assert_eq!(GridSurface::from_text(&t).unwrap().to_text(), t);
    }

    #[test]
    fn wrong_marks_rejected() {
        let bad = THREE.replace("1:2", "2:2");
        assert!(matches!(
            GridSurface::from_text(&bad),
            Err(ParseOrigamiError::Invalid(FlatError::MarksMismatch { .. }))
        ));
        assert!(GridSurface::from_text("n=2 sx=1 sy=1\nr=2 1\nu=1\n").is_err());
    }
}
