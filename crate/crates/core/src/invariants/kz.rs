//! The Kontsevich–Zorich table of connected components.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::flat::Stratum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentTag {
    Hyperelliptic,
    SpinEven,
    SpinOdd,
    NonHyperelliptic,
    Connected,
}

impl ComponentTag {
    pub const ALL: [ComponentTag; 5] = [
        ComponentTag::Hyperelliptic,
        ComponentTag::SpinEven,
        ComponentTag::SpinOdd,
        ComponentTag::NonHyperelliptic,
        ComponentTag::Connected,
    ];

    pub fn short(self) -> &'static str {
        match self {
            ComponentTag::Hyperelliptic => "hyp",
            ComponentTag::SpinEven => "even",
            ComponentTag::SpinOdd => "odd",
            ComponentTag::NonHyperelliptic => "nonhyp",
            ComponentTag::Connected => "conn",
        }
    }
}

impl fmt::Display for ComponentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short())
    }
}

impl FromStr for ComponentTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "hyp" | "hyperelliptic" => ComponentTag::Hyperelliptic,
            "even" | "spineven" => ComponentTag::SpinEven,
            "odd" | "spinodd" => ComponentTag::SpinOdd,
            "nonhyp" | "nonhyperelliptic" => ComponentTag::NonHyperelliptic,
            "conn" | "connected" => ComponentTag::Connected,
            _ => return Err(format!("unknown component label {s:?} (hyp, even, odd, nonhyp, conn)")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentLabel {
    pub stratum: Stratum,
    pub tag: ComponentTag,
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.stratum, self.tag)
    }
}

/// Components of a stratum, in the order hyp, even, odd, nonhyp, conn.
///
/// Low genus coincidences: `H(2)` and `H(1,1)` are connected, and in `H(4)`
/// and `H(2,2)` the even spin component is the hyperelliptic one, so only
/// `hyp` and `odd` are listed.
pub fn kz_components(stratum: &Stratum) -> Vec<ComponentTag> {
    use ComponentTag::*;
    let g = stratum.genus();
    if g <= 2 {
        return vec![Connected];
    }
    let o = stratum.orders();
    if stratum.is_minimal() {
        return if g == 3 { vec![Hyperelliptic, SpinOdd] } else { vec![Hyperelliptic, SpinEven, SpinOdd] };
    }
    if stratum.is_double() {
        return match (g, o[0] % 2) {
            (3, _) => vec![Hyperelliptic, SpinOdd],
            (_, 0) => vec![Hyperelliptic, SpinEven, SpinOdd],
            _ => vec![Hyperelliptic, NonHyperelliptic],
        };
    }
    if stratum.all_even() {
        return vec![SpinEven, SpinOdd];
    }
    vec![Connected]
}

#[cfg(test)]
mod tests {
    use super::*;
    use ComponentTag::*;

    fn kz(s: &str) -> Vec<ComponentTag> {
        kz_components(&s.parse().unwrap())
    }

    #[test]
    fn table() {
        assert_eq!(kz("H(2)"), vec![Connected]);
        assert_eq!(kz("H(1,1)"), vec![Connected]);
        assert_eq!(kz("H(4)"), vec![Hyperelliptic, SpinOdd]);
        assert_eq!(kz("H(2,2)"), vec![Hyperelliptic, SpinOdd]);
        assert_eq!(kz("H(3,1)"), vec![Connected]);
        assert_eq!(kz("H(6)"), vec![Hyperelliptic, SpinEven, SpinOdd]);
        assert_eq!(kz("H(3,3)"), vec![Hyperelliptic, NonHyperelliptic]);
        assert_eq!(kz("H(4,4)"), vec![Hyperelliptic, SpinEven, SpinOdd]);
        assert_eq!(kz("H(2,2,2)"), vec![SpinEven, SpinOdd]);
        assert_eq!(kz("H(5,3)"), vec![Connected]);
    }

    #[test]
    fn short_names_round_trip() {
        for t in ComponentTag::ALL {
            assert_eq!(t.short().parse::<ComponentTag>().unwrap(), t);
        }
    }
}
