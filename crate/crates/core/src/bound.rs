//! Extended integer values for ends and regularities: `-inf` for the zero
//! module, `+inf` for infinite regularity, and `>= k` for values only bounded
//! below within a finite horizon.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    At(i64),
    AtLeast(i64),
    PosInf,
}

impl Bound {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Bound::AtLeast(_))
    }

    pub fn value(&self) -> Option<i64> {
        match self {
            Bound::At(v) => Some(*v),
            _ => None,
        }
    }

    /// `-inf + c = -inf`, `+inf + c = +inf`.
    pub fn plus(self, c: i64) -> Bound {
        match self {
            Bound::At(v) => Bound::At(v + c),
            Bound::AtLeast(v) => Bound::AtLeast(v + c),
            other => other,
        }
    }

    fn rank(&self) -> (i8, i64) {
        match self {
            Bound::NegInf => (-1, 0),
            Bound::At(v) | Bound::AtLeast(v) => (0, *v),
            Bound::PosInf => (1, 0),
        }
    }

    /// Ordering of exact values; `None` when either side is only a lower bound.
    pub fn cmp_exact(&self, other: &Bound) -> Option<Ordering> {
        if !self.is_exact() || !other.is_exact() {
            return None;
        }
        Some(self.rank().cmp(&other.rank()))
    }

    /// Maximum of exact values; a lower bound on either side gives a lower bound.
    pub fn max(self, other: Bound) -> Bound {
        let exact = self.is_exact() && other.is_exact();
        let winner = if self.rank() >= other.rank() { self } else { other };
        match (exact, winner) {
            (true, w) => w,
            (false, Bound::At(v)) => Bound::AtLeast(v),
            (false, w) => w,
        }
    }

    pub fn from_max(values: impl IntoIterator<Item = i64>) -> Bound {
        values.into_iter().max().map_or(Bound::NegInf, Bound::At)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::At(v) => write!(f, "{v}"),
            Bound::AtLeast(v) => write!(f, ">={v}"),
            Bound::PosInf => write!(f, "+inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::At(v) => s.serialize_i64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Bound::At(v)),
            Repr::Text(s) => match s.as_str() {
                "-inf" => Ok(Bound::NegInf),
                "+inf" => Ok(Bound::PosInf),
                t => t
                    .strip_prefix(">=")
                    .and_then(|v| v.parse().ok())
                    .map(Bound::AtLeast)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad bound `{t}`"))),
            },
        }
    }
}
