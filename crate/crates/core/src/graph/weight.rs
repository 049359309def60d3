use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A positive integer weight or the uncuttable sentinel.
///
/// `Inf` is not a large number: cut routines never select an `Inf` element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    Finite(u64),
    Inf,
}

impl Weight {
    pub fn is_inf(self) -> bool {
        matches!(self, Weight::Inf)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Inf => None,
        }
    }
}

impl From<u64> for Weight {
    fn from(w: u64) -> Self {
        Weight::Finite(w)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Inf => f.write_str("INF"),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Weight::Finite(w) => s.serialize_u64(*w),
            Weight::Inf => s.serialize_str("INF"),
        }
    }
}

struct WeightVisitor;

impl<'de> Visitor<'de> for WeightVisitor {
    type Value = Weight;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a positive integer or \"INF\"")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Weight, E> {
        Ok(Weight::Finite(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Weight, E> {
        u64::try_from(v)
            .map(Weight::Finite)
            .map_err(|_| E::custom(format!("negative weight {v}")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Weight, E> {
        if v == "INF" {
            Ok(Weight::Inf)
        } else {
            Err(E::custom(format!("unknown weight token {v:?}")))
        }
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Weight, D::Error> {
        d.deserialize_any(WeightVisitor)
    }
}
