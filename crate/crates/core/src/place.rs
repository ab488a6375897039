use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::is_prime;
use crate::error::Error;

/// A place of Q: a prime or the real place.
///
/// Finite places order before the infinite one, so sorted place sets read
/// `2, 3, 7, inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl Place {
    /// Checked constructor for a finite place.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::pre(format!("{p} is not prime")))
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Place::Finite(_))
    }

    pub fn as_prime(self) -> Option<u64> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinite => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "oo" | "∞" | "infinity" => Ok(Place::Infinite),
            t => {
                let p: u64 = t
                    .parse()
                    .map_err(|_| Error::schema(format!("not a place: {t:?}")))?;
                Place::prime(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Place::Finite(p) => s.serialize_u64(*p),
            Place::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let parsed = match &v {
            serde_json::Value::Number(n) => n
                .as_u64()
                .ok_or_else(|| Error::schema("place must be a positive integer"))
                .and_then(Place::prime),
            serde_json::Value::String(s) => s.parse(),
            _ => Err(Error::schema("place must be a prime or \"inf\"")),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}
