//! Exponents `p ∈ (0, ∞]` of the `ℓ_p` (quasi-)norms.
//!
//! Infinity is a distinct variant rather than a large float, so `1/p` is
//! exactly zero for the sup-norm and `Γ(1 + 1/p)` is exactly one.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub const INF: Exponent = Exponent::Infinity;

    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p <= 0.0 {
            return Err(Error::Domain(format!("exponent must be positive, got {p}")));
        }
        if p.is_infinite() {
            Ok(Exponent::Infinity)
        } else {
            Ok(Exponent::Finite(p))
        }
    }

    /// `1/p`, zero for `p = ∞`.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    /// `p̄ = min(1, p)`: the exponent for which `‖·‖_p` is a `p̄`-norm.
    pub fn bar(self) -> f64 {
        match self {
            Exponent::Finite(p) => p.min(1.0),
            Exponent::Infinity => 1.0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.as_f64().partial_cmp(&other.as_f64())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "Inf" | "INF" | "infinity" | "∞") {
            return Ok(Exponent::Infinity);
        }
        let p: f64 = s
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse exponent {s:?}")))?;
        if p.is_infinite() {
            return Err(Error::Domain("write the infinite exponent as \"inf\"".into()));
        }
        Exponent::new(p)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => s.serialize_f64(*p),
            Exponent::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct ExpVisitor;

        impl Visitor<'_> for ExpVisitor {
            type Value = Exponent;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Exponent, E> {
                Exponent::new(v).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Exponent, E> {
                self.visit_f64(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Exponent, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Exponent, E> {
                if v == "inf" {
                    Ok(Exponent::Infinity)
                } else {
                    Err(E::custom(format!("unexpected exponent string {v:?}")))
                }
            }
        }

        d.deserialize_any(ExpVisitor)
    }
}
