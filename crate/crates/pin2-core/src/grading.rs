//! Exact rational gradings.
//!
//! Every homological degree in this crate is a [`Grading`]: an exact
//! rational number serialized as a `"p/q"` string. No floating point
//! appears anywhere in the library.

use num_rational::Rational64;
use num_traits::Signed;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Grading(Rational64);

impl Grading {
    pub const ZERO: Grading = Grading(Rational64::new_raw(0, 1));

    pub fn new(numer: i64, denom: i64) -> Self {
        Grading(Rational64::new(numer, denom))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.0.is_integer().then(|| self.numer())
    }

    /// True when `self - other` is an even integer.
    pub fn same_parity(&self, other: Grading) -> bool {
        match (*self - other).as_integer() {
            Some(k) => k % 2 == 0,
            None => false,
        }
    }

    pub fn half(&self) -> Grading {
        Grading(self.0 / 2)
    }

    pub fn double(&self) -> Grading {
        Grading(self.0 * 2)
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn rational(&self) -> Rational64 {
        self.0
    }
}

impl From<i64> for Grading {
    fn from(v: i64) -> Self {
        Grading(Rational64::from_integer(v))
    }
}

impl From<Rational64> for Grading {
    fn from(v: Rational64) -> Self {
        Grading(v)
    }
}

impl Add for Grading {
    type Output = Grading;
    fn add(self, rhs: Grading) -> Grading {
        Grading(self.0 + rhs.0)
    }
}

impl AddAssign for Grading {
    fn add_assign(&mut self, rhs: Grading) {
        self.0 += rhs.0;
    }
}

impl Sub for Grading {
    type Output = Grading;
    fn sub(self, rhs: Grading) -> Grading {
        Grading(self.0 - rhs.0)
    }
}

impl SubAssign for Grading {
    fn sub_assign(&mut self, rhs: Grading) {
        self.0 -= rhs.0;
    }
}

impl Neg for Grading {
    type Output = Grading;
    fn neg(self) -> Grading {
        Grading(-self.0)
    }
}

impl fmt::Display for Grading {
    /// Canonical wire form: always `p/q`, including integers (`-1/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed rational: {0:?}")]
pub struct ParseGradingError(String);

impl FromStr for Grading {
    type Err = ParseGradingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseGradingError(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Grading::new(p, q))
            }
            None => {
                let p: i64 = s.trim().parse().map_err(|_| bad())?;
                Ok(Grading::from(p))
            }
        }
    }
}

impl Serialize for Grading {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Grading {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        // Accept both the canonical "p/q" string and a bare integer.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Str(s) => s.parse().map_err(|e| D::Error::custom(format!("{e}"))),
            Raw::Int(v) => Ok(Grading::from(v)),
        }
    }
}

/// Human-facing form: integer when integral, `p/q` otherwise.
pub fn pretty(g: Grading) -> String {
    if g.is_integer() {
        format!("{}", g.numer())
    } else {
        format!("{}/{}", g.numer(), g.denom())
    }
}
