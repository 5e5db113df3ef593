use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `P1(Q)`: `p/q` in lowest terms with `q > 0`, or `1/0` for infinity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cusp {
    p: BigInt,
    q: BigInt,
}

impl Cusp {
    pub fn new(p: BigInt, q: BigInt) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::InvalidCusp("0/0".into()));
        }
        Ok(Self::from_projective(p, q))
    }

    pub fn from_i64(p: i64, q: i64) -> Result<Self> {
        Self::new(p.into(), q.into())
    }

    /// Normalizes homogeneous coordinates; panics on `(0, 0)`.
    pub(crate) fn from_projective(p: BigInt, q: BigInt) -> Self {
        let g = p.gcd(&q);
        assert!(!g.is_zero(), "(0:0) is not a cusp");
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Cusp { p, q }
    }

    pub fn infinity() -> Self {
        Cusp { p: BigInt::one(), q: BigInt::zero() }
    }

    pub fn integer(n: i64) -> Self {
        Cusp { p: n.into(), q: BigInt::one() }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// `|p1 q2 - p2 q1|`; cusps are adjacent in the Farey graph when this is 1.
    pub fn cross(&self, other: &Cusp) -> BigInt {
        (&self.p * &other.q - &other.p * &self.q).abs()
    }

    pub fn is_adjacent(&self, other: &Cusp) -> bool {
        self.cross(other).is_one()
    }
}

impl FromStr for Cusp {
    type Err = Error;

    /// Accepts `p/q`, integers, and `oo`, `inf`, `infinity` or `∞`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "oo" | "inf" | "infinity" | "∞" | "Infinity") {
            return Ok(Cusp::infinity());
        }
        let bad = || Error::InvalidCusp(s.to_string());
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim().parse::<BigInt>().map_err(|_| bad())?, q.trim().parse::<BigInt>().map_err(|_| bad())?),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        Cusp::new(p, q)
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            f.write_str("∞")
        } else if self.q.is_one() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl fmt::Debug for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
