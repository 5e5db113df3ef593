use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cusp::Cusp;
use crate::error::{Error, Result};

/// An element of `PSL2(Z)`, stored as the representative with `c > 0`, or
/// `c = 0` and `a > 0`. Equality, hashing and ordering act on that representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Psl2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Psl2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::NotUnimodular {
                a: a.to_string(),
                b: b.to_string(),
                c: c.to_string(),
                d: d.to_string(),
            });
        }
        Ok(Self::canonical(a, b, c, d))
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    fn canonical(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        if c.is_negative() || (c.is_zero() && a.is_negative()) {
            Psl2 { a: -a, b: -b, c: -c, d: -d }
        } else {
            Psl2 { a, b, c, d }
        }
    }

    fn small(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::from_i64(a, b, c, d).expect("determinant 1")
    }

    pub fn identity() -> Self {
        Self::small(1, 0, 0, 1)
    }

    /// `S = (0, -1; 1, 0)`, of order 2.
    pub fn s() -> Self {
        Self::small(0, -1, 1, 0)
    }

    /// `U = (0, 1; -1, 1)`, of order 3.
    pub fn u() -> Self {
        Self::small(0, 1, -1, 1)
    }

    /// `T = (1, 1; 0, 1) = U^2 S`.
    pub fn t() -> Self {
        Self::small(1, 1, 0, 1)
    }

    /// `V = S U^2 S = (0, -1; 1, 1)`, the conjugate of `U` by `diag(-1, 1)`.
    pub fn v() -> Self {
        Self::small(0, -1, 1, 1)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::identity(), |acc, _| &acc * &base)
    }

    /// Conjugation by `epsilon = diag(-1, 1)`: `(a, b; c, d) -> (a, -b; -c, d)`.
    pub fn epsilon_conjugate(&self) -> Self {
        Self::canonical(self.a.clone(), -&self.b, -&self.c, self.d.clone())
    }

    /// Möbius action on a cusp.
    pub fn act(&self, x: &Cusp) -> Cusp {
        let (p, q) = (x.p(), x.q());
        Cusp::from_projective(&self.a * p + &self.b * q, &self.c * p + &self.d * q)
    }

    /// Image of the cusp at infinity.
    pub fn at_infinity(&self) -> Cusp {
        Cusp::from_projective(self.a.clone(), self.c.clone())
    }

    /// Image of the cusp 0.
    pub fn at_zero(&self) -> Cusp {
        Cusp::from_projective(self.b.clone(), self.d.clone())
    }

    /// A word in `S`, `U`, `T`: the reduced alternating word in `S` and `U` when it
    /// is short, otherwise a `T^n S` expansion from the Euclidean algorithm.
    pub fn word(&self) -> String {
        if let Some(w) = short_words().get(self) {
            return w.clone();
        }
        euclid_word(self)
    }

    /// Parses words such as `U^2*S`, `US`, `T^-3*S*V` or `1`, and matrix literals `[a,b;c,d]`.
    pub fn parse_word(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let nums: Vec<BigInt> = inner
                .split([',', ';'])
                .map(|t| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad matrix literal {s}"))))
                .collect::<Result<_>>()?;
            if nums.len() != 4 {
                return Err(Error::Parse(format!("matrix literal needs four entries: {s}")));
            }
            let [a, b, c, d]: [BigInt; 4] = nums.try_into().unwrap();
            return Psl2::new(a, b, c, d);
        }
        let mut acc = Self::identity();
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if chars.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        let mut i = 0;
        while i < chars.len() {
            let g = match chars[i] {
                'S' => Self::s(),
                'U' => Self::u(),
                'T' => Self::t(),
                'V' => Self::v(),
                '1' | 'I' => Self::identity(),
                c => return Err(Error::Parse(format!("unexpected letter {c:?} in word {s:?}"))),
            };
            i += 1;
            let mut e = 1i64;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let txt: String = chars[start..i].iter().collect();
                e = txt.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            }
            acc = &acc * &g.pow(e);
        }
        Ok(acc)
    }
}

const SHORT_WORD_SYLLABLES: usize = 12;

fn short_words() -> &'static HashMap<Psl2, String> {
    static TABLE: OnceLock<HashMap<Psl2, String>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let s = Psl2::s();
        let u = Psl2::u();
        let u2 = &u * &u;
        let mut table = HashMap::new();
        table.insert(Psl2::identity(), "1".to_string());
        // Breadth-first over reduced words: syllables alternate between S and U^{1,2}.
        let mut frontier: Vec<(Psl2, Vec<&str>, bool)> = vec![
            (s.clone(), vec!["S"], true),
            (u.clone(), vec!["U"], false),
            (u2.clone(), vec!["U^2"], false),
        ];
        for _ in 0..SHORT_WORD_SYLLABLES {
            let mut next = Vec::new();
            for (g, w, ends_in_s) in frontier {
                table.entry(g.clone()).or_insert_with(|| w.join("*"));
                let steps: Vec<(&Psl2, &str)> = if ends_in_s { vec![(&u, "U"), (&u2, "U^2")] } else { vec![(&s, "S")] };
                for (h, name) in steps {
                    let mut w2 = w.clone();
                    w2.push(name);
                    next.push((&g * h, w2, !ends_in_s));
                }
            }
            frontier = next;
        }
        table
    })
}

fn euclid_word(g: &Psl2) -> String {
    let mut parts = Vec::new();
    let (mut a, mut b, mut c, mut d) = (g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone());
    while !c.is_zero() {
        let n = a.div_floor(&c);
        if !n.is_zero() {
            parts.push(format!("T^{n}"));
        }
        parts.push("S".to_string());
        let (na, nb) = (&a - &n * &c, &b - &n * &d);
        (a, b, c, d) = (-c, -d, na, nb);
    }
    let n = if a.is_positive() { b } else { -b };
    if !n.is_zero() || parts.is_empty() {
        parts.push(if n.is_zero() { "1".into() } else { format!("T^{n}") });
    }
    parts.join("*")
}

impl Mul for &Psl2 {
    type Output = Psl2;
    fn mul(self, o: &Psl2) -> Psl2 {
        Psl2::canonical(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for Psl2 {
    type Output = Psl2;
    fn mul(self, o: Psl2) -> Psl2 {
        &self * &o
    }
}

impl FromStr for Psl2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Psl2::parse_word(s)
    }
}

impl fmt::Display for Psl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl fmt::Debug for Psl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{},{}]", self.a, self.b, self.c, self.d)
    }
}
