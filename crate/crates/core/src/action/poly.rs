use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A polynomial of partial degrees at most `(w1, w2)`, stored densely in the
/// monomial basis `X1^m1 X2^m2` with `m1` major. `w2 = 0` is the one-variable case.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyVec {
    w1: usize,
    w2: usize,
    coeffs: Vec<BigRational>,
}

impl PolyVec {
    pub fn zero(w1: usize, w2: usize) -> Self {
        PolyVec { w1, w2, coeffs: vec![BigRational::zero(); (w1 + 1) * (w2 + 1)] }
    }

    pub fn from_coeffs(w1: usize, w2: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != (w1 + 1) * (w2 + 1) {
            return Err(Error::InvalidRequest(format!(
                "expected {} coefficients for weights ({w1}, {w2}), got {}",
                (w1 + 1) * (w2 + 1),
                coeffs.len()
            )));
        }
        Ok(PolyVec { w1, w2, coeffs })
    }

    pub fn monomial(w1: usize, w2: usize, m1: usize, m2: usize) -> Self {
        let mut p = Self::zero(w1, w2);
        p.set(m1, m2, BigRational::one());
        p
    }

    pub fn weights(&self) -> (usize, usize) {
        (self.w1, self.w2)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn index(&self, m1: usize, m2: usize) -> usize {
        m1 * (self.w2 + 1) + m2
    }

    pub fn coeff(&self, m1: usize, m2: usize) -> &BigRational {
        &self.coeffs[self.index(m1, m2)]
    }

    pub fn set(&mut self, m1: usize, m2: usize, v: BigRational) {
        let i = self.index(m1, m2);
        self.coeffs[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms as `((m1, m2), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &BigRational)> {
        let w2 = self.w2;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| ((i / (w2 + 1), i % (w2 + 1)), c))
    }

    /// `P(X1, X2) -> P(Z, Z)` as a one-variable polynomial of degree at most `w1 + w2`.
    pub fn diagonal(&self) -> PolyVec {
        let mut out = PolyVec::zero(self.w1 + self.w2, 0);
        for ((m1, m2), c) in self.terms() {
            out.coeffs[m1 + m2] += c;
        }
        out
    }

    /// Substitutes `X1 -> (-1)^s1 X1`, `X2 -> (-1)^s2 X2`.
    pub fn reflect(&self, s1: bool, s2: bool) -> PolyVec {
        let mut out = self.clone();
        for m1 in 0..=self.w1 {
            for m2 in 0..=self.w2 {
                if (s1 && m1 % 2 == 1) ^ (s2 && m2 % 2 == 1) {
                    let i = self.index(m1, m2);
                    out.coeffs[i] = -out.coeffs[i].clone();
                }
            }
        }
        out
    }

    /// Parses expressions such as `1 - X1^2*X2^8`, `(X1-X2)^2*(1-X2^4)` or `4X - 25/3*X^3`.
    /// One-variable input may use `X` or `Z`.
    pub fn parse(text: &str, w1: usize, w2: usize) -> Result<Self> {
        let mut parser = Parser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let poly = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(Error::Parse(format!("unexpected {:?} in {text:?}", parser.chars[parser.pos])));
        }
        let mut out = PolyVec::zero(w1, w2);
        for ((m1, m2), c) in poly {
            if m1 > w1 || m2 > w2 {
                return Err(Error::Parse(format!("monomial degree ({m1}, {m2}) exceeds weights ({w1}, {w2})")));
            }
            out.set(m1, m2, c);
        }
        Ok(out)
    }
}

type Sparse = BTreeMap<(usize, usize), BigRational>;

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for ((i1, j1), x) in a {
        for ((i2, j2), y) in b {
            let e = out.entry((i1 + i2, j1 + j2)).or_insert_with(BigRational::zero);
            *e += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn sparse_add(a: &mut Sparse, b: Sparse, sign: bool) {
    for (k, v) in b {
        let e = a.entry(k).or_insert_with(BigRational::zero);
        if sign {
            *e += v;
        } else {
            *e -= v;
        }
    }
    a.retain(|_, v| !v.is_zero());
}

fn constant(c: BigRational) -> Sparse {
    let mut s = Sparse::new();
    if !c.is_zero() {
        s.insert((0, 0), c);
    }
    s
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in {:?}", self.pos, self.chars.iter().collect::<String>()))
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut sign = true;
        let mut first = true;
        loop {
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    self.pos += 1;
                    sign = false;
                }
                _ if first => {}
                _ => return Ok(acc),
            }
            let t = self.term()?;
            sparse_add(&mut acc, t, sign);
            sign = true;
            first = false;
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = sparse_mul(&acc, &f);
                }
                // Implicit product, e.g. `4X` or `2(X1-X2)`.
                Some(c) if c == '(' || c == 'X' || c == 'Z' => {
                    let f = self.power()?;
                    acc = sparse_mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: usize = e.try_into().map_err(|_| self.err("exponent too large"))?;
            let mut acc = constant(BigRational::one());
            for _ in 0..e {
                acc = sparse_mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect::<String>().parse().unwrap())
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('X') | Some('Z') => {
                self.pos += 1;
                let var = match self.peek() {
                    Some('1') => {
                        self.pos += 1;
                        (1, 0)
                    }
                    Some('2') => {
                        self.pos += 1;
                        (0, 1)
                    }
                    _ => (1, 0),
                };
                let mut s = Sparse::new();
                s.insert(var, BigRational::one());
                Ok(s)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                // A slash directly after a number is part of the constant.
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(constant(BigRational::new(n, d)));
                }
                Ok(constant(BigRational::from_integer(n)))
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

fn format_monomial(w2: usize, m1: usize, m2: usize) -> Vec<String> {
    let mut parts = Vec::new();
    let one_var = w2 == 0;
    let mut push = |name: &str, e: usize| match e {
        0 => {}
        1 => parts.push(name.to_string()),
        _ => parts.push(format!("{name}^{e}")),
    };
    push(if one_var { "X" } else { "X1" }, m1);
    if !one_var {
        push("X2", m2);
    }
    parts
}

impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((m1, m2), c) in self.terms() {
            let mono = format_monomial(self.w2, m1, m2);
            let mag = c.abs();
            let mut body: Vec<String> = Vec::new();
            if !mag.is_one() || mono.is_empty() {
                body.push(mag.to_string());
            }
            body.extend(mono);
            let body = body.join("*");
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyVec[{},{}]({})", self.w1, self.w2, self)
    }
}
