use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use crate::action::{act1_matrix, ActionMatrix};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::modular::Psl2;

/// A finite integer combination of elements of `PSL2(Z)^order`, for `order` 1 or 2.
///
/// Terms are kept in a sorted map with zero coefficients removed, so equal
/// elements have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAlgebraElement {
    order: usize,
    terms: BTreeMap<Vec<Psl2>, i64>,
}

impl GroupAlgebraElement {
    pub fn zero(order: usize) -> Self {
        assert!(order == 1 || order == 2, "order must be 1 or 2");
        GroupAlgebraElement { order, terms: BTreeMap::new() }
    }

    /// A single group element `key` with coefficient 1.
    pub fn basis(key: Vec<Psl2>) -> Self {
        let mut e = Self::zero(key.len());
        e.terms.insert(key, 1);
        e
    }

    pub fn one(order: usize) -> Self {
        Self::basis(vec![Psl2::identity(); order])
    }

    pub fn single(g: Psl2) -> Self {
        Self::basis(vec![g])
    }

    pub fn pair(g1: Psl2, g2: Psl2) -> Self {
        Self::basis(vec![g1, g2])
    }

    pub fn from_terms(order: usize, terms: impl IntoIterator<Item = (i64, Vec<Psl2>)>) -> Self {
        let mut e = Self::zero(order);
        for (c, k) in terms {
            assert_eq!(k.len(), order, "term of wrong order");
            e.add_term(k, c);
        }
        e
    }

    fn add_term(&mut self, key: Vec<Psl2>, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Psl2], i64)> {
        self.terms.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &[Psl2]) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(self.order);
        if c != 0 {
            out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    /// Product in the group ring; multiplication is componentwise on `PSL2(Z)^order`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key = k1.iter().zip(k2).map(|(a, b)| a * b).collect();
                out.add_term(key, c1 * c2);
            }
        }
        Ok(out)
    }

    /// `(x, y)`: the order-2 element `sum x_g y_h (g, h)` built from two order-1 elements.
    pub fn tensor(x: &Self, y: &Self) -> Result<Self> {
        if x.order != 1 || y.order != 1 {
            return Err(Error::OrderMismatch(x.order, y.order));
        }
        let mut out = Self::zero(2);
        for (k1, c1) in &x.terms {
            for (k2, c2) in &y.terms {
                out.add_term(vec![k1[0].clone(), k2[0].clone()], c1 * c2);
            }
        }
        Ok(out)
    }

    /// Left translate `(g1, g2) * self`.
    pub fn left_translate(&self, key: &[Psl2]) -> Self {
        assert_eq!(key.len(), self.order);
        Self::basis(key.to_vec()).mul(self).expect("orders agree")
    }

    /// Conjugates the selected coordinates by `diag(-1, 1)`.
    pub fn epsilon_conjugate(&self, coords: &[bool]) -> Self {
        assert_eq!(coords.len(), self.order);
        let mut out = Self::zero(self.order);
        for (k, &c) in &self.terms {
            let key = k.iter().zip(coords).map(|(g, &e)| if e { g.epsilon_conjugate() } else { g.clone() }).collect();
            out.add_term(key, c);
        }
        out
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.order, other.order))
        }
    }

    /// Matrix of the element on `V_{w1} (x) V_{w2}` (`w2 = 0` for order 1).
    pub fn action_matrix(&self, w1: usize, w2: usize) -> Result<ActionMatrix> {
        let n = (w1 + 1) * (w2 + 1);
        self.action_matrix_columns(w1, w2, &(0..n).collect::<Vec<_>>())
    }

    /// Columns `cols` of the action matrix: the operator restricted to a span of monomials.
    pub fn action_matrix_columns(&self, w1: usize, w2: usize, cols: &[usize]) -> Result<ActionMatrix> {
        if self.order == 1 && w2 != 0 {
            return Err(Error::InvalidRequest("order-1 elements act on one-variable polynomials (w2 = 0)".into()));
        }
        let n2 = w2 + 1;
        let rows = (w1 + 1) * n2;
        let mut out = IntMatrix::zeros(rows, cols.len());
        let mut cache: HashMap<(&Psl2, usize), IntMatrix> = HashMap::new();
        for key in self.terms.keys() {
            cache.entry((&key[0], w1)).or_insert_with(|| act1_matrix(&key[0], w1));
            if let Some(g) = key.get(1) {
                cache.entry((g, w2)).or_insert_with(|| act1_matrix(g, w2));
            }
        }
        let unit = IntMatrix::identity(1);
        for (key, &c) in &self.terms {
            let c = BigInt::from(c);
            let a1 = &cache[&(&key[0], w1)];
            let a2 = match key.get(1) {
                Some(g) => &cache[&(g, w2)],
                None => &unit,
            };
            for (jj, &j) in cols.iter().enumerate() {
                let (j1, j2) = (j / n2, j % n2);
                for i1 in 0..=w1 {
                    let x = a1.get(i1, j1);
                    if x.is_zero_ref() {
                        continue;
                    }
                    let cx = &c * x;
                    for i2 in 0..n2 {
                        let y = a2.get(i2, j2);
                        if y.is_zero_ref() {
                            continue;
                        }
                        let idx = i1 * n2 + i2;
                        let cur = out.get(idx, jj) + &cx * y;
                        out.set(idx, jj, cur);
                    }
                }
            }
        }
        Ok(ActionMatrix { w1, w2, matrix: out })
    }

    /// Parses sums like `+2*(U^2*S, S) - (1, U)`, products like `(1,S+US)*(1+S,1)`,
    /// and bracketed sub-expressions such as `[(1,1)+(U,U)]*[(1,1)+(S,S)]`.
    /// Order-1 elements may be written without parentheses: `1+U+U^2`.
    pub fn parse(text: &str, order: usize) -> Result<Self> {
        if text.trim() == "0" {
            return Ok(Self::zero(order));
        }
        let mut p = ElementParser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, order };
        let e = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

trait IsZeroRef {
    fn is_zero_ref(&self) -> bool;
}

impl IsZeroRef for BigInt {
    fn is_zero_ref(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

struct ElementParser {
    chars: Vec<char>,
    pos: usize,
    order: usize,
}

impl ElementParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in {:?}", self.pos, self.chars.iter().collect::<String>()))
    }

    fn sign(&mut self) -> Option<i64> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(1)
            }
            Some('-') => {
                self.pos += 1;
                Some(-1)
            }
            _ => None,
        }
    }

    fn coefficient(&mut self) -> i64 {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        // A lone `1` may be the identity word rather than a coefficient.
        let digits: String = self.chars[start..self.pos].iter().collect();
        if digits.is_empty() {
            return 1;
        }
        match self.peek() {
            Some('*') if self.chars.get(self.pos + 1).is_some_and(|c| matches!(c, '(' | '[' | 'S' | 'U' | 'T' | 'V' | '1' | 'I')) => {
                self.pos += 1;
                digits.parse().unwrap()
            }
            Some('(') | Some('[') => digits.parse().unwrap(),
            _ => {
                self.pos = start;
                1
            }
        }
    }

    fn expr(&mut self) -> Result<GroupAlgebraElement> {
        let mut acc = GroupAlgebraElement::zero(self.order);
        let mut first = true;
        loop {
            let s = match self.sign() {
                Some(s) => s,
                None if first => 1,
                None => return Ok(acc),
            };
            first = false;
            let c = self.coefficient();
            let t = self.term()?;
            acc = acc.add(&t.scale(s * c))?;
        }
    }

    fn term(&mut self) -> Result<GroupAlgebraElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') || self.peek() == Some('(') || self.peek() == Some('[') {
            if self.peek() == Some('*') {
                self.pos += 1;
            }
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GroupAlgebraElement> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some('(') => {
                self.pos += 1;
                let mut slots = vec![self.slot()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    slots.push(self.slot()?);
                }
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                match (self.order, slots.len()) {
                    (1, 1) => Ok(slots.pop().unwrap()),
                    (2, 2) => GroupAlgebraElement::tensor(&slots[0], &slots[1]),
                    (o, n) => Err(self.err(&format!("expected {o} components, found {n}"))),
                }
            }
            _ if self.order == 1 => self.word().map(GroupAlgebraElement::single),
            _ => Err(self.err("expected '(' or '['")),
        }
    }

    /// An order-1 linear combination of words.
    fn slot(&mut self) -> Result<GroupAlgebraElement> {
        let mut acc = GroupAlgebraElement::zero(1);
        let mut first = true;
        loop {
            let s = match self.sign() {
                Some(s) => s,
                None if first => 1,
                None => return Ok(acc),
            };
            first = false;
            let c = self.coefficient();
            let w = self.word()?;
            acc = acc.add(&GroupAlgebraElement::single(w).scale(s * c))?;
        }
    }

    fn word(&mut self) -> Result<Psl2> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            let continues_word = matches!(c, 'S' | 'U' | 'T' | 'V' | 'I' | '^')
                || c.is_ascii_digit()
                || (c == '-' && self.pos > start && self.chars[self.pos - 1] == '^')
                || (c == '*' && self.chars.get(self.pos + 1).is_some_and(|n| matches!(n, 'S' | 'U' | 'T' | 'V')));
            if !continues_word {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a word in S, U, T, V"));
        }
        let w: String = self.chars[start..self.pos].iter().collect();
        Psl2::parse_word(&w)
    }
}

impl fmt::Display for GroupAlgebraElement {
    /// Terms as `+c*(w1, w2)` in key order, where `wi` are words in `S`, `U`, `T`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let words: Vec<String> = k.iter().map(Psl2::word).collect();
                format!("{}{}*({})", if *c < 0 { "-" } else { "+" }, c.abs(), words.join(", "))
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
