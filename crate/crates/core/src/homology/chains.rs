use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::modular::{matrix_to, Cusp, Psl2};

fn add_to<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, c: i64) {
    if c == 0 {
        return;
    }
    match map.entry(key) {
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

/// A formal combination of cusps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CuspChain {
    terms: BTreeMap<Cusp, i64>,
}

impl CuspChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add(&mut self, c: &Cusp, k: i64) {
        add_to(&mut self.terms, c.clone(), k);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &Cusp) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cusp, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }
}

impl fmt::Display for CuspChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, k)| format!("{k:+}*[{c}]")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A vertex of `P2`: a pair of cusps.
pub type Vertex = (Cusp, Cusp);

/// An oriented 1-simplex of `P2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub source: Vertex,
    pub target: Vertex,
}

impl Edge {
    pub fn new(source: Vertex, target: Vertex) -> Self {
        assert!(source != target, "degenerate edge");
        Edge { source, target }
    }

    /// All transverse classes the edge belongs to; at most one for a nondegenerate edge.
    pub fn candidate_classes(&self) -> Vec<EdgeClass> {
        let ((x, y), (x2, y2)) = (&self.source, &self.target);
        let mut out = vec![];
        if y == y2 {
            out.push(EdgeClass::H(y.clone()));
        }
        if x == x2 {
            out.push(EdgeClass::V(x.clone()));
        }
        if let Some(g) = diagonal_key(x, x2, y, y2) {
            out.push(EdgeClass::D(g));
        }
        out
    }

    pub fn class(&self) -> Option<EdgeClass> {
        let mut c = self.candidate_classes();
        if c.len() == 1 {
            c.pop()
        } else {
            None
        }
    }

    /// The edge seen in its class's line: the moving coordinate for H and V, the
    /// first coordinate for D.
    pub fn line_edge(&self) -> (Cusp, Cusp) {
        let ((x, y), (x2, y2)) = (&self.source, &self.target);
        if x == x2 {
            (y.clone(), y2.clone())
        } else {
            (x.clone(), x2.clone())
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ((a, b), (c, d)) = (&self.source, &self.target);
        write!(f, "[({a},{b}),({c},{d})]")
    }
}

/// Transverse class of an edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EdgeClass {
    /// Second coordinate constant, equal to the key.
    H(Cusp),
    /// First coordinate constant, equal to the key.
    V(Cusp),
    /// Second coordinate is `g` applied to the first.
    D(Psl2),
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeClass::H(c) => write!(f, "H@{c}"),
            EdgeClass::V(c) => write!(f, "V@{c}"),
            EdgeClass::D(g) => write!(f, "D@{}", g.word()),
        }
    }
}

/// The unique `g` with `g x = y` and `g x2 = y2`, if any.
///
/// With `M1 oo = x` and `M2 oo = y`, write `M1^-1 x2 = p1/q` and `M2^-1 y2 = p2/q`;
/// a solution exists iff the denominators agree and `p2 = p1 + k q`, and then
/// `g = M2 T^k M1^-1`.
pub fn diagonal_key(x: &Cusp, x2: &Cusp, y: &Cusp, y2: &Cusp) -> Option<Psl2> {
    if x == x2 || y == y2 {
        return None;
    }
    let (m1, m2) = (matrix_to(x), matrix_to(y));
    let (r1, r2) = (m1.inverse().act(x2), m2.inverse().act(y2));
    if r1.q() != r2.q() {
        return None;
    }
    let diff = r2.p() - r1.p();
    let q = r1.q();
    if (&diff % q) != BigInt::from(0) {
        return None;
    }
    let k: BigInt = diff / q;
    let tk = Psl2::new(1.into(), k, 0.into(), 1.into()).expect("translation is unimodular");
    Some(&(&m2 * &tk) * &m1.inverse())
}

/// A formal combination of oriented edges of `P2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeChain {
    terms: BTreeMap<Edge, i64>,
}

impl EdgeChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add(&mut self, e: Edge, k: i64) {
        add_to(&mut self.terms, e, k);
    }

    pub fn add_chain(&mut self, other: &EdgeChain, k: i64) {
        for (e, c) in &other.terms {
            self.add(e.clone(), c * k);
        }
    }

    /// `delta_2` of the simplex `[v0, v1, v2]`: `[v1,v2] - [v0,v2] + [v0,v1]`.
    /// Degenerate edges are dropped (normalized chains).
    pub fn triangle(v0: &Vertex, v1: &Vertex, v2: &Vertex) -> Self {
        let mut c = Self::zero();
        for (a, b, k) in [(v1, v2, 1), (v0, v2, -1), (v0, v1, 1)] {
            if a != b {
                c.add(Edge::new(a.clone(), b.clone()), k);
            }
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Edge, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `delta_1`: each edge maps to `[target] - [source]`.
    pub fn delta1(&self) -> BTreeMap<Vertex, i64> {
        let mut out = BTreeMap::new();
        for (e, &c) in &self.terms {
            add_to(&mut out, e.target.clone(), c);
            add_to(&mut out, e.source.clone(), -c);
        }
        out
    }

    /// For each transverse class, the boundary of the class's line chain.
    /// Edges outside every class are returned separately.
    pub fn class_boundaries(&self) -> (BTreeMap<EdgeClass, CuspChain>, Vec<Edge>) {
        let mut out: BTreeMap<EdgeClass, CuspChain> = BTreeMap::new();
        let mut stray = vec![];
        for (e, &c) in &self.terms {
            match e.class() {
                Some(class) => {
                    let (s, t) = e.line_edge();
                    let chain = out.entry(class).or_default();
                    chain.add(&t, c);
                    chain.add(&s, -c);
                }
                None => stray.push(e.clone()),
            }
        }
        out.retain(|_, ch| !ch.is_zero());
        (out, stray)
    }

    /// True iff every class-restricted line chain is closed, i.e. the chain is
    /// zero in `H_1(P2)`.
    pub fn is_transverse_closed(&self) -> bool {
        let (open, stray) = self.class_boundaries();
        open.is_empty() && stray.is_empty()
    }
}

impl fmt::Display for EdgeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, k)| format!("{k:+}*{e}")).collect();
        f.write_str(&parts.join(" "))
    }
}
