use serde::Serialize;

use super::chains::{CuspChain, Edge, EdgeChain, EdgeClass, Vertex};
use crate::algebra::GroupAlgebraElement;
use crate::error::{Error, Result};
use crate::modular::{cusp_path, Cusp, Psl2};

/// `Theta_1`: linear extension of `g -> [g oo] - [g 0]`.
pub fn theta1(x: &GroupAlgebraElement) -> Result<CuspChain> {
    if x.order() != 1 {
        return Err(Error::OrderMismatch(1, x.order()));
    }
    let mut out = CuspChain::zero();
    for (k, c) in x.terms() {
        out.add(&k[0].at_infinity(), c);
        out.add(&k[0].at_zero(), -c);
    }
    Ok(out)
}

/// Vertices of `(g1, g2) T2`, where `T2 = [(oo,oo), (0,oo), (0,0)]`.
pub fn triangle_vertices(g1: &Psl2, g2: &Psl2) -> [Vertex; 3] {
    [
        (g1.at_infinity(), g2.at_infinity()),
        (g1.at_zero(), g2.at_infinity()),
        (g1.at_zero(), g2.at_zero()),
    ]
}

/// One face of a triangle boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub edge: Edge,
    pub class: EdgeClass,
    pub sign: i64,
}

/// `delta_2 (g1, g2) T2` with classes: `+H@g2 oo`, `-D@g2 g1^-1`, `+V@g1 0`, listed as
/// `[v0,v1]`, `[v0,v2]`, `[v1,v2]`.
///
/// H-edges keep the second coordinate fixed. Parametrizations of the transverse
/// lines that move the second coordinate instead differ from this by a swap; the
/// convention here is the one under which `(1,1) T2` has boundary `H - D + V`.
pub fn triangle_edges(g1: &Psl2, g2: &Psl2) -> [Face; 3] {
    let [v0, v1, v2] = triangle_vertices(g1, g2);
    [
        Face { edge: Edge::new(v0.clone(), v1.clone()), class: EdgeClass::H(g2.at_infinity()), sign: 1 },
        Face { edge: Edge::new(v0, v2.clone()), class: EdgeClass::D(g2 * &g1.inverse()), sign: -1 },
        Face { edge: Edge::new(v1, v2), class: EdgeClass::V(g1.at_zero()), sign: 1 },
    ]
}

/// `x . delta_2 T2` as an edge chain.
pub fn boundary_chain(x: &GroupAlgebraElement) -> Result<EdgeChain> {
    if x.order() != 2 {
        return Err(Error::OrderMismatch(2, x.order()));
    }
    let mut out = EdgeChain::zero();
    for (k, c) in x.terms() {
        let [v0, v1, v2] = triangle_vertices(&k[0], &k[1]);
        out.add_chain(&EdgeChain::triangle(&v0, &v1, &v2), c);
    }
    Ok(out)
}

/// Whether `Theta_2(x)` vanishes: every transverse class of `x . delta_2 T2` is closed.
pub fn theta2_vanishes(x: &GroupAlgebraElement) -> Result<bool> {
    Ok(boundary_chain(x)?.is_transverse_closed())
}

/// `sum_{i>=j} (gi, gj) + sum_{i>j} (gi S, gj S)` for a chain `g1..gN`.
///
/// Its image under `delta_2 T2` agrees, modulo transverse closed chains, with the
/// boundary of `[(c0,c0), (cN,c0), (cN,cN)]` where `c0 = g1 oo` and `cN = gN 0`.
pub fn subdivision_element(chain: &[Psl2]) -> GroupAlgebraElement {
    let s = Psl2::s();
    let mut x = GroupAlgebraElement::zero(2);
    for i in 0..chain.len() {
        for j in 0..=i {
            x = x.add(&GroupAlgebraElement::pair(chain[i].clone(), chain[j].clone())).unwrap();
            if i > j {
                let p = GroupAlgebraElement::pair(&chain[i] * &s, &chain[j] * &s);
                x = x.add(&p).unwrap();
            }
        }
    }
    x
}

/// `x` with `Theta_2(x)` equal to the class of `delta_2 [(a, g a), (a, g b), (b, g b)]`.
///
/// Built from the chain `b -> a`: the subdivision identity gives the reversed
/// triangle, and `(1, g)` transports it. The result is checked before returning.
pub fn theta2_decompose(a: &Cusp, b: &Cusp, g: &Psl2) -> Result<GroupAlgebraElement> {
    if a == b {
        return Ok(GroupAlgebraElement::zero(2));
    }
    let chain = cusp_path(b, a)?;
    let x = GroupAlgebraElement::pair(Psl2::identity(), g.clone())
        .mul(&subdivision_element(&chain))?
        .scale(-1);
    let mut diff = boundary_chain(&x)?;
    diff.add_chain(&EdgeChain::triangle(&(a.clone(), g.act(a)), &(a.clone(), g.act(b)), &(b.clone(), g.act(b))), -1);
    if !diff.is_transverse_closed() {
        return Err(Error::Verification(format!("decomposition of ({a}, {b}, {}) does not close", g.word())));
    }
    Ok(x)
}

/// Checks `[(g1,g1)+(g2,g2)+(g2,g1)+(g2 S,g1 S)] . delta_2 T2` against the big triangle
/// `[(g1 oo, g1 oo), (g2 0, g1 oo), (g2 0, g2 0)]`, modulo transverse closed chains.
pub fn subdivision_check(g1: &Psl2, g2: &Psl2) -> Result<bool> {
    if g1.at_zero() != g2.at_infinity() {
        return Err(Error::InvalidRequest(format!(
            "not a chain: {} sends 0 to {}, {} sends oo to {}",
            g1.word(),
            g1.at_zero(),
            g2.word(),
            g2.at_infinity()
        )));
    }
    let (c0, c2) = (g1.at_infinity(), g2.at_zero());
    let big = EdgeChain::triangle(&(c0.clone(), c0.clone()), &(c2.clone(), c0), &(c2.clone(), c2));
    Ok(subdivision_residual(&[g1.clone(), g2.clone()], &big)?.is_transverse_closed())
}

/// `subdivision_element(chain) . delta_2 T2 - big`.
pub fn subdivision_residual(chain: &[Psl2], big: &EdgeChain) -> Result<EdgeChain> {
    let mut diff = boundary_chain(&subdivision_element(chain))?;
    diff.add_chain(big, -1);
    Ok(diff)
}
