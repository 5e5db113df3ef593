//! Farey graph: cusps joined when `|p1 q2 - p2 q1| = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Cusp, Psl2};
use crate::error::{Error, Result};

/// The unique `g` with `g(∞) = a` and `g(0) = b`, for adjacent `a`, `b`.
pub fn edge_matrix(a: &Cusp, b: &Cusp) -> Option<Psl2> {
    let det = a.p() * b.q() - b.p() * a.q();
    let sign = if det.is_one() {
        BigInt::one()
    } else if det == -BigInt::one() {
        -BigInt::one()
    } else {
        return None;
    };
    Psl2::new(a.p().clone(), &sign * b.p(), a.q().clone(), &sign * b.q()).ok()
}

/// Some `g` with `g(∞) = a`.
pub fn matrix_to(a: &Cusp) -> Psl2 {
    if a.is_infinity() {
        return Psl2::identity();
    }
    let e = a.p().extended_gcd(a.q());
    let (x, y) = if e.gcd.is_negative() { (-e.x, -e.y) } else { (e.x, e.y) };
    Psl2::new(a.p().clone(), -y, a.q().clone(), x).expect("Bezout coefficients give determinant 1")
}

fn continued_fraction(x: &Cusp) -> Vec<BigInt> {
    let (mut p, mut q) = (x.p().clone(), x.q().clone());
    let mut out = Vec::new();
    while !q.is_zero() {
        let (a, r) = p.div_mod_floor(&q);
        out.push(a);
        p = std::mem::replace(&mut q, r);
    }
    out
}

/// Vertices of a shortest path from `∞` to `x`.
///
/// Geodesics from `∞` stay inside the strip of Farey triangles crossed by the
/// vertical line through `x`; those triangles are fans around the convergents,
/// so a two-term recurrence over the continued fraction gives the distances.
fn geodesic_from_infinity(x: &Cusp) -> Vec<Cusp> {
    if x.is_infinity() {
        return vec![Cusp::infinity()];
    }
    let cf = continued_fraction(x);
    let n = cf.len();
    // Index 0 is ∞, index i + 1 is the i-th convergent.
    let mut num = vec![BigInt::one(), cf[0].clone()];
    let mut den = vec![BigInt::zero(), BigInt::one()];
    let mut dist = vec![0u64, 1];
    let mut via_rim = vec![false, false];
    for i in 1..n {
        let a = cf[i].to_u64().unwrap_or(u64::MAX);
        num.push(&cf[i] * &num[i] + &num[i - 1]);
        den.push(&cf[i] * &den[i] + &den[i - 1]);
        let step = dist[i] + 1;
        let rim = dist[i - 1].saturating_add(a);
        via_rim.push(rim < step);
        dist.push(step.min(rim));
    }
    let mut rev = Vec::new();
    let mut k = n;
    while k > 0 {
        rev.push(Cusp::from_projective(num[k].clone(), den[k].clone()));
        if via_rim[k] {
            let i = k - 1;
            let a = cf[i].to_u64().unwrap();
            for j in (1..a).rev() {
                let j = BigInt::from(j);
                rev.push(Cusp::from_projective(&num[i - 1] + &j * &num[i], &den[i - 1] + &j * &den[i]));
            }
            k -= 2;
        } else {
            k -= 1;
        }
    }
    rev.push(Cusp::infinity());
    rev.reverse();
    rev
}

fn geodesic(a: &Cusp, b: &Cusp) -> Vec<Cusp> {
    let m = matrix_to(a);
    let x = m.inverse().act(b);
    geodesic_from_infinity(&x).iter().map(|v| m.act(v)).collect()
}

/// A shortest chain `g_1, ..., g_N` with `g_1(∞) = a`, `g_i(0) = g_{i+1}(∞)`, `g_N(0) = b`.
pub fn cusp_path(a: &Cusp, b: &Cusp) -> Result<Vec<Psl2>> {
    if a == b {
        return Err(Error::SameCusp);
    }
    let verts = geodesic(a, b);
    Ok(verts.windows(2).map(|w| edge_matrix(&w[0], &w[1]).expect("consecutive path vertices are adjacent")).collect())
}

/// The chain from `b` back to `a` obtained from a chain from `a` to `b`.
pub fn reverse_chain(chain: &[Psl2]) -> Vec<Psl2> {
    let s = Psl2::s();
    chain.iter().rev().map(|g| g * &s).collect()
}

/// Checks the chain conditions linking `a` to `b`.
pub fn is_chain(chain: &[Psl2], a: &Cusp, b: &Cusp) -> bool {
    let (Some(first), Some(last)) = (chain.first(), chain.last()) else { return false };
    first.at_infinity() == *a
        && last.at_zero() == *b
        && chain.windows(2).all(|w| w[0].at_zero() == w[1].at_infinity())
}

/// Graph distance in the Farey graph.
pub fn cusp_distance(a: &Cusp, b: &Cusp) -> u64 {
    geodesic(a, b).len() as u64 - 1
}

/// `max(d(a, ∞), d(a, 0))`.
pub fn cusp_height(a: &Cusp) -> u64 {
    cusp_distance(a, &Cusp::infinity()).max(cusp_distance(a, &Cusp::integer(0)))
}

/// The five regions of `P1(Q)` used in height induction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// `{∞, 0, 1, -1}`.
    B0,
    /// `0 < p < q`.
    B1,
    /// `0 < q < p`.
    B2,
    /// `0 < -p < q`.
    B3,
    /// `0 < q < -p`.
    B4,
}

pub fn cusp_region(a: &Cusp) -> Region {
    let (p, q) = (a.p(), a.q());
    if a.is_infinity() || p.is_zero() || q.is_one() && p.abs().is_one() {
        Region::B0
    } else if p.is_positive() {
        if p < q {
            Region::B1
        } else {
            Region::B2
        }
    } else if &-p < q {
        Region::B3
    } else {
        Region::B4
    }
}

/// For adjacent `a = p1/q1`, `b = p2/q2`: the two cusps `(p1 ± p2)/(q1 ± q2)` completing
/// a Farey triangle on the edge `ab`.
pub fn common_neighbours(a: &Cusp, b: &Cusp) -> Option<[Cusp; 2]> {
    if !a.is_adjacent(b) {
        return None;
    }
    Some([
        Cusp::from_projective(a.p() + b.p(), a.q() + b.q()),
        Cusp::from_projective(a.p() - b.p(), a.q() - b.q()),
    ])
}
