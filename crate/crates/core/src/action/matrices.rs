use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::IntMatrix;
use crate::modular::Psl2;

/// Matrix of an operator on `V_{w1} (x) V_{w2}` in the monomial basis.
///
/// The action of `PSL2(Z)` is integral, so every action matrix has integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMatrix {
    pub w1: usize,
    pub w2: usize,
    pub matrix: IntMatrix,
}

/// Monomial parity classes of `V_{w1,w2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    /// `m1 + m2` even.
    Even,
    /// `m1 + m2` odd.
    Odd,
    Both,
}

impl Parity {
    pub fn admits(self, m1: usize, m2: usize) -> bool {
        match self {
            Parity::Even => (m1 + m2).is_multiple_of(2),
            Parity::Odd => (m1 + m2) % 2 == 1,
            Parity::Both => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Both => "both",
        }
    }

    pub fn opposite(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::Both => Parity::Both,
        }
    }
}

impl std::str::FromStr for Parity {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "even" | "pair" | "+" => Ok(Parity::Even),
            "odd" | "imp" | "-" => Ok(Parity::Odd),
            "both" | "all" => Ok(Parity::Both),
            _ => Err(crate::Error::Parse(format!("unknown parity {s:?}"))),
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Flat indices `m1 * (w2 + 1) + m2` of the monomials of the given parity.
pub fn parity_indices(w1: usize, w2: usize, parity: Parity) -> Vec<usize> {
    (0..=w1)
        .flat_map(|m1| (0..=w2).map(move |m2| (m1, m2)))
        .filter(|&(m1, m2)| parity.admits(m1, m2))
        .map(|(m1, m2)| m1 * (w2 + 1) + m2)
        .collect()
}

/// Coefficients of `(u X + v)^n`, lowest degree first.
fn binomial_power(u: &BigInt, v: &BigInt, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i] += c * v;
            next[i + 1] += c * u;
        }
        out = next;
    }
    out
}

/// Matrix of `P(X) -> (-cX + a)^w P((dX - b)/(-cX + a))` on `V_w`.
///
/// Column `m` holds the expansion of `(dX - b)^m (-cX + a)^(w - m)`.
pub fn act1_matrix(g: &Psl2, w: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(w + 1, w + 1);
    let num: Vec<Vec<BigInt>> = (0..=w).map(|k| binomial_power(g.d(), &-g.b(), k)).collect();
    let den: Vec<Vec<BigInt>> = (0..=w).map(|k| binomial_power(&-g.c(), g.a(), k)).collect();
    for col in 0..=w {
        let (p, q) = (&num[col], &den[w - col]);
        for (i, x) in p.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in q.iter().enumerate() {
                if !y.is_zero() {
                    let cur = m.get(i + j, col).clone();
                    m.set(i + j, col, cur + x * y);
                }
            }
        }
    }
    m
}

/// Matrix of `(g1, g2)` on `V_{w1} (x) V_{w2}`: the Kronecker product of the factors.
pub fn act2_matrix(g1: &Psl2, g2: &Psl2, w1: usize, w2: usize) -> ActionMatrix {
    ActionMatrix { w1, w2, matrix: act1_matrix(g1, w1).kron(&act1_matrix(g2, w2)) }
}
