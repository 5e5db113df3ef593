use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;

use super::PolyVec;
use crate::error::{Error, Result};

/// The pairing on `V_w` with `[X^m, X^(w-m)] = (-1)^m / C(w, m)` and zero on other monomial pairs.
///
/// It is `PSL2(Z)`-invariant and satisfies `[(X - a)^w, P] = P(a)`.
pub fn haberland_pairing(p: &PolyVec, q: &PolyVec) -> Result<BigRational> {
    let (w, w2) = p.weights();
    if w2 != 0 || q.weights() != (w, 0) {
        return Err(Error::InvalidRequest("pairing needs one-variable polynomials of equal weight".into()));
    }
    let mut acc = BigRational::zero();
    for m in 0..=w {
        let (a, b) = (p.coeff(m, 0), q.coeff(w - m, 0));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let sign = if m % 2 == 0 { 1 } else { -1 };
        acc += a * b * BigRational::new(BigInt::from(sign), binomial(BigInt::from(w), BigInt::from(m)));
    }
    Ok(acc)
}

/// Dimension of the space of cusp forms of weight `k` for `SL2(Z)`.
pub fn dim_cusp_forms(k: i64) -> Result<usize> {
    if k < 0 || k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    if k == 2 {
        return Ok(0);
    }
    let base = (k / 12) as usize;
    Ok(if k % 12 == 2 { base - 1 } else { base })
}

/// `dim W_w = 2 dim S_{w+2} + 1` for even `w >= 2`, and `0` for `w = 0`.
pub fn dim_w_oracle(w: usize) -> Result<usize> {
    if w == 0 {
        return Ok(0);
    }
    Ok(2 * dim_cusp_forms(w as i64 + 2)? + 1)
}
