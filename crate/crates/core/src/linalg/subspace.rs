use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{clear_denominators, RatMatrix};

/// A subspace of `Q^n` stored by its reduced row echelon basis.
///
/// The RREF basis of a subspace is unique, so two values compare equal exactly
/// when they describe the same subspace of the same ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceBasis {
    ambient: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<BigRational>>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis { ambient, pivots: Vec::new(), rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        SubspaceBasis { ambient, pivots: (0..ambient).collect(), rows }
    }

    /// Wraps rows that are already in reduced row echelon form.
    ///
    /// Panics if the rows are not an RREF basis.
    pub fn from_rref(ambient: usize, rows: Vec<Vec<BigRational>>) -> Self {
        let pivots = rref_pivots(ambient, &rows).expect("rows are not in reduced row echelon form");
        SubspaceBasis { ambient, pivots, rows }
    }

    /// Like [`SubspaceBasis::from_rref`] but returns `None` instead of panicking.
    pub fn try_from_rref(ambient: usize, rows: Vec<Vec<BigRational>>) -> Option<Self> {
        let pivots = rref_pivots(ambient, &rows)?;
        Some(SubspaceBasis { ambient, pivots, rows })
    }

    /// Row space of arbitrary rational rows.
    pub fn span(ambient: usize, rows: &[Vec<BigRational>]) -> Self {
        let m = RatMatrix::from_rows(ambient, rows.to_vec());
        super::row_space(&m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigRational>> {
        self.rows
    }

    pub fn to_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.ambient, self.rows.clone())
    }

    /// Coefficients of `v` in the RREF basis, or `None` if `v` is outside the subspace.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        let coeffs: Vec<BigRational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(row) {
                if !x.is_zero() {
                    *r -= c * x;
                }
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Row-by-row membership test done over `Z`: with `R_i = d_i r_i` integral and
    /// `L = lcm(d_i)`, an integral `v` lies in the span iff `L v = sum v[p_i] (L/d_i) R_i`.
    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        if other.ambient != self.ambient {
            return false;
        }
        let cleared: Vec<Vec<BigInt>> = self.rows.iter().map(|r| clear_denominators(r)).collect();
        let dens: Vec<BigInt> = cleared.iter().zip(&self.pivots).map(|(r, &p)| r[p].clone()).collect();
        let l = dens.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
        let factors: Vec<BigInt> = dens.iter().map(|d| &l / d).collect();
        other.rows.iter().all(|v| {
            let v = clear_denominators(v);
            let mut acc: Vec<BigInt> = v.iter().map(|x| x * &l).collect();
            for ((row, f), &p) in cleared.iter().zip(&factors).zip(&self.pivots) {
                if v[p].is_zero() {
                    continue;
                }
                let c = &v[p] * f;
                for (a, x) in acc.iter_mut().zip(row) {
                    if !x.is_zero() {
                        *a -= &c * x;
                    }
                }
            }
            acc.iter().all(Zero::is_zero)
        })
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SubspaceBasis::span(self.ambient, &rows)
    }

    /// Re-embeds the subspace into a larger coordinate space; coordinate `i`
    /// moves to `positions[i]`, which must be strictly increasing.
    pub fn embed(&self, ambient: usize, positions: &[usize]) -> SubspaceBasis {
        assert_eq!(positions.len(), self.ambient, "position map has wrong length");
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "positions must increase");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![BigRational::zero(); ambient];
                for (x, &p) in r.iter().zip(positions) {
                    out[p] = x.clone();
                }
                out
            })
            .collect();
        SubspaceBasis { ambient, pivots: self.pivots.iter().map(|&p| positions[p]).collect(), rows }
    }

    /// Restriction to the given coordinates, assuming the subspace lives inside them.
    pub fn restrict(&self, positions: &[usize]) -> SubspaceBasis {
        let rows: Vec<Vec<BigRational>> =
            self.rows.iter().map(|r| positions.iter().map(|&p| r[p].clone()).collect()).collect();
        SubspaceBasis::from_rref(positions.len(), rows)
    }
}

fn rref_pivots(ambient: usize, rows: &[Vec<BigRational>]) -> Option<Vec<usize>> {
    let mut pivots = Vec::with_capacity(rows.len());
    for r in rows {
        if r.len() != ambient {
            return None;
        }
        let p = r.iter().position(|x| !x.is_zero())?;
        if !r[p].is_one() || pivots.last().is_some_and(|&q| q >= p) {
            return None;
        }
        pivots.push(p);
    }
    for (i, &p) in pivots.iter().enumerate() {
        if rows.iter().enumerate().any(|(k, r)| k != i && !r[p].is_zero()) {
            return None;
        }
    }
    Some(pivots)
}
