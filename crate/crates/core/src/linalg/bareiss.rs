//! Fraction-free Gauss-Jordan elimination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Result of fraction-free Gauss-Jordan elimination.
///
/// The first `pivots.len()` rows of `reduced` form the RREF scaled by `scale`:
/// each pivot entry equals `scale` and every other entry of a pivot column is zero.
pub(crate) struct Reduced {
    pub pivots: Vec<usize>,
    pub reduced: IntMatrix,
    pub scale: BigInt,
}

pub(crate) fn gauss_jordan(m: &IntMatrix) -> Reduced {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
        let Some(best) = best else { continue };
        a.swap(r, best);
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        let p = pivot_row[c].clone();
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let f = row[c].clone();
            for j in 0..cols {
                let x = &row[j];
                let y = &pivot_row[j];
                if x.is_zero() && (f.is_zero() || y.is_zero()) {
                    continue;
                }
                let v = &p * x - &f * y;
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = p;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    let reduced = IntMatrix::from_rows(cols, a);
    Reduced { pivots, reduced, scale: prev }
}

/// RREF rows of the row space.
pub(crate) fn row_space(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    let red = gauss_jordan(m);
    red.reduced
        .iter_rows()
        .map(|row| row.iter().map(|x| BigRational::new(x.clone(), red.scale.clone())).collect())
        .collect()
}

/// RREF rows of the right kernel.
///
/// Eliminating with the column order reversed makes the free-column kernel
/// vectors come out already in reduced row echelon form.
pub(crate) fn kernel(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = m.cols();
    let rev: Vec<usize> = (0..n).rev().collect();
    let red = gauss_jordan(&m.select_columns(&rev));
    let mut is_pivot = vec![false; n];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..n).rev().filter(|&f| !is_pivot[f]) {
        let mut v = vec![BigRational::zero(); n];
        v[n - 1 - f] = BigRational::one();
        for (i, &p) in red.pivots.iter().enumerate() {
            let x = red.reduced.get(i, f);
            if !x.is_zero() {
                v[n - 1 - p] = BigRational::new(-x.clone(), red.scale.clone());
            }
        }
        out.push(v);
    }
    out
}
