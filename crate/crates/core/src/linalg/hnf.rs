//! Hermite normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Echelonizes `a` by unimodular row operations on the first `ncols` columns.
/// Returns the number of pivot rows; rows after them vanish on those columns.
fn echelon(a: &mut [Vec<BigInt>], ncols: usize, reduce_above: bool) -> usize {
    let rows = a.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (top, bottom) = a.split_at_mut(i);
                sub_multiple(&mut bottom[0], &top[r], &q);
                if !bottom[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            if reduce_above {
                for i in 0..r {
                    let q = a[i][c].div_floor(&a[r][c]);
                    if !q.is_zero() {
                        let (top, bottom) = a.split_at_mut(r);
                        sub_multiple(&mut top[i], &bottom[0], &q);
                    }
                }
            }
            r += 1;
        }
    }
    r
}

fn sub_multiple(row: &mut [BigInt], pivot: &[BigInt], q: &BigInt) {
    for (x, y) in row.iter_mut().zip(pivot) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Row Hermite normal form: nonzero rows only, positive pivots, entries above
/// each pivot reduced into `[0, pivot)`. Two matrices generate the same row
/// lattice exactly when their Hermite forms coincide.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let mut a = m.to_rows();
    let r = echelon(&mut a, m.cols(), true);
    a.truncate(r);
    IntMatrix::from_rows(m.cols(), a)
}

/// A basis (in Hermite normal form) of the lattice `{x in Z^n : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let k = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..k).map(|i| m.get(i, j).clone()).collect();
            row.extend((0..n).map(|t| BigInt::from((t == j) as i64)));
            row
        })
        .collect();
    let r = echelon(&mut a, k, false);
    let basis: Vec<Vec<BigInt>> = a[r..].iter().map(|row| row[k..].to_vec()).collect();
    hnf(&IntMatrix::from_rows(n, basis))
}

/// True iff the rows of `a` and `b` generate the same sublattice of `Z^n`.
pub fn lattice_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.cols(), b.cols(), "lattices live in different ambient spaces");
    hnf(a) == hnf(b)
}
