//! Exact RREF computations through residues modulo many primes.
//!
//! Each prime gives an RREF over `F_p`; residues sharing the best pivot pattern
//! are combined by the Chinese remainder theorem and lifted by rational
//! reconstruction. A candidate is accepted only after an exact certificate:
//! the products that must vanish are shown to vanish modulo enough primes
//! that their known size bound forces them to be zero over the integers.
//! Since `rank_Q >= rank_p`, a certified candidate is the exact RREF.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{clear_denominators, IntMatrix};
use super::modp::{self, Mont};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Target {
    Kernel,
    RowSpace,
}

struct Source<'a> {
    m: &'a IntMatrix,
    small: Option<Vec<i128>>,
}

impl<'a> Source<'a> {
    fn new(m: &'a IntMatrix) -> Self {
        let small: Option<Vec<i128>> = m.iter_rows().flatten().map(|x| x.to_i128()).collect();
        Source { m, small }
    }

    fn reduce(&self, mt: &Mont, reversed: bool) -> Vec<u64> {
        let (rows, cols) = (self.m.rows(), self.m.cols());
        let mut out = vec![0u64; rows * cols];
        for i in 0..rows {
            for j in 0..cols {
                let jj = if reversed { cols - 1 - j } else { j };
                out[i * cols + jj] = match &self.small {
                    Some(s) => {
                        let v = s[i * cols + j];
                        if v == 0 {
                            0
                        } else {
                            mt.from_i128(v)
                        }
                    }
                    None => mt.from_bigint(self.m.get(i, j)),
                };
            }
        }
        out
    }
}

struct ModResult {
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
}

fn solve_mod_p(src: &Source, target: Target, mt: &Mont) -> ModResult {
    let (rows, cols) = (src.m.rows(), src.m.cols());
    match target {
        Target::RowSpace => {
            let mut a = src.reduce(mt, false);
            let pivots = modp::rref(mt, &mut a, rows, cols);
            let out = (0..pivots.len())
                .map(|i| a[i * cols..(i + 1) * cols].iter().map(|&x| mt.from_mont(x)).collect())
                .collect();
            ModResult { pivots, rows: out }
        }
        Target::Kernel => {
            let mut a = src.reduce(mt, true);
            let piv_rev = modp::rref(mt, &mut a, rows, cols);
            let mut is_pivot = vec![false; cols];
            for &p in &piv_rev {
                is_pivot[p] = true;
            }
            let mut pivots = Vec::new();
            let mut out = Vec::new();
            for f in (0..cols).rev().filter(|&f| !is_pivot[f]) {
                let mut v = vec![0u64; cols];
                v[cols - 1 - f] = 1;
                for (i, &p) in piv_rev.iter().enumerate() {
                    let x = a[i * cols + f];
                    if x != 0 {
                        v[cols - 1 - p] = mt.from_mont(mt.neg(x));
                    }
                }
                pivots.push(cols - 1 - f);
                out.push(v);
            }
            ModResult { pivots, rows: out }
        }
    }
}

fn compare_patterns(target: Target, a: &[usize], b: &[usize]) -> Ordering {
    let by_len = match target {
        Target::Kernel => b.len().cmp(&a.len()),
        Target::RowSpace => a.len().cmp(&b.len()),
    };
    by_len.then_with(|| b.cmp(a))
}

struct Accumulator {
    pivots: Vec<usize>,
    residues: Vec<Vec<BigInt>>,
    modulus: BigInt,
}

impl Accumulator {
    fn new(res: ModResult, p: u64) -> Self {
        let residues = res.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Accumulator { pivots: res.pivots, residues, modulus: BigInt::from(p) }
    }

    fn combine(&mut self, res: &ModResult, p: u64) {
        let pb = BigInt::from(p);
        let n_mod = self.modulus.mod_floor(&pb).to_u64().unwrap();
        let inv = modinv(n_mod, p);
        for (acc_row, new_row) in self.residues.iter_mut().zip(&res.rows) {
            for (j, x) in acc_row.iter_mut().enumerate() {
                if self.pivots.binary_search(&j).is_ok() {
                    continue;
                }
                let r = new_row[j];
                let xp = if x.is_zero() { 0 } else { x.mod_floor(&pb).to_u64().unwrap() };
                let diff = if r >= xp { r - xp } else { r + p - xp };
                let t = ((diff as u128 * inv as u128) % p as u128) as u64;
                if t != 0 {
                    *x += &self.modulus * t;
                }
            }
        }
        self.modulus *= p;
    }

    fn reconstruct(&self) -> Option<Vec<Vec<BigRational>>> {
        let bound = (&self.modulus >> 1u32).sqrt();
        let half = &self.modulus >> 1u32;
        let mut out = Vec::with_capacity(self.residues.len());
        for (r, row) in self.residues.iter().enumerate() {
            let mut den = BigInt::one();
            let mut v = Vec::with_capacity(row.len());
            for (j, x) in row.iter().enumerate() {
                if self.pivots.binary_search(&j).is_ok() {
                    v.push(if j == self.pivots[r] { BigRational::one() } else { BigRational::zero() });
                    continue;
                }
                if x.is_zero() {
                    v.push(BigRational::zero());
                    continue;
                }
                let t = (x * &den).mod_floor(&self.modulus);
                let sym = if t > half { &t - &self.modulus } else { t.clone() };
                if sym.abs() <= bound {
                    v.push(BigRational::new(sym, den.clone()));
                } else {
                    let (a, b) = ratrecon(&t, &self.modulus, &bound)?;
                    v.push(BigRational::new(a, &b * &den));
                    den *= b;
                }
            }
            out.push(v);
        }
        Some(out)
    }
}

fn modinv(a: u64, p: u64) -> u64 {
    let mt = Mont::new(p);
    mt.from_mont(mt.inv(mt.to_mont(a)))
}

fn ratrecon(u: &BigInt, n: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (n.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(if t1.is_negative() { (-r1, -t1) } else { (r1, t1) })
}

fn residue(mt: &Mont, q: &BigRational) -> Option<u64> {
    let d = mt.from_bigint(q.denom());
    (d != 0).then(|| mt.from_mont(mt.mul(mt.from_bigint(q.numer()), mt.inv(d))))
}

fn matches(cand: &[Vec<BigRational>], res: &ModResult, mt: &Mont) -> bool {
    cand.iter().zip(&res.rows).all(|(c, r)| c.iter().zip(r).all(|(q, &x)| residue(mt, q) == Some(x)))
}

/// Number of primes from the prime table whose product exceeds `2^bits`.
fn primes_for_bits(bits: u64) -> usize {
    (bits as usize + 1).div_ceil(61).max(1)
}

/// Checks `M z = 0` over the integers for every row `z` of `zs`.
fn certify_kernel(src: &Source, zs: &[Vec<BigInt>]) -> bool {
    if zs.is_empty() {
        return true;
    }
    let (rows, cols) = (src.m.rows(), src.m.cols());
    let row_norm = src.m.iter_rows().map(|r| r.iter().map(|x| x.abs()).sum::<BigInt>()).max().unwrap_or_default();
    let zmax = zs.iter().flatten().map(|x| x.abs()).max().unwrap_or_default();
    let bits = (row_norm * zmax).bits();
    for k in 0..primes_for_bits(bits) {
        let mt = Mont::new(modp::prime(k));
        let a = src.reduce(&mt, false);
        let zm: Vec<Vec<u64>> = zs.iter().map(|z| z.iter().map(|x| mt.from_bigint(x)).collect()).collect();
        for i in 0..rows {
            let row = &a[i * cols..(i + 1) * cols];
            for z in &zm {
                let mut acc = 0u64;
                for (&x, &y) in row.iter().zip(z) {
                    if x != 0 && y != 0 {
                        acc = mt.add(acc, mt.mul(x, y));
                    }
                }
                if acc != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Checks that every input row lies in the span of the RREF candidate.
fn certify_row_space(src: &Source, cand: &[Vec<BigRational>], pivots: &[usize]) -> bool {
    let cols = src.m.cols();
    let l = cand.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ys: Vec<Vec<BigInt>> = cand.iter().map(|r| r.iter().map(|x| x.numer() * (&l / x.denom())).collect()).collect();
    let smax = src.m.iter_rows().flatten().map(|x| x.abs()).max().unwrap_or_default();
    let ymax = ys.iter().flatten().map(|x| x.abs()).max().unwrap_or_default();
    let bound = &smax * (&l + BigInt::from(cand.len()) * ymax);
    for k in 0..primes_for_bits(bound.bits()) {
        let mt = Mont::new(modp::prime(k));
        let a = src.reduce(&mt, false);
        let lm = mt.from_bigint(&l);
        let ym: Vec<Vec<u64>> = ys.iter().map(|y| y.iter().map(|x| mt.from_bigint(x)).collect()).collect();
        for s in a.chunks_exact(cols) {
            let mut resid: Vec<u64> = s.iter().map(|&x| mt.mul(x, lm)).collect();
            for (y, &p) in ym.iter().zip(pivots) {
                let c = s[p];
                if c == 0 {
                    continue;
                }
                for (r, &yv) in resid.iter_mut().zip(y) {
                    if yv != 0 {
                        *r = mt.sub(*r, mt.mul(c, yv));
                    }
                }
            }
            if resid.iter().any(|&x| x != 0) {
                return false;
            }
        }
    }
    true
}

/// Exact RREF of the kernel or row space of an integer matrix.
pub(crate) fn solve(m: &IntMatrix, target: Target) -> Vec<Vec<BigRational>> {
    let cols = m.cols();
    let src = Source::new(m);
    let mut acc: Option<Accumulator> = None;
    let mut candidate: Option<Vec<Vec<BigRational>>> = None;
    let mut idx = 0;
    loop {
        let p = modp::prime(idx);
        idx += 1;
        let mt = Mont::new(p);
        let res = solve_mod_p(&src, target, &mt);
        let full = match target {
            Target::Kernel => res.pivots.is_empty(),
            Target::RowSpace => res.pivots.len() == cols,
        };
        if full {
            return match target {
                Target::Kernel => Vec::new(),
                Target::RowSpace => super::subspace::SubspaceBasis::full(cols).into_rows(),
            };
        }
        match acc.as_mut() {
            None => acc = Some(Accumulator::new(res, p)),
            Some(a) => match compare_patterns(target, &res.pivots, &a.pivots) {
                Ordering::Greater => acc = Some(Accumulator::new(res, p)),
                Ordering::Less => continue,
                Ordering::Equal => {
                    if let Some(c) = candidate.take() {
                        if matches(&c, &res, &mt) && certify(&src, target, &c, &a.pivots) {
                            return c;
                        }
                    }
                    a.combine(&res, p);
                }
            },
        }
        candidate = acc.as_ref().unwrap().reconstruct();
    }
}

fn certify(src: &Source, target: Target, cand: &[Vec<BigRational>], pivots: &[usize]) -> bool {
    match target {
        Target::Kernel => {
            let zs: Vec<Vec<BigInt>> = cand.iter().map(|r| clear_denominators(r)).collect();
            certify_kernel(src, &zs)
        }
        Target::RowSpace => certify_row_space(src, cand, pivots),
    }
}
