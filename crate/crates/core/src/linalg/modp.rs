//! Arithmetic and elimination modulo word-sized primes.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Montgomery arithmetic modulo an odd prime `p < 2^63`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Mont {
    pub p: u64,
    neg_inv: u64,
    r2: u64,
}

// Conversions need the modulus, hence `&self`.
#[allow(clippy::wrong_self_convention)]
impl Mont {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < 1 << 63);
        let mut inv: u64 = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Mont { p, neg_inv: inv.wrapping_neg(), r2 }
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn to_mont(&self, x: u64) -> u64 {
        self.mul(x % self.p, self.r2)
    }

    pub fn from_mont(&self, x: u64) -> u64 {
        self.redc(x as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element in Montgomery form.
    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    pub fn from_i128(&self, x: i128) -> u64 {
        self.to_mont(x.rem_euclid(self.p as i128) as u64)
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        match x.to_i128() {
            Some(v) => self.from_i128(v),
            None => self.to_mont(x.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()),
        }
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &b in &BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The `i`-th prime below `2^62`, counting downwards.
pub(crate) fn prime(i: usize) -> u64 {
    static PRIMES: OnceLock<std::sync::Mutex<Vec<u64>>> = OnceLock::new();
    let cell = PRIMES.get_or_init(|| std::sync::Mutex::new(Vec::new()));
    let mut list = cell.lock().unwrap();
    while list.len() <= i {
        let mut c = list.last().map_or((1u64 << 62) - 1, |&p| p - 2);
        while !is_prime_u64(c) {
            c -= 2;
        }
        list.push(c);
    }
    list[i]
}

/// In-place Gauss-Jordan elimination of a dense `rows x cols` matrix in Montgomery form.
///
/// Returns the pivot columns; the first `pivots.len()` rows then hold the RREF.
pub(crate) fn rref(m: &Mont, a: &mut [u64], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
        if i != r {
            for j in c..cols {
                a.swap(i * cols + j, r * cols + j);
            }
        }
        let inv = m.inv(a[r * cols + c]);
        for x in &mut a[r * cols + c..(r + 1) * cols] {
            *x = m.mul(*x, inv);
        }
        let (head, tail) = a.split_at_mut((r + 1) * cols);
        let prow = &head[r * cols + c..];
        for row in tail.chunks_exact_mut(cols) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(prow) {
                *x = m.sub(*x, m.mul(f, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    for k in (0..pivots.len()).rev() {
        let c = pivots[k];
        let (head, tail) = a.split_at_mut(k * cols);
        let prow = &tail[c..cols];
        for row in head.chunks_exact_mut(cols) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[c..].iter_mut().zip(prow) {
                *x = m.sub(*x, m.mul(f, y));
            }
        }
    }
    pivots
}
