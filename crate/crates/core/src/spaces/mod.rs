//! Annihilators of the ideals in the polynomial representations, the
//! Eisenstein part `E`, the section of the diagonal restriction and the map `Phi_S`.

mod cache;
mod report;
mod table;

use std::collections::HashMap;
use std::sync::atomic::Ordering;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::action::{parity_indices, Parity, PolyVec};
use crate::algebra::{GroupAlgebraElement, Ideal};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis_int, rank, IntMatrix, Method, RatMatrix, SubspaceBasis};

pub use cache::{BasisCache, Stats, StatsSnapshot, CACHE_ENV};
pub use report::{basis_report, table_csv, table_csv_header, BasisReport, Coefficient};
pub use table::{reference_row, TableRow, REFERENCE_TABLE};

/// Which annihilator to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceRequest {
    pub w1: usize,
    pub w2: usize,
    pub ideal: Ideal,
    pub parity: Parity,
}

impl SpaceRequest {
    pub fn new(w1: usize, w2: usize, ideal: Ideal, parity: Parity) -> Result<Self> {
        for w in [w1, w2] {
            if w % 2 == 1 {
                return Err(Error::OddWeight(w as i64));
            }
        }
        if ideal.order() == 1 && w2 != 0 {
            return Err(Error::InvalidRequest(format!("{ideal} acts on one variable; w2 must be 0")));
        }
        Ok(SpaceRequest { w1, w2, ideal, parity })
    }

    pub fn ambient_dim(&self) -> usize {
        (self.w1 + 1) * (self.w2 + 1)
    }
}

/// The matrix of `Phi_S` on a basis of `W`, with its rank and the gap `dim W - dim E`.
#[derive(Clone, Debug)]
pub struct PhiS {
    pub w1: usize,
    pub w2: usize,
    pub parity: Parity,
    /// `(dim W_{w1} - 1)(dim W_{w2} - 1)` rows, one column per basis vector of `W`.
    pub matrix: RatMatrix,
    pub rank: usize,
    pub gap: usize,
}

/// Computes spaces with an in-memory memo and an optional disk cache.
#[derive(Debug, Default)]
pub struct Engine {
    cache: Option<BasisCache>,
    memo: Mutex<HashMap<SpaceRequest, SubspaceBasis>>,
    stats: Stats,
    method: Method,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(cache: Option<BasisCache>) -> Self {
        Engine { cache, ..Self::default() }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn stats(&self) -> StatsSnapshot {
        self.stats.snapshot()
    }

    /// Common kernel of the ideal's generators, intersected with the parity subspace.
    pub fn annihilator(&self, req: &SpaceRequest) -> Result<SubspaceBasis> {
        let req = SpaceRequest::new(req.w1, req.w2, req.ideal, req.parity)?;
        if let Some(b) = self.memo.lock().unwrap().get(&req) {
            return Ok(b.clone());
        }
        let gens = req.ideal.generators();
        let key = BasisCache::key(&req, &gens);
        let cached = self.cache.as_ref().and_then(|c| c.load(&key));
        let basis = match cached {
            Some(b) if b.ambient_dim() == req.ambient_dim() => {
                self.stats.hits.fetch_add(1, Ordering::Relaxed);
                b
            }
            _ => {
                if self.cache.is_some() {
                    self.stats.misses.fetch_add(1, Ordering::Relaxed);
                }
                let b = self.compute(&req, &gens)?;
                if let Some(c) = &self.cache {
                    c.store(&key, &b)?;
                    self.stats.writes.fetch_add(1, Ordering::Relaxed);
                }
                b
            }
        };
        self.memo.lock().unwrap().insert(req, basis.clone());
        Ok(basis)
    }

    fn compute(&self, req: &SpaceRequest, gens: &[GroupAlgebraElement]) -> Result<SubspaceBasis> {
        self.stats.kernels.fetch_add(1, Ordering::Relaxed);
        let n = req.ambient_dim();
        let cols = parity_indices(req.w1, req.w2, req.parity);
        if cols.is_empty() {
            return Ok(SubspaceBasis::zero(n));
        }
        let blocks = gens
            .iter()
            .map(|g| g.action_matrix_columns(req.w1, req.w2, &cols).map(|a| a.matrix))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&IntMatrix> = blocks.iter().collect();
        let stacked = IntMatrix::vstack(cols.len(), &refs);
        Ok(kernel_basis_int(&stacked, self.method).embed(n, &cols))
    }

    /// `W_w`: the period-relation space in one variable.
    pub fn w_single(&self, w: usize, parity: Parity) -> Result<SubspaceBasis> {
        self.annihilator(&SpaceRequest::new(w, 0, Ideal::I1, parity)?)
    }

    /// `W_{w1,w2}` (annihilator of `I2`).
    pub fn w_pair(&self, w1: usize, w2: usize, parity: Parity) -> Result<SubspaceBasis> {
        self.annihilator(&SpaceRequest::new(w1, w2, Ideal::I2, parity)?)
    }

    /// `V_{w1,w2}[I]` for a two-variable ideal.
    pub fn v_ideal(&self, w1: usize, w2: usize, ideal: Ideal, parity: Parity) -> Result<SubspaceBasis> {
        self.annihilator(&SpaceRequest::new(w1, w2, ideal, parity)?)
    }

    /// `W_{w1}(X1) (x) 1` inside `V_{w1,w2}`.
    pub fn w_left(&self, w1: usize, w2: usize, parity: Parity) -> Result<SubspaceBasis> {
        let w = self.w_single(w1, parity)?;
        let positions: Vec<usize> = (0..=w1).map(|m1| m1 * (w2 + 1)).collect();
        Ok(w.embed((w1 + 1) * (w2 + 1), &positions))
    }

    /// `X1^{w1} (x) W_{w2}(X2)` inside `V_{w1,w2}`; `w1` is even so parity is that of `m2`.
    pub fn w_right(&self, w1: usize, w2: usize, parity: Parity) -> Result<SubspaceBasis> {
        let w = self.w_single(w2, parity)?;
        let positions: Vec<usize> = (0..=w2).map(|m2| w1 * (w2 + 1) + m2).collect();
        Ok(w.embed((w1 + 1) * (w2 + 1), &positions))
    }

    /// `E_{w1,w2} = W_{w1} (x) 1 + V[I_D] + X1^{w1} (x) W_{w2}`.
    pub fn e_space(&self, w1: usize, w2: usize, parity: Parity) -> Result<SubspaceBasis> {
        let d = self.v_ideal(w1, w2, Ideal::ID, parity)?;
        Ok(self.w_left(w1, w2, parity)?.sum(&d).sum(&self.w_right(w1, w2, parity)?))
    }

    /// Annihilator of `I2^-`, checked against the image of `W` under `X2 -> -X2`.
    pub fn w_minus(&self, w1: usize, w2: usize) -> Result<SubspaceBasis> {
        let wm = self.annihilator(&SpaceRequest::new(w1, w2, Ideal::I2Minus, Parity::Both)?)?;
        let w = self.w_pair(w1, w2, Parity::Both)?;
        let image = reflect_basis(&w, w1, w2, false, true);
        if wm != image {
            return Err(Error::Verification(format!("W^- at ({w1},{w2}) differs from the (1,eps)-image of W")));
        }
        Ok(wm)
    }

    /// An antecedent of `p` under `Q -> Q(Z, Z)` lying in `V_{w1,w2}[I_D]`.
    ///
    /// Writing `P = sum C(w,m) a_m (-Z)^{w-m}`, the antecedent is
    /// `Q = sum C(w1,m1) C(w2,m2) a_{m1+m2} (-X1)^{w1-m1} (-X2)^{w2-m2}`.
    /// Both the membership and the restriction are checked before returning.
    pub fn section_id(&self, p: &PolyVec, w1: usize, w2: usize) -> Result<PolyVec> {
        let w = w1 + w2;
        if p.weights() != (w, 0) {
            return Err(Error::InvalidRequest(format!("expected a one-variable polynomial of weight {w}")));
        }
        if !self.w_single(w, Parity::Both)?.contains(p.coeffs()) {
            return Err(Error::Verification("not a period-relation polynomial".into()));
        }
        let sign = |e: usize| if e.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
        let binom = |n: usize, k: usize| BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)));
        let a: Vec<BigRational> = (0..=w).map(|m| p.coeff(w - m, 0) * sign(w - m) / binom(w, m)).collect();
        let mut q = PolyVec::zero(w1, w2);
        for m1 in 0..=w1 {
            for m2 in 0..=w2 {
                let c = binom(w1, m1) * binom(w2, m2) * &a[m1 + m2] * sign(w - m1 - m2);
                q.set(w1 - m1, w2 - m2, c);
            }
        }
        if &q.diagonal() != p {
            return Err(Error::Verification("section does not restrict to the input".into()));
        }
        if !self.v_ideal(w1, w2, Ideal::ID, Parity::Both)?.contains(q.coeffs()) {
            return Err(Error::Verification("section is not annihilated by I_D".into()));
        }
        Ok(q)
    }

    /// `Phi_S : P -> [(1,1)+(S,S)].P` into `(W_{w1}/E_{w1}) (x) (W_{w2}/E_{w2})`.
    ///
    /// The quotient `W_w / <1 - X^w>` is given the basis of RREF rows of `W_w` other
    /// than the one with pivot at the constant term.
    pub fn phi_s(&self, w1: usize, w2: usize, parity: Parity) -> Result<PhiS> {
        let w = self.w_pair(w1, w2, parity)?;
        let e = self.e_space(w1, w2, parity)?;
        let q1 = Quotient::new(&self.w_single(w1, Parity::Both)?, w1)?;
        let q2 = Quotient::new(&self.w_single(w2, Parity::Both)?, w2)?;
        let op = GroupAlgebraElement::parse("(1,1)+(S,S)", 2)?.action_matrix(w1, w2)?.matrix.to_rational();
        let target = q1.dim() * q2.dim();
        let mut matrix = RatMatrix::zeros(target, w.dim());
        for (j, p) in w.rows().iter().enumerate() {
            let image = op.mul_vec(p);
            let t = tensor_coordinates(&image, &q1, &q2, w2)?;
            for (i, x) in t.into_iter().enumerate() {
                matrix.set(i, j, x);
            }
        }
        let r = if target == 0 || w.dim() == 0 { 0 } else { rank(&matrix) };
        Ok(PhiS { w1, w2, parity, matrix, rank: r, gap: w.dim() - e.dim() })
    }

    /// The six dimension counts for one pair of weights.
    pub fn table_row(&self, w1: usize, w2: usize) -> Result<TableRow> {
        let mut dims = [0usize; 4];
        for (k, parity) in [Parity::Even, Parity::Odd].into_iter().enumerate() {
            let w = self.w_pair(w1, w2, parity)?;
            let e = self.e_space(w1, w2, parity)?;
            if !w.contains_subspace(&e) {
                return Err(Error::Verification(format!("E is not contained in W at ({w1},{w2}) {parity}")));
            }
            dims[2 * k] = w.dim();
            dims[2 * k + 1] = e.dim();
        }
        Ok(TableRow::new(w1, w2, dims[0], dims[1], dims[2], dims[3]))
    }
}

/// `P(X1, X2) -> P(+-X1, +-X2)` applied to a basis.
pub fn reflect_basis(b: &SubspaceBasis, w1: usize, w2: usize, s1: bool, s2: bool) -> SubspaceBasis {
    let rows: Vec<Vec<BigRational>> = b
        .rows()
        .iter()
        .map(|r| PolyVec::from_coeffs(w1, w2, r.clone()).expect("basis row fits").reflect(s1, s2).into_coeffs())
        .collect();
    SubspaceBasis::span(b.ambient_dim(), &rows)
}

/// Coordinates on `W_w / <1 - X^w>`.
struct Quotient {
    basis: SubspaceBasis,
    /// `(1 - X^w)[pivot_i]` for the rows kept in the quotient basis.
    shift: Vec<BigRational>,
}

impl Quotient {
    fn new(w: &SubspaceBasis, weight: usize) -> Result<Self> {
        if w.dim() == 0 {
            return Ok(Quotient { basis: w.clone(), shift: vec![] });
        }
        if w.pivots()[0] != 0 {
            return Err(Error::Verification(format!("W_{weight} has no row with a constant term")));
        }
        let shift = w.pivots()[1..]
            .iter()
            .map(|&p| if p == weight { -BigRational::one() } else { BigRational::zero() })
            .collect();
        Ok(Quotient { basis: w.clone(), shift })
    }

    fn dim(&self) -> usize {
        self.shift.len()
    }

    /// Maps RREF coordinates `alpha` to quotient coordinates `alpha_i - alpha_0 * shift_i`.
    fn project(&self, alpha: &[BigRational]) -> Vec<BigRational> {
        self.shift.iter().zip(&alpha[1..]).map(|(s, a)| a - &alpha[0] * s).collect()
    }
}

/// Coordinates of `v` in `W_{w1} (x) W_{w2}` projected to the tensor of quotients.
fn tensor_coordinates(v: &[BigRational], q1: &Quotient, q2: &Quotient, w2: usize) -> Result<Vec<BigRational>> {
    let n2 = w2 + 1;
    let (b1, b2) = (&q1.basis, &q2.basis);
    let t: Vec<Vec<BigRational>> =
        b1.pivots().iter().map(|&p1| b2.pivots().iter().map(|&p2| v[p1 * n2 + p2].clone()).collect()).collect();
    // Membership check: v must equal sum t_ij r_i (x) r_j exactly.
    let mut rebuilt = vec![BigRational::zero(); v.len()];
    for (i, r1) in b1.rows().iter().enumerate() {
        for (j, r2) in b2.rows().iter().enumerate() {
            if t[i][j].is_zero() {
                continue;
            }
            for (m1, x) in r1.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let tx = &t[i][j] * x;
                for (m2, y) in r2.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    rebuilt[m1 * n2 + m2] += &tx * y;
                }
            }
        }
    }
    if rebuilt != v {
        let bad = rebuilt.iter().zip(v).filter(|(a, b)| a != b).count();
        return Err(Error::Verification(format!("[(1,1)+(S,S)].P leaves W (x) W in {bad} coefficients")));
    }
    if q1.dim() == 0 || q2.dim() == 0 {
        return Ok(vec![]);
    }
    // Project the first index, then the second.
    let rows: Vec<Vec<BigRational>> = t.iter().map(|row| q2.project(row)).collect();
    let mut out = Vec::with_capacity(q1.dim() * q2.dim());
    let cols: Vec<Vec<BigRational>> =
        (0..q2.dim()).map(|j| q1.project(&rows.iter().map(|r| r[j].clone()).collect::<Vec<_>>())).collect();
    for i in 0..q1.dim() {
        for col in &cols {
            out.push(col[i].clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
