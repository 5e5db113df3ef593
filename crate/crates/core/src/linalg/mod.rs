//! Exact linear algebra over `Q` and `Z`.
//!
//! Small problems use fraction-free Gauss-Jordan elimination; large ones go
//! through certified multi-modular elimination. Both return the canonical RREF,
//! so results never depend on the route taken.

mod bareiss;
mod hnf;
mod matrix;
mod modp;
mod multimodular;
mod subspace;

pub use hnf::{hnf, integer_kernel, lattice_equal};
pub use matrix::{clear_denominators, IntMatrix, Matrix, RatMatrix};
pub use subspace::SubspaceBasis;

/// Elimination strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    /// Fraction-free for small inputs, multi-modular otherwise.
    #[default]
    Auto,
    FractionFree,
    MultiModular,
}

const SMALL_ENTRIES: usize = 2048;

fn resolve(m: &IntMatrix, method: Method) -> Method {
    match method {
        Method::Auto if m.rows() * m.cols() <= SMALL_ENTRIES => Method::FractionFree,
        Method::Auto => Method::MultiModular,
        other => other,
    }
}

/// RREF basis of `{v : M v = 0}`.
pub fn kernel_basis(m: &RatMatrix) -> SubspaceBasis {
    kernel_basis_int(&m.clear_row_denominators(), Method::Auto)
}

/// RREF basis of the right kernel of an integer matrix.
pub fn kernel_basis_int(m: &IntMatrix, method: Method) -> SubspaceBasis {
    let rows = match resolve(m, method) {
        Method::FractionFree => bareiss::kernel(m),
        _ => multimodular::solve(m, multimodular::Target::Kernel),
    };
    SubspaceBasis::from_rref(m.cols(), rows)
}

/// RREF basis of the row space.
pub fn row_space(m: &RatMatrix) -> SubspaceBasis {
    row_space_int(&m.clear_row_denominators(), Method::Auto)
}

pub fn row_space_int(m: &IntMatrix, method: Method) -> SubspaceBasis {
    let rows = match resolve(m, method) {
        Method::FractionFree => bareiss::row_space(m),
        _ => multimodular::solve(m, multimodular::Target::RowSpace),
    };
    SubspaceBasis::from_rref(m.cols(), rows)
}

/// Row rank over `Q`.
pub fn rank(m: &RatMatrix) -> usize {
    row_space(m).dim()
}

pub fn rank_int(m: &IntMatrix, method: Method) -> usize {
    row_space_int(m, method).dim()
}

/// True iff both bases span the same subspace.
pub fn span_equal(a: &SubspaceBasis, b: &SubspaceBasis) -> bool {
    assert_eq!(a.ambient_dim(), b.ambient_dim(), "subspaces live in different ambient spaces");
    a == b
}

/// Rank of an integer matrix modulo a prime below `2^62`; a lower bound for the rank over `Q`.
pub fn rank_mod_prime(m: &IntMatrix, index: usize) -> usize {
    let mt = modp::Mont::new(modp::prime(index));
    let mut a: Vec<u64> = m.iter_rows().flatten().map(|x| mt.from_bigint(x)).collect();
    modp::rref(&mt, &mut a, m.rows(), m.cols()).len()
}
