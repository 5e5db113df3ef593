//! Polynomials of bounded degree and the weight-`w` action of `PSL2(Z)` on them.

mod matrices;
mod pairing;
mod poly;

pub use matrices::{act1_matrix, act2_matrix, parity_indices, ActionMatrix, Parity};
pub use pairing::{dim_cusp_forms, dim_w_oracle, haberland_pairing};
pub use poly::PolyVec;

#[cfg(test)]
mod tests;
