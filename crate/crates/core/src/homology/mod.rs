//! Chains on pairs of cusps, the maps `Theta_1` and `Theta_2`, and the
//! transverse-closedness test that detects vanishing in `H_1(P2)`.

mod chains;
mod lattices;
mod theta;

pub use chains::{diagonal_key, CuspChain, Edge, EdgeChain, EdgeClass, Vertex};
pub use lattices::{order_one_analogue, six_elements, triangle36_kernel, OrderOneReport, TriangleKernelReport};
pub use theta::{
    boundary_chain, subdivision_check, subdivision_element, subdivision_residual, theta1, theta2_decompose,
    theta2_vanishes, triangle_edges, triangle_vertices, Face,
};

#[cfg(test)]
mod tests;
