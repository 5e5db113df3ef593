//! `PSL2(Z)`, its cusps, and the Farey graph on them.

mod cusp;
mod graph;
mod psl2;

pub use cusp::Cusp;
pub use graph::{
    common_neighbours, cusp_distance, cusp_height, cusp_path, cusp_region, edge_matrix, is_chain, matrix_to,
    reverse_chain, Region,
};
pub use psl2::Psl2;
