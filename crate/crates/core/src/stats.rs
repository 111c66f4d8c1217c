//! Work counters reported alongside algorithm results.

/// Counters an algorithm fills in while it runs. Shortest-path searches are
/// counted on the graph itself (`MultimodeGraph::searches_performed`).
#[derive(Debug, Clone, Default)]
pub struct AlgoStats {
    /// Nodes expanded by recursive procedures.
    pub recursion_nodes: u64,
    /// Dimensions (rows, inner, cols) of each matrix product.
    pub matmul_dims: Vec<(usize, usize, usize)>,
    /// Largest seed-ball size met by the pair subroutine.
    pub max_seed_ball: usize,
}

impl AlgoStats {
    pub fn new() -> AlgoStats {
        AlgoStats::default()
    }
}
