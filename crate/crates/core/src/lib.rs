//! Exact solvers for Dominating Set, Vertex Cover and 3-Coloring on graphs
//! that come with a treedepth decomposition.
//!
//! Vertices are 1-indexed. Ancestors on a root path are addressed by their
//! depth position (0 = root), so sets of ancestors are `u64` bitmasks.

pub mod assignment;
pub mod baseline;
pub mod branch;
pub mod classic;
pub mod cost;
pub mod error;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod hybrid;
pub mod oracle;
pub mod partition;
pub mod stats;
pub mod table;
pub mod treedepth;

pub use baseline::{color3_branch, vc_branch, vc_branch_with};
pub use branch::{solve_branch, solve_branch_report};
pub use classic::{domset_classic_dp, domset_classic_dp_report};
pub use cost::Cost;
pub use error::{GadgetError, GraphError, ParseError, SolveError, TableError};
pub use graph::{
    closed_neighborhood, glue, parse_graph, write_graph, BoundariedGraph, Graph, GraphBuilder,
};
pub use hybrid::{solve_hybrid, solve_hybrid_report, ConvMode};
pub use oracle::{oracle_3col, oracle_domset, oracle_vc};
pub use stats::{Algorithm, Answer, BoundAudit, SolveReport, SolveStats};
pub use table::CostTable;
pub use treedepth::{
    dfs_decomposition, exact_treedepth_small, parse_decomposition, root_path, validate,
    write_decomposition, TreedepthDecomposition, Violation,
};
