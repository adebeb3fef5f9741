//! Exact ω-coloring of square-free Berge graphs.
//!
//! The solver searches for a *good partition* `(K1, K2, K3, L, R)` of the
//! vertex set by enumerating frames (pairs of maximal cliques plus a
//! separated vertex pair) and refining each one, colors `G \ R` and `G \ L`
//! recursively, and merges the two colorings with bichromatic (Kempe) swaps
//! so that they agree on the cutset. Graphs without a good partition are
//! colored by an exact backtracking oracle.
//!
//! ```
//! use squarefree_berge::{generators, solver};
//!
//! let prism = generators::gen_prism(&generators::PrismSpec::new([2, 2, 2])).unwrap();
//! let result = solver::color(&prism).unwrap();
//! assert_eq!(result.colors_used, 3);
//! assert!(solver::verify_coloring(&prism, &result.coloring).is_valid());
//! ```

pub mod cli;
pub mod dimacs;
pub mod error;
pub mod generators;
pub mod graph;
pub mod partition;
pub mod recolor;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{Clique, Graph, VertexSet};
