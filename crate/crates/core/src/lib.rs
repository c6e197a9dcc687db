//! Minimum path covers with one fixed endpoint on interval graphs.

pub mod bipartite;
pub mod cover;
pub mod diff;
pub mod engine;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod verify;

pub use cover::{Path, PathCover, PathKind};
pub use engine::{min_path_cover, solve_1pc, solve_1pc_traced, Engine, TraceEvent};
pub use error::{BipartiteError, FormatError, GraphError, InputError, InternalInvariantViolation, OracleError};
pub use graph::{build_ordering, validate_ordering, Interval, IntervalModel, OrderedGraph, VertexId};
pub use bipartite::{
    convexify, find_observation51_counterexample, hp_biconvex, hp_xconvex, onehp_biconvex, onehp_xconvex,
    BipVertex, BipartiteConvexGraph, Convexity, Side,
};
