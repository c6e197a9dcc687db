use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("interval {id} has left endpoint {left} greater than right endpoint {right}")]
    InvertedInterval { id: String, left: String, right: String },
    #[error("duplicate interval id {0}")]
    DuplicateId(String),
    #[error("claimed ordering is not a permutation: {0}")]
    NotAPermutation(String),
    /// `v_i v_k` is an edge but `v_j v_k` is not, with `i < j < k` (1-based positions).
    #[error("ordering violation: {i} < {j} < {k}, edge {i}-{k} present but {j}-{k} missing")]
    OrderingViolation { i: usize, j: usize, k: usize },
}

/// Raised when the engine's own bookkeeping breaks; never a property of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("internal invariant violated at step {step}: {detail}")]
pub struct InternalInvariantViolation {
    pub step: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, oracle bound is {bound}")]
    InstanceTooLarge { n: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BipartiteError {
    #[error("neighbourhood of {vertex} is not consecutive in the {side} ordering")]
    ConvexityViolation { vertex: String, side: &'static str },
    #[error("start vertex {0} is not in Y")]
    StartNotInY(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("invalid bipartite graph: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

/// Anything that can go wrong turning a file into an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bipartite(#[from] BipartiteError),
}

impl InputError {
    /// Whether the text was readable but describes no valid ordered instance.
    pub fn is_invalid_ordering(&self) -> bool {
        matches!(
            self,
            InputError::Graph(GraphError::OrderingViolation { .. } | GraphError::NotAPermutation(_))
                | InputError::Bipartite(BipartiteError::ConvexityViolation { .. })
        )
    }
}
