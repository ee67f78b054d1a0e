use thiserror::Error;

/// Errors produced by layout construction, counting and threshold search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A vertex lies on an edge or on a counting line within tolerance.
    #[error("degenerate layout: {0}")]
    DegenerateLayout(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The larger part must sit on the inner circle / center line (m >= n).
    #[error("argument order violated: expected {expected}, got m={m}, n={n}")]
    ArgumentOrder {
        m: usize,
        n: usize,
        expected: &'static str,
    },

    #[error("no chord realizes the split ({k}, {l})")]
    InfeasibleSplit { k: usize, l: usize },

    #[error("balanced-line predicate is not monotone: true at r={r_true}, false at r={r_false}")]
    NotMonotone { r_true: f64, r_false: f64 },

    /// No radius is balanced for this rotation (some line is unbalanced even as r -> 0).
    #[error("no minimal-crossing radius for this rotation: predicate false at r={r}")]
    NoBalancedRadius { r: f64 },

    #[error("bisection did not converge after {iterations} iterations (bracket width {width})")]
    NoConvergence { iterations: usize, width: f64 },

    #[error("line class C_{j} is inconsistent: splits {first:?} and {other:?}")]
    ClassInconsistent {
        j: usize,
        first: (usize, usize),
        other: (usize, usize),
    },

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("layout file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
