//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by instance construction, solvers, reductions, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix input is not square.
    #[error("matrix is not square: row {row} has {found} entries, expected {expected}")]
    NonSquare {
        row: usize,
        found: usize,
        expected: usize,
    },

    /// Matrix entry is negative.
    #[error("negative distance {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    /// Matrix entry is NaN or infinite.
    #[error("non-finite distance at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    /// Matrix is not symmetric; reports the first offending pair.
    #[error("asymmetric entries at ({row}, {col}): d[{row}][{col}] != d[{col}][{row}]")]
    AsymmetricEntry { row: usize, col: usize },

    /// Matrix diagonal entry is nonzero.
    #[error("nonzero diagonal entry {value} at index {index}")]
    NonzeroDiagonal { index: usize, value: f64 },

    /// Fewer than two points were supplied.
    #[error("instance needs at least 2 points, got {got}")]
    TooFewPoints { got: usize },

    /// A planar coordinate is NaN or infinite.
    #[error("non-finite coordinate for point {index}")]
    NonFiniteCoordinate { index: usize },

    /// The subset is too small for the requested neighbor count.
    #[error("subset of size {size} is too small: need at least {need} points")]
    SubsetTooSmall { size: usize, need: usize },

    /// The queried point is not a member of the subset.
    #[error("point {point} is not in the subset")]
    PointNotInSubset { point: usize },

    /// A point index exceeds the instance size.
    #[error("index {index} out of range for instance with {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    /// The subset contains a repeated index.
    #[error("duplicate index {index} in subset")]
    DuplicateIndex { index: usize },

    /// Solver parameters violate their constraints.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The instance has fewer points than the solver needs.
    #[error("instance with {n} points is too small: need at least {need}")]
    InstanceTooSmall { n: usize, need: usize },

    /// Every point is already selected; no extension candidate exists.
    #[error("nothing to add: the subset already covers all points")]
    NothingToAdd,

    /// An enumeration would score more subsets than the budget allows.
    #[error("enumeration of {required} subsets exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    /// The graph has fewer than two vertices.
    #[error("graph with {n} vertices is too small: need at least 2")]
    GraphTooSmall { n: usize },

    /// An edge references a vertex as both endpoints.
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    /// An edge endpoint exceeds the vertex count.
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    /// A distance outside {1, 2} was found where a reduction image was required.
    #[error("not a reduction image: distance {value} at ({row}, {col}) is outside {{1, 2}}")]
    NotReductionImage { row: usize, col: usize, value: f64 },

    /// Solution cost differs from 2c, so the independent-set mapping does not apply.
    #[error("solution cost {cost} is not the required {expected}")]
    CostNot2c { cost: f64, expected: f64 },

    /// The empirical approximation bound was violated; this indicates a solver bug.
    #[error("approximation bound violated for {generator} (c={c}, k={k}): ratio {ratio} exceeds {bound}")]
    ApproximationBoundViolated {
        generator: String,
        c: usize,
        k: usize,
        ratio: f64,
        bound: f64,
    },

    /// A text file failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
