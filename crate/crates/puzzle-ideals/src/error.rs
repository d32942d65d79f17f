//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A linear system over F3 has no solution.
    #[error("inconsistent linear system")]
    Inconsistent,
    /// A polynomial was evaluated at a point that does not bind one of its
    /// variables.
    #[error("evaluation point does not bind variable x{0}")]
    MissingVariable(u32),
    /// A partition does not fit in the requested `k x (n-k)` box.
    #[error("partition does not fit in the {rows} x {cols} box")]
    DoesNotFit { rows: usize, cols: usize },
    /// A boundary word has the wrong length or weight, or too many sides are
    /// left free.
    #[error("bad boundary: {0}")]
    BadBoundary(String),
    /// A piece admits no tiling by atomic pieces.
    #[error("piece admits no atomic refinement")]
    NotRefinable,
    /// A custom piece set failed the separability check required by the
    /// implying-polynomial construction.
    #[error("piece set is not separable: {0}")]
    NotSeparable(String),
    /// An elimination was requested from a basis whose order does not place
    /// the retained block last.
    #[error("basis order does not retain the requested block")]
    WrongOrder,
    /// A variety point does not describe a valid tiling; this signals a bug
    /// in a backend, not bad user input.
    #[error("invalid variety point: {0}")]
    InvalidPoint(String),
    /// The Groebner backend refused an instance above its size guard.
    #[error("groebner backend refused n={n} (limit {limit}; set PUZZLE_MAX_GB_N to override)")]
    BackendInfeasible { n: usize, limit: usize },
    /// Malformed textual input (polynomials, words, piece-set files).
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
