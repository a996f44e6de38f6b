use thiserror::Error;

use crate::coalg::Side;

/// Errors raised by the computation engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the supported range 2..2^32")]
    NotPrime(u64),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("window {window} is not saturated around vertex {vertex} (margin {margin})")]
    WindowUnsaturated {
        vertex: usize,
        window: usize,
        margin: usize,
    },

    #[error("side mismatch: {0} vs {1}")]
    SideMismatch(Side, Side),

    #[error("comodules are defined over different coalgebras or fields")]
    CoalgebraMismatch,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("map for arrow `{arrow}` is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    Shape {
        arrow: String,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },

    #[error("nonzero composite along the path {0}, which is longer than the truncation length")]
    NotNilpotent(String),

    #[error(
        "not a subcomodule: the subspace at vertex {0} is not stable under the structure maps"
    )]
    NotSubcomodule(usize),

    #[error("field GF({p}) is too small: radical computation needs p > {needed}; rerun with a larger --field")]
    FieldTooSmall { p: u32, needed: usize },

    #[error("decomposition stuck: no Fitting split found for a non-local piece with dims {dims} (dim End = {end_dim})")]
    DecompositionStuck { dims: String, end_dim: usize },

    #[error(
        "Top(E(S_{vertex})) is not simple (top dims {dims}); the coalgebra is not qcF on this side"
    )]
    TopNotSimple { vertex: usize, dims: String },

    #[error("soc(P(S_{vertex})) is not simple (socle dims {dims})")]
    SocleNotSimple { vertex: usize, dims: String },

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::InvalidPresentation(_)
                | Error::SideMismatch(..)
                | Error::CoalgebraMismatch
                | Error::UnknownVertex(_)
                | Error::UnknownArrow(_)
                | Error::Shape { .. }
                | Error::NotNilpotent(_)
                | Error::Parse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
