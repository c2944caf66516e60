use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Singular cubics come in two shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    /// c4 ≠ 0
    Node,
    /// c4 = 0
    Cusp,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular cubic ({kind:?}), c4 = {c4}")]
    Singular { kind: Singularity, c4: BigInt },

    #[error("incomplete factorization: unfactored cofactor {cofactor}")]
    IncompleteFactorization {
        cofactor: BigInt,
        partial: crate::arith::Factorization,
    },

    #[error("ceiling exceeded: {0}")]
    Ceiling(String),

    #[error("bad reduction at p = {p}")]
    BadReduction {
        p: u64,
        report: Box<crate::curves::ReductionReport>,
    },

    #[error("point is {0}-torsion")]
    PointIsTorsion(u64),

    #[error("not invertible, common factor of degree {degree}")]
    NotInvertible { degree: usize, factor: Vec<String> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    /// Budget and ceiling failures, as opposed to bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::IncompleteFactorization { .. } | Error::Ceiling(_))
    }
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
