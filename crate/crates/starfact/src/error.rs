use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {reason}")]
    InvalidPermutation { reason: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid star transposition symbol {symbol} for degree {degree}")]
    InvalidSymbol { symbol: usize, degree: usize },

    #[error("invalid cycle type: {reason}")]
    InvalidCycleType { reason: String },

    #[error("guard exceeded: {candidates} candidates over budget {guard}")]
    GuardExceeded { candidates: u128, guard: u64 },

    #[error("not a minimal transitive factorization: {check} check failed")]
    NotMinimalTransitive { check: &'static str },

    #[error("invalid word: {reason}")]
    InvalidWord { reason: String },

    #[error("invalid anchors: {reason}")]
    InvalidAnchors { reason: String },

    #[error("invalid tree: {reason}")]
    InvalidTree { reason: String },
}
