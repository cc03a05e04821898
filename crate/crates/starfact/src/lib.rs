//! Minimal transitive star factorizations of permutations.
//!
//! A *star transposition* in the symmetric group on `{1, …, n}` is a
//! transposition `(1 i)` with `i ≥ 2`. A star factorization of a permutation
//! `π` is an ordered sequence of star transpositions whose product (rightmost
//! factor applied first) equals `π`; it is *transitive* when its factors
//! touch every symbol `2..=n`, and *minimal transitive* when additionally its
//! length is `n + m - 2`, where `m` is the number of cycles of `π` — the
//! least length any transitive factorization can have.
//!
//! The crate provides:
//!
//! * [`perm`] — permutations, cycle decompositions and star factorizations;
//! * [`verify`] — the structural characterization of minimal transitive star
//!   factorizations and an exhaustive brute-force search oracle;
//! * [`words`] — the bijection between minimal transitive star
//!   factorizations and pattern-restricted words paired with anchor symbols,
//!   plus word enumeration and uniform sampling;
//! * [`trees`] — the correspondence between those words and bicoloured plane
//!   rooted trees, with DOT export;
//! * [`count`] — exact closed-form counts in arbitrary precision;
//! * [`selftest`] — the cross-validation suite wired into the CLI.
//!
//! The search and enumeration inner loops are data-parallel. With the
//! default `parallel` feature they run on rayon; disabling the feature falls
//! back to the sequential implementations. Either way the results and their
//! order are identical.

pub mod count;
mod error;
pub mod perm;
pub mod selftest;
pub mod trees;
pub mod verify;
pub mod words;

pub use error::Error;
pub use perm::{
    all_permutations, CycleDecomposition, Permutation, StarFactorization, StarTransposition,
};
pub use verify::{
    brute_force_enumerate, brute_force_enumerate_with, CharacterizationReport, SearchConfig,
};

/// How a data-parallel operation should run.
///
/// The `Parallel` variant exists only with the `parallel` feature. Both modes
/// produce bitwise-identical output; the choice affects wall-clock time only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

// Not derivable: the default flips with the feature set.
#[allow(clippy::derivable_impls)]
impl Default for Execution {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Execution::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Execution::Sequential
        }
    }
}
