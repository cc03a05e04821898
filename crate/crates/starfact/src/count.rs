//! Exact closed-form counts in arbitrary precision.
//!
//! Everything here is integer arithmetic on [`BigUint`]; no value is ever
//! truncated and every division is checked to be exact.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::perm::{CycleDecomposition, Permutation};

/// The cycle type of a permutation: the multiset of cycle lengths, with the
/// length of the cycle containing the symbol 1 distinguished as the first
/// entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleType {
    lengths: Vec<usize>,
}

impl CycleType {
    /// Builds a cycle type from explicit lengths; `lengths[0]` is the length
    /// of the cycle containing 1.
    pub fn new(lengths: Vec<usize>) -> Result<Self, Error> {
        if lengths.is_empty() {
            return Err(Error::InvalidCycleType {
                reason: "at least one cycle required".into(),
            });
        }
        if lengths.contains(&0) {
            return Err(Error::InvalidCycleType {
                reason: "cycle lengths must be positive".into(),
            });
        }
        Ok(CycleType { lengths })
    }

    pub fn from_decomposition(decomp: &CycleDecomposition) -> Self {
        CycleType {
            lengths: decomp.lengths(),
        }
    }

    pub fn of(p: &Permutation) -> Self {
        Self::from_decomposition(&p.cycle_decomposition())
    }

    /// Degree `n` (the lengths partition `{1, …, n}`).
    pub fn degree(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Number of cycles, `m`.
    pub fn cycle_count(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Length of the cycle containing 1.
    pub fn first_length(&self) -> usize {
        self.lengths[0]
    }

    /// Number of fixed points other than 1, i.e. length-1 cycles beyond the
    /// first entry. A fixed symbol 1 does not count.
    pub fn fixed_points_not_one(&self) -> usize {
        self.lengths[1..].iter().filter(|&&l| l == 1).count()
    }

    /// Multiplicities of the non-first lengths: pairs `(length, count)`
    /// sorted by length.
    pub fn length_multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        let mut sorted = self.lengths[1..].to_vec();
        sorted.sort_unstable();
        for l in sorted {
            match out.last_mut() {
                Some((len, count)) if *len == l => *count += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }

    /// A concrete permutation of this cycle type: cycles laid out on
    /// consecutive symbols in the order given, starting with the cycle
    /// containing 1.
    pub fn representative(&self) -> Permutation {
        let n = self.degree();
        let mut images: Vec<usize> = (1..=n).collect();
        let mut next = 1;
        for &len in &self.lengths {
            for offset in 0..len {
                let symbol = next + offset;
                let image = next + (offset + 1) % len;
                images[symbol - 1] = image;
            }
            next += len;
        }
        Permutation::from_images(images).expect("blocks of consecutive cycles form a bijection")
    }
}

pub fn factorial(k: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 2..=k {
        out *= BigUint::from(i);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    exact_div(factorial(n), &(factorial(k) * factorial(n - k)))
}

/// Divides exactly, panicking on any remainder. The counting formulas are
/// integers by construction, so a remainder is a hard failure.
fn exact_div(numerator: BigUint, denominator: &BigUint) -> BigUint {
    let quotient = &numerator / denominator;
    let remainder = numerator % denominator;
    assert!(
        remainder.is_zero(),
        "inexact division in a counting formula"
    );
    quotient
}

fn length_product(lengths: &[usize]) -> BigUint {
    let mut out = BigUint::one();
    for &l in lengths {
        out *= BigUint::from(l);
    }
    out
}

/// Number of minimal transitive star factorizations of any permutation of
/// the given cycle type: `(n + m - 2)! · ℓ_1⋯ℓ_m / n!`.
pub fn count_minimal_transitive(ct: &CycleType) -> BigUint {
    let n = ct.degree();
    let m = ct.cycle_count();
    exact_div(
        factorial(n + m - 2) * length_product(ct.lengths()),
        &factorial(n),
    )
}

/// Number of minimal (not necessarily transitive) star factorizations:
/// `(n + m - 2(k+1))! · ℓ_1⋯ℓ_m / (n - k)!`, where `k` counts the fixed
/// points other than 1.
///
/// Stripping those `k` fixed points leaves a permutation whose minimal star
/// factorizations are exactly the minimal transitive ones, so this agrees
/// with [`count_minimal_transitive`] on the induced type.
pub fn count_minimal(ct: &CycleType) -> BigUint {
    let n = ct.degree();
    let m = ct.cycle_count();
    let k = ct.fixed_points_not_one();
    exact_div(
        factorial(n + m - 2 * (k + 1)) * length_product(ct.lengths()),
        &factorial(n - k),
    )
}

/// Count for the special shape where 1 is fixed and all other cycles share
/// one length: `cycle_count` cycles of length `cycle_len ≥ 2` give
/// `k^m (mk + m)! / n!` with `n = mk + 1`.
pub fn pak_count(cycle_len: usize, cycle_count: usize) -> BigUint {
    assert!(cycle_len >= 2, "cycle length must be at least 2");
    assert!(cycle_count >= 1, "need at least one cycle");
    let n = cycle_len * cycle_count + 1;
    exact_div(
        BigUint::from(cycle_len).pow(cycle_count as u32)
            * factorial(cycle_len * cycle_count + cycle_count),
        &factorial(n),
    )
}

/// Number of valid words (equivalently bicoloured trees) for the given
/// cycle type: `ℓ_1 · (m - 2)! · C(n + m - 2, m - 2)` for `m ≥ 2`, and 1
/// for `m = 1`.
pub fn count_words_closed_form(ct: &CycleType) -> BigUint {
    let n = ct.degree();
    let m = ct.cycle_count();
    if m == 1 {
        return BigUint::one();
    }
    BigUint::from(ct.first_length()) * factorial(m - 2) * binomial(n + m - 2, m - 2)
}
