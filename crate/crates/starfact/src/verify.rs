//! Structural verification of minimal transitive star factorizations, and
//! the exhaustive brute-force search used as an independent oracle for the
//! closed-form counts.
//!
//! A star factorization `f` of `π` is minimal transitive exactly when three
//! structural conditions hold:
//!
//! 1. **occurrence counts** — in every cycle of `π` not containing 1 exactly
//!    one symbol's transposition appears twice and the rest appear once; the
//!    non-1 symbols of the cycle containing 1 appear exactly once each;
//! 2. **cyclic order** — reading right to left, the factors meeting a cycle
//!    walk that cycle: each symbol is the cycle's image of the previous one
//!    (starting from the image of 1 for the cycle containing 1);
//! 3. **nesting** — whenever a factor meeting one cycle lies strictly
//!    between two factors meeting another, its cycle does not contain 1 and
//!    all factors meeting it lie strictly between the two.
//!
//! [`characterize`] evaluates the three checks; equivalence with the direct
//! definition ([`is_minimal_transitive`]) is exercised exhaustively in the
//! acceptance suite.

use crate::error::Error;
use crate::perm::{Permutation, StarFactorization, StarTransposition};
use crate::Execution;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default budget for the number of candidate sequences a brute-force call
/// may visit.
pub const DEFAULT_SEARCH_GUARD: u64 = 100_000_000;

/// Outcome of the three structural checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub occurrence_ok: bool,
    pub order_ok: bool,
    pub nesting_ok: bool,
    pub overall: bool,
}

/// Whether the transposition meets the given cycle, i.e. the cycle contains
/// its non-1 symbol.
pub fn meets(t: StarTransposition, cycle: &[usize]) -> bool {
    cycle.contains(&t.other())
}

/// Direct definition: the product equals `p`, the factors act transitively,
/// and the length is `n + m - 2`. The length test suffices for minimality
/// because no transitive factorization into transpositions can be shorter.
pub fn is_minimal_transitive(f: &StarFactorization, p: &Permutation) -> bool {
    assert_eq!(f.degree(), p.degree(), "degree mismatch");
    let m = p.cycle_decomposition().cycle_count();
    f.len() == p.degree() + m - 2 && f.is_transitive() && f.evaluate() == *p
}

/// Occurrence-count check (condition 1 above).
pub fn check_occurrence_counts(f: &StarFactorization, p: &Permutation) -> bool {
    assert_eq!(f.degree(), p.degree(), "degree mismatch");
    let n = p.degree();
    let mut counts = vec![0usize; n + 1];
    for other in f.other_symbols() {
        counts[other] += 1;
    }
    for (j, cycle) in p.cycle_decomposition().cycles().iter().enumerate() {
        if j == 0 {
            // Cycle containing 1: each non-1 symbol exactly once.
            if cycle.iter().any(|&s| s != 1 && counts[s] != 1) {
                return false;
            }
        } else {
            let twice = cycle.iter().filter(|&&s| counts[s] == 2).count();
            let once = cycle.iter().filter(|&&s| counts[s] == 1).count();
            if twice != 1 || once != cycle.len() - 1 {
                return false;
            }
        }
    }
    true
}

/// Cyclic-order check (condition 2 above). Returns false whenever the
/// occurrence counts already fail.
pub fn check_cyclic_order(f: &StarFactorization, p: &Permutation) -> bool {
    if !check_occurrence_counts(f, p) {
        return false;
    }
    let decomp = p.cycle_decomposition();
    let positions = positions_by_orbit(f, p);
    for (j, pos) in positions.iter().enumerate() {
        let mut current = if j == 0 { 1 } else { 0 };
        for (step, &i) in pos.iter().rev().enumerate() {
            let symbol = f.factors()[i].other();
            if (j == 0 || step > 0) && symbol != decomp.image(current) {
                return false;
            }
            current = symbol;
        }
    }
    true
}

/// Nesting check (condition 3 above).
pub fn check_nesting(f: &StarFactorization, p: &Permutation) -> bool {
    assert_eq!(f.degree(), p.degree(), "degree mismatch");
    let positions = positions_by_orbit(f, p);
    let m = positions.len();
    for j in 0..m {
        let outer = &positions[j];
        for (other_idx, inner) in positions.iter().enumerate() {
            if other_idx == j || inner.is_empty() {
                continue;
            }
            for (ai, &a) in outer.iter().enumerate() {
                for &b in &outer[ai + 1..] {
                    if inner.iter().any(|&c| a < c && c < b) {
                        if other_idx == 0 {
                            // The cycle containing 1 may not sit inside
                            // another cycle's span.
                            return false;
                        }
                        if !inner.iter().all(|&c| a < c && c < b) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Runs the three structural checks. `overall` holds exactly when `f` is a
/// minimal transitive star factorization of `p`.
pub fn characterize(f: &StarFactorization, p: &Permutation) -> CharacterizationReport {
    let occurrence_ok = check_occurrence_counts(f, p);
    let order_ok = check_cyclic_order(f, p);
    let nesting_ok = check_nesting(f, p);
    CharacterizationReport {
        occurrence_ok,
        order_ok,
        nesting_ok,
        overall: occurrence_ok && order_ok && nesting_ok,
    }
}

/// Returns an error naming the first failed check, if any.
pub(crate) fn require_minimal_transitive(
    f: &StarFactorization,
    p: &Permutation,
) -> Result<(), Error> {
    let report = characterize(f, p);
    if !report.occurrence_ok {
        return Err(Error::NotMinimalTransitive {
            check: "occurrence-count",
        });
    }
    if !report.order_ok {
        return Err(Error::NotMinimalTransitive {
            check: "cyclic-order",
        });
    }
    if !report.nesting_ok {
        return Err(Error::NotMinimalTransitive { check: "nesting" });
    }
    Ok(())
}

/// 0-based factor positions grouped by the orbit their factor meets;
/// index 0 is the orbit containing 1.
fn positions_by_orbit(f: &StarFactorization, p: &Permutation) -> Vec<Vec<usize>> {
    let decomp = p.cycle_decomposition();
    let mut positions = vec![Vec::new(); decomp.cycle_count()];
    for (i, t) in f.factors().iter().enumerate() {
        positions[decomp.orbit_of(t.other()) - 1].push(i);
    }
    positions
}

/// Knobs for [`brute_force_enumerate_with`].
#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Maximum number of candidate sequences, `(n-1)^length`.
    pub guard: u64,
    /// Enables search pruning. Pruning only applies where it cannot change
    /// the result set: occurrence-count caps are used solely when searching
    /// for transitive factorizations at the minimal length, and untouched
    /// symbols are counted against the remaining slots only when
    /// transitivity is required. With `prune: false` the search degenerates
    /// to pure generate-and-test.
    pub prune: bool,
    pub execution: Execution,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            guard: DEFAULT_SEARCH_GUARD,
            prune: true,
            execution: Execution::default(),
        }
    }
}

/// Enumerates every sequence of the given length over the `n - 1` star
/// transpositions whose product is `p` (and which acts transitively when
/// `transitive_required`), in lexicographic order of factor symbols.
pub fn brute_force_enumerate(
    p: &Permutation,
    transitive_required: bool,
    length: usize,
) -> Result<Vec<StarFactorization>, Error> {
    brute_force_enumerate_with(p, transitive_required, length, &SearchConfig::default())
}

/// [`brute_force_enumerate`] with explicit configuration.
pub fn brute_force_enumerate_with(
    p: &Permutation,
    transitive_required: bool,
    length: usize,
    config: &SearchConfig,
) -> Result<Vec<StarFactorization>, Error> {
    let n = p.degree();

    let mut candidates: u128 = 1;
    for _ in 0..length {
        candidates = candidates.saturating_mul((n - 1) as u128);
    }
    if candidates > config.guard as u128 {
        return Err(Error::GuardExceeded {
            candidates,
            guard: config.guard,
        });
    }

    let decomp = p.cycle_decomposition();
    let minimal_length = n + decomp.cycle_count() - 2;
    // Occurrence-count caps are necessary conditions on minimal transitive
    // factorizations only; anywhere else they could hide solutions.
    let caps = if config.prune && transitive_required && length == minimal_length {
        let mut caps = vec![2usize; n + 1];
        for &s in decomp.orbit(1) {
            caps[s] = 1;
        }
        Some(caps)
    } else {
        None
    };

    let search = Search {
        target: p.images(),
        n,
        length,
        transitive_required,
        caps,
        count_untouched: config.prune && transitive_required,
    };

    let prefixes = if length == 0 {
        search.run_branch(None)
    } else {
        match config.execution {
            Execution::Sequential => {
                let mut out = Vec::new();
                for first in 2..=n {
                    out.extend(search.run_branch(Some(first)));
                }
                out
            }
            #[cfg(feature = "parallel")]
            Execution::Parallel => (2..=n)
                .into_par_iter()
                .map(|first| search.run_branch(Some(first)))
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect(),
        }
    };

    Ok(prefixes
        .into_iter()
        .map(|symbols| {
            StarFactorization::new(n, symbols).expect("search emits in-range symbols")
        })
        .collect())
}

struct Search<'a> {
    target: &'a [usize],
    n: usize,
    length: usize,
    transitive_required: bool,
    caps: Option<Vec<usize>>,
    count_untouched: bool,
}

struct SearchState {
    images: Vec<usize>,
    counts: Vec<usize>,
    touched: usize,
    prefix: Vec<usize>,
}

impl Search<'_> {
    /// Runs the sequential search under a fixed first symbol (or the whole
    /// search when `first` is `None`), returning matches in lexicographic
    /// order.
    fn run_branch(&self, first: Option<usize>) -> Vec<Vec<usize>> {
        let mut state = SearchState {
            images: (1..=self.n).collect(),
            counts: vec![0; self.n + 1],
            touched: 0,
            prefix: Vec::with_capacity(self.length),
        };
        let mut out = Vec::new();
        match first {
            Some(symbol) => {
                if let Some(caps) = &self.caps {
                    if caps[symbol] == 0 {
                        return out;
                    }
                }
                self.push(&mut state, symbol);
                self.descend(&mut state, &mut out);
            }
            None => self.descend(&mut state, &mut out),
        }
        out
    }

    fn push(&self, state: &mut SearchState, symbol: usize) {
        state.counts[symbol] += 1;
        if state.counts[symbol] == 1 {
            state.touched += 1;
        }
        state.images.swap(0, symbol - 1);
        state.prefix.push(symbol);
    }

    fn pop(&self, state: &mut SearchState, symbol: usize) {
        state.prefix.pop();
        state.images.swap(0, symbol - 1);
        if state.counts[symbol] == 1 {
            state.touched -= 1;
        }
        state.counts[symbol] -= 1;
    }

    fn descend(&self, state: &mut SearchState, out: &mut Vec<Vec<usize>>) {
        let depth = state.prefix.len();
        if depth == self.length {
            let transitive = self.n == 1 || state.touched == self.n - 1;
            if state.images == self.target && (!self.transitive_required || transitive) {
                out.push(state.prefix.clone());
            }
            return;
        }
        if self.count_untouched && (self.n - 1 - state.touched) > self.length - depth {
            return;
        }
        for symbol in 2..=self.n {
            if let Some(caps) = &self.caps {
                if state.counts[symbol] >= caps[symbol] {
                    continue;
                }
            }
            self.push(state, symbol);
            self.descend(state, out);
            self.pop(state, symbol);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    const REF_SYMBOLS: [usize; 14] = [9, 11, 9, 2, 10, 5, 3, 3, 4, 7, 6, 6, 10, 8];
    const REF_PERM: &str = "(1 8 2)(3)(4 5 10 7)(6)(9 11)";

    fn perm(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, Some(n)).unwrap()
    }

    fn fact(n: usize, symbols: &[usize]) -> StarFactorization {
        StarFactorization::new(n, symbols.to_vec()).unwrap()
    }

    fn reference() -> (StarFactorization, Permutation) {
        (fact(11, &REF_SYMBOLS), perm(REF_PERM, 11))
    }

    /// Minimal transitive length for `p`.
    fn minimal_length(p: &Permutation) -> usize {
        p.degree() + p.cycle_decomposition().cycle_count() - 2
    }

    #[test]
    fn meets_is_cycle_membership() {
        let t = |s| StarTransposition::new(s).unwrap();
        assert!(meets(t(5), &[4, 5, 10, 7]));
        assert!(!meets(t(2), &[3]));
        assert!(meets(t(9), &[9, 11]));
    }

    #[test]
    fn reference_is_minimal_transitive() {
        let (f, p) = reference();
        assert!(is_minimal_transitive(&f, &p));
        let report = characterize(&f, &p);
        assert!(report.occurrence_ok && report.order_ok && report.nesting_ok && report.overall);
    }

    #[test]
    fn direct_definition_small_cases() {
        let p = perm("(1 2 3)", 3);
        assert!(is_minimal_transitive(&fact(3, &[3, 2]), &p));
        assert!(!is_minimal_transitive(&fact(3, &[2, 3]), &p));
    }

    #[test]
    fn occurrence_counts_cases() {
        let (f, p) = reference();
        assert!(check_occurrence_counts(&f, &p));
        assert!(check_occurrence_counts(
            &fact(3, &[2, 3, 2]),
            &perm("(2 3)", 3)
        ));
        // The cycle containing 1 admits no repeated factor.
        assert!(!check_occurrence_counts(
            &fact(3, &[2, 2, 3]),
            &perm("(1 2 3)", 3)
        ));
    }

    #[test]
    fn cyclic_order_cases() {
        let (f, p) = reference();
        assert!(check_cyclic_order(&f, &p));
        let swap = perm("(2 3)", 3);
        assert!(check_cyclic_order(&fact(3, &[2, 3, 2]), &swap));
        assert!(check_cyclic_order(&fact(3, &[3, 2, 3]), &swap));
        assert!(!check_cyclic_order(&fact(3, &[2, 2, 3]), &swap));
    }

    #[test]
    fn exactly_two_orderings_in_s3() {
        let swap = perm("(2 3)", 3);
        let found = brute_force_enumerate(&swap, true, 3).unwrap();
        assert_eq!(
            found,
            vec![fact(3, &[2, 3, 2]), fact(3, &[3, 2, 3])],
            "exhaustive length-3 search finds exactly the two valid orderings"
        );
    }

    #[test]
    fn nesting_cases() {
        let (f, p) = reference();
        assert!(check_nesting(&f, &p));
        let q = perm("(2 3)(4 5)", 5);
        assert!(check_nesting(&fact(5, &[2, 3, 2, 4, 5, 4]), &q));
        assert!(!check_nesting(&fact(5, &[2, 4, 3, 2, 5, 4]), &q));
    }

    #[test]
    fn characterize_matches_direct_definition_on_examples() {
        let p = perm("(1 2 3)", 3);
        assert!(!characterize(&fact(3, &[2, 3]), &p).overall);
        assert!(characterize(&fact(3, &[3, 2]), &p).overall);
    }

    #[test]
    fn first_failed_check_is_named() {
        let p = perm("(1 2 3)", 3);
        assert_eq!(
            require_minimal_transitive(&fact(3, &[2, 3]), &p),
            Err(Error::NotMinimalTransitive {
                check: "cyclic-order"
            })
        );
        assert_eq!(
            require_minimal_transitive(&fact(3, &[2, 2]), &p),
            Err(Error::NotMinimalTransitive {
                check: "occurrence-count"
            })
        );
    }

    #[test]
    fn brute_force_examples() {
        let p = perm("(1 2 3)", 3);
        assert_eq!(
            brute_force_enumerate(&p, true, 2).unwrap(),
            vec![fact(3, &[3, 2])]
        );
        assert_eq!(
            brute_force_enumerate(&Permutation::identity(1), true, 0).unwrap(),
            vec![StarFactorization::empty(1)]
        );
    }

    #[test]
    fn guard_stops_oversized_searches() {
        let p = Permutation::identity(20);
        let config = SearchConfig {
            guard: 1000,
            ..SearchConfig::default()
        };
        match brute_force_enumerate_with(&p, true, 38, &config) {
            Err(Error::GuardExceeded { guard: 1000, .. }) => {}
            other => panic!("expected guard error, got {other:?}"),
        }
    }

    #[test]
    fn lemma_equivalence_exhaustive_up_to_degree_3() {
        for n in 1..=3 {
            for p in all_permutations(n) {
                let length = minimal_length(&p);
                for_all_sequences(n, length, |symbols| {
                    let f = fact(n, symbols);
                    assert_eq!(
                        characterize(&f, &p).overall,
                        is_minimal_transitive(&f, &p),
                        "n={n} p={p} f={f}"
                    );
                });
            }
        }
    }

    /// Calls `visit` on every sequence over `{2..=n}` of the given length.
    fn for_all_sequences(n: usize, length: usize, mut visit: impl FnMut(&[usize])) {
        let mut symbols = vec![2usize; length];
        if n == 1 && length > 0 {
            return;
        }
        loop {
            visit(&symbols);
            let mut i = length;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if symbols[i] < n {
                    symbols[i] += 1;
                    for s in &mut symbols[i + 1..] {
                        *s = 2;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn search_results_pass_characterization() {
        for n in 1..=4 {
            for p in all_permutations(n) {
                for f in brute_force_enumerate(&p, true, minimal_length(&p)).unwrap() {
                    assert!(characterize(&f, &p).overall);
                }
            }
        }
    }

    #[test]
    fn reversal_gives_factorization_of_inverse() {
        for n in 1..=4 {
            for p in all_permutations(n) {
                let inv = p.inverse();
                for f in brute_force_enumerate(&p, true, minimal_length(&p)).unwrap() {
                    assert!(is_minimal_transitive(&f.reversed(), &inv));
                }
            }
        }
    }

    #[test]
    fn no_shorter_transitive_factorization_up_to_degree_4() {
        for n in 1..=4 {
            for p in all_permutations(n) {
                for shorter in 0..minimal_length(&p) {
                    assert!(
                        brute_force_enumerate(&p, true, shorter).unwrap().is_empty(),
                        "unexpected transitive factorization of {p} at length {shorter}"
                    );
                }
            }
        }
    }

    #[test]
    fn pruning_does_not_change_results() {
        let pruned = SearchConfig::default();
        let pure = SearchConfig {
            prune: false,
            ..SearchConfig::default()
        };
        for n in 1..=4 {
            for p in all_permutations(n) {
                let length = minimal_length(&p);
                assert_eq!(
                    brute_force_enumerate_with(&p, true, length, &pruned).unwrap(),
                    brute_force_enumerate_with(&p, true, length, &pure).unwrap()
                );
            }
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_search_matches_sequential_order() {
        let sequential = SearchConfig {
            execution: Execution::Sequential,
            ..SearchConfig::default()
        };
        let parallel = SearchConfig {
            execution: Execution::Parallel,
            ..SearchConfig::default()
        };
        for text in ["(1 2 3)(4 5)", "(2 3)(4 5)", "(1 2)(3 4 5)"] {
            let p = perm(text, 5);
            let length = minimal_length(&p);
            assert_eq!(
                brute_force_enumerate_with(&p, true, length, &sequential).unwrap(),
                brute_force_enumerate_with(&p, true, length, &parallel).unwrap()
            );
        }
    }
}
