//! Words over the orbit alphabet and the bijection with minimal transitive
//! star factorizations.
//!
//! Fix a permutation with canonical orbits `O_1, …, O_m` (orbit 1 contains
//! the symbol 1) of lengths `ℓ_1, …, ℓ_m`. A word `w` over `{1, …, m}` of
//! length `n + m - 2` is *valid* when
//!
//! * letter 1 occurs exactly `ℓ_1 - 1` times,
//! * letter `j` occurs exactly `ℓ_j + 1` times for `j ≥ 2`,
//! * no scattered subsequence forms `a b a b` for distinct letters
//!   `a, b ≠ 1`, and
//! * no scattered subsequence forms `a 1 a` for a letter `a ≠ 1`.
//!
//! "Scattered" means the positions only need to be strictly increasing, not
//! adjacent. Reading off, for each factor of a minimal transitive star
//! factorization, the index of the orbit it meets produces such a word;
//! together with the *anchors* — for each orbit `j ≥ 2` the non-1 symbol of
//! the leftmost factor meeting it — this is a bijection. [`encode`] and
//! [`decode`] are the two directions.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::count::{count_minimal_transitive, count_words_closed_form, CycleType};
use crate::error::Error;
use crate::perm::{CycleDecomposition, Permutation, StarFactorization};
use crate::verify::require_minimal_transitive;
use crate::Execution;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default budget for the number of words an enumeration may produce.
pub const DEFAULT_WORD_GUARD: u64 = 10_000_000;

/// A word over the orbit alphabet `{1, …, m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// One chosen symbol per orbit `j = 2..=m`, in orbit order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Anchors(pub Vec<usize>);

impl fmt::Display for Anchors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, anchor) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{anchor}")?;
        }
        Ok(())
    }
}

/// Required occurrence count per letter, indexed by letter (entry 0 unused).
fn letter_targets(decomp: &CycleDecomposition) -> Vec<usize> {
    let mut targets = vec![0usize];
    for (j, len) in decomp.lengths().into_iter().enumerate() {
        targets.push(if j == 0 { len - 1 } else { len + 1 });
    }
    targets
}

/// Incremental scattered-pattern tracker. Appending letter `x ≠ 1`
/// completes `a b a b` exactly when some `a x a` is already present with
/// `b = x`, and completes `a 1 a` exactly when some earlier `x` is followed
/// by a later 1. Appending the letter 1 can complete neither pattern.
#[derive(Clone)]
struct PatternTracker {
    m: usize,
    counts: Vec<usize>,
    /// pair[(a-1)*m + x-1]: a scattered "a … x" exists.
    pair: Vec<bool>,
    /// triple[(a-1)*m + x-1]: a scattered "a … x … a" exists.
    triple: Vec<bool>,
    /// then_one[a]: a scattered "a … 1" exists.
    then_one: Vec<bool>,
}

impl PatternTracker {
    fn new(m: usize) -> Self {
        PatternTracker {
            m,
            counts: vec![0; m + 1],
            pair: vec![false; m * m],
            triple: vec![false; m * m],
            then_one: vec![false; m + 1],
        }
    }

    fn idx(&self, a: usize, x: usize) -> usize {
        (a - 1) * self.m + (x - 1)
    }

    /// Would appending `x` create a forbidden pattern?
    fn violates(&self, x: usize) -> bool {
        if x == 1 {
            return false;
        }
        if self.then_one[x] {
            return true;
        }
        (2..=self.m).any(|a| a != x && self.triple[self.idx(a, x)])
    }

    fn push(&mut self, x: usize) {
        if x == 1 {
            for a in 2..=self.m {
                if self.counts[a] > 0 {
                    self.then_one[a] = true;
                }
            }
        } else {
            for b in 1..=self.m {
                let i = self.idx(x, b);
                if self.pair[i] {
                    self.triple[i] = true;
                }
            }
        }
        for a in 1..=self.m {
            if self.counts[a] > 0 {
                let i = self.idx(a, x);
                self.pair[i] = true;
            }
        }
        self.counts[x] += 1;
    }
}

/// Detailed validity check; `Err` carries the first reason found.
fn validate_word(letters: &[usize], decomp: &CycleDecomposition) -> Result<(), String> {
    let m = decomp.cycle_count();
    let targets = letter_targets(decomp);
    let expected_len: usize = targets.iter().sum();
    if letters.len() != expected_len {
        return Err(format!(
            "length {} but the cycle type requires {}",
            letters.len(),
            expected_len
        ));
    }
    let mut tracker = PatternTracker::new(m);
    for (i, &x) in letters.iter().enumerate() {
        if x < 1 || x > m {
            return Err(format!("letter {x} at position {} outside 1..={m}", i + 1));
        }
        if tracker.counts[x] >= targets[x] {
            return Err(format!("letter {x} occurs more than {} times", targets[x]));
        }
        if tracker.violates(x) {
            let pattern = if tracker.then_one[x] { "a1a" } else { "abab" };
            return Err(format!(
                "letter {x} at position {} completes a scattered {pattern} pattern",
                i + 1
            ));
        }
        tracker.push(x);
    }
    // Counts match exactly: each is capped by its target and the totals agree.
    Ok(())
}

/// Whether `letters` is a valid word for the given cycle type.
pub fn is_valid_word(letters: &[usize], decomp: &CycleDecomposition) -> bool {
    validate_word(letters, decomp).is_ok()
}

/// Encodes a minimal transitive star factorization of `p` as its word and
/// anchor tuple. Fails, naming the first violated structural check, when
/// the input is not minimal transitive.
pub fn encode(f: &StarFactorization, p: &Permutation) -> Result<(Word, Anchors), Error> {
    if f.degree() != p.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: p.degree(),
        });
    }
    require_minimal_transitive(f, p)?;
    let decomp = p.cycle_decomposition();
    let m = decomp.cycle_count();
    let mut letters = Vec::with_capacity(f.len());
    let mut anchors = vec![0usize; m.saturating_sub(1)];
    let mut seen = vec![false; m + 1];
    for t in f.factors() {
        let j = decomp.orbit_of(t.other());
        letters.push(j);
        if j >= 2 && !seen[j] {
            seen[j] = true;
            anchors[j - 2] = t.other();
        }
    }
    Ok((Word(letters), Anchors(anchors)))
}

/// Decodes a word and anchor tuple back into the unique minimal transitive
/// star factorization they describe.
///
/// For each orbit `j ≥ 2` with occurrence positions `i_1 < … < i_s` of the
/// letter `j` (`s = ℓ_j + 1`), positions `i_1` and `i_s` receive the anchor
/// transposition `(1 k_j)`, and reading the intermediate positions right to
/// left yields the forward orbit walk `σ_j(k_j), σ_j²(k_j), …`. For the
/// orbit of 1 the positions read right to left walk `σ_1(1), σ_1²(1), …`.
pub fn decode(
    letters: &[usize],
    anchors: &[usize],
    decomp: &CycleDecomposition,
) -> Result<StarFactorization, Error> {
    validate_word(letters, decomp).map_err(|reason| Error::InvalidWord { reason })?;
    let n = decomp.degree();
    let m = decomp.cycle_count();
    if anchors.len() != m - 1 {
        return Err(Error::InvalidAnchors {
            reason: format!("expected {} anchors, got {}", m - 1, anchors.len()),
        });
    }
    for (i, &k) in anchors.iter().enumerate() {
        let j = i + 2;
        if k < 1 || k > n || decomp.orbit_of(k) != j {
            return Err(Error::InvalidAnchors {
                reason: format!("anchor {k} is not in orbit {j}"),
            });
        }
    }

    let mut positions = vec![Vec::new(); m + 1];
    for (i, &letter) in letters.iter().enumerate() {
        positions[letter].push(i);
    }

    let mut others = vec![0usize; letters.len()];
    for j in 1..=m {
        let pos = &positions[j];
        let len = decomp.length_of(j);
        if j == 1 {
            for (t, &i) in pos.iter().enumerate() {
                others[i] = decomp.power_image(1, len - 1 - t);
            }
        } else {
            let anchor = anchors[j - 2];
            others[pos[0]] = anchor;
            others[pos[len]] = anchor;
            for t in 1..len {
                others[pos[t]] = decomp.power_image(anchor, len - t);
            }
        }
    }
    StarFactorization::new(n, others)
}

/// Configuration for [`enumerate_words_with`].
#[derive(Clone, Copy, Debug)]
pub struct WordEnumerationConfig {
    /// Maximum number of words the enumeration may produce.
    pub guard: u64,
    pub execution: Execution,
}

impl Default for WordEnumerationConfig {
    fn default() -> Self {
        WordEnumerationConfig {
            guard: DEFAULT_WORD_GUARD,
            execution: Execution::default(),
        }
    }
}

/// All valid words for the cycle type, in lexicographic order. Generated by
/// backtracking with incremental multiplicity and pattern pruning.
pub fn enumerate_words(decomp: &CycleDecomposition) -> Result<Vec<Word>, Error> {
    enumerate_words_with(decomp, &WordEnumerationConfig::default())
}

/// [`enumerate_words`] with explicit configuration.
pub fn enumerate_words_with(
    decomp: &CycleDecomposition,
    config: &WordEnumerationConfig,
) -> Result<Vec<Word>, Error> {
    let expected = count_words_closed_form(&CycleType::from_decomposition(decomp));
    if expected > BigUint::from(config.guard) {
        return Err(Error::GuardExceeded {
            candidates: expected.to_u128().unwrap_or(u128::MAX),
            guard: config.guard,
        });
    }

    let m = decomp.cycle_count();
    let targets = letter_targets(decomp);
    let total: usize = targets.iter().sum();
    if total == 0 {
        return Ok(vec![Word(Vec::new())]);
    }

    let words = match config.execution {
        Execution::Sequential => {
            let mut out = Vec::new();
            for first in 1..=m {
                words_branch(first, &targets, total, m, &mut out);
            }
            out
        }
        #[cfg(feature = "parallel")]
        Execution::Parallel => (1..=m)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                words_branch(first, &targets, total, m, &mut out);
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect(),
    };

    debug_assert_eq!(BigUint::from(words.len()), expected);
    Ok(words)
}

fn words_branch(first: usize, targets: &[usize], total: usize, m: usize, out: &mut Vec<Word>) {
    if targets[first] == 0 {
        return;
    }
    let mut tracker = PatternTracker::new(m);
    tracker.push(first);
    let mut prefix = Vec::with_capacity(total);
    prefix.push(first);
    words_descend(targets, total, &mut tracker, &mut prefix, out);
}

fn words_descend(
    targets: &[usize],
    total: usize,
    tracker: &mut PatternTracker,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Word>,
) {
    if prefix.len() == total {
        // Per-letter caps plus the exact total force counts == targets here.
        out.push(Word(prefix.clone()));
        return;
    }
    for letter in 1..=tracker.m {
        if tracker.counts[letter] >= targets[letter] || tracker.violates(letter) {
            continue;
        }
        let saved = tracker.clone();
        tracker.push(letter);
        prefix.push(letter);
        words_descend(targets, total, tracker, prefix, out);
        prefix.pop();
        *tracker = saved;
    }
}

/// All anchor tuples for the cycle type, row-major over orbits `2..=m` with
/// each orbit iterated in cycle order.
pub fn anchor_tuples(decomp: &CycleDecomposition) -> Vec<Anchors> {
    let mut out = vec![Vec::new()];
    for j in 2..=decomp.cycle_count() {
        let orbit = decomp.orbit(j);
        out = out
            .into_iter()
            .flat_map(|base: Vec<usize>| {
                orbit.iter().map(move |&k| {
                    let mut next = base.clone();
                    next.push(k);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(Anchors).collect()
}

/// Every minimal transitive star factorization of the permutation the
/// decomposition describes, produced through the bijection: words in
/// lexicographic order, anchor tuples row-major within each word.
pub fn enumerate_factorizations(
    decomp: &CycleDecomposition,
    guard: u64,
) -> Result<Vec<StarFactorization>, Error> {
    let total = count_minimal_transitive(&CycleType::from_decomposition(decomp));
    if total > BigUint::from(guard) {
        return Err(Error::GuardExceeded {
            candidates: total.to_u128().unwrap_or(u128::MAX),
            guard,
        });
    }
    let words = enumerate_words_with(
        decomp,
        &WordEnumerationConfig {
            guard,
            execution: Execution::default(),
        },
    )?;
    let anchors = anchor_tuples(decomp);
    let mut out = Vec::new();
    for word in &words {
        for tuple in &anchors {
            out.push(decode(word.letters(), &tuple.0, decomp)?);
        }
    }
    Ok(out)
}

/// Draws uniformly random minimal transitive star factorizations by picking
/// a uniform word index and an independent uniform anchor tuple, then
/// decoding. The word list is enumerated once up front.
pub struct Sampler {
    decomp: CycleDecomposition,
    words: Vec<Word>,
}

impl Sampler {
    pub fn new(p: &Permutation, guard: u64) -> Result<Self, Error> {
        let decomp = p.cycle_decomposition();
        let words = enumerate_words_with(
            &decomp,
            &WordEnumerationConfig {
                guard,
                execution: Execution::default(),
            },
        )?;
        Ok(Sampler { decomp, words })
    }

    /// Size of the sampled population, `|W| · ℓ_2⋯ℓ_m`.
    pub fn population_size(&self) -> BigUint {
        count_minimal_transitive(&CycleType::from_decomposition(&self.decomp))
    }

    pub fn draw<R: Rng>(&self, rng: &mut R) -> StarFactorization {
        let word_index = rng.gen_range(0..self.words.len() as u64) as usize;
        let mut anchors = Vec::with_capacity(self.decomp.cycle_count().saturating_sub(1));
        for j in 2..=self.decomp.cycle_count() {
            let orbit = self.decomp.orbit(j);
            let k = rng.gen_range(0..orbit.len() as u64) as usize;
            anchors.push(orbit[k]);
        }
        decode(self.words[word_index].letters(), &anchors, &self.decomp)
            .expect("enumerated words and in-orbit anchors decode cleanly")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use crate::verify::brute_force_enumerate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const REF_SYMBOLS: [usize; 14] = [9, 11, 9, 2, 10, 5, 3, 3, 4, 7, 6, 6, 10, 8];
    const REF_PERM: &str = "(1 8 2)(3)(4 5 10 7)(6)(9 11)";
    const REF_WORD: [usize; 14] = [5, 5, 5, 1, 3, 3, 2, 2, 3, 3, 4, 4, 3, 1];
    const REF_ANCHORS: [usize; 4] = [3, 10, 6, 9];

    fn perm(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, Some(n)).unwrap()
    }

    fn fact(n: usize, symbols: &[usize]) -> StarFactorization {
        StarFactorization::new(n, symbols.to_vec()).unwrap()
    }

    fn decomp_of(text: &str, n: usize) -> CycleDecomposition {
        perm(text, n).cycle_decomposition()
    }

    #[test]
    fn reference_word_is_valid() {
        let d = decomp_of(REF_PERM, 11);
        assert!(is_valid_word(&REF_WORD, &d));
    }

    #[test]
    fn scattered_patterns_are_rejected() {
        let d = decomp_of("(1 2)(3 4)", 4);
        assert!(!is_valid_word(&[2, 2, 1, 2], &d), "scattered 2 1 2");
        assert!(is_valid_word(&[2, 2, 2, 1], &d));
        assert!(is_valid_word(&[1, 2, 2, 2], &d));
        assert!(!is_valid_word(&[2, 1, 2, 2], &d));
        // Wrong counts and out-of-range letters.
        assert!(!is_valid_word(&[2, 2, 2, 2], &d));
        assert!(!is_valid_word(&[2, 2, 2], &d));
        assert!(!is_valid_word(&[2, 2, 3, 1], &d));
    }

    #[test]
    fn abab_is_rejected_across_letters() {
        // (2 3)(4 5): letters 2 and 3 three times each, no letter 1.
        let d = decomp_of("(2 3)(4 5)", 5);
        assert!(!is_valid_word(&[2, 3, 2, 3, 2, 3], &d));
        assert!(!is_valid_word(&[2, 2, 3, 2, 3, 3], &d));
        assert!(is_valid_word(&[2, 2, 2, 3, 3, 3], &d));
        assert!(is_valid_word(&[2, 3, 3, 3, 2, 2], &d));
    }

    #[test]
    fn encode_reference() {
        let p = perm(REF_PERM, 11);
        let (word, anchors) = encode(&fact(11, &REF_SYMBOLS), &p).unwrap();
        assert_eq!(word.letters(), REF_WORD);
        assert_eq!(anchors.0, REF_ANCHORS);
    }

    #[test]
    fn encode_small_cases() {
        let (word, anchors) = encode(&fact(3, &[2, 3, 2]), &perm("(2 3)", 3)).unwrap();
        assert_eq!(word.letters(), [2, 2, 2]);
        assert_eq!(anchors.0, [2]);

        let (word, anchors) = encode(&fact(3, &[3, 2]), &perm("(1 2 3)", 3)).unwrap();
        assert_eq!(word.letters(), [1, 1]);
        assert!(anchors.0.is_empty());
    }

    #[test]
    fn encode_rejects_non_minimal_inputs() {
        assert_eq!(
            encode(&fact(3, &[2, 3]), &perm("(1 2 3)", 3)),
            Err(Error::NotMinimalTransitive {
                check: "cyclic-order"
            })
        );
    }

    #[test]
    fn decode_reference() {
        let d = decomp_of(REF_PERM, 11);
        let f = decode(&REF_WORD, &REF_ANCHORS, &d).unwrap();
        assert_eq!(f, fact(11, &REF_SYMBOLS));
    }

    #[test]
    fn decode_small_cases() {
        let d = decomp_of("(2 3)", 3);
        assert_eq!(decode(&[2, 2, 2], &[2], &d).unwrap(), fact(3, &[2, 3, 2]));
        let d = decomp_of("(1 2 3)", 3);
        assert_eq!(decode(&[1, 1], &[], &d).unwrap(), fact(3, &[3, 2]));
    }

    #[test]
    fn decode_rejects_bad_input() {
        let d = decomp_of("(1 2)(3 4)", 4);
        assert!(matches!(
            decode(&[2, 2, 1, 2], &[3], &d),
            Err(Error::InvalidWord { .. })
        ));
        assert!(matches!(
            decode(&[2, 2, 2, 1], &[2], &d),
            Err(Error::InvalidAnchors { .. })
        ));
        assert!(matches!(
            decode(&[2, 2, 2, 1], &[], &d),
            Err(Error::InvalidAnchors { .. })
        ));
    }

    #[test]
    fn enumerate_words_examples() {
        let d = decomp_of("(1 2)(3 4)", 4);
        let words = enumerate_words(&d).unwrap();
        assert_eq!(
            words,
            vec![Word(vec![1, 2, 2, 2]), Word(vec![2, 2, 2, 1])]
        );

        let d = decomp_of("(1 2 3 4)", 4);
        assert_eq!(enumerate_words(&d).unwrap(), vec![Word(vec![1, 1, 1])]);

        let d = decomp_of(REF_PERM, 11);
        assert_eq!(enumerate_words(&d).unwrap().len(), 6552);
    }

    #[test]
    fn enumerated_words_are_sorted_unique_and_valid() {
        for text in ["(2 3)(4 5)", "(1 2 3)(4 5)", "(1 2)(3 4 5)"] {
            let d = decomp_of(text, 5);
            let words = enumerate_words(&d).unwrap();
            for pair in words.windows(2) {
                assert!(pair[0].0 < pair[1].0, "sorted, duplicate-free output");
            }
            for w in &words {
                assert!(is_valid_word(w.letters(), &d));
            }
        }
    }

    #[test]
    fn word_guard_is_enforced() {
        let d = decomp_of(REF_PERM, 11);
        let config = WordEnumerationConfig {
            guard: 10,
            ..WordEnumerationConfig::default()
        };
        assert!(matches!(
            enumerate_words_with(&d, &config),
            Err(Error::GuardExceeded {
                candidates: 6552,
                guard: 10
            })
        ));
    }

    #[test]
    fn anchor_tuples_are_row_major() {
        let d = decomp_of("(2 3)(4 5)", 5);
        let tuples: Vec<Vec<usize>> = anchor_tuples(&d).into_iter().map(|a| a.0).collect();
        assert_eq!(
            tuples,
            vec![vec![2, 4], vec![2, 5], vec![3, 4], vec![3, 5]]
        );
    }

    #[test]
    fn round_trips_up_to_degree_4() {
        for n in 1..=4 {
            for p in all_permutations(n) {
                let d = p.cycle_decomposition();
                let length = n + d.cycle_count() - 2;
                let found = brute_force_enumerate(&p, true, length).unwrap();
                for f in &found {
                    let (word, anchors) = encode(f, &p).unwrap();
                    assert_eq!(&decode(word.letters(), &anchors.0, &d).unwrap(), f);
                }
                let words = enumerate_words(&d).unwrap();
                let tuples = anchor_tuples(&d);
                let mut tail_product = 1usize;
                for j in 2..=d.cycle_count() {
                    tail_product *= d.length_of(j);
                }
                assert_eq!(found.len(), words.len() * tail_product);
                for word in &words {
                    for tuple in &tuples {
                        let f = decode(word.letters(), &tuple.0, &d).unwrap();
                        let (w2, a2) = encode(&f, &p).unwrap();
                        assert_eq!((&w2, &a2), (word, tuple));
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_factorizations_matches_brute_force_as_sets() {
        for text in ["(2 3)", "(1 2 3)", "(1 2)(3 4)", "(2 3)(4 5)"] {
            let p = Permutation::parse_cycles(text, None).unwrap();
            let d = p.cycle_decomposition();
            let length = p.degree() + d.cycle_count() - 2;
            let mut via_bijection = enumerate_factorizations(&d, 1_000_000).unwrap();
            let mut via_search = brute_force_enumerate(&p, true, length).unwrap();
            via_bijection.sort_by_key(|f| f.other_symbols().collect::<Vec<_>>());
            via_search.sort_by_key(|f| f.other_symbols().collect::<Vec<_>>());
            assert_eq!(via_bijection, via_search);
        }
    }

    #[test]
    fn sampler_is_deterministic_per_seed() {
        let p = perm("(2 3)", 3);
        let sampler = Sampler::new(&p, DEFAULT_WORD_GUARD).unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert_eq!(sampler.draw(&mut a), sampler.draw(&mut b));
        }
    }

    #[test]
    fn sampler_on_single_cycle_returns_the_unique_factorization() {
        let p = perm("(1 2 3 4)", 4);
        let sampler = Sampler::new(&p, DEFAULT_WORD_GUARD).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..5 {
            assert_eq!(sampler.draw(&mut rng), fact(4, &[4, 3, 2]));
        }
    }

    #[test]
    fn sampler_frequencies_are_balanced_on_two_elements() {
        let p = perm("(2 3)", 3);
        let sampler = Sampler::new(&p, DEFAULT_WORD_GUARD).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let draws = 10_000;
        let mut first = 0usize;
        let reference = sampler.draw(&mut rng);
        for _ in 1..draws {
            if sampler.draw(&mut rng) == reference {
                first += 1;
            }
        }
        let frequency = first as f64 / draws as f64;
        assert!((frequency - 0.5).abs() <= 0.02, "frequency {frequency}");
    }

    #[test]
    fn sampler_reaches_all_four_elements_across_seeds() {
        let p = perm("(1 2)(3 4)", 4);
        let sampler = Sampler::new(&p, DEFAULT_WORD_GUARD).unwrap();
        let mut seen = std::collections::HashSet::new();
        for seed in 0..40 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            seen.insert(sampler.draw(&mut rng));
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn enumeration_size_matches_closed_form_up_to_degree_4() {
        use crate::count::{count_words_closed_form, CycleType};
        for n in 1..=4 {
            for p in all_permutations(n) {
                let d = p.cycle_decomposition();
                let words = enumerate_words(&d).unwrap();
                assert_eq!(
                    BigUint::from(words.len()),
                    count_words_closed_form(&CycleType::of(&p)),
                    "word count for {p}"
                );
            }
        }
    }

    #[test]
    fn sampler_draws_are_valid() {
        let p = perm("(2 3)(4 5)", 5);
        let sampler = Sampler::new(&p, DEFAULT_WORD_GUARD).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let f = sampler.draw(&mut rng);
            assert!(crate::verify::is_minimal_transitive(&f, &p));
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_word_enumeration_matches_sequential_order() {
        for text in [REF_PERM, "(2 3)(4 5)"] {
            let d = Permutation::parse_cycles(text, None)
                .unwrap()
                .cycle_decomposition();
            let sequential = enumerate_words_with(
                &d,
                &WordEnumerationConfig {
                    execution: Execution::Sequential,
                    ..WordEnumerationConfig::default()
                },
            )
            .unwrap();
            let parallel = enumerate_words_with(
                &d,
                &WordEnumerationConfig {
                    execution: Execution::Parallel,
                    ..WordEnumerationConfig::default()
                },
            )
            .unwrap();
            assert_eq!(sequential, parallel);
        }
    }
}
