//! Cross-validation sweeps wiring the closed-form counts, the brute-force
//! oracle, the word bijection and the tree correspondence against each
//! other. The CLI `selftest` command runs these; the acceptance test suite
//! asserts the same properties independently.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::count::{
    count_minimal, count_minimal_transitive, count_words_closed_form, pak_count, CycleType,
};
use crate::perm::{all_permutations, Permutation, StarFactorization};
use crate::trees::{tree_to_word, validate_tree, word_to_tree};
use crate::verify::{brute_force_enumerate, characterize, is_minimal_transitive};
use crate::words::{anchor_tuples, decode, encode, enumerate_words, Sampler};

/// Result of one named check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &'static str, detail: String) -> Self {
        CheckOutcome {
            name,
            ok: true,
            detail,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckOutcome {
            name,
            ok: false,
            detail,
        }
    }
}

/// Configuration for [`run_all`].
#[derive(Clone, Copy, Debug)]
pub struct SelfTestConfig {
    /// Largest degree swept by the exhaustive checks.
    pub n_max: usize,
    /// Number of draws for the sampling-uniformity check.
    pub sample_draws: usize,
    /// Negative control: perturbs one formula constant so the count sweep
    /// must fail.
    pub inject_fault: bool,
}

impl Default for SelfTestConfig {
    fn default() -> Self {
        SelfTestConfig {
            n_max: 5,
            sample_draws: 100_000,
            inject_fault: false,
        }
    }
}

/// Runs every check; the sampling check needs degree 5 and is skipped for
/// smaller `n_max`.
pub fn run_all(config: &SelfTestConfig) -> Vec<CheckOutcome> {
    let mut out = vec![
        theorem_count_sweep(config.n_max, config.inject_fault),
        worked_example(),
        characterization_equivalence(config.n_max.min(4)),
        word_bijection_sweep(config.n_max),
        minimal_count_sweep(config.n_max.min(4)),
        uniform_length_consistency(config.n_max),
        tree_bijection_sweep(config.n_max),
    ];
    if config.n_max >= 5 {
        out.push(sampling_uniformity(config.sample_draws));
    }
    out
}

fn minimal_length(p: &Permutation) -> usize {
    p.degree() + p.cycle_decomposition().cycle_count() - 2
}

/// Brute-force count equals `(n + m - 2)! · ℓ_1⋯ℓ_m / n!` for every
/// permutation of degree at most `n_max`.
pub fn theorem_count_sweep(n_max: usize, inject_fault: bool) -> CheckOutcome {
    let name = "theorem_count_sweep";
    let mut checked = 0usize;
    for n in 1..=n_max {
        for p in all_permutations(n) {
            let found = match brute_force_enumerate(&p, true, minimal_length(&p)) {
                Ok(found) => found,
                Err(e) => return CheckOutcome::fail(name, format!("search failed for {p}: {e}")),
            };
            let mut expected = count_minimal_transitive(&CycleType::of(&p));
            if inject_fault {
                expected += 1u32;
            }
            if BigUint::from(found.len()) != expected {
                return CheckOutcome::fail(
                    name,
                    format!("{p}: brute force found {}, formula says {expected}", found.len()),
                );
            }
            checked += 1;
        }
    }
    CheckOutcome::pass(name, format!("{checked} permutations up to degree {n_max}"))
}

/// The fixed worked example in S11: evaluation, encoding, decoding, tree
/// shape and counts.
pub fn worked_example() -> CheckOutcome {
    let name = "worked_example";
    let symbols = [9usize, 11, 9, 2, 10, 5, 3, 3, 4, 7, 6, 6, 10, 8];
    let expected_word = [5usize, 5, 5, 1, 3, 3, 2, 2, 3, 3, 4, 4, 3, 1];
    let expected_anchors = [3usize, 10, 6, 9];
    let mut failures = Vec::new();

    let p = Permutation::parse_cycles("(1 8 2)(3)(4 5 10 7)(6)(9 11)", Some(11)).unwrap();
    let f = StarFactorization::new(11, symbols).unwrap();
    if f.evaluate() != p {
        failures.push("evaluation does not reproduce the target permutation".to_string());
    }
    match encode(&f, &p) {
        Ok((word, anchors)) => {
            if word.letters() != expected_word {
                failures.push(format!("word came out as {word}"));
            }
            if anchors.0 != expected_anchors {
                failures.push(format!("anchors came out as {anchors}"));
            }
        }
        Err(e) => failures.push(format!("encoding failed: {e}")),
    }
    let decomp = p.cycle_decomposition();
    match decode(&expected_word, &expected_anchors, &decomp) {
        Ok(back) => {
            if back != f {
                failures.push("decoding does not reproduce the factorization".to_string());
            }
        }
        Err(e) => failures.push(format!("decoding failed: {e}")),
    }
    match word_to_tree(&expected_word, &decomp) {
        Ok(tree) => {
            if tree.to_paren() != "1(5(*) * 3(* 2 * * 4) *)" {
                failures.push(format!("tree came out as {}", tree.to_paren()));
            }
        }
        Err(e) => failures.push(format!("tree construction failed: {e}")),
    }
    let ct = CycleType::of(&p);
    if count_minimal_transitive(&ct) != BigUint::from(52416u32) {
        failures.push("factorization count is not 52416".to_string());
    }
    if count_words_closed_form(&ct) != BigUint::from(6552u32) {
        failures.push("word count is not 6552".to_string());
    }
    match enumerate_words(&decomp) {
        Ok(words) => {
            if words.len() != 6552 {
                failures.push(format!("enumeration found {} words", words.len()));
            }
        }
        Err(e) => failures.push(format!("word enumeration failed: {e}")),
    }

    if failures.is_empty() {
        CheckOutcome::pass(name, "all reference values reproduced".to_string())
    } else {
        CheckOutcome::fail(name, failures.join("; "))
    }
}

/// The three structural checks agree with the direct definition on every
/// sequence of the minimal length, for every permutation of degree at most
/// `n_max`.
pub fn characterization_equivalence(n_max: usize) -> CheckOutcome {
    let name = "characterization_equivalence";
    let mut checked = 0usize;
    for n in 1..=n_max {
        for p in all_permutations(n) {
            let length = minimal_length(&p);
            let mut disagreement = None;
            for_all_sequences(n, length, |symbols| {
                if disagreement.is_some() {
                    return;
                }
                let f = StarFactorization::new(n, symbols.to_vec()).unwrap();
                let structural = characterize(&f, &p).overall;
                let direct = is_minimal_transitive(&f, &p);
                if structural != direct {
                    disagreement = Some(format!(
                        "{p}, factors {symbols:?}: characterization {structural}, direct {direct}"
                    ));
                }
                checked += 1;
            });
            if let Some(detail) = disagreement {
                return CheckOutcome::fail(name, detail);
            }
        }
    }
    CheckOutcome::pass(name, format!("{checked} sequences up to degree {n_max}"))
}

/// Calls `visit` on every sequence over `{2..=n}` of the given length.
fn for_all_sequences(n: usize, length: usize, mut visit: impl FnMut(&[usize])) {
    if n == 1 && length > 0 {
        return;
    }
    let mut symbols = vec![2usize; length];
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

/// Both round trips of the word bijection are identities over the full
/// enumerated sets, and the cardinalities satisfy
/// `|F| = |W| · ℓ_2⋯ℓ_m`.
pub fn word_bijection_sweep(n_max: usize) -> CheckOutcome {
    let name = "word_bijection_sweep";
    let mut factorizations = 0usize;
    for n in 1..=n_max {
        for p in all_permutations(n) {
            let decomp = p.cycle_decomposition();
            let found = match brute_force_enumerate(&p, true, minimal_length(&p)) {
                Ok(found) => found,
                Err(e) => return CheckOutcome::fail(name, format!("search failed for {p}: {e}")),
            };
            for f in &found {
                let (word, anchors) = match encode(f, &p) {
                    Ok(pair) => pair,
                    Err(e) => {
                        return CheckOutcome::fail(name, format!("{p}: encode failed: {e}"))
                    }
                };
                match decode(word.letters(), &anchors.0, &decomp) {
                    Ok(back) if &back == f => {}
                    Ok(_) => {
                        return CheckOutcome::fail(
                            name,
                            format!("{p}: decode(encode(f)) differs from f for {f}"),
                        )
                    }
                    Err(e) => return CheckOutcome::fail(name, format!("{p}: decode failed: {e}")),
                }
            }
            let words = match enumerate_words(&decomp) {
                Ok(words) => words,
                Err(e) => return CheckOutcome::fail(name, format!("{p}: words failed: {e}")),
            };
            let tuples = anchor_tuples(&decomp);
            if found.len() != words.len() * tuples.len() {
                return CheckOutcome::fail(
                    name,
                    format!(
                        "{p}: |F| = {} but |W| × anchors = {} × {}",
                        found.len(),
                        words.len(),
                        tuples.len()
                    ),
                );
            }
            for word in &words {
                for tuple in &tuples {
                    let f = match decode(word.letters(), &tuple.0, &decomp) {
                        Ok(f) => f,
                        Err(e) => {
                            return CheckOutcome::fail(name, format!("{p}: decode failed: {e}"))
                        }
                    };
                    match encode(&f, &p) {
                        Ok((w2, a2)) if &w2 == word && &a2 == tuple => {}
                        Ok(_) => {
                            return CheckOutcome::fail(
                                name,
                                format!("{p}: encode(decode(w, a)) differs from (w, a)"),
                            )
                        }
                        Err(e) => {
                            return CheckOutcome::fail(name, format!("{p}: encode failed: {e}"))
                        }
                    }
                }
            }
            factorizations += found.len();
        }
    }
    CheckOutcome::pass(
        name,
        format!("{factorizations} factorizations round-tripped up to degree {n_max}"),
    )
}

/// Brute-force counts of minimal (not necessarily transitive)
/// factorizations match the fixed-point-stripping formula, and no shorter
/// factorization exists.
pub fn minimal_count_sweep(n_max: usize) -> CheckOutcome {
    let name = "minimal_count_sweep";
    let mut checked = 0usize;
    for n in 1..=n_max {
        for p in all_permutations(n) {
            let ct = CycleType::of(&p);
            let k = ct.fixed_points_not_one();
            let length = n + ct.cycle_count() - 2 * (k + 1);
            let found = match brute_force_enumerate(&p, false, length) {
                Ok(found) => found,
                Err(e) => return CheckOutcome::fail(name, format!("search failed for {p}: {e}")),
            };
            let expected = count_minimal(&ct);
            if BigUint::from(found.len()) != expected {
                return CheckOutcome::fail(
                    name,
                    format!("{p}: found {} at length {length}, formula says {expected}", found.len()),
                );
            }
            for shorter in 0..length {
                match brute_force_enumerate(&p, false, shorter) {
                    Ok(found) if found.is_empty() => {}
                    Ok(found) => {
                        return CheckOutcome::fail(
                            name,
                            format!("{p}: {} factorizations at length {shorter}", found.len()),
                        )
                    }
                    Err(e) => {
                        return CheckOutcome::fail(name, format!("search failed for {p}: {e}"))
                    }
                }
            }
            checked += 1;
        }
    }
    CheckOutcome::pass(name, format!("{checked} permutations up to degree {n_max}"))
}

/// The uniform-cycle-length count specialization agrees with the general
/// formula on the whole grid that fits in degree 9, and with brute force
/// where the sweep reaches.
pub fn uniform_length_consistency(n_max: usize) -> CheckOutcome {
    let name = "uniform_length_consistency";
    let mut grid = 0usize;
    for len in 2..=8 {
        for m in 1..=4 {
            if len * m + 1 > 9 {
                continue;
            }
            let mut lengths = vec![1];
            lengths.extend(std::iter::repeat_n(len, m));
            let ct = CycleType::new(lengths).unwrap();
            if pak_count(len, m) != count_minimal_transitive(&ct) {
                return CheckOutcome::fail(
                    name,
                    format!("specialization mismatch at len={len}, m={m}"),
                );
            }
            grid += 1;
        }
    }
    let mut anchored = Vec::new();
    if n_max >= 3 {
        anchored.push(("(2 3)", 3usize, pak_count(2, 1)));
    }
    if n_max >= 5 {
        anchored.push(("(2 3)(4 5)", 5, pak_count(2, 2)));
    }
    for (text, n, expected) in anchored {
        let p = Permutation::parse_cycles(text, Some(n)).unwrap();
        let found = match brute_force_enumerate(&p, true, minimal_length(&p)) {
            Ok(found) => found,
            Err(e) => return CheckOutcome::fail(name, format!("search failed for {p}: {e}")),
        };
        if BigUint::from(found.len()) != expected {
            return CheckOutcome::fail(
                name,
                format!("{p}: brute force {} vs specialized {expected}", found.len()),
            );
        }
    }
    CheckOutcome::pass(name, format!("{grid} grid points agree"))
}

/// The word-tree round trips are identities over all enumerated words, and
/// every tree validates with the expected colour counts.
pub fn tree_bijection_sweep(n_max: usize) -> CheckOutcome {
    let name = "tree_bijection_sweep";
    let mut words_checked = 0usize;
    for n in 1..=n_max {
        for p in all_permutations(n) {
            let decomp = p.cycle_decomposition();
            let words = match enumerate_words(&decomp) {
                Ok(words) => words,
                Err(e) => return CheckOutcome::fail(name, format!("{p}: words failed: {e}")),
            };
            for word in words {
                let tree = match word_to_tree(word.letters(), &decomp) {
                    Ok(tree) => tree,
                    Err(e) => return CheckOutcome::fail(name, format!("{p}: parse failed: {e}")),
                };
                if !validate_tree(&tree, &decomp) {
                    return CheckOutcome::fail(name, format!("{p}: invalid tree for {word}"));
                }
                if tree.white_count() != decomp.cycle_count()
                    || tree.black_count() != n - decomp.cycle_count()
                {
                    return CheckOutcome::fail(name, format!("{p}: wrong colour counts"));
                }
                match tree_to_word(&tree) {
                    Ok(back) if back == word => {}
                    Ok(back) => {
                        return CheckOutcome::fail(
                            name,
                            format!("{p}: round trip gave {back} for {word}"),
                        )
                    }
                    Err(e) => {
                        return CheckOutcome::fail(name, format!("{p}: read-back failed: {e}"))
                    }
                }
                words_checked += 1;
            }
        }
    }
    CheckOutcome::pass(name, format!("{words_checked} words up to degree {n_max}"))
}

/// Seeded draws over the 24 factorizations of (2 3)(4 5) in S5 stay within
/// 5% relative deviation per element and pass a chi-square test at
/// p > 0.01.
pub fn sampling_uniformity(draws: usize) -> CheckOutcome {
    let name = "sampling_uniformity";
    let p = Permutation::parse_cycles("(2 3)(4 5)", Some(5)).unwrap();
    let sampler = match Sampler::new(&p, 1_000_000) {
        Ok(s) => s,
        Err(e) => return CheckOutcome::fail(name, format!("sampler failed: {e}")),
    };
    let population = sampler
        .population_size()
        .to_usize()
        .expect("population fits a usize");
    if population != 24 {
        return CheckOutcome::fail(name, format!("population is {population}, expected 24"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut frequencies: std::collections::HashMap<StarFactorization, usize> =
        std::collections::HashMap::new();
    for _ in 0..draws {
        *frequencies.entry(sampler.draw(&mut rng)).or_insert(0) += 1;
    }
    if frequencies.len() != population {
        return CheckOutcome::fail(
            name,
            format!("only {} of {population} elements drawn", frequencies.len()),
        );
    }

    let expected = draws as f64 / population as f64;
    let mut max_relative = 0.0f64;
    let mut chi_square = 0.0f64;
    for &observed in frequencies.values() {
        let deviation = (observed as f64 - expected).abs() / expected;
        max_relative = max_relative.max(deviation);
        chi_square += (observed as f64 - expected).powi(2) / expected;
    }
    let chi = ChiSquared::new((population - 1) as f64).expect("valid degrees of freedom");
    let p_value = 1.0 - chi.cdf(chi_square);

    let detail = format!(
        "{draws} draws: max relative deviation {max_relative:.4}, chi-square {chi_square:.2}, p {p_value:.4}"
    );
    if max_relative <= 0.05 && p_value > 0.01 {
        CheckOutcome::pass(name, detail)
    } else {
        CheckOutcome::fail(name, detail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_sweep_passes() {
        let config = SelfTestConfig {
            n_max: 3,
            sample_draws: 0,
            inject_fault: false,
        };
        for outcome in run_all(&config) {
            assert!(outcome.ok, "{}: {}", outcome.name, outcome.detail);
        }
    }

    #[test]
    fn injected_fault_is_caught_by_name() {
        let outcome = theorem_count_sweep(2, true);
        assert!(!outcome.ok);
        assert_eq!(outcome.name, "theorem_count_sweep");
    }
}
