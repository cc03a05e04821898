//! Permutations of `{1, …, n}`, their cycle decompositions, and star
//! factorizations.
//!
//! Symbols are 1-based everywhere. Cycle decompositions are kept in a
//! canonical form: cycles are listed in increasing order of least element
//! and each cycle is rotated to begin at its least element, so the first
//! cycle always contains the symbol 1 and fixed points appear as length-1
//! cycles.

use std::fmt;

use crate::error::Error;

/// A permutation of `{1, …, n}` stored by its image table; `images[i]` is
/// the image of symbol `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity on `{1, …, n}`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be at least 1");
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from its image table; `images[i]` is the image
    /// of `i + 1`. The table must be a bijection of `{1, …, n}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation {
                reason: "empty image table".into(),
            });
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v < 1 || v > n {
                return Err(Error::InvalidPermutation {
                    reason: format!("image {v} out of range 1..={n}"),
                });
            }
            if seen[v] {
                return Err(Error::InvalidPermutation {
                    reason: format!("image {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of symbol `x` (1-based).
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Composition `self ∘ other`: `other` is applied first, so
    /// `result(j) = self(other(j))`.
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        })
    }

    /// Canonical cycle decomposition, fixed points included as length-1
    /// cycles.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut visited = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut cycle = vec![start];
            let mut x = self.apply(start);
            while x != start {
                visited[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            cycles.push(cycle);
        }
        CycleDecomposition::from_canonical_cycles(cycles)
    }

    /// Parses cycle notation such as `"(1 8 2)(3)(9 11)"`. Symbols may be
    /// separated by whitespace or commas. Unmentioned symbols are fixed
    /// points. The degree is `n` when given, otherwise the largest symbol
    /// mentioned (1 for an empty string).
    pub fn parse_cycles(text: &str, n: Option<usize>) -> Result<Self, Error> {
        let cycles = scan_cycles(text)?;
        let max_symbol = cycles
            .iter()
            .flatten()
            .map(|&(s, _)| s)
            .max()
            .unwrap_or(1);
        let degree = n.unwrap_or(max_symbol);
        let mut seen = vec![false; degree + 1];
        for &(symbol, pos) in cycles.iter().flatten() {
            if symbol > degree {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("symbol {symbol} exceeds degree {degree}"),
                });
            }
            if seen[symbol] {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("symbol {symbol} repeated"),
                });
            }
            seen[symbol] = true;
        }
        let mut images: Vec<usize> = (1..=degree).collect();
        for cycle in &cycles {
            for (i, &(symbol, _)) in cycle.iter().enumerate() {
                images[symbol - 1] = cycle[(i + 1) % cycle.len()].0;
            }
        }
        Ok(Permutation { images })
    }

}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycle_decomposition().cycles() {
            write!(f, "(")?;
            for (i, s) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// All `n!` permutations of degree `n`, lexicographic by image table.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    assert!(n >= 1, "degree must be at least 1");
    fn extend(n: usize, used: &mut Vec<bool>, prefix: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation {
                images: prefix.clone(),
            });
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                extend(n, used, prefix, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(n, &mut vec![false; n + 1], &mut Vec::with_capacity(n), &mut out);
    out
}

/// Scans `text` into cycles of `(symbol, byte_position)` pairs without any
/// disjointness or range checks.
fn scan_cycles(text: &str) -> Result<Vec<Vec<(usize, usize)>>, Error> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut cycles = Vec::new();

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let scan_int = |pos: &mut usize| -> Result<(usize, usize), Error> {
        let start = *pos;
        if *pos >= bytes.len() || !bytes[*pos].is_ascii_digit() {
            return Err(Error::Parse {
                position: *pos,
                message: "expected a symbol".into(),
            });
        }
        let mut value: usize = 0;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((bytes[*pos] - b'0') as usize))
                .ok_or(Error::Parse {
                    position: start,
                    message: "symbol too large".into(),
                })?;
            *pos += 1;
        }
        if value == 0 {
            return Err(Error::Parse {
                position: start,
                message: "symbols must be positive".into(),
            });
        }
        Ok((value, start))
    };

    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(Error::Parse {
                position: pos,
                message: "expected '('".into(),
            });
        }
        pos += 1;
        skip_ws(&mut pos);
        if pos < bytes.len() && bytes[pos] == b')' {
            return Err(Error::Parse {
                position: pos,
                message: "empty cycle".into(),
            });
        }
        let mut cycle = vec![scan_int(&mut pos)?];
        loop {
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b',' {
                pos += 1;
                skip_ws(&mut pos);
                cycle.push(scan_int(&mut pos)?);
                continue;
            }
            if pos < bytes.len() && bytes[pos] == b')' {
                pos += 1;
                break;
            }
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                cycle.push(scan_int(&mut pos)?);
                continue;
            }
            return Err(Error::Parse {
                position: pos,
                message: "expected symbol, ',' or ')'".into(),
            });
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Canonical cycle decomposition of a permutation.
///
/// Cycles partition `{1, …, n}`, are listed in increasing order of least
/// element, and each is rotated to begin at its least element, so cycle 1
/// contains the symbol 1. Orbit indices are 1-based.
#[derive(Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
    // symbol -> (orbit index - 1, position within cycle); entry 0 unused
    location: Vec<(usize, usize)>,
}

impl CycleDecomposition {
    fn from_canonical_cycles(cycles: Vec<Vec<usize>>) -> Self {
        let n: usize = cycles.iter().map(Vec::len).sum();
        let mut location = vec![(0, 0); n + 1];
        for (j, cycle) in cycles.iter().enumerate() {
            for (i, &s) in cycle.iter().enumerate() {
                location[s] = (j, i);
            }
        }
        CycleDecomposition { cycles, location }
    }

    /// Builds a decomposition from explicit cycles covering `{1, …, n}`;
    /// the input is canonicalized.
    pub fn from_cycles(mut cycles: Vec<Vec<usize>>, n: usize) -> Result<Self, Error> {
        let mut seen = vec![false; n + 1];
        let mut covered = 0;
        for cycle in &cycles {
            if cycle.is_empty() {
                return Err(Error::InvalidPermutation {
                    reason: "empty cycle".into(),
                });
            }
            for &s in cycle {
                if s < 1 || s > n {
                    return Err(Error::InvalidPermutation {
                        reason: format!("symbol {s} out of range 1..={n}"),
                    });
                }
                if seen[s] {
                    return Err(Error::InvalidPermutation {
                        reason: format!("symbol {s} repeated"),
                    });
                }
                seen[s] = true;
                covered += 1;
            }
        }
        if covered != n {
            return Err(Error::InvalidPermutation {
                reason: format!("cycles cover {covered} of {n} symbols"),
            });
        }
        for cycle in &mut cycles {
            let least = cycle.iter().position(|s| s == cycle.iter().min().unwrap());
            cycle.rotate_left(least.unwrap());
        }
        cycles.sort_by_key(|c| c[0]);
        Ok(Self::from_canonical_cycles(cycles))
    }

    pub fn degree(&self) -> usize {
        self.location.len() - 1
    }

    /// Number of cycles, `m`.
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Cycle lengths `ℓ_1, …, ℓ_m` in canonical cycle order.
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// 1-based index of the orbit containing `symbol`.
    pub fn orbit_of(&self, symbol: usize) -> usize {
        self.location[symbol].0 + 1
    }

    /// Elements of orbit `j` (1-based), in cycle order starting at the least
    /// element.
    pub fn orbit(&self, j: usize) -> &[usize] {
        &self.cycles[j - 1]
    }

    pub fn length_of(&self, j: usize) -> usize {
        self.cycles[j - 1].len()
    }

    /// Image of `x` under the permutation the cycles describe.
    pub fn image(&self, x: usize) -> usize {
        self.power_image(x, 1)
    }

    /// Image of `x` under the `e`-th power of the permutation.
    pub fn power_image(&self, x: usize, e: usize) -> usize {
        let (j, i) = self.location[x];
        let cycle = &self.cycles[j];
        cycle[(i + e) % cycle.len()]
    }

    /// Rebuilds the permutation the decomposition describes.
    pub fn permutation(&self) -> Permutation {
        let images = (1..=self.degree()).map(|x| self.image(x)).collect();
        Permutation { images }
    }
}

impl fmt::Debug for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleDecomposition[{}]", self.permutation())
    }
}

/// A star transposition `(1 i)` with `i ≥ 2`, stored by its non-1 symbol.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct StarTransposition {
    other: usize,
}

impl StarTransposition {
    pub fn new(other: usize) -> Result<Self, Error> {
        if other < 2 {
            return Err(Error::InvalidSymbol {
                symbol: other,
                degree: 0,
            });
        }
        Ok(StarTransposition { other })
    }

    pub fn other(&self) -> usize {
        self.other
    }
}

impl fmt::Display for StarTransposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1 {})", self.other)
    }
}

impl fmt::Debug for StarTransposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An ordered sequence of star transpositions in a fixed symmetric group.
///
/// The product convention is rightmost factor applied first, so a
/// factorization `(τ_1, …, τ_r)` evaluates to `τ_1 ∘ τ_2 ∘ … ∘ τ_r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StarFactorization {
    degree: usize,
    factors: Vec<StarTransposition>,
}

impl StarFactorization {
    /// Builds a factorization in the symmetric group of the given degree
    /// from the non-1 symbols of its factors.
    pub fn new(degree: usize, others: impl IntoIterator<Item = usize>) -> Result<Self, Error> {
        if degree == 0 {
            return Err(Error::InvalidPermutation {
                reason: "degree must be at least 1".into(),
            });
        }
        let mut factors = Vec::new();
        for o in others {
            if o < 2 || o > degree {
                return Err(Error::InvalidSymbol { symbol: o, degree });
            }
            factors.push(StarTransposition { other: o });
        }
        Ok(StarFactorization { degree, factors })
    }

    pub fn empty(degree: usize) -> Self {
        StarFactorization {
            degree,
            factors: Vec::new(),
        }
    }

    /// Parses a whitespace-separated list of non-1 symbols, e.g.
    /// `"9 11 9 2"`.
    pub fn parse_symbols(degree: usize, text: &str) -> Result<Self, Error> {
        let mut others = Vec::new();
        for token in text.split_whitespace() {
            let symbol: usize = token.parse().map_err(|_| Error::Parse {
                position: token.as_ptr() as usize - text.as_ptr() as usize,
                message: format!("invalid symbol '{token}'"),
            })?;
            others.push(symbol);
        }
        Self::new(degree, others)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[StarTransposition] {
        &self.factors
    }

    pub fn other_symbols(&self) -> impl Iterator<Item = usize> + '_ {
        self.factors.iter().map(|t| t.other)
    }

    pub fn reversed(&self) -> Self {
        StarFactorization {
            degree: self.degree,
            factors: self.factors.iter().rev().copied().collect(),
        }
    }

    /// The product `τ_1 ∘ τ_2 ∘ … ∘ τ_r` (rightmost applied first); the
    /// empty sequence yields the identity.
    pub fn evaluate(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.degree).collect();
        // Right-multiplying an accumulated product by (1 i) swaps the
        // entries at positions 1 and i of its image table.
        for t in &self.factors {
            images.swap(0, t.other - 1);
        }
        Permutation { images }
    }

    /// Whether the factors generate a group acting transitively on
    /// `{1, …, n}`. Every star transposition moves 1, so this holds exactly
    /// when `n == 1` or every symbol `2..=n` occurs among the factors.
    pub fn is_transitive(&self) -> bool {
        let n = self.degree;
        if n == 1 {
            return true;
        }
        let mut touched = vec![false; n + 1];
        let mut count = 0;
        for t in &self.factors {
            if !touched[t.other] {
                touched[t.other] = true;
                count += 1;
            }
        }
        count == n - 1
    }

    /// The non-1 symbols as a space-separated line, e.g. `"9 11 9 2"`.
    pub fn symbol_line(&self) -> String {
        self.factors
            .iter()
            .map(|t| t.other.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for StarFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "(empty)");
        }
        for t in &self.factors {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StarFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StarFactorization[n={}, {}]", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Factor symbols of the running example used throughout the crate:
    /// a 14-term factorization of (1 8 2)(3)(4 5 10 7)(6)(9 11) in S11.
    pub(crate) const REF_SYMBOLS: [usize; 14] = [9, 11, 9, 2, 10, 5, 3, 3, 4, 7, 6, 6, 10, 8];
    pub(crate) const REF_PERM: &str = "(1 8 2)(3)(4 5 10 7)(6)(9 11)";

    fn perm(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, Some(n)).unwrap()
    }

    #[test]
    fn compose_identity_is_neutral() {
        let p = perm("(1 3 2)", 3);
        let id = Permutation::identity(3);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&id).unwrap(), p);
    }

    #[test]
    fn compose_applies_right_operand_first() {
        let t12 = perm("(1 2)", 3);
        let t13 = perm("(1 3)", 3);
        assert_eq!(t12.compose(&t13).unwrap(), perm("(1 3 2)", 3));
        assert_eq!(t13.compose(&t12).unwrap(), perm("(1 2 3)", 3));
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert_eq!(
            p.compose(&q),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn evaluate_reference_factorization() {
        let f = StarFactorization::new(11, REF_SYMBOLS).unwrap();
        assert_eq!(f.evaluate(), perm(REF_PERM, 11));
    }

    #[test]
    fn evaluate_empty_is_identity() {
        assert_eq!(
            StarFactorization::empty(5).evaluate(),
            Permutation::identity(5)
        );
    }

    #[test]
    fn evaluate_two_factors() {
        let f = StarFactorization::new(3, [3, 2]).unwrap();
        assert_eq!(f.evaluate(), perm("(1 2 3)", 3));
    }

    #[test]
    fn cycle_decomposition_reference() {
        let d = perm(REF_PERM, 11).cycle_decomposition();
        assert_eq!(
            d.cycles(),
            &[
                vec![1, 8, 2],
                vec![3],
                vec![4, 5, 10, 7],
                vec![6],
                vec![9, 11]
            ]
        );
        assert_eq!(d.lengths(), vec![3, 1, 4, 1, 2]);
    }

    #[test]
    fn cycle_decomposition_identity_and_transposition() {
        let d = Permutation::identity(3).cycle_decomposition();
        assert_eq!(d.cycles(), &[vec![1], vec![2], vec![3]]);
        assert_eq!(d.lengths(), vec![1, 1, 1]);

        let d = perm("(2 3)", 3).cycle_decomposition();
        assert_eq!(d.cycles(), &[vec![1], vec![2, 3]]);
        assert_eq!(d.lengths(), vec![1, 2]);
    }

    #[test]
    fn decomposition_lookup_helpers() {
        let d = perm(REF_PERM, 11).cycle_decomposition();
        assert_eq!(d.orbit_of(10), 3);
        assert_eq!(d.orbit(3), &[4, 5, 10, 7]);
        assert_eq!(d.image(10), 7);
        assert_eq!(d.power_image(10, 3), 5);
        assert_eq!(d.image(1), 8);
    }

    #[test]
    fn parse_reference_text() {
        let p = Permutation::parse_cycles(REF_PERM, Some(11)).unwrap();
        assert_eq!(p.apply(1), 8);
        assert_eq!(p.apply(9), 11);
        assert_eq!(p.apply(3), 3);
    }

    #[test]
    fn parse_empty_is_identity() {
        assert_eq!(
            Permutation::parse_cycles("", Some(4)).unwrap(),
            Permutation::identity(4)
        );
    }

    #[test]
    fn parse_infers_degree_from_max_symbol() {
        let p = Permutation::parse_cycles("(2 3)", None).unwrap();
        assert_eq!(p.degree(), 3);
        let p = Permutation::parse_cycles("(2 3)", Some(4)).unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(p.apply(4), 4);
        assert_eq!(p.apply(1), 1);
    }

    #[test]
    fn parse_accepts_commas() {
        assert_eq!(
            Permutation::parse_cycles("(1, 2)(3,4)", None).unwrap(),
            perm("(1 2)(3 4)", 4)
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Permutation::parse_cycles("(1 2", None) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match Permutation::parse_cycles("(1 2)(2 3)", None) {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 6);
                assert!(message.contains("repeated"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match Permutation::parse_cycles("(5)", Some(4)) {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 1);
                assert!(message.contains("exceeds degree"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            Permutation::parse_cycles("()", None),
            Err(Error::Parse { position: 1, .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(0)", None),
            Err(Error::Parse { position: 1, .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("x", None),
            Err(Error::Parse { position: 0, .. })
        ));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(perm(REF_PERM, 11).to_string(), REF_PERM);
        assert_eq!(Permutation::identity(4).to_string(), "(1)(2)(3)(4)");
    }

    #[test]
    fn parse_format_round_trip_up_to_degree_5() {
        for n in 1..=5 {
            for p in all_permutations(n) {
                let back = Permutation::parse_cycles(&p.to_string(), Some(n)).unwrap();
                assert_eq!(back, p);
            }
        }
    }

    #[test]
    fn decomposition_rebuild_round_trip_up_to_degree_6() {
        for n in 1..=6 {
            for p in all_permutations(n) {
                assert_eq!(p.cycle_decomposition().permutation(), p);
            }
        }
    }

    #[test]
    fn transitivity_requires_every_symbol() {
        let f = StarFactorization::new(11, REF_SYMBOLS).unwrap();
        assert!(f.is_transitive());
        assert!(StarFactorization::new(2, [2, 2]).unwrap().is_transitive());
        assert!(!StarFactorization::new(3, [2, 2]).unwrap().is_transitive());
        assert!(StarFactorization::empty(1).is_transitive());
    }

    #[test]
    fn factorization_rejects_out_of_range_symbols() {
        assert!(matches!(
            StarFactorization::new(3, [4]),
            Err(Error::InvalidSymbol {
                symbol: 4,
                degree: 3
            })
        ));
        assert!(matches!(
            StarFactorization::new(3, [1]),
            Err(Error::InvalidSymbol { symbol: 1, .. })
        ));
    }

    #[test]
    fn compose_is_associative_on_s3() {
        let all = all_permutations(3);
        for a in &all {
            for b in &all {
                for c in &all {
                    let left = a.compose(b).unwrap().compose(c).unwrap();
                    let right = a.compose(&b.compose(c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn inverse_composes_to_identity_on_s4() {
        for p in all_permutations(4) {
            assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn from_cycles_canonicalizes() {
        let d = CycleDecomposition::from_cycles(vec![vec![10, 7, 4, 5], vec![8, 2, 1]], 11)
            .unwrap_err();
        assert!(matches!(d, Error::InvalidPermutation { .. }), "missing symbols");

        let d = CycleDecomposition::from_cycles(
            vec![vec![10, 7, 4, 5], vec![8, 2, 1], vec![9, 11], vec![3], vec![6]],
            11,
        )
        .unwrap();
        assert_eq!(d.permutation().to_string(), REF_PERM);
        assert_eq!(d.cycles()[0], vec![1, 8, 2]);
        assert_eq!(d.cycles()[2], vec![4, 5, 10, 7]);

        assert!(CycleDecomposition::from_cycles(vec![vec![1, 2], vec![2]], 2).is_err());
        assert!(CycleDecomposition::from_cycles(vec![vec![1], vec![3]], 2).is_err());
    }

    #[test]
    fn all_permutations_counts() {
        assert_eq!(all_permutations(1).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
        assert_eq!(all_permutations(5).len(), 120);
    }

    proptest! {
        #[test]
        fn evaluate_of_concatenation_is_composition(
            n in 2usize..8,
            seed in proptest::collection::vec(0usize..100, 0..12),
            split in 0usize..12,
        ) {
            let symbols: Vec<usize> = seed.iter().map(|s| 2 + s % (n - 1)).collect();
            let split = split.min(symbols.len());
            let f = StarFactorization::new(n, symbols[..split].to_vec()).unwrap();
            let g = StarFactorization::new(n, symbols[split..].to_vec()).unwrap();
            let fg = StarFactorization::new(n, symbols.clone()).unwrap();
            prop_assert_eq!(fg.evaluate(), f.evaluate().compose(&g.evaluate()).unwrap());
        }

        #[test]
        fn parse_round_trip_random(n in 1usize..8, index in 0usize..5040) {
            let all = all_permutations(n);
            let p = &all[index % all.len()];
            prop_assert_eq!(&Permutation::parse_cycles(&p.to_string(), Some(n)).unwrap(), p);
        }
    }
}
