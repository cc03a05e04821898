//! `starfact` — count, enumerate, verify, encode and sample minimal
//! transitive star factorizations of permutations.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or parse error,
//! 3 guard exceeded.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use starfact::count::{
    count_minimal, count_minimal_transitive, count_words_closed_form, CycleType,
};
use starfact::selftest::{run_all, SelfTestConfig};
use starfact::trees::word_to_tree;
use starfact::verify::{
    brute_force_enumerate_with, characterize, is_minimal_transitive, SearchConfig,
    DEFAULT_SEARCH_GUARD,
};
use starfact::words::{
    decode, encode, enumerate_factorizations, enumerate_words_with, Sampler,
    WordEnumerationConfig, DEFAULT_WORD_GUARD,
};
use starfact::{Error, Permutation, StarFactorization};

#[derive(Parser)]
#[command(
    name = "starfact",
    version,
    about = "Minimal transitive star factorizations: counts, enumeration, verification, encodings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Exact counts for a permutation or an explicit cycle type.
    Count {
        /// Permutation in cycle notation, e.g. "(1 8 2)(3)(9 11)".
        #[arg(long)]
        perm: Option<String>,
        /// Degree; defaults to the largest symbol mentioned.
        #[arg(long)]
        n: Option<usize>,
        /// Cycle lengths, first entry the cycle containing 1, e.g. "3,1,4,1,2".
        #[arg(long, conflicts_with_all = ["perm", "n"])]
        cycle_type: Option<String>,
        /// Candidate budget for the cross-checking brute-force search.
        #[arg(long)]
        guard: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List every minimal transitive star factorization (or every word).
    Enumerate {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        n: Option<usize>,
        /// List the words instead of the factorizations.
        #[arg(long)]
        words: bool,
        /// Budget for the number of items produced.
        #[arg(long)]
        guard: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check a factorization against the structural characterization and
    /// the direct definition.
    Verify {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        n: Option<usize>,
        /// Non-1 symbols of the factors, e.g. "9 11 9 2 10 5 3 3 4 7 6 6 10 8".
        #[arg(long)]
        factors: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Encode a factorization as its word, anchors and tree.
    Map {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        factors: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decode a word and anchors back into a factorization.
    Invert {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        n: Option<usize>,
        /// Space-separated letters, e.g. "5 5 5 1 3 3 2 2 3 3 4 4 3 1".
        #[arg(long)]
        word: String,
        /// Comma-separated anchors, e.g. "3,10,6,9"; empty for one cycle.
        #[arg(long, default_value = "")]
        anchors: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Build the bicoloured tree of a word.
    Tree {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Draw a uniformly random minimal transitive star factorization.
    Sample {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        guard: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the cross-validation sweep.
    Selftest {
        /// Largest degree swept exhaustively.
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        /// Draws for the sampling-uniformity check.
        #[arg(long, default_value_t = 100_000)]
        draws: usize,
        /// Negative control: breaks one formula so the sweep must fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// One JSON shape for every command; unused keys are omitted. Key order is
/// fixed by field order, so output is byte-deterministic.
#[derive(Serialize, Default)]
struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lengths: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count_transitive: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count_minimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count_words: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count_brute: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    anchors: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factors: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tree_paren: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factorizations: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    words: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    occurrence_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nesting_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal_transitive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Vec<CheckReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ok: Option<bool>,
}

#[derive(Serialize)]
struct CheckReport {
    name: String,
    ok: bool,
    detail: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                Error::GuardExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Count {
            perm,
            n,
            cycle_type,
            guard,
            format,
        } => cmd_count(perm, n, cycle_type, guard, format),
        Command::Enumerate {
            perm,
            n,
            words,
            guard,
            format,
        } => cmd_enumerate(&perm, n, words, guard, format),
        Command::Verify {
            perm,
            n,
            factors,
            format,
        } => cmd_verify(&perm, n, &factors, format),
        Command::Map {
            perm,
            n,
            factors,
            format,
        } => cmd_map(&perm, n, &factors, format),
        Command::Invert {
            perm,
            n,
            word,
            anchors,
            format,
        } => cmd_invert(&perm, n, &word, &anchors, format),
        Command::Tree {
            perm,
            n,
            word,
            format,
        } => cmd_tree(&perm, n, &word, format),
        Command::Sample {
            perm,
            n,
            seed,
            guard,
            format,
        } => cmd_sample(&perm, n, seed, guard, format),
        Command::Selftest {
            nmax,
            draws,
            inject_fault,
            format,
        } => cmd_selftest(nmax, draws, inject_fault, format),
    }
}

fn parse_word_text(text: &str) -> Result<Vec<usize>, Error> {
    text.split_whitespace()
        .map(|token| {
            token.parse().map_err(|_| Error::Parse {
                position: token.as_ptr() as usize - text.as_ptr() as usize,
                message: format!("invalid letter '{token}'"),
            })
        })
        .collect()
}

fn parse_anchor_text(text: &str) -> Result<Vec<usize>, Error> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|token| {
            token.trim().parse().map_err(|_| Error::Parse {
                position: token.as_ptr() as usize - text.as_ptr() as usize,
                message: format!("invalid anchor '{token}'"),
            })
        })
        .collect()
}

fn parse_cycle_type_text(text: &str) -> Result<CycleType, Error> {
    let lengths = text
        .split(',')
        .map(|token| {
            token.trim().parse().map_err(|_| Error::Parse {
                position: token.as_ptr() as usize - text.as_ptr() as usize,
                message: format!("invalid cycle length '{token}'"),
            })
        })
        .collect::<Result<Vec<usize>, Error>>()?;
    CycleType::new(lengths)
}

fn emit(report: &Report, format: Format, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        ),
        _ => {
            let rendered = text();
            if !rendered.is_empty() {
                println!("{rendered}");
            }
        }
    }
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_count(
    perm: Option<String>,
    n: Option<usize>,
    cycle_type: Option<String>,
    guard: Option<u64>,
    format: Format,
) -> Result<ExitCode, Error> {
    let (ct, representative) = match (perm, cycle_type) {
        (Some(text), None) => {
            let p = Permutation::parse_cycles(&text, n)?;
            (CycleType::of(&p), p)
        }
        (None, Some(text)) => {
            let ct = parse_cycle_type_text(&text)?;
            let p = ct.representative();
            (ct, p)
        }
        _ => {
            return Err(Error::Parse {
                position: 0,
                message: "exactly one of --perm or --cycle-type is required".into(),
            })
        }
    };

    let transitive = count_minimal_transitive(&ct);
    let search_config = SearchConfig {
        guard: guard.unwrap_or(DEFAULT_SEARCH_GUARD),
        ..SearchConfig::default()
    };
    let length = ct.degree() + ct.cycle_count() - 2;
    let (count_brute, ok) =
        match brute_force_enumerate_with(&representative, true, length, &search_config) {
            Ok(found) => {
                let brute = found.len().to_string();
                let agrees = brute == transitive.to_string();
                (Some(brute), Some(agrees))
            }
            Err(Error::GuardExceeded { .. }) => (None, None),
            Err(e) => return Err(e),
        };

    let report = Report {
        n: Some(ct.degree()),
        m: Some(ct.cycle_count()),
        lengths: Some(ct.lengths().to_vec()),
        count_transitive: Some(transitive.to_string()),
        count_minimal: Some(count_minimal(&ct).to_string()),
        count_words: Some(count_words_closed_form(&ct).to_string()),
        count_brute,
        ok,
        ..Report::default()
    };
    emit(&report, format, || {
        let mut lines = vec![
            format!("n: {}", report.n.unwrap()),
            format!("m: {}", report.m.unwrap()),
            format!("lengths: {:?}", report.lengths.as_ref().unwrap()),
            format!("count_transitive: {}", report.count_transitive.as_ref().unwrap()),
            format!("count_minimal: {}", report.count_minimal.as_ref().unwrap()),
            format!("count_words: {}", report.count_words.as_ref().unwrap()),
        ];
        match (&report.count_brute, report.ok) {
            (Some(brute), Some(true)) => lines.push(format!("count_brute: {brute} (agrees)")),
            (Some(brute), _) => lines.push(format!("count_brute: {brute} (MISMATCH)")),
            (None, _) => lines.push("count_brute: skipped (guard)".into()),
        }
        lines.join("\n")
    });
    Ok(exit(ok.unwrap_or(true)))
}

fn cmd_enumerate(
    perm: &str,
    n: Option<usize>,
    list_words: bool,
    guard: Option<u64>,
    format: Format,
) -> Result<ExitCode, Error> {
    let p = Permutation::parse_cycles(perm, n)?;
    let decomp = p.cycle_decomposition();
    let ct = CycleType::from_decomposition(&decomp);
    let guard = guard.unwrap_or(DEFAULT_WORD_GUARD);

    let mut report = Report {
        n: Some(ct.degree()),
        m: Some(ct.cycle_count()),
        lengths: Some(ct.lengths().to_vec()),
        count_transitive: Some(count_minimal_transitive(&ct).to_string()),
        count_words: Some(count_words_closed_form(&ct).to_string()),
        ..Report::default()
    };
    let lines = if list_words {
        let words = enumerate_words_with(
            &decomp,
            &WordEnumerationConfig {
                guard,
                ..WordEnumerationConfig::default()
            },
        )?;
        let lines: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        report.words = Some(lines.clone());
        lines
    } else {
        let found = enumerate_factorizations(&decomp, guard)?;
        let lines: Vec<String> = found.iter().map(|f| f.symbol_line()).collect();
        report.factorizations = Some(lines.clone());
        lines
    };
    emit(&report, format, || lines.join("\n"));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    perm: &str,
    n: Option<usize>,
    factors: &str,
    format: Format,
) -> Result<ExitCode, Error> {
    let p = Permutation::parse_cycles(perm, n)?;
    let f = StarFactorization::parse_symbols(p.degree(), factors)?;
    let report_checks = characterize(&f, &p);
    let direct = is_minimal_transitive(&f, &p);
    let ok = report_checks.overall && direct == report_checks.overall;

    let report = Report {
        n: Some(p.degree()),
        m: Some(p.cycle_decomposition().cycle_count()),
        factors: Some(f.symbol_line()),
        occurrence_ok: Some(report_checks.occurrence_ok),
        order_ok: Some(report_checks.order_ok),
        nesting_ok: Some(report_checks.nesting_ok),
        minimal_transitive: Some(direct),
        ok: Some(report_checks.overall),
        ..Report::default()
    };
    emit(&report, format, || {
        format!(
            "occurrence_ok: {}\norder_ok: {}\nnesting_ok: {}\nminimal_transitive: {}\nok: {}",
            report_checks.occurrence_ok,
            report_checks.order_ok,
            report_checks.nesting_ok,
            direct,
            report_checks.overall
        )
    });
    Ok(exit(ok))
}

fn cmd_map(perm: &str, n: Option<usize>, factors: &str, format: Format) -> Result<ExitCode, Error> {
    let p = Permutation::parse_cycles(perm, n)?;
    let f = StarFactorization::parse_symbols(p.degree(), factors)?;
    let (word, anchors) = encode(&f, &p)?;
    let decomp = p.cycle_decomposition();
    let tree = word_to_tree(word.letters(), &decomp)?;
    let round_trip = decode(word.letters(), &anchors.0, &decomp)? == f;

    if format == Format::Dot {
        print!("{}", tree.to_dot());
        return Ok(exit(round_trip));
    }
    let report = Report {
        n: Some(p.degree()),
        m: Some(decomp.cycle_count()),
        word: Some(word.to_string()),
        anchors: Some(anchors.to_string()),
        factors: Some(f.symbol_line()),
        tree_paren: Some(tree.to_paren()),
        ok: Some(round_trip),
        ..Report::default()
    };
    emit(&report, format, || {
        format!(
            "word: {word}\nanchors: {anchors}\ntree: {}\nok: {round_trip}",
            tree.to_paren()
        )
    });
    Ok(exit(round_trip))
}

fn cmd_invert(
    perm: &str,
    n: Option<usize>,
    word: &str,
    anchors: &str,
    format: Format,
) -> Result<ExitCode, Error> {
    let p = Permutation::parse_cycles(perm, n)?;
    let decomp = p.cycle_decomposition();
    let letters = parse_word_text(word)?;
    let anchor_symbols = parse_anchor_text(anchors)?;
    let f = decode(&letters, &anchor_symbols, &decomp)?;
    let (word_back, anchors_back) = encode(&f, &p)?;
    let round_trip = word_back.letters() == letters && anchors_back.0 == anchor_symbols;

    let report = Report {
        n: Some(p.degree()),
        m: Some(decomp.cycle_count()),
        word: Some(word_back.to_string()),
        anchors: Some(anchors_back.to_string()),
        factors: Some(f.symbol_line()),
        ok: Some(round_trip),
        ..Report::default()
    };
    emit(&report, format, || {
        format!("factors: {}\nok: {round_trip}", f.symbol_line())
    });
    Ok(exit(round_trip))
}

fn cmd_tree(perm: &str, n: Option<usize>, word: &str, format: Format) -> Result<ExitCode, Error> {
    let p = Permutation::parse_cycles(perm, n)?;
    let decomp = p.cycle_decomposition();
    let letters = parse_word_text(word)?;
    let tree = word_to_tree(&letters, &decomp)?;

    if format == Format::Dot {
        print!("{}", tree.to_dot());
        return Ok(ExitCode::SUCCESS);
    }
    let report = Report {
        n: Some(p.degree()),
        m: Some(decomp.cycle_count()),
        tree_paren: Some(tree.to_paren()),
        ok: Some(true),
        ..Report::default()
    };
    emit(&report, format, || tree.to_paren());
    Ok(ExitCode::SUCCESS)
}

fn cmd_sample(
    perm: &str,
    n: Option<usize>,
    seed: u64,
    guard: Option<u64>,
    format: Format,
) -> Result<ExitCode, Error> {
    let p = Permutation::parse_cycles(perm, n)?;
    let sampler = Sampler::new(&p, guard.unwrap_or(DEFAULT_WORD_GUARD))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = sampler.draw(&mut rng);
    let decomp = p.cycle_decomposition();
    let (word, anchors) = encode(&f, &p)?;

    let report = Report {
        n: Some(p.degree()),
        m: Some(decomp.cycle_count()),
        word: Some(word.to_string()),
        anchors: Some(anchors.to_string()),
        factors: Some(f.symbol_line()),
        ok: Some(true),
        ..Report::default()
    };
    emit(&report, format, || f.symbol_line());
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(
    nmax: usize,
    draws: usize,
    inject_fault: bool,
    format: Format,
) -> Result<ExitCode, Error> {
    let outcomes = run_all(&SelfTestConfig {
        n_max: nmax,
        sample_draws: draws,
        inject_fault,
    });
    let all_ok = outcomes.iter().all(|o| o.ok);

    let report = Report {
        checks: Some(
            outcomes
                .iter()
                .map(|o| CheckReport {
                    name: o.name.to_string(),
                    ok: o.ok,
                    detail: o.detail.clone(),
                })
                .collect(),
        ),
        ok: Some(all_ok),
        ..Report::default()
    };
    emit(&report, format, || {
        let mut lines: Vec<String> = outcomes
            .iter()
            .map(|o| {
                format!(
                    "{} {} — {}",
                    if o.ok { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                )
            })
            .collect();
        let passed = outcomes.iter().filter(|o| o.ok).count();
        lines.push(format!("ok: {passed}/{}", outcomes.len()));
        lines.join("\n")
    });
    Ok(exit(all_ok))
}
