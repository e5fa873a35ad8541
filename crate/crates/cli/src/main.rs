//! `h2lyndon`: Lyndon words, Magnus expansions, pairing matrices, shuffle relations and a
//! seeded verification suite from the command line.
//!
//! Exit status: 0 on success, 1 when a mathematical consistency check fails, 2 on a
//! usage or configuration error.

mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use h2lyndon::checks::{run_checks, VerifyOptions, CHECK_NAMES, REPORT_SCHEMA};
use h2lyndon::fp;
use h2lyndon::matgrp::rho;
use h2lyndon::pairing::{pairing_matrix, PairingError};
use h2lyndon::series::{eps, koch_test, magnus, IntPoly, Modulus};
use h2lyndon::shufalg::{
    infiltration, reduce_mod_shuffles, shuffle, shuffle_span_basis, ShuffleError, DEFAULT_SPAN_CAP,
};
use h2lyndon::words::{lyndon_words_of_length, necklace, Alphabet, Word};

use config::{Common, Format, RunConfig};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, files or inputs.
    Usage(String),
    /// A computed object violated a property it must have.
    Consistency(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Consistency(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "h2lyndon", version, about = "Lyndon words, Magnus expansions and pairing matrices modulo p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List Lyndon words of length at most n with per-length counts.
    Lyndon {
        #[command(flatten)]
        common: Common,
    },
    /// Compute the pairing matrix over Lyndon words of length at most n.
    PairingMatrix {
        #[command(flatten)]
        common: Common,
        /// Largest number of rows allowed.
        #[arg(long)]
        dim_cap: Option<usize>,
    },
    /// Expand a group word as a truncated series.
    Magnus {
        /// Group word, e.g. "x^-1", "[x,y]^3 y" or "x y x^-1".
        word: String,
        #[command(flatten)]
        common: Common,
        /// Truncation degree.
        #[arg(long)]
        deg: Option<usize>,
        /// Coefficient modulus, a prime power; defaults to p^n.
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Print the coefficient of this word; may be repeated.
        #[arg(long = "coeff")]
        coeffs: Vec<String>,
        /// Test membership in the n-th lower p-central term.
        #[arg(long)]
        koch: bool,
        /// Print the unipotent matrix of coefficients of subwords of this word; may be repeated.
        #[arg(long = "rho")]
        rho_words: Vec<String>,
    },
    /// Shuffle and infiltration products, spans of shuffles and reductions.
    Shuffle {
        u: Option<String>,
        v: Option<String>,
        #[command(flatten)]
        common: Common,
        /// Row-reduce the span of shuffles in this degree.
        #[arg(long)]
        span: Option<usize>,
        /// Express this word in the Lyndon basis modulo shuffles.
        #[arg(long)]
        reduce: Option<String>,
    },
    /// Run the verification suites and emit a report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Run only these suites (repeatable or comma separated).
        #[arg(long = "check", value_delimiter = ',')]
        checks: Vec<String>,
        /// Use this group element instead of random ones where a suite takes one.
        #[arg(long)]
        sigma: Option<String>,
        /// Random samples per randomized suite.
        #[arg(long)]
        cases: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Usage(msg) | CliError::Consistency(msg)) = &e;
            eprintln!("h2lyndon: {msg}");
            ExitCode::from(e.code())
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn emit(config: &RunConfig, content: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Lyndon { common } => {
            let config = RunConfig::resolve(&common, None, None, None, None)?;
            emit(&config, &cmd_lyndon(&config))
        }
        Command::PairingMatrix { common, dim_cap } => {
            let config = RunConfig::resolve(&common, None, None, None, dim_cap)?;
            cmd_pairing_matrix(&config)
        }
        Command::Magnus { word, common, deg, modulus, coeffs, koch, rho_words } => {
            let config = RunConfig::resolve(&common, deg, modulus, None, None)?;
            cmd_magnus(&config, &word, &coeffs, koch, &rho_words)
        }
        Command::Shuffle { u, v, common, span, reduce } => {
            let config = RunConfig::resolve(&common, None, None, None, None)?;
            cmd_shuffle(&config, u.as_deref(), v.as_deref(), span, reduce.as_deref())
        }
        Command::Verify { common, checks, sigma, cases } => {
            let config = RunConfig::resolve(&common, None, None, cases, None)?;
            cmd_verify(&config, checks, sigma.as_deref())
        }
    }
}

fn names(alphabet: &Alphabet, words: &[Word]) -> Vec<String> {
    words.iter().map(|w| alphabet.render(w)).collect()
}

fn cmd_lyndon(config: &RunConfig) -> String {
    let a = &config.alphabet;
    let by_length: Vec<(usize, Vec<Word>, u128)> = (1..=config.n)
        .map(|s| {
            let words = lyndon_words_of_length(a, s).into_iter().map(|w| w.into_word()).collect();
            (s, words, necklace(s as u32, a.size() as u64))
        })
        .collect();
    let total: usize = by_length.iter().map(|(_, w, _)| w.len()).sum();
    match config.format_or(Format::Text) {
        Format::Json => pretty(&json!({
            "schema": REPORT_SCHEMA,
            "alphabet": a.letters(),
            "n": config.n,
            "counts": by_length.iter().map(|(_, w, _)| w.len()).collect::<Vec<_>>(),
            "necklace": by_length.iter().map(|(_, _, phi)| *phi as u64).collect::<Vec<_>>(),
            "total": total,
            "words": by_length.iter().flat_map(|(_, w, _)| names(a, w)).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("length,word\n");
            for (s, words, _) in &by_length {
                for w in names(a, words) {
                    out.push_str(&format!("{s},{w}\n"));
                }
            }
            out
        }
        Format::Text => {
            let mut out = format!("alphabet: {}\n", a.letters().join(" < "));
            for (s, words, phi) in &by_length {
                out.push_str(&format!("length {s}: {} (necklace {phi})", words.len()));
                if !words.is_empty() {
                    out.push_str(&format!(": {}", names(a, words).join(" ")));
                }
                out.push('\n');
            }
            out.push_str(&format!("total: {total}\n"));
            out
        }
    }
}

fn cmd_pairing_matrix(config: &RunConfig) -> Result<(), CliError> {
    let m = pairing_matrix(config.n, config.p, &config.alphabet, config.dim_cap).map_err(|e| match e {
        PairingError::Invalid(_) | PairingError::DimensionCap { .. } | PairingError::Series(_) => usage(e),
        other => CliError::Consistency(other.to_string()),
    })?;
    let content = match config.format_or(Format::Json) {
        Format::Json => {
            let mut v = m.to_json();
            v["schema"] = json!(REPORT_SCHEMA);
            v["unipotent_upper_triangular"] = json!(m.is_unipotent_upper_triangular());
            v["notes"] = json!(m.notes());
            pretty(&v)
        }
        Format::Csv => m.to_csv(),
        Format::Text => {
            let mut out = format!(
                "pairing matrix, p = {}, n = {}, {} rows, unipotent upper-triangular\n",
                m.p(),
                m.n(),
                m.dimension()
            );
            out.push_str(&m.render());
            for note in m.notes() {
                out.push_str(&format!("note: {note}\n"));
            }
            out
        }
    };
    emit(config, &content)
}

fn cmd_magnus(
    config: &RunConfig,
    word: &str,
    coeffs: &[String],
    koch: bool,
    rho_words: &[String],
) -> Result<(), CliError> {
    let a = &config.alphabet;
    let g = a.parse_group_word(word).map_err(usage)?;
    let modulus = match config.modulus {
        Some(m) => Modulus::from_value(m).map_err(usage)?,
        None => Modulus::new(config.p, config.n as u32).map_err(usage)?,
    };
    let degree = config.deg.unwrap_or(3);
    let series = magnus(&g, modulus, degree);
    let parse = |s: &String| a.parse_word(s).map_err(usage);
    let coefficient_words: Vec<Word> = coeffs.iter().map(parse).collect::<Result<_, _>>()?;
    let coefficient_values: Vec<_> = coefficient_words.iter().map(|w| eps(&g, w, modulus)).collect();
    let membership = if koch { Some(koch_test(&g, config.n, config.p).map_err(usage)?) } else { None };
    let mut matrices = Vec::new();
    for s in rho_words {
        let w = parse(s)?;
        if w.is_empty() {
            return Err(CliError::Usage("--rho needs a nonempty word".into()));
        }
        matrices.push((w.clone(), rho(&w, &g, modulus)));
    }
    let content = match config.format_or(Format::Text) {
        Format::Json => pretty(&json!({
            "schema": REPORT_SCHEMA,
            "group_word": a.render_group(&g),
            "syllables": a.group_to_json(&g),
            "series": series.to_json(a),
            "coefficients": coefficient_words.iter().zip(&coefficient_values).map(|(w, c)| json!({
                "word": a.render(w), "value": c.value(), "balanced": c.balanced(),
            })).collect::<Vec<_>>(),
            "koch": membership.map(|m| json!({"n": config.n, "p": config.p, "member": m})),
            "rho": matrices.iter().map(|(w, m)| json!({"word": a.render(w), "matrix": m.to_json()})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("word,coeff\n");
            for (w, c) in series.terms() {
                out.push_str(&format!("{},{}\n", a.render(w), modulus.balanced(c)));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "g = {}\nexpansion mod {}, degree <= {degree}:\n{}\n",
                a.render_group(&g),
                modulus.value(),
                series.render(a)
            );
            for (w, c) in coefficient_words.iter().zip(&coefficient_values) {
                out.push_str(&format!("coefficient of {}: {} (mod {})\n", a.render(w), c.balanced(), modulus.value()));
            }
            if let Some(m) = membership {
                out.push_str(&format!(
                    "lower {}-central term {}: {}\n",
                    config.p,
                    config.n,
                    if m { "pass" } else { "fail" }
                ));
            }
            for (w, m) in &matrices {
                out.push_str(&format!("rho for {} (mod {}):\n{m}", a.render(w), modulus.value()));
            }
            out
        }
    };
    emit(config, &content)
}

fn shuffle_usage(e: ShuffleError) -> CliError {
    usage(e)
}

fn cmd_shuffle(
    config: &RunConfig,
    u: Option<&str>,
    v: Option<&str>,
    span: Option<usize>,
    reduce: Option<&str>,
) -> Result<(), CliError> {
    let a = &config.alphabet;
    let format = config.format_or(Format::Text);
    let mut text = String::new();
    let mut report = serde_json::Map::new();
    report.insert("schema".into(), json!(REPORT_SCHEMA));
    match (u, v) {
        (Some(u), Some(v)) => {
            let (u, v) = (a.parse_word(u).map_err(usage)?, a.parse_word(v).map_err(usage)?);
            let sh = shuffle(&u, &v).map_err(shuffle_usage)?;
            let inf = infiltration(&u, &v).map_err(shuffle_usage)?;
            text.push_str(&format!("shuffle:      {}\n", sh.render(a)));
            text.push_str(&format!("infiltration: {}\n", inf.render(a)));
            report.insert("shuffle".into(), sh.to_json(a));
            report.insert("infiltration".into(), inf.to_json(a));
        }
        (None, None) => {}
        _ => return Err(CliError::Usage("shuffle takes two words or none".into())),
    }
    if let Some(d) = span {
        let basis = shuffle_span_basis(d, config.p, a, DEFAULT_SPAN_CAP).map_err(shuffle_usage)?;
        text.push_str(&format!(
            "degree {d} mod {}: rank {}, quotient dimension {}, free columns {}\n",
            config.p,
            basis.rank(),
            basis.quotient_dimension(),
            names(a, &basis.free_columns()).join(" ")
        ));
        report.insert("span".into(), basis.to_json(a));
    }
    if let Some(w) = reduce {
        let w = a.parse_word(w).map_err(usage)?;
        let terms = reduce_mod_shuffles(&w, config.p, a).map_err(shuffle_usage)?;
        let combination = IntPoly::from_terms(
            terms.iter().map(|(l, c)| (l.word().clone(), fp::balanced(*c, config.p))),
        );
        text.push_str(&format!(
            "({}) = {} modulo shuffles and {}\n",
            a.render(&w),
            if combination.is_zero() { "0".to_string() } else { combination.render(a) },
            config.p
        ));
        report.insert(
            "reduction".into(),
            json!({
                "word": a.render(&w),
                "p": config.p,
                "terms": terms.iter().map(|(l, c)| json!({"word": a.render(l.word()), "coeff": fp::balanced(*c, config.p)})).collect::<Vec<_>>(),
            }),
        );
    }
    if report.len() == 1 {
        return Err(CliError::Usage("give two words, --span or --reduce".into()));
    }
    let content = match format {
        Format::Json => pretty(&serde_json::Value::Object(report)),
        Format::Text | Format::Csv => text,
    };
    emit(config, &content)
}

fn cmd_verify(config: &RunConfig, checks: Vec<String>, sigma: Option<&str>) -> Result<(), CliError> {
    let defaults = VerifyOptions::default();
    for c in &checks {
        if !CHECK_NAMES.contains(&c.as_str()) {
            return Err(CliError::Usage(format!("unknown check {c:?}; known: {}", CHECK_NAMES.join(", "))));
        }
    }
    let alphabet = if config.alphabet_given { config.alphabet.clone() } else { defaults.alphabet.clone() };
    let sigma = sigma.map(|s| alphabet.parse_group_word(s).map_err(usage)).transpose()?;
    let options = VerifyOptions {
        seed: config.seed,
        primes: if config.p_given { vec![config.p] } else { defaults.primes },
        n: if config.n_given { config.n } else { defaults.n },
        alphabet,
        cases: config.cases.unwrap_or(defaults.cases),
        sigma,
        only: if checks.is_empty() { None } else { Some(checks) },
    };
    let report = run_checks(&options).map_err(CliError::Usage)?;
    let content = match config.format_or(Format::Json) {
        Format::Json => pretty(&report.to_json()),
        Format::Csv => {
            let mut out = String::from("check,passed,cases\n");
            for c in &report.checks {
                out.push_str(&format!("{},{},{}\n", c.name, c.passed, c.cases));
            }
            out
        }
        Format::Text => {
            let mut out = format!("seed {}\n", report.seed);
            for c in &report.checks {
                out.push_str(&format!("{} {} ({} cases): {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.cases, c.property));
                for f in &c.failures {
                    out.push_str(&format!("    {f}\n"));
                }
                for n in &c.notes {
                    out.push_str(&format!("    note: {n}\n"));
                }
            }
            out
        }
    };
    emit(config, &content)?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Consistency("some checks failed".into()))
    }
}
