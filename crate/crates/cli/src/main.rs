//! `rbln` — command-line surface for the self-power digit toolkit.
//!
//! Every operation in the library is reachable here, with two output
//! modes: `--format plain` for eyeballs, `--format json` for scripts
//! (one JSON object per line; big integers always as decimal strings).
//!
//! Exit codes are the machine contract:
//!
//! * `0` — success / verification passed
//! * `1` — verification ran to completion and found failures
//! * `2` — usage error (bad flags, invalid ranges, resource guards)
//! * `3` — inconclusive (the digit budget cannot decide the question)
//!
//! Identical invocations produce identical result payloads; the only
//! run-dependent fields are the `elapsed_ms` entry of the JSON envelope
//! and the `bench` subcommand's timings, which exist to be measured.

use std::path::{Path, PathBuf};
use std::process::exit;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use rbln_core::approx::{build_pq, roth_witness_over_stream, DEFAULT_WITNESS_GUARD};
use rbln_core::constants::{detect_period, digit_range, n_as_fraction, ConstantId, DigitCache};
use rbln_core::exactnum::Natural;
use rbln_core::lemmalab::{
    check_idempotents, verify_corollary_cg1, verify_lemma_2inva, verify_lemma_inva,
    verify_period20, verify_pow100, LemmaId, VerificationReport, DEFAULT_CROSS_CHECK_LIMIT,
};
use rbln_core::oracle::{Functional, Oracle, DEFAULT_ORACLE_LIMIT};
use rbln_core::selfpow::{
    last_digit_selfpow, lnzd_selfpow, rbln_selfpow, selfpow_tail2, selfpow_trailing_zeros,
};

const EXIT_PASS: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_INCONCLUSIVE: i32 = 3;

/// How many counterexample lines plain output prints before eliding.
const PLAIN_FAILURE_LINES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Parser)]
#[command(
    name = "rbln",
    version,
    about = "Digit functionals of n^n, the constants N and P, and exact approximation witnesses",
    propagate_version = true
)]
struct Cli {
    /// Output format: human-readable lines or one JSON object per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Seed for the randomized verification suites (fixed default, so
    /// runs are reproducible unless you change it).
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a block of decimal digits of N or P.
    Digits {
        /// Which constant: N (last digits) or P (rbln digits).
        #[arg(long)]
        constant: String,
        /// First position, 1-indexed.
        #[arg(long, default_value_t = 1)]
        from: u64,
        /// Last position, inclusive.
        #[arg(long)]
        to: u64,
        /// Digit cache file: reused when it covers the request,
        /// (re)written otherwise.
        #[arg(long)]
        cache: Option<PathBuf>,
    },

    /// Evaluate one digit functional of n^n via the residue fast path.
    Selfpow {
        /// The base n (any positive integer, arbitrarily large).
        #[arg(long)]
        n: String,
        /// Functional: tail2, lnzd, rbln, trailing-zeros, or last-digit.
        #[arg(long)]
        what: String,
    },

    /// Run a verification suite (or all of them).
    Verify {
        /// Suite: skey, pow100, inva, cG1, 2inva, period20, or all.
        #[arg(long)]
        suite: String,
        /// Sweep size override (each suite has a sensible default).
        #[arg(long)]
        limit: Option<u64>,
    },

    /// Detect the shortest period of a constant's digit stream.
    Period {
        /// Which constant: N or P.
        #[arg(long)]
        constant: String,
        /// How many digits to scan.
        #[arg(long, default_value_t = 400)]
        digits: u64,
        /// Largest candidate period to try.
        #[arg(long, default_value_t = 64)]
        max_period: u64,
    },

    /// Print N as an exact fraction.
    #[command(name = "fraction-N")]
    FractionN,

    /// Build the level-n rational approximant p_n/q_n to P.
    Approximant {
        /// Witness level (1..=3).
        #[arg(long)]
        n: u32,
    },

    /// Certify or refute |P − p_n/q_n| < q^(−12/5) by exact arithmetic.
    Roth {
        /// Witness level (1..=3).
        #[arg(long)]
        n: u32,
        /// Digit budget M for the enclosure of P.
        #[arg(long)]
        digits: u64,
        /// Digit cache file: reused when it covers 1..=digits,
        /// (re)written otherwise.
        #[arg(long)]
        cache: Option<PathBuf>,
    },

    /// Differential check: residue fast path vs. the brute-force oracle.
    Diff {
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long, default_value_t = 500)]
        to: u64,
        /// Upper bound on n the oracle will expand in full.
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: u64,
        /// Deliberately corrupt one fast-path value (exercises the
        /// failure path in tests).
        #[arg(long, hide = true)]
        fault_inject: bool,
    },

    /// Time the fast path against the oracle on a shared sweep.
    Bench {
        /// Sweep upper bound.
        #[arg(long, default_value_t = 300)]
        limit: u64,
    },
}

/// One output line: a finished report plus its plain rendering.
struct Report {
    command: &'static str,
    params: Value,
    result: Value,
    failures: Vec<Value>,
    plain: String,
    elapsed_ms: u128,
}

/// The versioned JSON-lines envelope.
#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    params: &'a Value,
    result: &'a Value,
    failures: &'a [Value],
    elapsed_ms: u128,
}

struct Outcome {
    exit: i32,
    reports: Vec<Report>,
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            for report in &outcome.reports {
                match cli.format {
                    Format::Plain => println!("{}", report.plain),
                    Format::Json => {
                        let envelope = Envelope {
                            schema_version: 1,
                            command: report.command,
                            params: &report.params,
                            result: &report.result,
                            failures: &report.failures,
                            elapsed_ms: report.elapsed_ms,
                        };
                        println!(
                            "{}",
                            serde_json::to_string(&envelope).expect("reports serialize")
                        );
                    }
                }
            }
            exit(outcome.exit);
        }
        Err(message) => {
            eprintln!("error: {message}");
            exit(EXIT_USAGE);
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Digits {
            constant,
            from,
            to,
            cache,
        } => run_digits(constant, *from, *to, cache.as_deref()),
        Command::Selfpow { n, what } => run_selfpow(n, what),
        Command::Verify { suite, limit } => run_verify(suite, *limit, cli.seed),
        Command::Period {
            constant,
            digits,
            max_period,
        } => run_period(constant, *digits, *max_period),
        Command::FractionN => run_fraction_n(),
        Command::Approximant { n } => run_approximant(*n),
        Command::Roth { n, digits, cache } => run_roth(*n, *digits, cache.as_deref()),
        Command::Diff {
            from,
            to,
            oracle_limit,
            fault_inject,
        } => run_diff(*from, *to, *oracle_limit, *fault_inject),
        Command::Bench { limit } => run_bench(*limit),
    }
}

fn parse_constant(text: &str) -> Result<ConstantId, String> {
    ConstantId::from_str(text)
}

fn parse_functional(text: &str) -> Result<Functional, String> {
    Functional::from_str(text)
}

fn parse_natural(text: &str) -> Result<Natural, String> {
    text.parse::<Natural>()
        .map_err(|e| format!("n must be a decimal integer: {e}"))
}

/// Obtain a digit block, going through a cache file when one is given.
/// A cache that exists and covers the request is reused; anything else
/// (missing, wrong constant, too short, unreadable garbage left behind
/// by something else) is replaced by a freshly computed block.
fn block_via_cache(
    constant: ConstantId,
    from: u64,
    to: u64,
    cache: Option<&Path>,
) -> Result<(rbln_core::exactnum::DigitBlock, bool), String> {
    if let Some(path) = cache {
        if path.exists() {
            if let Ok(cached) = DigitCache::load(path) {
                if cached.constant == constant && cached.covers(from, to) {
                    let block = cached.slice(from, to).expect("covers implies slice");
                    return Ok((block, true));
                }
            }
        }
        let fresh = DigitCache::compute(constant, from, to).map_err(|e| e.to_string())?;
        fresh.save(path).map_err(|e| e.to_string())?;
        Ok((fresh.block, false))
    } else {
        let block = digit_range(constant, from, to).map_err(|e| e.to_string())?;
        Ok((block, false))
    }
}

fn run_digits(constant: &str, from: u64, to: u64, cache: Option<&Path>) -> Result<Outcome, String> {
    let started = Instant::now();
    let constant = parse_constant(constant)?;
    let (block, from_cache) = block_via_cache(constant, from, to, cache)?;
    let text = block.to_digit_string();
    let report = Report {
        command: "digits",
        params: json!({
            "constant": constant.name(),
            "from": from,
            "to": to,
            "cache": cache.map(|p| p.display().to_string()),
        }),
        result: json!({
            "constant": constant.name(),
            "block": block,
            "from_cache": from_cache,
        }),
        failures: Vec::new(),
        plain: text,
        elapsed_ms: started.elapsed().as_millis(),
    };
    Ok(Outcome {
        exit: EXIT_PASS,
        reports: vec![report],
    })
}

fn run_selfpow(n: &str, what: &str) -> Result<Outcome, String> {
    let started = Instant::now();
    let n = parse_natural(n)?;
    let functional = parse_functional(what)?;
    let value = match functional {
        Functional::Tail2 => selfpow_tail2(&n).map(|t| t.value().to_string()),
        Functional::Lnzd => lnzd_selfpow(&n).map(|d| d.to_string()),
        Functional::Rbln => rbln_selfpow(&n).map(|d| d.to_string()),
        Functional::TrailingZeros => selfpow_trailing_zeros(&n).map(|z| z.to_string()),
        Functional::LastDigit => last_digit_selfpow(&n).map(|d| d.to_string()),
    }
    .map_err(|e| e.to_string())?;
    let report = Report {
        command: "selfpow",
        params: json!({ "n": n.to_string(), "what": functional.name() }),
        result: json!({
            "n": n.to_string(),
            "functional": functional.name(),
            "value": value,
        }),
        failures: Vec::new(),
        plain: value,
        elapsed_ms: started.elapsed().as_millis(),
    };
    Ok(Outcome {
        exit: EXIT_PASS,
        reports: vec![report],
    })
}

/// Sample idempotent-tailed bases for the `skey` suite: random heads
/// glued to the tails 76 and 25, alternating.
fn sample_skey_bases(seed: u64, count: usize) -> Vec<Natural> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let head: u64 = rng.gen_range(1..=1_000_000_000_000);
            let tail: u64 = if i % 2 == 0 { 76 } else { 25 };
            Natural::from(head) * Natural::from(100u8) + Natural::from(tail)
        })
        .collect()
}

fn run_suite(id: LemmaId, limit: Option<u64>, seed: u64) -> Result<VerificationReport, String> {
    let report = match id {
        LemmaId::Skey => {
            let bases = sample_skey_bases(seed, 32);
            let max_power = limit.unwrap_or(12);
            check_idempotents(&bases, max_power).map_err(|e| e.to_string())?
        }
        LemmaId::Pow100 => verify_pow100(),
        LemmaId::Inva => verify_lemma_inva(limit.unwrap_or(2_000)),
        LemmaId::CG1 => verify_corollary_cg1(limit.unwrap_or(1_000)),
        LemmaId::TwoInva => verify_lemma_2inva(limit.unwrap_or(1_000), DEFAULT_CROSS_CHECK_LIMIT),
        LemmaId::Period20 => verify_period20(limit.unwrap_or(2_000)),
    };
    Ok(report)
}

fn suite_report(
    suite: LemmaId,
    verification: &VerificationReport,
    limit: Option<u64>,
    seed: u64,
    elapsed_ms: u128,
) -> Report {
    let verdict = if verification.passes() {
        "PASS"
    } else {
        "FAIL"
    };
    let mut plain = format!(
        "{}: {} checked={} failures={}",
        suite.name(),
        verdict,
        verification.checked,
        verification.failure_count
    );
    for c in verification.failures.iter().take(PLAIN_FAILURE_LINES) {
        plain.push_str(&format!(
            "\n  input={} observed={} expected={}",
            c.input, c.observed, c.expected
        ));
    }
    Report {
        command: "verify",
        params: json!({ "suite": suite.name(), "limit": limit, "seed": seed }),
        result: json!({
            "lemma": suite.name(),
            "checked": verification.checked,
            "failure_count": verification.failure_count,
            "passes": verification.passes(),
            "params": verification.params,
        }),
        failures: verification
            .failures
            .iter()
            .map(|c| serde_json::to_value(c).expect("counterexamples serialize"))
            .collect(),
        plain,
        elapsed_ms,
    }
}

fn run_verify(suite: &str, limit: Option<u64>, seed: u64) -> Result<Outcome, String> {
    let suites: Vec<LemmaId> = if suite == "all" {
        LemmaId::ALL.to_vec()
    } else {
        vec![LemmaId::from_str(suite)?]
    };
    let mut reports = Vec::with_capacity(suites.len());
    let mut all_pass = true;
    for id in suites {
        let started = Instant::now();
        let verification = run_suite(id, limit, seed)?;
        all_pass &= verification.passes();
        reports.push(suite_report(
            id,
            &verification,
            limit,
            seed,
            started.elapsed().as_millis(),
        ));
    }
    Ok(Outcome {
        exit: if all_pass { EXIT_PASS } else { EXIT_FAIL },
        reports,
    })
}

fn run_period(constant: &str, digits: u64, max_period: u64) -> Result<Outcome, String> {
    let started = Instant::now();
    let constant = parse_constant(constant)?;
    let block = digit_range(constant, 1, digits).map_err(|e| e.to_string())?;
    let period = detect_period(&block, max_period);
    let plain = match period {
        Some(p) => p.to_string(),
        None => "none".to_string(),
    };
    let report = Report {
        command: "period",
        params: json!({
            "constant": constant.name(),
            "digits": digits,
            "max_period": max_period,
        }),
        result: json!({ "constant": constant.name(), "period": period }),
        failures: Vec::new(),
        plain,
        elapsed_ms: started.elapsed().as_millis(),
    };
    Ok(Outcome {
        exit: EXIT_PASS,
        reports: vec![report],
    })
}

fn run_fraction_n() -> Result<Outcome, String> {
    let started = Instant::now();
    let fraction = n_as_fraction();
    let report = Report {
        command: "fraction-N",
        params: json!({}),
        result: serde_json::to_value(&fraction).expect("rationals serialize"),
        failures: Vec::new(),
        plain: fraction.to_string(),
        elapsed_ms: started.elapsed().as_millis(),
    };
    Ok(Outcome {
        exit: EXIT_PASS,
        reports: vec![report],
    })
}

fn run_approximant(n: u32) -> Result<Outcome, String> {
    let started = Instant::now();
    let approximant = build_pq(n).map_err(|e| e.to_string())?;
    let plain = format!(
        "level={} p={} q={}",
        approximant.level, approximant.p, approximant.q
    );
    let report = Report {
        command: "approximant",
        params: json!({ "n": n }),
        result: serde_json::to_value(&approximant).expect("approximants serialize"),
        failures: Vec::new(),
        plain,
        elapsed_ms: started.elapsed().as_millis(),
    };
    Ok(Outcome {
        exit: EXIT_PASS,
        reports: vec![report],
    })
}

fn run_roth(n: u32, digits: u64, cache: Option<&Path>) -> Result<Outcome, String> {
    let started = Instant::now();
    if digits == 0 {
        return Err("digit budget must be at least 1".to_string());
    }
    let (stream, from_cache) = block_via_cache(ConstantId::P, 1, digits, cache)?;
    let witness = match roth_witness_over_stream(n, digits, DEFAULT_WITNESS_GUARD, &stream) {
        Ok(w) => w,
        Err(e) if e.is_inconclusive() => {
            let report = Report {
                command: "roth",
                params: json!({
                    "n": n,
                    "digits": digits,
                    "cache": cache.map(|p| p.display().to_string()),
                }),
                result: json!({ "outcome": "inconclusive", "reason": e.to_string() }),
                failures: Vec::new(),
                plain: format!("INCONCLUSIVE: {e}"),
                elapsed_ms: started.elapsed().as_millis(),
            };
            return Ok(Outcome {
                exit: EXIT_INCONCLUSIVE,
                reports: vec![report],
            });
        }
        Err(e) => return Err(e.to_string()),
    };
    let plain = format!(
        "level={} passes={} first_diff_position={} digits_used={}",
        witness.level, witness.passes, witness.first_diff_position, witness.digits_used
    );
    let exit = if witness.passes { EXIT_PASS } else { EXIT_FAIL };
    let mut result = serde_json::to_value(&witness).expect("witness reports serialize");
    result["from_cache"] = json!(from_cache);
    let report = Report {
        command: "roth",
        params: json!({
            "n": n,
            "digits": digits,
            "cache": cache.map(|p| p.display().to_string()),
        }),
        result,
        failures: Vec::new(),
        plain,
        elapsed_ms: started.elapsed().as_millis(),
    };
    Ok(Outcome {
        exit,
        reports: vec![report],
    })
}

fn run_diff(from: u64, to: u64, oracle_limit: u64, fault_inject: bool) -> Result<Outcome, String> {
    let started = Instant::now();
    let oracle = Oracle::with_limit(oracle_limit);
    let differential = oracle
        .differential_check(from, to, &Functional::ALL, fault_inject)
        .map_err(|e| e.to_string())?;
    let verdict = if differential.passes() {
        "PASS"
    } else {
        "FAIL"
    };
    let mut plain = format!(
        "checked={} mismatches={} {}",
        differential.checked_count,
        differential.mismatches.len(),
        verdict
    );
    for m in differential.mismatches.iter().take(PLAIN_FAILURE_LINES) {
        plain.push_str(&format!(
            "\n  n={} functional={} fast={} oracle={}",
            m.n, m.functional, m.fast, m.oracle
        ));
    }
    let exit = if differential.passes() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    };
    let report = Report {
        command: "diff",
        params: json!({
            "from": from,
            "to": to,
            "oracle_limit": oracle_limit,
            "fault_inject": fault_inject,
        }),
        result: json!({
            "range_lo": differential.range_lo,
            "range_hi": differential.range_hi,
            "checked_count": differential.checked_count,
            "passes": differential.passes(),
        }),
        failures: differential
            .mismatches
            .iter()
            .map(|m| serde_json::to_value(m).expect("mismatches serialize"))
            .collect(),
        plain,
        elapsed_ms: started.elapsed().as_millis(),
    };
    Ok(Outcome {
        exit,
        reports: vec![report],
    })
}

fn run_bench(limit: u64) -> Result<Outcome, String> {
    let started = Instant::now();
    if limit == 0 {
        return Err("sweep limit must be at least 1".to_string());
    }
    let oracle = Oracle::with_limit(limit);

    let fast_started = Instant::now();
    for n in 1..=limit {
        let n = Natural::from(n);
        selfpow_tail2(&n).map_err(|e| e.to_string())?;
        selfpow_trailing_zeros(&n).map_err(|e| e.to_string())?;
        last_digit_selfpow(&n).map_err(|e| e.to_string())?;
    }
    let fast_ms = fast_started.elapsed().as_millis();

    let oracle_started = Instant::now();
    for n in 1..=limit {
        oracle.functionals(n).map_err(|e| e.to_string())?;
    }
    let oracle_ms = oracle_started.elapsed().as_millis();

    let plain =
        format!("sweep n = 1..={limit}\nfast path: {fast_ms} ms\noracle:    {oracle_ms} ms");
    let report = Report {
        command: "bench",
        params: json!({ "limit": limit }),
        result: json!({ "limit": limit, "fast_ms": fast_ms, "oracle_ms": oracle_ms }),
        failures: Vec::new(),
        plain,
        elapsed_ms: started.elapsed().as_millis(),
    };
    Ok(Outcome {
        exit: EXIT_PASS,
        reports: vec![report],
    })
}
