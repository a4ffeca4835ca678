//! Command-line front end: `verify`, `search`, `logs` and `selftest`.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use skolem::analysis::padic_log;
use skolem::oracle::brute_force;
use skolem::quintic::{
    build_instance, verify_theorem_with, QuinticError, Solution, TheoremCertificate, VerifyOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_SEARCH_BOUND: i64 = 1000;
const SELFTEST_VALUES: [i64; 3] = [5, -5, 10];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Build and validate the certificate for b.
    Verify,
    /// Exhaustive search in the box |m|, |n| <= bound.
    Search,
    /// Print the logarithms of the fifth powers of both units.
    Logs,
    /// Verify b = 5, -5, 10 with oracle cross-checks and round trips.
    Selftest,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "skolem", version, about = "Certified solutions of m^5 + 4b^4 m n^4 - n^5 = 1 for 5 | b")]
pub struct CliConfig {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_bigint)]
    pub b: Option<BigInt>,
    #[arg(long)]
    pub bound: Option<i64>,
    /// Working precision N (digits of 5).
    #[arg(long)]
    pub prec: Option<u32>,
    #[arg(long = "out")]
    pub output_path: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("`{s}` is not an integer"))
}

struct Usage(String);

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

fn classify(e: QuinticError) -> Failure {
    match e {
        QuinticError::BZero | QuinticError::BNotDivisibleBy5(_) | QuinticError::PrecisionTooLow { .. } => {
            Failure::Usage(e.to_string())
        }
        other => Failure::Verification(other.to_string()),
    }
}

fn required_b(cfg: &CliConfig) -> Result<BigInt, Usage> {
    match &cfg.b {
        None => Err(Usage("--b is required".into())),
        Some(b) if b.is_zero() => Err(Usage("b must be nonzero".into())),
        Some(b) => Ok(b.clone()),
    }
}

/// Runs one command, writing reports to `out` and diagnostics to `err`.
pub fn run(cfg: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cfg.command {
        Command::Verify => verify(cfg, out),
        Command::Search => search(cfg, out),
        Command::Logs => logs(cfg, out),
        Command::Selftest => selftest(cfg, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_FAILURE
        }
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure::Verification(format!("i/o: {e}"))
}

fn emit(cfg: &CliConfig, out: &mut dyn Write, json: &str, human: &str) -> Result<(), Failure> {
    if let Some(path) = &cfg.output_path {
        fs::write(path, json).map_err(io_failure)?;
    }
    let text = if cfg.json { json } else { human };
    writeln!(out, "{text}").map_err(io_failure)
}

fn fmt_solutions(xs: &[Solution]) -> String {
    let parts: Vec<String> = xs.iter().map(|s| format!("({}, {})", s.m, s.n)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn certify(b: &BigInt, cfg: &CliConfig) -> Result<TheoremCertificate, Failure> {
    let opts = VerifyOptions {
        prec: cfg.prec,
        oracle_bound: cfg.bound,
        ..VerifyOptions::default()
    };
    let cert = verify_theorem_with(b, &opts).map_err(classify)?;
    if let Some(o) = &cert.oracle {
        if !o.agrees {
            return Err(Failure::Verification(format!(
                "oracle found {} in |m|, |n| <= {}",
                fmt_solutions(&o.solutions),
                o.bound
            )));
        }
    }
    Ok(cert)
}

fn verify(cfg: &CliConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let b = required_b(cfg)?;
    let cert = certify(&b, cfg)?;
    let mut human = format!(
        "b = {}, k = {}, N = {}\nsolutions: {}\nSkolem branch: det = {} mod 5\nStrassmann branch: bound {}\ncase reduction: {} pairs sampled mod 5^{}, surviving {:?}",
        cert.b,
        cert.k,
        cert.prec,
        fmt_solutions(&cert.solutions),
        cert.skolem_branch.skolem.det_mod_p,
        cert.strassmann_branch.strassmann.bound,
        cert.case_reduction.sampled_pairs,
        cert.case_reduction.modulus_exponent,
        cert.case_reduction.surviving,
    );
    if let Some(o) = &cert.oracle {
        human.push_str(&format!("\noracle (bound {}): {}", o.bound, fmt_solutions(&o.solutions)));
    }
    human.push_str(&format!("\nverified in {} ms", cert.elapsed_ms));
    emit(cfg, out, &cert.to_json_pretty(), &human)
}

fn search(cfg: &CliConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let b = required_b(cfg)?;
    let bound = cfg.bound.unwrap_or(DEFAULT_SEARCH_BOUND);
    if bound < 0 {
        return Err(Usage("--bound must be nonnegative".into()).into());
    }
    let r = brute_force(&b, bound);
    let json = serde_json::to_string_pretty(&r).map_err(io_failure)?;
    let pairs: Vec<String> = r.solutions.iter().map(|(m, n)| format!("({m}, {n})")).collect();
    let human = format!(
        "b = {}, |m|, |n| <= {}: {} solutions {{{}}} in {} ms",
        r.b,
        r.bound,
        r.solutions.len(),
        pairs.join(", "),
        r.elapsed.as_millis()
    );
    emit(cfg, out, &json, &human)
}

fn logs(cfg: &CliConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let b = required_b(cfg)?;
    let inst = build_instance(&b, cfg.prec).map_err(classify)?;
    let mut human = format!("b = {}, N = {}", inst.b, inst.prec);
    let mut entries = Vec::new();
    for (name, unit) in [("L1", &inst.xi1), ("L2", &inst.xi2)] {
        let e = inst.units.exponents[entries.len()];
        let l = padic_log(&unit.pow(e)).map_err(|e| Failure::Verification(e.to_string()))?;
        let mut coords = Vec::new();
        human.push_str(&format!("\n{name} = log(xi^{e}), known mod 5^{}", l.known_precision()));
        for j in 0..inst.alg.rank() {
            let c = l.coordinate(j);
            let v = c.valuation();
            human.push_str(&format!("\n  theta^{j}: v = {v}, {}", c.signed_residue()));
            coords.push(json!({"value": c.signed_residue().to_string(), "valuation": v}));
        }
        entries.push(json!({
            "name": name,
            "exponent": e,
            "known_precision": l.known_precision(),
            "coordinates": coords,
        }));
    }
    let json = serde_json::to_string_pretty(&json!({
        "b": inst.b.to_string(),
        "prec": inst.prec,
        "logs": entries,
    }))
    .map_err(io_failure)?;
    emit(cfg, out, &json, &human)
}

fn selftest(cfg: &CliConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let mut report = Vec::new();
    let mut lines = Vec::new();
    for b in SELFTEST_VALUES {
        let b = BigInt::from(b);
        let bound: i64 = 4 * b.pow(4).to_string().parse::<i64>().expect("small b") + 1;
        let opts = CliConfig {
            bound: Some(bound),
            ..cfg.clone()
        };
        let cert = certify(&b, &opts)?;
        let back = TheoremCertificate::from_json(&cert.to_json_pretty())
            .map_err(|e| Failure::Verification(format!("b = {b}: certificate does not parse: {e}")))?;
        back.validate()
            .map_err(|e| Failure::Verification(format!("b = {b}: reparsed certificate: {e}")))?;
        lines.push(format!(
            "b = {b}: ok, solutions {}, oracle bound {bound} agrees, {} ms",
            fmt_solutions(&cert.solutions),
            cert.elapsed_ms
        ));
        report.push(json!({"b": b.to_string(), "oracle_bound": bound, "ok": true, "elapsed_ms": cert.elapsed_ms}));
    }
    let json = serde_json::to_string_pretty(&report).map_err(io_failure)?;
    emit(cfg, out, &json, &lines.join("\n"))
}
