//! `slocc`: SLOCC invariants, characteristic polynomials and
//! inequivalence checks for n-qubit state files.
//!
//! Exit codes: 0 success / indistinguishable, 1 inequivalent or failed
//! self-test, 2 input error, 3 closed forms unavailable for this n.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::json;
use slocc_core::equivalence::DEFAULT_TOL;
use slocc_core::selftest::{run_selftest, INVARIANCE_TOL};
use slocc_core::{
    build_f, canonical_partitions, char_poly, compare_projective, compare_strict, fingerprint,
    invariants, parse_partition, parse_state, random_state, relation_residuals, serialize_state,
    InvariantSet, Outcome, PureState, SeededGenerator,
};

use report::{fmt_complex, fmt_poly, RunReport};

const EXIT_INEQUIVALENT: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_PARTIAL: i32 = 3;

#[derive(Parser)]
#[command(name = "slocc", version, about = "SLOCC invariants of n-qubit pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form invariants (3 or 4 qubits) and identity residuals.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Monic characteristic polynomial of F, lowest degree first.
    Charpoly {
        file: PathBuf,
        /// Bipartition such as "12|34"; all canonical partitions if omitted.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Test two states for SLOCC inequivalence.
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Allow local operators of any nonzero determinant.
        #[arg(long)]
        projective: bool,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo check of every implemented identity.
    Selftest {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=4))]
        qubits: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, value_parser = parse_seed)]
        seed: u64,
        #[arg(long, default_value_t = INVARIANCE_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Write a random unit-norm state file.
    Random {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10))]
        qubits: u64,
        #[arg(long, value_parser = parse_seed)]
        seed: u64,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
}

/// Decimal or `0x`-prefixed hexadecimal.
fn parse_seed(text: &str) -> Result<u64, String> {
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse::<u64>(),
    };
    parsed.map_err(|e| format!("invalid seed '{text}': {e}"))
}

/// Errors caused by bad user input; reported with exit code 2.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_err(e: impl std::fmt::Display) -> anyhow::Error {
    InputError(e.to_string()).into()
}

fn load_state(path: &Path) -> anyhow::Result<PureState> {
    let text = fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    parse_state(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn emit(report: &RunReport, json: bool, human: impl FnOnce()) -> anyhow::Result<i32> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        human();
    }
    Ok(report.exit_code)
}

fn cmd_invariants(file: &Path, json: bool) -> anyhow::Result<i32> {
    let s = load_state(file)?;
    let inputs = json!({ "file": file, "n": s.n() });
    match s.n() {
        3 | 4 => {
            let inv = invariants(&s)?;
            let res = relation_residuals(&s)?;
            let report = RunReport::new(
                "invariants",
                inputs,
                json!({ "invariants": inv, "residuals": res }),
                0,
            );
            emit(&report, json, || {
                println!("n = {}", s.n());
                match &inv {
                    InvariantSet::Three { f1_3, tangle3 } => {
                        println!("F1(3)    = {}", fmt_complex(*f1_3));
                        println!("tau_123  = {}", slocc_core::state::format_number(*tangle3));
                    }
                    InvariantSet::Four {
                        h,
                        l,
                        m,
                        dxt,
                        dxt_array,
                    } => {
                        println!("H        = {}", fmt_complex(*h));
                        println!("L        = {}", fmt_complex(*l));
                        println!("M        = {}", fmt_complex(*m));
                        println!("D_xt     = {}", fmt_complex(*dxt));
                        println!("D_xt(arr) = {}", fmt_complex(*dxt_array));
                    }
                }
                println!("residuals:");
                for (name, v) in res.gating() {
                    println!("  {name:<16} {v:.3e}");
                }
                if let Some(v) = res.quartic_a1_array {
                    println!("  {:<16} {v:.3e} (informational)", "quartic_a1_array");
                }
            })
        }
        n => {
            let fp = fingerprint(&s)?;
            let report = RunReport::new(
                "invariants",
                inputs,
                json!({
                    "message": format!("closed-form invariants need 3 or 4 qubits, state has {n}"),
                    "fingerprint": fp,
                }),
                EXIT_PARTIAL,
            );
            emit(&report, json, || {
                println!("closed-form invariants need 3 or 4 qubits, state has {n}; fingerprint:");
                for e in &fp.entries {
                    println!("  {:<12} {}", e.partition, fmt_poly(&e.charpoly));
                }
            })
        }
    }
}

fn cmd_charpoly(file: &Path, partition: Option<&str>, json: bool) -> anyhow::Result<i32> {
    let s = load_state(file)?;
    let partitions = match partition {
        Some(text) => vec![parse_partition(text, s.n()).map_err(input_err)?],
        None => canonical_partitions(s.n()),
    };
    let mut rows = Vec::with_capacity(partitions.len());
    for p in &partitions {
        rows.push((p.label(), char_poly(&build_f(&s, p)?)?));
    }
    let outputs: Vec<_> = rows
        .iter()
        .map(|(label, cp)| json!({ "partition": label, "coeffs": cp.coeffs() }))
        .collect();
    let report = RunReport::new(
        "charpoly",
        json!({ "file": file, "partition": partition }),
        json!({ "charpolys": outputs }),
        0,
    );
    emit(&report, json, || {
        for (label, cp) in &rows {
            println!("{label:<12} {}", fmt_poly(cp));
        }
    })
}

fn cmd_compare(a: &Path, b: &Path, tol: f64, projective: bool, json: bool) -> anyhow::Result<i32> {
    let sa = load_state(a)?;
    let sb = load_state(b)?;
    if sa.n() != sb.n() {
        return Err(input_err(format!(
            "arity mismatch: {} has {} qubits, {} has {}",
            a.display(),
            sa.n(),
            b.display(),
            sb.n()
        )));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(input_err(format!("tolerance must be positive, got {tol}")));
    }
    let (fa, fb) = (fingerprint(&sa)?, fingerprint(&sb)?);
    let verdict = if projective {
        compare_projective(&fa, &fb, tol)?
    } else {
        compare_strict(&fa, &fb, tol)?
    };
    let code = match verdict.outcome {
        Outcome::Indistinguishable => 0,
        Outcome::Inequivalent => EXIT_INEQUIVALENT,
    };
    let report = RunReport::new(
        "compare",
        json!({ "file_a": a, "file_b": b, "tol": tol, "projective": projective }),
        json!({ "verdict": verdict }),
        code,
    );
    emit(&report, json, || {
        println!("{:?} ({:?} mode)", verdict.outcome, verdict.mode);
        if let Some(w) = &verdict.witness {
            println!("witness: partition {} coefficient a_{} ({})", w.partition, w.coefficient, w.reason);
        }
    })
}

fn cmd_selftest(qubits: u64, trials: u64, seed: u64, tol: f64, json: bool) -> anyhow::Result<i32> {
    let r = run_selftest(qubits as usize, trials as usize, seed, tol).map_err(input_err)?;
    let code = if r.passed { 0 } else { 1 };
    let report = RunReport::new(
        "selftest",
        json!({ "qubits": qubits, "trials": trials, "seed": seed, "tol": tol }),
        serde_json::to_value(&r)?,
        code,
    );
    emit(&report, json, || {
        println!("selftest: {qubits} qubits, {trials} trials, seed {seed}");
        for c in &r.checks {
            let tag = match (c.gating, c.passed) {
                (false, _) => "info",
                (true, true) => "pass",
                (true, false) => "FAIL",
            };
            println!("  [{tag}] {:<28} max {:.3e}  tol {:e}", c.name, c.max_residual, c.tolerance);
        }
        println!("{}", if r.passed { "all identities hold" } else { "some identities FAILED" });
    })
}

fn cmd_random(qubits: u64, seed: u64, out: &Path) -> anyhow::Result<i32> {
    let s = random_state(qubits as usize, &mut SeededGenerator::new(seed))?;
    let mut text = serialize_state(&s);
    text.push('\n');
    fs::write(out, text)
        .with_context(|| format!("cannot write {}", out.display()))
        .map_err(input_err)?;
    Ok(0)
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Invariants { file, json } => cmd_invariants(&file, json),
        Command::Charpoly {
            file,
            partition,
            json,
        } => cmd_charpoly(&file, partition.as_deref(), json),
        Command::Compare {
            file_a,
            file_b,
            tol,
            projective,
            json,
        } => cmd_compare(&file_a, &file_b, tol, projective, json),
        Command::Selftest {
            qubits,
            trials,
            seed,
            tol,
            json,
        } => cmd_selftest(qubits, trials, seed, tol, json),
        Command::Random { qubits, seed, out } => cmd_random(qubits, seed, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(EXIT_INPUT as u8)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("42"), Ok(42));
        assert_eq!(parse_seed("0x2A"), Ok(42));
        assert!(parse_seed("0xZZ").is_err());
        assert!(parse_seed("-1").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
