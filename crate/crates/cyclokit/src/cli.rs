//! Command-line surface. The binary is a thin shim over [`run`]; every
//! subcommand prints a machine-readable JSON envelope as the last line of
//! stdout and a short human summary on stderr.
//!
//! Exit codes: 0 ok, 2 precondition violated (bad input), 3 verification
//! failure (an identity sweep or agreement check found a counterexample).

use crate::bench::{run_bench, summarize, to_csv, BenchConfig};
use crate::cyclotomic::{
    hstar_table, phi_arnold_monagan, phi_mobius, phi_prime_extension, phi_squarefree_reduce,
};
use crate::divisibility::{
    divides_cyclotomic, divides_power_minus_eta, divides_power_minus_one,
    divides_prime_cyclotomic_power, Eta,
};
use crate::numtheory::factorize;
use crate::poly::Poly;
use crate::ramanujan::{c, toth};
use crate::verify::{run_suite, Suite};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    PreconditionError,
    VerificationFailure,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::PreconditionError => 2,
            Status::VerificationFailure => 3,
        }
    }
}

/// The envelope every subcommand emits: the command echo, a status, and the
/// result payload. Exit code is 0 exactly when the status is ok.
#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub status: Status,
    pub result: serde_json::Value,
}

#[derive(Parser, Debug)]
#[command(
    name = "cyclokit",
    about = "Exact cyclotomic polynomials, division-free divisibility tests, and identity verification",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute Phi_n by one algorithm, or all applicable ones with a
    /// bit-exact agreement check.
    Phi {
        n: u64,
        /// mobius | extension | am | reduce | all
        #[arg(long, default_value = "mobius")]
        algorithm: String,
    },
    /// Compute the inverse companion Psi_n = (z^n - 1)/Phi_n, n >= 2.
    Psi { n: u64 },
    /// Exact integer table of H_k over the primitive m-th roots, k = 0..=K.
    Hstar { m: u64, k: usize },
    /// Ramanujan sum c_n(r).
    Ramanujan { n: u64, r: i64 },
    /// The polynomial sum_r c_n(r) z^r - n with its divisibility verdicts.
    Toth { n: u64 },
    /// Divisibility tests without polynomial division.
    Divides(DividesArgs),
    /// Run identity verification sweeps, streaming one JSON report per line.
    Verify {
        /// ramanujan | symmetric | coefficients | all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "max-n")]
        max_n: u64,
        /// Worker threads for the sweep (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Stream only failing reports.
        #[arg(long, default_value_t = false)]
        failures_only: bool,
    },
    /// Compare coefficient-sum divisibility against exact division on a
    /// seeded random grid; emits CSV records.
    Bench {
        #[arg(long = "max-degree", default_value_t = 256)]
        max_degree: usize,
        /// Comma-separated list of cyclotomic indices.
        #[arg(long = "n-list", default_value = "6,12,30")]
        n_list: String,
        #[arg(long, default_value_t = 8)]
        trials: u32,
        /// Seed for the random grid (CYCLOKIT_SEED overrides).
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        /// CSV destination; "-" streams CSV to stdout instead of the envelope.
        #[arg(long, default_value = "bench.csv")]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct DividesArgs {
    /// Inline comma-separated coefficients (ascending unless --descending),
    /// or @FILE where FILE holds the same or a JSON array of decimal strings.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Interpret the coefficient list highest power first.
    #[arg(long, default_value_t = false)]
    descending: bool,
    /// Test divisibility by Phi_N.
    #[arg(long)]
    cyclotomic: Option<u64>,
    /// Test divisibility by z^n - 1.
    #[arg(long)]
    zn: Option<u64>,
    /// Test divisibility by Phi_p(z^s); requires --s.
    #[arg(long = "phi-p")]
    phi_p: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
    /// Test divisibility by z^n - eta; requires --eta.
    #[arg(long = "zn-eta")]
    zn_eta: Option<u64>,
    /// Complex literal like "4", "0.5+0.5i", or exact root of unity
    /// "zeta:k:t" meaning e^{2 pi i t / k}.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
}

/// Parse CLI arguments and execute; returns the process exit code.
pub fn run() -> u8 {
    let cli = Cli::parse();
    let command_echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    execute(cli.command, &command_echo)
}

fn execute(command: Command, echo: &str) -> u8 {
    let outcome = match command {
        Command::Phi { n, algorithm } => cmd_phi(n, &algorithm),
        Command::Psi { n } => cmd_psi(n),
        Command::Hstar { m, k } => cmd_hstar(m, k),
        Command::Ramanujan { n, r } => cmd_ramanujan(n, r),
        Command::Toth { n } => cmd_toth(n),
        Command::Divides(args) => cmd_divides(&args),
        Command::Verify {
            suite,
            max_n,
            jobs,
            failures_only,
        } => cmd_verify(&suite, max_n, jobs, failures_only),
        Command::Bench {
            max_degree,
            n_list,
            trials,
            seed,
            out,
        } => cmd_bench(max_degree, &n_list, trials, seed, &out),
    };
    let (status, result, summary) = match outcome {
        Ok((result, summary)) => {
            let status = if result
                .get("verification_failure")
                .and_then(|v| v.as_bool())
                .unwrap_or(false)
            {
                Status::VerificationFailure
            } else {
                Status::Ok
            };
            (status, result, summary)
        }
        Err(msg) => (
            Status::PreconditionError,
            serde_json::json!({ "error": msg }),
            format!("error: {msg}"),
        ),
    };
    let envelope = OutputEnvelope {
        command: format!("cyclokit {echo}"),
        status,
        result,
    };
    eprintln!("{summary}");
    println!("{}", serde_json::to_string(&envelope).expect("serializable"));
    status.exit_code()
}

type CmdResult = Result<(serde_json::Value, String), String>;

fn cmd_phi(n: u64, algorithm: &str) -> CmdResult {
    let compute = |alg: &str| -> Result<Poly, String> {
        match alg {
            "mobius" => Ok(phi_mobius(n).map_err(|e| e.to_string())?.poly),
            "reduce" => Ok(phi_squarefree_reduce(n).map_err(|e| e.to_string())?.poly),
            "extension" | "am" => {
                let f = factorize(n).map_err(|e| e.to_string())?;
                if f.mobius() == 0 || n == 1 {
                    return Err(format!(
                        "algorithm {alg} runs the square-free chain; {n} is not square-free > 1 \
                         (use reduce, which chains the kernel and substitutes)"
                    ));
                }
                let (p, _) = *f.factors().last().unwrap();
                let r = if alg == "extension" {
                    phi_prime_extension(n / p, p)
                } else {
                    phi_arnold_monagan(n / p, p)
                };
                Ok(r.map_err(|e| e.to_string())?.poly)
            }
            other => Err(format!("unknown algorithm {other:?}")),
        }
    };
    if algorithm == "all" {
        let f = factorize(n).map_err(|e| e.to_string())?;
        let mut algorithms = vec!["mobius", "reduce"];
        if f.mobius() != 0 && n > 1 {
            algorithms.push("extension");
            algorithms.push("am");
        }
        let reference = compute("mobius")?;
        let mut agreement = true;
        for alg in &algorithms[1..] {
            agreement &= compute(alg)? == reference;
        }
        let result = serde_json::json!({
            "n": n,
            "algorithms": algorithms,
            "agreement": agreement,
            "degree": reference.degree(),
            "coefficients": reference,
            "verification_failure": !agreement,
        });
        let summary = format!(
            "Phi_{n} = {reference} (degree {}), {} algorithms agree: {agreement}",
            reference.degree().unwrap_or(0),
            algorithms.len()
        );
        return Ok((result, summary));
    }
    let poly = compute(algorithm)?;
    let summary = format!("Phi_{n} = {poly} (degree {})", poly.degree().unwrap_or(0));
    Ok((
        serde_json::json!({
            "n": n,
            "algorithm": algorithm,
            "degree": poly.degree(),
            "coefficients": poly,
        }),
        summary,
    ))
}

fn cmd_psi(n: u64) -> CmdResult {
    let r = crate::cyclotomic::psi(n).map_err(|e| e.to_string())?;
    let summary = format!("Psi_{n} = {} (degree {})", r.poly, r.poly.degree().unwrap_or(0));
    Ok((
        serde_json::json!({
            "n": n,
            "degree": r.poly.degree(),
            "coefficients": r.poly,
        }),
        summary,
    ))
}

fn cmd_hstar(m: u64, k: usize) -> CmdResult {
    let t = hstar_table(m, k).map_err(|e| e.to_string())?;
    let values: Vec<String> = t.values.iter().map(|v| v.to_string()).collect();
    let summary = format!("H_0..H_{k} over the primitive {m}-th roots: [{}]", values.join(", "));
    Ok((
        serde_json::json!({ "m": m, "k_max": k, "values": values }),
        summary,
    ))
}

fn cmd_ramanujan(n: u64, r: i64) -> CmdResult {
    let v = c(n, r).map_err(|e| e.to_string())?;
    Ok((
        serde_json::json!({ "n": n, "r": r, "value": v }),
        format!("c_{n}({r}) = {v}"),
    ))
}

fn cmd_toth(n: u64) -> CmdResult {
    let t = toth(n).map_err(|e| e.to_string())?;
    let divisible = t.divisible_coeff_sum && t.divisible_exact;
    let summary = format!(
        "T_{n} = {} (tau = {}), divisible by Phi_{n}: {divisible}",
        t.poly, t.tau
    );
    Ok((
        serde_json::json!({
            "n": n,
            "tau": t.tau,
            "coefficients": t.poly,
            "divisible": { "coeff_sum": t.divisible_coeff_sum, "exact": t.divisible_exact },
            "verification_failure": t.divisible_coeff_sum != t.divisible_exact,
        }),
        summary,
    ))
}

/// Inline comma list, or @FILE holding a comma list or a JSON array of
/// decimal strings. The raw list is oriented before normalization, so a
/// descending list may carry trailing (constant-term) zeros.
fn parse_poly_input(spec: &str, descending: bool) -> Result<Poly, String> {
    use num_bigint::BigInt;
    use std::str::FromStr;
    let text = if let Some(path) = spec.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?
    } else {
        spec.to_string()
    };
    let trimmed = text.trim();
    let mut coeffs: Vec<BigInt> = if trimmed.starts_with('[') {
        let strings: Vec<String> =
            serde_json::from_str(trimmed).map_err(|e| format!("bad JSON coefficients: {e}"))?;
        strings
            .iter()
            .map(|s| {
                BigInt::from_str(s.trim().trim_start_matches('\u{2212}'))
                    .map(|v| if s.trim().starts_with('\u{2212}') { -v } else { v })
                    .map_err(|e| format!("bad coefficient {s:?}: {e}"))
            })
            .collect::<Result<_, _>>()?
    } else {
        let cleaned = trimmed.replace('\u{2212}', "-");
        cleaned
            .split(',')
            .map(|part| {
                let t = part.trim();
                BigInt::from_str(t).map_err(|e| format!("bad coefficient {t:?}: {e}"))
            })
            .collect::<Result<_, _>>()?
    };
    if descending {
        coeffs.reverse();
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// "zeta:k:t" for the exact root e^{2 pi i t / k}; otherwise a complex
/// literal "a", "bi", or "a+bi" / "a-bi".
fn parse_eta(spec: &str) -> Result<Eta, String> {
    if let Some(rest) = spec.strip_prefix("zeta:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 2 {
            return Err(format!("expected zeta:k:t, got {spec:?}"));
        }
        let order: u64 = parts[0].parse().map_err(|_| format!("bad order in {spec:?}"))?;
        let power: i64 = parts[1].parse().map_err(|_| format!("bad power in {spec:?}"))?;
        if order == 0 {
            return Err("root-of-unity order must be positive".into());
        }
        return Ok(Eta::RootOfUnity { order, power });
    }
    let s = spec.replace('\u{2212}', "-").replace(' ', "");
    let parse_complex = |s: &str| -> Option<Complex64> {
        if let Some(im_part) = s.strip_suffix('i') {
            // Split into real and imaginary at the last +/- that is not a
            // leading sign or part of an exponent.
            for (idx, ch) in im_part.char_indices().rev() {
                if (ch == '+' || ch == '-') && idx > 0 {
                    let prev = im_part.as_bytes()[idx - 1];
                    if prev == b'e' || prev == b'E' {
                        continue;
                    }
                    let re: f64 = im_part[..idx].parse().ok()?;
                    let im_str = &im_part[idx..];
                    let im: f64 = match im_str {
                        "+" => 1.0,
                        "-" => -1.0,
                        other => other.parse().ok()?,
                    };
                    return Some(Complex64::new(re, im));
                }
            }
            let im: f64 = match im_part {
                "" => 1.0,
                "-" => -1.0,
                other => other.parse().ok()?,
            };
            return Some(Complex64::new(0.0, im));
        }
        s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0))
    };
    parse_complex(&s)
        .map(Eta::Complex)
        .ok_or_else(|| format!("cannot parse eta {spec:?}"))
}

fn cmd_divides(args: &DividesArgs) -> CmdResult {
    let poly = parse_poly_input(&args.poly, args.descending)?;
    let chosen = [
        args.cyclotomic.is_some(),
        args.zn.is_some(),
        args.phi_p.is_some(),
        args.zn_eta.is_some(),
    ]
    .iter()
    .filter(|b| **b)
    .count();
    if chosen != 1 {
        return Err(
            "choose exactly one of --cyclotomic N, --zn n, --phi-p p --s s, --zn-eta n --eta E"
                .into(),
        );
    }
    let report = if let Some(n) = args.cyclotomic {
        divides_cyclotomic(&poly, n).map_err(|e| e.to_string())?
    } else if let Some(n) = args.zn {
        divides_power_minus_one(&poly, n).map_err(|e| e.to_string())?
    } else if let Some(p) = args.phi_p {
        let s = args.s.ok_or("--phi-p requires --s")?;
        divides_prime_cyclotomic_power(&poly, p, s).map_err(|e| e.to_string())?
    } else {
        let n = args.zn_eta.unwrap();
        let eta = parse_eta(args.eta.as_deref().ok_or("--zn-eta requires --eta")?)?;
        divides_power_minus_eta(&poly, n, eta).map_err(|e| e.to_string())?
    };
    let summary = format!("P = {poly}: divisible = {}", report.verdict);
    Ok((serde_json::to_value(&report).expect("serializable"), summary))
}

fn cmd_verify(suite: &str, max_n: u64, jobs: usize, failures_only: bool) -> CmdResult {
    if max_n < 2 {
        return Err("--max-n must be at least 2".into());
    }
    let suite: Suite = suite.parse()?;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let summary = run_suite(suite, max_n, jobs, |report| {
        if !failures_only || !report.pass {
            let line = serde_json::to_string(report).expect("serializable");
            writeln!(lock, "{line}").expect("stdout");
        }
    });
    drop(lock);
    let failed = summary.failures > 0;
    let human = format!(
        "suite {} up to n = {max_n}: {} checks, {} failures",
        summary.suite, summary.total, summary.failures
    );
    let mut result = serde_json::to_value(&summary).expect("serializable");
    result["verification_failure"] = serde_json::json!(failed);
    Ok((result, human))
}

fn cmd_bench(max_degree: usize, n_list: &str, trials: u32, seed: u64, out: &PathBuf) -> CmdResult {
    let n_list: Vec<u64> = n_list
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| format!("bad N {s:?}")))
        .collect::<Result<_, _>>()?;
    if n_list.is_empty() || n_list.contains(&0) {
        return Err("--n-list needs positive integers".into());
    }
    let seed = match std::env::var("CYCLOKIT_SEED") {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| format!("CYCLOKIT_SEED must be an integer, got {v:?}"))?,
        Err(_) => seed,
    };
    let cfg = BenchConfig {
        max_degree,
        n_list,
        trials,
        seed,
    };
    let records = run_bench(&cfg);
    let csv = to_csv(&records);
    let summary = summarize(&records);
    let to_stdout = out.as_os_str() == "-";
    if to_stdout {
        print!("{csv}");
    } else {
        std::fs::write(out, &csv).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    }
    let agreement_ok = (summary.verdict_agreement - 1.0).abs() < f64::EPSILON;
    let human = format!(
        "{} records (seed {seed}); verdict agreement {:.1}%{}",
        summary.records,
        summary.verdict_agreement * 100.0,
        if to_stdout {
            String::new()
        } else {
            format!("; CSV written to {}", out.display())
        }
    );
    let mut result = serde_json::to_value(&summary).expect("serializable");
    result["seed"] = serde_json::json!(seed);
    if !to_stdout {
        result["csv_path"] = serde_json::json!(out.display().to_string());
    }
    result["verification_failure"] = serde_json::json!(!agreement_ok);
    Ok((result, human))
}
