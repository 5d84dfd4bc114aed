// SPDX-License-Identifier: MIT OR Apache-2.0

//! `creche` command-line tool.
//!
//! JSON results go to stdout, tables to files. Exit status is 0 on success,
//! 2 for invalid arguments and 1 for failures while running (I/O, unusable
//! input).

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use creche::harness::{self, ExperimentSpec};
use creche::modelb::{theory_curves, uniform_targets};
use creche::output::{self, RunManifest};
use creche::rng::{seeded, trial_rng};
use creche::sources::Source;
use creche::{
    change_index, concatenate, count_crossings, detect, encode_bytes, estimate_entropy, normalize,
    CrecheError, EncodingPolicy, MatchProfile, ModelBParams, SourceSpec,
};

#[derive(Parser, Debug)]
#[command(name = "creche", version, about = "Change-point detection by counting crossings of the match graph")]
struct Cli {
    /// Worker threads for Monte Carlo runs (default: all cores). Results do
    /// not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate the change point of one file (or stdin).
    ///
    /// Prints {n, alphabet_size, j_star, gamma_hat, psi_min}. Cuts j = 1..n-1
    /// are evaluated; j_star is the first cut (0-based symbol index of the
    /// first symbol after the change) minimising psi, and gamma_hat = j_star/n.
    Detect {
        /// Input file; `-` or nothing reads stdin.
        input: Option<PathBuf>,
        #[command(flatten)]
        enc: Encoding,
        /// Seed for drawing match targets.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the curves (j, c_lr, c_rl, psi_lr, psi_rl, psi) to this CSV.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Monte Carlo runs of the no-change or the two-block model.
    Simulate {
        #[command(subcommand)]
        kind: SimulateKind,
    },
    /// Run a JSON experiment spec (kinds: null, model-b, graph-a-synthetic,
    /// graph-a-text).
    Experiment {
        spec: PathBuf,
        /// Override the spec's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the spec's master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the spec's trial count (at least 1).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: Option<u64>,
    },
    /// Match-length entropy estimate in bits per symbol (needs at least 16
    /// symbols).
    Entropy {
        input: Option<PathBuf>,
        #[command(flatten)]
        enc: Encoding,
        /// Accepted for uniformity; the estimate involves no randomness.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Join two files, write the result and report where the second begins.
    Concat {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        enc: Encoding,
        /// Output file for the joined (encoded, then decoded) bytes.
        #[arg(long)]
        out: PathBuf,
        /// Accepted for uniformity; concatenation involves no randomness.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a synthetic sequence, optionally switching source at gamma.
    ///
    /// Symbols are written as bytes: `a`, `b`, ... for alphabets up to 26,
    /// raw byte values up to 256.
    Generate {
        /// Source before the change, as JSON, e.g.
        /// '{"type":"iid","probs":[0.1,0.3,0.6]}' or
        /// '{"type":"markov","transition":[[...],...]}'.
        #[arg(long, conflicts_with = "probs", required_unless_present = "probs")]
        source: Option<String>,
        /// Shortcut for an IID source: comma-separated probabilities.
        #[arg(long, value_delimiter = ',')]
        probs: Option<Vec<f64>>,
        /// Source after the change (same JSON form). Requires --gamma.
        #[arg(long, requires = "gamma")]
        right: Option<String>,
        /// Total length in symbols.
        #[arg(short = 'n', long)]
        n: usize,
        /// Change ratio in (0, 1); the change index is round(n * gamma).
        #[arg(long, requires = "right")]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Encoding {
    /// How bytes become symbols: identity (byte value), dense-remap
    /// (distinct bytes to 0..k) or lowercase-letters (a-z, other bytes
    /// dropped).
    #[arg(long, default_value = "identity")]
    policy: EncodingPolicy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// CSV tables plus manifest.json.
    Csv,
    /// A single results.json with every per-trial value.
    Json,
}

#[derive(Args, Debug)]
struct RunFlags {
    /// Number of Monte Carlo trials (at least 1).
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Master seed; trial t uses stream t of this seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for output files. Without it only the JSON summary is
    /// printed.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum SimulateKind {
    /// Uniform targets: sup of |psi_lr| over j <= n(1 - alpha) against
    /// s / sqrt(n), with the bound (1 - alpha)^2 / (alpha s^2).
    Null {
        /// Sequence length.
        #[arg(short = 'n', long, default_value_t = 10_000)]
        n: usize,
        /// Fraction of cuts cut off at the right end, in (0, 1).
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Threshold in units of 1/sqrt(n), positive.
        #[arg(long, default_value_t = 3.0)]
        s: f64,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Two-block model: estimates against the consistency bound, plus curves
    /// next to their theoretical means.
    ModelB {
        #[arg(short = 'n', long, default_value_t = 10_000)]
        n: usize,
        /// Change ratio in (0, 1).
        #[arg(long, default_value_t = 0.4)]
        gamma: f64,
        /// Weight of a cross-block target for left rows, in [0, 1].
        #[arg(long, default_value_t = 0.2)]
        alpha_l: f64,
        /// Weight of a cross-block target for right rows, in [0, 1].
        #[arg(long, default_value_t = 0.2)]
        alpha_r: f64,
        /// Thresholds s for P(|gamma_hat - gamma| >= s / sqrt(n)).
        #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
        s_grid: Vec<f64>,
        #[command(flatten)]
        run: RunFlags,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Runtime(_) => 1,
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage(e: CrecheError) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: CrecheError) -> Failure {
    Failure::Runtime(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build_global();
    }
    match run(cli.command) {
        Ok(value) => {
            let mut out = std::io::stdout().lock();
            let _ = serde_json::to_writer_pretty(&mut out, &value);
            let _ = writeln!(out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (Failure::Usage(msg) | Failure::Runtime(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command) -> Outcome<Value> {
    match cmd {
        Command::Detect {
            input,
            enc,
            seed,
            curve,
        } => cmd_detect(input.as_deref(), enc.policy, seed, curve.as_deref()),
        Command::Simulate { kind } => match kind {
            SimulateKind::Null { n, alpha, s, run } => cmd_simulate_null(n, alpha, s, &run),
            SimulateKind::ModelB {
                n,
                gamma,
                alpha_l,
                alpha_r,
                s_grid,
                run,
            } => {
                let params = ModelBParams::new(n, gamma, alpha_l, alpha_r).map_err(usage)?;
                cmd_simulate_model_b(&params, &s_grid, &run)
            }
        },
        Command::Experiment {
            spec,
            out,
            seed,
            trials,
        } => cmd_experiment(&spec, out, seed, trials),
        Command::Entropy { input, enc, .. } => {
            let x = read_sequence(input.as_deref(), enc.policy)?;
            let profile = MatchProfile::new(x.symbols()).map_err(runtime)?;
            let bits = estimate_entropy(&profile).map_err(runtime)?;
            Ok(json!({
                "n": x.len(),
                "alphabet_size": x.alphabet_size(),
                "bits_per_symbol": bits,
            }))
        }
        Command::Concat {
            first,
            second,
            enc,
            out,
            ..
        } => {
            let a = read_sequence(Some(&first), enc.policy)?;
            let b = read_sequence(Some(&second), enc.policy)?;
            let (joined, index) = concatenate(&a, &b).map_err(runtime)?;
            let bytes = joined.decode_bytes().expect("byte-derived sequences carry labels");
            std::fs::write(&out, bytes).map_err(|e| Failure::Runtime(format!("{}: {e}", out.display())))?;
            Ok(json!({
                "n": joined.len(),
                "change_index": index,
                "gamma": index as f64 / joined.len() as f64,
                "out": out,
            }))
        }
        Command::Generate {
            source,
            probs,
            right,
            n,
            gamma,
            seed,
            out,
        } => cmd_generate(source, probs, right, n, gamma, seed, &out),
    }
}

fn read_input(input: Option<&Path>) -> Outcome<Vec<u8>> {
    match input {
        None => read_stdin(),
        Some(p) if p.as_os_str() == "-" => read_stdin(),
        Some(p) => std::fs::read(p).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display()))),
    }
}

fn read_stdin() -> Outcome<Vec<u8>> {
    let mut buf = Vec::new();
    std::io::stdin()
        .read_to_end(&mut buf)
        .map_err(|e| Failure::Runtime(format!("stdin: {e}")))?;
    Ok(buf)
}

fn read_sequence(input: Option<&Path>, policy: EncodingPolicy) -> Outcome<creche::SymbolSequence> {
    encode_bytes(&read_input(input)?, policy).map_err(runtime)
}

fn cmd_detect(input: Option<&Path>, policy: EncodingPolicy, seed: u64, curve: Option<&Path>) -> Outcome<Value> {
    let x = read_sequence(input, policy)?;
    let (curves, est) = detect(&x, &mut seeded(seed)).map_err(runtime)?;
    if let Some(path) = curve {
        output::write_file(path, |w| output::write_curves_csv(w, &curves, None)).map_err(runtime)?;
    }
    Ok(json!({
        "n": x.len(),
        "alphabet_size": x.alphabet_size(),
        "j_star": est.j_star,
        "gamma_hat": est.gamma_hat,
        "psi_min": est.psi_min,
        "cuts": [1, x.len() - 1],
        "seed": seed,
    }))
}

fn write_json(path: &Path, value: &Value) -> Outcome<()> {
    output::write_file(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)
    })
    .map_err(runtime)
}

fn finish_manifest(dir: &Path, spec: Value, seed: u64, results: Value, artifacts: Vec<String>) -> Outcome<()> {
    let mut m = RunManifest::new(spec, seed, results);
    m.artifacts = artifacts;
    m.write(&dir.join("manifest.json")).map_err(runtime)
}

fn cmd_simulate_null(n: usize, alpha: f64, s: f64, run: &RunFlags) -> Outcome<Value> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Failure::Usage(format!("--alpha must lie in (0, 1), got {alpha}")));
    }
    if s.is_nan() || s <= 0.0 {
        return Err(Failure::Usage(format!("--s must be positive, got {s}")));
    }
    if n < 4 {
        return Err(Failure::Usage(format!("-n must be at least 4, got {n}")));
    }
    let report = harness::run_null_band_check(n, alpha, s, run.trials as usize, run.seed).map_err(runtime)?;
    let summary = json!({
        "band_exceedance_rate": report.band_exceedance_rate,
        "band_bound": report.band_bound,
        "within_bound": report.band_exceedance_rate <= report.band_bound,
        "report": report,
    });
    if let Some(dir) = &run.out {
        let spec = json!({"kind": "null", "n": n, "alpha": alpha, "s": s, "trials": run.trials});
        match run.format {
            Format::Json => write_json(&dir.join("results.json"), &summary)?,
            Format::Csv => {
                // First trial's curves, as an example path.
                let curves = normalize(count_crossings(&uniform_targets(n, &mut trial_rng(run.seed, 0))));
                output::write_file(&dir.join("curve.csv"), |w| output::write_curves_csv(w, &curves, None))
                    .map_err(runtime)?;
                finish_manifest(dir, spec, run.seed, summary.clone(), vec!["curve.csv".into()])?;
            }
        }
    }
    Ok(summary)
}

fn cmd_simulate_model_b(params: &ModelBParams, s_grid: &[f64], run: &RunFlags) -> Outcome<Value> {
    if let Some(s) = s_grid.iter().find(|s| s.is_nan() || **s <= 0.0) {
        return Err(Failure::Usage(format!("--s-grid entries must be positive, got {s}")));
    }
    let report = harness::run_model_b_consistency(params, s_grid, run.trials as usize, run.seed).map_err(runtime)?;
    let summary = json!({
        "params": report.params,
        "change_index": params.c(),
        "trials": report.trials,
        "constant_k": report.constant_k,
        "rows": report.rows,
        "exact_errors": report.exact_errors,
        "exact_error_rate": report.exact_error_rate,
        "envelope": report.envelope,
    });
    if let Some(dir) = &run.out {
        match run.format {
            Format::Json => write_json(&dir.join("results.json"), &json!({"summary": summary, "report": report}))?,
            Format::Csv => {
                let theory = theory_curves(params);
                let curves = normalize(count_crossings(&creche::modelb::sample_model_b_with(
                    params,
                    &mut trial_rng(run.seed, 0),
                )));
                let write = |name: &str, f: &dyn Fn(&mut std::io::BufWriter<std::fs::File>) -> std::io::Result<()>| {
                    output::write_file(&dir.join(name), f).map_err(runtime)
                };
                write("curve.csv", &|w| output::write_model_b_csv(w, &curves, &theory))?;
                write("mean_curve.csv", &|w| output::write_mean_curve_csv(w, &report.mean_psi, Some(&theory)))?;
                write("consistency.csv", &|w| output::write_consistency_csv(w, &report.rows))?;
                write("estimates.csv", &|w| output::write_estimates_csv(w, &report.estimates))?;
                let spec = json!({"kind": "model-b", "params": params, "s_grid": s_grid, "trials": run.trials});
                let artifacts = ["curve.csv", "mean_curve.csv", "consistency.csv", "estimates.csv"];
                finish_manifest(
                    dir,
                    spec,
                    run.seed,
                    summary.clone(),
                    artifacts.iter().map(|s| s.to_string()).collect(),
                )?;
            }
        }
    }
    Ok(summary)
}

fn cmd_experiment(path: &Path, out: Option<PathBuf>, seed: Option<u64>, trials: Option<u64>) -> Outcome<Value> {
    let mut spec = ExperimentSpec::from_file(path).map_err(|e| match e {
        CrecheError::Io { .. } => runtime(e),
        other => usage(other),
    })?;
    if out.is_some() {
        spec.out = out;
    }
    if let Some(s) = seed {
        spec.seed = s;
    }
    if let Some(t) = trials {
        spec.trials = t as usize;
    }
    let outcome = harness::run_experiment(&spec).map_err(runtime)?;
    Ok(outcome.summary())
}

fn parse_source(text: &str) -> Outcome<Source> {
    let spec: SourceSpec =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("bad source description: {e}")))?;
    spec.build().map_err(usage)
}

fn cmd_generate(
    source: Option<String>,
    probs: Option<Vec<f64>>,
    right: Option<String>,
    n: usize,
    gamma: Option<f64>,
    seed: u64,
    out: &Path,
) -> Outcome<Value> {
    let left = match (source, probs) {
        (Some(text), _) => parse_source(&text)?,
        (None, Some(p)) => SourceSpec::Iid { probs: p }.build().map_err(usage)?,
        (None, None) => unreachable!("clap requires one of --source and --probs"),
    };
    let right = right.as_deref().map(parse_source).transpose()?;
    if n < 2 {
        return Err(Failure::Usage(format!("-n must be at least 2, got {n}")));
    }
    let k = left.alphabet_size().max(right.as_ref().map_or(0, |r| r.alphabet_size()));
    if k > 256 {
        return Err(Failure::Usage(format!("alphabets above 256 symbols cannot be written as bytes (got {k})")));
    }
    let c = match gamma {
        Some(g) => Some(change_index(n, g).map_err(usage)?),
        None => None,
    };
    let mut rng = seeded(seed);
    let symbols = match (&right, c) {
        (Some(r), Some(c)) => {
            let mut s = left.sample_symbols(c, &mut rng);
            s.extend(r.sample_symbols(n - c, &mut rng));
            s
        }
        _ => left.sample_symbols(n, &mut rng),
    };
    let bytes: Vec<u8> = if k <= 26 {
        symbols.iter().map(|&s| b'a' + s as u8).collect()
    } else {
        symbols.iter().map(|&s| s as u8).collect()
    };
    std::fs::write(out, bytes).map_err(|e| Failure::Runtime(format!("{}: {e}", out.display())))?;
    Ok(json!({
        "n": n,
        "alphabet_size": k,
        "change_index": c,
        "seed": seed,
        "out": out,
    }))
}
