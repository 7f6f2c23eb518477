use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lexrank_core::kronecker::{KroneckerOracle, OracleBudget};
use lexrank_core::quantum::{self, Mode, StateJson, Tolerances};
use lexrank_core::strip_type::{self, CounterexampleReport};
use lexrank_core::{Error, Partition};
use serde_json::{json, Value};

mod render;

/// Default size limits for the character oracle.
const SINGLE_BUDGET: usize = 20;
const SWEEP_BUDGET: usize = 14;

#[derive(Parser, Debug)]
#[command(name = "lexrank", version, about = "Spectra, ranks and Kronecker coefficients for bipartite states with uniform margins")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Margin tolerance for state checks.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Relative eigenvalue cutoff for numerical rank.
    #[arg(long, global = true)]
    rank_tolerance: Option<f64>,

    /// Largest n for which the character oracle is run.
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Character-table cache file.
    #[arg(long, env = "LEXRANK_CACHE", global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Family {
    /// (n, m) = (2, m) with m odd
    #[value(name = "2xm")]
    TwoByM,
    /// (n, m) = (n, n + 1)
    Adjacent,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ModeArg {
    Full,
    Divisible,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Divisible => Mode::Divisible,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kronecker coefficient g(λ, μ; ν).
    Kron { lambda: Partition, mu: Partition, nu: Partition },
    /// All ν with g(λ, μ; ν) > 0.
    Phi { lambda: Partition, mu: Partition },
    /// Littlewood–Richardson coefficient c^ν_{λ,μ}.
    Lr { nu: Partition, lambda: Partition, mu: Partition },
    /// Strip-type derivation for two rectangles of equal size.
    Striptype { lambda: Partition, mu: Partition },
    /// Maximal lexicographic spectrum for margins I_n/n, I_m/m.
    Maxlex { n: usize, m: usize },
    /// Max-lex rank against a lower-rank witness.
    Counterexample {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        param: usize,
    },
    /// Build a state of rank k with uniform margins.
    Construct {
        n: usize,
        m: usize,
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
    },
    /// Check margins, rank, spectrum and extremality of a state file (`-` for stdin).
    Verify { file: String },
    /// Normalized Φ(ℓλ, ℓμ) for the uniform margins at (n, m).
    Slice { n: usize, m: usize, ell: usize },
}

struct Failure {
    code: u8,
    kind: &'static str,
    detail: String,
    /// Partial result still worth printing.
    output: Option<Box<(Value, String)>>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = classify(&e);
        Failure { code, kind, detail: e.to_string(), output: None }
    }
}

fn classify(e: &Error) -> (u8, &'static str) {
    match e {
        Error::Parse { .. } | Error::NotWeaklyDecreasing(_) => (2, "usage"),
        Error::BudgetExceeded { .. } => (4, "budget_exceeded"),
        Error::ConvergenceFailure { .. } => (5, "convergence_failure"),
        Error::Io(_) | Error::Json(_) | Error::Cache(_) => (3, "input"),
        Error::NotHermitian(_) | Error::InvalidState(_) => (3, "invalid_state"),
        Error::WeightConstraintViolation(_) => (3, "weight_constraint"),
        Error::Divisibility { .. } => (3, "divisibility"),
        Error::RankOutOfRange { .. } => (3, "rank_out_of_range"),
        Error::IndexOutOfRange(_) => (3, "index_out_of_range"),
        _ => (3, "domain"),
    }
}

fn usage(detail: impl Into<String>) -> Failure {
    Failure { code: 2, kind: "usage", detail: detail.into(), output: None }
}

struct Config {
    tol: Tolerances,
    budget: Option<usize>,
    cache: Option<PathBuf>,
}

impl Config {
    fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let mut tol = Tolerances::default();
        for (name, value, slot) in [
            ("--tolerance", cli.tolerance, &mut tol.margin),
            ("--rank-tolerance", cli.rank_tolerance, &mut tol.rank),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(usage(format!("{name} must be a positive number, got {v}")));
                }
                *slot = v;
            }
        }
        if cli.budget == Some(0) {
            return Err(usage("--budget must be at least 1"));
        }
        Ok(Config { tol, budget: cli.budget, cache: cli.cache.clone() })
    }

    fn oracle(&self) -> KroneckerOracle {
        let budget = match self.budget {
            Some(b) => OracleBudget { single: b, sweep: b },
            None => OracleBudget { single: SINGLE_BUDGET, sweep: SWEEP_BUDGET },
        };
        KroneckerOracle::new(budget).with_cache(self.cache.clone())
    }
}

fn run(cli: &Cli) -> Result<(Value, String), Failure> {
    let cfg = Config::from_cli(cli)?;
    let out = match &cli.command {
        Command::Kron { lambda, mu, nu } => {
            let g = cfg.oracle().coefficient(lambda, mu, nu)?;
            (json!({ "lambda": lambda, "mu": mu, "nu": nu, "g": g }), g.to_string())
        }
        Command::Phi { lambda, mu } => {
            let phi = cfg.oracle().phi_set(lambda, mu)?;
            let text = render::phi(&phi);
            (serde_json::to_value(&phi).map_err(Error::from)?, text)
        }
        Command::Lr { nu, lambda, mu } => {
            let q = lexrank_core::lr::LrQuery::new(nu.clone(), lambda.clone(), mu.clone());
            let c = lexrank_core::lr::lr_coefficient(&q);
            (json!({ "nu": nu, "lambda": lambda, "mu": mu, "c": c }), c.to_string())
        }
        Command::Striptype { lambda, mu } => {
            let d = strip_type::rect_strip_type(lambda, mu)?;
            (serde_json::to_value(&d).map_err(Error::from)?, format!("nu {}\n{}", d.nu, d))
        }
        Command::Maxlex { n, m } => {
            let s = strip_type::max_lex_spectrum(*n, *m)?;
            let v = json!({
                "spectrum": s.spectrum.to_strings(),
                "nu": s.nu,
                "k": s.k,
                "rank": s.rank(),
            });
            (v, render::maxlex(&s))
        }
        Command::Counterexample { family, param } => {
            let oracle = cfg.oracle();
            let report = match family {
                Family::TwoByM => strip_type::counterexample_two_by_m(*param, &oracle)?,
                Family::Adjacent => strip_type::counterexample_n_nplus1(*param, &oracle)?,
            };
            return counterexample_output(report, &oracle);
        }
        Command::Construct { n, m, k, mode } => {
            let mode = Mode::from(*mode);
            let (weights, rho) = quantum::construct(*n, *m, *k, mode)?;
            let report = quantum::verify_state(&rho, &cfg.tol)?;
            let text = format!("n {n} m {m} k {k} mode {mode}\n{}", render::state_report(&report));
            let v = json!({
                "n": n,
                "m": m,
                "k": k,
                "mode": mode,
                "weights": weights,
                "state": rho,
                "verification": report,
            });
            (v, text)
        }
        Command::Verify { file } => {
            let raw = read_input(file)?;
            let value: Value = serde_json::from_str(&raw).map_err(Error::from)?;
            // accept either a bare state or the output of `construct`
            let state_value = value.get("state").cloned().unwrap_or(value);
            let state: StateJson = serde_json::from_value(state_value).map_err(Error::from)?;
            let rho = state.into_state(&cfg.tol)?;
            let report = quantum::verify_state(&rho, &cfg.tol)?;
            let text = render::state_report(&report);
            (serde_json::to_value(&report).map_err(Error::from)?, text)
        }
        Command::Slice { n, m, ell } => {
            let spectra = cfg.oracle().rational_spectra_slice(*n, *m, *ell)?;
            let strings: Vec<Vec<String>> = spectra.iter().map(|s| s.to_strings()).collect();
            let text = spectra.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("\n");
            (json!({ "n": n, "m": m, "ell": ell, "spectra": strings }), text)
        }
    };
    Ok(out)
}

fn counterexample_output(report: CounterexampleReport, oracle: &KroneckerOracle) -> Result<(Value, String), Failure> {
    let value = serde_json::to_value(&report).map_err(Error::from)?;
    let text = render::counterexample(&report);
    if report.witness_g.is_none() {
        let size = report.witness_gamma.size();
        let e = Error::BudgetExceeded { size, budget: oracle.budget.single };
        let mut f = Failure::from(e);
        f.detail = format!("witness g({}, {}) not evaluated: {}", report.n, report.m, f.detail);
        f.output = Some(Box::new((value, text)));
        return Err(f);
    }
    Ok((value, text))
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut s = String::new();
    if file == "-" {
        io::stdin().read_to_string(&mut s).map_err(Error::from)?;
    } else {
        s = std::fs::read_to_string(file).map_err(Error::from)?;
    }
    Ok(s)
}

fn emit(format: Format, value: &Value, text: &str) {
    let mut out = io::stdout().lock();
    let _ = match format {
        Format::Json => writeln!(out, "{value}"),
        Format::Text => writeln!(out, "{text}"),
    };
}

fn emit_error(format: Format, f: &Failure) {
    match format {
        Format::Json => eprintln!("{}", json!({ "error": f.kind, "code": f.code, "detail": f.detail })),
        Format::Text => eprintln!("error ({}): {}", f.kind, f.detail),
    }
}

/// Best effort format detection for argument errors, before clap has parsed.
fn requested_format() -> Format {
    let args: Vec<String> = std::env::args().collect();
    let text = args.windows(2).any(|w| w[0] == "--format" && w[1] == "text") || args.iter().any(|a| a == "--format=text");
    if text {
        Format::Text
    } else {
        Format::Json
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let format = requested_format();
            match format {
                Format::Text => {
                    let _ = e.print();
                }
                Format::Json => {
                    let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
                    emit_error(format, &usage(first));
                }
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok((value, text)) => {
            emit(cli.format, &value, &text);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = &f.output {
                emit(cli.format, &out.0, &out.1);
            }
            emit_error(cli.format, &f);
            ExitCode::from(f.code)
        }
    }
}
