use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sympflux_core::certify::{run_suite, SuiteConfig, SUITES};
use sympflux_core::io::{build_chain, chain_to_terms, evaluate_request, BuildSpec, EvalOutcome, EvalRequest};
use sympflux_core::kunneth::{KunnethClass, RelationsMode};
use sympflux_core::scalars::PolyScalar;
use sympflux_core::symplectic::Genus;

#[derive(Parser)]
#[command(name = "sympflux", version, about = "Exact checks of flux and Calabi cocycles on a finite symplectic model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Free,
    Reduced,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exits 1 if any check fails.
    RunSuite {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        /// Comma-separated symbol alphabet for the scalars.
        #[arg(long, value_delimiter = ',', default_value = "t1,t2")]
        symbols: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Suite names (repeatable or comma-separated); `all` runs everything.
        #[arg(long = "suite", value_delimiter = ',', default_value = "all")]
        suites: Vec<String>,
        /// Random cases per randomized check.
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock times (reports are then no longer reproducible byte for byte).
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate a cocycle on a chain described in a JSON file (`-` reads stdin).
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an evaluation request for a constructed cycle.
    Build {
        #[command(subcommand)]
        what: BuildCommand,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Expand a product of named classes in the Kunneth algebra.
    Kunneth {
        /// Sum of products of `flux`, `v`, `e`, `omega0t`, `gamma`, `mu`, e.g. `v*v` or `2*e*v`.
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Integrate over the fiber.
        #[arg(long)]
        pi: bool,
    },
    /// List the suite names.
    Suites,
}

#[derive(Subcommand)]
enum BuildCommand {
    /// The lifted 2-cycle for the handle pair (i, i+1) and parameter r.
    Cstar {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, default_value_t = 1)]
        handle: usize,
        #[arg(long, default_value = "alpha")]
        cocycle: String,
    },
    /// The k-torus of commuting elements whose fluxes read r x_1, ..., r x_k.
    Torus {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        r: String,
        /// Defaults to the pullback of x1^...^xk.
        #[arg(long)]
        cocycle: Option<String>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn eval_text(o: &EvalOutcome) -> String {
    let boundary = o.certificate.boundary.len();
    let certificate = if o.closed {
        format!("verified cycle (boundary has {boundary} terms)")
    } else {
        format!("chain not closed (boundary has {boundary} terms)")
    };
    let mut s = format!("cocycle: {} (degree {})\nvalue: {}\n", o.cocycle, o.degree, o.value);
    if o.projected != o.value {
        s.push_str(&format!("projected: {}\n", o.projected));
    }
    s.push_str(&format!("certificate: {certificate}\n"));
    s
}

fn read_input(file: &Path) -> Result<String> {
    if file == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))
    }
}

fn build(what: BuildCommand) -> Result<EvalRequest> {
    let (spec, cocycle) = match what {
        BuildCommand::Cstar { genus, r, handle, cocycle } => {
            let r: PolyScalar = r.parse()?;
            (BuildSpec::Cstar { genus: Genus::new(genus)?, r, handle }, cocycle)
        }
        BuildCommand::Torus { genus, k, r, cocycle } => {
            let r: PolyScalar = r.parse()?;
            let default = format!(
                "flux_pullback:{}",
                (1..=k).map(|i| format!("x{i}")).collect::<Vec<_>>().join("^")
            );
            (BuildSpec::Torus { genus: Genus::new(genus)?, k, r }, cocycle.unwrap_or(default))
        }
    };
    let genus = match &spec {
        BuildSpec::Cstar { genus, .. } | BuildSpec::Torus { genus, .. } => *genus,
    };
    let z = build_chain(&spec)?;
    Ok(EvalRequest { cocycle, genus, symbols: None, chain: chain_to_terms(&z) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::RunSuite { genus, symbols, seed, suites, cases, format, out, timings } => {
            let config = SuiteConfig { genus: Genus::new(genus)?, symbols, seed, suites, cases };
            let report = run_suite(&config, timings)?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => to_json(&report)?,
            };
            emit(out.as_deref(), &text)?;
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Eval { file, format, out } => {
            let req: EvalRequest = serde_json::from_str(&read_input(&file)?).context("malformed evaluation request")?;
            let outcome = evaluate_request(&req)?;
            let text = match format {
                Format::Text => eval_text(&outcome),
                Format::Json => to_json(&outcome)?,
            };
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Build { what, out } => {
            emit(out.as_deref(), &to_json(&build(what)?)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Kunneth { expr, genus, mode, pi } => {
            let mode = match mode {
                Mode::Free => RelationsMode::Free,
                Mode::Reduced => RelationsMode::Reduced,
            };
            let x = KunnethClass::parse(Genus::new(genus)?, &expr, mode)?;
            let text = if pi { x.pi_star().to_string() } else { x.to_string() };
            emit(None, &format!("{text}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Suites => {
            emit(None, &(SUITES.join("\n") + "\n"))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
