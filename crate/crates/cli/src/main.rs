use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use whg_core::fock::{self, FockBasis};
use whg_core::{bargmann, coherent, grassmann, qukit, CheckReport};

const DEFAULT_MAX_DIM: usize = 5000;
const MAX_RANK: usize = 4;
const MAX_LEVEL: u32 = 10;

#[derive(Parser, Debug)]
#[command(name = "whg", version, about = "Exact checks for generalized Weyl-Heisenberg algebras and their coherent states")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print every relation in text reports, not only failures
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Coeffs,
    Eigencheck,
    Resolution,
}

#[derive(Args, Debug, Clone, Copy)]
struct Grid {
    #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..=MAX_RANK as i64))]
    rank: u32,
    #[arg(short = 'k', long, value_parser = clap::value_parser!(u32).range(1..=MAX_LEVEL as i64))]
    level: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ladder relations, su(r+1) generators, Chevalley-Serre relations and the large-k limit
    VerifyAlgebra(Grid),
    /// Collective qubit operators on the symmetric subspace
    VerifyQukit {
        #[arg(short = 'k', long, value_parser = clap::value_parser!(u32).range(1..=qukit::DEFAULT_QUBIT_CAP as i64))]
        level: u32,
    },
    /// Generalized Grassmann calculus of order k
    VerifyGrassmann {
        #[arg(short = 'k', long, value_parser = clap::value_parser!(u32).range(1..=MAX_LEVEL as i64))]
        level: u32,
    },
    /// Fock-Bargmann realization
    VerifyBargmann(Grid),
    /// Barut-Girardello coherent states
    Coherent {
        #[command(flatten)]
        grid: Grid,
        #[arg(long, value_enum)]
        emit: Emit,
    },
    /// Every suite over 1..=max-rank x 1..=max-level
    VerifyAll {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_RANK as i64))]
        max_rank: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_LEVEL as i64))]
        max_level: u32,
    },
}

/// Failure to run at all, as opposed to a relation failing.
#[derive(Debug)]
struct UsageError(String);

impl From<whg_core::Error> for UsageError {
    fn from(e: whg_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

type Run<T> = std::result::Result<T, UsageError>;

fn max_dim() -> Run<usize> {
    match std::env::var("WHG_MAX_DIM") {
        Err(_) => Ok(DEFAULT_MAX_DIM),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("WHG_MAX_DIM must be a positive integer, got {v:?}"))),
    }
}

fn check_dim(dim: usize, cap: usize, what: &str) -> Run<()> {
    if dim > cap {
        return Err(UsageError(format!(
            "{what} has dimension {dim}, above WHG_MAX_DIM = {cap}"
        )));
    }
    Ok(())
}

fn check_grid(rank: usize, level: u32, cap: usize) -> Run<()> {
    check_dim(
        FockBasis::dimension_of(rank, level),
        cap,
        &format!("basis (r={rank}, k={level})"),
    )
}

fn algebra_suite(rank: usize, level: u32) -> Run<Vec<CheckReport>> {
    let n_max = 3.min(level - 1);
    Ok(vec![
        fock::verify_wh_relations(rank, level)?,
        fock::su_generators(rank, level)?.1,
        fock::serre_check(rank, level)?,
        fock::commuting_ladders(rank, level)?.1,
        fock::large_k_report(rank, level, n_max)?,
    ])
}

fn qukit_suite(level: u32) -> Run<Vec<CheckReport>> {
    Ok(vec![
        qukit::verify_qukit(level as usize)?,
        qukit::verify_grassmann_correspondence(level as usize)?,
    ])
}

fn cell_suite(rank: usize, level: u32) -> Run<Vec<CheckReport>> {
    let mut out = algebra_suite(rank, level)?;
    out.push(bargmann::verify_bargmann(rank, level)?);
    out.push(coherent::recurrence_check(rank, level)?);
    out.push(coherent::eigen_check(rank, level)?);
    out.push(coherent::resolution_check(rank, level)?);
    if rank == 1 {
        out.extend(qukit_suite(level)?);
        out.push(grassmann::verify_grassmann(level as usize)?);
        out.push(coherent::spin_operators(level)?.1);
    }
    Ok(out)
}

fn render_report(report: &CheckReport, verbose: u8) -> String {
    if verbose > 0 {
        return report.to_string();
    }
    let mut out = format!(
        "{} (r={}, k={}): {}  max_deviation={}  ({} relations)\n",
        report.check,
        report.rank,
        report.level,
        if report.passed { "PASS" } else { "FAIL" },
        report.max_deviation,
        report.details.len()
    );
    for d in report.failures() {
        out.push_str(&format!(
            "  [FAIL] {}  witness: {}\n",
            d.relation,
            d.witness.as_deref().unwrap_or("-")
        ));
    }
    for n in &report.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

fn render_reports(reports: &[CheckReport], format: Format, verbose: u8) -> Run<String> {
    match format {
        Format::Json => to_json(reports),
        Format::Text => {
            let mut out: String = reports.iter().map(|r| render_report(r, verbose)).collect();
            let failed = reports.iter().filter(|r| !r.passed).count();
            out.push_str(&format!(
                "{} reports, {} passed, {} failed\n",
                reports.len(),
                reports.len() - failed,
                failed
            ));
            Ok(out)
        }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Run<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| UsageError(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct CoefficientDump {
    rank: usize,
    level: u32,
    entries: Vec<coherent::EntryRecord>,
}

fn emit_coefficients(rank: usize, level: u32, format: Format) -> Run<String> {
    let state = coherent::build_coherent_state(rank, level)?;
    let records = state.entry_records();
    match format {
        Format::Json => to_json(&CoefficientDump {
            rank,
            level,
            entries: records,
        }),
        Format::Text => {
            let coefficients = coherent::bg_coefficients(rank, level)?;
            let mut out = format!("coherent state (r={rank}, k={level}), {} entries\n", records.len());
            for (rec, entry) in records.iter().zip(&state.entries) {
                out.push_str(&format!(
                    "{}  C = {}  entry = {}\n",
                    fock::format_tuple(&rec.index),
                    coefficients[&rec.index],
                    entry
                ));
            }
            Ok(out)
        }
    }
}

/// Runs the command; returns the rendered output and whether every check passed.
fn run(cli: &Cli) -> Run<(String, bool)> {
    let cap = max_dim()?;
    let all_pass = |reports: &[CheckReport]| reports.iter().all(|r| r.passed);
    let reports = match &cli.command {
        Command::VerifyAlgebra(g) => {
            check_grid(g.rank as usize, g.level, cap)?;
            algebra_suite(g.rank as usize, g.level)?
        }
        Command::VerifyQukit { level } => {
            check_dim(1usize << level, cap, &format!("{level}-qubit space"))?;
            qukit_suite(*level)?
        }
        Command::VerifyGrassmann { level } => vec![grassmann::verify_grassmann(*level as usize)?],
        Command::VerifyBargmann(g) => {
            check_grid(g.rank as usize, g.level, cap)?;
            vec![bargmann::verify_bargmann(g.rank as usize, g.level)?]
        }
        Command::Coherent { grid, emit } => {
            let (r, k) = (grid.rank as usize, grid.level);
            check_grid(r, k, cap)?;
            match emit {
                Emit::Coeffs => return Ok((emit_coefficients(r, k, cli.format)?, true)),
                Emit::Eigencheck => vec![coherent::eigen_check(r, k)?],
                Emit::Resolution => vec![coherent::resolution_check(r, k)?],
            }
        }
        Command::VerifyAll { max_rank, max_level } => {
            let cells: Vec<(usize, u32)> = (1..=*max_rank as usize)
                .flat_map(|r| (1..=*max_level).map(move |k| (r, k)))
                .collect();
            for &(r, k) in &cells {
                check_grid(r, k, cap)?;
            }
            let results: Vec<Run<Vec<CheckReport>>> =
                cells.par_iter().map(|&(r, k)| cell_suite(r, k)).collect();
            let mut reports = Vec::new();
            for r in results {
                reports.extend(r?);
            }
            reports
        }
    };
    let text = render_reports(&reports, cli.format, cli.verbose)?;
    Ok((text, all_pass(&reports)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, passed) = match run(&cli) {
        Ok(v) => v,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
