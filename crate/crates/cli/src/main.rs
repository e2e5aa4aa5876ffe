//! `perapprox`: dictionaries, GAP-graphs, periodic approximants and band
//! spectra from a JSON system config.

mod config;
mod svg;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use perapprox::approximation::{approximant_sequence, classify, period_growth, CertificateJson, Classification, Verdict};
use perapprox::gapgraph::{branching_report, export_dot, DotAnnotations};
use perapprox::spectral::{bands_csv, convergence_csv, convergence_table, spectrum};
use perapprox::{GapGraph, PeriodicWord};
use serde::Serialize;
use serde_json::json;

use config::SystemConfig;

#[derive(Debug, Parser)]
#[command(name = "perapprox", version, about = "Periodic approximations of 1D subshifts and their spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// System config (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the truncated dictionary as JSON.
    Dict(Common),
    /// GAP-graph of order k as DOT plus a branching report.
    Gap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Strong-connectivity verdict up to k_max.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Approximant certificates over k_range; exit 2 when refuted.
    Approx {
        #[command(flatten)]
        common: Common,
        /// Comma separated edge words of a closed seed path.
        #[arg(long, value_delimiter = ',')]
        seed_path: Option<Vec<String>>,
    },
    /// Band spectra of the approximants as CSV and SVG.
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        seed_path: Option<Vec<String>>,
    },
    /// Measures and consecutive Hausdorff distances as CSV.
    Converge {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        seed_path: Option<Vec<String>>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("i/o: {0}")]
    Io(String),
    #[error("config schema at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] perapprox::Error),
    #[error("not approximable: GAP-graph of order {k0} is not strongly connected")]
    Refuted { k0: usize, classification: Classification },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Refuted { .. } => 2,
            _ => 1,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let kind = match self {
            Self::Io(_) => "io",
            Self::Schema { .. } => "schema",
            Self::Config(_) => "config",
            Self::Core(perapprox::Error::WorkCap { .. }) => "work_cap",
            Self::Core(_) => "validation",
            Self::Refuted { .. } => "refuted",
        };
        let mut v = json!({ "error": kind, "message": self.to_string() });
        match self {
            Self::Schema { pointer, .. } => v["pointer"] = json!(pointer),
            Self::Refuted { classification, .. } => v["witness"] = json!(classification),
            Self::Core(perapprox::Error::NotStronglyConnected { order, components }) => {
                v["witness"] = json!({ "order": order, "components": components });
            }
            _ => {}
        }
        v
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}

fn load(common: &Common) -> Result<SystemConfig, CliError> {
    let c = config::load(&common.config)?;
    c.validate()?;
    Ok(c)
}

fn work_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("APPROX_WORK_CAP") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| CliError::Config(format!("APPROX_WORK_CAP={v:?} is not a count"))),
        Err(_) => Ok(None),
    }
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Dict(common) => {
            let c = load(&common)?;
            let d = c.dictionary()?;
            write_json(&common.out, "dictionary.json", &d.to_json())
        }
        Command::Gap { common, k } => {
            let c = load(&common)?;
            let k = k.unwrap_or(c.k_min());
            let d = c.dictionary()?;
            let g = GapGraph::build(&d, k)?;
            write_atomic(&common.out, &format!("gap_k{k}.dot"), &export_dot(&g, DotAnnotations::all()))?;
            write_json(&common.out, &format!("branching_k{k}.json"), &branching_report(&g)?)
        }
        Command::Classify { common, k_max } => {
            let c = load(&common)?;
            let d = c.dictionary()?;
            let cl = classify(&d, k_max.unwrap_or(c.k_max()))?;
            write_json(&common.out, "classification.json", &cl)
        }
        Command::Approx { common, seed_path } => {
            let c = load(&common)?;
            let d = c.dictionary()?;
            let cl = classify(&d, c.k_max())?;
            if seed_path.is_none() && c.seed_path.is_none() {
                if let Verdict::Refuted { k0 } | Verdict::FiniteUnionEvidence { k0, .. } = cl.verdict {
                    return Err(CliError::Refuted { k0, classification: cl });
                }
                let certs = approximant_sequence(&d, c.k_min()..=c.k_max(), c.match_cap.unwrap_or(c.depth))?;
                let out = json!({
                    "classification": cl,
                    "certificates": certs.iter().map(|x| x.to_json(&d)).collect::<Vec<CertificateJson>>(),
                    "period_growth": period_growth(&certs, &d)?,
                });
                write_json(&common.out, "certificates.json", &out)
            } else {
                let words = c.approximants(&d, seed_path.as_deref())?;
                write_json(&common.out, "certificates.json", &json!({ "classification": cl, "approximants": approximant_rows(&c, &d, &words)? }))
            }
        }
        Command::Spectrum { common, grid, seed_path } => {
            let c = load(&common)?;
            let d = c.dictionary()?;
            let words = c.approximants(&d, seed_path.as_deref())?;
            let h = c.hamiltonian(&c.spectral_alphabet(&d))?;
            let method = c.method(grid, work_cap()?);
            let spectra = words.iter().map(|(_, w)| spectrum(&h, w, &method)).collect::<perapprox::Result<Vec<_>>>()?;
            let rows: Vec<_> = words.iter().zip(&spectra).map(|((k, w), s)| (*k, w.minimal_period(), s)).collect();
            write_atomic(&common.out, "bands.csv", &bands_csv(&rows))?;
            write_atomic(&common.out, "bands.svg", &svg::band_diagram(&rows))
        }
        Command::Converge { common, grid, seed_path } => {
            let c = load(&common)?;
            let d = c.dictionary()?;
            let words = c.approximants(&d, seed_path.as_deref())?;
            let h = c.hamiltonian(&c.spectral_alphabet(&d))?;
            let (rows, _) = convergence_table(&h, &words, &c.method(grid, work_cap()?))?;
            write_atomic(&common.out, "convergence.csv", &convergence_csv(&rows))
        }
    }
}

#[derive(Serialize)]
struct ApproximantRow {
    k: usize,
    block: String,
    period: usize,
}

fn approximant_rows(c: &SystemConfig, d: &perapprox::TruncatedDictionary, words: &[(usize, PeriodicWord)]) -> Result<Vec<ApproximantRow>, CliError> {
    let a = c.spectral_alphabet(d);
    Ok(words.iter().map(|(k, w)| ApproximantRow { k: *k, block: a.render(&w.aligned_block()), period: w.minimal_period() }).collect())
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    write_atomic(dir, name, &text)
}

/// Write through a temp file in the target directory, then rename.
fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.join(name).display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(dir.join(name)).map_err(|e| io(e.error))?;
    Ok(())
}
