use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use spine::format::{fp_graph_dot, fp_graph_text, multigraph_dot, multigraph_text, FieldKind, GraphFormat};
use spine::report::{report_line, ReportRecord};
use spine::survey::{model_csv, model_rows, par_map, primes_in, survey, survey_csv, write_atomic, SurveyMode};
use spine_core::graph::build_graphs;
use spine_core::nullmodel::ModelParams;
use spine_core::oracle::{verify, Verdict};

#[derive(Parser, Debug)]
#[command(name = "spine", version, about = "Supersingular isogeny graphs, spines and their structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one graph and write it out.
    Build {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[arg(long, value_enum, default_value = "spine")]
        field: FieldKind,
        #[arg(long, value_enum, default_value = "text")]
        format: GraphFormat,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare computed spines with the congruence predictions.
    Verify {
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        #[arg(long, env = "SPINE_JOBS", default_value_t = 0)]
        jobs: usize,
        /// One JSON record per prime instead of text lines.
        #[arg(long)]
        json: bool,
    },
    /// Center or spine-diameter statistics as CSV.
    Survey {
        #[arg(value_enum)]
        mode: SurveyMode,
        #[arg(long, default_value_t = 2)]
        ell: u32,
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "SPINE_JOBS", default_value_t = 0)]
        jobs: usize,
    },
    /// Discrete-Gaussian center sizes and scaled tree margins as CSV.
    Model {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.8)]
        mu_coeff: f64,
        #[arg(long, default_value_t = 0.38)]
        sigma: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "SPINE_JOBS", default_value_t = 0)]
        jobs: usize,
    },
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::msg(msg.into()).context(UsageMarker)
}

#[derive(Debug)]
struct UsageMarker;

impl std::fmt::Display for UsageMarker {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("invalid arguments")
    }
}

fn check_ell(ell: u32) -> anyhow::Result<()> {
    if ell == 2 || ell == 3 {
        Ok(())
    } else {
        Err(usage(format!("--ell: must be 2 or 3, got {ell}")))
    }
}

fn check_range(min: u64, max: u64) -> anyhow::Result<()> {
    if min > max {
        return Err(usage(format!("--min: {min} exceeds --max {max}")));
    }
    Ok(())
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => write_atomic(path, bytes),
        None => {
            std::io::stdout().lock().write_all(bytes)?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Build { p, ell, field, format, out } => {
            check_ell(ell)?;
            if p < 5 || !spine_core::arith::is_prime(p) {
                return Err(usage(format!("--p: p must be prime >= 5, got {p}")));
            }
            if u64::from(ell) == p {
                return Err(usage(format!("--p: p must differ from ell, got {p}")));
            }
            let b = build_graphs(p, ell)?;
            let text = match (field, format) {
                (FieldKind::Fp, GraphFormat::Text) => fp_graph_text(&b.fp)?,
                (FieldKind::Fp, GraphFormat::Dot) => fp_graph_dot(&b.fp),
                (FieldKind::Fpbar, GraphFormat::Text) => multigraph_text(&b.full, field)?,
                (FieldKind::Fpbar, GraphFormat::Dot) => multigraph_dot(&b.full, field),
                (FieldKind::Spine, GraphFormat::Text) => multigraph_text(&b.spine, field)?,
                (FieldKind::Spine, GraphFormat::Dot) => multigraph_dot(&b.spine, field),
            };
            emit(out.as_ref(), text.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { ell, min, max, jobs, json } => {
            check_ell(ell)?;
            check_range(min, max)?;
            let primes: Vec<u64> = primes_in(min, max, ell).into_iter().filter(|&p| p > u64::from(ell)).collect();
            let reports = par_map(&primes, jobs, |p| Ok(verify(p, ell)?))?;
            let mut stdout = std::io::stdout().lock();
            let mut failed = false;
            for r in &reports {
                failed |= r.verdict == Verdict::Fail;
                if json {
                    writeln!(stdout, "{}", serde_json::to_string(&ReportRecord::from(r))?)?;
                } else {
                    writeln!(stdout, "{}", report_line(r))?;
                }
            }
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Survey { mode, ell, min, max, out, jobs } => {
            check_ell(ell)?;
            check_range(min, max)?;
            let rows = survey(mode, ell, min, max, jobs)?;
            emit(out.as_ref(), &survey_csv(&rows)?)?;
            let failed = rows.iter().any(|r| r.verdict.as_deref() == Some("FAIL"));
            Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Model { min, max, seed, mu_coeff, sigma, out, jobs } => {
            check_range(min, max)?;
            let params = ModelParams { mu_coeff, seed, sigma };
            if let Err(e) = params.validate() {
                return Err(usage(format!("--sigma/--mu-coeff: {e}")));
            }
            let rows = model_rows(min, max, &params, jobs)?;
            emit(out.as_ref(), &model_csv(&rows)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let is_usage = e.downcast_ref::<UsageMarker>().is_some();
            eprintln!("error: {}", e.root_cause());
            if is_usage {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
