use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};

use rigidity_core::job::{format_table, prepare, run_check, run_decompose, run_h1, JobConfig, JobError, ModeName, Overrides};
use rigidity_core::lie::ModuleLabel;
use rigidity_core::reps::Registry;

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 2;
const EXIT_UNCERTIFIED: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "rigidity", version, about = "Twisted H¹ of finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Rational,
    Float,
}

#[derive(clap::Args)]
struct Common {
    /// JSON job config.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Rank tolerance; the config value, or 1e-9, when omitted.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Where to write the JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated coefficient modules: so, sym0, sl, trivial.
    #[arg(long, value_delimiter = ',')]
    labels: Option<Vec<ModuleLabel>>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the presentation, the representation and its invariant form.
    Check(Common),
    /// Compute H¹ for each requested module.
    H1(Common),
    /// Compare H¹(sl) against H¹(so) + H¹(sym0).
    Decompose(Common),
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<JobError> for Failure {
    fn from(e: JobError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn load(c: &Common) -> Result<JobConfig, Failure> {
    let text = fs::read_to_string(&c.config).map_err(|e| Failure::Input(format!("{}: {e}", c.config.display())))?;
    let mut cfg = JobConfig::from_json(&text)?;
    let mode = c.mode.map(|m| match m {
        Mode::Exact => ModeName::Exact,
        Mode::Rational => ModeName::Rational,
        Mode::Float => ModeName::Float,
    });
    cfg.apply(&Overrides { mode, tolerance: c.tolerance, labels: c.labels.clone() });
    Ok(cfg)
}

fn write_json<T: serde::Serialize>(c: &Common, cfg: &JobConfig, value: &T) -> Result<(), Failure> {
    let path = c.out.clone().or_else(|| cfg.output.as_ref().map(PathBuf::from));
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
        fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        info!("wrote {}", path.display());
    }
    Ok(())
}

fn run(cmd: &Command) -> Result<bool, Failure> {
    let registry = Registry::default();
    match cmd {
        Command::Check(c) => {
            let cfg = load(c)?;
            let report = run_check(&prepare(&cfg, &registry)?)?;
            println!("generators {}  relators {}  size {}  mode {}", report.presentation.generators, report.presentation.relators, report.size, report.mode);
            println!("relators hold (max deviation {:.3e})", report.max_deviation);
            if let Some((p, n, z)) = report.form_signature {
                println!("invariant form signature ({p}, {n}, {z})  hyperbolic {}", report.hyperbolic.unwrap_or(false));
            }
            for n in &report.notes {
                println!("note: {n}");
            }
            let needs_form = cfg.labels.iter().any(|l| l.needs_form());
            write_json(c, &cfg, &report)?;
            if needs_form && report.form_signature.is_none() {
                return Err(Failure::Input("requested modules need an invariant form".into()));
            }
            Ok(true)
        }
        Command::H1(c) => {
            let cfg = load(c)?;
            let reports = run_h1(&prepare(&cfg, &registry)?)?;
            print!("{}", format_table(&reports));
            let mut seen = Vec::new();
            for n in reports.iter().flat_map(|r| &r.notes) {
                if !seen.contains(&n) {
                    println!("note: {n}");
                    seen.push(n);
                }
            }
            write_json(c, &cfg, &reports)?;
            Ok(reports.iter().all(|r| r.certified))
        }
        Command::Decompose(c) => {
            let cfg = load(c)?;
            let report = run_decompose(&prepare(&cfg, &registry)?)?;
            println!("H1(sl) = {}  H1(so) = {}  H1(sym0) = {}", report.sl.dim_h1, report.so.dim_h1, report.sym0.dim_h1);
            println!("additive {}  certified {}", report.additive, report.certified);
            for n in &report.notes {
                println!("note: {n}");
            }
            write_json(c, &cfg, &report)?;
            Ok(report.certified)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match run(&cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => {
            warn!("rank decisions not certified by the singular value gap");
            EXIT_UNCERTIFIED
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            EXIT_INTERNAL
        }
    };
    ExitCode::from(code)
}
