//! `trotter`: product-formula error sweeps, invariant checks, fits and plots.

mod config;
mod data;
mod error;
mod fit;
mod plot;
mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use trotter_core::experiments::SweepKind;
use trotter_core::{coefficients, BoundCoefficients, Evolver, ModelConfig, NormKind, Order, RNG_IDENTIFIER};

use config::{write_text, GridLog, ModelArgs, RunConfig};
use error::CliResult;

const AFTER_HELP: &str = "\
Exit codes:
  0  success
  1  verification failed (verify) or a numerical failure
  2  configuration or input error, including malformed or empty CSV
  3  resource cap exceeded (more than 14 qubits)

Environment:
  TROTTER_THREADS  default worker count for --threads

Model config JSON:
  {\"type\": \"heisenberg1d\", \"n\": 10, \"seed\": 7}            (or \"h\": [..] for explicit fields)
  {\"type\": \"tfim1d\", \"n\": 6, \"couplings\": [[0, 1, 1.0]], \"field\": [..]}
  {\"type\": \"custom\", \"n\": 2, \"h1\": [\"1.0 XX\"], \"h2\": [\"0.5 ZI\"]}
A --config file holds a run config: {\"model\": {..}, \"kind\": \"fixed_r\", \"r\": 10000,
\"grid_log\": {\"var\": \"t\", \"lo\": 0.1, \"hi\": 1000, \"count\": 40}, \"orders\": [\"1\", \"2\"],
\"norm\": \"spectral\", \"threads\": 4, \"out\": \"left.csv\"}. Flags override file values.";

#[derive(Parser, Debug)]
#[command(name = "trotter", version, about = "First- and second-order product-formula error: exact measurement and commutator bounds", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Run config JSON; flags override its values
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    /// Norm for errors and bounds: spectral or frobenius
    #[arg(long)]
    norm: Option<NormKind>,
    /// Worker threads for sweep points
    #[arg(long, env = "TROTTER_THREADS")]
    threads: Option<usize>,
}

impl Common {
    fn merged(&self) -> CliResult<RunConfig> {
        let mut cfg = RunConfig::load(self.config.as_deref())?;
        self.model.apply(&mut cfg)?;
        if self.norm.is_some() {
            cfg.norm = self.norm;
        }
        if self.threads.is_some() {
            cfg.threads = self.threads;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a model and print its parts, disorder and bound coefficients as JSON
    Model {
        #[command(flatten)]
        common: Common,
        /// Write the JSON here instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run one error-scaling sweep and write CSV plus a <CSV>.meta.json sidecar
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Panel type: fixed_r, fixed_t or fixed_dt
        #[arg(long)]
        kind: Option<SweepKind>,
        /// Held timestep count for fixed_r (default 1e4)
        #[arg(long)]
        r: Option<f64>,
        /// Held total time for fixed_t (default 500)
        #[arg(long)]
        t: Option<f64>,
        /// Held timestep length for fixed_dt (default 1e-3)
        #[arg(long)]
        dt: Option<f64>,
        /// Free-variable grid as var:lo:hi:count, log spaced
        #[arg(long, value_name = "VAR:LO:HI:COUNT")]
        grid_log: Option<GridLog>,
        /// Product formulas to evaluate: 1, 2, 2m (default 1,2)
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<Order>>,
        /// Output CSV path
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Check the exact identities and bound inequalities on a grid of (t, r)
    Verify {
        #[command(flatten)]
        common: Common,
        /// Also write the report as JSON
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// Print the JSON report instead of the text summary
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true, default_value_t = 1.0)]
        test_scale_c2: f64,
    },
    /// Fit the boundary and bulk scale factors alpha, beta to sweep CSVs
    Fit {
        /// Sweep CSVs of one model, fitted jointly
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Write the JSON result here instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Draw a log-log SVG of one sweep CSV
    Plot {
        input: PathBuf,
        /// Output SVG path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Overlay the curve from a `trotter fit` result
        #[arg(long, value_name = "PATH")]
        fit: Option<PathBuf>,
        /// Chart title (default: model label and panel)
        #[arg(long)]
        title: Option<String>,
    },
}

#[derive(Serialize)]
struct ModelReport {
    model: ModelConfig,
    label: String,
    n: usize,
    rng: &'static str,
    disorder: Option<Vec<f64>>,
    h1: Vec<String>,
    h2: Vec<String>,
    sector_sizes: Vec<usize>,
    norm: NormKind,
    coefficients: BoundCoefficients,
}

fn emit(json: &impl Serialize, out: Option<&PathBuf>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(json).map_err(|e| error::config(e.to_string()))? + "\n";
    match out {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Model { common, out } => {
            let cfg = common.merged()?;
            let model_cfg = cfg.model()?.clone();
            let model = model_cfg.build()?;
            let ev = Evolver::new(&model)?;
            let report = ModelReport {
                label: model.label.clone(),
                n: model.n(),
                rng: RNG_IDENTIFIER,
                disorder: model.disorder.clone(),
                h1: model.h1.term_strings(),
                h2: model.h2.term_strings(),
                sector_sizes: ev.sectors().block_sizes(),
                norm: cfg.norm(),
                coefficients: coefficients(&ev, cfg.norm())?,
                model: model_cfg,
            };
            emit(&report, out.as_ref())?;
        }
        Command::Sweep { common, kind, r, t, dt, grid_log, orders, out } => {
            let mut cfg = common.merged()?;
            cfg.kind = kind.or(cfg.kind);
            cfg.r = r.or(cfg.r);
            cfg.t = t.or(cfg.t);
            cfg.dt = dt.or(cfg.dt);
            cfg.grid_log = grid_log.or(cfg.grid_log);
            cfg.orders = orders.or(cfg.orders);
            cfg.out = out.or(cfg.out);
            sweep::run(cfg)?;
        }
        Command::Verify { common, report, json, test_scale_c2 } => {
            let mut cfg = common.merged()?;
            cfg.report = report.or(cfg.report);
            let model_cfg = cfg.model()?.clone();
            config::check_size(model_cfg.n())?;
            let rep = verify::run_suite(&model_cfg, cfg.norm(), test_scale_c2)?;
            if json {
                emit(&rep, None)?;
            } else {
                print!("{}", verify::render(&rep));
            }
            if let Some(path) = &cfg.report {
                emit(&rep, Some(path))?;
            }
            if !rep.passed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Fit { inputs, out } => {
            let res = fit::run(&inputs)?;
            if let Some(w) = &res.warning {
                eprintln!("warning: {w}");
            }
            eprintln!(
                "alpha = {:.4}, beta = {:.4}, rms log10 residual = {:.4} over {} points",
                res.alpha, res.beta, res.residual, res.points_used
            );
            emit(&res, out.as_ref())?;
        }
        Command::Plot { input, out, fit, title } => {
            let data = data::load(&input)?;
            let fitted = fit
                .map(|p| config::read_json::<fit::FitOutput>(&p))
                .transpose()?
                .map(|f| (f.alpha, f.beta));
            let kind = data.meta.as_ref().map_or_else(|| plot::infer_kind(&data.records), |m| m.kind);
            let series = plot::standard_series(&data.records, kind, &data.coefficients, fitted);
            let title = title.unwrap_or_else(|| {
                let label = data.meta.as_ref().map_or_else(|| input.display().to_string(), |m| m.label.clone());
                format!("{label}, {}", kind.as_str())
            });
            write_text(&out, &plot::render(&title, kind.free_variable(), &series))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
