//! Run configuration: JSON file values overridden by command-line flags.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use trotter_core::experiments::{log_grid, SweepKind};
use trotter_core::{ModelConfig, NormKind, Order, MAX_DENSE_QUBITS};

use crate::error::{config, CliError, CliResult};

/// `count` log-spaced values of `var` over `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridLog {
    pub var: String,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl std::str::FromStr for GridLog {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [var, lo, hi, count] = parts.as_slice() else {
            return Err(format!("expected var:lo:hi:count, got {s:?}"));
        };
        let num = |x: &str, what: &str| x.parse::<f64>().map_err(|_| format!("bad {what} {x:?} in {s:?}"));
        Ok(GridLog {
            var: var.to_string(),
            lo: num(lo, "lower end")?,
            hi: num(hi, "upper end")?,
            count: count.parse().map_err(|_| format!("bad point count {count:?} in {s:?}"))?,
        })
    }
}

/// Everything a run needs. Loaded from `--config`, then overridden field by
/// field from flags; the merged result is written into run metadata.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<SweepKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_log: Option<GridLog>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<Order>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| config(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        path.map_or_else(|| Ok(Self::default()), read_json)
    }

    pub fn model(&self) -> CliResult<&ModelConfig> {
        self.model.as_ref().ok_or_else(|| config("missing field `model`: pass --model or --model-config"))
    }

    pub fn norm(&self) -> NormKind {
        self.norm.unwrap_or_default()
    }

    pub fn threads(&self) -> usize {
        self.threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelType {
    Heisenberg1d,
    Tfim1d,
    Custom,
}

#[derive(Debug, Clone, Args, Default)]
pub struct ModelArgs {
    /// Built-in model family
    #[arg(long, value_enum)]
    pub model: Option<ModelType>,
    /// Number of qubits
    #[arg(long)]
    pub n: Option<usize>,
    /// Disorder seed for heisenberg1d
    #[arg(long)]
    pub seed: Option<u64>,
    /// Explicit heisenberg1d local fields, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub h: Option<Vec<f64>>,
    /// tfim1d transverse fields, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub field: Option<Vec<f64>>,
    /// tfim1d coupling as i:j:J (repeatable)
    #[arg(long = "coupling", value_name = "I:J:JIJ", allow_hyphen_values = true)]
    pub couplings: Vec<String>,
    /// custom model term for H1, e.g. "0.5 XXI" (repeatable)
    #[arg(long = "h1-term", value_name = "TERM", allow_hyphen_values = true)]
    pub h1: Vec<String>,
    /// custom model term for H2 (repeatable)
    #[arg(long = "h2-term", value_name = "TERM", allow_hyphen_values = true)]
    pub h2: Vec<String>,
    /// Model description as JSON, overriding the `model` field of --config
    #[arg(long, value_name = "PATH")]
    pub model_config: Option<PathBuf>,
}

fn parse_coupling(s: &str) -> CliResult<(usize, usize, f64)> {
    let bad = || config(format!("field `coupling`: expected i:j:J, got {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    let [i, j, v] = parts.as_slice() else { return Err(bad()) };
    Ok((i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?))
}

impl ModelArgs {
    fn fresh(&self, kind: ModelType) -> CliResult<ModelConfig> {
        let n = self.n.ok_or_else(|| config("missing field `n`: pass --n"))?;
        Ok(match kind {
            ModelType::Heisenberg1d => ModelConfig::Heisenberg1d { n, seed: None, h: None },
            ModelType::Tfim1d => ModelConfig::Tfim1d { n, couplings: None, field: None },
            ModelType::Custom => ModelConfig::Custom { n, h1: Vec::new(), h2: Vec::new() },
        })
    }

    fn overlay(&self, mut m: ModelConfig) -> CliResult<ModelConfig> {
        let couplings = self.couplings.iter().map(|s| parse_coupling(s)).collect::<CliResult<Vec<_>>>()?;
        match &mut m {
            ModelConfig::Heisenberg1d { n, seed, h } => {
                if let Some(v) = self.n {
                    *n = v;
                }
                if self.seed.is_some() {
                    *seed = self.seed;
                    *h = None;
                }
                if self.h.is_some() {
                    *h = self.h.clone();
                }
            }
            ModelConfig::Tfim1d { n, couplings: c, field } => {
                if let Some(v) = self.n {
                    *n = v;
                }
                if !couplings.is_empty() {
                    *c = Some(couplings);
                }
                if self.field.is_some() {
                    *field = self.field.clone();
                }
            }
            ModelConfig::Custom { n, h1, h2 } => {
                if let Some(v) = self.n {
                    *n = v;
                }
                if !self.h1.is_empty() {
                    *h1 = self.h1.clone();
                }
                if !self.h2.is_empty() {
                    *h2 = self.h2.clone();
                }
            }
        }
        Ok(m)
    }

    fn same_family(kind: ModelType, m: &ModelConfig) -> bool {
        matches!(
            (kind, m),
            (ModelType::Heisenberg1d, ModelConfig::Heisenberg1d { .. })
                | (ModelType::Tfim1d, ModelConfig::Tfim1d { .. })
                | (ModelType::Custom, ModelConfig::Custom { .. })
        )
    }

    /// Folds these flags into `cfg.model`.
    pub fn apply(&self, cfg: &mut RunConfig) -> CliResult<()> {
        if let Some(path) = &self.model_config {
            cfg.model = Some(read_json(path)?);
        }
        let base = match (self.model, cfg.model.take()) {
            (Some(kind), Some(m)) if Self::same_family(kind, &m) => Some(m),
            (Some(kind), _) => Some(self.fresh(kind)?),
            (None, m) => m,
        };
        cfg.model = base.map(|m| self.overlay(m)).transpose()?;
        if let Some(m) = &cfg.model {
            check_size(m.n())?;
        }
        Ok(())
    }
}

pub fn check_size(n: usize) -> CliResult<()> {
    if n > MAX_DENSE_QUBITS {
        return Err(CliError::Resource(format!(
            "n = {n} exceeds the dense simulation cap of {MAX_DENSE_QUBITS} qubits"
        )));
    }
    Ok(())
}

/// Default fixed value and grid for each panel kind.
pub fn panel_defaults(kind: SweepKind) -> (f64, GridLog) {
    match kind {
        SweepKind::FixedR => (1e4, GridLog { var: "t".into(), lo: 0.1, hi: 1000.0, count: 40 }),
        SweepKind::FixedT => (500.0, GridLog { var: "r".into(), lo: 100.0, hi: 1e6, count: 40 }),
        SweepKind::FixedDt => (1e-3, GridLog { var: "t".into(), lo: 0.1, hi: 100.0, count: 40 }),
    }
}

/// The held value of `kind` from the config, defaulting where unset, and
/// the resolved grid.
pub fn resolve_sweep(cfg: &mut RunConfig) -> CliResult<(SweepKind, f64, Vec<f64>)> {
    let kind = cfg.kind.ok_or_else(|| config("missing field `kind`: pass --kind fixed_r|fixed_t|fixed_dt"))?;
    let (default_value, default_grid) = panel_defaults(kind);
    let (slot, name) = match kind {
        SweepKind::FixedR => (&mut cfg.r, "r"),
        SweepKind::FixedT => (&mut cfg.t, "t"),
        SweepKind::FixedDt => (&mut cfg.dt, "dt"),
    };
    let value = *slot.get_or_insert(default_value);
    if !(value.is_finite() && value > 0.0) {
        return Err(config(format!("field `{name}` must be positive, got {value}")));
    }
    if kind == SweepKind::FixedR && value < 0.5 {
        return Err(config(format!("field `r` must be at least 1, got {value}")));
    }
    let grid = cfg.grid_log.get_or_insert(default_grid).clone();
    if grid.var != kind.free_variable() {
        return Err(config(format!(
            "field `grid_log`: a {} sweep varies {}, not {:?}",
            kind.as_str(),
            kind.free_variable(),
            grid.var
        )));
    }
    let values = log_grid(grid.lo, grid.hi, grid.count).map_err(|e| config(format!("field `grid_log`: {e}")))?;
    if cfg.orders.as_ref().is_some_and(Vec::is_empty) {
        return Err(config("field `orders` is empty"));
    }
    cfg.orders.get_or_insert_with(|| vec![Order::First, Order::Second]);
    Ok((kind, value, values))
}
