use std::fs::File;
use std::io::BufWriter;

use trotter_core::experiments::{run_sweep, write_records, SweepSpec};
use trotter_core::{coefficients, Evolver, RNG_IDENTIFIER, VERSION};

use crate::config::{check_size, resolve_sweep, write_text, RunConfig};
use crate::data::{sidecar_path, SweepMetadata};
use crate::error::{config, CliError, CliResult};

pub fn run(mut cfg: RunConfig) -> CliResult<()> {
    let model_cfg = cfg.model()?.clone();
    check_size(model_cfg.n())?;
    let (kind, fixed_value, grid) = resolve_sweep(&mut cfg)?;
    let out = cfg.out.clone().ok_or_else(|| config("missing field `out`: pass --out PATH"))?;
    let threads = cfg.threads();
    cfg.threads = Some(threads);
    cfg.norm = Some(cfg.norm());

    let model = model_cfg.build()?;
    let evolver = Evolver::new(&model)?;
    let coeffs = coefficients(&evolver, cfg.norm())?;
    let spec = SweepSpec { kind, fixed_value, grid, orders: cfg.orders.clone().unwrap_or_default() };
    let records = run_sweep(&evolver, &coeffs, &spec, model_cfg.seed(), threads)?;

    let file = File::create(&out).map_err(|e| CliError::io(&out, e))?;
    write_records(BufWriter::new(file), &records)?;

    let flagged = records.iter().filter(|r| r.flagged()).count();
    if flagged > 0 {
        eprintln!("warning: {flagged} records exceed the unitarity drift limit and are flagged");
    }
    let meta = SweepMetadata {
        version: VERSION.to_string(),
        rng: RNG_IDENTIFIER.to_string(),
        model: model_cfg,
        label: model.label.clone(),
        disorder: model.disorder.clone(),
        norm: cfg.norm(),
        coefficients: coeffs,
        kind,
        fixed_value,
        grid: spec.grid.clone(),
        orders: spec.orders.clone(),
        records: records.len(),
        config: cfg,
    };
    let side = sidecar_path(&out);
    let json = serde_json::to_string_pretty(&meta).map_err(|e| CliError::io(&side, e))?;
    write_text(&side, &(json + "\n"))?;
    eprintln!("wrote {} records to {} (metadata in {})", records.len(), out.display(), side.display());
    Ok(())
}
