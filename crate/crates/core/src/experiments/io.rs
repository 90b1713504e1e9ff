//! CSV encoding of sweep records.

use std::io::{Read, Write};

use super::sweep::ErrorRecord;
use crate::error::{input, Result};

pub const CSV_HEADER: [&str; 13] = [
    "n",
    "seed",
    "t",
    "r",
    "dt",
    "order",
    "empirical",
    "bound_pf1",
    "bound_main",
    "term_boundary",
    "term_bulk",
    "bound_pf2",
    "unitarity_drift",
];

/// Shortest decimal that parses back to the same `f64`; exponent notation
/// outside `[1e-4, 1e16)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn write_records<W: Write>(w: W, records: &[ErrorRecord]) -> Result<()> {
    let io = |e: csv::Error| input(format!("writing CSV: {e}"));
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    out.write_record(CSV_HEADER).map_err(io)?;
    for r in records {
        out.write_record([
            r.n.to_string(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            format_float(r.t),
            r.r.to_string(),
            format_float(r.dt),
            r.order.label().to_string(),
            format_float(r.empirical),
            format_float(r.bound_pf1),
            format_float(r.bound_main),
            format_float(r.term_boundary),
            format_float(r.term_bulk),
            format_float(r.bound_pf2),
            format_float(r.unitarity_drift),
        ])
        .map_err(io)?;
    }
    out.flush().map_err(|e| input(format!("writing CSV: {e}")))?;
    Ok(())
}

pub fn read_records<R: Read>(r: R) -> Result<Vec<ErrorRecord>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let header = rdr.headers().map_err(|e| input(format!("reading CSV header: {e}")))?;
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(input(format!("unexpected CSV header: {:?}", header.iter().collect::<Vec<_>>())));
    }
    let mut out = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| input(format!("CSV row {}: {e}", line + 2)))?;
        let field = |k: usize| -> Result<&str> {
            row.get(k).ok_or_else(|| input(format!("CSV row {} is missing {}", line + 2, CSV_HEADER[k])))
        };
        let num = |k: usize| -> Result<f64> {
            field(k)?
                .parse::<f64>()
                .map_err(|_| input(format!("CSV row {}: bad {} value", line + 2, CSV_HEADER[k])))
        };
        let int = |k: usize| -> Result<u64> {
            field(k)?
                .parse::<u64>()
                .map_err(|_| input(format!("CSV row {}: bad {} value", line + 2, CSV_HEADER[k])))
        };
        let seed = match field(1)? {
            "" => None,
            s => Some(s.parse::<u64>().map_err(|_| input(format!("CSV row {}: bad seed", line + 2)))?),
        };
        out.push(ErrorRecord {
            n: int(0)? as usize,
            seed,
            t: num(2)?,
            r: int(3)?,
            dt: num(4)?,
            order: field(5)?.parse()?,
            empirical: num(6)?,
            bound_pf1: num(7)?,
            bound_main: num(8)?,
            term_boundary: num(9)?,
            term_bulk: num(10)?,
            bound_pf2: num(11)?,
            unitarity_drift: num(12)?,
        });
    }
    Ok(out)
}
