//! Log-log SVG chart of one sweep: empirical error against every bound curve.

use std::fmt::Write as _;

use trotter_core::experiments::{semi_empirical, ErrorRecord, SweepKind};
use trotter_core::{BoundCoefficients, Order};

pub const WIDTH: f64 = 760.0;
pub const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;

pub struct Series {
    pub name: &'static str,
    pub label: String,
    pub color: &'static str,
    pub dash: Option<&'static str>,
    pub points: Vec<(f64, f64)>,
}

/// Which sweep variable goes on the x axis.
pub fn infer_kind(records: &[ErrorRecord]) -> SweepKind {
    let first = match records.first() {
        Some(r) => r,
        None => return SweepKind::FixedR,
    };
    if records.iter().all(|r| r.r == first.r) {
        SweepKind::FixedR
    } else if records.iter().all(|r| r.t == first.t) {
        SweepKind::FixedT
    } else {
        SweepKind::FixedDt
    }
}

fn x_of(kind: SweepKind, r: &ErrorRecord) -> f64 {
    match kind {
        SweepKind::FixedT => r.r as f64,
        _ => r.t,
    }
}

/// The standard overlay: empirical error for each order present, the main
/// bound, the first-order bound, its two constituent terms, and the fitted
/// curve when `fit` gives `(alpha, beta)`.
pub fn standard_series(
    records: &[ErrorRecord],
    kind: SweepKind,
    coeffs: &BoundCoefficients,
    fit: Option<(f64, f64)>,
) -> Vec<Series> {
    let mut first: Vec<&ErrorRecord> = records.iter().filter(|r| r.order == Order::First).collect();
    first.sort_by(|a, b| x_of(kind, a).total_cmp(&x_of(kind, b)));
    let curve = |f: &dyn Fn(&ErrorRecord) -> f64| first.iter().map(|r| (x_of(kind, r), f(r))).collect::<Vec<_>>();

    let mut out = vec![Series {
        name: "empirical",
        label: "empirical PF1 error".into(),
        color: "#111111",
        dash: None,
        points: curve(&|r| r.empirical),
    }];
    for (order, name, label, color) in [
        (Order::Second, "empirical_pf2", "empirical PF2 error", "#7f7f7f"),
        (Order::SecondMirrored, "empirical_pf2m", "empirical mirrored PF2", "#b0b0b0"),
    ] {
        let mut pts: Vec<(f64, f64)> =
            records.iter().filter(|r| r.order == order).map(|r| (x_of(kind, r), r.empirical)).collect();
        if !pts.is_empty() {
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            out.push(Series { name, label: label.into(), color, dash: None, points: pts });
        }
    }
    out.push(Series { name: "bound_main", label: "main bound".into(), color: "#1f77b4", dash: None, points: curve(&|r| r.bound_main) });
    out.push(Series { name: "bound_pf1", label: "C2 t^2/r".into(), color: "#d62728", dash: Some("6 4"), points: curve(&|r| r.bound_pf1) });
    out.push(Series { name: "term_boundary", label: "C1 t/r".into(), color: "#2ca02c", dash: Some("2 3"), points: curve(&|r| r.term_boundary) });
    out.push(Series { name: "term_bulk", label: "C3 t^3/r^2".into(), color: "#ff7f0e", dash: Some("2 3"), points: curve(&|r| r.term_bulk) });
    if let Some((alpha, beta)) = fit {
        out.push(Series {
            name: "fit",
            label: format!("fit a={alpha:.3} b={beta:.3}"),
            color: "#9467bd",
            dash: Some("8 3 2 3"),
            points: curve(&|r| semi_empirical(coeffs, r.t, r.r, alpha, beta)),
        });
    }
    out
}

fn decade_range(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let (lo, hi) = values
        .filter(|v| v.is_finite() && *v > 0.0)
        .map(f64::log10)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return None;
    }
    let (lo, hi) = (lo.floor(), hi.ceil());
    Some(if hi > lo { (lo, hi) } else { (lo, lo + 1.0) })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render(title: &str, x_label: &str, series: &[Series]) -> String {
    let xs = decade_range(series.iter().flat_map(|s| s.points.iter().filter(|p| p.1 > 0.0).map(|p| p.0)));
    let ys = decade_range(series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let (xlo, xhi) = xs.unwrap_or((0.0, 1.0));
    let (ylo, yhi) = ys.unwrap_or((0.0, 1.0));
    let (w, h) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let px = |x: f64| LEFT + (x.log10() - xlo) / (xhi - xlo) * w;
    let py = |y: f64| TOP + h - (y.log10() - ylo) / (yhi - ylo) * h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, LEFT + w / 2.0, escape(title));
    let _ = writeln!(
        s,
        r#"<g class="plot" data-x-log="{xlo} {xhi}" data-y-log="{ylo} {yhi}" data-box="{LEFT} {TOP} {w} {h}">"#
    );
    let _ = writeln!(s, r##"<rect x="{LEFT}" y="{TOP}" width="{w}" height="{h}" fill="none" stroke="#333"/>"##);
    for k in xlo as i32..=xhi as i32 {
        let x = px(10f64.powi(k));
        let _ = writeln!(s, r##"<line class="grid" x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#ddd"/>"##, TOP + h);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">1e{k}</text>"#, TOP + h + 16.0);
    }
    for k in ylo as i32..=yhi as i32 {
        let y = py(10f64.powi(k));
        let _ = writeln!(s, r##"<line class="grid" x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/>"##, LEFT + w);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e{k}</text>"#, LEFT - 6.0, y + 4.0);
    }
    for series in series {
        let pts: Vec<String> = series
            .points
            .iter()
            .filter(|p| p.0 > 0.0 && p.1 > 0.0 && p.1.is_finite())
            .map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y)))
            .collect();
        if pts.is_empty() {
            continue;
        }
        let dash = series.dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        let _ = writeln!(
            s,
            r#"<polyline class="series" data-series="{}" fill="none" stroke="{}" stroke-width="1.6"{dash} points="{}"/>"#,
            series.name,
            series.color,
            pts.join(" ")
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + w / 2.0,
        HEIGHT - 14.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(18 {:.2}) rotate(-90)" text-anchor="middle">error</text>"#,
        TOP + h / 2.0
    );
    let mut ly = TOP + 10.0;
    for series in series {
        let lx = LEFT + w + 14.0;
        let dash = series.dash.map(|d| format!(r#" stroke-dasharray="{d}""#)).unwrap_or_default();
        let _ = writeln!(
            s,
            r#"<g class="legend"><line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"{dash}/><text x="{}" y="{}">{}</text></g>"#,
            lx + 24.0,
            series.color,
            lx + 30.0,
            ly + 4.0,
            escape(&series.label)
        );
        ly += 18.0;
    }
    s.push_str("</svg>\n");
    s
}
