//! CSV and text emitters. Every CSV starts with a `#` line naming the
//! table and its schema version, then the column header.
//!
//! | table    | columns |
//! |----------|---------|
//! | `lie`    | fixture, unimodular, amenable, lambda0, cheeger, method |
//! | `quotient` | fixture, ideal, ideal_dim, h_norm_sq, trace_ad_h, lambda0_quotient, lambda0_subgroup, lower_bound, equality_expected |
//! | `warped` | fixture, grid_n, mode, lambda0, residual, slack |
//! | `tail`   | fixture, grid_n, cutoff, lambda0, residual |
//!
//! Missing values are empty fields. Floats use the shortest representation
//! that parses back to the same value.

use std::fmt::Write as _;

use crate::group::{GroupSpectrumReport, QuotientBoundReport};
use crate::lie::ClassificationReport;
use crate::warped::{InequalityReport, TailPoint};

pub const SCHEMA_VERSION: u32 = 1;

pub const LIE_COLUMNS: &[&str] = &["fixture", "unimodular", "amenable", "lambda0", "cheeger", "method"];
pub const QUOTIENT_COLUMNS: &[&str] = &[
    "fixture",
    "ideal",
    "ideal_dim",
    "h_norm_sq",
    "trace_ad_h",
    "lambda0_quotient",
    "lambda0_subgroup",
    "lower_bound",
    "equality_expected",
];
pub const WARPED_COLUMNS: &[&str] = &["fixture", "grid_n", "mode", "lambda0", "residual", "slack"];
pub const TAIL_COLUMNS: &[&str] = &["fixture", "grid_n", "cutoff", "lambda0", "residual"];

fn header(table: &str, columns: &[&str]) -> String {
    format!("# specsub {table} v{SCHEMA_VERSION}\n{}\n", columns.join(","))
}

/// Shortest round-trip form; exponent notation outside `[1e-4, 1e15)`.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// Quotes fields containing separators.
fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieRow {
    pub fixture: String,
    pub classification: ClassificationReport,
    pub spectrum: GroupSpectrumReport,
}

pub fn lie_csv(rows: &[LieRow]) -> String {
    let mut s = header("lie", LIE_COLUMNS);
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{}",
            field(&r.fixture),
            r.classification.unimodular,
            r.classification.amenable,
            opt(r.spectrum.lambda0),
            num(r.spectrum.cheeger),
            r.spectrum.method.as_str()
        )
        .unwrap();
    }
    s
}

pub fn lie_text(rows: &[LieRow], labels: Option<&[String]>) -> String {
    let mut s = String::new();
    for r in rows {
        let c = &r.classification;
        writeln!(s, "fixture      {}", r.fixture).unwrap();
        writeln!(s, "unimodular   {}", c.unimodular).unwrap();
        writeln!(s, "solvable     {}", c.solvable).unwrap();
        writeln!(s, "nilpotent    {}", c.nilpotent).unwrap();
        writeln!(s, "semisimple   {}", c.semisimple).unwrap();
        writeln!(s, "amenable     {} ({:?})", c.amenable, c.amenability_path).unwrap();
        writeln!(s, "radical dim  {}", c.radical.dim()).unwrap();
        writeln!(s, "derived      {:?}", c.derived_series_lengths).unwrap();
        writeln!(s, "lower cent.  {:?}", c.lower_central_lengths).unwrap();
        match r.spectrum.lambda0 {
            Some(l) => writeln!(s, "lambda0      {}", num(l)).unwrap(),
            None => writeln!(s, "lambda0      >= {} (Cheeger bound)", num(0.25 * r.spectrum.cheeger.powi(2))).unwrap(),
        }
        writeln!(s, "cheeger      {}", num(r.spectrum.cheeger)).unwrap();
        writeln!(s, "method       {}", r.spectrum.method.as_str()).unwrap();
        if let Some(m) = &r.spectrum.maximizer {
            writeln!(s, "maximizer    {}", vector(m.as_slice(), labels)).unwrap();
        }
        if c.numerically_marginal {
            writeln!(s, "warning      a rank decision fell inside the marginal band").unwrap();
        }
        s.push('\n');
    }
    s
}

/// `a·X + b·Y` with labels, or a plain list without.
pub fn vector(v: &[f64], labels: Option<&[String]>) -> String {
    match labels {
        Some(l) if l.len() == v.len() => {
            // Drop rounding noise relative to the largest entry.
            let cut = 1e-12 * v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            let terms: Vec<String> = v
                .iter()
                .zip(l)
                .filter(|(x, _)| x.abs() > cut)
                .map(|(x, name)| format!("{}·{name}", num(*x)))
                .collect();
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            }
        }
        _ => format!("{v:?}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRow {
    pub fixture: String,
    pub ideal: String,
    pub report: QuotientBoundReport,
}

pub fn quotient_csv(rows: &[QuotientRow]) -> String {
    let mut s = header("quotient", QUOTIENT_COLUMNS);
    for r in rows {
        let q = &r.report;
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            field(&r.fixture),
            field(&r.ideal),
            q.ideal.dim(),
            num(q.mean_curvature_norm_sq),
            num(q.trace_ad_h),
            opt(q.lambda0_quotient),
            opt(q.lambda0_subgroup),
            num(q.lower_bound),
            q.equality_expected
        )
        .unwrap();
    }
    s
}

pub fn quotient_text(rows: &[QuotientRow], labels: Option<&[String]>) -> String {
    let mut s = String::new();
    for r in rows {
        let q = &r.report;
        writeln!(s, "fixture      {}  ideal {} (dim {})", r.fixture, r.ideal, q.ideal.dim()).unwrap();
        writeln!(s, "H            {}", vector(q.mean_curvature.as_slice(), labels)).unwrap();
        writeln!(s, "|H|^2        {}", num(q.mean_curvature_norm_sq)).unwrap();
        writeln!(s, "tr ad H      {}", num(q.trace_ad_h)).unwrap();
        writeln!(s, "lambda0(G/N) {}", opt(q.lambda0_quotient)).unwrap();
        writeln!(s, "lambda0(N)   {}", opt(q.lambda0_subgroup)).unwrap();
        writeln!(s, "bound        {}{}", num(q.lower_bound), if q.partial { " (partial)" } else { "" }).unwrap();
        writeln!(s, "equality     {}", q.equality_expected).unwrap();
        s.push('\n');
    }
    s
}

/// One `S` row, then one row per mode with slack `λ₀(L_m) − rhs`.
pub fn warped_csv(rows: &[(String, InequalityReport)]) -> String {
    let mut s = header("warped", WARPED_COLUMNS);
    for (name, r) in rows {
        let name = field(name);
        writeln!(s, "{name},{},S,{},{},", r.grid_n, num(r.lambda0_s), num(r.residual_s)).unwrap();
        for (m, e) in r.modes.iter().enumerate() {
            writeln!(s, "{name},{},{m},{},{},{}", r.grid_n, num(e.lambda0), num(e.residual), num(e.lambda0 - r.rhs)).unwrap();
        }
    }
    s
}

pub fn warped_text(rows: &[(String, InequalityReport)]) -> String {
    let mut s = String::new();
    for (name, r) in rows {
        writeln!(s, "fixture      {name}  grid {}", r.grid_n).unwrap();
        writeln!(s, "lambda0(S)   {}", num(r.lambda0_s)).unwrap();
        for (m, e) in r.modes.iter().enumerate() {
            writeln!(s, "lambda0(L{m:<2}) {}", num(e.lambda0)).unwrap();
        }
        writeln!(s, "lambda0(M2)  {} (mode {})", num(r.lambda0_total), r.argmin_mode).unwrap();
        writeln!(s, "rhs          {} (fiber term {})", num(r.rhs), num(r.fiber_term)).unwrap();
        writeln!(s, "slack        {}", num(r.slack)).unwrap();
        writeln!(s, "holds        {}", r.holds).unwrap();
        s.push('\n');
    }
    s
}

pub fn tail_csv(rows: &[(String, usize, Vec<TailPoint>)]) -> String {
    let mut s = header("tail", TAIL_COLUMNS);
    for (name, grid_n, points) in rows {
        for p in points {
            writeln!(s, "{},{grid_n},{},{},{}", field(name), num(p.cutoff), num(p.lambda0), num(p.residual)).unwrap();
        }
    }
    s
}

pub fn tail_text(rows: &[(String, usize, Vec<TailPoint>)]) -> String {
    let mut s = String::new();
    for (name, grid_n, points) in rows {
        writeln!(s, "fixture      {name}  grid {grid_n}").unwrap();
        writeln!(s, "{:>14}  {:>20}  {:>6}", "cutoff", "lambda0", "nodes").unwrap();
        for p in points {
            writeln!(s, "{:>14.6}  {:>20.12}  {:>6}", p.cutoff, p.lambda0, p.nodes).unwrap();
        }
        s.push('\n');
    }
    s
}
