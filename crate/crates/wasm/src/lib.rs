//! wasm-bindgen front end for the demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string.
//! Failures come back as `{"error": "..."}` so the page never has to catch
//! an exception, and the same functions run natively under `cargo test`.

use serde_json::{json, Value};
use specsub_core::fixtures::{lie_fixture, parse_lie, split_name, warp_fixture};
use specsub_core::group::{group_spectrum, quotient_bound, FactorSpectra};
use specsub_core::lie::{classify, derived_subalgebra, Ideal, MetricLieAlgebra};
use specsub_core::warped::{lambda0_ess_tail, lowest_eigenvalue, verify_theorem_1, Base, WarpGeometry};
use specsub_core::Tolerances;
use wasm_bindgen::prelude::*;

/// Largest grid the page may request; keeps a click under a second.
pub const MAX_GRID: usize = 4096;

fn finish(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn check_grid(grid: usize) -> Result<(), String> {
    if !(16..=MAX_GRID).contains(&grid) {
        return Err(format!("grid must be between 16 and {MAX_GRID}, got {grid}"));
    }
    Ok(())
}

fn vec_json(v: impl IntoIterator<Item = f64>) -> Value {
    // JSON has no NaN; the page treats null as a gap.
    Value::Array(v.into_iter().map(|x| if x.is_finite() { json!(x) } else { Value::Null }).collect())
}

/// Catalog name such as `affine2:4`, or fixture text starting with `dim`.
fn resolve_algebra(input: &str, tols: &Tolerances) -> Result<(String, MetricLieAlgebra, Vec<(String, Ideal)>), String> {
    let trimmed = input.trim();
    if trimmed.lines().count() > 1 || trimmed.starts_with("dim") {
        let alg = parse_lie(trimmed, tols).map_err(|e| e.to_string())?;
        let full = Ideal::full(&alg);
        let mut ideals = Vec::new();
        if let Ok(d) = derived_subalgebra(&alg, &full, tols) {
            if !d.is_zero() && d.dim() < alg.dim() {
                ideals.push(("[g,g]".to_string(), d));
            }
        }
        return Ok(("custom".into(), alg, ideals));
    }
    let (name, param) = split_name(trimmed).map_err(|e| e.to_string())?;
    let f = lie_fixture(name, param).map_err(|e| e.to_string())?;
    let ideals = f
        .ideals
        .iter()
        .filter_map(|(n, gens)| Ideal::from_vectors(&f.algebra, gens, tols).ok().map(|i| (n.clone(), i)))
        .collect();
    Ok((f.name, f.algebra, ideals))
}

pub fn analyze_algebra_json(input: &str) -> Result<Value, String> {
    let tols = Tolerances::default();
    let (name, alg, ideals) = resolve_algebra(input, &tols)?;
    let c = classify(&alg, &tols).map_err(|e| e.to_string())?;
    let g = group_spectrum(&alg, &tols).map_err(|e| e.to_string())?;
    let mut bounds = Vec::new();
    for (label, ideal) in &ideals {
        let q = quotient_bound(&alg, ideal, FactorSpectra::default(), &tols).map_err(|e| e.to_string())?;
        bounds.push(json!({
            "ideal": label,
            "dim": ideal.dim(),
            "mean_curvature_norm_sq": q.mean_curvature_norm_sq,
            "lower_bound": q.lower_bound,
            "equality_expected": q.equality_expected,
        }));
    }
    Ok(json!({
        "name": name,
        "dim": alg.dim(),
        "unimodular": c.unimodular,
        "solvable": c.solvable,
        "nilpotent": c.nilpotent,
        "semisimple": c.semisimple,
        "amenable": c.amenable,
        "derived_series": c.derived_series_lengths,
        "lower_central_series": c.lower_central_lengths,
        "marginal": c.numerically_marginal,
        "lambda0": g.lambda0,
        "cheeger": g.cheeger,
        "method": g.method.as_str(),
        "maximizer": g.maximizer.map(|m| vec_json(m.iter().copied())),
        "quotient_bounds": bounds,
    }))
}

pub fn warped_profile_json(fixture: &str, grid: usize) -> Result<Value, String> {
    check_grid(grid)?;
    let tols = Tolerances::default();
    let (name, param) = split_name(fixture.trim()).map_err(|e| e.to_string())?;
    let spec = warp_fixture(name, param).map_err(|e| e.to_string())?.spec;
    let geo = WarpGeometry::new(&spec, grid).map_err(|e| e.to_string())?;
    let s = specsub_core::warped::build_schrodinger(&spec, grid).map_err(|e| e.to_string())?;
    let ground = lowest_eigenvalue(&s, &tols).map_err(|e| e.to_string())?;
    let report = verify_theorem_1(&spec, grid, &tols).map_err(|e| e.to_string())?;
    Ok(json!({
        "fixture": fixture.trim(),
        "grid": grid,
        "nodes": vec_json(geo.grid.nodes.iter().copied()),
        "psi": vec_json(geo.psi.iter().copied()),
        "ground_state": vec_json(ground.eigvec.iter().copied()),
        "lambda0_s": report.lambda0_s,
        "modes": vec_json(report.modes.iter().map(|m| m.lambda0)),
        "lambda0_total": report.lambda0_total,
        "rhs": report.rhs,
        "slack": report.slack,
        "holds": report.holds,
    }))
}

pub fn tail_curve_json(fixture: &str, grid: usize, points: usize) -> Result<Value, String> {
    check_grid(grid)?;
    if !(2..=64).contains(&points) {
        return Err(format!("points must be between 2 and 64, got {points}"));
    }
    let tols = Tolerances::default();
    let (name, param) = split_name(fixture.trim()).map_err(|e| e.to_string())?;
    let spec = warp_fixture(name, param).map_err(|e| e.to_string())?.spec;
    let (a, b) = match spec.base {
        Base::Interval { a, b, .. } => (a, b),
        Base::Circle { .. } => return Err("the tail needs an interval base".into()),
    };
    let cutoffs: Vec<f64> = (1..=points).map(|k| a + (b - a) * 0.9 * k as f64 / (points + 1) as f64).collect();
    let tail = lambda0_ess_tail(&spec, grid, &cutoffs, &tols).map_err(|e| e.to_string())?;
    Ok(json!({
        "fixture": fixture.trim(),
        "grid": grid,
        "cutoffs": vec_json(tail.iter().map(|p| p.cutoff)),
        "lambda0": vec_json(tail.iter().map(|p| p.lambda0)),
        "nodes": tail.iter().map(|p| p.nodes).collect::<Vec<_>>(),
    }))
}

/// Classification, `λ₀`, Cheeger constant and quotient bounds of a metric
/// Lie algebra given by catalog name or fixture text.
#[wasm_bindgen]
pub fn analyze_algebra(input: &str) -> String {
    finish(analyze_algebra_json(input))
}

/// Warp, ground state of `S` and the mode spectrum of a warped fixture.
#[wasm_bindgen]
pub fn warped_profile(fixture: &str, grid: usize) -> String {
    finish(warped_profile_json(fixture, grid))
}

/// `λ₀` of the tail `(c, b)` for `points` cutoffs across an interval base.
#[wasm_bindgen]
pub fn tail_curve(fixture: &str, grid: usize, points: usize) -> String {
    finish(tail_curve_json(fixture, grid, points))
}
