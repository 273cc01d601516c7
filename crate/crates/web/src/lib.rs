//! WebAssembly bindings behind `www/index.html`.
//!
//! Each operation has a plain Rust version returning `Result<String, String>`
//! (JSON on success), so it can be tested natively, and a `#[wasm_bindgen]`
//! wrapper that turns the error into a JavaScript exception.

use fano_core::lattice::LatticeVector;
use fano_core::pencil::{discriminant_form, pencil_stability, QuadricPencil};
use fano_core::polytope::{dual, make_fano};
use fano_core::rational::{parse_rational, Q};
use fano_core::report::{analyze, obstruct_xd, obstruction_line};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn q_str(q: &Q) -> String {
    q.to_string()
}

/// Parses `"1 0; 0 1; -1 -1"` (or commas) into 2D points.
fn parse_points(text: &str) -> Result<Vec<LatticeVector>, String> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pt| {
            let c: Vec<i64> = pt
                .split(|ch: char| ch == ',' || ch.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<i64>().map_err(|_| format!("not an integer: {s}")))
                .collect::<Result<_, _>>()?;
            if c.len() != 2 {
                return Err(format!("point '{pt}' needs two coordinates"));
            }
            Ok(LatticeVector(c))
        })
        .collect()
}

/// Vertices, dual vertices, barycenter and the full report of a polygon.
pub fn analyze_polygon_json(text: &str) -> Result<String, String> {
    let pts = parse_points(text)?;
    let p = make_fano(&pts).map_err(|e| e.to_string())?;
    if p.dim() != 2 {
        return Err("enter points in the plane".into());
    }
    let d = dual(&p);
    let report = analyze("browser", &p).map_err(|e| e.to_string())?;
    let s = report.surface.as_ref().expect("surface report");
    let out = json!({
        "vertices": p.vertices(),
        "dual": d.vertices().iter().map(|v| v.0.iter().map(q_str).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "barycenter": s.summary.barycenter.0.iter().map(q_str).collect::<Vec<_>>(),
        "degree": q_str(&report.degree),
        "index": s.summary.gorenstein_index,
        "picard_rank": s.summary.picard_rank,
        "ke": s.ke.ke_toric,
        "singularities": s.singularities.describe(),
        "smoothable": s.smoothable,
        "bishop": s.bishop.as_str(),
        "report": report,
    });
    Ok(out.to_string())
}

/// Verdict for the diagonal pencil `(I, diag(values))`, values like `"0, 1/2, 1/2, 3, 4"`.
pub fn pencil_verdict_json(values: &str) -> Result<String, String> {
    let vals: Vec<Q> = values
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| parse_rational(s).ok_or_else(|| format!("not a rational: {s}")))
        .collect::<Result<_, _>>()?;
    let p = QuadricPencil::diagonal(&vals).map_err(|e| e.to_string())?;
    let f = discriminant_form(&p);
    let v = pencil_stability(&p);
    Ok(json!({
        "discriminant": f.to_string(),
        "multiplicities": f.multiplicity_profile().root_multiplicities(),
        "stability": v.stability.as_str(),
        "witness": v.witness,
    })
    .to_string())
}

/// Conical obstruction line for `X_d`.
pub fn obstruct_xd_line(d: i64) -> Result<String, String> {
    let (deg, t) = obstruct_xd(d).map_err(|e| e.to_string())?;
    Ok(obstruction_line(&deg, &t))
}

#[wasm_bindgen]
pub fn analyze_polygon(text: &str) -> Result<String, JsError> {
    analyze_polygon_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pencil_verdict(values: &str) -> Result<String, JsError> {
    pencil_verdict_json(values).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn obstruct_threefold(d: i32) -> Result<String, JsError> {
    obstruct_xd_line(d as i64).map_err(|e| JsError::new(&e))
}
