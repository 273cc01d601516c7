//! Per-variety analysis reports, their text rendering, and batch analysis of
//! JSON-lines polytope databases.

use crate::classify::read_surface_line;
use crate::error::{FanoError, Result};
use crate::ke::{
    bishop_gromov_surface, conical_lhs, conical_obstruction, ke_toric_test, obstruction_rhs,
    orbifold_ratio, KEVerdict, ObstructionInput, ObstructionVerdict,
};
use crate::lattice::LatticeVector;
use crate::polytope::{degree, max_cone_order, normal_form, summarize, xd_threefold, FanoPolytope, PolytopeSummary};
use crate::rational::{serde_q, Q};
use crate::singularities::{classify_edges, mumford_instability, SingularityReport};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub normal_form: FanoPolytope,
    pub summary: PolytopeSummary,
    pub singularities: SingularityReport,
    pub ke: KEVerdict,
    pub smoothable: bool,
    pub bishop: ObstructionVerdict,
    pub mumford_unstable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldReport {
    pub max_cone_order: i64,
    #[serde(with = "serde_q")]
    pub volume_ratio: Q,
    #[serde(with = "serde_q")]
    pub conical_lhs: Q,
    #[serde(with = "serde_q")]
    pub conical_rhs: Q,
    pub conical: ObstructionVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub dim: usize,
    pub vertices: Vec<LatticeVector>,
    #[serde(with = "serde_q")]
    pub degree: Q,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threefold: Option<ThreefoldReport>,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// Conical obstruction at the worst orbifold point of a 3D Fano polytope.
pub fn threefold_report(p: &FanoPolytope) -> Result<ThreefoldReport> {
    let order = max_cone_order(p)?;
    let input = ObstructionInput {
        n: 3,
        degree: degree(p),
        volume_ratio: orbifold_ratio(order),
        gorenstein_index: None,
    };
    Ok(ThreefoldReport {
        max_cone_order: order,
        conical_lhs: conical_lhs(&input),
        conical_rhs: obstruction_rhs(3)?,
        conical: conical_obstruction(&input)?,
        volume_ratio: input.volume_ratio,
    })
}

pub fn analyze(input: &str, p: &FanoPolytope) -> Result<AnalysisReport> {
    let deg = degree(p);
    let mut report = AnalysisReport {
        input: input.to_string(),
        dim: p.dim(),
        vertices: p.vertices().to_vec(),
        degree: deg.clone(),
        surface: None,
        threefold: None,
        notes: Vec::new(),
    };
    match p.dim() {
        2 => {
            let singularities = classify_edges(p)?;
            let ke = ke_toric_test(p);
            report.notes.extend(ke.notes.iter().cloned());
            report.surface = Some(SurfaceReport {
                normal_form: normal_form(p)?,
                summary: summarize(p),
                smoothable: singularities.all_t(),
                bishop: bishop_gromov_surface(singularities.gamma_max, &deg)?,
                mumford_unstable: mumford_instability(&singularities, 2),
                singularities,
                ke,
            });
        }
        3 => report.threefold = Some(threefold_report(p)?),
        d => return Err(FanoError::UnsupportedDimension(d)),
    }
    Ok(report)
}

/// Reads a polytope file `{"dim": n, "vertices": [...]}`.
pub fn read_polytope(json: &str) -> std::result::Result<FanoPolytope, serde_json::Error> {
    serde_json::from_str(json)
}

fn verdict_sign(v: ObstructionVerdict) -> &'static str {
    match v {
        ObstructionVerdict::Consistent => "<",
        ObstructionVerdict::Boundary => "=",
        ObstructionVerdict::Obstructed => ">",
    }
}

/// `degree 512/5, LHS 512 > 100: obstructed`.
pub fn obstruction_line(deg: &Q, t: &ThreefoldReport) -> String {
    format!(
        "degree {deg}, LHS {} {} {}: {}",
        t.conical_lhs,
        verdict_sign(t.conical),
        t.conical_rhs,
        t.conical
    )
}

/// Conical obstruction for the simplex `X_d`.
pub fn obstruct_xd(d: i64) -> Result<(Q, ThreefoldReport)> {
    let p = xd_threefold(d)?;
    Ok((degree(&p), threefold_report(&p)?))
}

/// Plain-text rendering; rationals appear as `p/q`.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let verts: Vec<String> = r.vertices.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "input:       {}", r.input);
    let _ = writeln!(out, "vertices:    {}", verts.join(" "));
    let _ = writeln!(out, "degree:      {}", r.degree);
    if let Some(s) = &r.surface {
        let rho = s.summary.picard_rank.map_or("-".to_string(), |x| x.to_string());
        let disc = s.singularities.min_discrepancy.as_ref().map_or("-".to_string(), |d| d.to_string());
        let _ = writeln!(out, "picard rank: {rho}");
        let _ = writeln!(out, "index:       {}", s.summary.gorenstein_index);
        let _ = writeln!(out, "barycenter:  {}", s.summary.barycenter);
        let _ = writeln!(out, "KE:          {}", s.ke.ke_toric);
        let _ = writeln!(out, "singular:    {}", s.singularities.describe());
        let _ = writeln!(out, "discrepancy: {disc}");
        let _ = writeln!(out, "smoothable:  {}", s.smoothable);
        let _ = writeln!(out, "bishop:      {}", s.bishop);
        let _ = writeln!(out, "mumford:     {}", if s.mumford_unstable { "unstable" } else { "-" });
        let _ = writeln!(out, "edges:");
        for e in &s.singularities.entries {
            let w = e.t_witness.map_or("-".to_string(), |w| format!("({},{},{})", w.d, w.n, w.a));
            let _ = writeln!(out, "  {:>2}  {:<12} T {:<10} mult {}", e.edge, e.kind.to_string(), w, e.multiplicity);
        }
    }
    if let Some(t) = &r.threefold {
        let _ = writeln!(out, "max order:   {}", t.max_cone_order);
        let _ = writeln!(out, "conical:     {}", obstruction_line(&r.degree, t));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedLine {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchOutput {
    pub reports: Vec<AnalysisReport>,
    pub skipped: Vec<SkippedLine>,
}

/// Analyzes every nonblank line; bad lines are logged and counted, not fatal.
/// Reports come back in input order.
pub fn analyze_batch(text: &str) -> BatchOutput {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let results: Vec<(usize, Result<AnalysisReport>)> = lines
        .par_iter()
        .map(|&(n, l)| (n, read_surface_line(l).and_then(|p| analyze(&format!("line {n}"), &p))))
        .collect();
    let mut out = BatchOutput::default();
    for (n, r) in results {
        match r {
            Ok(rep) => out.reports.push(rep),
            Err(e) => {
                log::warn!("skipping line {n}: {e}");
                out.skipped.push(SkippedLine { line: n, reason: e.to_string() });
            }
        }
    }
    out
}
