//! `fano`: analyze toric Fano polytopes, rerun the classifications and decide
//! GIT stability of quadric pencils.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 validation failure,
//! 3 malformed JSON.

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use fano_core::classify::{
    classify_rank1, enumerate_ldp, verify_classification_table, verify_y_family,
    ClassifiedSurface, EnumerationConfig,
};
use fano_core::pencil::{pencil_report, PencilFile};
use fano_core::report::{analyze, analyze_batch, obstruct_xd, obstruction_line, render_text};
use fano_core::{FanoError, FanoPolytope};
use serde::Serialize;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fano", version, about = "Exact toric Fano polytope and quadric pencil analysis")]
struct Cli {
    #[command(flatten)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Human-readable output (the default).
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a polytope file {"dim": n, "vertices": [...]}.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smoothable KE toric del Pezzo surfaces of Picard rank one.
    ClassifyRank1,
    /// All Fano polygons of bounded Gorenstein index, up to unimodular equivalence.
    Enumerate {
        #[arg(long)]
        max_index: u64,
        /// Coordinate search radius; defaults to the floor for the index.
        #[arg(long = "box")]
        coordinate_box: Option<i64>,
        /// JSON-lines file receiving one classified surface per class.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_stabilization_check: bool,
    },
    /// Check the seven-entry table and the Y_n family.
    VerifyTable {
        #[arg(long, default_value_t = 20)]
        y_max: i64,
    },
    /// GIT verdict for a pencil file {"size": k, "A": [[...]], "B": [[...]]}.
    Pencil { path: PathBuf },
    /// Conical obstruction for the threefold X_d.
    Obstruct3 {
        #[arg(long)]
        d: i64,
    },
    /// Analyze a JSON-lines polytope database ("-" reads stdin).
    Batch {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// The input text was not JSON at all.
#[derive(Debug)]
struct MalformedJson(serde_json::Error);

impl std::fmt::Display for MalformedJson {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "malformed JSON: {}", self.0)
    }
}

impl std::error::Error for MalformedJson {}

/// Well-formed JSON describing an invalid object.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(MalformedJson)?;
    serde_json::from_value(value).map_err(|e| Invalid(e.to_string()).into())
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn surface_line(c: &ClassifiedSurface) -> String {
    let verts: Vec<String> = c.polytope.vertices().iter().map(|v| v.to_string()).collect();
    format!(
        "degree {:<5} rho {}  index {}  {}  [{}]",
        c.summary.degree.to_string(),
        c.summary.picard_rank.map_or("-".into(), |r| r.to_string()),
        c.summary.gorenstein_index,
        c.singularities.describe(),
        verts.join(" ")
    )
}

fn run(cli: Cli) -> Result<()> {
    let json = cli.format.json;
    match cli.command {
        Command::Analyze { path, out } => {
            let p: FanoPolytope = parse_json(&read_input(&path)?)?;
            let r = analyze(&path.display().to_string(), &p)?;
            emit(out.as_deref(), &if json { to_json(&r)? } else { render_text(&r) })
        }
        Command::ClassifyRank1 => {
            let cs = classify_rank1()?;
            if json {
                return emit(None, &to_json(&cs)?);
            }
            let mut s = format!("{} classes\n", cs.len());
            for c in &cs {
                s += &surface_line(c);
                s.push('\n');
            }
            emit(None, &s)
        }
        Command::Enumerate { max_index, coordinate_box, out, no_stabilization_check } => {
            let mut cfg = EnumerationConfig::new(max_index)?;
            if let Some(b) = coordinate_box {
                cfg = cfg.with_box(b)?;
            }
            cfg.stabilization_check = !no_stabilization_check;
            let e = enumerate_ldp(&cfg)?;
            if let Some(path) = &out {
                let mut lines = String::new();
                for c in &e.classes {
                    lines += &serde_json::to_string(c)?;
                    lines.push('\n');
                }
                fs::write(path, lines).with_context(|| format!("writing {}", path.display()))?;
            }
            let bz = e.barycenter_zero().count();
            let kt: Vec<&ClassifiedSurface> = e.ke_smoothable().collect();
            if e.stabilized == Some(false) {
                eprintln!("warning: enlarging the box found new classes; the enumeration may be incomplete");
            }
            if json {
                #[derive(Serialize)]
                struct Summary<'a> {
                    max_index: u64,
                    coordinate_box: i64,
                    classes: usize,
                    barycenter_zero: usize,
                    ke_smoothable: usize,
                    stabilized: Option<bool>,
                    ke_smoothable_classes: Vec<&'a ClassifiedSurface>,
                }
                let s = Summary {
                    max_index,
                    coordinate_box: cfg.coordinate_box,
                    classes: e.classes.len(),
                    barycenter_zero: bz,
                    ke_smoothable: kt.len(),
                    stabilized: e.stabilized,
                    ke_smoothable_classes: kt,
                };
                return emit(None, &to_json(&s)?);
            }
            let mut s = format!("{} classes, {bz} barycenter-zero\n", e.classes.len());
            s += &format!("{} barycenter-zero with only T-singularities:\n", kt.len());
            for c in kt {
                s += &format!("  {}\n", surface_line(c));
            }
            emit(None, &s)
        }
        Command::VerifyTable { y_max } => {
            let rows = verify_classification_table()?;
            let ys = verify_y_family(y_max)?;
            if json {
                return emit(None, &to_json(&serde_json::json!({ "table": rows, "y_family": ys }))?);
            }
            let mut s = String::from("table: 7 entries verified\n");
            for r in &rows {
                s += &format!(
                    "  {:<14} degree {:<2} rho {}  index {}  {}\n",
                    r.name, r.degree.to_string(), r.picard_rank, r.gorenstein_index, r.singularities
                );
            }
            s += &format!("Y_n verified for n = 1..{y_max}\n");
            for y in &ys {
                s += &format!(
                    "  Y_{:<3} degree {:<5} discrepancy {:<6} {}{}\n",
                    y.n,
                    y.degree.to_string(),
                    y.min_discrepancy.to_string(),
                    y.singularities,
                    if y.mumford_unstable { "  Mumford-unstable" } else { "" }
                );
            }
            emit(None, &s)
        }
        Command::Pencil { path } => {
            let file: PencilFile = parse_json(&read_input(&path)?)?;
            let r = pencil_report(file)?;
            if json {
                return emit(None, &to_json(&r)?);
            }
            let mut s = String::new();
            if let Some(f) = &r.discriminant {
                s += &format!("discriminant: {f}\n");
            }
            if let Some(p) = &r.profile {
                let m: Vec<String> = p.root_multiplicities().iter().map(|m| m.to_string()).collect();
                s += &format!("multiplicities: {}\n", m.join(" "));
            }
            s += &format!("verdict: {} ({})\n", r.verdict.stability, r.verdict.witness);
            emit(None, &s)
        }
        Command::Obstruct3 { d } => {
            let (deg, t) = obstruct_xd(d)?;
            if json {
                return emit(None, &to_json(&serde_json::json!({ "d": d, "degree": deg.to_string(), "obstruction": t }))?);
            }
            emit(None, &format!("{}\n", obstruction_line(&deg, &t)))
        }
        Command::Batch { path, out } => {
            let b = analyze_batch(&read_input(&path)?);
            let mut s = String::new();
            for r in &b.reports {
                if json {
                    s += &serde_json::to_string(r)?;
                    s.push('\n');
                } else {
                    s += &render_text(r);
                    s.push('\n');
                }
            }
            emit(out.as_deref(), &s)?;
            let footer = format!("{} analyzed, {} skipped", b.reports.len(), b.skipped.len());
            if json {
                eprintln!("{footer}");
            } else {
                println!("{footer}");
            }
            Ok(())
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<MalformedJson>().is_some() {
        3
    } else if e.downcast_ref::<Invalid>().is_some() || e.downcast_ref::<FanoError>().is_some() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("FANO_LOG", "warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
