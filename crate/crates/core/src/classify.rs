//! Exhaustive classifications of toric log del Pezzo surfaces.
//!
//! [`enumerate_ldp`] finds every Fano polygon of bounded Gorenstein index with
//! vertices in a coordinate box, up to unimodular equivalence. Polygons are
//! grown vertex by vertex in angular order around the origin, pruning on
//! convexity and on the lattice height of each edge, since the index is the
//! lcm of those heights.

use crate::error::{FanoError, Result};
use crate::ke::{bishop_gromov_surface, ke_toric_test, KEVerdict, ObstructionVerdict};
use crate::lattice::{det2_raw, CyclicQuotientType, LatticeVector};
use crate::polytope::{
    cross_polytope, edge_height, normal_form_key, hexagon, make_fano, normal_form, projective_plane, rank1_triangle,
    summarize, y_family, FanoPolytope, PolytopeSummary,
};
use crate::rational::{frac, int, Q};
use crate::singularities::{classify_edges, mumford_instability, SingularityReport};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

/// Smallest box searched for a given index. Found empirically (the counts
/// stop growing at exactly this box for indices up to 6); the stabilization
/// check guards it.
pub fn box_floor(max_index: u64) -> i64 {
    2 * max_index as i64
}

pub const MAX_VERTICES: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub max_index: u64,
    pub coordinate_box: i64,
    pub stabilization_check: bool,
}

impl EnumerationConfig {
    /// Index bound with the box at its floor.
    pub fn new(max_index: u64) -> Result<Self> {
        if max_index == 0 {
            return Err(FanoError::InvalidArgument("max_index must be positive".into()));
        }
        Ok(EnumerationConfig {
            max_index,
            coordinate_box: box_floor(max_index),
            stabilization_check: true,
        })
    }

    pub fn with_box(mut self, coordinate_box: i64) -> Result<Self> {
        let floor = box_floor(self.max_index);
        if coordinate_box < floor {
            return Err(FanoError::InvalidArgument(format!(
                "box {coordinate_box} is below the floor {floor} for index {}",
                self.max_index
            )));
        }
        self.coordinate_box = coordinate_box;
        Ok(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedSurface {
    pub polytope: FanoPolytope,
    pub summary: PolytopeSummary,
    pub singularities: SingularityReport,
    pub ke: KEVerdict,
    pub smoothable: bool,
}

impl ClassifiedSurface {
    /// Reports on the normal form of `p`.
    pub fn new(p: &FanoPolytope) -> Result<Self> {
        let nf = normal_form(p)?;
        let singularities = classify_edges(&nf)?;
        Ok(ClassifiedSurface {
            summary: summarize(&nf),
            smoothable: singularities.all_t(),
            ke: ke_toric_test(&nf),
            singularities,
            polytope: nf,
        })
    }

    pub fn barycenter_zero(&self) -> bool {
        self.summary.barycenter.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub config: EnumerationConfig,
    /// Sorted by normal form.
    pub classes: Vec<ClassifiedSurface>,
    /// `Some(false)` if the enlarged box found more classes.
    pub stabilized: Option<bool>,
}

impl Enumeration {
    pub fn barycenter_zero(&self) -> impl Iterator<Item = &ClassifiedSurface> {
        self.classes.iter().filter(|c| c.barycenter_zero())
    }

    /// Barycenter zero and every singularity of class T.
    pub fn ke_smoothable(&self) -> impl Iterator<Item = &ClassifiedSurface> {
        self.barycenter_zero().filter(|c| c.smoothable)
    }
}

/// Primitive nonzero points of `[-b, b]²`, sorted by angle from the positive x-axis.
fn angular_points(b: i64) -> Vec<[i64; 2]> {
    let mut pts: Vec<[i64; 2]> = (-b..=b)
        .flat_map(|x| (-b..=b).map(move |y| [x, y]))
        .filter(|&[x, y]| x.gcd(&y) == 1)
        .collect();
    let upper = |p: &[i64; 2]| p[1] > 0 || (p[1] == 0 && p[0] > 0);
    pts.sort_by(|a, b| match (upper(a), upper(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => 0.cmp(&det2_raw(*a, *b)),
    });
    pts
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

struct Search<'a> {
    pts: &'a [[i64; 2]],
    max_index: u64,
    path: Vec<[i64; 2]>,
    found: Vec<Vec<[i64; 2]>>,
}

impl Search<'_> {
    /// Height of edge `(a, b)` if it keeps the index within bounds.
    fn admissible(&self, a: [i64; 2], b: [i64; 2], lcm: u64) -> Option<u64> {
        if det2_raw(a, b) <= 0 {
            return None;
        }
        let h = edge_height(a, b) as u64;
        let l = lcm.lcm(&h);
        (l <= self.max_index).then_some(l)
    }

    fn extend(&mut self, last: usize, lcm: u64) {
        let v0 = self.path[0];
        let cur = *self.path.last().expect("nonempty");
        let n = self.path.len();
        if n >= 3 {
            let prev = self.path[n - 2];
            let closes = cross(prev, cur, v0) > 0
                && cross(cur, v0, self.path[1]) > 0
                && self.admissible(cur, v0, lcm).is_some();
            if closes {
                self.found.push(self.path.clone());
            }
        }
        if n == MAX_VERTICES {
            return;
        }
        for j in last + 1..self.pts.len() {
            let w = self.pts[j];
            if n >= 2 && cross(self.path[n - 2], cur, w) <= 0 {
                continue;
            }
            // v0 must stay strictly to the left of the new edge.
            if n >= 2 && cross(cur, w, v0) <= 0 {
                continue;
            }
            let Some(l) = self.admissible(cur, w, lcm) else {
                continue;
            };
            self.path.push(w);
            self.extend(j, l);
            self.path.pop();
        }
    }
}

/// Normal-form keys of all Fano polygons in the box with index at most `max_index`.
fn search_keys(max_index: u64, coordinate_box: i64) -> BTreeSet<Vec<[i64; 2]>> {
    let pts = angular_points(coordinate_box);
    let keys: Vec<Vec<[i64; 2]>> = (0..pts.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut s = Search { pts: &pts, max_index, path: vec![pts[i]], found: Vec::new() };
            s.extend(i, 1);
            s.found.into_iter().map(|p| normal_form_key(&p))
        })
        .collect();
    keys.into_iter().collect()
}

/// All Fano polygons of index at most `max_index` inside the box, up to `GL(2, Z)`.
pub fn enumerate_ldp(config: &EnumerationConfig) -> Result<Enumeration> {
    if config.max_index == 0 || config.coordinate_box < 1 {
        return Err(FanoError::InvalidArgument("index and box must be positive".into()));
    }
    let keys = search_keys(config.max_index, config.coordinate_box);
    log::info!(
        "index ≤ {}, box {}: {} classes",
        config.max_index,
        config.coordinate_box,
        keys.len()
    );
    let stabilized = if config.stabilization_check {
        let wider = search_keys(config.max_index, config.coordinate_box + 1);
        let ok = wider.len() == keys.len();
        if !ok {
            log::warn!(
                "box {} finds {} classes but box {} finds {}: enumeration may be incomplete",
                config.coordinate_box,
                keys.len(),
                config.coordinate_box + 1,
                wider.len()
            );
        }
        Some(ok)
    } else {
        None
    };
    let classes = keys
        .into_iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|k| {
            let vs: Vec<LatticeVector> = k.iter().map(|&v| LatticeVector::from(v)).collect();
            ClassifiedSurface::new(&make_fano(&vs)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Enumeration { config: *config, classes, stabilized })
}

/// Smoothable KE toric del Pezzo surfaces of Picard rank one.
///
/// Balanced triangles are `{(0,1), (-k,-l), (k,l-1)}` of degree `9/k`, so `k`
/// divides 9; `l` ranges over residues mod `k` keeping both vertices primitive.
pub fn classify_rank1() -> Result<Vec<ClassifiedSurface>> {
    let mut classes: BTreeMap<Vec<LatticeVector>, ClassifiedSurface> = BTreeMap::new();
    for k in [1i64, 3, 9] {
        for l in 0..k.max(2) {
            if k.gcd(&l) != 1 || k.gcd(&(l - 1)) != 1 {
                continue;
            }
            let c = ClassifiedSurface::new(&rank1_triangle(k, l)?)?;
            if c.smoothable && c.ke.ke_toric && c.summary.degree == frac(9, k) {
                classes.entry(c.polytope.vertices().to_vec()).or_insert(c);
            }
        }
    }
    let mut out: Vec<ClassifiedSurface> = classes.into_values().collect();
    out.sort_by(|a, b| b.summary.degree.cmp(&a.summary.degree));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    #[serde(with = "crate::rational::serde_q")]
    pub degree: Q,
    pub picard_rank: usize,
    pub gorenstein_index: u64,
    pub singularities: String,
}

fn fail(surface: &str, property: impl Into<String>) -> FanoError {
    FanoError::Verification { surface: surface.into(), property: property.into() }
}

fn table_surfaces() -> Result<Vec<(&'static str, FanoPolytope, i64, usize)>> {
    Ok(vec![
        ("P2", projective_plane(), 9, 1),
        ("P1xP1", cross_polytope(), 8, 2),
        ("Bl3P2", hexagon(), 6, 4),
        ("Y_1", y_family(1)?, 4, 2),
        ("cubic xyz=t^3", rank1_triangle(3, 2)?, 3, 1),
        ("Y_2", y_family(2)?, 2, 2),
        ("X_P", rank1_triangle(9, 2)?, 1, 1),
    ])
}

/// The seven smoothable KE toric log del Pezzo surfaces, checked one by one.
pub fn verify_classification_table() -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (name, p, deg, rho) in table_surfaces()? {
        let c = ClassifiedSurface::new(&p)?;
        if c.summary.degree != int(deg) {
            return Err(fail(name, format!("degree {} ≠ {deg}", c.summary.degree)));
        }
        if c.summary.picard_rank != Some(rho) {
            return Err(fail(name, format!("Picard rank {:?} ≠ {rho}", c.summary.picard_rank)));
        }
        if !c.barycenter_zero() {
            return Err(fail(name, "barycenter is not zero"));
        }
        if !c.smoothable {
            return Err(fail(name, "a singularity is not of class T"));
        }
        rows.push(TableRow {
            name: name.into(),
            degree: c.summary.degree.clone(),
            picard_rank: rho,
            gorenstein_index: c.summary.gorenstein_index,
            singularities: c.singularities.describe(),
        });
    }
    let y2 = &rows[5];
    if y2.singularities != "2×1/4(1,1) + 2×A_3" {
        return Err(fail("Y_2", format!("singularities {}", y2.singularities)));
    }
    if rows[6].gorenstein_index != 3 {
        return Err(fail("X_P", format!("index {} ≠ 3", rows[6].gorenstein_index)));
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YRow {
    pub n: i64,
    #[serde(with = "crate::rational::serde_q")]
    pub degree: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub min_discrepancy: Q,
    pub singularities: String,
    pub mumford_unstable: bool,
}

/// Checks degree `4/n`, discrepancy `-1 + 1/n`, the singularities, balance
/// and Mumford instability of `Y_n` for `n ≤ n_max`.
pub fn verify_y_family(n_max: i64) -> Result<Vec<YRow>> {
    if n_max < 1 {
        return Err(FanoError::InvalidArgument("n_max must be positive".into()));
    }
    (1..=n_max)
        .map(|n| {
            let name = format!("Y_{n}");
            let p = y_family(n)?;
            let c = ClassifiedSurface::new(&p)?;
            if c.summary.degree != frac(4, n) {
                return Err(fail(&name, format!("degree {}", c.summary.degree)));
            }
            let want_disc = if n == 1 { Q::zero() } else { frac(1, n) - Q::one() };
            let disc = c.singularities.min_discrepancy.clone().unwrap_or_else(Q::zero);
            if disc != want_disc {
                return Err(fail(&name, format!("min discrepancy {disc}")));
            }
            let mut want = vec![CyclicQuotientType::new(2 * n, 1)?; 2];
            want.extend([CyclicQuotientType::a_type(2 * n - 1); 2]);
            want.sort();
            if c.singularities.types() != want {
                return Err(fail(&name, format!("singularities {}", c.singularities.describe())));
            }
            if !c.barycenter_zero() {
                return Err(fail(&name, "barycenter is not zero"));
            }
            let unstable = mumford_instability(&c.singularities, 2);
            if unstable != (n >= 4) {
                return Err(fail(&name, format!("Mumford instability flag {unstable}")));
            }
            Ok(YRow {
                n,
                degree: c.summary.degree.clone(),
                min_discrepancy: disc,
                singularities: c.singularities.describe(),
                mumford_unstable: unstable,
            })
        })
        .collect()
}

/// Bishop–Gromov verdict `|Γ_max|·deg` against 12 for a surface.
pub fn bishop_verdict(c: &ClassifiedSurface) -> Result<ObstructionVerdict> {
    bishop_gromov_surface(c.singularities.gamma_max, &c.summary.degree)
}

/// Parses JSON lines of either classified surfaces or bare polytopes.
pub fn read_surface_line(line: &str) -> Result<FanoPolytope> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Line {
        Classified { polytope: FanoPolytope },
        Bare(FanoPolytope),
    }
    match serde_json::from_str::<Line>(line) {
        Ok(Line::Classified { polytope } | Line::Bare(polytope)) => Ok(polytope),
        Err(e) => Err(FanoError::InvalidArgument(format!("unreadable line: {e}"))),
    }
}
