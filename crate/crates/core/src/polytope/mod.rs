//! Fano polytopes and their duals.
//!
//! A [`FanoPolytope`] is a lattice polytope with primitive vertices and the
//! origin in its interior; its [`DualPolytope`]
//! `{y : ⟨y, v⟩ ≥ -1 for every vertex v}` carries the anticanonical data:
//! degree `n!·Vol`, sections of `-kK` as lattice points of the `k`-th dilate,
//! the Gorenstein index and the barycenter.

mod families;
pub(crate) mod hull;
mod normal_form;

pub use families::*;
pub use normal_form::normal_form;
pub(crate) use normal_form::normal_form_key;

use crate::error::{FanoError, Result};
use crate::lattice::{apply_map, det2, LatticeVector, RationalVector, UnimodularMap};
use crate::rational::{denominator_lcm, int, serde_q, Q};
use hull::{check_fano_2d, facets_3d, hull_2d, vertices_3d};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// A Fano polytope of dimension 2 or 3.
///
/// 2D vertices are stored counterclockwise starting from the lexicographically
/// smallest vertex; 3D vertices are sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FanoPolytope {
    dim: usize,
    vertices: Vec<LatticeVector>,
}

impl FanoPolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub(crate) fn vertices_2d(&self) -> Vec<[i64; 2]> {
        self.vertices.iter().map(|v| [v.0[0], v.0[1]]).collect()
    }

    /// Image under a unimodular map.
    pub fn transform(&self, u: &UnimodularMap) -> Result<FanoPolytope> {
        let image = self
            .vertices
            .iter()
            .map(|v| apply_map(u, v))
            .collect::<Result<Vec<_>>>()?;
        make_fano(&image)
    }

    /// Consecutive vertex pairs `(v_i, v_{i+1})` of a polygon, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = (&LatticeVector, &LatticeVector)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }
}

impl<'de> Deserialize<'de> for FanoPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            vertices: Vec<LatticeVector>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.vertices.iter().any(|v| v.dim() != raw.dim) {
            return Err(serde::de::Error::custom("vertex dimension differs from \"dim\""));
        }
        make_fano(&raw.vertices).map_err(serde::de::Error::custom)
    }
}

/// Builds a [`FanoPolytope`] from any finite point set whose hull is Fano.
///
/// Points that are not hull vertices are dropped; hull vertices must be primitive.
pub fn make_fano(raw_vertices: &[LatticeVector]) -> Result<FanoPolytope> {
    let dim = raw_vertices.first().map(LatticeVector::dim).ok_or(FanoError::TooFewPoints {
        needed: 3,
        got: 0,
    })?;
    if let Some(v) = raw_vertices.iter().find(|v| v.dim() != dim) {
        return Err(FanoError::DimensionMismatch {
            expected: dim,
            got: v.dim(),
        });
    }
    if raw_vertices.len() < dim + 1 {
        return Err(FanoError::TooFewPoints {
            needed: dim + 1,
            got: raw_vertices.len(),
        });
    }
    match dim {
        2 => {
            let pts: Vec<[i64; 2]> = raw_vertices.iter().map(|v| [v.0[0], v.0[1]]).collect();
            let hull = hull_2d(&pts);
            check_fano_2d(&hull)?;
            Ok(FanoPolytope {
                dim,
                vertices: hull.into_iter().map(|v| LatticeVector(v.to_vec())).collect(),
            })
        }
        3 => {
            let pts: Vec<[i64; 3]> = raw_vertices.iter().map(|v| [v.0[0], v.0[1], v.0[2]]).collect();
            let facets = facets_3d(&pts)?;
            if facets.iter().any(|f| f.offset <= 0) {
                return Err(FanoError::OriginNotInterior);
            }
            let verts = vertices_3d(&pts, &facets);
            for v in &verts {
                let lv = LatticeVector(v.to_vec());
                if lv.content() != 1 {
                    return Err(FanoError::NotPrimitive(lv.to_string()));
                }
            }
            Ok(FanoPolytope {
                dim,
                vertices: verts.into_iter().map(|v| LatticeVector(v.to_vec())).collect(),
            })
        }
        d => Err(FanoError::UnsupportedDimension(d)),
    }
}

/// The dual polytope `P^∨`, with the facet inequalities `⟨y, v⟩ ≥ -1` it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualPolytope {
    dim: usize,
    /// 2D: counterclockwise; 3D: lexicographic.
    vertices: Vec<RationalVector>,
    #[serde(skip)]
    facets: Vec<LatticeVector>,
}

impl DualPolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    /// Inequality data: `y ∈ P^∨ ⇔ ⟨y, v⟩ ≥ -1` for each returned `v`.
    pub fn facet_normals(&self) -> &[LatticeVector] {
        &self.facets
    }

    pub fn contains(&self, y: &RationalVector) -> bool {
        let minus_one = -Q::one();
        self.facets.iter().all(|v| y.pair(v) >= minus_one)
    }

    /// Whether every vertex is a lattice point.
    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|w| w.0.iter().all(|c| c.is_integer()))
    }
}

pub fn dual(p: &FanoPolytope) -> DualPolytope {
    let vertices = match p.dim {
        2 => {
            // w_i pairs to -1 with both ends of the edge (v_{i-1}, v_i).
            let n = p.vertices.len();
            (0..n)
                .map(|i| {
                    let a = &p.vertices[(i + n - 1) % n];
                    let b = &p.vertices[i];
                    let d = int(det2(a, b).expect("2D").abs());
                    RationalVector(vec![int(a.0[1] - b.0[1]) / &d, int(b.0[0] - a.0[0]) / &d])
                })
                .collect()
        }
        _ => {
            let pts: Vec<[i64; 3]> = p.vertices.iter().map(|v| [v.0[0], v.0[1], v.0[2]]).collect();
            let facets = facets_3d(&pts).expect("valid Fano polytope");
            let mut ws: Vec<RationalVector> = facets
                .iter()
                .map(|f| {
                    let off = int(f.offset);
                    RationalVector(f.normal.iter().map(|&c| -int(c) / &off).collect())
                })
                .collect();
            ws.sort();
            ws
        }
    };
    // Store the edge order rotated so w_i belongs to (v_i, v_{i+1}).
    let vertices = if p.dim == 2 {
        let mut v = vertices;
        v.rotate_left(1);
        v
    } else {
        vertices
    };
    DualPolytope {
        dim: p.dim,
        vertices,
        facets: p.vertices.clone(),
    }
}

fn det3(a: &RationalVector, b: &RationalVector, c: &RationalVector) -> Q {
    let (a, b, c) = (&a.0, &b.0, &c.0);
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn det2q(a: &RationalVector, b: &RationalVector) -> Q {
    &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0]
}

/// Simplices of a triangulation from the origin, as vertex lists.
fn cone_simplices(q: &DualPolytope) -> Vec<Vec<RationalVector>> {
    match q.dim {
        2 => {
            let n = q.vertices.len();
            (0..n)
                .map(|i| vec![q.vertices[i].clone(), q.vertices[(i + 1) % n].clone()])
                .collect()
        }
        _ => {
            let mut out = Vec::new();
            let minus_one = -Q::one();
            for v in &q.facets {
                let on: Vec<&RationalVector> =
                    q.vertices.iter().filter(|w| w.pair(v) == minus_one).collect();
                let ring = cyclic_order(&on, v);
                for i in 1..ring.len().saturating_sub(1) {
                    out.push(vec![ring[0].clone(), ring[i].clone(), ring[i + 1].clone()]);
                }
            }
            out
        }
    }
}

/// Orders coplanar points cyclically around their centroid, viewed along `normal`.
fn cyclic_order(points: &[&RationalVector], normal: &LatticeVector) -> Vec<RationalVector> {
    let k = points.len();
    if k < 3 {
        return points.iter().map(|p| (*p).clone()).collect();
    }
    let mut centroid = RationalVector::zeros(3);
    for p in points {
        centroid = centroid.add(p);
    }
    let centroid = centroid.scale(&Q::new(BigInt::one(), BigInt::from(k)));
    let nrm = normal.to_rational();
    let triple = |a: &RationalVector, b: &RationalVector| -> Q {
        // (a × b) · normal
        let c = [
            &a.0[1] * &b.0[2] - &a.0[2] * &b.0[1],
            &a.0[2] * &b.0[0] - &a.0[0] * &b.0[2],
            &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0],
        ];
        c.iter().zip(&nrm.0).fold(Q::zero(), |s, (x, y)| s + x * y)
    };
    let dot = |a: &RationalVector, b: &RationalVector| -> Q {
        a.0.iter().zip(&b.0).fold(Q::zero(), |s, (x, y)| s + x * y)
    };
    let rel: Vec<RationalVector> = points.iter().map(|p| p.sub(&centroid)).collect();
    let r = rel[0].clone();
    let half = |d: &RationalVector| -> u8 {
        let s = triple(&r, d);
        if s.is_positive() || (s.is_zero() && dot(&r, d).is_positive()) {
            0
        } else {
            1
        }
    };
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&i, &j| {
        let (hi, hj) = (half(&rel[i]), half(&rel[j]));
        hi.cmp(&hj).then_with(|| {
            let s = triple(&rel[i], &rel[j]);
            if s.is_positive() {
                Ordering::Less
            } else if s.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    idx.into_iter().map(|i| points[i].clone()).collect()
}

fn simplex_volume(s: &[RationalVector]) -> Q {
    match s.len() {
        2 => det2q(&s[0], &s[1]).abs() / int(2),
        _ => det3(&s[0], &s[1], &s[2]).abs() / int(6),
    }
}

/// Euclidean volume, by triangulating from the origin.
pub fn volume(q: &DualPolytope) -> Q {
    cone_simplices(q).iter().map(|s| simplex_volume(s)).sum()
}

fn factorial(n: usize) -> Q {
    (1..=n as i64).map(int).product()
}

/// `(-K)^n = n!·Vol(P^∨)`.
pub fn degree(p: &FanoPolytope) -> Q {
    factorial(p.dim) * volume(&dual(p))
}

/// Degree of a polygon from consecutive determinants of its vertices alone.
pub fn degree_edge_formula(p: &FanoPolytope) -> Result<Q> {
    if p.dim != 2 {
        return Err(FanoError::UnsupportedDimension(p.dim));
    }
    let v = &p.vertices;
    let n = v.len();
    let det = |a: usize, b: usize| det2(&v[a % n], &v[b % n]).expect("2D");
    // Orientation of the stored cycle; the middle term keeps its sign.
    let sign = if det(0, 1) > 0 { 1 } else { -1 };
    let d = |a: usize, b: usize| int(sign * det(a, b));
    let mut total = Q::zero();
    for i in 1..=n {
        let left = d(i - 1, i);
        let right = d(i, i + 1);
        total += int(2) / &left;
        total -= d(i - 1, i + 1) / (left * right);
    }
    Ok(total)
}

/// Centroid of `P^∨`; zero exactly when the toric Futaki invariant vanishes.
pub fn barycenter(q: &DualPolytope) -> RationalVector {
    let k = int(q.dim as i64 + 1);
    let mut weighted = RationalVector::zeros(q.dim);
    let mut total = Q::zero();
    for s in cone_simplices(q) {
        let vol = simplex_volume(&s);
        // The origin is the remaining vertex of the simplex.
        let mut sum = RationalVector::zeros(q.dim);
        for w in &s {
            sum = sum.add(w);
        }
        weighted = weighted.add(&sum.scale(&(&vol / &k)));
        total += vol;
    }
    weighted.scale(&(Q::one() / total))
}

/// Number of lattice points of `k·Q`, i.e. `h⁰(-kK)`.
pub fn ehrhart_count(q: &DualPolytope, k: u32) -> u64 {
    let kq = int(k as i64);
    let bounds: Vec<(i64, i64)> = (0..q.dim)
        .map(|i| {
            let lo = q.vertices.iter().map(|w| &w.0[i] * &kq).min().expect("nonempty");
            let hi = q.vertices.iter().map(|w| &w.0[i] * &kq).max().expect("nonempty");
            (
                lo.floor().to_integer().to_i64().expect("small"),
                hi.ceil().to_integer().to_i64().expect("small"),
            )
        })
        .collect();
    let k = k as i64;
    let inside = |y: &[i64]| {
        q.facets
            .iter()
            .all(|v| v.0.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() >= -k)
    };
    let mut count = 0u64;
    let mut y = bounds.iter().map(|b| b.0).collect::<Vec<_>>();
    loop {
        if inside(&y) {
            count += 1;
        }
        // Odometer over the bounding box.
        let mut i = 0;
        loop {
            if i == y.len() {
                return count;
            }
            if y[i] < bounds[i].1 {
                y[i] += 1;
                break;
            }
            y[i] = bounds[i].0;
            i += 1;
        }
    }
}

/// Smallest `l ≥ 1` with `l·P^∨` integral.
pub fn gorenstein_index(p: &FanoPolytope) -> u64 {
    let q = dual(p);
    denominator_lcm(q.vertices.iter().flat_map(|w| w.0.iter()))
        .to_u64()
        .expect("index fits in u64")
}

/// `#vertices - n` for simplicial polytopes.
pub fn picard_rank(p: &FanoPolytope) -> Result<usize> {
    if p.dim == 3 {
        let q = dual(p);
        let minus_one = -Q::one();
        for w in &q.vertices {
            if p.vertices.iter().filter(|v| w.pair(v) == minus_one).count() != 3 {
                return Err(FanoError::NotSimplicial);
            }
        }
    }
    Ok(p.vertices.len() - p.dim)
}

/// Maximal order of a cone's local group, `|det|` over the maximal cones.
pub fn max_cone_order(p: &FanoPolytope) -> Result<i64> {
    match p.dim {
        2 => Ok(p.edges().map(|(a, b)| det2(a, b).expect("2D").abs()).max().unwrap_or(1)),
        3 => {
            let q = dual(p);
            let minus_one = -Q::one();
            let mut best = 1;
            for w in &q.vertices {
                let on: Vec<&LatticeVector> =
                    p.vertices.iter().filter(|v| w.pair(v) == minus_one).collect();
                if on.len() != 3 {
                    return Err(FanoError::NotSimplicial);
                }
                let rows: Vec<Vec<i64>> = on.iter().map(|v| v.0.clone()).collect();
                best = best.max(crate::lattice::integer_det(&rows)?.abs());
            }
            Ok(best)
        }
        d => Err(FanoError::UnsupportedDimension(d)),
    }
}

/// Aggregate of the anticanonical invariants of a Fano polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSummary {
    #[serde(with = "serde_q")]
    pub degree: Q,
    pub picard_rank: Option<usize>,
    pub gorenstein_index: u64,
    pub reflexive: bool,
    pub barycenter: RationalVector,
}

pub fn summarize(p: &FanoPolytope) -> PolytopeSummary {
    let q = dual(p);
    let index = gorenstein_index(p);
    PolytopeSummary {
        degree: factorial(p.dim) * volume(&q),
        picard_rank: picard_rank(p).ok(),
        gorenstein_index: index,
        reflexive: index == 1,
        barycenter: barycenter(&q),
    }
}

/// Lattice height of the line through two consecutive polygon vertices.
pub(crate) fn edge_height(a: [i64; 2], b: [i64; 2]) -> i64 {
    let det = crate::lattice::det2_raw(a, b).abs();
    det / (b[0] - a[0]).gcd(&(b[1] - a[1]))
}
