//! Exact convex hulls for the small point sets handled here.

use crate::error::{FanoError, Result};
use crate::lattice::{det2_raw, LatticeVector};
use num_integer::Integer;

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i128 {
    (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
}

/// Vertices of the convex hull in counterclockwise order, starting at the
/// lexicographically smallest point; collinear boundary points are dropped.
pub(crate) fn hull_2d(points: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[i64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[i64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Checks the 2D Fano conditions on a hull already in counterclockwise order.
pub(crate) fn check_fano_2d(hull: &[[i64; 2]]) -> Result<()> {
    if hull.len() < 3 {
        return Err(FanoError::DegenerateHull);
    }
    let n = hull.len();
    for i in 0..n {
        if det2_raw(hull[i], hull[(i + 1) % n]) <= 0 {
            return Err(FanoError::OriginNotInterior);
        }
    }
    for v in hull {
        if v[0].gcd(&v[1]) != 1 {
            return Err(FanoError::NotPrimitive(LatticeVector(v.to_vec()).to_string()));
        }
    }
    Ok(())
}

/// A supporting plane `⟨normal, x⟩ ≤ offset` of a 3D point set, with primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Facet3 {
    pub normal: [i64; 3],
    pub offset: i64,
}

fn sub3(a: [i64; 3], b: [i64; 3]) -> [i128; 3] {
    [
        a[0] as i128 - b[0] as i128,
        a[1] as i128 - b[1] as i128,
        a[2] as i128 - b[2] as i128,
    ]
}

fn cross3(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: [i128; 3], b: [i64; 3]) -> i128 {
    a[0] * b[0] as i128 + a[1] * b[1] as i128 + a[2] * b[2] as i128
}

/// Facets of the hull of a full-dimensional 3D point set, by brute force over triples.
pub(crate) fn facets_3d(points: &[[i64; 3]]) -> Result<Vec<Facet3>> {
    let n = points.len();
    let mut facets = Vec::new();
    let mut full_dim = false;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = cross3(sub3(points[j], points[i]), sub3(points[k], points[i]));
                if normal == [0, 0, 0] {
                    continue;
                }
                let c = dot3(normal, points[i]);
                let (mut below, mut above) = (false, false);
                for p in points {
                    let s = dot3(normal, *p) - c;
                    below |= s < 0;
                    above |= s > 0;
                }
                full_dim |= below || above;
                if below && above {
                    continue;
                }
                let sign: i128 = if above { -1 } else { 1 };
                let g = normal
                    .iter()
                    .fold(0i128, |g, &x| g.gcd(&x));
                let norm: Vec<i64> = normal
                    .iter()
                    .map(|&x| i64::try_from(sign * x / g).map_err(|_| FanoError::Overflow))
                    .collect::<Result<_>>()?;
                let off = i64::try_from(sign * c / g).map_err(|_| FanoError::Overflow)?;
                facets.push(Facet3 {
                    normal: [norm[0], norm[1], norm[2]],
                    offset: off,
                });
            }
        }
    }
    if !full_dim {
        return Err(FanoError::DegenerateHull);
    }
    facets.sort();
    facets.dedup();
    Ok(facets)
}

/// Points of `points` that are vertices of their convex hull.
pub(crate) fn vertices_3d(points: &[[i64; 3]], facets: &[Facet3]) -> Vec<[i64; 3]> {
    let mut out: Vec<[i64; 3]> = points
        .iter()
        .copied()
        .filter(|p| {
            let on: Vec<[i64; 3]> = facets
                .iter()
                .filter(|f| dot3(f.normal.map(|x| x as i128), *p) == f.offset as i128)
                .map(|f| f.normal)
                .collect();
            spans_3(&on)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn spans_3(normals: &[[i64; 3]]) -> bool {
    let n = normals.len();
    for i in 0..n {
        for j in i + 1..n {
            let c = cross3(normals[i].map(|x| x as i128), normals[j].map(|x| x as i128));
            for k in j + 1..n {
                if dot3(c, normals[k]) != 0 {
                    return true;
                }
            }
        }
    }
    false
}
