//! Canonical representatives of `GL(2, Z)`-orbits of polygons.
//!
//! For every cyclic labelling of the vertices (both orientations) starting at
//! an edge of minimal `|det|`, the `2×n` vertex matrix is brought to Hermite
//! normal form under row operations; the lexicographically smallest result
//! is the normal form.

use super::{make_fano, FanoPolytope};
use crate::error::{FanoError, Result};
use crate::lattice::{det2_raw, LatticeVector};
use num_integer::Integer;

/// Hermite normal form of the `2×n` matrix whose columns are `cols`, under
/// left multiplication by `GL(2, Z)`. Assumes rank 2.
fn hermite_2xn(cols: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut rows: [Vec<i128>; 2] = [
        cols.iter().map(|c| c[0] as i128).collect(),
        cols.iter().map(|c| c[1] as i128).collect(),
    ];
    let n = cols.len();
    let p0 = (0..n).find(|&j| rows[0][j] != 0 || rows[1][j] != 0).expect("nonzero column");
    let (a, b) = (rows[0][p0], rows[1][p0]);
    let e = a.extended_gcd(&b);
    let (g, x, y) = if e.gcd < 0 { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
    let (r0, r1): (Vec<i128>, Vec<i128>) = (0..n)
        .map(|j| {
            let (u, v) = (rows[0][j], rows[1][j]);
            (x * u + y * v, (-b / g) * u + (a / g) * v)
        })
        .unzip();
    rows = [r0, r1];
    let p1 = (p0 + 1..n).find(|&j| rows[1][j] != 0).expect("rank 2");
    if rows[1][p1] < 0 {
        rows[1].iter_mut().for_each(|x| *x = -*x);
    }
    let piv = rows[1][p1];
    let k = Integer::div_floor(&rows[0][p1], &piv);
    for j in 0..n {
        rows[0][j] -= k * rows[1][j];
    }
    (0..n).map(|j| [rows[0][j] as i64, rows[1][j] as i64]).collect()
}

/// Canonical key of a counterclockwise vertex cycle.
pub(crate) fn normal_form_key(verts: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let n = verts.len();
    let dets: Vec<i64> = (0..n).map(|i| det2_raw(verts[i], verts[(i + 1) % n]).abs()).collect();
    let min = *dets.iter().min().expect("polygon");
    let mut best: Option<Vec<[i64; 2]>> = None;
    let mut consider = |cols: Vec<[i64; 2]>| {
        let h = hermite_2xn(&cols);
        if best.as_ref().is_none_or(|b| h < *b) {
            best = Some(h);
        }
    };
    for i in 0..n {
        if dets[i] != min {
            continue;
        }
        // Edge (v_i, v_{i+1}) read forwards, and backwards from v_{i+1}.
        consider((0..n).map(|j| verts[(i + j) % n]).collect());
        consider((0..n).map(|j| verts[(i + 1 + n - j) % n]).collect());
    }
    best.expect("at least one edge")
}

/// Canonical representative of the unimodular equivalence class of a polygon.
pub fn normal_form(p: &FanoPolytope) -> Result<FanoPolytope> {
    if p.dim() != 2 {
        return Err(FanoError::UnsupportedDimension(p.dim()));
    }
    let key = normal_form_key(&p.vertices_2d());
    make_fano(&key.into_iter().map(|v| LatticeVector(v.to_vec())).collect::<Vec<_>>())
}
