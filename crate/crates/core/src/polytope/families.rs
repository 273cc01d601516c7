//! Named polytopes: the example families and the smooth toric del Pezzo surfaces.

use super::{make_fano, FanoPolytope};
use crate::error::{FanoError, Result};
use crate::lattice::LatticeVector;

fn from_coords<const N: usize>(pts: &[[i64; N]]) -> Result<FanoPolytope> {
    let vs: Vec<LatticeVector> = pts.iter().map(|p| LatticeVector(p.to_vec())).collect();
    make_fano(&vs)
}

fn positive(name: &str, n: i64) -> Result<()> {
    if n < 1 {
        return Err(FanoError::InvalidArgument(format!("{name} must be positive, got {n}")));
    }
    Ok(())
}

/// `P²`.
pub fn projective_plane() -> FanoPolytope {
    from_coords(&[[1, 0], [0, 1], [-1, -1]]).expect("P2")
}

/// `P¹×P¹`, the square cross-polytope.
pub fn cross_polytope() -> FanoPolytope {
    from_coords(&[[1, 0], [0, 1], [-1, 0], [0, -1]]).expect("P1xP1")
}

/// `P²` blown up in the three torus-fixed points.
pub fn hexagon() -> FanoPolytope {
    from_coords(&[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]).expect("hexagon")
}

/// `P(1,1,n)`.
pub fn weighted_p11n(n: i64) -> Result<FanoPolytope> {
    positive("n", n)?;
    from_coords(&[[1, 0], [0, 1], [-1, -n]])
}

/// `Y_n`: the rectangle with vertices `(±n, ±1)`.
pub fn y_family(n: i64) -> Result<FanoPolytope> {
    positive("n", n)?;
    from_coords(&[[-n, 1], [n, 1], [n, -1], [-n, -1]])
}

/// Balanced triangle `{(0,1), (-k,-l), (k,l-1)}`.
pub fn rank1_triangle(k: i64, l: i64) -> Result<FanoPolytope> {
    positive("k", k)?;
    from_coords(&[[0, 1], [-k, -l], [k, l - 1]])
}

/// The simplex `{e1, e2, e3, -e1-e2-d·e3}`.
pub fn xd_threefold(d: i64) -> Result<FanoPolytope> {
    positive("d", d)?;
    from_coords(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -d]])
}
