#![allow(dead_code)]

use fano_core::lattice::LatticeVector;
use fano_core::polytope::make_fano;
use fano_core::FanoPolytope;
use rand::Rng;

/// A random Fano polygon with vertices in `[-r, r]²`, from 3 to 8 random points.
pub fn random_polygon<R: Rng>(rng: &mut R, r: i64) -> FanoPolytope {
    loop {
        let k = rng.gen_range(3..=8);
        let pts: Vec<LatticeVector> = (0..k)
            .map(|_| LatticeVector(vec![rng.gen_range(-r..=r), rng.gen_range(-r..=r)]))
            .collect();
        if let Ok(p) = make_fano(&pts) {
            return p;
        }
    }
}
