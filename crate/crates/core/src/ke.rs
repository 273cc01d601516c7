//! Kähler–Einstein existence tests and obstructions.
//!
//! The toric test is exact: a toric Fano orbifold is KE iff the barycenter of
//! its moment polytope is the origin. The remaining checks are numerical
//! obstructions (Bishop–Gromov type volume bounds) and the Hilbert-polynomial
//! and moduli-dimension formulas for del Pezzo surfaces and Fano threefolds.

use crate::error::{FanoError, Result};
use crate::polytope::{barycenter, dual, FanoPolytope};
use crate::rational::{int, serde_q, Q};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KEVerdict {
    pub ke_toric: bool,
    pub soliton_only: bool,
    pub notes: Vec<String>,
}

/// Outcome of an inequality-type obstruction. Equality is kept apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionVerdict {
    Consistent,
    Boundary,
    Obstructed,
}

impl ObstructionVerdict {
    /// Compares `lhs` against the bound `rhs`.
    fn from_cmp(lhs: &Q, rhs: &Q) -> Self {
        match lhs.cmp(rhs) {
            Ordering::Less => ObstructionVerdict::Consistent,
            Ordering::Equal => ObstructionVerdict::Boundary,
            Ordering::Greater => ObstructionVerdict::Obstructed,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ObstructionVerdict::Consistent => "consistent",
            ObstructionVerdict::Boundary => "boundary",
            ObstructionVerdict::Obstructed => "obstructed",
        }
    }
}

impl std::fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn ke_toric_test(p: &FanoPolytope) -> KEVerdict {
    let bar = barycenter(&dual(p));
    let ke = bar.is_zero();
    let notes = if ke {
        vec!["barycenter of the dual polytope is the origin: Kähler–Einstein".to_string()]
    } else {
        vec![format!(
            "barycenter {bar} ≠ 0: Futaki invariant nonzero, admits a Kähler–Ricci soliton only"
        )]
    };
    KEVerdict {
        ke_toric: ke,
        soliton_only: !ke,
        notes,
    }
}

/// `|Γ_max|·deg < 12` for KE log del Pezzo surfaces.
pub fn bishop_gromov_surface(gamma_max: i64, degree: &Q) -> Result<ObstructionVerdict> {
    if gamma_max < 1 || !degree.is_positive() {
        return Err(FanoError::InvalidArgument(
            "need gamma_max ≥ 1 and degree > 0".into(),
        ));
    }
    Ok(ObstructionVerdict::from_cmp(&(int(gamma_max) * degree), &int(12)))
}

fn factorial(n: u64) -> Q {
    (1..=n as i64).map(int).product()
}

/// Right-hand side `2^{n+1} (n!)² (2n-1)^n / (2n)!` of the conical obstruction.
pub fn obstruction_rhs(n: u64) -> Result<Q> {
    if n == 0 {
        return Err(FanoError::InvalidArgument("n must be positive".into()));
    }
    let two_n_minus_1 = int(2 * n as i64 - 1);
    let pow = (0..n).fold(Q::one(), |acc, _| acc * &two_n_minus_1);
    let two_pow = (0..=n).fold(Q::one(), |acc, _| acc * int(2));
    let nf = factorial(n);
    Ok(two_pow * &nf * &nf * pow / factorial(2 * n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionInput {
    pub n: u64,
    #[serde(with = "serde_q")]
    pub degree: Q,
    /// `Vol(L_p) / Vol(S^{2n-1})`.
    #[serde(with = "serde_q")]
    pub volume_ratio: Q,
    pub gorenstein_index: Option<u64>,
}

/// `deg(X) / ratio ≤ RHS(n)` for a point modeled on a Calabi–Yau cone.
pub fn conical_obstruction(input: &ObstructionInput) -> Result<ObstructionVerdict> {
    if !input.volume_ratio.is_positive() || input.volume_ratio > Q::one() {
        return Err(FanoError::InvalidArgument(format!(
            "volume ratio {} outside (0, 1]",
            input.volume_ratio
        )));
    }
    if !input.degree.is_positive() {
        return Err(FanoError::InvalidArgument("degree must be positive".into()));
    }
    let lhs = &input.degree / &input.volume_ratio;
    Ok(ObstructionVerdict::from_cmp(&lhs, &obstruction_rhs(input.n)?))
}

/// Left-hand side `deg / ratio` of the conical obstruction.
pub fn conical_lhs(input: &ObstructionInput) -> Q {
    &input.degree / &input.volume_ratio
}

/// Volume ratio of a quasi-regular link: `ind(Z)·c₁(Z)^{n-1} / n^n`.
pub fn quasi_regular_ratio(n: u64, index: u64, c1_power: &Q) -> Result<Q> {
    if n < 2 || index == 0 || !c1_power.is_positive() {
        return Err(FanoError::InvalidArgument(
            "need n ≥ 2, index ≥ 1, c1 power > 0".into(),
        ));
    }
    let nn = (0..n).fold(Q::one(), |acc, _| acc * int(n as i64));
    Ok(int(index as i64) * c1_power / nn)
}

/// Volume ratio of an orbifold point `Cⁿ/Γ`.
pub fn orbifold_ratio(group_order: i64) -> Q {
    Q::one() / int(group_order)
}

/// `deg ≤ (n+1)^{n+1} / index`.
pub fn bishop_degree_bound(n: u64, index: u64, degree: &Q) -> Result<ObstructionVerdict> {
    if n < 2 || index == 0 {
        return Err(FanoError::InvalidArgument("need n ≥ 2 and index ≥ 1".into()));
    }
    let base = int(n as i64 + 1);
    let bound = (0..=n).fold(Q::one(), |acc, _| acc * &base) / int(index as i64);
    Ok(ObstructionVerdict::from_cmp(degree, &bound))
}

/// `h⁰(-kK)` from the degree, for del Pezzo surfaces (`n = 2`) and Fano threefolds.
pub fn hilbert_polynomial(n: u64, degree: &Q, k: u64) -> Result<Q> {
    let k = int(k as i64);
    match n {
        2 => Ok(&k * (&k + Q::one()) / int(2) * degree + Q::one()),
        3 => {
            let cubic = &k * &k * &k / int(6) + &k * &k / int(4) + &k / int(12);
            Ok(cubic * degree + int(2) * &k + Q::one())
        }
        _ => Err(FanoError::UnsupportedDimension(n as usize)),
    }
}

/// Topological data a threefold needs in [`virtual_dim`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreefoldData {
    pub picard_rank: i64,
    pub b3: i64,
}

/// `h¹(Θ) - dim Aut`: `10 - 2 deg` for surfaces, `18 - ρ + (b₃ - deg)/2` for threefolds.
pub fn virtual_dim(n: u64, degree: &Q, threefold: Option<ThreefoldData>) -> Result<Q> {
    match (n, threefold) {
        (2, _) => Ok(int(10) - int(2) * degree),
        (3, Some(t)) => Ok(int(18) - int(t.picard_rank) + (int(t.b3) - degree) / int(2)),
        (3, None) => Err(FanoError::InvalidArgument(
            "threefolds need Picard rank and b3".into(),
        )),
        _ => Err(FanoError::UnsupportedDimension(n as usize)),
    }
}
