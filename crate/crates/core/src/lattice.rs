//! Lattice vectors, unimodular maps and the normal form of two-dimensional cones.
//!
//! Coordinates are `i64`; every product that could overflow is formed in `i128`
//! and narrowed with a check, so results are exact or an explicit
//! [`FanoError::Overflow`].

use crate::error::{FanoError, Result};
use crate::rational::{serde_q_vec, Q};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of the lattice `N ≅ Zⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    pub fn checked_add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        same_dim(self, other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(FanoError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }

    pub fn checked_sub(&self, other: &LatticeVector) -> Result<LatticeVector> {
        same_dim(self, other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(FanoError::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|&c| crate::rational::int(c)).collect())
    }
}

impl From<[i64; 2]> for LatticeVector {
    fn from(c: [i64; 2]) -> Self {
        LatticeVector(c.to_vec())
    }
}

impl From<[i64; 3]> for LatticeVector {
    fn from(c: [i64; 3]) -> Self {
        LatticeVector(c.to_vec())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A point of `M ⊗ Q`; coordinates are kept reduced by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalVector(#[serde(with = "serde_q_vec")] pub Vec<Q>);

impl RationalVector {
    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Q::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Pairing with a lattice vector.
    pub fn pair(&self, v: &LatticeVector) -> Q {
        self.0
            .iter()
            .zip(&v.0)
            .fold(Q::zero(), |acc, (a, &b)| acc + a * crate::rational::int(b))
    }

    pub fn scale(&self, s: &Q) -> RationalVector {
        RationalVector(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn same_dim(a: &LatticeVector, b: &LatticeVector) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(FanoError::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(())
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| FanoError::Overflow)
}

/// An element of `GL(n, Z)`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularMap {
    rows: Vec<Vec<i64>>,
}

impl UnimodularMap {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(FanoError::InvalidArgument("empty matrix".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(FanoError::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
        let det = integer_det(&rows)?;
        if det != 1 && det != -1 {
            return Err(FanoError::NotUnimodular(det));
        }
        Ok(UnimodularMap { rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        UnimodularMap { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn det(&self) -> i64 {
        integer_det(&self.rows).expect("unimodular determinant is ±1")
    }

    pub fn compose(&self, other: &UnimodularMap) -> Result<UnimodularMap> {
        let n = self.dim();
        if other.dim() != n {
            return Err(FanoError::DimensionMismatch {
                expected: n,
                got: other.dim(),
            });
        }
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let s: i128 = (0..n)
                    .map(|k| self.rows[i][k] as i128 * other.rows[k][j] as i128)
                    .sum();
                *entry = narrow(s)?;
            }
        }
        Ok(UnimodularMap { rows })
    }

    /// Inverse transpose, the induced action on the dual lattice `M`.
    pub fn dual(&self) -> UnimodularMap {
        let inv = self.inverse();
        let n = self.dim();
        let rows = (0..n).map(|i| (0..n).map(|j| inv.rows[j][i]).collect()).collect();
        UnimodularMap { rows }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let n = self.dim();
        let det = self.det();
        // Adjugate over the integers; det = ±1 so it is the inverse up to sign.
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let minor: Vec<Vec<i64>> = self
                    .rows
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != j)
                    .map(|(_, row)| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != i)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let cof = if n == 1 { 1 } else { integer_det(&minor).expect("minor") };
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                *entry = sign * cof * det;
            }
        }
        UnimodularMap { rows }
    }
}

/// Determinant of a small integer matrix by cofactor expansion (n ≤ 4 in practice).
pub fn integer_det(rows: &[Vec<i64>]) -> Result<i64> {
    fn det(m: &[Vec<i128>]) -> i128 {
        match m.len() {
            0 => 1,
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            n => (0..n)
                .map(|c| {
                    let minor: Vec<Vec<i128>> = m[1..]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|(j, _)| *j != c)
                                .map(|(_, &x)| x)
                                .collect()
                        })
                        .collect();
                    let s = if c % 2 == 0 { 1 } else { -1 };
                    s * m[0][c] * det(&minor)
                })
                .sum(),
        }
    }
    let wide: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    narrow(det(&wide))
}

/// `true` iff the coordinates of `v` are coprime.
pub fn is_primitive(v: &LatticeVector) -> Result<bool> {
    if v.is_zero() {
        return Err(FanoError::ZeroVector);
    }
    Ok(v.content() == 1)
}

/// `a_x b_y - a_y b_x`.
pub fn det2(a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
    for v in [a, b] {
        if v.dim() != 2 {
            return Err(FanoError::DimensionMismatch {
                expected: 2,
                got: v.dim(),
            });
        }
    }
    narrow(a.0[0] as i128 * b.0[1] as i128 - a.0[1] as i128 * b.0[0] as i128)
}

pub(crate) fn det2_raw(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn apply_map(u: &UnimodularMap, v: &LatticeVector) -> Result<LatticeVector> {
    if u.dim() != v.dim() {
        return Err(FanoError::DimensionMismatch {
            expected: u.dim(),
            got: v.dim(),
        });
    }
    u.rows
        .iter()
        .map(|row| narrow(row.iter().zip(&v.0).map(|(&a, &b)| a as i128 * b as i128).sum()))
        .collect::<Result<Vec<_>>>()
        .map(LatticeVector)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// The cyclic quotient singularity `C²/Z_m` with weights `(1, q)`.
///
/// `q` is kept at the canonical representative `min(q, q⁻¹ mod m)`; the
/// smooth point is `m = 1, q = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CyclicQuotientType {
    pub m: i64,
    pub q: i64,
}

impl CyclicQuotientType {
    pub const SMOOTH: CyclicQuotientType = CyclicQuotientType { m: 1, q: 0 };

    /// Builds `1/m(1,q)` from any representative of `q`.
    pub fn new(m: i64, q: i64) -> Result<Self> {
        if m < 1 {
            return Err(FanoError::InvalidQuotient { m, q });
        }
        if m == 1 {
            return Ok(Self::SMOOTH);
        }
        let q = q.rem_euclid(m);
        let inv = mod_inverse(q, m).ok_or(FanoError::InvalidQuotient { m, q })?;
        Ok(CyclicQuotientType { m, q: q.min(inv) })
    }

    /// The Du Val singularity `A_k = 1/(k+1)(1,k)`.
    pub fn a_type(k: i64) -> Self {
        Self::new(k + 1, k).expect("A_k is a valid quotient")
    }

    pub fn is_smooth(&self) -> bool {
        self.m == 1
    }

    /// Du Val (A-type), including the smooth point.
    pub fn is_canonical(&self) -> bool {
        self.m == 1 || self.q == self.m - 1
    }

    /// The other representative `q⁻¹ mod m`.
    pub fn inverse_weight(&self) -> i64 {
        if self.m == 1 {
            0
        } else {
            mod_inverse(self.q, self.m).expect("q is a unit")
        }
    }
}

impl fmt::Display for CyclicQuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_smooth() {
            write!(f, "smooth")
        } else if self.is_canonical() {
            write!(f, "A_{}", self.m - 1)
        } else {
            write!(f, "1/{}(1,{})", self.m, self.q)
        }
    }
}

/// Normal form of the cone spanned by `v0, v1`: a lattice basis change takes
/// `v0 ↦ (0,1)` and `v1 ↦ (m,-q)`.
pub fn cone_normal_form(v0: &LatticeVector, v1: &LatticeVector) -> Result<CyclicQuotientType> {
    let (m, q) = cone_weights(v0, v1)?;
    CyclicQuotientType::new(m, q)
}

/// Raw `(m, q)` of [`cone_normal_form`] before picking the canonical representative.
pub fn cone_weights(v0: &LatticeVector, v1: &LatticeVector) -> Result<(i64, i64)> {
    let d = det2(v0, v1)?;
    for v in [v0, v1] {
        if !is_primitive(v)? {
            return Err(FanoError::NotPrimitive(v.to_string()));
        }
    }
    if d == 0 {
        return Err(FanoError::ParallelRays(v0.to_string(), v1.to_string()));
    }
    let m = d.abs();
    if m == 1 {
        return Ok((1, 0));
    }
    let (a, b) = (v0.0[0], v0.0[1]);
    let e = a.extended_gcd(&b);
    // e.gcd is ±1 since v0 is primitive; (x, y) is the row sending v0 to 1.
    let (x, y) = (e.x * e.gcd, e.y * e.gcd);
    let t = narrow(x as i128 * v1.0[0] as i128 + y as i128 * v1.0[1] as i128)?;
    Ok((m, (-t).rem_euclid(m)))
}
