//! GIT stability of pencils of quadrics through their discriminant form.
//!
//! A pencil `λA + μB` of quadrics in `size` variables determines the binary
//! form `det(λA + μB)` of degree `size`. Verdicts depend only on the root
//! multiplicities of that form, which are read off from an exact squarefree
//! decomposition over `Q`, so no root is ever approximated.

mod poly;

pub use poly::Poly;

use crate::error::{FanoError, Result};
use crate::rational::{int, Rat, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

type Matrix = Vec<Vec<Q>>;

/// Determinant by Gaussian elimination over `Q`.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

fn combine(a: &[Vec<Q>], b: &[Vec<Q>], l: &Q, m: &Q) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| l * x + m * y).collect())
        .collect()
}

/// The pencil `λA + μB` of symmetric `size × size` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricPencil {
    size: usize,
    a: Matrix,
    b: Matrix,
}

impl QuadricPencil {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        let size = a.len();
        if size < 3 {
            return Err(FanoError::InvalidArgument(format!(
                "pencil size must be at least 3, got {size}"
            )));
        }
        for m in [&a, &b] {
            if m.len() != size {
                return Err(FanoError::DimensionMismatch { expected: size, got: m.len() });
            }
            if let Some(row) = m.iter().find(|r| r.len() != size) {
                return Err(FanoError::DimensionMismatch { expected: size, got: row.len() });
            }
            if (0..size).any(|i| (0..i).any(|j| m[i][j] != m[j][i])) {
                return Err(FanoError::NotSymmetric);
            }
        }
        let p = QuadricPencil { size, a, b };
        // A form of degree `size` vanishing at size + 1 points is zero.
        if (0..=size as i64).all(|t| p.det_at(&int(t), &Q::one()).is_zero()) {
            return Err(FanoError::DegeneratePencil);
        }
        Ok(p)
    }

    /// `A = I`, `B = diag(values)`.
    pub fn diagonal(values: &[Q]) -> Result<Self> {
        let n = values.len();
        let id = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        let b = (0..n)
            .map(|i| (0..n).map(|j| if i == j { values[i].clone() } else { Q::zero() }).collect())
            .collect();
        QuadricPencil::new(id, b)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn a(&self) -> &[Vec<Q>] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<Q>] {
        &self.b
    }

    /// `det(λA + μB)`.
    pub fn det_at(&self, lambda: &Q, mu: &Q) -> Q {
        determinant(&combine(&self.a, &self.b, lambda, mu))
    }

    /// The pencil `(SᵀAS, SᵀBS)`.
    pub fn congruence(&self, s: &[Vec<Q>]) -> Result<Self> {
        if s.len() != self.size || s.iter().any(|r| r.len() != self.size) {
            return Err(FanoError::DimensionMismatch { expected: self.size, got: s.len() });
        }
        let conj = |m: &Matrix| -> Matrix {
            let n = self.size;
            let ms: Matrix = (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| &m[i][k] * &s[k][j]).sum()).collect())
                .collect();
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| &s[k][i] * &ms[k][j]).sum()).collect())
                .collect()
        };
        QuadricPencil::new(conj(&self.a), conj(&self.b))
    }
}

/// The pencil file `{"size": k, "A": [[...]], "B": [[...]]}` before validation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PencilFile {
    pub size: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Rat>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Rat>>,
}

impl PencilFile {
    pub fn into_pencil(self) -> Result<QuadricPencil> {
        if self.a.len() != self.size {
            return Err(FanoError::DimensionMismatch { expected: self.size, got: self.a.len() });
        }
        let unwrap = |m: Vec<Vec<Rat>>| -> Matrix {
            m.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect()
        };
        QuadricPencil::new(unwrap(self.a), unwrap(self.b))
    }
}

impl Serialize for QuadricPencil {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let wrap = |m: &Matrix| m.iter().map(|r| r.iter().cloned().map(Rat).collect()).collect();
        PencilFile { size: self.size, a: wrap(&self.a), b: wrap(&self.b) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadricPencil {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PencilFile::deserialize(d)?.into_pencil().map_err(serde::de::Error::custom)
    }
}

/// `Σ c_i λ^i μ^{d-i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryForm {
    pub degree: usize,
    #[serde(with = "crate::rational::serde_q_vec")]
    pub coefficients: Vec<Q>,
}

impl BinaryForm {
    pub fn new(coefficients: Vec<Q>) -> Result<Self> {
        if coefficients.is_empty() || coefficients.iter().all(Zero::is_zero) {
            return Err(FanoError::InvalidArgument("binary form is identically zero".into()));
        }
        Ok(BinaryForm { degree: coefficients.len() - 1, coefficients })
    }

    /// `Π (a_k λ + b_k μ)`.
    pub fn from_linear_factors(factors: &[(Q, Q)]) -> Result<Self> {
        let mut c = vec![Q::one()];
        for (a, b) in factors {
            let mut next = vec![Q::zero(); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] += a * ci;
                next[i] += b * ci;
            }
            c = next;
        }
        BinaryForm::new(c)
    }

    pub fn evaluate(&self, lambda: &Q, mu: &Q) -> Q {
        let d = self.degree;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * num_traits::pow(lambda.clone(), i) * num_traits::pow(mu.clone(), d - i))
            .sum()
    }

    /// `f(μ, λ)`.
    pub fn swap(&self) -> Self {
        let mut c = self.coefficients.clone();
        c.reverse();
        BinaryForm { degree: self.degree, coefficients: c }
    }

    pub fn scale(&self, s: &Q) -> Result<Self> {
        BinaryForm::new(self.coefficients.iter().map(|c| c * s).collect())
    }

    /// `f(λ + tμ, μ)`.
    pub fn shear(&self, t: &Q) -> Self {
        let d = self.degree;
        let mut out = vec![Q::zero(); d + 1];
        for (i, ci) in self.coefficients.iter().enumerate() {
            let mut binom = Q::one();
            let mut tp = Q::one();
            // j runs downwards from i: C(i, j) t^{i-j}.
            for j in (0..=i).rev() {
                out[j] += ci * &binom * &tp;
                binom = binom * int(j as i64) / int((i - j + 1) as i64);
                tp *= t;
            }
        }
        BinaryForm { degree: d, coefficients: out }
    }

    /// Multiplicity of the root `μ = 0`.
    pub fn infinity_multiplicity(&self) -> usize {
        self.coefficients.iter().rev().take_while(|c| c.is_zero()).count()
    }

    /// `f(λ, 1)`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(self.coefficients.clone())
    }

    pub fn multiplicity_profile(&self) -> MultiplicityProfile {
        let mut parts: Vec<ProfilePart> = self
            .dehomogenize()
            .squarefree_decomposition()
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let deg = a.degree().unwrap_or(0);
                (deg > 0).then_some(ProfilePart { multiplicity: i + 1, degree: deg, at_infinity: false })
            })
            .collect();
        let inf = self.infinity_multiplicity();
        if inf > 0 {
            parts.push(ProfilePart { multiplicity: inf, degree: 1, at_infinity: true });
        }
        parts.sort_by(|x, y| y.multiplicity.cmp(&x.multiplicity).then(x.at_infinity.cmp(&y.at_infinity)));
        MultiplicityProfile { degree: self.degree, parts }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree;
        let mut terms = Vec::new();
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = |v: &str, e: usize| match e {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{e}"),
            };
            let m = [mono("λ", i), mono("μ", d - i)].iter().filter(|s| !s.is_empty()).cloned().collect::<Vec<_>>().join("·");
            terms.push(match (m.is_empty(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => m,
                (false, false) if *c == -Q::one() => format!("-{m}"),
                (false, false) => format!("{c}·{m}"),
            });
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

/// `degree` distinct roots of multiplicity `multiplicity`, from one squarefree factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfilePart {
    pub multiplicity: usize,
    pub degree: usize,
    pub at_infinity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub degree: usize,
    /// Sorted by decreasing multiplicity.
    pub parts: Vec<ProfilePart>,
}

impl MultiplicityProfile {
    pub fn max_multiplicity(&self) -> usize {
        self.parts.iter().map(|p| p.multiplicity).max().unwrap_or(0)
    }

    /// Number of distinct roots over `C`.
    pub fn distinct_roots(&self) -> usize {
        self.parts.iter().map(|p| p.degree).sum()
    }

    /// `Σ multiplicity · degree`, which equals the form's degree.
    pub fn total(&self) -> usize {
        self.parts.iter().map(|p| p.multiplicity * p.degree).sum()
    }

    /// Exactly two distinct roots, each of multiplicity `d/2`.
    pub fn is_even_split(&self) -> bool {
        self.degree % 2 == 0
            && self.distinct_roots() == 2
            && self.parts.iter().all(|p| 2 * p.multiplicity == self.degree)
    }

    /// Root multiplicities over `C` as a sorted multiset, largest first.
    pub fn root_multiplicities(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .parts
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.multiplicity, p.degree))
            .collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    StrictlyPolystable,
    SemistableNotPolystable,
    Unstable,
}

impl Stability {
    pub fn is_polystable(self) -> bool {
        matches!(self, Stability::Stable | Stability::StrictlyPolystable)
    }

    pub fn is_semistable(self) -> bool {
        self != Stability::Unstable
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::StrictlyPolystable => "strictly_polystable",
            Stability::SemistableNotPolystable => "semistable_not_polystable",
            Stability::Unstable => "unstable",
        }
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitVerdict {
    pub stability: Stability,
    pub witness: String,
}

impl GitVerdict {
    fn new(stability: Stability, witness: String) -> Self {
        GitVerdict { stability, witness }
    }
}

fn half(d: usize) -> String {
    if d % 2 == 0 {
        (d / 2).to_string()
    } else {
        format!("{d}/2")
    }
}

/// `det(λA + μB)` by interpolation at `λ = 0..size`, `μ = 1`.
pub fn discriminant_form(p: &QuadricPencil) -> BinaryForm {
    let d = p.size;
    let values: Vec<Q> = (0..=d).map(|t| p.det_at(&int(t as i64), &Q::one())).collect();
    let mut acc = vec![Q::zero(); d + 1];
    for (j, y) in values.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        // Lagrange basis polynomial for node j.
        let mut basis = Poly::one();
        let mut denom = Q::one();
        for k in (0..=d).filter(|&k| k != j) {
            basis = basis.mul(&Poly::new(vec![int(-(k as i64)), Q::one()]));
            denom *= int(j as i64 - k as i64);
        }
        for (i, c) in basis.coeffs().iter().enumerate() {
            acc[i] += y * c / &denom;
        }
    }
    BinaryForm::new(acc).expect("nondegenerate pencil")
}

/// Hilbert–Mumford rule for binary forms of degree `d`.
pub fn binary_form_stability(f: &BinaryForm) -> GitVerdict {
    let prof = f.multiplicity_profile();
    let (d, m) = (f.degree, prof.max_multiplicity());
    if 2 * m < d {
        GitVerdict::new(Stability::Stable, format!("max multiplicity {m} < {}", half(d)))
    } else if 2 * m > d {
        GitVerdict::new(Stability::Unstable, format!("max multiplicity {m} > {}", half(d)))
    } else if prof.is_even_split() {
        GitVerdict::new(
            Stability::StrictlyPolystable,
            format!("two distinct roots of multiplicity {m}"),
        )
    } else {
        GitVerdict::new(
            Stability::SemistableNotPolystable,
            format!("a root of multiplicity {m} = {} with other roots present", half(d)),
        )
    }
}

/// Verdict for a pencil: pairs of equal roots are polystable for quartic
/// del Pezzo pencils (size 5) and for size 6, where the split into two
/// triple roots is also polystable. Other sizes use the binary-form rule.
pub fn pencil_stability(p: &QuadricPencil) -> GitVerdict {
    let f = discriminant_form(p);
    if !matches!(p.size, 5 | 6) {
        return binary_form_stability(&f);
    }
    let prof = f.multiplicity_profile();
    let m = prof.max_multiplicity();
    match m {
        1 => GitVerdict::new(Stability::Stable, format!("all {} roots distinct", p.size)),
        2 => GitVerdict::new(Stability::StrictlyPolystable, "roots coincide in pairs only".into()),
        3 if p.size == 6 && prof.is_even_split() => {
            GitVerdict::new(Stability::StrictlyPolystable, "two distinct triple roots".into())
        }
        _ => GitVerdict::new(Stability::Unstable, format!("a root of multiplicity {m}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilReport {
    pub size: usize,
    pub degenerate: bool,
    pub discriminant: Option<BinaryForm>,
    pub profile: Option<MultiplicityProfile>,
    pub verdict: GitVerdict,
}

/// Full report for a pencil file; a degenerate pencil is reported unstable.
pub fn pencil_report(file: PencilFile) -> Result<PencilReport> {
    let size = file.size;
    match file.into_pencil() {
        Ok(p) => {
            let f = discriminant_form(&p);
            Ok(PencilReport {
                size,
                degenerate: false,
                profile: Some(f.multiplicity_profile()),
                discriminant: Some(f),
                verdict: pencil_stability(&p),
            })
        }
        Err(FanoError::DegeneratePencil) => Ok(PencilReport {
            size,
            degenerate: true,
            discriminant: None,
            profile: None,
            verdict: GitVerdict::new(
                Stability::Unstable,
                "degenerate pencil: det(λA + μB) vanishes identically".into(),
            ),
        }),
        Err(e) => Err(e),
    }
}
