//! Cyclic quotient singularities of toric surfaces.
//!
//! Each edge `(v_i, v_{i+1})` of a Fano polygon is the cone of one torus-fixed
//! point. Its type `1/m(1,q)` determines the Hirzebruch–Jung resolution, the
//! discrepancies, whether it is a T-singularity (admits a Q-Gorenstein
//! smoothing) and its Hilbert–Samuel multiplicity.

use crate::error::{FanoError, Result};
use crate::lattice::{cone_normal_form, mod_inverse, CyclicQuotientType};
use crate::polytope::FanoPolytope;
use crate::rational::{frac, int, serde_q_opt, Q};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Witness `(d, n, a)` for `1/dn²(1, dna-1)` with `gcd(n, a) = 1`.
///
/// Du Val points are reported with `canonical_flag` set and `(d, n, a) = (m, 1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TSingularityWitness {
    pub d: i64,
    pub n: i64,
    pub a: i64,
    pub canonical_flag: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityEntry {
    pub edge: usize,
    #[serde(rename = "type")]
    pub kind: CyclicQuotientType,
    #[serde(with = "serde_q_opt")]
    pub discrepancy: Option<Q>,
    pub t_witness: Option<TSingularityWitness>,
    pub multiplicity: u64,
    pub qg_def_dim: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub entries: Vec<SingularityEntry>,
    pub gamma_max: i64,
    #[serde(with = "serde_q_opt")]
    pub min_discrepancy: Option<Q>,
}

impl SingularityReport {
    /// Singular points only.
    pub fn singular(&self) -> impl Iterator<Item = &SingularityEntry> {
        self.entries.iter().filter(|e| !e.kind.is_smooth())
    }

    /// Sorted multiset of singularity types (smooth points omitted).
    pub fn types(&self) -> Vec<CyclicQuotientType> {
        let mut t: Vec<_> = self.singular().map(|e| e.kind).collect();
        t.sort();
        t
    }

    /// Every point is smooth or a T-singularity.
    pub fn all_t(&self) -> bool {
        self.singular().all(|e| e.t_witness.is_some())
    }

    /// Sum of the Q-Gorenstein deformation dimensions, if all points are T.
    pub fn total_qg_def_dim(&self) -> Option<u64> {
        self.entries.iter().map(|e| e.qg_def_dim).sum()
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).max().unwrap_or(1)
    }

    /// Short human form such as `2×A_3 + 2×1/4(1,1)`.
    pub fn describe(&self) -> String {
        let types = self.types();
        if types.is_empty() {
            return "smooth".into();
        }
        let mut parts: Vec<(CyclicQuotientType, usize)> = Vec::new();
        for t in types {
            match parts.last_mut() {
                Some((last, c)) if *last == t => *c += 1,
                _ => parts.push((t, 1)),
            }
        }
        parts
            .iter()
            .map(|(t, c)| if *c == 1 { t.to_string() } else { format!("{c}×{t}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn check_type(m: i64, q: i64) -> Result<()> {
    if m <= 1 || q <= 0 || q >= m || m.gcd(&q) != 1 {
        return Err(FanoError::InvalidQuotient { m, q });
    }
    Ok(())
}

/// Hirzebruch–Jung continued fraction `m/q = b_1 - 1/(b_2 - 1/(...))`, all `b_i ≥ 2`.
pub fn hj_expansion(m: i64, q: i64) -> Result<Vec<i64>> {
    check_type(m, q)?;
    let (mut num, mut den) = (m, q);
    let mut out = Vec::new();
    while den != 0 {
        let b = Integer::div_ceil(&num, &den);
        out.push(b);
        (num, den) = (den, b * den - num);
    }
    Ok(out)
}

/// Exceptional rays of the minimal resolution of `1/m(1,q)`, in the basis
/// where the cone is spanned by `(0,1)` and `(m,-q)`.
pub fn resolution_rays(m: i64, q: i64) -> Result<Vec<[i64; 2]>> {
    let bs = hj_expansion(m, q)?;
    let mut prev = [0i64, 1];
    let mut cur = [1i64, 0];
    let mut rays = Vec::with_capacity(bs.len());
    for (i, b) in bs.iter().enumerate() {
        rays.push(cur);
        if i + 1 < bs.len() {
            let next = [b * cur[0] - prev[0], b * cur[1] - prev[1]];
            prev = cur;
            cur = next;
        }
    }
    Ok(rays)
}

/// Minimal discrepancy of the exceptional curves of the minimal resolution.
///
/// The log discrepancy of a ray `w` is `l(w)`, where `l` is the linear form
/// equal to 1 on both primitive generators of the cone.
pub fn discrepancy(t: &CyclicQuotientType) -> Option<Q> {
    if t.is_smooth() {
        return None;
    }
    let (m, q) = (t.m, t.q);
    // l = ((1+q)/m, 1) takes value 1 on (0,1) and (m,-q).
    let slope = frac(1 + q, m);
    resolution_rays(m, q)
        .expect("valid type")
        .into_iter()
        .map(|[x, y]| &slope * int(x) + int(y) - Q::one())
        .min()
}

/// Search for `(d, n, a)` with `m = dn²` and `dna - 1 ≡ q^{±1} (mod m)`.
pub fn is_t_singularity(t: &CyclicQuotientType) -> Option<TSingularityWitness> {
    if t.is_smooth() {
        return None;
    }
    let m = t.m;
    if t.is_canonical() {
        return Some(TSingularityWitness {
            d: m,
            n: 1,
            a: 1,
            canonical_flag: true,
        });
    }
    let targets = [t.q, t.inverse_weight()];
    let mut n = 2;
    while n * n <= m {
        if m % (n * n) == 0 {
            let d = m / (n * n);
            for a in 1..=n {
                if a.gcd(&n) == 1 && targets.contains(&(d * n * a - 1).rem_euclid(m)) {
                    return Some(TSingularityWitness {
                        d,
                        n,
                        a,
                        canonical_flag: false,
                    });
                }
            }
        }
        n += 1;
    }
    None
}

/// Dimension of the Q-Gorenstein deformation space: `d` for `(d,n,a)`,
/// `k` for `A_k`, zero for a smooth point, absent otherwise.
pub fn qg_deformation_dim(t: &CyclicQuotientType) -> Option<u64> {
    if t.is_smooth() {
        return Some(0);
    }
    let w = is_t_singularity(t)?;
    Some(if w.canonical_flag { (t.m - 1) as u64 } else { w.d as u64 })
}

/// Hilbert–Samuel multiplicity; closed forms for `A_k` and `1/d(1,1)`, the
/// monoid oracle otherwise.
pub fn multiplicity(t: &CyclicQuotientType) -> u64 {
    if t.is_smooth() {
        1
    } else if t.is_canonical() {
        2
    } else if t.q == 1 {
        t.m as u64
    } else {
        hilbert_samuel_multiplicity(t)
    }
}

/// The invariant monoid `{(i,j) ≥ 0 : i + qj ≡ 0 mod m}` and its Hilbert basis.
struct InvariantMonoid {
    m: i64,
    q: i64,
    generators: Vec<(usize, usize)>,
}

impl InvariantMonoid {
    fn new(t: &CyclicQuotientType) -> Self {
        let (m, q) = (t.m, t.q);
        let contains = |i: i64, j: i64| (i + q * j).rem_euclid(m) == 0;
        let elems: Vec<(i64, i64)> = (0..=m)
            .flat_map(|i| (0..=m).map(move |j| (i, j)))
            .filter(|&(i, j)| (i, j) != (0, 0) && contains(i, j))
            .collect();
        let generators = elems
            .iter()
            .filter(|&&(i, j)| {
                !elems.iter().any(|&(a, b)| {
                    (a, b) != (i, j) && a <= i && b <= j && contains(i - a, j - b) && (i - a, j - b) != (0, 0)
                })
            })
            .map(|&(i, j)| (i as usize, j as usize))
            .collect();
        InvariantMonoid { m, q, generators }
    }

    /// `count[k] = dim O/m^k` for `k < kmax`, read off the longest factorizations.
    fn hilbert_samuel_counts(&self, kmax: usize) -> Vec<u64> {
        let side = kmax * self.m as usize;
        let mut ord = vec![u16::MAX; side * side];
        let mut counts = vec![0u64; kmax + 1];
        for i in 0..side {
            for j in 0..side {
                if (i as i64 + self.q * j as i64).rem_euclid(self.m) != 0 {
                    continue;
                }
                let o = if i == 0 && j == 0 {
                    0
                } else {
                    self.generators
                        .iter()
                        .filter(|&&(a, b)| a <= i && b <= j)
                        .map(|&(a, b)| ord[(i - a) * side + (j - b)] + 1)
                        .max()
                        .expect("every nonzero element is a sum of generators")
                };
                ord[i * side + j] = o;
                // Elements of order < k are exactly those outside m^k.
                for c in counts.iter_mut().skip(o as usize + 1) {
                    *c += 1;
                }
            }
        }
        counts
    }
}

/// Brute-force Hilbert–Samuel multiplicity of `1/m(1,q)`: the second
/// difference of `k ↦ dim O/m^k` once it has stabilized.
pub fn hilbert_samuel_multiplicity(t: &CyclicQuotientType) -> u64 {
    if t.is_smooth() {
        return 1;
    }
    let monoid = InvariantMonoid::new(t);
    let mut kmax = 8;
    loop {
        let c = monoid.hilbert_samuel_counts(kmax);
        let second: Vec<i64> = (0..kmax - 1)
            .map(|k| c[k + 2] as i64 - 2 * c[k + 1] as i64 + c[k] as i64)
            .collect();
        let tail = &second[second.len() - 4..];
        if tail.iter().all(|&x| x == tail[0]) {
            return tail[0] as u64;
        }
        kmax *= 2;
    }
}

/// Number of minimal generators of the invariant ring.
pub fn embedding_dimension(t: &CyclicQuotientType) -> usize {
    if t.is_smooth() {
        return 2;
    }
    InvariantMonoid::new(t).generators.len()
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Mumford's criterion: some point has multiplicity above `(dim + 1)!`.
pub fn mumford_instability(report: &SingularityReport, complex_dim: u64) -> bool {
    report.entries.iter().any(|e| e.multiplicity > factorial(complex_dim + 1))
}

/// One entry per edge of a polygon.
pub fn classify_edges(p: &FanoPolytope) -> Result<SingularityReport> {
    if p.dim() != 2 {
        return Err(FanoError::UnsupportedDimension(p.dim()));
    }
    let entries = p
        .edges()
        .enumerate()
        .map(|(edge, (a, b))| {
            let kind = cone_normal_form(a, b)?;
            Ok(SingularityEntry {
                edge,
                kind,
                discrepancy: discrepancy(&kind),
                t_witness: is_t_singularity(&kind),
                multiplicity: multiplicity(&kind),
                qg_def_dim: qg_deformation_dim(&kind),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let gamma_max = entries.iter().map(|e| e.kind.m).max().unwrap_or(1);
    let min_discrepancy = entries.iter().filter_map(|e| e.discrepancy.clone()).min();
    Ok(SingularityReport {
        entries,
        gamma_max,
        min_discrepancy,
    })
}

/// Rational value of the continued fraction `[b_1, ..., b_r]`.
pub fn hj_evaluate(bs: &[i64]) -> Q {
    let mut acc: Option<Q> = None;
    for &b in bs.iter().rev() {
        acc = Some(match acc {
            None => int(b),
            Some(x) => int(b) - Q::one() / x,
        });
    }
    acc.unwrap_or_else(Q::zero)
}

/// The weight of a witness, reduced mod `dn²`.
pub fn witness_weight(w: &TSingularityWitness) -> i64 {
    let m = w.d * w.n * w.n;
    (w.d * w.n * w.a - 1).rem_euclid(m)
}

/// Checks that a witness describes `t`.
pub fn witness_matches(w: &TSingularityWitness, t: &CyclicQuotientType) -> bool {
    let m = w.d * w.n * w.n;
    let weight = witness_weight(w);
    m == t.m
        && w.n.gcd(&w.a) == 1
        && (weight == t.q || Some(weight) == mod_inverse(t.q, t.m))
}
