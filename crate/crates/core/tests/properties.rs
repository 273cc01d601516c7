mod common;

use fano_core::lattice::{apply_map, cone_normal_form, det2, LatticeVector, UnimodularMap};
use fano_core::pencil::{binary_form_stability, discriminant_form, BinaryForm, QuadricPencil};
use fano_core::polytope::{degree, degree_edge_formula, normal_form, summarize};
use fano_core::rational::{frac, int, Q};
use fano_core::singularities::{discrepancy, hj_evaluate, hj_expansion};
use fano_core::CyclicQuotientType;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Products of elementary shears and a sign flip, so always in GL(2, Z).
fn unimodular() -> impl Strategy<Value = UnimodularMap> {
    (prop::collection::vec((any::<bool>(), -3i64..=3), 1..5), any::<bool>()).prop_map(|(steps, flip)| {
        let mut u = UnimodularMap::identity(2);
        for (upper, k) in steps {
            let e = if upper { vec![vec![1, k], vec![0, 1]] } else { vec![vec![1, 0], vec![k, 1]] };
            u = u.compose(&UnimodularMap::new(e).unwrap()).unwrap();
        }
        if flip {
            u = u.compose(&UnimodularMap::new(vec![vec![0, 1], vec![1, 0]]).unwrap()).unwrap();
        }
        u
    })
}

fn primitive() -> impl Strategy<Value = LatticeVector> {
    (-12i64..=12, -12i64..=12)
        .prop_filter("primitive", |(x, y)| x.gcd(y) == 1)
        .prop_map(|(x, y)| LatticeVector(vec![x, y]))
}

fn small_rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn det2_is_antisymmetric(a in primitive(), b in primitive()) {
        prop_assert_eq!(det2(&a, &b).unwrap(), -det2(&b, &a).unwrap());
    }

    #[test]
    fn cone_type_ignores_lattice_basis_and_ray_order(a in primitive(), b in primitive(), u in unimodular()) {
        prop_assume!(det2(&a, &b).unwrap() != 0);
        let t = cone_normal_form(&a, &b).unwrap();
        prop_assert_eq!(cone_normal_form(&b, &a).unwrap(), t);
        let (ua, ub) = (apply_map(&u, &a).unwrap(), apply_map(&u, &b).unwrap());
        prop_assert_eq!(cone_normal_form(&ua, &ub).unwrap(), t);
    }

    #[test]
    fn polygon_invariants_survive_unimodular_maps(seed in any::<u64>(), u in unimodular()) {
        let p = common::random_polygon(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        let q = p.transform(&u).unwrap();
        let (s, t) = (summarize(&p), summarize(&q));
        prop_assert_eq!(&s.degree, &t.degree);
        prop_assert_eq!(s.picard_rank, t.picard_rank);
        prop_assert_eq!(s.gorenstein_index, t.gorenstein_index);
        prop_assert_eq!(s.reflexive, t.reflexive);
        prop_assert_eq!(s.barycenter.is_zero(), t.barycenter.is_zero());
        prop_assert_eq!(normal_form(&p).unwrap(), normal_form(&q).unwrap());
    }

    #[test]
    fn edge_formula_matches_dual_area(seed in any::<u64>()) {
        let p = common::random_polygon(&mut ChaCha8Rng::seed_from_u64(seed), 7);
        prop_assert_eq!(degree_edge_formula(&p).unwrap(), degree(&p));
    }

    #[test]
    fn continued_fraction_round_trip(m in 2i64..=500, q in 1i64..500) {
        prop_assume!(q < m && q.gcd(&m) == 1);
        let bs = hj_expansion(m, q).unwrap();
        prop_assert!(bs.iter().all(|&b| b >= 2));
        prop_assert_eq!(hj_evaluate(&bs), frac(m, q));
    }

    #[test]
    fn discrepancy_range(m in 2i64..=200, q in 1i64..200) {
        prop_assume!(q < m && q.gcd(&m) == 1);
        let t = CyclicQuotientType::new(m, q).unwrap();
        let a = discrepancy(&t).unwrap();
        prop_assert!(a > int(-1) && a <= Q::zero());
        prop_assert_eq!(a.is_zero(), t.is_canonical());
    }

    #[test]
    fn binary_form_verdict_is_projectively_invariant(
        roots in prop::collection::vec(small_rational(), 1..7),
        extra_inf in 0usize..3,
        t in small_rational(),
        s in small_rational(),
    ) {
        prop_assume!(!s.is_zero());
        let mut factors: Vec<(Q, Q)> = roots.iter().map(|r| (Q::one(), -r.clone())).collect();
        factors.extend(std::iter::repeat_n((Q::zero(), Q::one()), extra_inf));
        let f = BinaryForm::from_linear_factors(&factors).unwrap();
        let p = f.multiplicity_profile();
        prop_assert_eq!(p.total(), factors.len());
        prop_assert_eq!(p.degree, factors.len());
        prop_assert_eq!(f.infinity_multiplicity(), extra_inf);
        let v = binary_form_stability(&f).stability;
        for g in [f.swap(), f.shear(&t), f.scale(&s).unwrap()] {
            prop_assert_eq!(g.multiplicity_profile().root_multiplicities(), p.root_multiplicities());
            prop_assert_eq!(binary_form_stability(&g).stability, v);
        }
    }

    #[test]
    fn congruence_rescales_the_discriminant(
        values in prop::collection::vec(small_rational(), 3..6),
        lower in prop::collection::vec(small_rational(), 10),
        diag in prop::collection::vec(1i64..=3, 5),
    ) {
        let n = values.len();
        let pencil = match QuadricPencil::diagonal(&values) {
            Ok(p) => p,
            Err(_) => return Ok(()),
        };
        let mut s = vec![vec![Q::zero(); n]; n];
        let mut k = 0;
        for i in 0..n {
            s[i][i] = int(diag[i]);
            for j in 0..i {
                s[i][j] = lower[k].clone();
                k += 1;
            }
        }
        let det_s: i64 = diag[..n].iter().product();
        let moved = pencil.congruence(&s).unwrap();
        let (f, g) = (discriminant_form(&pencil), discriminant_form(&moved));
        let factor = int(det_s * det_s);
        for (a, b) in f.coefficients.iter().zip(&g.coefficients) {
            prop_assert_eq!(a * &factor, b.clone());
        }
    }
}
