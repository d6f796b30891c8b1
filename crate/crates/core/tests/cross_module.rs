mod common;

use common::*;
use complete_ideals::fiber_cone::{
    builtin_presentation, enumerate_points_fq, int_point, is_adjacent_point, lies_on_coordinate_subspace, ProjectivePoint,
};
use complete_ideals::field::FieldSpec;
use complete_ideals::oracle::{classify, verify, Bounds, Certificate, Polynomial};
use complete_ideals::{adjacent_below, Cycle, DualGraph, MonomialIdeal};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const F5: FieldSpec = FieldSpec::Prime(5);

fn quadric(coeffs: [i64; 3]) -> Polynomial {
    Polynomial::from_ints(&[(coeffs[0], [2, 0]), (coeffs[1], [1, 1]), (coeffs[2], [0, 2])])
}

fn cubics() -> Vec<Polynomial> {
    (0..=3).map(|i| Polynomial::monomial(1, [i, 3 - i])).collect()
}

/// Generators of `m^3 + ker(lambda)` and a quadric outside `ker(lambda)`,
/// with `lambda` read on the basis `x^2, xy, y^2`.
fn hyperplane_ideal(lambda: [i64; 3]) -> (Vec<Polynomial>, Polynomial) {
    let lead = lambda.iter().position(|&c| c != 0).unwrap();
    let mut gens = cubics();
    for j in 0..3 {
        if j == lead {
            continue;
        }
        // e_j - (lambda_j / lambda_lead) e_lead, scaled to stay integral
        let mut v = [0; 3];
        v[j] = lambda[lead];
        v[lead] = -lambda[j];
        gens.push(quadric(v));
    }
    let mut q = [0; 3];
    q[lead] = 1;
    (gens, quadric(q))
}

#[test]
fn torus_fixed_points_agree() {
    let pres = builtin_presentation("veronese_m2", None, FieldSpec::Rationals).unwrap();
    let cases: [([i64; 3], Vec<Vec<u32>>, bool); 3] = [
        ([1, 0, 0], vec![vec![3, 0], vec![1, 1], vec![0, 2]], true),
        ([0, 0, 1], vec![vec![2, 0], vec![1, 1], vec![0, 3]], true),
        ([0, 1, 0], vec![vec![2, 0], vec![0, 2]], false),
    ];
    for (lambda, gens, expected) in cases {
        assert_eq!(is_adjacent_point(&pres, &int_point(&lambda)).unwrap(), expected, "{lambda:?}");
        let monomial = MonomialIdeal::new(2, gens).unwrap();
        assert_eq!(monomial.is_integrally_closed().unwrap(), expected, "{monomial}");
        let (ideal, q) = hyperplane_ideal(lambda);
        let cert = classify(F5, &q, &ideal, Bounds::default()).unwrap();
        assert_eq!(cert.is_integral(), Some(!expected), "{lambda:?}: {cert:?}");
    }
}

#[test]
fn colength_four_locus_over_f5() {
    let pres = builtin_presentation("veronese_m2", None, F5).unwrap();
    let all = builtin_presentation("an_maximal_ideal", Some(2), F5).unwrap();
    // every point of P^2(F_5): relation XY gives 11 points, so enumerate the
    // plane directly
    let reps: Vec<[i64; 3]> = {
        let mut v = Vec::new();
        for a in 0..5 {
            for b in 0..5 {
                v.push([1, a, b]);
            }
        }
        for b in 0..5 {
            v.push([0, 1, b]);
        }
        v.push([0, 0, 1]);
        v
    };
    assert_eq!(reps.len(), 31);
    assert_eq!(enumerate_points_fq(&all, 13).unwrap().len(), 11);
    let (mut on, mut off, mut unknown) = (0, 0, 0);
    for lambda in reps {
        let on_conic = is_adjacent_point(&pres, &int_point(&lambda)).unwrap();
        let (ideal, q) = hyperplane_ideal(lambda);
        let cert = classify(F5, &q, &ideal, Bounds::default()).unwrap();
        assert!(verify(F5, &q, &ideal, &cert).unwrap());
        match cert.is_integral() {
            Some(true) => {
                assert!(!on_conic, "{lambda:?} certified not closed but on the conic");
                off += 1;
            }
            Some(false) => {
                assert!(on_conic, "{lambda:?} certified closed but off the conic");
                on += 1;
            }
            None => unknown += 1,
        }
    }
    println!("colength-4 locus over F_5: {on} closed, {off} not closed, {unknown} unknown");
    assert_eq!(on + off + unknown, 31);
    assert_eq!(on, 6);
}

#[test]
fn oracle_agrees_with_newton_polyhedra() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut decided, mut unknown, mut instances) = (0, 0, 0);
    while instances < 200 {
        let ideal = random_primary_ideal(&mut rng, 2, 5);
        if ideal.colength().unwrap() > 8 {
            continue;
        }
        instances += 1;
        let v = vec![rng.gen_range(0..5u32), rng.gen_range(0..5u32)];
        let y = Polynomial::monomial(1, [v[0], v[1]]);
        let gens: Vec<Polynomial> = ideal.gens().iter().map(|g| Polynomial::monomial(1, [g[0], g[1]])).collect();
        let field = FieldSpec::Prime([2, 3, 5][instances % 3]);
        let cert = classify(field, &y, &gens, Bounds::default()).expect("no conflict");
        assert!(verify(field, &y, &gens, &cert).unwrap());
        match cert.is_integral() {
            Some(verdict) => {
                decided += 1;
                assert_eq!(verdict, newton_membership_oracle(ideal.gens(), &v), "{v:?} over {ideal}");
            }
            None => unknown += 1,
        }
    }
    println!("oracle on monomial instances: {decided} decided, {unknown} unknown");
}

#[test]
fn a_n_points_match_adjacency_families() {
    for n in 1..=6 {
        let report = adjacent_below(&DualGraph::a_n(n), &Cycle::reduced(n)).unwrap();
        let (_, free, satellite) = report.counts();
        for q in [2, 3, 5] {
            let field = FieldSpec::Prime(q);
            let pres = builtin_presentation("an_maximal_ideal", Some(n as u32), field).unwrap();
            let points = enumerate_points_fq(&pres, 13).unwrap();
            let q = q as usize;
            if n == 1 {
                assert_eq!(points.len(), q + 1);
                assert_eq!((free, satellite), (1, 0));
                continue;
            }
            assert_eq!(points.len(), 2 * q + 1);
            let on_x = points.iter().filter(|p| lies_on_coordinate_subspace(p, &[0])).count();
            let on_y = points.iter().filter(|p| lies_on_coordinate_subspace(p, &[1])).count();
            let both = points.iter().filter(|p| lies_on_coordinate_subspace(p, &[0, 1])).count();
            assert_eq!((on_x, on_y, both), (q + 1, q + 1, 1));
            assert_eq!(free, 2);
        }
    }
}

proptest! {
    #![proptest_config(proptest_config(256))]

    #[test]
    fn point_criterion_is_projective(a in -6i64..=6, b in -6i64..=6, c in -6i64..=6, s in 1i64..=9, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        prop_assume!((a, b, c) != (0, 0, 0));
        let field = FieldSpec::Prime(p);
        prop_assume!(s % p as i64 != 0);
        for pres in [builtin_presentation("veronese_m2", None, field).unwrap(), builtin_presentation("an_maximal_ideal", Some(1), field).unwrap()] {
            let lambda = int_point(&[a, b, c]);
            let scaled = int_point(&[s * a, s * b, s * c]);
            prop_assume!(ProjectivePoint::new(field, &lambda).is_ok());
            prop_assert_eq!(is_adjacent_point(&pres, &lambda).unwrap(), is_adjacent_point(&pres, &scaled).unwrap());
        }
        let pres = builtin_presentation("veronese_m2", None, FieldSpec::Rationals).unwrap();
        let lambda = int_point(&[a, b, c]);
        let scaled_down: Vec<BigRational> = lambda.iter().map(|x| x / BigRational::from_integer((-s).into())).collect();
        prop_assert_eq!(is_adjacent_point(&pres, &lambda).unwrap(), is_adjacent_point(&pres, &scaled_down).unwrap());
    }

    #[test]
    fn oracle_never_conflicts(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let terms: Vec<(i64, [u32; 2])> = (0..rng.gen_range(1..=2))
                    .map(|_| (rng.gen_range(1..5), [rng.gen_range(0..4), rng.gen_range(0..4)]))
                    .collect();
                Polynomial::from_ints(&terms)
            })
            .collect();
        let y = Polynomial::from_ints(&[(1, [rng.gen_range(0..4), rng.gen_range(0..4)]), (rng.gen_range(0..3), [rng.gen_range(0..3), rng.gen_range(0..3)])]);
        let bounds = Bounds { n_max: 2, deg_max: 8, weight_bound: 3 };
        let cert = classify(F5, &y, &gens, bounds);
        prop_assert!(cert.is_ok(), "conflict on y = {:?}, I = {:?}", y, gens);
        prop_assert!(verify(F5, &y, &gens, &cert.unwrap()).unwrap());
    }
}

#[test]
fn certificates_round_trip_through_json() {
    let (ideal, q) = hyperplane_ideal([0, 1, 0]);
    let cert = classify(F5, &q, &ideal, Bounds::default()).unwrap();
    let text = serde_json::to_string(&cert).unwrap();
    assert_eq!(serde_json::from_str::<Certificate>(&text).unwrap(), cert);
}
