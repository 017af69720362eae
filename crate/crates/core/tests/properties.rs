mod common;

use common::*;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use qlattice::arith::{
    abs_sq, gauss, int, pow2_neg, rat, upper_refine, UpperReal,
};
use qlattice::codec::{
    certificate_from_json, certificate_to_json, operator_from_json, operator_to_json, pl_from_json, pl_to_json,
    state_from_json, state_to_json, subspace_from_json, subspace_to_json, vector_from_json, vector_to_json,
};
use qlattice::hilbert::inner_product;
use qlattice::lattice::{
    certificate_valid, directions, encode, meet, semidecide_not_member, Certificate, Subspace,
};
use qlattice::spectral::{
    integral, valuation_semidecide, valuation_upper, BoundedOperator, ClosedRationalSet, PLFunction,
};
use qlattice::states::{pure_eval, pure_eval_code, PureState, State};
use qlattice::{GaussianRational, Rational, Span, Vector};

fn non_increasing(u: &UpperReal, n: usize) -> bool {
    let b: Vec<Rational> = u.bounds().take(n).collect();
    b.windows(2).all(|w| w[0] >= w[1])
}

fn vector_strategy(support: usize, height: i64) -> impl Strategy<Value = Vector> {
    prop::collection::vec((0..support, -height..=height, -height..=height), 0..6).prop_map(|items| {
        Vector::from_entries(items.into_iter().map(|(i, re, im)| (i, gauss(int(re), int(im)))))
    })
}

fn span_strategy(max_dim: usize, support: usize) -> impl Strategy<Value = Span> {
    prop::collection::vec(vector_strategy(support, 4), 0..=max_dim).prop_map(Span::new)
}

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cauchy_schwarz(x in vector_strategy(8, 6), y in vector_strategy(8, 6)) {
        let ip = inner_product(&x, &y);
        prop_assert!(abs_sq(&ip) <= x.norm_sq() * y.norm_sq());
        prop_assert_eq!(inner_product(&y, &x), ip.conj());
    }

    #[test]
    fn distance_matches_oracle(l in span_strategy(4, 6), c in vector_strategy(6, 5)) {
        let d = l.distance_sq(&c);
        prop_assert_eq!(&d, &oracle_distance_sq(l.generators(), &c));
        prop_assert!(!d.is_negative() && d <= c.norm_sq());
        let p = l.project(&c);
        prop_assert!(l.contains(&p));
        prop_assert_eq!(l.project(&p), p);
    }

    #[test]
    fn meet_laws(a in span_strategy(3, 5), b in span_strategy(3, 5)) {
        let m = meet(&a, &b);
        prop_assert!(m.is_subspace_of(&a) && m.is_subspace_of(&b));
        prop_assert!(m.same_span(&meet(&b, &a)));
        prop_assert!(meet(&a, &a).same_span(&a));
        prop_assert!(meet(&m, &a).same_span(&m));
        prop_assert!(a.is_subspace_of(&a.span_union(&b)));
    }

    #[test]
    fn validity_ignores_generator_scaling(
        l in span_strategy(3, 5),
        seed in any::<u64>(),
        k in (-4i64..=4, -4i64..=4).prop_filter("non-zero", |(a, b)| *a != 0 || *b != 0),
    ) {
        let mut rng = rng(seed);
        let c = random_unit(&mut rng, 5, 4);
        let r = random_radius(&mut rng);
        let z: GaussianRational = gauss(int(k.0), int(k.1));
        let scaled = Span::new(l.generators().iter().map(|g| g.scale(&z)).collect());
        prop_assert_eq!(
            certificate_valid(&l, &c, &r).unwrap(),
            certificate_valid(&scaled, &c, &r).unwrap()
        );
        let phase = c.scale(&gauss(int(0), int(1)));
        prop_assert_eq!(
            certificate_valid(&l, &c, &r).unwrap(),
            certificate_valid(&l, &phase, &r).unwrap()
        );
    }

    #[test]
    fn pure_eval_is_phase_invariant(l in span_strategy(3, 5), seed in any::<u64>()) {
        let mut rng = rng(seed);
        let x = random_unit(&mut rng, 5, 4);
        let s = PureState::new(x.clone()).unwrap();
        let t = PureState::new(x.scale(&gauss(rat(3, 5), rat(-4, 5)))).unwrap();
        let v = pure_eval(&s, &l);
        prop_assert_eq!(&v, &pure_eval(&t, &l));
        prop_assert!(!v.is_negative() && v <= Rational::one());
    }

    #[test]
    fn upper_reals_only_decrease(values in prop::collection::vec(rational_strategy(), 1..30)) {
        let vs = values.clone();
        let u = UpperReal::from_fn(move |n| vs[(n as usize - 1) % vs.len()].clone());
        prop_assert!(non_increasing(&u, 60));
        let min = values.iter().min().unwrap().clone();
        prop_assert_eq!(upper_refine(&u, values.len()), min);
    }

    #[test]
    fn codec_round_trips(x in vector_strategy(8, 9), l in span_strategy(3, 6), seed in any::<u64>()) {
        prop_assert_eq!(vector_from_json(&vector_to_json(&x)).unwrap(), x);
        let back = subspace_from_json(&subspace_to_json(&l)).unwrap();
        prop_assert_eq!(back.generators(), l.generators());
        let mut rng = rng(seed);
        let cert = Certificate::new(random_unit(&mut rng, 6, 5), random_radius(&mut rng)).unwrap();
        prop_assert_eq!(certificate_from_json(&certificate_to_json(&cert)).unwrap(), cert);
        let eigs: Vec<Rational> = (0..4).map(|_| random_unit_interval(&mut rng, 9)).collect();
        let a = BoundedOperator::diagonal(eigs).unwrap();
        prop_assert_eq!(operator_from_json(&operator_to_json(&a).unwrap()).unwrap(), a);
        let s = State::finite(vec![(rat(1, 3), Vector::basis(1)), (rat(2, 3), Vector::basis(4))]).unwrap();
        let back = state_from_json(&state_to_json(&s).unwrap()).unwrap();
        prop_assert_eq!(back.shape(), s.shape());
    }

    #[test]
    fn pl_codec_round_trips(points in prop::collection::btree_map(-20i64..=20, rational_strategy(), 1..6)) {
        let f = PLFunction::new(points.into_iter().map(|(t, v)| (rat(t, 20), v)).collect()).unwrap();
        prop_assert_eq!(pl_from_json(&pl_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn set_text_round_trips(ends in prop::collection::vec((-30i64..=30, 0i64..=10), 0..4)) {
        let items = ends
            .into_iter()
            .map(|(a, w)| qlattice::RationalInterval::new(rat(a, 30), rat(a + w, 30)).unwrap())
            .collect();
        let c = ClosedRationalSet::from_intervals(items);
        prop_assert_eq!(ClosedRationalSet::parse(&c.to_string()).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn not_member_is_monotone_and_sound(l in span_strategy(3, 4), x in vector_strategy(4, 3)) {
        prop_assume!(!x.is_zero());
        let code = encode(&Subspace::Finite(l.clone()));
        let s = semidecide_not_member(&code, &x).unwrap();
        prop_assert!(s.is_monotone_up_to(40));
        if l.contains(&x) {
            prop_assert!(s.first_confirmation(40).is_none());
        }
    }

    #[test]
    fn valuation_semidecision_is_monotone(seed in any::<u64>(), q in 1i64..10) {
        let mut rng = rng(seed);
        let eigs: Vec<Rational> = (0..4).map(|_| random_unit_interval(&mut rng, 9)).collect();
        let a = BoundedOperator::diagonal(eigs).unwrap();
        let x = random_unit(&mut rng, 4, 4);
        let c = ClosedRationalSet::interval(rat(-1, 3), rat(1, 2)).unwrap();
        let s = valuation_semidecide(&a, &x, &c, &rat(q, 10)).unwrap();
        prop_assert!(s.is_monotone_up_to(14));
        prop_assert!(non_increasing(&valuation_upper(&a, &x, &c).unwrap(), 14));
    }

    #[test]
    fn integral_is_linear(seed in any::<u64>(), p in -3i64..=3, q in -3i64..=3) {
        let mut rng = rng(seed);
        let eigs: Vec<Rational> = (0..5).map(|_| random_unit_interval(&mut rng, 11)).collect();
        let a = BoundedOperator::diagonal(eigs).unwrap();
        let x = random_unit(&mut rng, 5, 4);
        let f = PLFunction::new(vec![(int(-1), int(1)), (rat(1, 3), int(-2)), (int(1), int(0))]).unwrap();
        let g = PLFunction::identity();
        let (p, q) = (int(p), int(q));
        let h = PLFunction::combine(&p, &f, &q, &g);
        let eps = pow2_neg(20);
        let lhs = integral(&a, &x, &h, &eps).unwrap();
        let rf = integral(&a, &x, &f, &eps).unwrap().scale(&p);
        let rg = integral(&a, &x, &g, &eps).unwrap().scale(&q);
        let rhs = qlattice::RationalInterval::new(rf.lo() + rg.lo(), rf.hi() + rg.hi()).unwrap();
        prop_assert!(lhs.intersects(&rhs));
        let one = integral(&a, &x, &PLFunction::constant(int(1)), &eps).unwrap();
        prop_assert!(one.contains(&int(1)));
    }
}

/// Infimum of the code bounds equals `pure_eval` within `2^-20` once the
/// direction of `x` has been consumed.
#[test]
fn code_bounds_reach_pure_eval() {
    let mut rng = rng(11);
    let dirs: Vec<Vector> = directions().take(120).collect();
    let target = pow2_neg(20);
    for case in 0..200 {
        let l = random_subspace(&mut rng, 3, 3, 3);
        let k = case % dirs.len();
        let s = PureState::new(dirs[k].clone()).unwrap();
        let exact = pure_eval(&s, &l);
        let u = pure_eval_code(&s, &encode(&Subspace::Finite(l.clone())));
        // the prior 1, then one bound per round
        let bounds: Vec<Rational> = u.bounds().take(k + 2).collect();
        assert!(bounds.iter().all(|b| b >= &exact), "case {case}: bound below s(L)");
        let last = bounds.last().unwrap();
        assert!(last - &exact <= target, "case {case}: {last} vs {exact}");
    }
}

#[test]
fn oracle_matches_on_zero_and_whole_span() {
    let mut rng = rng(12);
    for _ in 0..50 {
        let c = random_unit(&mut rng, 6, 5);
        assert_eq!(oracle_distance_sq(&[], &c), one());
        let all = (0..6).map(Vector::basis).collect::<Vec<_>>();
        assert!(oracle_distance_sq(&all, &c).is_zero());
    }
}
