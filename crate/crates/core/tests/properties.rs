mod common;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use kamhn::field::{counts, counts_par, make_field, CountSeries, LogSum};
use kamhn::kamhn::{draw_t, kamhn_decide, t_range, verify_witness, Answer};
use kamhn::modp::{count_distinct_roots, degree_profile, reduce, system_has_root, RootSearch};
use kamhn::nullcert::{power_of_two_above, stride_constants, Regime, StrideConfig};
use kamhn::poly::{
    discriminant, parse_poly, parse_system, squarefree_part, Poly, PolySystem, UniPoly,
};

const PRIMES: [u64; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

fn uni() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-50i64..=50, 1..=9).prop_map(|mut c| {
        let last = c.len() - 1;
        if c[last] == 0 {
            c[last] = 1;
        }
        UniPoly::from_i64(&c)
    })
}

fn nonconstant() -> impl Strategy<Value = UniPoly> {
    uni().prop_filter("nonconstant", |f| !f.is_constant())
}

fn poly(n: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-20i64..=20, prop::collection::vec(0u64..=3, n)), 1..=5)
        .prop_map(move |ts| Poly::from_terms(n, ts.into_iter().map(|(c, e)| (BigInt::from(c), e))))
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn root_count_matches_enumeration(f in uni(), p in prime()) {
        match count_distinct_roots(&f, p) {
            Ok(c) => prop_assert_eq!(c, common::brute_root_count(&f, p)),
            Err(_) => prop_assert!(reduce(&f, p).is_zero()),
        }
    }

    #[test]
    fn profile_accounts_for_the_radical(f in nonconstant(), p in prime()) {
        prop_assume!(!reduce(&f, p).is_zero());
        let prof = degree_profile(&f, p).unwrap();
        let rad = reduce(&f, p).radical();
        prop_assert_eq!(prof.degree_sum(), rad.degree().unwrap_or(0));
        prop_assert_eq!(prof.linear(), count_distinct_roots(&f, p).unwrap());
    }

    #[test]
    fn unramified_profile_sums_to_degree(f in nonconstant(), p in prime()) {
        let g = squarefree_part(&f).unwrap();
        let lc_disc = g.lc() * discriminant(&g).unwrap();
        prop_assume!(!(lc_disc % BigInt::from(p) == BigInt::from(0)));
        prop_assert_eq!(degree_profile(&g, p).unwrap().degree_sum(), g.degree().unwrap());
    }

    #[test]
    fn system_search_is_sound_and_complete(a in poly(2), b in poly(2), p in prime()) {
        let sys = PolySystem::new(2, vec![a, b]).unwrap();
        let roots = common::brute_roots(&sys, p);
        match system_has_root(&sys, p, 10_000) {
            RootSearch::Yes(pt) => prop_assert!(roots.contains(&pt)),
            RootSearch::No => prop_assert!(roots.is_empty()),
            RootSearch::Unknown => prop_assert!(false, "unknown within budget"),
        }
    }

    #[test]
    fn parse_print_roundtrip(f in poly(3)) {
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text, 3).unwrap(), f);
    }

    #[test]
    fn logsum_merge_is_order_free(ws in prop::collection::vec((prop::sample::select(PRIMES.to_vec()), 0u64..5), 0..30), cut in 0usize..30) {
        let cut = cut.min(ws.len());
        let mut all = LogSum::default();
        let (mut left, mut right) = (LogSum::default(), LogSum::default());
        for (i, &(p, w)) in ws.iter().enumerate() {
            all.add(p, w);
            if i < cut { left.add(p, w) } else { right.add(p, w) }
        }
        prop_assert_eq!(left.clone().merge(right.clone()), all.clone());
        prop_assert_eq!(right.merge(left), all);
    }

    #[test]
    fn power_of_two_is_tight(v in any::<i64>()) {
        let v = BigInt::from(v);
        let t = power_of_two_above(&v);
        prop_assert!(t.count_ones() == 1);
        let t = BigInt::from(t);
        prop_assert!(t > v.abs());
        prop_assert!(&t / 2 <= v.abs() || t == BigInt::from(1));
    }

    #[test]
    fn gipit_threshold_exceeds_discriminant(f in nonconstant()) {
        let k = make_field(&f).unwrap();
        let sys = PolySystem::univariate(std::slice::from_ref(k.f())).unwrap();
        let cfg = StrideConfig { regime: Regime::Gipit, kappa: 0.0, ..StrideConfig::default() };
        if let Ok(sc) = stride_constants(&sys, Some(&k), &cfg) {
            prop_assert!(sc.t_f.is_power_of_two());
            prop_assert!(BigInt::from(sc.t_f) > k.disc().abs());
        }
    }

    #[test]
    fn draws_stay_in_range(seed in any::<u64>(), t in 2u64..1000, a in 1u64..50) {
        let sys = parse_system("x1 - 1").unwrap();
        let sc = stride_constants(&sys, None, &StrideConfig::manual(t, a, 2)).unwrap();
        let (lo, span) = t_range(&sc);
        let d = draw_t(&sc, seed);
        prop_assert!(d >= lo && u128::from(d - lo) < span);
        prop_assert_eq!(d, draw_t(&sc, seed));
    }

    #[test]
    fn witnesses_verify_and_runs_repeat(f in nonconstant(), g in uni(), seed in any::<u64>()) {
        let sys = PolySystem::univariate(&[f, g]).unwrap();
        let sc = stride_constants(&sys, None, &StrideConfig::manual(2, 3, 2)).unwrap();
        let d = kamhn_decide(&sys, &sc, seed, 100_000);
        if d.answer == Answer::HasComplexRoot {
            prop_assert!(verify_witness(&sys, d.witness.as_ref().unwrap()));
        }
        prop_assert_eq!(&d, &kamhn_decide(&sys, &sc, seed, 100_000));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counts_are_monotone(f in nonconstant(), x in 16u64..3000) {
        let k = make_field(&f).unwrap();
        let s = CountSeries::build(&k, 3000).unwrap();
        let (a, b) = (s.at(x), s.at(x + 1));
        prop_assert!(a.n_f <= b.n_f && a.pi1 <= b.pi1 && a.pi_k <= b.pi_k);
        prop_assert!(a.psi_k <= b.psi_k && a.theta_k <= b.theta_k);
        prop_assert!(a.theta_k <= a.psi_k);
    }

    #[test]
    fn parallel_counts_equal_sequential(f in nonconstant(), x in 2u64..20_000, chunk in 1usize..64) {
        let k = make_field(&f).unwrap();
        let seq = counts(&k, x as f64).unwrap();
        prop_assert_eq!(&counts_par(&k, x as f64, chunk).unwrap(), &seq);
        prop_assert_eq!(CountSeries::build(&k, x.max(2)).unwrap().at(x), seq);
    }
}
