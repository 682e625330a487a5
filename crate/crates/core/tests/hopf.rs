mod common;

use common::{arrows, basis_map, groupoid, labelled_groupoid, std};
use proptest::prelude::*;
use weakhopf::entwining::EntwiningMaps;
use weakhopf::exactmat::Scalar;
use weakhopf::hopf::{
    build_pipeline, check_antipode, construct_antipode_from_galois, fundamental_verdict, solve_antipode_linear,
    AntipodeOrigin, AntipodeSearch,
};
use weakhopf::instances::{cyclic_group, groupoid_antipode, GroupoidSpec};
use weakhopf::{Error, Float, Rational, TensorMap, WeakBraidedBimonad};

/// `S(g_st) = g_ts`.
fn inversion(spec: &GroupoidSpec) -> TensorMap {
    let ar = arrows(spec);
    basis_map(ar.len(), 1, 1, |i| {
        let (s, t) = ar[i[0]];
        vec![(vec![ar.iter().position(|&a| a == (t, s)).unwrap()], 1)]
    })
}

fn both_paths(b: &WeakBraidedBimonad) -> (TensorMap, TensorMap) {
    let p = build_pipeline(b).unwrap();
    let galois = construct_antipode_from_galois(b, &p.en, &p.galois).unwrap();
    assert_eq!(galois.origin, AntipodeOrigin::FromGalois);
    let linear = match solve_antipode_linear(b, &p.en.maps).unwrap() {
        AntipodeSearch::Found(a) => a,
        other => panic!("{}: {other:?}", b.name),
    };
    assert_eq!(linear.origin, AntipodeOrigin::FromLinearSolve);
    (galois.s, linear.s)
}

#[test]
fn groupoid_antipode_inverts_arrows() {
    let spec = GroupoidSpec::full(2);
    let b = groupoid(&spec);
    let oracle = inversion(&spec);
    let (g, l) = both_paths(&b);
    assert_eq!(g, oracle);
    assert_eq!(l, oracle);
    assert_eq!(groupoid_antipode(&spec).unwrap(), oracle);
}

#[test]
fn super_line_antipode_negates_the_generator() {
    let b = std("sl");
    let oracle = basis_map(2, 1, 1, |i| if i[0] == 0 { vec![(vec![0], 1)] } else { vec![(vec![1], -1)] });
    let (g, l) = both_paths(&b);
    assert_eq!(g, oracle);
    assert_eq!(l, oracle);
}

#[test]
fn cyclic_antipode_is_group_inversion() {
    let b = cyclic_group(3).unwrap();
    let oracle = basis_map(3, 1, 1, |i| vec![(vec![(3 - i[0]) % 3], 1)]);
    let (g, l) = both_paths(&b);
    assert_eq!(g, oracle);
    assert_eq!(l, oracle);
}

#[test]
fn identity_is_not_an_antipode_on_g2() {
    let b = std("g2");
    let en = EntwiningMaps::compute(&b);
    let r = check_antipode(&b, &en, &b.id(1));
    // 1∗1 sends g_st to g_st·g_st, which is not g_ss off the diagonal.
    assert!(!r.holds("antipode.left"));
    assert!(!r.holds("antipode.right"));
}

#[test]
fn wrongly_typed_candidate_fails_every_check() {
    let b = std("g2");
    let en = EntwiningMaps::compute(&b);
    let r = check_antipode(&b, &en, &b.id(2));
    assert_eq!(r.failed_ids().len(), 4);
}

#[test]
fn idempotent_monoid_has_no_antipode() {
    let b = std("nz");
    let p = build_pipeline(&b).unwrap();
    // S(z)·z = 1 has no solution, and the constraints on S(z) collapse to one equation.
    assert_eq!(
        solve_antipode_linear(&b, &p.en.maps).unwrap(),
        AntipodeSearch::NoSolution { system_rank: 3, unknowns: 4 }
    );
    assert_eq!(
        construct_antipode_from_galois(&b, &p.en, &p.galois).unwrap_err(),
        Error::GaloisNotInvertible { rows: 4, cols: 4, rank: 3 }
    );
}

#[test]
fn verdicts_agree_on_every_standard_instance() {
    for name in ["g2", "k2", "z2", "sl", "nz"] {
        let v = fundamental_verdict(&std(name)).unwrap();
        let hopf = name != "nz";
        assert_eq!(v.hopf, hopf, "{name}");
        assert_eq!(v.antipode_exists, Some(hopf), "{name}");
        assert_eq!(v.gamma.invertible, hopf, "{name}");
        assert_eq!(v.gamma_prime.invertible, hopf, "{name}");
        assert_eq!(v.antipodes_agree, hopf.then_some(true), "{name}");
        assert!(v.identities.all_hold(), "{name}: {:?}", v.identities.failed_ids());
        assert_eq!(v.roundtrip.is_some(), hopf, "{name}");
    }
}

#[test]
fn float_mode_reaches_the_same_verdict() {
    let b: WeakBraidedBimonad<Float> = std("g2").map_scalar(|q: &Rational| Float::from_rational(q));
    let v = fundamental_verdict(&b).unwrap();
    assert!(v.hopf);
    let nz: WeakBraidedBimonad<Float> = std("nz").map_scalar(|q: &Rational| Float::from_rational(q));
    assert!(!fundamental_verdict(&nz).unwrap().hopf);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn groupoid_antipodes_agree_with_inversion(spec in labelled_groupoid()) {
        let b = groupoid(&spec);
        let oracle = inversion(&spec);
        let (g, l) = both_paths(&b);
        prop_assert_eq!(&g, &oracle);
        prop_assert_eq!(&l, &oracle);
        prop_assert_eq!(groupoid_antipode(&spec).unwrap(), oracle);
    }

    #[test]
    fn cyclic_antipodes_agree_with_inversion(k in 1usize..5) {
        let b = cyclic_group(k).unwrap();
        let oracle = basis_map(k, 1, 1, |i| vec![(vec![(k - i[0]) % k], 1)]);
        let (g, l) = both_paths(&b);
        prop_assert_eq!(g, oracle.clone());
        prop_assert_eq!(l, oracle);
    }
}
