mod common;

use common::{arrows, basis_map, groupoid, labelled_groupoid, std};
use proptest::prelude::*;
use weakhopf::entwining::{build_entwining, check_derived_identities, check_weak_entwining, EntwiningMaps};
use weakhopf::exactmat::rank;
use weakhopf::instances::GroupoidSpec;
use weakhopf::TensorMap;

fn position(arrows: &[(usize, usize)], a: (usize, usize)) -> usize {
    arrows.iter().position(|&x| x == a).unwrap()
}

/// `ξ(g_st) = g_ss`, `ξ̄(g_st) = g_tt` and `κ(g_st ⊗ g_uv) = [s = u] g_st ⊗ g_uv`.
fn groupoid_oracles(spec: &GroupoidSpec) -> (TensorMap, TensorMap, TensorMap) {
    let ar = arrows(spec);
    let n = ar.len();
    let xi = basis_map(n, 1, 1, |i| vec![(vec![position(&ar, (ar[i[0]].0, ar[i[0]].0))], 1)]);
    let xi_bar = basis_map(n, 1, 1, |i| vec![(vec![position(&ar, (ar[i[0]].1, ar[i[0]].1))], 1)]);
    let kappa = basis_map(n, 2, 2, |i| if ar[i[0]].0 == ar[i[1]].0 { vec![(i.to_vec(), 1)] } else { vec![] });
    (xi, xi_bar, kappa)
}

#[test]
fn g2_maps_match_closed_forms() {
    let spec = GroupoidSpec::full(2);
    let en = EntwiningMaps::compute(&groupoid(&spec));
    let (xi, xi_bar, kappa) = groupoid_oracles(&spec);
    assert_eq!(en.xi, xi);
    assert_eq!(en.xi_bar, xi_bar);
    assert_eq!(en.kappa, kappa);
    assert_eq!(rank(en.kappa.mat()), 8);
}

#[test]
fn kappa_is_identity_for_a_group_algebra() {
    let b = std("z2");
    let en = EntwiningMaps::compute(&b);
    assert_eq!(en.kappa, b.id(2));
    assert_eq!(en.xi, b.e_eps());
}

#[test]
fn every_standard_instance_entwines() {
    for name in ["g2", "k2", "z2", "sl", "nz"] {
        let b = std(name);
        let en = EntwiningMaps::compute(&b);
        let r = check_weak_entwining(&en, &b);
        assert!(r.all_hold(), "{name}: {:?}", r.failed_ids());
        let d = check_derived_identities(&en, &b);
        assert!(d.all_hold(), "{name}: {:?}", d.failed_ids());
    }
}

#[test]
fn splittings_have_the_rank_of_kappa() {
    let data = build_entwining(&std("g2")).unwrap();
    assert_eq!(data.gbar_dim(), 8);
    assert_eq!(data.tbar_dim(), rank(data.maps.kappa_prime.mat()));
    let n = 4;
    let e = data.i_bar(n).mat().mul(data.p_bar(n).mat()).unwrap();
    assert_eq!(&e, data.maps.kappa.mat());
}

#[test]
fn trivial_braiding_breaks_compatibility() {
    let b = std("g2");
    let broken = b.with_tau(b.id(2), b.id(2)).unwrap();
    let en = EntwiningMaps::compute(&broken);
    assert!(!check_weak_entwining(&en, &broken).holds("ent.compat"));
}

#[test]
fn mixed_idempotent_identities_on_the_dual_pair_groupoid() {
    let d = weakhopf::instances::dual_instance(&std("g2"));
    let en = build_entwining(&d).unwrap();
    // Here χ̄ and ξ̄ differ, so χ̄·ξ̄ = χ̄ is not vacuous.
    assert_ne!(en.chi_bar, en.xi_bar);
    assert_eq!(en.xi_bar.then(&en.chi_bar).unwrap(), en.chi_bar);
    let report = check_derived_identities(&en, &d);
    assert!(report.holds("avr.6"));
    assert!(report.all_hold());
}

#[test]
fn build_refuses_a_broken_bimonad() {
    let mut b = std("g2");
    b.coa.eps = b.eps().scale(&common::q(2));
    assert!(matches!(build_entwining(&b), Err(weakhopf::Error::PrerequisiteAxiomFailed(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn groupoid_maps_match_closed_forms(spec in labelled_groupoid()) {
        let b = groupoid(&spec);
        let en = EntwiningMaps::compute(&b);
        let (xi, xi_bar, kappa) = groupoid_oracles(&spec);
        prop_assert_eq!(&en.xi, &xi);
        prop_assert_eq!(&en.xi_bar, &xi_bar);
        prop_assert_eq!(&en.kappa, &kappa);
        let per_source: usize = (0..spec.objects)
            .map(|s| spec.arrows.iter().filter(|a| a.0 == s).count().pow(2))
            .sum();
        prop_assert_eq!(rank(en.kappa.mat()), per_source);
    }

    #[test]
    fn groupoid_identities_hold(spec in labelled_groupoid()) {
        let b = groupoid(&spec);
        let en = EntwiningMaps::compute(&b);
        prop_assert!(check_weak_entwining(&en, &b).all_hold());
        prop_assert!(check_derived_identities(&en, &b).all_hold());
    }
}
