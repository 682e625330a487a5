mod common;

use common::{groupoid, labelled_groupoid, q, std};
use proptest::prelude::*;
use weakhopf::catalog::{induced_point_module, point_base_module, shipped_files};
use weakhopf::entwining::EntwiningMaps;
use weakhopf::exactmat::rank;
use weakhopf::hopf::{build_pipeline, fundamental_verdict, Pipeline};
use weakhopf::hopfmodules::{
    check_mixed_bimodule, coinvariants, fundamental_roundtrip, induced_comonad_on_module, induced_monad_on_comodule,
    k_omega, roundtrip_from_base_module, HComodule, HModule, MixedBimodule,
};
use weakhopf::instances::module_from_str;
use weakhopf::{Error, TensorMap, WeakBraidedBimonad};

fn antipode(b: &WeakBraidedBimonad) -> TensorMap {
    fundamental_verdict(b).unwrap().from_galois.expect("Hopf instance").s
}

fn setup(name: &str) -> (WeakBraidedBimonad, Pipeline, TensorMap) {
    let b = std(name);
    let p = build_pipeline(&b).unwrap();
    let s = antipode(&b);
    (b, p, s)
}

#[test]
fn comonad_idempotent_on_the_regular_module_is_kappa() {
    let b = std("g2");
    let en = EntwiningMaps::compute(&b);
    let regular = HModule::new(4, 4, b.m().clone()).unwrap();
    let g = induced_comonad_on_module(&b, &en, &regular).unwrap();
    let lv = &g.levels[0];
    assert_eq!(&lv.i.mat().mul(lv.p.mat()).unwrap(), en.kappa.mat());
    assert!(g.report.all_hold(), "{:?}", g.report.failed_ids());
    assert_eq!(g.dims()[..2], [4, 8]);
}

#[test]
fn monad_idempotent_on_the_regular_comodule_is_kappa_prime() {
    let b = std("g2");
    let en = EntwiningMaps::compute(&b);
    let regular = HComodule::new(4, 4, b.delta().clone()).unwrap();
    let t = induced_monad_on_comodule(&b, &en, &regular).unwrap();
    let lv = &t.levels[0];
    assert_eq!(&lv.i.mat().mul(lv.p.mat()).unwrap(), en.kappa_prime.mat());
    assert!(t.report.all_hold(), "{:?}", t.report.failed_ids());
}

#[test]
fn induced_monads_hold_on_every_instance() {
    for name in ["g2", "k2", "z2", "sl", "nz"] {
        let b = std(name);
        let en = EntwiningMaps::compute(&b);
        let mb = k_omega(&b, 1).unwrap();
        let g = induced_comonad_on_module(&b, &en, &mb.module()).unwrap();
        let t = induced_monad_on_comodule(&b, &en, &mb.comodule()).unwrap();
        assert!(g.report.all_hold(), "{name}: {:?}", g.report.failed_ids());
        assert!(t.report.all_hold(), "{name}: {:?}", t.report.failed_ids());
    }
}

#[test]
fn regular_coinvariants_are_the_base() {
    for (name, r) in [("g2", 2), ("z2", 1), ("k2", 2), ("sl", 1)] {
        let (b, p, s) = setup(name);
        let mb = k_omega(&b, 1).unwrap();
        let co = coinvariants(&b, &p.en.maps, Some(&s), &mb).unwrap();
        assert_eq!(co.dim, r, "{name}");
        let joint = co.iota.mat().hstack(p.base.iota.mat()).unwrap();
        assert_eq!(rank(&joint), r, "{name}: coinvariants differ from the base");
        assert!(co.report.all_hold(), "{name}: {:?}", co.report.failed_ids());
    }
}

#[test]
fn beta_projects_onto_coinvariants_on_every_shipped_module() {
    for f in shipped_files().unwrap().into_iter().filter(|f| f.file.ends_with(".module")) {
        let (b, p, s) = setup(&f.instance);
        let mb = module_from_str(&f.text, b.n()).unwrap();
        let co = coinvariants(&b, &p.en.maps, Some(&s), &mb).unwrap();
        assert!(co.beta.is_some());
        assert!(co.report.all_hold(), "{}: {:?}", f.file, co.report.failed_ids());
    }
}

#[test]
fn zero_dimensional_carrier() {
    let (b, p, s) = setup("g2");
    let mb = k_omega(&b, 0).unwrap();
    assert_eq!(mb.dim, 0);
    assert!(check_mixed_bimodule(&b, &p.en.maps, &mb).all_hold());
    let co = coinvariants(&b, &p.en.maps, Some(&s), &mb).unwrap();
    assert_eq!(co.dim, 0);
    assert!(co.report.all_hold());
}

#[test]
fn roundtrip_through_coinvariants() {
    let (b, p, s) = setup("g2");
    for (d, mid) in [(1, 2), (2, 4)] {
        let mb = k_omega(&b, d).unwrap();
        let rt = fundamental_roundtrip(&b, &p.en.maps, &p.base, &s, &mb).unwrap();
        assert_eq!((rt.start_dim, rt.intermediate_dim, rt.end_dim), (4 * d, mid, 4 * d));
        assert!(rt.comparison.invertible);
        assert!(rt.report.all_hold(), "{:?}", rt.report.failed_ids());
    }
    let point = induced_point_module(&b).unwrap();
    let rt = fundamental_roundtrip(&b, &p.en.maps, &p.base, &s, &point).unwrap();
    assert_eq!((rt.start_dim, rt.intermediate_dim, rt.end_dim), (2, 1, 2));
}

#[test]
fn roundtrip_from_the_point_base_module() {
    let (b, p, s) = setup("g2");
    let nm = point_base_module(&b).unwrap();
    let rt = roundtrip_from_base_module(&b, &p.en.maps, &p.base, &s, &nm).unwrap();
    assert_eq!((rt.start_dim, rt.intermediate_dim, rt.end_dim), (1, 2, 1));
    assert!(rt.report.all_hold(), "{:?}", rt.report.failed_ids());
}

#[test]
fn trivial_coaction_is_incompatible_with_multiplication() {
    // On a group algebra h ↦ 1⊗h is a comodule, but θ(gh) = 1⊗gh while the
    // ω-twisted side gives g⊗gh.
    let b = std("z2");
    let en = EntwiningMaps::compute(&b);
    let theta = b.e().tensor(&b.id(1));
    let mb = MixedBimodule::new(2, 2, b.m().clone(), theta).unwrap();
    let r = check_mixed_bimodule(&b, &en, &mb);
    assert!(r.holds("hmod.module"));
    assert!(r.holds("hmod.comodule"));
    assert!(!r.holds("hmod.omega_square"));
    let s = antipode(&b);
    assert!(matches!(coinvariants(&b, &en, Some(&s), &mb), Err(Error::PrerequisiteAxiomFailed(_))));
}

#[test]
fn scaled_coaction_breaks_the_comodule() {
    let b = std("g2");
    let en = EntwiningMaps::compute(&b);
    let mut mb = k_omega(&b, 1).unwrap();
    mb.theta = mb.theta.scale(&q(2));
    let r = check_mixed_bimodule(&b, &en, &mb);
    assert!(!r.holds("hmod.comodule"));
    // Both sides of the compatibility square are linear in θ.
    assert!(r.holds("hmod.omega_square"));
}

#[test]
fn k_omega_needs_a_bimonad() {
    let mut b = std("g2");
    b.coa.eps = b.eps().scale(&q(2));
    assert!(matches!(k_omega(&b, 1), Err(Error::PrerequisiteAxiomFailed(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn coinvariants_of_a_free_module_scale_with_the_base(spec in labelled_groupoid(), d in 1usize..3) {
        let b = groupoid(&spec);
        let p = build_pipeline(&b).unwrap();
        let s = antipode(&b);
        let mb = k_omega(&b, d).unwrap();
        let co = coinvariants(&b, &p.en.maps, Some(&s), &mb).unwrap();
        prop_assert_eq!(co.dim, p.base.r * d);
        prop_assert!(co.report.all_hold());
        let rt = fundamental_roundtrip(&b, &p.en.maps, &p.base, &s, &mb).unwrap();
        prop_assert_eq!(rt.end_dim, mb.dim);
    }
}
