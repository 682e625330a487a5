mod common;

use common::{arrows, groupoid, labelled_groupoid, q, std};
use proptest::prelude::*;
use weakhopf::baseobject::{build_actions, build_base};
use weakhopf::entwining::build_entwining;
use weakhopf::exactmat::kernel_basis;
use weakhopf::galois::{build_galois, GaloisData, Invertibility};
use weakhopf::instances::GroupoidSpec;
use weakhopf::{Error, Mat, TensorMap, WeakBraidedBimonad};

fn galois(b: &WeakBraidedBimonad) -> GaloisData {
    let en = build_entwining(b).unwrap();
    let base = build_base(b, &en.maps).unwrap();
    let actions = build_actions(b, &base).unwrap();
    build_galois(b, &en, &base, &actions).unwrap()
}

/// Pairs `(a, b)` of arrows with `target(a) = source(b)`.
fn composable_pairs(spec: &GroupoidSpec) -> usize {
    let ar = arrows(spec);
    ar.iter().flat_map(|a| ar.iter().map(move |b| (a, b))).filter(|(a, b)| a.1 == b.0).count()
}

#[test]
fn dimensions_and_verdicts() {
    let cases = [("g2", 8, 8, 8), ("k2", 2, 2, 2), ("z2", 4, 4, 4), ("sl", 4, 4, 4), ("nz", 4, 4, 3)];
    for (name, t, c, gamma_rank) in cases {
        let g = galois(&std(name));
        assert_eq!(g.tensor_dim(), t, "{name}");
        assert_eq!(g.cotensor_dim, c, "{name}");
        assert_eq!(g.gamma_verdict.rank, gamma_rank, "{name}");
        assert_eq!(g.gamma_verdict.invertible, name != "nz", "{name}");
        assert!(g.report.all_hold(), "{name}: {:?}", g.report.failed_ids());
    }
}

#[test]
fn nz_gamma_is_square_but_singular() {
    let g = galois(&std("nz"));
    assert_eq!(g.gamma_verdict, Invertibility { rows: 4, cols: 4, rank: 3, invertible: false });
}

#[test]
fn group_algebra_gamma_is_sigma() {
    let b = std("z2");
    let g = galois(&b);
    let en = build_entwining(&b).unwrap();
    // Over a one-dimensional base nothing is identified and the splittings are trivial.
    assert!(g.l().mat().is_identity());
    assert_eq!(g.gamma.mat(), en.maps.sigma.mat());
}

#[test]
fn unbarred_sigma_does_not_reach_the_cotensor_product() {
    let b = std("g2");
    let en = build_entwining(&b).unwrap();
    let base = build_base(&b, &en.maps).unwrap();
    let a = build_actions(&b, &base).unwrap();
    let h1 = b.id(1);
    let relations = a.theta_r.tensor(&h1).minus(&h1.tensor(&a.theta_l)).unwrap();
    let barred = en.i_bar_prime(4).then(&en.maps.sigma_bar).unwrap().then(&relations).unwrap();
    let unbarred = en.i_bar_prime(4).then(&en.maps.sigma).unwrap().then(&relations).unwrap();
    assert!(barred.mat().is_zero());
    assert!(!unbarred.mat().is_zero());
}

#[test]
fn build_galois_needs_a_valid_base() {
    let mut b = std("g2");
    b.coa.eps = b.eps().scale(&q(2));
    assert!(matches!(build_entwining(&b), Err(Error::PrerequisiteAxiomFailed(_))));
}

/// Matrix of `X ↦ X∗1` on row-major vectorised endomorphisms.
fn right_convolution_by_identity(b: &WeakBraidedBimonad) -> Mat {
    let n = b.n();
    let mut phi = Mat::zeros(n * n, n * n);
    for k in 0..n * n {
        let unit = TensorMap::new(vec![n], vec![n], Mat::from_fn(n, n, |r, c| if r * n + c == k { q(1) } else { q(0) })).unwrap();
        let image = b.conv(&unit, &b.id(1));
        for (r, c, v) in image.mat().nonzeros() {
            phi.set(r * n + c, k, v.clone());
        }
    }
    phi
}

fn kernel_vectors(b: &WeakBraidedBimonad) -> Vec<TensorMap> {
    let n = b.n();
    let ker = kernel_basis(&right_convolution_by_identity(b));
    (0..ker.cols())
        .map(|col| TensorMap::new(vec![n], vec![n], Mat::from_fn(n, n, |r, c| ker.get(r * n + c, col).clone())).unwrap())
        .collect()
}

#[test]
fn with_an_antipode_the_kernel_of_convolution_by_identity_is_killed_by_xi() {
    // X∗1 = 0 gives X∗ξ = X∗1∗S = 0.
    for name in ["g2", "k2", "z2", "sl"] {
        let b = std(name);
        let xi = build_entwining(&b).unwrap().maps.xi;
        for (k, v) in kernel_vectors(&b).iter().enumerate() {
            assert!(b.conv(v, &xi).mat().is_zero(), "{name}: kernel vector {k}");
        }
    }
}

#[test]
fn without_an_antipode_the_kernel_survives_xi() {
    let b = std("nz");
    let xi = build_entwining(&b).unwrap().maps.xi;
    let ker = kernel_vectors(&b);
    assert!(!ker.is_empty());
    assert!(ker.iter().any(|v| !b.conv(v, &xi).mat().is_zero()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn groupoid_galois_maps_are_invertible(spec in labelled_groupoid()) {
        let g = galois(&groupoid(&spec));
        let pairs = composable_pairs(&spec);
        prop_assert_eq!(g.tensor_dim(), pairs);
        prop_assert_eq!(g.cotensor_dim, pairs);
        prop_assert!(g.gamma_verdict.invertible);
        prop_assert!(g.gamma_prime_verdict.invertible);
        prop_assert!(g.report.all_hold());
    }
}
