use proptest::prelude::*;
use weakhopf::bimonad::{check_all_axioms, check_weak_braided_bimonad, Algebra, Coalgebra, WeakYBPair};
use weakhopf::catalog::standard_instances;
use weakhopf::exactmat::invert;
use weakhopf::instances::cyclic_group;
use weakhopf::{Mat, Rational, Scalar, TensorMap, WeakBraidedBimonad};

fn q(v: i64) -> Rational {
    <Rational as Scalar>::from_i64(v)
}

fn g2() -> WeakBraidedBimonad {
    weakhopf::catalog::standard_instance("g2").unwrap()
}

fn sorted(mut ids: Vec<String>) -> Vec<String> {
    ids.sort();
    ids
}

/// Transport every structure map along the change of basis `p`.
fn transport(b: &WeakBraidedBimonad, p: &Mat) -> WeakBraidedBimonad {
    let n = b.n();
    let pi = invert(p).unwrap();
    let tm = |dom: usize, cod: usize, m: Mat| TensorMap::new(vec![n; dom], vec![n; cod], m).unwrap();
    let pow = |m: &Mat, k: usize| (0..k).fold(Mat::identity(1), |acc, _| acc.kron(m));
    let conj = |f: &TensorMap| {
        let (i, o) = (f.in_arity(), f.out_arity());
        tm(i, o, pow(p, o).mul(f.mat()).unwrap().mul(&pow(&pi, i)).unwrap())
    };
    let alg = Algebra::new(n, conj(b.m()), conj(b.e())).unwrap();
    let coa = Coalgebra::new(n, conj(b.delta()), conj(b.eps())).unwrap();
    let yb = WeakYBPair::new(n, conj(b.tau()), conj(b.tau_prime())).unwrap();
    WeakBraidedBimonad::new(&b.name, alg, coa, yb).unwrap()
}

fn unitriangular(n: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_map(move |v| Mat::from_fn(n, n, |r, c| if r == c { q(1) } else if r < c { q(v[r * n + c]) } else { q(0) }))
}

#[test]
fn standard_instances_satisfy_every_axiom() {
    for b in standard_instances().unwrap() {
        let r = check_all_axioms(&b);
        assert!(r.all_hold(), "{} fails {:?}", b.name, r.failed_ids());
    }
}

#[test]
fn doubled_counit_breaks_counitality_and_wbb6_only() {
    let mut b = g2();
    b.coa.eps = b.eps().scale(&q(2));
    let failed = sorted(check_all_axioms(&b).failed_ids());
    // Every other condition is homogeneous of equal degree in ε on both sides.
    assert_eq!(failed, vec!["coalg.counit_left", "coalg.counit_right", "wbb6"]);
}

#[test]
fn doubled_structure_constant_breaks_associativity() {
    let mut b = g2();
    let mut m = b.m().mat().clone();
    // g00·g00 = 2 g00, so (g00·g00)·g01 = 2 g01 while g00·(g00·g01) = g01.
    m.set(0, 0, q(2));
    b.alg.m = TensorMap::new(vec![4, 4], vec![4], m).unwrap();
    let r = check_all_axioms(&b);
    for id in ["alg.assoc", "alg.unit_left", "alg.unit_right"] {
        assert!(!r.holds(id), "{id} should fail");
    }
    assert!(r.holds("coalg.coassoc"));
}

#[test]
fn failure_witness_names_a_differing_entry() {
    let mut b = g2();
    b.coa.eps = b.eps().scale(&q(2));
    let r = check_all_axioms(&b);
    let e = r.get("coalg.counit_left").unwrap();
    let w = e.witness.as_ref().expect("failing entry carries a witness");
    assert!(w.row < 4 && w.col < 4);
}

#[test]
fn non_involutive_tau_needs_an_explicit_partner() {
    let n = 2;
    let shear = TensorMap::new(vec![n, n], vec![n, n], Mat::from_fn(4, 4, |r, c| if r == c || (r, c) == (0, 3) { q(1) } else { q(0) }))
        .unwrap();
    assert!(WeakYBPair::involutive(n, shear).is_err());
}

#[test]
fn mismatched_carrier_dimensions_are_rejected() {
    let b = g2();
    let small = cyclic_group(2).unwrap();
    assert!(WeakBraidedBimonad::new("x", b.alg.clone(), small.coa.clone(), b.yb.clone()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn axioms_survive_a_change_of_basis(p in unitriangular(4)) {
        let moved = transport(&g2(), &p);
        prop_assert!(check_all_axioms(&moved).all_hold());
    }

    #[test]
    fn mutation_verdicts_survive_a_change_of_basis(p in unitriangular(4), scale in 2i64..5) {
        let mut b = g2();
        b.coa.eps = b.eps().scale(&q(scale));
        let before = sorted(check_weak_braided_bimonad(&b).failed_ids());
        let after = sorted(check_weak_braided_bimonad(&transport(&b, &p)).failed_ids());
        prop_assert_eq!(before, after);
    }

    #[test]
    fn cyclic_group_algebras_are_bimonads(k in 1usize..6) {
        prop_assert!(check_all_axioms(&cyclic_group(k).unwrap()).all_hold());
    }
}
