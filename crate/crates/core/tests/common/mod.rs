#![allow(dead_code)]

use proptest::prelude::*;
use weakhopf::instances::{groupoid_algebra, GroupoidSpec};
use weakhopf::{Mat, Rational, Scalar, TensorMap, WeakBraidedBimonad};

pub fn q(v: i64) -> Rational {
    <Rational as Scalar>::from_i64(v)
}

pub fn std(name: &str) -> WeakBraidedBimonad {
    weakhopf::catalog::standard_instance(name).unwrap()
}

/// Groupoid whose objects are related exactly when they carry the same label.
pub fn groupoid_from_labels(labels: &[usize]) -> GroupoidSpec {
    let k = labels.len();
    let arrows = (0..k).flat_map(|s| (0..k).map(move |t| (s, t))).filter(|&(s, t)| labels[s] == labels[t]).collect();
    GroupoidSpec { objects: k, arrows }
}

pub fn labelled_groupoid() -> impl Strategy<Value = GroupoidSpec> {
    (1usize..=3).prop_flat_map(|k| prop::collection::vec(0usize..k, k)).prop_map(|l| groupoid_from_labels(&l))
}

pub fn groupoid(spec: &GroupoidSpec) -> WeakBraidedBimonad {
    groupoid_algebra(spec).unwrap()
}

/// Sorted arrow list, matching the generator's basis order.
pub fn arrows(spec: &GroupoidSpec) -> Vec<(usize, usize)> {
    let mut a = spec.arrows.clone();
    a.sort_unstable();
    a
}

/// Map of `H^{⊗k}` given by its action on multi-indexed basis vectors.
pub fn basis_map(n: usize, k_in: usize, k_out: usize, f: impl Fn(&[usize]) -> Vec<(Vec<usize>, i64)>) -> TensorMap {
    let dom = vec![n; k_in];
    let cod = vec![n; k_out];
    let cols = n.pow(k_in as u32);
    let mut m: Mat = Mat::zeros(n.pow(k_out as u32), cols);
    for c in 0..cols {
        let idx = weakhopf::tensorexpr::split_index(c, &dom);
        for (out, v) in f(&idx) {
            let r = weakhopf::tensorexpr::join_index(&out, &cod);
            let cur = m.get(r, c).clone();
            m.set(r, c, cur + q(v));
        }
    }
    TensorMap::new(dom, cod, m).unwrap()
}
