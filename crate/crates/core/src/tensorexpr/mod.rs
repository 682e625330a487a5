//! Tensor-typed linear maps, their composition, and a tiny expression language.

mod expr;
mod map;

pub use expr::{parse_expr, parse_map_expr, ExprEnv, MapExpr};
pub use map::{compose, join_index, split_index, TensorMap};

use crate::bimonad::WeakBraidedBimonad;
use crate::error::Result;
use crate::exactmat::Scalar;

/// Convolution `f ∗ g = m ∘ (f ⊗ g) ∘ δ` of two endomaps of `H`.
pub fn convolution<T: Scalar>(f: &TensorMap<T>, g: &TensorMap<T>, b: &WeakBraidedBimonad<T>) -> Result<TensorMap<T>> {
    compose(&[b.delta().clone(), f.tensor(g), b.m().clone()])
}

/// Compose a chain of maps whose types are known to line up.
pub(crate) fn chain<T: Scalar>(maps: &[&TensorMap<T>]) -> TensorMap<T> {
    let (first, rest) = maps.split_first().expect("non-empty chain");
    rest.iter().fold((*first).clone(), |acc, f| acc.then(f).expect("well-typed composite"))
}

impl<T: Scalar> TensorMap<T> {
    /// Whisker with `left` and `right` copies of an `n`-dimensional identity.
    pub fn whisker(&self, n: usize, left: usize, right: usize) -> Self {
        self.pad(&vec![n; left], &vec![n; right])
    }
}
