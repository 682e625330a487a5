use crate::error::{Error, Result};
use crate::exactmat::{Mat, Rational, Scalar};

/// A linear map between tensor products of spaces, recorded by the dimensions of
/// its domain and codomain factors.
///
/// The basis of `V1 ⊗ … ⊗ Vk` is ordered lexicographically with the leftmost factor
/// most significant, which is exactly the index order of the Kronecker product.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorMap<T = Rational> {
    dom: Vec<usize>,
    cod: Vec<usize>,
    mat: Mat<T>,
}

fn prod(dims: &[usize]) -> usize {
    dims.iter().product()
}

impl<T: Scalar> TensorMap<T> {
    pub fn new(dom: Vec<usize>, cod: Vec<usize>, mat: Mat<T>) -> Result<Self> {
        if mat.rows() != prod(&cod) || mat.cols() != prod(&dom) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix cannot map {dom:?} to {cod:?}",
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(TensorMap { dom, cod, mat })
    }

    pub fn identity(dims: &[usize]) -> Self {
        TensorMap { dom: dims.to_vec(), cod: dims.to_vec(), mat: Mat::identity(prod(dims)) }
    }

    /// Identity on `n^{⊗k}`.
    pub fn id_power(n: usize, k: usize) -> Self {
        Self::identity(&vec![n; k])
    }

    pub fn zero(dom: &[usize], cod: &[usize]) -> Self {
        TensorMap { dom: dom.to_vec(), cod: cod.to_vec(), mat: Mat::zeros(prod(cod), prod(dom)) }
    }

    /// The swap `V ⊗ W → W ⊗ V`.
    pub fn swap(v: usize, w: usize) -> Self {
        let perm: Vec<usize> = (0..v * w).map(|k| (k % w) * v + k / w).collect();
        TensorMap { dom: vec![v, w], cod: vec![w, v], mat: Mat::permutation(&perm) }
    }

    pub fn dom(&self) -> &[usize] {
        &self.dom
    }

    pub fn cod(&self) -> &[usize] {
        &self.cod
    }

    pub fn in_arity(&self) -> usize {
        self.dom.len()
    }

    pub fn out_arity(&self) -> usize {
        self.cod.len()
    }

    pub fn mat(&self) -> &Mat<T> {
        &self.mat
    }

    pub fn into_mat(self) -> Mat<T> {
        self.mat
    }

    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TensorMap<U> {
        TensorMap { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.map(f) }
    }

    /// Parallel juxtaposition `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dom = self.dom.clone();
        dom.extend_from_slice(&other.dom);
        let mut cod = self.cod.clone();
        cod.extend_from_slice(&other.cod);
        TensorMap { dom, cod, mat: self.mat.kron(&other.mat) }
    }

    /// `next ∘ self`: apply `self` first.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.cod != next.dom {
            return Err(Error::ArityMismatch { position: 0, left: self.cod.clone(), right: next.dom.clone() });
        }
        Ok(TensorMap { dom: self.dom.clone(), cod: next.cod.clone(), mat: next.mat.mul(&self.mat)? })
    }

    /// Whisker with identities on factors of the given dimensions.
    pub fn pad(&self, left: &[usize], right: &[usize]) -> Self {
        TensorMap::identity(left).tensor(self).tensor(&TensorMap::identity(right))
    }

    /// `id^{⊗left} ⊗ self ⊗ id^{⊗right}`; the padding dimension is read off `self`,
    /// whose factors must all share one dimension.
    pub fn lift(&self, left: usize, right: usize) -> Result<Self> {
        let n = self.uniform_dim()?;
        Ok(self.pad(&vec![n; left], &vec![n; right]))
    }

    fn uniform_dim(&self) -> Result<usize> {
        let mut dims = self.dom.iter().chain(&self.cod);
        let Some(&n) = dims.next() else {
            return Err(Error::DimensionMismatch("cannot infer padding for a map with no factors".into()));
        };
        if dims.any(|&d| d != n) {
            return Err(Error::DimensionMismatch(format!(
                "lift needs a single factor dimension, got {:?} -> {:?}",
                self.dom, self.cod
            )));
        }
        Ok(n)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_same_type(other)?;
        Ok(TensorMap { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.plus(&other.mat)? })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.check_same_type(other)?;
        Ok(TensorMap { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.minus(&other.mat)? })
    }

    pub fn scale(&self, k: &T) -> Self {
        TensorMap { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.scale(k) }
    }

    pub fn transpose(&self) -> Self {
        TensorMap { dom: self.cod.clone(), cod: self.dom.clone(), mat: self.mat.transpose() }
    }

    /// Same factor data on both sides.
    pub fn same_type(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    fn check_same_type(&self, other: &Self) -> Result<()> {
        if !self.same_type(other) {
            return Err(Error::DimensionMismatch(format!(
                "{:?}->{:?} vs {:?}->{:?}",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        Ok(())
    }

    /// First disagreeing `(row, col)`; a type mismatch reports `(0, 0)`.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if !self.same_type(other) {
            return Some((0, 0));
        }
        self.mat.first_difference(&other.mat)
    }

    /// Evaluate on a basis vector of the domain, returning the image column.
    pub fn apply_basis(&self, index: usize) -> Vec<T> {
        self.mat.column(index)
    }
}

/// Compose a chain in application order: `compose([f, g, h]) = h ∘ g ∘ f`.
pub fn compose<T: Scalar>(chain: &[TensorMap<T>]) -> Result<TensorMap<T>> {
    let (first, rest) = chain
        .split_first()
        .ok_or_else(|| Error::DimensionMismatch("cannot compose an empty chain".into()))?;
    let mut acc = first.clone();
    for (k, next) in rest.iter().enumerate() {
        if acc.cod != next.dom {
            return Err(Error::ArityMismatch { position: k, left: acc.cod.clone(), right: next.dom.clone() });
        }
        acc = acc.then(next)?;
    }
    Ok(acc)
}

/// Multi-index of a basis vector in a tensor product (leftmost most significant).
pub fn split_index(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

/// Inverse of [`split_index`].
pub fn join_index(parts: &[usize], dims: &[usize]) -> usize {
    parts.iter().zip(dims).fold(0, |acc, (&p, &d)| acc * d + p)
}

#[cfg(test)]
mod tests {
    use super::*;

    type TM = TensorMap<Rational>;

    #[test]
    fn swap_moves_indices() {
        let s = TM::swap(2, 3);
        for k in 0..6 {
            let (a, b) = (k / 3, k % 3);
            let col = s.apply_basis(k);
            let target = b * 2 + a;
            for (r, v) in col.iter().enumerate() {
                assert_eq!(v.is_one(), r == target);
            }
        }
    }

    #[test]
    fn compose_reports_offending_pair() {
        let f = TM::id_power(2, 1);
        let g = TM::id_power(2, 2);
        match compose(&[f.clone(), f.clone(), g]) {
            Err(Error::ArityMismatch { position, .. }) => assert_eq!(position, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(compose(std::slice::from_ref(&f)).unwrap(), f);
    }

    #[test]
    fn index_helpers_invert() {
        let dims = [2, 3, 4];
        for k in 0..24 {
            assert_eq!(join_index(&split_index(k, &dims), &dims), k);
        }
        assert_eq!(split_index(23, &dims), vec![1, 2, 3]);
    }

    #[test]
    fn lift_needs_uniform_factors() {
        let scalar = TM::identity(&[]);
        assert!(scalar.lift(1, 0).is_err());
        let mixed = TM::swap(2, 3);
        assert!(mixed.lift(1, 0).is_err());
        assert_eq!(TM::id_power(2, 1).lift(1, 1).unwrap(), TM::id_power(2, 3));
    }
}
