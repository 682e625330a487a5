use crate::error::{Error, Result};

use super::mat::Mat;
use super::scalar::{Rational, Scalar};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<T = Rational> {
    pub reduced: Mat<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Rref<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// An idempotent `e = i·p` factored through a rank-`r` space, with `p·i = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Splitting<T = Rational> {
    pub p: Mat<T>,
    pub i: Mat<T>,
    pub rank: usize,
}

/// Gauss-Jordan elimination with deterministic pivoting.
pub fn rref<T: Scalar>(m: &Mat<T>) -> Rref<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<T>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top == rows {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for (r, row) in a.iter().enumerate().skip(top) {
            let w = row[c].pivot_weight();
            if w > 0.0 && best.is_none_or(|(_, bw)| w > bw) {
                best = Some((r, w));
            }
        }
        let Some((pr, _)) = best else { continue };
        a.swap(top, pr);
        let inv = a[top][c].recip();
        for x in a[top].iter_mut() {
            *x = x.times(&inv);
        }
        a[top][c] = T::one();
        let pivot_row = a[top].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == top || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.minus(&f.times(p));
                }
            }
            row[c] = T::zero();
        }
        pivots.push(c);
        top += 1;
    }
    let data = a.into_iter().flatten().collect();
    Rref { reduced: Mat::new(rows, cols, data).expect("shape preserved"), pivots }
}

pub fn rank<T: Scalar>(m: &Mat<T>) -> usize {
    rref(m).rank()
}

/// Null-space basis as columns; each free variable in turn is set to 1.
pub fn kernel_basis<T: Scalar>(m: &Mat<T>) -> Mat<T> {
    let Rref { reduced, pivots } = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Mat::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, T::one());
        for (r, &pc) in pivots.iter().enumerate() {
            basis.set(pc, k, reduced.get(r, f).negated());
        }
    }
    basis
}

/// A surjection `proj` onto the cokernel of `m`, with `proj·m = 0`, and the cokernel
/// dimension. The complement is spanned by the non-pivot rows of `m`, so the standard
/// basis vectors at those positions form a section of `proj`.
pub fn cokernel_projection<T: Scalar>(m: &Mat<T>) -> (Mat<T>, usize) {
    let Rref { reduced, pivots } = rref(&m.transpose());
    let n = m.rows();
    let complement: Vec<usize> = (0..n).filter(|k| !pivots.contains(k)).collect();
    let mut proj = Mat::zeros(complement.len(), n);
    for (ci, &c) in complement.iter().enumerate() {
        proj.set(ci, c, T::one());
        for (r, &p) in pivots.iter().enumerate() {
            proj.set(ci, p, reduced.get(r, c).negated());
        }
    }
    let dim = complement.len();
    (proj, dim)
}

/// Standard-basis section of [`cokernel_projection`]: `proj·section = 1`.
pub fn cokernel_section<T: Scalar>(m: &Mat<T>) -> Mat<T> {
    let pivots = rref(&m.transpose()).pivots;
    let complement: Vec<usize> = (0..m.rows()).filter(|k| !pivots.contains(k)).collect();
    Mat::identity(m.rows()).select_cols(&complement)
}

pub fn invert<T: Scalar>(m: &Mat<T>) -> Result<Mat<T>> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::NotInvertible { rows: m.rows(), cols: m.cols(), rank: rank(m) });
    }
    let aug = m.hstack(&Mat::identity(n))?;
    let r = rref(&aug);
    let rank = r.pivots.iter().filter(|&&c| c < n).count();
    if rank < n {
        return Err(Error::NotInvertible { rows: n, cols: n, rank });
    }
    let right: Vec<usize> = (n..2 * n).collect();
    Ok(r.reduced.select_cols(&right))
}

/// Factor an idempotent through its image: `i` is the pivot columns of `e`, `p` the
/// nonzero rows of its reduced echelon form.
pub fn split_idempotent<T: Scalar>(e: &Mat<T>) -> Result<Splitting<T>> {
    if !e.is_square() {
        return Err(Error::DimensionMismatch(format!("idempotent must be square, got {}x{}", e.rows(), e.cols())));
    }
    let sq = e.mul(e)?;
    if let Some((row, col)) = sq.first_difference(e) {
        return Err(Error::NotIdempotent { row, col });
    }
    let Rref { reduced, pivots } = rref(e);
    let r = pivots.len();
    let i = e.select_cols(&pivots);
    let p = reduced.select_rows(&(0..r).collect::<Vec<_>>());
    debug_assert!(p.mul(&i)?.is_identity());
    debug_assert!(i.mul(&p)?.approx_eq(e));
    Ok(Splitting { p, i, rank: r })
}

/// Some `s` with `a·s = 1`, for `a` of full row rank.
pub fn right_inverse<T: Scalar>(a: &Mat<T>) -> Result<Mat<T>> {
    let Rref { pivots, .. } = rref(a);
    if pivots.len() != a.rows() {
        return Err(Error::FactorizationFailed(format!(
            "{}x{} map of rank {} is not surjective",
            a.rows(),
            a.cols(),
            pivots.len()
        )));
    }
    let square = a.select_cols(&pivots);
    let inv = invert(&square)?;
    let mut s = Mat::zeros(a.cols(), a.rows());
    for (k, &pc) in pivots.iter().enumerate() {
        for c in 0..a.rows() {
            s.set(pc, c, inv.get(k, c).clone());
        }
    }
    Ok(s)
}

/// Some `t` with `t·a = 1`, for `a` of full column rank.
pub fn left_inverse<T: Scalar>(a: &Mat<T>) -> Result<Mat<T>> {
    right_inverse(&a.transpose()).map(|s| s.transpose())
}

/// Solve `a·x = b`. Returns a particular solution (free variables zero) and a kernel
/// basis, or `None` when the system is inconsistent.
pub fn solve<T: Scalar>(a: &Mat<T>, b: &Mat<T>) -> Result<Option<(Mat<T>, Mat<T>)>> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} equations but {} right-hand sides",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.cols();
    let r = rref(&a.hstack(b)?);
    if r.pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    let mut x = Mat::zeros(n, b.cols());
    for (row, &pc) in r.pivots.iter().enumerate() {
        for c in 0..b.cols() {
            x.set(pc, c, r.reduced.get(row, n + c).clone());
        }
    }
    Ok(Some((x, kernel_basis(a))))
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Mat<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rref_picks_first_nonzero_pivot() {
        let m = M::from_i64(&[&[0, 2, 4], &[1, 1, 1], &[2, 2, 2]]);
        let r = rref(&m);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced, M::from_i64(&[&[1, 0, -1], &[0, 1, 2], &[0, 0, 0]]));
    }

    #[test]
    fn kernel_of_row_vector() {
        let k = kernel_basis(&M::from_i64(&[&[1, 1]]));
        assert_eq!(k, M::from_i64(&[&[-1], &[1]]));
        assert_eq!(kernel_basis(&M::identity(2)).cols(), 0);
        assert_eq!(kernel_basis(&M::zeros(2, 2)), M::identity(2));
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_projection(&M::identity(2)).1, 0);
        let (p, d) = cokernel_projection(&M::zeros(3, 2));
        assert_eq!((p, d), (M::identity(3), 3));
        let col = M::from_i64(&[&[1], &[1]]);
        let (p, d) = cokernel_projection(&col);
        assert_eq!(d, 1);
        assert!(p.mul(&col).unwrap().is_zero());
        assert!(p.mul(&cokernel_section(&col)).unwrap().is_identity());
    }

    #[test]
    fn invert_examples() {
        let d = M::diag(&[q(2, 1), q(3, 1)]);
        assert_eq!(invert(&d).unwrap(), M::diag(&[q(1, 2), q(1, 3)]));
        assert_eq!(invert(&M::identity(3)).unwrap(), M::identity(3));
        let singular = M::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(invert(&singular), Err(Error::NotInvertible { rows: 2, cols: 2, rank: 1 }));
    }

    #[test]
    fn split_diag_picks_leading_columns() {
        let e = M::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        let s = split_idempotent(&e).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.i, M::from_i64(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]));
        assert!(s.p.mul(&s.i).unwrap().is_identity());
        assert_eq!(s.i.mul(&s.p).unwrap(), e);
        assert_eq!(split_idempotent(&M::zeros(3, 3)).unwrap().rank, 0);
        let id = split_idempotent(&M::identity(3)).unwrap();
        assert_eq!((id.p, id.i), (M::identity(3), M::identity(3)));
    }

    #[test]
    fn split_rejects_non_idempotent() {
        let m = M::from_i64(&[&[2, 0], &[0, 1]]);
        assert_eq!(split_idempotent(&m), Err(Error::NotIdempotent { row: 0, col: 0 }));
    }

    #[test]
    fn one_sided_inverses() {
        let a = M::from_i64(&[&[1, 2, 0], &[0, 1, 1]]);
        assert!(a.mul(&right_inverse(&a).unwrap()).unwrap().is_identity());
        let t = a.transpose();
        assert!(left_inverse(&t).unwrap().mul(&t).unwrap().is_identity());
        assert!(right_inverse(&M::from_i64(&[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = M::from_i64(&[&[1, 1], &[2, 2]]);
        let (x, k) = solve(&a, &M::from_i64(&[&[3], &[6]])).unwrap().unwrap();
        assert_eq!(x, M::from_i64(&[&[3], &[0]]));
        assert_eq!(k, M::from_i64(&[&[-1], &[1]]));
        assert!(solve(&a, &M::from_i64(&[&[3], &[5]])).unwrap().is_none());
    }
}
