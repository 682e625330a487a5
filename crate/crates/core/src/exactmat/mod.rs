//! Dense exact linear algebra: products, Kronecker products, echelon forms, kernels,
//! cokernels, inverses and idempotent splittings.

mod mat;
mod reduce;
mod scalar;

pub use mat::Mat;
pub use reduce::{
    cokernel_projection, cokernel_section, invert, kernel_basis, left_inverse, rank, right_inverse, rref,
    solve, split_idempotent, Rref, Splitting,
};
pub use scalar::{float_tolerance, format_rational, parse_rational, set_float_tolerance, Float, Rational, Scalar};
