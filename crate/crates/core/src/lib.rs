//! Exact linear algebra for weak braided bimonads on finite-dimensional vector
//! spaces: axiom checking, the base object, Galois maps, antipodes and Hopf
//! modules.
//!
//! Every structure map is a [`TensorMap`] over a [`Scalar`]; the default scalar
//! is an arbitrary-precision rational, so all checks are exact equalities.

#![allow(mixed_script_confusables)]

pub mod baseobject;
pub mod bimonad;
pub mod catalog;
pub mod entwining;
pub mod error;
pub mod exactmat;
pub mod galois;
pub mod hopf;
pub mod hopfmodules;
pub mod instances;
pub mod report;
pub mod tensorexpr;

pub use bimonad::{AxiomEntry, AxiomReport, WeakBraidedBimonad};
pub use error::{Error, Result};
pub use exactmat::{Float, Mat, Rational, Scalar};
pub use report::{build_report, Report, Stage};
pub use tensorexpr::TensorMap;
