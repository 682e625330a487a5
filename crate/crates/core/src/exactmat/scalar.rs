use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Field elements the matrix kernel can work over.
///
/// Arithmetic takes references so big rationals are not cloned needlessly.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse. Callers must ensure `!self.is_zero()`.
    fn recip(&self) -> Self;
    /// Preference weight for pivot selection; the largest weight wins and ties go to
    /// the earliest row.
    fn pivot_weight(&self) -> f64;
    fn to_f64(&self) -> f64;

    fn is_one(&self) -> bool {
        self.minus(&Self::one()).is_zero()
    }

    /// Equality up to the scalar's notion of zero.
    fn approx_eq(&self, other: &Self) -> bool {
        self.minus(other).is_zero()
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Self {
        BigRational::recip(self)
    }
    fn pivot_weight(&self) -> f64 {
        // Exact mode: first nonzero wins.
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

/// Parse a rational literal of the form `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::Schema { locator: format!("\"{text}\""), msg: msg.to_string() };
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad("not an integer numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("not an integer denominator"))?;
    if Zero::is_zero(&den) {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

static FLOAT_TOLERANCE: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Set the process-wide comparison tolerance used by [`Float`].
pub fn set_float_tolerance(tol: f64) {
    FLOAT_TOLERANCE.store(tol.abs().to_bits(), Ordering::Relaxed);
}

pub fn float_tolerance() -> f64 {
    f64::from_bits(FLOAT_TOLERANCE.load(Ordering::Relaxed))
}

/// Double-precision scalar whose zero test uses the global tolerance.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct Float(pub f64);

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Float {
    fn zero() -> Self {
        Float(0.0)
    }
    fn one() -> Self {
        Float(1.0)
    }
    fn from_i64(v: i64) -> Self {
        Float(v as f64)
    }
    fn from_rational(q: &Rational) -> Self {
        Float(ToPrimitive::to_f64(q).unwrap_or(f64::NAN))
    }
    fn is_zero(&self) -> bool {
        self.0.abs() <= float_tolerance()
    }
    fn plus(&self, rhs: &Self) -> Self {
        Float(self.0 + rhs.0)
    }
    fn minus(&self, rhs: &Self) -> Self {
        Float(self.0 - rhs.0)
    }
    fn times(&self, rhs: &Self) -> Self {
        Float(self.0 * rhs.0)
    }
    fn negated(&self) -> Self {
        Float(-self.0)
    }
    fn recip(&self) -> Self {
        Float(1.0 / self.0)
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.0.abs()
        }
    }
    fn to_f64(&self) -> f64 {
        self.0
    }
}
