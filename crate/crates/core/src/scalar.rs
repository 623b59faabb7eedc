//! Value types for locally constant functions: exact complex rationals and
//! binary64 complex numbers behind one trait.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Complex, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type Complex64 = Complex<f64>;
/// A complex number with exact rational real and imaginary parts.
pub type ExactComplex = Complex<Rational>;

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn exact(re: Rational, im: Rational) -> ExactComplex {
    Complex::new(re, im)
}

pub fn exact_real(re: Rational) -> ExactComplex {
    Complex::new(re, Rational::zero())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parse `p/q` or an integer. Rejects zero denominators.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Reduced `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// The arithmetic needed by the harmonic, cohomology and K-theory code.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_i64(n: i64) -> Self;
    fn conj(&self) -> Self;
    fn to_complex(&self) -> Complex64;
    /// Division by a positive integer.
    fn div_u64(&self, n: u64) -> Self;
    /// Exact zero test for exact values; `|self| <= tol` for floats.
    fn is_zero_within(&self, tol: f64) -> bool;
    /// The real part when the imaginary part vanishes (exactly, or within `tol`).
    fn real_value(&self, tol: f64) -> Option<f64>;
    fn is_exact() -> bool;
}

impl Scalar for ExactComplex {
    fn zero() -> Self {
        Complex::new(Rational::zero(), Rational::zero())
    }

    fn from_i64(n: i64) -> Self {
        exact_real(rational_int(n))
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_complex(&self) -> Complex64 {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn div_u64(&self, n: u64) -> Self {
        let d = Rational::from_integer(BigInt::from(n));
        Complex::new(&self.re / &d, &self.im / &d)
    }

    fn is_zero_within(&self, _tol: f64) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn real_value(&self, _tol: f64) -> Option<f64> {
        self.im.is_zero().then(|| rational_to_f64(&self.re))
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn div_u64(&self, n: u64) -> Self {
        self / n as f64
    }

    fn is_zero_within(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    fn real_value(&self, tol: f64) -> Option<f64> {
        (self.im.abs() <= tol).then_some(self.re)
    }

    fn is_exact() -> bool {
        false
    }
}

/// Whether an exact value is an integer, returning it.
pub fn exact_to_integer(v: &ExactComplex) -> Option<i64> {
    if v.im.is_zero() && v.re.is_integer() {
        v.re.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4"), Some(rational(-3, 2)));
        assert_eq!(parse_rational(" 7 "), Some(rational_int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rational(6, -4)), "-3/2");
        assert_eq!(format_rational(&rational(4, 2)), "2");
    }

    #[test]
    fn exact_scalar_ops() {
        let a = exact(rational(1, 2), rational(1, 3));
        assert_eq!(a.div_u64(2), exact(rational(1, 4), rational(1, 6)));
        assert_eq!(Scalar::conj(&a).im, rational(-1, 3));
        assert!(<ExactComplex as Scalar>::zero().is_zero_within(0.0));
        assert_eq!(a.real_value(1.0), None);
        assert_eq!(exact_to_integer(&ExactComplex::from_i64(-5)), Some(-5));
        assert_eq!(exact_to_integer(&exact_real(rational(1, 2))), None);
    }
}
