use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::{Signed, ToPrimitive};

use super::{Rational, Ring};

/// Commutative field of numbers used for eigenvalue-level computations:
/// either exact rationals or `f64`.
pub trait Scalar: Ring + Debug + PartialOrd + Send + Sync + 'static {
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;
    fn from_int(k: i64) -> Self {
        Self::from_rational(&Rational::from_integer(k.into()))
    }
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::from_int(0).ring_sub(self)
    }
    fn to_f64(&self) -> f64;
    /// Non-negative square root, if it exists in this field.
    fn sqrt(&self) -> Option<Self>;
    fn abs(&self) -> Self;

    fn is_positive(&self) -> bool {
        self.partial_cmp(&Self::from_int(0)) == Some(Ordering::Greater)
    }

    /// Equality up to relative tolerance `tol`; exact types ignore `tol`.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| Rational::new(n, d))
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let scale = f64::abs(*self).max(f64::abs(*other)).max(1.0);
        f64::abs(self - other) <= tol * scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::rat;

    #[test]
    fn rational_sqrt_only_for_squares() {
        assert_eq!(Scalar::sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(Scalar::sqrt(&rat(2, 1)), None);
        assert_eq!(Scalar::sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn float_tolerance_is_relative() {
        assert!(1e6f64.approx_eq(&(1e6 + 1e-7), 1e-12));
        assert!(!1.0f64.approx_eq(&1.001, 1e-6));
    }
}
