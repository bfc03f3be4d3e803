//! Exact coefficient ring and normal-ordered operator algebra in `N` coordinates.

mod operator;
mod poly;
mod scalar;

pub use operator::{OpMonomial, Operator};
pub use poly::{Indeterminate, ParamAssignment, ParamPoly, PolyMonomial};
pub use scalar::Scalar;

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpAlgError {
    #[error("no value assigned to indeterminate {0}")]
    PartialAssignment(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Minimal commutative-or-not ring interface shared by operator, exact and
/// floating-point coefficient types, so the quadratic-algebra formulas are
/// written once.
pub trait Ring: Clone {
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn scale_by(&self, r: &Rational) -> Self;
    /// Embeds the rational `r` using `self` only as a shape witness.
    fn lift(&self, r: &Rational) -> Self;
    fn is_ring_zero(&self) -> bool;

    fn scale_int(&self, k: i64) -> Self {
        self.scale_by(&Rational::from_integer(k.into()))
    }

    fn zero_like(&self) -> Self {
        self.lift(&Rational::zero())
    }
}

impl Ring for Operator {
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul_op(rhs)
    }
    fn scale_by(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn lift(&self, r: &Rational) -> Self {
        Operator::constant(self.dimension(), r.clone())
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for ParamPoly {
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale_by(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn lift(&self, r: &Rational) -> Self {
        ParamPoly::constant(self.dimension(), r.clone())
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for Rational {
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale_by(&self, r: &Rational) -> Self {
        self * r
    }
    fn lift(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for f64 {
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale_by(&self, r: &Rational) -> Self {
        self * ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn lift(&self, r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn is_ring_zero(&self) -> bool {
        *self == 0.0
    }
}

/// `num/den` as a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
