//! Exact scalar arithmetic and linear algebra.
//!
//! Every scalar type implements [`Ring`]; the ones that support division
//! implement [`Field`]. Truncated jets implement `Field` with a division that
//! fails when the divisor's valuation exceeds the dividend's.

mod elem;
mod interp;
mod jet;
mod linalg;
mod poly;
mod ratfun;
mod rational;
mod sqrt2;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use elem::{field_op, FieldElem, FieldOp, ScalarJson};
pub use interp::poly_interpolate;
pub use jet::Jet;
pub use linalg::{nullspace, Matrix};
pub use poly::Poly;
pub use ratfun::{RatFun, Var};
pub use rational::{int, parse_rational, rat, to_f64, Rational};
pub use sqrt2::{QuadExt, Sqrt2Ext, SqrtM2Ext};

use crate::error::KernelError;

/// Commutative ring with unit containing the rationals.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn scale(&self, r: &Rational) -> Self {
        self.clone() * Self::from_rational(r)
    }
}

pub trait Field: Ring {
    fn try_div(&self, rhs: &Self) -> Result<Self, KernelError>;

    fn try_inv(&self) -> Result<Self, KernelError> {
        Self::one().try_div(self)
    }

    /// Integer power allowing negative exponents.
    fn powi(&self, e: i64) -> Result<Self, KernelError> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.try_inv()
        } else {
            Ok(p)
        }
    }
}
