use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rational, Ring};
use crate::error::KernelError;

/// `a + b*sqrt(D)` over a base field in which `D` is not a square.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadExt<F, const D: i64> {
    pub a: F,
    pub b: F,
}

/// `a + b*sqrt(2)`.
pub type Sqrt2Ext<F> = QuadExt<F, 2>;

/// `a + b*sqrt(-2)`.
pub type SqrtM2Ext<F> = QuadExt<F, -2>;

impl<F: Field, const D: i64> QuadExt<F, D> {
    pub fn new(a: F, b: F) -> Self {
        QuadExt { a, b }
    }

    pub fn base(a: F) -> Self {
        QuadExt { a, b: F::zero() }
    }

    /// The adjoined root.
    pub fn root() -> Self {
        QuadExt { a: F::zero(), b: F::one() }
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone() }
    }

    /// `a^2 - D b^2`.
    pub fn norm(&self) -> F {
        self.a.clone() * self.a.clone() - F::from_i64(D) * self.b.clone() * self.b.clone()
    }

    fn root_name() -> String {
        if D == 2 {
            "sqrt2".into()
        } else {
            format!("sqrt({D})")
        }
    }

    /// Returns the base-field value when the `sqrt(2)` component vanishes.
    pub fn as_base(&self) -> Option<&F> {
        self.b.is_zero().then_some(&self.a)
    }
}

impl<F: Field, const D: i64> Add for QuadExt<F, D> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        QuadExt { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl<F: Field, const D: i64> Sub for QuadExt<F, D> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        QuadExt { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl<F: Field, const D: i64> Neg for QuadExt<F, D> {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl<F: Field, const D: i64> Mul for QuadExt<F, D> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.b.is_zero() {
            return QuadExt { a: self.a.clone() * rhs.a, b: self.a * rhs.b };
        }
        if rhs.b.is_zero() {
            return QuadExt { a: self.a * rhs.a.clone(), b: self.b * rhs.a };
        }
        let d = F::from_i64(D);
        QuadExt {
            a: self.a.clone() * rhs.a.clone() + d * self.b.clone() * rhs.b.clone(),
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl<F: Field, const D: i64> Ring for QuadExt<F, D> {
    fn zero() -> Self {
        Self::base(F::zero())
    }
    fn one() -> Self {
        Self::base(F::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::base(F::from_rational(r))
    }
}

impl<F: Field, const D: i64> Field for QuadExt<F, D> {
    fn try_div(&self, rhs: &Self) -> Result<Self, KernelError> {
        if rhs.b.is_zero() {
            return Ok(QuadExt { a: self.a.try_div(&rhs.a)?, b: self.b.try_div(&rhs.a)? });
        }
        let n = rhs.norm();
        let num = self.clone() * rhs.conj();
        Ok(QuadExt { a: num.a.try_div(&n)?, b: num.b.try_div(&n)? })
    }
}

impl<F: Field, const D: i64> fmt::Display for QuadExt<F, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*{}", self.b, Self::root_name()),
            _ => write!(f, "{} + ({})*{}", self.a, self.b, Self::root_name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat, Rational};

    type S = Sqrt2Ext<Rational>;

    #[test]
    fn norm_identity() {
        let x = S::new(int(1), int(1));
        assert_eq!(x.clone() * x.conj(), S::base(int(-1)));
    }

    #[test]
    fn inverse() {
        let x = S::new(rat(3, 2), int(-5));
        assert_eq!(x.clone() * x.try_inv().unwrap(), S::one());
        assert!(S::zero().try_inv().is_err());
    }

    #[test]
    fn norm_is_multiplicative() {
        let x = S::new(rat(2, 3), int(7));
        let y = S::new(int(-4), rat(1, 5));
        assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
    }
}
