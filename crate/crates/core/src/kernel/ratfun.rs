use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Poly, Rational, Ring};
use crate::error::KernelError;

/// Name of the indeterminate of a [`RatFun`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    T,
    Gamma,
    Q,
    H,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Gamma => "g",
            Var::Q => "q",
            Var::H => "h",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        match s {
            "t" => Some(Var::T),
            "g" | "gamma" => Some(Var::Gamma),
            "q" => Some(Var::Q),
            "h" => Some(Var::H),
            _ => None,
        }
    }
}

/// Univariate rational function over the rationals in lowest terms with a
/// monic denominator. Constants carry a variable tag but combine freely with
/// rational functions in any variable.
#[derive(Clone, Debug)]
pub struct RatFun {
    var: Var,
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RatFun {
    pub fn new(var: Var, num: Poly<Rational>, den: Poly<Rational>) -> Result<Self, KernelError> {
        if den.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Self::normalized(var, num, den))
    }

    fn normalized(var: Var, num: Poly<Rational>, den: Poly<Rational>) -> Self {
        if num.is_zero() {
            return RatFun { var, num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lead = den.lead();
        if !lead.is_one() {
            let inv = lead.try_inv().unwrap();
            num = num.scale_by(&inv);
            den = den.scale_by(&inv);
        }
        RatFun { var, num, den }
    }

    /// The indeterminate itself.
    pub fn var(var: Var) -> Self {
        RatFun { var, num: Poly::x(), den: Poly::one() }
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        RatFun { var, num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(var: Var, p: Poly<Rational>) -> Self {
        RatFun { var, num: p, den: Poly::one() }
    }

    pub fn variable(&self) -> Var {
        self.var
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    /// The value as a rational, if constant.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, KernelError> {
        self.num.eval(x).try_div(&self.den.eval(x))
    }

    /// Substitutes `x -> s` where `s` is a rational function in another (or the same) variable.
    pub fn compose(&self, s: &RatFun) -> Result<RatFun, KernelError> {
        let n = self.num.map(|c| RatFun::constant(s.var, c.clone())).eval(s);
        let d = self.den.map(|c| RatFun::constant(s.var, c.clone())).eval(s);
        n.try_div(&d)
    }

    fn common_var(&self, other: &RatFun) -> Result<Var, KernelError> {
        if self.var == other.var || other.is_constant() {
            Ok(self.var)
        } else if self.is_constant() {
            Ok(other.var)
        } else {
            Err(KernelError::MixedField(
                format!("Q({})", self.var.name()),
                format!("Q({})", other.var.name()),
            ))
        }
    }

    pub fn checked_add(&self, rhs: &RatFun) -> Result<RatFun, KernelError> {
        let var = self.common_var(rhs)?;
        if self.den == rhs.den {
            return Ok(Self::normalized(var, self.num.clone() + rhs.num.clone(), self.den.clone()));
        }
        Ok(Self::normalized(
            var,
            self.num.clone() * rhs.den.clone() + rhs.num.clone() * self.den.clone(),
            self.den.clone() * rhs.den.clone(),
        ))
    }

    pub fn checked_mul(&self, rhs: &RatFun) -> Result<RatFun, KernelError> {
        let var = self.common_var(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::normalized(
            var,
            self.num.clone() * rhs.num.clone(),
            self.den.clone() * rhs.den.clone(),
        ))
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<RatFun, KernelError> {
        let var = self.common_var(rhs)?;
        if rhs.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Self::normalized(
            var,
            self.num.clone() * rhs.den.clone(),
            self.den.clone() * rhs.num.clone(),
        ))
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num
            && self.den == other.den
            && (self.var == other.var || self.is_constant())
    }
}

impl Add for RatFun {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("rational function arithmetic")
    }
}

impl Sub for RatFun {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_add(&-rhs).expect("rational function arithmetic")
    }
}

impl Mul for RatFun {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("rational function arithmetic")
    }
}

impl Neg for RatFun {
    type Output = Self;
    fn neg(self) -> Self {
        RatFun { var: self.var, num: -self.num, den: self.den }
    }
}

impl Ring for RatFun {
    fn zero() -> Self {
        RatFun { var: Var::T, num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        RatFun { var: Var::T, num: Poly::one(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        RatFun::constant(Var::T, r.clone())
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Field for RatFun {
    fn try_div(&self, rhs: &Self) -> Result<Self, KernelError> {
        self.checked_div(rhs)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.name();
        if self.den.is_one() {
            return self.num.fmt_with(v, f);
        }
        write!(f, "(")?;
        self.num.fmt_with(v, f)?;
        write!(f, ")/(")?;
        self.den.fmt_with(v, f)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat};

    fn t() -> RatFun {
        RatFun::var(Var::T)
    }

    #[test]
    fn cancels_common_factor() {
        let one = RatFun::one();
        let f = (t() * t() - one.clone()).try_div(&(t() - one.clone())).unwrap();
        assert_eq!(f, t() + one);
        assert!(f.denom().is_one());
    }

    #[test]
    fn add_then_subtract_is_identity() {
        let f = (t() + RatFun::from_i64(2)).try_inv().unwrap();
        let g = t() * t() * RatFun::constant(Var::T, rat(3, 4));
        assert_eq!((f.clone() + g.clone()) - g, f);
    }

    #[test]
    fn mixed_variables_rejected() {
        let g = RatFun::var(Var::Gamma);
        assert!(matches!(t().checked_add(&g), Err(KernelError::MixedField(..))));
        // constants combine with anything
        assert!(g.checked_add(&RatFun::from_i64(3)).is_ok());
    }

    #[test]
    fn compose_substitution() {
        // f(t) = 1/t composed with t -> t^2 gives 1/t^2
        let f = t().try_inv().unwrap();
        let s = t() * t();
        assert_eq!(f.compose(&s).unwrap(), s.try_inv().unwrap());
        assert_eq!(f.eval(&int(4)).unwrap(), rat(1, 4));
    }
}
