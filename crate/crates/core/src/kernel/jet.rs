use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rational, Ring};
use crate::error::KernelError;

const EXACT: usize = usize::MAX;

/// Truncated power series `c0 + c1 h + ... ` known modulo `h^prec`.
///
/// Precision is tracked per value: exact constants have unbounded precision,
/// products and quotients lose precision according to the valuations of
/// their operands, so dividing by a jet of positive valuation is allowed as
/// long as the dividend vanishes to at least the same order.
#[derive(Clone, Debug)]
pub struct Jet<F> {
    coeffs: Vec<F>,
    prec: usize,
}

impl<F: Field> Jet<F> {
    pub fn new(mut coeffs: Vec<F>, prec: usize) -> Self {
        coeffs.truncate(prec);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Jet { coeffs, prec }
    }

    /// A polynomial in `h` with unbounded precision.
    pub fn exact(coeffs: Vec<F>) -> Self {
        Self::new(coeffs, EXACT)
    }

    pub fn constant(c: F) -> Self {
        Self::exact(vec![c])
    }

    /// `e^{a h}` modulo `h^{order+1}`.
    pub fn exp_linear(a: F, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = F::one();
        for k in 0..=order {
            if k > 0 {
                term = term * a.clone().scale(&Rational::new(1.into(), (k as i64).into()));
            }
            coeffs.push(term.clone());
        }
        Self::new(coeffs, order + 1)
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Number of known coefficients; `None` when exact.
    pub fn precision(&self) -> Option<usize> {
        (self.prec != EXACT).then_some(self.prec)
    }

    /// Index of the first nonzero known coefficient; equals the precision
    /// when every known coefficient vanishes.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.prec)
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::new(self.coeffs.clone(), prec.min(self.prec))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Jet<G> {
        Jet::new(self.coeffs.iter().map(f).collect(), self.prec)
    }

    /// `exp(self)` for a jet with vanishing constant term, modulo `h^{order+1}`.
    pub fn exp(&self, order: usize) -> Result<Self, KernelError> {
        self.series(order, |k| {
            let mut f = Rational::from_integer(1.into());
            for i in 1..=k {
                f /= Rational::from_integer((i as i64).into());
            }
            f
        })
    }

    /// `log(1 + self)` for a jet with vanishing constant term.
    pub fn ln_1p(&self, order: usize) -> Result<Self, KernelError> {
        self.series(order, |k| {
            if k == 0 {
                Rational::from_integer(0.into())
            } else {
                let s = if k % 2 == 1 { 1 } else { -1 };
                Rational::new(s.into(), (k as i64).into())
            }
        })
    }

    fn series(&self, order: usize, coeff: impl Fn(usize) -> Rational) -> Result<Self, KernelError> {
        if !self.coeff(0).is_zero() {
            return Err(KernelError::PrecisionLoss(
                "series argument must have zero constant term".into(),
            ));
        }
        let prec = self.prec.min(order + 1);
        let x = self.truncate(prec);
        let mut acc = Self::new(vec![], prec);
        let mut power = Self::new(vec![F::one()], prec);
        for k in 0..prec {
            acc = acc + power.clone().map(|c| c.scale(&coeff(k)));
            power = (power * x.clone()).truncate(prec);
        }
        Ok(acc)
    }
}

impl<F: Field> PartialEq for Jet<F> {
    fn eq(&self, other: &Self) -> bool {
        let p = self.prec.min(other.prec);
        let n = self.coeffs.len().max(other.coeffs.len()).min(p);
        (0..n).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl<F: Field> Add for Jet<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        let n = self.coeffs.len().max(rhs.coeffs.len()).min(prec);
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect(), prec)
    }
}

impl<F: Field> Neg for Jet<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Jet { coeffs: self.coeffs.into_iter().map(|c| -c).collect(), prec: self.prec }
    }
}

impl<F: Field> Sub for Jet<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for Jet<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let prec = self
            .prec
            .saturating_add(rhs.valuation())
            .min(rhs.prec.saturating_add(self.valuation()));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::new(vec![], prec);
        }
        let n = (self.coeffs.len() + rhs.coeffs.len() - 1).min(prec);
        let mut out = vec![F::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out, prec)
    }
}

impl<F: Field> Ring for Jet<F> {
    fn zero() -> Self {
        Self::exact(vec![])
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(F::from_rational(r))
    }
}

impl<F: Field> Field for Jet<F> {
    fn try_div(&self, rhs: &Self) -> Result<Self, KernelError> {
        let vb = rhs.coeffs.iter().position(|c| !c.is_zero()).ok_or(KernelError::DivisionByZero)?;
        if self.coeffs.iter().take(vb).any(|c| !c.is_zero()) {
            return Err(KernelError::PrecisionLoss(format!(
                "dividend has lower valuation than divisor (order {vb})"
            )));
        }
        if self.prec <= vb {
            return Err(KernelError::PrecisionLoss(format!(
                "dividend known only to order {} but divisor has valuation {vb}",
                self.prec
            )));
        }
        let a: Vec<F> = self.coeffs.iter().skip(vb).cloned().collect();
        let b: Vec<F> = rhs.coeffs[vb..].to_vec();
        let pa = if self.prec == EXACT { EXACT } else { self.prec - vb };
        let pb = if rhs.prec == EXACT { EXACT } else { rhs.prec - vb };
        let mut prec = pa.min(pb);
        if prec == EXACT {
            if b.len() == 1 {
                let inv = b[0].try_inv()?;
                return Ok(Self::exact(a.into_iter().map(|c| c * inv.clone()).collect()));
            }
            // quotient of exact polynomials is an infinite series; keep as many
            // terms as both operands carry
            prec = a.len().max(b.len()) + 1;
        }
        let inv0 = b[0].try_inv()?;
        let mut q: Vec<F> = Vec::with_capacity(prec);
        for k in 0..prec {
            let mut s = a.get(k).cloned().unwrap_or_else(F::zero);
            for j in 1..=k.min(b.len().saturating_sub(1)) {
                s = s - b[j].clone() * q[k - j].clone();
            }
            q.push(s * inv0.clone());
        }
        Ok(Self::new(q, prec))
    }
}

impl<F: Field> fmt::Display for Jet<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*hb")?,
                _ => write!(f, "({c})*hb^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if self.prec != EXACT {
            write!(f, " + O(hb^{})", self.prec)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat};

    type J = Jet<Rational>;

    #[test]
    fn exp_of_linear_matches_factorials() {
        let e = J::exp_linear(int(1), 4);
        assert_eq!(e.coeffs(), &[int(1), int(1), rat(1, 2), rat(1, 6), rat(1, 24)]);
        assert_eq!(e.precision(), Some(5));
    }

    #[test]
    fn exp_log_roundtrip() {
        let j = J::new(vec![int(0), rat(3, 2), int(-2), rat(1, 7)], 6);
        let back = j.ln_1p(5).unwrap().exp(5).unwrap();
        assert_eq!(back, j.clone() + J::one());
    }

    #[test]
    fn division_by_positive_valuation_loses_precision() {
        // (2h + 3h^2) / (h + h^2) = (2 + 3h)/(1 + h) = 2 + h - h^2 ...
        let a = J::new(vec![int(0), int(2), int(3)], 5);
        let b = J::new(vec![int(0), int(1), int(1)], 5);
        let q = a.try_div(&b).unwrap();
        assert_eq!(q.precision(), Some(4));
        assert_eq!(q.coeffs(), &[int(2), int(1), int(-1), int(1)]);
        assert!(J::new(vec![int(1)], 5).try_div(&b).is_err());
    }

    #[test]
    fn product_precision_uses_valuations() {
        let a = J::new(vec![int(0), int(1)], 3);
        let b = J::new(vec![int(0), int(0), int(1)], 3);
        assert_eq!((a * b).precision(), Some(4));
    }
}
