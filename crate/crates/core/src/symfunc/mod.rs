//! Partitions and symmetric functions in the power-sum, monomial and
//! elementary bases.

mod partition;
pub mod transition;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

pub use partition::{partitions, Partition};

use crate::error::{Error, Result};
use crate::kernel::{Field, Ring, ScalarJson};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Basis {
    P,
    M,
    E,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::P => "p",
            Basis::M => "m",
            Basis::E => "e",
        }
    }

    pub fn parse(s: &str) -> Option<Basis> {
        match s {
            "p" => Some(Basis::P),
            "m" => Some(Basis::M),
            "e" => Some(Basis::E),
            _ => None,
        }
    }
}

/// Finite linear combination of basis elements indexed by partitions.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct SymFunc<F> {
    basis: Basis,
    terms: BTreeMap<Partition, F>,
}

impl<F: Ring> SymFunc<F> {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::term(basis, Partition::empty(), F::one())
    }

    pub fn term(basis: Basis, lambda: Partition, c: F) -> Self {
        let mut f = Self::zero(basis);
        f.add_term(lambda, c);
        f
    }

    /// The single basis element `b_lambda`.
    pub fn basis_elem(basis: Basis, lambda: Partition) -> Self {
        Self::term(basis, lambda, F::one())
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, F)>) -> Self {
        let mut f = Self::zero(basis);
        for (l, c) in terms {
            f.add_term(l, c);
        }
        f
    }

    /// Reads coefficients listed in [`partitions`] order.
    pub fn from_vector(basis: Basis, n: usize, v: &[F]) -> Self {
        Self::from_terms(basis, partitions(n).into_iter().zip(v.iter().cloned()))
    }

    pub fn add_term(&mut self, lambda: Partition, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&lambda) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(lambda, s);
                }
            }
            None => {
                self.terms.insert(lambda, c);
            }
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, F> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> F {
        self.terms.get(lambda).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Partition::size);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Degree-`n` coefficients in [`partitions`] order.
    pub fn vector(&self, n: usize) -> Vec<F> {
        partitions(n).iter().map(|l| self.coeff(l)).collect()
    }

    pub fn homogeneous_part(&self, n: usize) -> Self {
        Self::from_terms(
            self.basis,
            self.terms.iter().filter(|(l, _)| l.size() == n).map(|(l, c)| (l.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.basis, self.terms.iter().map(|(l, x)| (l.clone(), x.clone() * c.clone())))
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> SymFunc<G> {
        SymFunc::from_terms(self.basis, self.terms.iter().map(|(l, c)| (l.clone(), f(c))))
    }

    pub fn try_map<G: Ring, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<SymFunc<G>, E> {
        let mut out = SymFunc::zero(self.basis);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let other = other.convert(self.basis);
        let mut out = self.clone();
        for (l, c) in other.terms {
            out.add_term(l, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    /// The same element expressed in `target`.
    pub fn convert(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let mut degrees: Vec<usize> = self.terms.keys().map(Partition::size).collect();
        degrees.dedup();
        let mut out = Self::zero(target);
        for n in degrees {
            let v = self.vector(n);
            let w = change_basis(&v, n, self.basis, target);
            for (l, c) in partitions(n).into_iter().zip(w) {
                out.add_term(l, c);
            }
        }
        out
    }

    /// Product in the ring of symmetric functions, returned in the basis of `self`.
    pub fn multiply(&self, other: &Self) -> Self {
        let work = if self.basis == Basis::M { Basis::P } else { self.basis };
        let (a, b) = (self.convert(work), other.convert(work));
        let mut out = Self::zero(work);
        for (la, ca) in &a.terms {
            for (lb, cb) in &b.terms {
                out.add_term(la.union(lb), ca.clone() * cb.clone());
            }
        }
        out.convert(self.basis)
    }

    pub fn to_json(&self) -> Value
    where
        F: ScalarJson,
    {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(l, c)| json!({"partition": l.parts(), "coeff": c.to_json()}))
            .collect();
        json!({"basis": self.basis.tag(), "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self>
    where
        F: ScalarJson,
    {
        let bad = || Error::Invalid("malformed symmetric function JSON".into());
        let basis = v.get("basis").and_then(Value::as_str).and_then(Basis::parse).ok_or_else(bad)?;
        let mut out = Self::zero(basis);
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(bad)? {
            let parts = t
                .get("partition")
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?;
            let c = F::from_json(t.get("coeff").ok_or_else(bad)?)?;
            out.add_term(Partition::from_parts(parts)?, c);
        }
        Ok(out)
    }
}

fn apply<F: Ring>(m: &crate::kernel::Matrix<crate::kernel::Rational>, v: &[F]) -> Vec<F> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .filter(|(a, b)| !Ring::is_zero(*a) && !b.is_zero())
                .fold(F::zero(), |acc, (a, b)| acc + b.scale(a))
        })
        .collect()
}

/// Converts a degree-`n` coefficient vector between bases.
pub fn change_basis<F: Ring>(v: &[F], n: usize, from: Basis, to: Basis) -> Vec<F> {
    use transition::*;
    let to_p = match from {
        Basis::P => v.to_vec(),
        Basis::M => apply(&m_to_p(n), v),
        Basis::E => apply(&e_to_p(n), v),
    };
    match to {
        Basis::P => to_p,
        Basis::M => apply(&p_to_m(n), &to_p),
        Basis::E => apply(&p_to_e(n), &to_p),
    }
}

/// `<f, g>_{q,t}` with `<p_l, p_m> = delta z_l prod (1 - q^{l_i}) / (1 - t^{l_i})`.
pub fn inner_qt<F: Field>(f: &SymFunc<F>, g: &SymFunc<F>, q: &F, t: &F) -> Result<F> {
    let (f, g) = (f.convert(Basis::P), g.convert(Basis::P));
    let mut acc = F::zero();
    for (l, a) in &f.terms {
        let Some(b) = g.terms.get(l) else { continue };
        let mut w = F::from_rational(&l.z_lambda());
        for &k in l.parts() {
            let den = F::one() - t.pow(k as u32);
            if den.is_zero() {
                return Err(Error::Pole(format!("1 - t^{k} vanishes")));
            }
            w = (w * (F::one() - q.pow(k as u32))).try_div(&den)?;
        }
        acc = acc + a.clone() * b.clone() * w;
    }
    Ok(acc)
}

impl<F: Ring> fmt::Display for SymFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let b = self.basis.tag();
        let items: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| {
                let e = if l.is_empty() { "1".to_string() } else { format!("{b}{l}") };
                if c.is_one() {
                    e
                } else {
                    format!("({c})*{e}")
                }
            })
            .collect();
        write!(f, "{}", items.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat, Rational};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn p11_in_monomials() {
        let f = SymFunc::<Rational>::basis_elem(Basis::P, p(&[1, 1])).convert(Basis::M);
        assert_eq!(f, SymFunc::from_terms(Basis::M, [(p(&[2]), int(1)), (p(&[1, 1]), int(2))]));
    }

    #[test]
    fn e3_by_newton() {
        let f = SymFunc::<Rational>::basis_elem(Basis::E, p(&[3])).convert(Basis::P);
        let want = SymFunc::from_terms(
            Basis::P,
            [(p(&[1, 1, 1]), rat(1, 6)), (p(&[2, 1]), rat(-1, 2)), (p(&[3]), rat(1, 3))],
        );
        assert_eq!(f, want);
    }

    #[test]
    fn products() {
        let p2 = SymFunc::<Rational>::basis_elem(Basis::P, p(&[2]));
        let p1 = SymFunc::<Rational>::basis_elem(Basis::P, p(&[1]));
        assert_eq!(p2.multiply(&p1), SymFunc::basis_elem(Basis::P, p(&[2, 1])));
        assert_eq!(p2.multiply(&SymFunc::one(Basis::P)), p2);
        let m1 = SymFunc::<Rational>::basis_elem(Basis::M, p(&[1]));
        assert_eq!(m1.multiply(&m1), p1.multiply(&p1).convert(Basis::M));
    }

    #[test]
    fn inner_product_values() {
        let (q, t) = (rat(2, 3), rat(3, 5));
        let p1 = SymFunc::<Rational>::basis_elem(Basis::P, p(&[1]));
        let p11 = SymFunc::<Rational>::basis_elem(Basis::P, p(&[1, 1]));
        let p2 = SymFunc::<Rational>::basis_elem(Basis::P, p(&[2]));
        let r = (int(1) - &q) / (int(1) - &t);
        assert_eq!(inner_qt(&p1, &p1, &q, &t).unwrap(), r.clone());
        assert_eq!(inner_qt(&p2, &p11, &q, &t).unwrap(), int(0));
        assert_eq!(inner_qt(&p11, &p11, &q, &t).unwrap(), int(2) * &r * &r);
        assert!(matches!(inner_qt(&p1, &p1, &q, &int(1)), Err(Error::Pole(_))));
    }
}
