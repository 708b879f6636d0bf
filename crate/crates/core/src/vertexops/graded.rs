use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{Matrix, Rational, Ring, ScalarJson};
use crate::symfunc::{partitions, transition, Basis, SymFunc};

/// Degree-indexed matrices of an operator of fixed degree shift.
///
/// The block for input degree `n` maps coefficient vectors over
/// `partitions(n)` to vectors over `partitions(n + shift)`. Blocks exist for
/// every `n` with `n` and `n + shift` in `0..=max_degree`.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedOperator<F> {
    shift: i64,
    basis: Basis,
    max_degree: usize,
    blocks: BTreeMap<usize, Matrix<F>>,
}

fn target(n: usize, shift: i64) -> Option<usize> {
    usize::try_from(n as i64 + shift).ok()
}

fn rational_block<F: Ring>(m: &Matrix<Rational>) -> Matrix<F> {
    m.map(F::from_rational)
}

impl<F: Ring> GradedOperator<F> {
    pub fn zero(shift: i64, basis: Basis, max_degree: usize) -> Self {
        let blocks = (0..=max_degree)
            .filter_map(|n| {
                let e = target(n, shift).filter(|&e| e <= max_degree)?;
                Some((n, Matrix::zeros(partitions(e).len(), partitions(n).len())))
            })
            .collect();
        GradedOperator { shift, basis, max_degree, blocks }
    }

    /// `c * Id`.
    pub fn scalar(c: F, basis: Basis, max_degree: usize) -> Self {
        let mut op = Self::zero(0, basis, max_degree);
        for (_, b) in op.blocks.iter_mut() {
            for i in 0..b.rows() {
                b.set(i, i, c.clone());
            }
        }
        op
    }

    pub fn identity(basis: Basis, max_degree: usize) -> Self {
        Self::scalar(F::one(), basis, max_degree)
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn blocks(&self) -> &BTreeMap<usize, Matrix<F>> {
        &self.blocks
    }

    pub fn block(&self, n: usize) -> Option<&Matrix<F>> {
        self.blocks.get(&n)
    }

    pub(crate) fn set_block(&mut self, n: usize, m: Matrix<F>) {
        if self.blocks.contains_key(&n) {
            self.blocks.insert(n, m);
        }
    }

    /// Restriction to degrees `<= d`.
    pub fn truncate(&self, d: usize) -> Self {
        let d = d.min(self.max_degree);
        let blocks = self
            .blocks
            .iter()
            .filter(|(&n, _)| n <= d && target(n, self.shift).is_some_and(|e| e <= d))
            .map(|(&n, m)| (n, m.clone()))
            .collect();
        GradedOperator { shift: self.shift, basis: self.basis, max_degree: d, blocks }
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> GradedOperator<G> {
        GradedOperator {
            shift: self.shift,
            basis: self.basis,
            max_degree: self.max_degree,
            blocks: self.blocks.iter().map(|(&n, m)| (n, m.map(&f))).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if self.shift != other.shift {
            return Err(Error::Invalid(format!("shift {} vs {}", self.shift, other.shift)));
        }
        let other = other.to_basis(self.basis);
        let d = self.max_degree.min(other.max_degree);
        let (a, b) = (self.truncate(d), other.truncate(d));
        let mut out = a.clone();
        for (n, m) in out.blocks.iter_mut() {
            let bm = &b.blocks[n];
            let rows = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| f(m.get(i, j), bm.get(i, j))).collect())
                .collect();
            *m = Matrix::from_rows(rows).expect("same shape");
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    /// `self . other`, defined on degrees where both factors are.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let other = other.to_basis(self.basis);
        let d = self.max_degree.min(other.max_degree);
        let shift = self.shift + other.shift;
        let mut out = Self::zero(shift, self.basis, d);
        for (&n, m) in out.blocks.iter_mut() {
            // a negative intermediate degree means `other` annihilates this block
            let Some(mid) = target(n, other.shift) else { continue };
            if mid > d {
                return Err(Error::Truncation(format!("intermediate degree {mid} exceeds {d}")));
            }
            if let (Some(a), Some(b)) = (self.blocks.get(&mid), other.blocks.get(&n)) {
                *m = a.mul(b)?;
            }
        }
        Ok(out)
    }

    /// Re-expresses the blocks in another basis.
    pub fn to_basis(&self, basis: Basis) -> Self {
        if basis == self.basis {
            return self.clone();
        }
        let into_p = |n: usize, b: Basis| -> Matrix<Rational> {
            match b {
                Basis::P => Matrix::identity(partitions(n).len()),
                Basis::M => (*transition::m_to_p(n)).clone(),
                Basis::E => (*transition::e_to_p(n)).clone(),
            }
        };
        let from_p = |n: usize, b: Basis| -> Matrix<Rational> {
            match b {
                Basis::P => Matrix::identity(partitions(n).len()),
                Basis::M => (*transition::p_to_m(n)).clone(),
                Basis::E => (*transition::p_to_e(n)).clone(),
            }
        };
        let blocks = self
            .blocks
            .iter()
            .map(|(&n, m)| {
                let e = target(n, self.shift).unwrap();
                let left: Matrix<F> = rational_block(&from_p(e, basis).mul(&into_p(e, self.basis)).unwrap());
                let right: Matrix<F> = rational_block(&from_p(n, self.basis).mul(&into_p(n, basis)).unwrap());
                (n, left.mul(m).unwrap().mul(&right).unwrap())
            })
            .collect();
        GradedOperator { shift: self.shift, basis, max_degree: self.max_degree, blocks }
    }

    /// Applies the operator; the result is in the operator's basis.
    pub fn apply(&self, f: &SymFunc<F>) -> Result<SymFunc<F>> {
        let f = f.convert(self.basis);
        let mut degrees: Vec<usize> = f.terms().keys().map(|l| l.size()).collect();
        degrees.dedup();
        let mut out = SymFunc::zero(self.basis);
        for n in degrees {
            let Some(e) = target(n, self.shift) else { continue };
            let block = self.blocks.get(&n).ok_or_else(|| {
                Error::Truncation(format!("degree {n} outside operator range 0..={}", self.max_degree))
            })?;
            let w = block.mul_vec(&f.vector(n))?;
            out = out.add(&SymFunc::from_vector(self.basis, e, &w));
        }
        Ok(out)
    }

    /// First entry where the two operators differ: `(degree, row, col, lhs, rhs)`.
    pub fn first_mismatch(&self, other: &Self) -> Option<(usize, usize, usize, F, F)> {
        if self.shift != other.shift {
            return Some((0, 0, 0, F::zero(), F::zero()));
        }
        let other = other.to_basis(self.basis);
        let d = self.max_degree.min(other.max_degree);
        for (&n, a) in self.truncate(d).blocks.iter() {
            let b = &other.blocks[&n];
            for i in 0..a.rows() {
                for j in 0..a.cols() {
                    if a.get(i, j) != b.get(i, j) {
                        return Some((n, i, j, a.get(i, j).clone(), b.get(i, j).clone()));
                    }
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value
    where
        F: ScalarJson,
    {
        let blocks: serde_json::Map<String, Value> = self
            .blocks
            .iter()
            .map(|(n, m)| {
                let rows: Vec<Value> =
                    m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| x.to_json()).collect())).collect();
                (n.to_string(), Value::Array(rows))
            })
            .collect();
        json!({"shift": self.shift, "basis": self.basis.tag(), "blocks": blocks})
    }
}
