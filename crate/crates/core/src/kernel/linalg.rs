use std::fmt;

use super::{Field, Ring};
use crate::error::KernelError;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Ring> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, KernelError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(KernelError::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, KernelError> {
        if self.cols != rhs.rows {
            return Err(KernelError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, KernelError> {
        if self.cols != v.len() {
            return Err(KernelError::Dimension(format!("{} columns vs vector of {}", self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, KernelError> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(KernelError::Dimension("vstack column mismatch".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols, data })
    }
}

impl<F: Field> Matrix<F> {
    /// Fraction-free row echelon form. Returns the pivot columns and the
    /// number of row swaps.
    fn bareiss(&mut self) -> (Vec<usize>, usize) {
        let mut prev = F::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        let mut swaps = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
                swaps += 1;
            }
            let piv = self.get(r, c).clone();
            for i in r + 1..self.rows {
                let f = self.get(i, c).clone();
                for j in c + 1..self.cols {
                    let v = piv.clone() * self.get(i, j).clone() - f.clone() * self.get(r, j).clone();
                    let v = if prev.is_one() { v } else { v.try_div(&prev).expect("nonzero pivot") };
                    self.set(i, j, v);
                }
                self.set(i, c, F::zero());
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        (pivots, swaps)
    }

    pub fn rank(&self) -> usize {
        self.clone().bareiss().0.len()
    }

    pub fn det(&self) -> Result<F, KernelError> {
        if self.rows != self.cols {
            return Err(KernelError::Dimension("determinant of non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(F::one());
        }
        let mut m = self.clone();
        let (pivots, swaps) = m.bareiss();
        if pivots.len() < self.rows {
            return Ok(F::zero());
        }
        let d = m.get(self.rows - 1, self.cols - 1).clone();
        Ok(if swaps % 2 == 1 { -d } else { d })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, KernelError> {
        let n = self.rows;
        if n != self.cols {
            return Err(KernelError::Dimension("inverse of non-square matrix".into()));
        }
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a.get(i, c).is_zero()).ok_or(KernelError::DivisionByZero)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let pinv = a.get(c, c).try_inv()?;
            for j in 0..n {
                a.set(c, j, a.get(c, j).clone() * pinv.clone());
                inv.set(c, j, inv.get(c, j).clone() * pinv.clone());
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let v = a.get(i, j).clone() - f.clone() * a.get(c, j).clone();
                    a.set(i, j, v);
                    let w = inv.get(i, j).clone() - f.clone() * inv.get(c, j).clone();
                    inv.set(i, j, w);
                }
            }
        }
        Ok(inv)
    }
}

/// Basis of the right kernel of `m`. Each vector is scaled so that its
/// last nonzero entry (the free variable) is one.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let (pivots, _) = a.bareiss();
    let n = a.cols;
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![F::zero(); n];
        x[f] = F::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut s = F::zero();
            for j in pc + 1..n {
                if !x[j].is_zero() && !a.get(r, j).is_zero() {
                    s = s + a.get(r, j).clone() * x[j].clone();
                }
            }
            x[pc] = (-s).try_div(a.get(r, pc)).expect("nonzero pivot");
        }
        basis.push(x);
    }
    basis
}

impl<F: Ring> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = nullspace(&m(&[&[1, 1], &[2, 2]]));
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
        assert!(nullspace(&Matrix::<Rational>::identity(3)).is_empty());
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]);
        assert_eq!(a.det().unwrap(), int(-4));
        let prod = a.mul(&a.inverse().unwrap()).unwrap();
        assert_eq!(prod, Matrix::identity(3));
    }

    #[test]
    fn skipped_column_echelon() {
        let a = m(&[&[0, 1, 2, 3], &[0, 2, 4, 7], &[0, 0, 0, 1]]);
        assert_eq!(a.rank(), 2);
        for v in nullspace(&a) {
            assert!(a.mul_vec(&v).unwrap().iter().all(|x| *x == int(0)));
        }
    }
}
