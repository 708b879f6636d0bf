//! Symmetric polynomials in `N` variables, the `N`-variable operators
//! `C0_(N)` and `C1_(N)(g)`, and how they compare with the
//! infinite-variable modes under `pr_N`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{Matrix, Rational, Ring};
use crate::symfunc::{partitions, Basis, Partition, SymFunc};
use crate::vertexops::{c0_mode, c1_mode};

/// Symmetric polynomial in `x_1..x_N`, stored by monomial orbits `m_lambda`
/// with `l(lambda) <= N`.
#[derive(Clone, Debug, PartialEq)]
pub struct NPoly {
    n: usize,
    terms: BTreeMap<Partition, Rational>,
}

impl NPoly {
    pub fn zero(n: usize) -> Self {
        NPoly { n, terms: BTreeMap::new() }
    }

    pub fn orbit(n: usize, lambda: Partition) -> Self {
        let mut p = Self::zero(n);
        p.add_term(lambda, Rational::one());
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops orbits that do not exist in `N` variables.
    pub fn add_term(&mut self, lambda: Partition, c: Rational) {
        if lambda.len() > self.n || c.is_zero() {
            return;
        }
        let e = self.terms.entry(lambda.clone()).or_insert_with(Rational::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (l, x) in &self.terms {
            out.add_term(l.clone(), x.clone() * c.clone());
        }
        out
    }

    /// `x_i -> 0` for `i > m`.
    pub fn restrict(&self, m: usize) -> Self {
        let mut out = Self::zero(m.min(self.n));
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    /// Full expansion into monomials `x^a`.
    pub fn expand(&self) -> BTreeMap<Vec<u32>, Rational> {
        let mut out = BTreeMap::new();
        for (l, c) in &self.terms {
            for e in orbit_exponents(l, self.n) {
                out.insert(e, c.clone());
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|(l, c)| json!([l.parts(), c.to_string()])).collect();
        json!({"N": self.n, "terms": terms})
    }
}

impl fmt::Display for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(l, c)| format!("({c})*m{l}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Distinct permutations of `lambda` padded to length `n`.
fn orbit_exponents(lambda: &Partition, n: usize) -> Vec<Vec<u32>> {
    let mut e: Vec<u32> = lambda.parts().iter().map(|&p| p as u32).collect();
    e.resize(n, 0);
    e.sort_unstable();
    let mut out = vec![e.clone()];
    while next_permutation(&mut e) {
        out.push(e.clone());
    }
    out
}

fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// `pr_N`: `p_r -> sum_i x_i^r`. On the monomial basis it keeps `m_lambda`
/// with `l(lambda) <= N`.
pub fn pr_n(f: &SymFunc<Rational>, n: usize) -> NPoly {
    let m = f.convert(Basis::M);
    let mut out = NPoly::zero(n);
    for (l, c) in m.terms() {
        out.add_term(l.clone(), c.clone());
    }
    out
}

/// Integer polynomial in `N` variables.
type IPoly = HashMap<Vec<u32>, i128>;

fn overflow() -> Error {
    Error::Invalid("integer overflow in N-variable arithmetic".into())
}

fn padd(p: &mut IPoly, e: Vec<u32>, c: i128) -> Result<()> {
    if c == 0 {
        return Ok(());
    }
    let x = p.entry(e.clone()).or_insert(0);
    *x = x.checked_add(c).ok_or_else(overflow)?;
    if *x == 0 {
        p.remove(&e);
    }
    Ok(())
}

fn pmul(a: &IPoly, b: &IPoly) -> Result<IPoly> {
    let mut out = IPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            padd(&mut out, e, ca.checked_mul(*cb).ok_or_else(overflow)?)?;
        }
    }
    Ok(out)
}

fn linear(n: usize, i: usize, j: usize, sign: i128) -> IPoly {
    let mut p = IPoly::new();
    let mut e = vec![0; n];
    e[i] = 1;
    p.insert(e.clone(), 1);
    e[i] = 0;
    e[j] = 1;
    p.insert(e, sign);
    p
}

fn constant(n: usize, c: i128) -> IPoly {
    let mut p = IPoly::new();
    if c != 0 {
        p.insert(vec![0; n], c);
    }
    p
}

/// Exact quotient by `x_k - x_l`; fails if there is a remainder.
fn div_linear(p: &IPoly, k: usize, l: usize) -> Result<IPoly> {
    // group by the degree in x_k, divide synthetically at x_k = x_l
    let mut by_deg: BTreeMap<u32, IPoly> = BTreeMap::new();
    for (e, c) in p {
        let mut rest = e.clone();
        rest[k] = 0;
        padd(by_deg.entry(e[k]).or_default(), rest, *c)?;
    }
    let top = match by_deg.keys().next_back() {
        Some(&d) => d,
        None => return Ok(IPoly::new()),
    };
    let mut q = IPoly::new();
    let mut carry = IPoly::new();
    for d in (0..=top).rev() {
        // coefficient of x_k^d in p plus x_l * (previous quotient coefficient)
        let mut cur = by_deg.remove(&d).unwrap_or_default();
        for (e, c) in &carry {
            let mut e = e.clone();
            e[l] += 1;
            padd(&mut cur, e, *c)?;
        }
        if d == 0 {
            if !cur.is_empty() {
                return Err(Error::NonpolynomialResult(format!("remainder modulo x{} - x{}", k + 1, l + 1)));
            }
            break;
        }
        for (e, c) in &cur {
            let mut e2 = e.clone();
            e2[k] = d - 1;
            padd(&mut q, e2, *c)?;
        }
        carry = cur;
    }
    Ok(q)
}

fn from_npoly_orbit(lambda: &Partition, n: usize) -> IPoly {
    orbit_exponents(lambda, n).into_iter().map(|e| (e, 1)).collect()
}

/// Reads a symmetric integer polynomial back in orbit form, checking symmetry.
fn to_orbits(p: &IPoly, n: usize) -> Result<BTreeMap<Partition, i128>> {
    let mut out = BTreeMap::new();
    for (e, c) in p {
        let mut parts: Vec<usize> = e.iter().filter(|&&x| x > 0).map(|&x| x as usize).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lam = Partition::new(parts);
        match out.get(&lam) {
            Some(&c0) if c0 != *c => {
                return Err(Error::Mismatch(format!("asymmetric result at m{lam}")));
            }
            _ => {
                out.insert(lam, *c);
            }
        }
    }
    for (lam, _) in &out {
        for e in orbit_exponents(lam, n) {
            if !p.contains_key(&e) {
                return Err(Error::Mismatch(format!("asymmetric result at m{lam}")));
            }
        }
    }
    Ok(out)
}

fn flip(p: &IPoly, i: usize) -> IPoly {
    p.iter().map(|(e, &c)| (e.clone(), if e[i] % 2 == 1 { -c } else { c })).collect()
}

fn euler(p: &IPoly, i: usize) -> IPoly {
    p.iter().filter(|(e, _)| e[i] > 0).map(|(e, &c)| (e.clone(), c * e[i] as i128)).collect()
}

/// `prod_{k<l, k,l != skip} (x_k - x_l)`.
fn vandermonde(n: usize, skip: Option<usize>) -> Result<IPoly> {
    let mut v = constant(n, 1);
    for k in 0..n {
        for l in k + 1..n {
            if Some(k) == skip || Some(l) == skip {
                continue;
            }
            v = pmul(&v, &linear(n, k, l, -1))?;
        }
    }
    Ok(v)
}

fn divide_vandermonde(mut p: IPoly, n: usize) -> Result<IPoly> {
    for k in 0..n {
        for l in k + 1..n {
            p = div_linear(&p, k, l)?;
        }
    }
    Ok(p)
}

/// `C0_(N) m_lambda` and the two parts of `C1_(N)(g) m_lambda`, without the
/// overall factors: `C0 = 2 * c0`, `C1 = (d + g e) / 2`.
struct Columns {
    c0: BTreeMap<Partition, i128>,
    d: BTreeMap<Partition, i128>,
    e: BTreeMap<Partition, i128>,
}

/// Over the common denominator `prod_{i<j}(x_i - x_j)`, term `i` carries
/// `(-1)^i prod_{k<l; k,l != i}(x_k - x_l)`. The signs `-(x_i + x_j)` and
/// `(-1)^{N-1}` cancel. In `C1` the factor `x_i/(x_i + x_k)` removes one
/// `x_i + x_k` from the product.
fn columns(lambda: &Partition, n: usize) -> Result<Columns> {
    let f = from_npoly_orbit(lambda, n);
    let (mut c0, mut d, mut e) = (IPoly::new(), IPoly::new(), IPoly::new());
    for i in 0..n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let vi = pmul(&vandermonde(n, Some(i))?, &constant(n, sign))?;
        let tf = flip(&f, i);
        let mut plus = constant(n, 1);
        for j in (0..n).filter(|&j| j != i) {
            plus = pmul(&plus, &linear(n, i, j, 1))?;
        }
        for (x, c) in pmul(&pmul(&vi, &plus)?, &tf)? {
            padd(&mut c0, x, c)?;
        }
        for (x, c) in pmul(&pmul(&vi, &plus)?, &euler(&tf, i))? {
            padd(&mut d, x, c)?;
        }
        for k in (0..n).filter(|&k| k != i) {
            let mut rest = constant(n, 1);
            for j in (0..n).filter(|&j| j != i && j != k) {
                rest = pmul(&rest, &linear(n, i, j, 1))?;
            }
            let mut xi = vec![0; n];
            xi[i] = 1;
            let xi: IPoly = [(xi, 1)].into_iter().collect();
            for (x, c) in pmul(&pmul(&pmul(&vi, &rest)?, &xi)?, &tf)? {
                padd(&mut e, x, c)?;
            }
        }
    }
    Ok(Columns {
        c0: to_orbits(&divide_vandermonde(c0, n)?, n)?,
        d: to_orbits(&divide_vandermonde(d, n)?, n)?,
        e: to_orbits(&divide_vandermonde(e, n)?, n)?,
    })
}

fn lift(n: usize, m: &BTreeMap<Partition, i128>, scale: &Rational) -> NPoly {
    let mut out = NPoly::zero(n);
    for (l, c) in m {
        out.add_term(l.clone(), Rational::from_integer((*c).into()) * scale.clone());
    }
    out
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// `C0_(N) = 2 (-1)^{N-1} sum_i prod_{j != i} (-(x_i + x_j)/(x_i - x_j)) T_{-1,i}`.
pub fn c0n_apply(f: &NPoly) -> Result<NPoly> {
    let n = f.n;
    let mut out = NPoly::zero(n);
    for (l, c) in &f.terms {
        let col = columns(l, n)?;
        out = out.add(&lift(n, &col.c0, &(Rational::from_integer(2.into()) * c.clone())));
    }
    Ok(out)
}

/// `C1_(N)(g) = (1/2) (-1)^{N-1} sum_i prod_{j != i} (-(x_i + x_j)/(x_i - x_j))
/// (D_i + g sum_{k != i} x_i/(x_i + x_k)) T_{-1,i}`.
pub fn c1n_apply(f: &NPoly, gamma: &Rational) -> Result<NPoly> {
    let n = f.n;
    let mut out = NPoly::zero(n);
    for (l, c) in &f.terms {
        let col = columns(l, n)?;
        let s = half() * c.clone();
        out = out.add(&lift(n, &col.d, &s)).add(&lift(n, &col.e, &(s * gamma.clone())));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    C0,
    C1,
}

fn apply_which(which: Which, f: &NPoly, gamma: &Rational) -> Result<NPoly> {
    match which {
        Which::C0 => c0n_apply(f),
        Which::C1 => c1n_apply(f, gamma),
    }
}

/// `sum_{i=1}^N (-1)^i` and `sum_{i=1}^N i (-1)^i`.
fn alternating_sums(n: usize) -> (i64, i64) {
    let s = if n % 2 == 1 { -1 } else { 0 };
    let si = if n % 2 == 0 { n as i64 / 2 } else { -(n as i64 + 1) / 2 };
    (s, si)
}

/// The `N`-variable operator that is compatible with `pr_N` on the nose.
///
/// Expanding Macdonald's `eta_0 = 1 + (t - 1)(t^{-N} D_N - sum_i t^{-i})` at
/// `q = -e^h`, `t = -e^{g h}` gives `C0_0 = C0_(N) + (-1)^N` and
/// `C1_0 = 4 C1_(N) + g (1/2 - N) C0_(N) + g (s_N - 2 s'_N)`, where
/// `s_N = sum (-1)^i` and `s'_N = sum i (-1)^i`.
pub fn corrected_apply(which: Which, f: &NPoly, gamma: &Rational) -> Result<NPoly> {
    let n = f.n;
    let c0 = c0n_apply(f)?;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    match which {
        Which::C0 => Ok(c0.add(&f.scale(&Rational::from_integer(sign.into())))),
        Which::C1 => {
            let (s, si) = alternating_sums(n);
            let lin = gamma.clone() * (half() - Rational::from_integer((n as i64).into()));
            let shift = gamma.clone() * Rational::from_integer((s - 2 * si).into());
            Ok(c1n_apply(f, gamma)?.scale(&Rational::from_integer(4.into())).add(&c0.scale(&lin)).add(&f.scale(&shift)))
        }
    }
}

/// One `(N, degree)` cell of [`limit_diagnostic`]. Columns run over all
/// partitions of the degree, rows over those with at most `N` parts.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitCell {
    pub n: usize,
    pub degree: usize,
    /// `C_(N) pr_N = pr_N C` on this degree.
    pub literal: bool,
    /// `C_(N) pr_N - pr_N C`.
    pub difference: Matrix<Rational>,
    /// `(1/2)(C_(N) pr_N + pr_{N+1,N} C_(N+1) pr_{N+1}) = pr_N C`, when `N+1`
    /// is within range.
    pub average: Option<bool>,
    /// Agreement after the corrections of [`corrected_apply`].
    pub corrected: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub which: Which,
    pub gamma: Rational,
    pub cells: Vec<LimitCell>,
}

impl LimitReport {
    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                let diff: Vec<Vec<String>> =
                    c.difference.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
                json!({
                    "N": c.n, "degree": c.degree, "literal": c.literal, "average": c.average,
                    "corrected": c.corrected, "difference": diff,
                })
            })
            .collect();
        let which = match self.which {
            Which::C0 => "C0",
            Which::C1 => "C1",
        };
        json!({"operator": which, "gamma": self.gamma.to_string(), "cells": cells})
    }
}

/// Compares `C_(N)` with the infinite-variable mode pushed through `pr_N`,
/// literally and after averaging consecutive `N`. Reports; never fails on a
/// mismatch.
pub fn limit_diagnostic(dmax: usize, n_range: &[usize], which: Which, gamma: &Rational) -> Result<LimitReport> {
    if dmax > 6 || n_range.iter().any(|&n| n == 0 || n > 8) {
        return Err(Error::Invalid("need dmax <= 6 and 1 <= N <= 8".into()));
    }
    let inf = match which {
        Which::C0 => c0_mode::<Rational>(0, dmax),
        Which::C1 => c1_mode(gamma, 0, dmax),
    }
    .to_basis(Basis::M);
    let mut cells = Vec::new();
    for &n in n_range {
        for d in 0..=dmax {
            let cols = partitions(d);
            let rows: Vec<Partition> = cols.iter().filter(|l| l.len() <= n).cloned().collect();
            let block = inf.block(d).expect("degree within dmax");
            let image = |m: usize| -> Result<Vec<NPoly>> {
                cols.iter()
                    .map(|l| apply_which(which, &NPoly::orbit(m, l.clone()), gamma).map(|p| p.restrict(n)))
                    .collect()
            };
            let finite = image(n)?;
            let mut diff = Matrix::zeros(rows.len(), cols.len());
            let mut projected = Matrix::zeros(rows.len(), cols.len());
            for (j, _) in cols.iter().enumerate() {
                for (i, r) in rows.iter().enumerate() {
                    let ri = cols.iter().position(|x| x == r).unwrap();
                    let target = block.get(ri, j).clone();
                    projected.set(i, j, target.clone());
                    diff.set(i, j, finite[j].coeff(r) - target);
                }
            }
            let literal = diff.is_zero();
            let mut corrected = true;
            for (j, l) in cols.iter().enumerate() {
                let g = corrected_apply(which, &NPoly::orbit(n, l.clone()), gamma)?;
                for (i, r) in rows.iter().enumerate() {
                    if g.coeff(r) != *projected.get(i, j) {
                        corrected = false;
                    }
                }
            }
            let average = if n_range.contains(&(n + 1)) {
                let next = image(n + 1)?;
                let ok = cols.iter().enumerate().all(|(j, _)| {
                    rows.iter().enumerate().all(|(i, r)| {
                        (finite[j].coeff(r) + next[j].coeff(r)) * half() == *projected.get(i, j)
                    })
                });
                Some(ok)
            } else {
                None
            };
            cells.push(LimitCell { n, degree: d, literal, difference: diff, average, corrected });
        }
    }
    Ok(LimitReport { which, gamma: gamma.clone(), cells })
}
