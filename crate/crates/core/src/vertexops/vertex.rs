//! Normal-ordered vertex operators acting on power-sum polynomials.
//!
//! A term has the shape
//! `c * L_1(z)...L_a(z) * exp(sum a_k p_k z^k) * exp(sum b_k d_k z^-k) * R_1(z)...R_b(z)`
//! with each linear factor `sum (u_k p_k z^k + v_k d_k z^-k)`. Every
//! constituent shifts the `z`-power by exactly the degree change it causes,
//! so the mode `n` (coefficient of `z^-n`) restricted to degree `d` is the
//! degree `d - n` part of the full action.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::GradedOperator;
use crate::kernel::{Matrix, Rational, Ring};
use crate::symfunc::{partitions, Basis, Partition, SymFunc};

pub type Series<F> = Arc<dyn Fn(usize) -> F + Send + Sync>;

pub fn series<F>(f: impl Fn(usize) -> F + Send + Sync + 'static) -> Series<F> {
    Arc::new(f)
}

/// `sum_k (mult(k) p_k z^k + deriv(k) d/dp_k z^-k)`.
#[derive(Clone)]
pub struct Linear<F> {
    pub mult: Option<Series<F>>,
    pub deriv: Option<Series<F>>,
}

#[derive(Clone)]
pub struct VertexTerm<F> {
    pub scalar: F,
    /// Left linear factors; only multiplication parts are allowed here.
    pub left: Vec<Linear<F>>,
    pub create: Option<Series<F>>,
    pub annihilate: Option<Series<F>>,
    /// Right linear factors. A multiplication by `p_k` here must not meet a
    /// nonzero `b_k`, otherwise the mode would be an infinite sum.
    pub right: Vec<Linear<F>>,
}

impl<F: Ring> VertexTerm<F> {
    pub fn exponential(scalar: F, create: Option<Series<F>>, annihilate: Option<Series<F>>) -> Self {
        VertexTerm { scalar, left: vec![], create, annihilate, right: vec![] }
    }
}

#[derive(Clone)]
pub struct VertexOperator<F> {
    pub terms: Vec<VertexTerm<F>>,
}

type Poly<F> = BTreeMap<Partition, F>;

fn add_to<F: Ring>(acc: &mut Poly<F>, l: Partition, c: F) {
    if c.is_zero() {
        return;
    }
    match acc.remove(&l) {
        Some(old) => {
            let s = old + c;
            if !s.is_zero() {
                acc.insert(l, s);
            }
        }
        None => {
            acc.insert(l, c);
        }
    }
}

fn table<F: Ring>(s: &Option<Series<F>>, bound: usize) -> Vec<F> {
    (0..=bound).map(|k| if k == 0 { F::zero() } else { s.as_ref().map_or_else(F::zero, |f| f(k)) }).collect()
}

struct Tables<F> {
    scalar: F,
    left: Vec<Vec<F>>,
    annihilate: Vec<F>,
    right: Vec<(Vec<F>, Vec<F>)>,
    /// `exp(sum a_k p_k)` by degree.
    exp_create: Vec<Vec<(Partition, F)>>,
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut r = Rational::from_integer(1.into());
    for i in 0..k {
        r = r * Rational::from_integer(((n - i) as i64).into()) / Rational::from_integer(((i + 1) as i64).into());
    }
    r
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::from_integer(1.into()), |acc, i| acc * Rational::from_integer((i as i64).into()))
}

impl<F: Ring> Tables<F> {
    fn new(t: &VertexTerm<F>, bound: usize) -> Self {
        let create = table(&t.create, bound);
        let mut exp_create = Vec::with_capacity(bound + 1);
        for r in 0..=bound {
            let mut v = Vec::new();
            for mu in partitions(r) {
                let mut c = F::one();
                let mut k = 0;
                let parts = mu.parts();
                while k < parts.len() && !c.is_zero() {
                    let part = parts[k];
                    let m = mu.multiplicity(part);
                    c = c * create[part].pow(m as u32);
                    c = c.scale(&(Rational::from_integer(1.into()) / factorial(m)));
                    k += m;
                }
                if !c.is_zero() {
                    v.push((mu, c));
                }
            }
            exp_create.push(v);
        }
        Tables {
            scalar: t.scalar.clone(),
            left: t.left.iter().map(|l| table(&l.mult, bound)).collect(),
            annihilate: table(&t.annihilate, bound),
            right: t.right.iter().map(|l| (table(&l.mult, bound), table(&l.deriv, bound))).collect(),
            exp_create,
        }
    }
}

/// Multiplies by `sum coef_k p_k`. With `survives` the existing parts are
/// known to reach the output, otherwise only the new part is.
fn mult_linear<F: Ring>(f: &Poly<F>, coef: &[F], max_out: usize, survives: bool) -> Poly<F> {
    let mut out = BTreeMap::new();
    for (l, c) in f {
        let base = if survives { l.size() } else { 0 };
        for k in 1..coef.len() {
            if base + k > max_out {
                break;
            }
            if coef[k].is_zero() {
                continue;
            }
            add_to(&mut out, l.union(&Partition::new(vec![k])), c.clone() * coef[k].clone());
        }
    }
    out
}

fn deriv_linear<F: Ring>(f: &Poly<F>, coef: &[F]) -> Poly<F> {
    let mut out = BTreeMap::new();
    for (l, c) in f {
        let mut prev = 0;
        for (i, &k) in l.parts().iter().enumerate() {
            if k == prev {
                continue;
            }
            prev = k;
            if coef[k].is_zero() {
                continue;
            }
            let m = l.multiplicity(k) as i64;
            let mut rest = l.parts().to_vec();
            rest.remove(i);
            add_to(&mut out, Partition::new(rest), c.clone() * coef[k].clone() * F::from_i64(m));
        }
    }
    out
}

/// `exp(sum b_k d/dp_k)` acts as the shift `p_k -> p_k + b_k`.
fn exp_annihilate<F: Ring>(f: &Poly<F>, b: &[F], max_out: usize) -> Poly<F> {
    let mut out = BTreeMap::new();
    for (l, c) in f {
        // distinct part values with multiplicities
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &k in l.parts() {
            match groups.last_mut() {
                Some((v, m)) if *v == k => *m += 1,
                _ => groups.push((k, 1)),
            }
        }
        let mut acc: Vec<(Vec<usize>, F)> = vec![(Vec::new(), c.clone())];
        for &(k, m) in &groups {
            let mut next = Vec::new();
            for (parts, coeff) in &acc {
                for j in 0..=m {
                    if j > 0 && b[k].is_zero() {
                        break;
                    }
                    let w = coeff.clone() * b[k].pow(j as u32).scale(&binomial(m, j));
                    let mut p = parts.clone();
                    p.extend(std::iter::repeat(k).take(m - j));
                    next.push((p, w));
                }
            }
            acc = next;
        }
        for (parts, w) in acc {
            let p = Partition::new(parts);
            if p.size() <= max_out {
                add_to(&mut out, p, w);
            }
        }
    }
    out
}

fn exp_create<F: Ring>(f: &Poly<F>, t: &Tables<F>, max_out: usize) -> Poly<F> {
    let mut out = BTreeMap::new();
    for (l, c) in f {
        for r in 0..=max_out.saturating_sub(l.size()) {
            for (mu, w) in &t.exp_create[r] {
                add_to(&mut out, l.union(mu), c.clone() * w.clone());
            }
        }
    }
    out
}

impl<F: Ring> VertexTerm<F> {
    fn apply(&self, t: &Tables<F>, f: &Poly<F>, max_out: usize) -> Poly<F> {
        let mut cur = f.clone();
        for (mult, deriv) in t.right.iter().rev() {
            let d = deriv_linear(&cur, deriv);
            for (k, u) in mult.iter().enumerate() {
                assert!(
                    u.is_zero() || t.annihilate[k].is_zero(),
                    "right multiplication by p_{k} meets a nonzero annihilator"
                );
            }
            let m = mult_linear(&cur, mult, max_out, false);
            cur = d;
            for (l, c) in m {
                add_to(&mut cur, l, c);
            }
        }
        cur = exp_annihilate(&cur, &t.annihilate, max_out);
        cur = exp_create(&cur, t, max_out);
        for mult in t.left.iter().rev() {
            cur = mult_linear(&cur, mult, max_out, true);
        }
        cur.into_iter().map(|(l, c)| (l, c * t.scalar.clone())).collect()
    }
}

impl<F: Ring> VertexOperator<F> {
    pub fn new(terms: Vec<VertexTerm<F>>) -> Self {
        VertexOperator { terms }
    }

    /// All modes `n` with blocks on degrees `0..=dmax`, in the power-sum basis.
    pub fn modes(&self, dmax: usize) -> BTreeMap<i64, GradedOperator<F>> {
        let tables: Vec<Tables<F>> = self.terms.iter().map(|t| Tables::new(t, dmax)).collect();
        let mut out: BTreeMap<i64, GradedOperator<F>> = BTreeMap::new();
        let dm = dmax as i64;
        for n in -dm..=dm {
            out.insert(n, GradedOperator::zero(-n, Basis::P, dmax));
        }
        for d in 0..=dmax {
            let cols = partitions(d);
            let mut blocks: BTreeMap<usize, Matrix<F>> = (0..=dmax)
                .map(|e| (e, Matrix::zeros(partitions(e).len(), cols.len())))
                .collect();
            for (j, lam) in cols.iter().enumerate() {
                let mut input = BTreeMap::new();
                input.insert(lam.clone(), F::one());
                let mut total: Poly<F> = BTreeMap::new();
                for (term, tab) in self.terms.iter().zip(&tables) {
                    for (l, c) in term.apply(tab, &input, dmax) {
                        add_to(&mut total, l, c);
                    }
                }
                for (l, c) in total {
                    let e = l.size();
                    let i = partitions(e).iter().position(|p| *p == l).unwrap();
                    blocks.get_mut(&e).unwrap().set(i, j, c);
                }
            }
            for (e, m) in blocks {
                let n = d as i64 - e as i64;
                out.get_mut(&n).unwrap().set_block(d, m);
            }
        }
        out
    }

    pub fn mode(&self, n: i64, dmax: usize) -> GradedOperator<F> {
        self.modes(dmax).remove(&n).unwrap_or_else(|| GradedOperator::zero(-n, Basis::P, dmax))
    }

    /// Full action on `f` (power-sum basis), truncated to output degree `max_out`.
    pub fn apply(&self, f: &SymFunc<F>, max_out: usize) -> SymFunc<F> {
        let f = f.convert(Basis::P);
        let input: Poly<F> = f.terms().clone();
        let mut total = BTreeMap::new();
        for term in &self.terms {
            let tab = Tables::new(term, max_out.max(f.terms().keys().map(Partition::size).max().unwrap_or(0)));
            for (l, c) in term.apply(&tab, &input, max_out) {
                add_to(&mut total, l, c);
            }
        }
        SymFunc::from_terms(Basis::P, total)
    }
}
