//! Graded matrices of vertex-operator modes on symmetric functions: the
//! Macdonald current `eta`, its degenerations `C0`, `C1(gamma)`, and the
//! bosonized deformed Virasoro current with its companion `psi`.

mod annihilation;
mod graded;
mod vertex;

pub use annihilation::{t1_annihilates, t1_annihilation_check, AnnihilationReport};
pub use graded::GradedOperator;
pub use vertex::{series, Linear, Series, VertexOperator, VertexTerm};

use crate::error::{Error, Result};
use crate::kernel::{int, Field, Jet, Rational, Ring};
use crate::symfunc::{Basis, Partition};

fn odd(k: usize) -> bool {
    k % 2 == 1
}

/// `exp(sum (1 - t^-n) p_n z^n / n) exp(-sum (1 - q^n) d_n z^-n)`.
pub fn eta<F: Field>(q: &F, t: &F) -> Result<VertexOperator<F>> {
    let tinv = t.try_inv()?;
    let q = q.clone();
    Ok(VertexOperator::new(vec![VertexTerm::exponential(
        F::one(),
        Some(series(move |k| (F::one() - tinv.pow(k as u32)).scale(&Rational::new(1.into(), (k as i64).into())))),
        Some(series(move |k| -(F::one() - q.pow(k as u32)))),
    )]))
}

fn c0_term<F: Ring>() -> VertexTerm<F> {
    VertexTerm::exponential(
        F::one(),
        Some(series(|k| if odd(k) { F::from_rational(&Rational::new(2.into(), (k as i64).into())) } else { F::zero() })),
        Some(series(|k| if odd(k) { F::from_i64(-2) } else { F::zero() })),
    )
}

/// `exp(2 sum p_{2n-1} z^{2n-1}/(2n-1)) exp(-2 sum d_{2n-1} z^{-2n+1})`.
pub fn c0<F: Ring>() -> VertexOperator<F> {
    VertexOperator::new(vec![c0_term()])
}

/// `-g (sum p_odd z^odd) C0(z) + C0(z) (-sum k d_k z^-k [k odd] + sum k d_k z^-k [k even] + g sum p_k z^k [k even])`.
pub fn c1<F: Ring>(gamma: &F) -> VertexOperator<F> {
    let g = gamma.clone();
    let mut left = c0_term();
    left.left.push(Linear { mult: Some(series(move |k| if odd(k) { -g.clone() } else { F::zero() })), deriv: None });
    let g = gamma.clone();
    let mut right = c0_term();
    right.right.push(Linear {
        mult: Some(series(move |k| if odd(k) { F::zero() } else { g.clone() })),
        deriv: Some(series(|k| if odd(k) { F::from_i64(-(k as i64)) } else { F::from_i64(k as i64) })),
    });
    VertexOperator::new(vec![left, right])
}

pub fn eta_mode<F: Field>(q: &F, t: &F, n: i64, dmax: usize) -> Result<GradedOperator<F>> {
    Ok(eta(q, t)?.mode(n, dmax))
}

pub fn c0_mode<F: Ring>(n: i64, dmax: usize) -> GradedOperator<F> {
    c0().mode(n, dmax)
}

pub fn c1_mode<F: Ring>(gamma: &F, n: i64, dmax: usize) -> GradedOperator<F> {
    c1(gamma).mode(n, dmax)
}

/// `1 + (t - 1) sum_i (q^{l_i} - 1) t^{-i}`.
pub fn eps<F: Field>(lambda: &Partition, q: &F, t: &F) -> Result<F> {
    let tinv = t.try_inv()?;
    let mut s = F::zero();
    for (i, &l) in lambda.parts().iter().enumerate() {
        s = s + (q.pow(l as u32) - F::one()) * tinv.pow(i as u32 + 1);
    }
    Ok(F::one() + (t.clone() - F::one()) * s)
}

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `1 - 2 sum_i (-1)^i ((-1)^{l_i} - 1)`.
pub fn eps0(lambda: &Partition) -> Rational {
    let s: i64 = lambda.parts().iter().enumerate().map(|(i, &l)| sign(i + 1) * (sign(l) - 1)).sum();
    int(1 - 2 * s)
}

/// `-sum_i (-1)^i (2 (-1)^{l_i} l_i + g (1 - 2i) ((-1)^{l_i} - 1))`.
pub fn eps1<F: Ring>(lambda: &Partition, gamma: &F) -> F {
    let mut acc = F::zero();
    for (i, &l) in lambda.parts().iter().enumerate() {
        let i = i as i64 + 1;
        let term = F::from_i64(2 * sign(l as usize) * l as i64)
            + gamma.clone() * F::from_i64((1 - 2 * i) * (sign(l) - 1));
        acc = acc + term * F::from_i64(sign(i as usize));
    }
    -acc
}

/// `q = -e^h`, `t = -e^{g h}` modulo `h^{order+1}`.
pub fn uglov_point<F: Field>(gamma: &F, order: usize) -> (Jet<F>, Jet<F>) {
    let q = -Jet::exp_linear(F::one(), order);
    let t = -Jet::exp_linear(gamma.clone(), order);
    (q, t)
}

/// Result of a blockwise verification.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub max_degree_verified: usize,
    pub blocks_checked: usize,
}

fn mismatch<F: Ring>(what: &str, m: (usize, usize, usize, F, F)) -> Error {
    Error::Mismatch(format!("{what}: degree {} entry ({}, {}): {} vs {}", m.0, m.1, m.2, m.3, m.4))
}

/// Checks `eta_0 = C0_0 + h C1_0(g) + O(h^2)` at `q = -e^h`, `t = -e^{g h}`.
pub fn eta_hbar_check(gamma: &Rational, dmax: usize, order: usize) -> Result<CheckReport> {
    let order = order.max(1);
    let (q, t) = uglov_point(gamma, order);
    let e0 = eta_mode(&q, &t, 0, dmax)?;
    let lead = e0.map(|j| j.coeff(0));
    let next = e0.map(|j| j.coeff(1));
    if let Some(m) = lead.first_mismatch(&c0_mode::<Rational>(0, dmax)) {
        return Err(mismatch("order 0", m));
    }
    if let Some(m) = next.first_mismatch(&c1_mode(gamma, 0, dmax)) {
        return Err(mismatch("order 1", m));
    }
    Ok(CheckReport { max_degree_verified: dmax, blocks_checked: e0.blocks().len() })
}

/// Parameters of the bosonized deformed Virasoro current.
///
/// Square roots are supplied explicitly: `r = (q/t)^{1/2}`, `s = (qt)^{1/2}`
/// and `qa = q^alpha`, with branches tied by `s = r t`.
#[derive(Clone, Debug)]
pub struct DvirParams<F> {
    pub q: F,
    pub t: F,
    pub r: F,
    pub s: F,
    pub qa: F,
}

impl DvirParams<Rational> {
    /// `q = a^2`, `t = b^2`.
    pub fn from_roots(a: Rational, b: Rational, qa: Rational) -> Self {
        DvirParams { q: &a * &a, t: &b * &b, r: &a / &b, s: &a * &b, qa }
    }
}

impl<F: Field> DvirParams<Jet<F>> {
    /// `q = -e^h`, `t = -e^{g h}`; `r` and `q^alpha = e^{alpha h}` on positive branches.
    pub fn jets(gamma: &F, alpha: &F, order: usize) -> Self {
        let (q, t) = uglov_point(gamma, order);
        let half = Rational::new(1.into(), 2.into());
        let r = Jet::exp_linear((F::one() - gamma.clone()).scale(&half), order);
        // s must equal r t, which fixes (qt)^{1/2} = -e^{(1+g)h/2}
        let s = r.clone() * t.clone();
        DvirParams { q, t, r, s, qa: Jet::exp_linear(alpha.clone(), order) }
    }
}

impl<F: Field> DvirParams<F> {
    fn check(&self) -> Result<()> {
        if self.r.clone() * self.r.clone() * self.t.clone() != self.q
            || self.s != self.r.clone() * self.t.clone()
        {
            return Err(Error::Invalid("inconsistent square roots".into()));
        }
        Ok(())
    }

    /// `(q/t)^{1/2} q^alpha`.
    pub fn k(&self) -> F {
        self.r.clone() * self.qa.clone()
    }

    fn c(&self) -> impl Fn(usize) -> F + Send + Sync + 'static {
        let (t, r2) = (self.t.clone(), self.r.clone() * self.r.clone());
        move |k| {
            (F::one() - t.pow(k as u32))
                .try_div(&(F::one() + r2.pow(k as u32)))
                .expect("1 + (q/t)^k is invertible")
                .scale(&Rational::new(1.into(), (k as i64).into()))
        }
    }
}

/// `T(z)` as a sum of two normal-ordered exponentials.
pub fn dvir_current<F: Field>(p: &DvirParams<F>) -> Result<VertexOperator<F>> {
    p.check()?;
    let k = p.k();
    let kinv = k.try_inv()?;
    let sinv = p.s.try_inv()?;
    let rinv = p.r.try_inv()?;
    // (t^3/q)^{-1/2} = s / t^2
    let w = p.s.try_div(&(p.t.clone() * p.t.clone()))?;
    let (c1, c2) = (p.c(), p.c());
    let (q1, q2) = (p.q.clone(), p.q.clone());
    let r = p.r.clone();
    let w2 = w.clone();
    let t1 = VertexTerm::exponential(
        k,
        Some(series(move |n| -c1(n) * sinv.pow(n as u32))),
        Some(series(move |n| -(F::one() - q1.pow(n as u32)) * r.pow(n as u32))),
    );
    let t2 = VertexTerm::exponential(
        kinv,
        Some(series(move |n| c2(n) * w2.pow(n as u32))),
        Some(series(move |n| (F::one() - q2.pow(n as u32)) * rinv.pow(n as u32))),
    );
    Ok(VertexOperator::new(vec![t1, t2]))
}

/// `psi(z) = exp(-sum c_n p_n z^n (t^3/q)^{-n/2} / n) K^{-1}`.
pub fn dvir_psi<F: Field>(p: &DvirParams<F>) -> Result<VertexOperator<F>> {
    p.check()?;
    let kinv = p.k().try_inv()?;
    let w = p.s.try_div(&(p.t.clone() * p.t.clone()))?;
    let c = p.c();
    Ok(VertexOperator::new(vec![VertexTerm::exponential(
        kinv,
        Some(series(move |n| -c(n) * w.pow(n as u32))),
        None,
    )]))
}

/// `(T_n, psi_{-n})` on degrees `0..=dmax`.
pub fn dvir_modes<F: Field>(p: &DvirParams<F>, n: i64, dmax: usize) -> Result<(GradedOperator<F>, GradedOperator<F>)> {
    Ok((dvir_current(p)?.mode(n, dmax), dvir_psi(p)?.mode(-n, dmax)))
}

/// `sum_{n >= 0} psi_{-n} T_n` on degrees `0..=dmax`.
pub fn psi_t_sum<F: Field>(p: &DvirParams<F>, dmax: usize) -> Result<GradedOperator<F>> {
    let tm = dvir_current(p)?.modes(dmax);
    let pm = dvir_psi(p)?.modes(dmax);
    let mut acc = GradedOperator::zero(0, Basis::P, dmax);
    for n in 0..=dmax as i64 {
        acc = acc.add(&pm[&-n].compose(&tm[&n])?)?;
    }
    Ok(acc)
}

/// Checks `sum psi_{-n} T_n = eta_0 + (q/t)^{-1} q^{-2 alpha}` blockwise.
pub fn dvir_identity_check<F: Field>(p: &DvirParams<F>, dmax: usize) -> Result<CheckReport> {
    let lhs = psi_t_sum(p, dmax)?;
    let k = p.k();
    let shift = (k.clone() * k).try_inv()?;
    let rhs = eta_mode(&p.q, &p.t, 0, dmax)?.add(&GradedOperator::scalar(shift, Basis::P, dmax))?;
    if let Some(m) = lhs.first_mismatch(&rhs) {
        return Err(mismatch("sum psi T", m));
    }
    Ok(CheckReport { max_degree_verified: dmax, blocks_checked: lhs.blocks().len() })
}

/// Order `h^0` and `h^1` parts of the identity at `q = -e^h`, `t = -e^{g h}`:
/// `sum psi0 T0 = C0_0 + 1` and `sum (psi1 T0 + psi0 T1) = C1_0(g) - (1 + 2 alpha - g)`.
pub fn dvir_hbar_check(gamma: &Rational, alpha: &Rational, dmax: usize) -> Result<CheckReport> {
    let p = DvirParams::jets(gamma, alpha, 2);
    let tm = dvir_current(&p)?.modes(dmax);
    let pm = dvir_psi(&p)?.modes(dmax);
    let mut zeroth = GradedOperator::<Rational>::zero(0, Basis::P, dmax);
    let mut first = GradedOperator::<Rational>::zero(0, Basis::P, dmax);
    for n in 0..=dmax as i64 {
        let (t0, t1) = (tm[&n].map(|j| j.coeff(0)), tm[&n].map(|j| j.coeff(1)));
        let (p0, p1) = (pm[&-n].map(|j| j.coeff(0)), pm[&-n].map(|j| j.coeff(1)));
        zeroth = zeroth.add(&p0.compose(&t0)?)?;
        first = first.add(&p1.compose(&t0)?)?.add(&p0.compose(&t1)?)?;
    }
    let c00 = c0_mode::<Rational>(0, dmax).add(&GradedOperator::identity(Basis::P, dmax))?;
    if let Some(m) = zeroth.first_mismatch(&c00) {
        return Err(mismatch("order 0", m));
    }
    let scalar = -(int(1) + int(2) * alpha - gamma);
    let c10 = c1_mode(gamma, 0, dmax).add(&GradedOperator::scalar(scalar, Basis::P, dmax))?;
    if let Some(m) = first.first_mismatch(&c10) {
        return Err(mismatch("order 1", m));
    }
    Ok(CheckReport { max_degree_verified: dmax, blocks_checked: first.blocks().len() })
}
