//! Heisenberg-Clifford Fock module realized on symmetric functions, the
//! free-field image of super Virasoro generators, and the Verma-to-Fock map.
//!
//! Elements are power-sum expansions over `Q(t)(sqrt 2)`. Fermionic indices
//! are doubled, as in [`crate::svir`].

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{rat, Field, RatFun, Rational, Ring, ScalarJson, Sqrt2Ext, SqrtM2Ext, Var};
use crate::svir::{central_charge, rho_of, singular_vector, Gen, HighestWeightData, Verma, VermaVector};
use crate::symfunc::{Basis, Partition, SymFunc};
use crate::uglov::uglov2_in;
use crate::vertexops::{c1_mode, eps1, series, GradedOperator, VertexOperator, VertexTerm};

/// Scalars of the Fock module. The fermion modes carry a factor `sqrt(-2)`.
pub type S = SqrtM2Ext<RatFun>;
pub type FockVector = SymFunc<S>;

fn lift(x: &RatFun) -> S {
    S::base(x.clone())
}

fn lift_q(x: &Rational) -> S {
    S::base(RatFun::constant(Var::T, x.clone()))
}

type Modes = BTreeMap<i64, GradedOperator<Sqrt2Ext<Rational>>>;

static FERMION_CACHE: OnceLock<Mutex<Option<(usize, Arc<Modes>)>>> = OnceLock::new();

/// `(sqrt2/4) (e^{phi_-} e^{2 phi_+} - e^{-phi_-} e^{-2 phi_+})` with
/// `phi_- = -sum p_{2n-1} z^{2n-1}/(2n-1)`, `phi_+ = sum d_{2n-1} z^{1-2n}`.
pub fn fermion_field() -> VertexOperator<Sqrt2Ext<Rational>> {
    let quarter = Sqrt2Ext::new(rat(0, 1), rat(1, 4));
    let odd = |k: usize| k % 2 == 1;
    let term = |sign: i64, scalar: Sqrt2Ext<Rational>| {
        VertexTerm::exponential(
            scalar,
            Some(series(move |k| {
                if odd(k) {
                    Sqrt2Ext::base(rat(-sign, k as i64))
                } else {
                    Sqrt2Ext::base(rat(0, 1))
                }
            })),
            Some(series(move |k| Sqrt2Ext::base(if odd(k) { rat(2 * sign, 1) } else { rat(0, 1) }))),
        )
    };
    VertexOperator::new(vec![term(1, quarter.clone()), term(-1, -quarter)])
}

fn fermion_modes(dmax: usize) -> Arc<Modes> {
    let cell = FERMION_CACHE.get_or_init(|| Mutex::new(None));
    let mut guard = cell.lock().unwrap();
    if let Some((d, m)) = guard.as_ref() {
        if *d >= dmax {
            return m.clone();
        }
    }
    // grow in steps so that small requests do not rebuild the table repeatedly
    let dmax = dmax.max(guard.as_ref().map_or(8, |(d, _)| d + 4));
    let m = Arc::new(fermion_field().modes(dmax));
    *guard = Some((dmax, m.clone()));
    m
}

/// `b_k = i B_k` with `k = k2/2`, where `B_k` is the coefficient of `z^{-k2}`
/// in the fermion field. The vertex operator gives `[B_k, B_l]_+ = -delta`,
/// so the factor `i` is needed; since `B_k` is `sqrt 2` times a rational
/// matrix, `i B_k` lives over `sqrt(-2)`. `dmax` bounds all degrees involved.
pub fn fermion_act(k2: i64, v: &FockVector, dmax: usize) -> Result<FockVector> {
    if k2 % 2 == 0 {
        return Err(Error::Invalid(format!("fermion index {k2}/2 is not half-odd")));
    }
    let v = v.convert(Basis::P);
    let top = v.degree().unwrap_or(0);
    let need = top + (-k2).max(0) as usize;
    if need > dmax {
        return Err(Error::Truncation(format!("b_{k2}/2 on degree {top} needs {need} > {dmax}")));
    }
    if k2 > top as i64 {
        return Ok(SymFunc::zero(Basis::P));
    }
    let modes = fermion_modes(dmax);
    let op = &modes[&k2];
    let mut out = SymFunc::zero(Basis::P);
    let mut degrees: Vec<usize> = v.terms().keys().map(Partition::size).collect();
    degrees.dedup();
    for d in degrees {
        let e = d as i64 - k2;
        if e < 0 {
            continue;
        }
        let block = op.block(d).expect("block within dmax");
        let x = v.vector(d);
        let w: Vec<S> = (0..block.rows())
            .map(|i| {
                let mut acc = S::zero();
                for (j, c) in x.iter().enumerate() {
                    let m = block.get(i, j);
                    if !c.is_zero() && !m.is_zero() {
                        debug_assert!(m.a.is_zero());
                        let m = S::new(RatFun::zero(), RatFun::constant(Var::T, m.b.clone()));
                        acc = acc + m * c.clone();
                    }
                }
                acc
            })
            .collect();
        out = out.add(&SymFunc::from_vector(Basis::P, e as usize, &w));
    }
    Ok(out)
}

fn mul_p(v: &FockVector, k: usize, c: &S) -> FockVector {
    let mut out = SymFunc::zero(Basis::P);
    for (l, x) in v.terms() {
        out.add_term(l.union(&Partition::new(vec![k])), x.clone() * c.clone());
    }
    out
}

fn deriv_p(v: &FockVector, k: usize, c: &S) -> FockVector {
    let mut out = SymFunc::zero(Basis::P);
    for (l, x) in v.terms() {
        let m = l.multiplicity(k);
        if m == 0 {
            continue;
        }
        let mut parts = l.parts().to_vec();
        let i = parts.iter().position(|&p| p == k).unwrap();
        parts.remove(i);
        out.add_term(Partition::new(parts), x.clone() * c.clone() * S::from_i64(m as i64));
    }
    out
}

/// Fock module `F(alpha)` transported to symmetric functions by `s_t`.
#[derive(Clone, Debug)]
pub struct FockModule {
    pub t: RatFun,
    pub alpha: RatFun,
    pub rho: RatFun,
}

impl FockModule {
    pub fn new(t: &RatFun, alpha: &RatFun) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::Invalid("t = 0".into()));
        }
        Ok(FockModule { t: t.clone(), alpha: alpha.clone(), rho: rho_of(t)? })
    }

    pub fn from_weights(d: &HighestWeightData) -> Result<Self> {
        Self::new(&d.t, &d.alpha_plus)
    }

    /// `h = alpha^2/2 - rho alpha`.
    pub fn h(&self) -> RatFun {
        self.alpha.clone() * self.alpha.clone() * RatFun::constant(Var::T, rat(1, 2)) - self.rho.clone() * self.alpha.clone()
    }

    /// The Verma module mapping onto this Fock module.
    pub fn verma(&self) -> Result<Verma<RatFun>> {
        Ok(Verma::new(central_charge(&self.t)?, self.h()))
    }

    /// `a_n -> -2tn d/dp_{2n}`, `a_{-n} -> -p_{2n}/(2t)`, `a_0 -> alpha`.
    pub fn boson_act(&self, n: i64, v: &FockVector) -> Result<FockVector> {
        let v = v.convert(Basis::P);
        Ok(match n {
            0 => v.scale(&lift(&self.alpha)),
            n if n > 0 => deriv_p(&v, 2 * n as usize, &lift(&(self.t.clone() * RatFun::from_i64(-2 * n)))),
            n => {
                let c = (self.t.clone() * RatFun::from_i64(-2)).try_inv()?;
                mul_p(&v, (-2 * n) as usize, &lift(&c))
            }
        })
    }

    pub fn fermion_act(&self, k2: i64, v: &FockVector) -> Result<FockVector> {
        let top = v.degree().unwrap_or(0);
        fermion_act(k2, v, top + (-k2).max(0) as usize)
    }

    /// Image of a super Virasoro generator under the free-field map.
    pub fn ff_act(&self, g: Gen, v: &FockVector) -> Result<FockVector> {
        let v = v.convert(Basis::P);
        if v.is_zero() {
            return Ok(v);
        }
        let d = v.degree().unwrap_or(0) as i64;
        match g {
            Gen::L(n) => {
                let bound = d / 2 + n.abs() + 1;
                let mut out = SymFunc::zero(Basis::P);
                let half = lift_q(&rat(1, 2));
                for m in -bound..=bound {
                    let (i, j) = (m, n - m);
                    let (left, right) = if i <= j { (i, j) } else { (j, i) };
                    if 2 * right > d {
                        continue;
                    }
                    let w = self.boson_act(left, &self.boson_act(right, &v)?)?;
                    out = out.add(&w.scale(&half));
                }
                let lin = self.rho.clone() * RatFun::from_i64(-(n + 1));
                out = out.add(&self.boson_act(n, &v)?.scale(&lift(&lin)));
                let bound2 = d + 2 * n.abs() + 2;
                for k2 in (-bound2..=bound2).filter(|k| k.rem_euclid(2) == 1) {
                    let l2 = 2 * n - k2;
                    if k2 == l2 {
                        continue;
                    }
                    // :b_k b_l: keeps annihilators to the right
                    let (left, right, sign) = if k2 < l2 { (k2, l2, 1) } else { (l2, k2, -1) };
                    if right > d {
                        continue;
                    }
                    let w = self.fermion_act(left, &self.fermion_act(right, &v)?)?;
                    let c = rat(-(k2 + 1) * sign, 4);
                    out = out.add(&w.scale(&lift_q(&c)));
                }
                Ok(out)
            }
            Gen::G(k2) => {
                let bound = d / 2 + k2.abs() + 2;
                let mut out = SymFunc::zero(Basis::P);
                for m in -bound..=bound {
                    if 2 * m > d {
                        continue;
                    }
                    let a = self.boson_act(m, &v)?;
                    if a.is_zero() {
                        continue;
                    }
                    let b2 = k2 - 2 * m;
                    if b2 > a.degree().unwrap_or(0) as i64 {
                        continue;
                    }
                    out = out.add(&self.fermion_act(b2, &a)?);
                }
                let lin = self.rho.clone() * RatFun::from_i64(-(k2 + 1));
                out = out.add(&self.fermion_act(k2, &v)?.scale(&lift(&lin)));
                Ok(out)
            }
        }
    }

    /// Sends each PBW monomial `X_1 .. X_m |c,h>` to `ff(X_1) .. ff(X_m) 1`.
    pub fn verma_to_lambda(&self, v: &VermaVector<RatFun>) -> Result<FockVector> {
        let mut out = SymFunc::zero(Basis::P);
        let mut memo: BTreeMap<Vec<Gen>, FockVector> = BTreeMap::new();
        memo.insert(vec![], SymFunc::one(Basis::P));
        for (l, c) in v.terms() {
            let word = l.word();
            let mut img = SymFunc::one(Basis::P);
            for i in (0..word.len()).rev() {
                let suffix = word[i..].to_vec();
                img = match memo.get(&suffix) {
                    Some(x) => x.clone(),
                    None => {
                        let x = self.ff_act(word[i], &img)?;
                        memo.insert(suffix, x.clone());
                        x
                    }
                };
            }
            out = out.add(&img.scale(&lift(c)));
        }
        Ok(out)
    }
}

/// Base-field part of `f`, or `None` if some coefficient involves `sqrt 2`.
pub fn base_part(f: &FockVector) -> Option<SymFunc<RatFun>> {
    if f.terms().values().any(|c| !c.b.is_zero()) {
        return None;
    }
    Some(f.map(|c| c.a.clone()))
}

/// `s_t(chi_{r,s})` for the singular vector at `alpha^+_{r,s}`, with the
/// Verma vector rescaled so that the `m_{(r^s)}` coefficient of the image is 1.
#[derive(Clone, Debug)]
pub struct SingularImage {
    pub weights: HighestWeightData,
    pub verma: VermaVector<S>,
    /// Monomial expansion, monic at `(r^s)`.
    pub image: FockVector,
    /// Image of the Verma vector before rescaling (first PBW coefficient 1).
    pub raw_scale: S,
}

pub fn singular_image(r: i64, s: i64, t: &RatFun) -> Result<SingularImage> {
    let (weights, chi) = singular_vector(r, s, t)?;
    let fm = FockModule::from_weights(&weights)?;
    let raw = fm.verma_to_lambda(&chi)?.convert(Basis::M);
    let rect = Partition::rectangle(r as usize, s as usize);
    let lead = raw.coeff(&rect);
    if lead.is_zero() {
        return Err(Error::Degeneracy(format!("image of chi_({r},{s}) has no m{rect} term")));
    }
    let inv = lead.try_inv()?;
    Ok(SingularImage {
        verma: chi.map(lift).scale(&inv),
        image: raw.scale(&inv),
        raw_scale: lead,
        weights,
    })
}

/// Outcome of the singular vector / Uglov comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureReport {
    pub r: i64,
    pub s: i64,
    pub proportional: bool,
    /// `kappa` in `s_t(chi) = kappa P`, for `chi` with leading PBW coefficient 1.
    pub scalar: S,
    pub eigencheck: bool,
    pub triangular: bool,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.proportional && self.eigencheck && self.triangular
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rs": [self.r, self.s],
            "proportional": self.proportional,
            "scalar": self.scalar.to_json(),
            "eigencheck": self.eigencheck,
            "triangular": self.triangular,
        })
    }
}

/// Compares `s_t(chi_{r,s})` with the Uglov function `P^{(1/t^2,2)}_{(r^s)}`.
pub fn verify_conjecture(r: i64, s: i64, t: &RatFun) -> Result<ConjectureReport> {
    let img = singular_image(r, s, t)?;
    let rect = Partition::rectangle(r as usize, s as usize);
    let gamma = (t.clone() * t.clone()).try_inv()?;
    let g = uglov2_in(&rect, &lift(&gamma))?.expansion;
    let f = &img.image;
    let diff = f.sub(&g);
    if let Some((mu, _)) = diff.terms().iter().next() {
        let ratio = match g.coeff(mu).try_inv() {
            Ok(inv) => (f.coeff(mu) * inv).to_string(),
            Err(_) => format!("{} / 0", f.coeff(mu)),
        };
        return Err(Error::ProportionalityFailure(format!("({r},{s}) at m{mu}: ratio {ratio}")));
    }
    let n = rect.size();
    let op = c1_mode(&lift(&gamma), 0, n);
    let lhs = op.apply(f)?.convert(Basis::M);
    let eigencheck = lhs == f.scale(&eps1(&rect, &lift(&gamma)));
    let triangular = !f.coeff(&rect).is_zero() && f.terms().keys().all(|mu| mu.dominance_leq(&rect));
    Ok(ConjectureReport { r, s, proportional: true, scalar: img.raw_scale, eigencheck, triangular })
}

/// Coefficients of `u^m`, `m <= order`, in `(E_1(-u) - E_1(u)) E_0(-u)` with
/// `E_0(u) = exp(-sum p_{2n} u^{2n}/2n)` and `E_1(u) = exp(sum p_{2n-1} u^{2n-1}/(2n-1))`.
pub fn screening_series(order: usize) -> Vec<SymFunc<Rational>> {
    fn exp_series(a: &[SymFunc<Rational>]) -> Vec<SymFunc<Rational>> {
        // m y_m = sum_k k a_k y_{m-k}
        let mut y = vec![SymFunc::one(Basis::P)];
        for m in 1..a.len() {
            let mut acc = SymFunc::zero(Basis::P);
            for k in 1..=m {
                acc = acc.add(&a[k].multiply(&y[m - k]).scale(&rat(k as i64, 1)));
            }
            y.push(acc.scale(&rat(1, m as i64)));
        }
        y
    }
    let p = |k: usize, c: Rational| SymFunc::term(Basis::P, Partition::new(vec![k]), c);
    let zero = || SymFunc::zero(Basis::P);
    let mut e1p = vec![zero()];
    let mut e1m = vec![zero()];
    let mut e0m = vec![zero()];
    for k in 1..=order {
        let kk = k as i64;
        if k % 2 == 1 {
            e1p.push(p(k, rat(1, kk)));
            e1m.push(p(k, rat(-1, kk)));
            e0m.push(zero());
        } else {
            e1p.push(zero());
            e1m.push(zero());
            e0m.push(p(k, rat(-1, kk)));
        }
    }
    let (a, b, c) = (exp_series(&e1m), exp_series(&e1p), exp_series(&e0m));
    (0..=order)
        .map(|m| {
            let mut acc = SymFunc::zero(Basis::P);
            for i in 0..=m {
                acc = acc.add(&a[i].sub(&b[i]).multiply(&c[m - i]));
            }
            acc
        })
        .collect()
}

/// `s_t(chi_{1,s})` from the `r = 1` residue: `(t/2)` times the `u^s`
/// coefficient of [`screening_series`].
pub fn screening_r1(s: usize, t: &RatFun) -> Result<SymFunc<RatFun>> {
    if s % 2 == 0 {
        return Err(Error::Invalid(format!("s = {s} must be odd")));
    }
    let coef = screening_series(s).pop().unwrap();
    let half_t = t.clone() * RatFun::constant(Var::T, rat(1, 2));
    Ok(coef.map(|c| RatFun::constant(Var::T, c.clone()) * half_t.clone()))
}
