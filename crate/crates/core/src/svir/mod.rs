//! Neveu-Schwarz sector of the N=1 super Virasoro algebra: Verma modules,
//! contravariant Gram matrices, Kac determinants and singular vectors.
//!
//! Half-integer quantities (levels, fermionic modes) are stored doubled.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{nullspace, poly_interpolate, rat, Field, Matrix, Poly, RatFun, Rational, Ring, ScalarJson, Var};
use crate::symfunc::Partition;

/// PBW label `(bosonic, fermionic)`; fermionic parts are doubled (odd) and
/// strictly decreasing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SuperPartition {
    bosonic: Partition,
    fermionic: Vec<usize>,
}

impl SuperPartition {
    pub fn new(bosonic: Partition, fermionic2: Vec<usize>) -> Result<Self> {
        if fermionic2.iter().any(|k| k % 2 == 0) {
            return Err(Error::Invalid(format!("fermionic parts must be half-odd: {fermionic2:?}")));
        }
        if fermionic2.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Invalid(format!("fermionic parts must strictly decrease: {fermionic2:?}")));
        }
        Ok(SuperPartition { bosonic, fermionic: fermionic2 })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn bosonic(&self) -> &Partition {
        &self.bosonic
    }

    /// Doubled fermionic parts.
    pub fn fermionic2(&self) -> &[usize] {
        &self.fermionic
    }

    /// Twice the level.
    pub fn level2(&self) -> usize {
        2 * self.bosonic.size() + self.fermionic.iter().sum::<usize>()
    }

    /// Creation word `L_{-a_l} .. L_{-a_1} G_{-b_m} .. G_{-b_1}`, leftmost first.
    pub fn word(&self) -> Vec<Gen> {
        let mut w: Vec<Gen> = self.bosonic.parts().iter().rev().map(|&a| Gen::L(-(a as i64))).collect();
        w.extend(self.fermionic.iter().rev().map(|&b| Gen::G(-(b as i64))));
        w
    }

    fn from_word(w: &[Gen]) -> Self {
        let mut bos = Vec::new();
        let mut fer = Vec::new();
        for g in w {
            match *g {
                Gen::L(n) => bos.push((-n) as usize),
                Gen::G(k) => fer.push((-k) as usize),
            }
        }
        fer.sort_unstable_by(|a, b| b.cmp(a));
        SuperPartition { bosonic: Partition::new(bos), fermionic: fer }
    }

    pub fn to_json(&self) -> Value {
        json!({"bosonic": self.bosonic.parts(), "fermionic2": self.fermionic})
    }
}

impl Ord for SuperPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.level2()
            .cmp(&other.level2())
            .then_with(|| other.bosonic.parts().cmp(self.bosonic.parts()))
            .then_with(|| other.fermionic.cmp(&self.fermionic))
    }
}

impl PartialOrd for SuperPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn half(k2: i64) -> String {
    if k2 % 2 == 0 {
        (k2 / 2).to_string()
    } else {
        format!("{k2}/2")
    }
}

impl fmt::Display for SuperPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.bosonic.parts().iter().map(|p| p.to_string()).collect();
        let g: Vec<String> = self.fermionic.iter().map(|&p| half(p as i64)).collect();
        write!(f, "({};{})", b.join(","), g.join(","))
    }
}

/// All super-partitions of doubled level `n2`, in canonical order.
pub fn super_partitions(n2: usize) -> Vec<SuperPartition> {
    fn strict_odd(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        let mut k = max.min(n);
        if k % 2 == 0 {
            k = k.saturating_sub(1);
        }
        while k >= 1 {
            acc.push(k);
            strict_odd(n - k, k.saturating_sub(2), acc, out);
            acc.pop();
            if k < 2 {
                break;
            }
            k -= 2;
        }
    }
    let mut out = Vec::new();
    for a in 0..=n2 / 2 {
        let mut fs = Vec::new();
        strict_odd(n2 - 2 * a, n2 - 2 * a, &mut Vec::new(), &mut fs);
        for b in crate::symfunc::partitions(a) {
            for f in &fs {
                out.push(SuperPartition { bosonic: b.clone(), fermionic: f.clone() });
            }
        }
    }
    out.sort();
    out
}

/// `p_NS` at doubled level `n2`, read off `prod (1 + x^{k/2}) / prod (1 - x^m)`.
pub fn pns(n2: usize) -> usize {
    let mut c = vec![0usize; n2 + 1];
    c[0] = 1;
    for k in (1..=n2).step_by(2) {
        for i in (k..=n2).rev() {
            c[i] += c[i - k];
        }
    }
    for m in (2..=n2).step_by(2) {
        for i in m..=n2 {
            c[i] += c[i - m];
        }
    }
    c[n2]
}

/// Algebra generator; fermionic indices doubled.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Gen {
    L(i64),
    G(i64),
}

impl Gen {
    /// `G_{k}` from a doubled index.
    pub fn g(k2: i64) -> Result<Gen> {
        if k2 % 2 == 0 {
            return Err(Error::Invalid(format!("G index {} is not half-odd", half(k2))));
        }
        Ok(Gen::G(k2))
    }

    fn odd(self) -> bool {
        matches!(self, Gen::G(_))
    }

    /// Doubled mode index, i.e. minus twice the level shift.
    pub fn mode2(self) -> i64 {
        match self {
            Gen::L(n) => 2 * n,
            Gen::G(k) => k,
        }
    }

    fn neg(self) -> Gen {
        match self {
            Gen::L(n) => Gen::L(-n),
            Gen::G(k) => Gen::G(-k),
        }
    }

    fn sort_key(self) -> (u8, i64) {
        match self {
            Gen::L(n) => (0, -n),
            Gen::G(k) => (1, -k),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::L(n) => write!(f, "L{n}"),
            Gen::G(k) => write!(f, "G{}", half(k)),
        }
    }
}

/// Highest-weight data at `(r, s)` as functions of `t` (symbolic or constant).
#[derive(Clone, Debug, PartialEq)]
pub struct HighestWeightData {
    pub t: RatFun,
    pub rho: RatFun,
    pub c: RatFun,
    pub t_plus: RatFun,
    pub t_minus: RatFun,
    pub r: i64,
    pub s: i64,
    pub h: RatFun,
    pub alpha_plus: RatFun,
    pub alpha_minus: RatFun,
}

fn konst(x: Rational) -> RatFun {
    RatFun::constant(Var::T, x)
}

pub fn rho_of(t: &RatFun) -> Result<RatFun> {
    Ok((t.clone() - t.try_inv()?) * konst(rat(1, 2)))
}

/// `c = 3/2 - 12 rho^2`.
pub fn central_charge(t: &RatFun) -> Result<RatFun> {
    let rho = rho_of(t)?;
    Ok(konst(rat(3, 2)) - konst(rat(12, 1)) * rho.clone() * rho)
}

/// `h_{r,s} = (r t_+ + s t_-)^2 / 8 - rho^2 / 2` with `t_+ = t`, `t_- = -1/t`.
pub fn h_rs(t: &RatFun, r: i64, s: i64) -> Result<RatFun> {
    let rho = rho_of(t)?;
    let x = RatFun::from_i64(r) * t.clone() - RatFun::from_i64(s) * t.try_inv()?;
    Ok(x.clone() * x * konst(rat(1, 8)) - rho.clone() * rho * konst(rat(1, 2)))
}

fn check_rs(r: i64, s: i64) -> Result<()> {
    if r < 1 || s < 1 || (r - s).rem_euclid(2) != 0 {
        return Err(Error::Parity { r, s });
    }
    Ok(())
}

pub fn hw_data(t: &RatFun, r: i64, s: i64) -> Result<HighestWeightData> {
    check_rs(r, s)?;
    if t.is_zero() {
        return Err(Error::Invalid("t = 0".into()));
    }
    let rho = rho_of(t)?;
    let t_minus = -t.try_inv()?;
    let half_of = |n: i64| konst(rat(n, 2));
    let alpha_plus = half_of(r + 1) * t.clone() + half_of(s + 1) * t_minus.clone();
    let alpha_minus = konst(rat(2, 1)) * rho.clone() - alpha_plus.clone();
    Ok(HighestWeightData {
        t: t.clone(),
        c: central_charge(t)?,
        t_plus: t.clone(),
        t_minus,
        r,
        s,
        h: h_rs(t, r, s)?,
        alpha_plus,
        alpha_minus,
        rho,
    })
}

/// Vector of fixed doubled level in the PBW basis.
#[derive(Clone, Debug, PartialEq)]
pub struct VermaVector<F> {
    level2: usize,
    terms: BTreeMap<SuperPartition, F>,
}

impl<F: Ring> VermaVector<F> {
    pub fn zero(level2: usize) -> Self {
        VermaVector { level2, terms: BTreeMap::new() }
    }

    /// The highest-weight vector.
    pub fn vacuum() -> Self {
        Self::monomial(SuperPartition::empty(), F::one())
    }

    pub fn monomial(l: SuperPartition, c: F) -> Self {
        let mut v = Self::zero(l.level2());
        v.add_term(l, c);
        v
    }

    pub fn level2(&self) -> usize {
        self.level2
    }

    pub fn terms(&self) -> &BTreeMap<SuperPartition, F> {
        &self.terms
    }

    pub fn coeff(&self, l: &SuperPartition) -> F {
        self.terms.get(l).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, l: SuperPartition, c: F) {
        debug_assert_eq!(l.level2(), self.level2);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(l.clone()).or_insert_with(F::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.terms.remove(&l);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        if out.is_zero() {
            out.level2 = other.level2;
        }
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.level2);
        for (l, x) in &self.terms {
            out.add_term(l.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    /// Coefficient vector over `super_partitions(level2)`.
    pub fn vector(&self) -> Vec<F> {
        super_partitions(self.level2).iter().map(|l| self.coeff(l)).collect()
    }

    pub fn from_vector(level2: usize, v: &[F]) -> Self {
        let mut out = Self::zero(level2);
        for (l, c) in super_partitions(level2).into_iter().zip(v) {
            out.add_term(l, c.clone());
        }
        out
    }

    pub fn map<G: Ring>(&self, f: impl Fn(&F) -> G) -> VermaVector<G> {
        let mut out = VermaVector::zero(self.level2);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c));
        }
        out
    }

    pub fn to_json(&self) -> Value
    where
        F: ScalarJson,
    {
        let terms: Vec<Value> =
            self.terms.iter().map(|(l, c)| json!({"label": l.to_json(), "coeff": c.to_json()})).collect();
        json!({"level2": self.level2, "terms": terms})
    }
}

impl<F: Ring> fmt::Display for VermaVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, c)| {
                let w: Vec<String> = l.word().iter().map(|g| g.to_string()).collect();
                let w = if w.is_empty() { "1".to_string() } else { w.join(" ") };
                format!("({c}) {w}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type Terms<F> = Vec<(SuperPartition, F)>;

/// Verma module `M(c, h)` over a ring containing `c` and `h`, with memoized
/// generator action on PBW monomials.
pub struct Verma<F> {
    c: F,
    h: F,
    cache: Mutex<BTreeMap<(Gen, SuperPartition), Terms<F>>>,
}

impl<F: Ring> Verma<F> {
    pub fn new(c: F, h: F) -> Self {
        Verma { c, h, cache: Mutex::new(BTreeMap::new()) }
    }

    pub fn c(&self) -> &F {
        &self.c
    }

    pub fn h(&self) -> &F {
        &self.h
    }

    /// `X . v` re-expressed in canonical PBW form.
    pub fn act(&self, x: Gen, v: &VermaVector<F>) -> VermaVector<F> {
        let level2 = v.level2 as i64 - x.mode2();
        let mut out = VermaVector::zero(level2.max(0) as usize);
        if level2 < 0 {
            return out;
        }
        for (l, c) in &v.terms {
            for (m, d) in self.act_mono(x, l) {
                out.add_term(m, d * c.clone());
            }
        }
        out
    }

    /// Central element `C` acts by `c`.
    pub fn act_central(&self, v: &VermaVector<F>) -> VermaVector<F> {
        v.scale(&self.c)
    }

    fn act_word(&self, word: &[Gen], v: &VermaVector<F>) -> VermaVector<F> {
        word.iter().rev().fold(v.clone(), |acc, &g| self.act(g, &acc))
    }

    fn act_mono(&self, x: Gen, l: &SuperPartition) -> Terms<F> {
        if let Some(t) = self.cache.lock().unwrap().get(&(x, l.clone())) {
            return t.clone();
        }
        let t = self.compute(x, l);
        self.cache.lock().unwrap().insert((x, l.clone()), t.clone());
        t
    }

    fn compute(&self, x: Gen, l: &SuperPartition) -> Terms<F> {
        if x == Gen::L(0) {
            let w = self.h.clone() + F::from_rational(&rat(l.level2() as i64, 2));
            return vec![(l.clone(), w)];
        }
        let word = l.word();
        let Some((&w1, rest)) = word.split_first() else {
            return if x.mode2() > 0 { vec![] } else { vec![(SuperPartition::from_word(&[x]), F::one())] };
        };
        if x.mode2() < 0 {
            if x == w1 && x.odd() {
                // G_k G_k = L_{2k}
                let rest = SuperPartition::from_word(rest);
                return self.act_mono(Gen::L(x.mode2()), &rest);
            }
            if x.sort_key() <= w1.sort_key() {
                let mut w = vec![x];
                w.extend_from_slice(&word);
                return vec![(SuperPartition::from_word(&w), F::one())];
            }
        }
        // X w1 R = sign w1 (X R) + [X, w1} R
        let rest_l = SuperPartition::from_word(rest);
        let rest_v = VermaVector::monomial(rest_l, F::one());
        let sign = if x.odd() && w1.odd() { -F::one() } else { F::one() };
        let xr = self.act(x, &rest_v);
        let mut out = self.act(w1, &xr).scale(&sign);
        let (gens, central) = self.bracket(x, w1);
        for (g, c) in gens {
            out = out.add(&self.act(g, &rest_v).scale(&c));
        }
        if !central.is_zero() {
            out = out.add(&rest_v.scale(&central));
        }
        out.terms.into_iter().collect()
    }

    /// Super bracket `[a, b}` as generator terms plus a central scalar.
    pub fn bracket(&self, a: Gen, b: Gen) -> (Vec<(Gen, F)>, F) {
        let q = |n: i64, d: i64| F::from_rational(&rat(n, d));
        match (a, b) {
            (Gen::L(m), Gen::L(n)) => {
                let central = if m + n == 0 { self.c.clone() * q(m * m * m - m, 12) } else { F::zero() };
                (vec![(Gen::L(m + n), q(m - n, 1))], central)
            }
            (Gen::L(m), Gen::G(k2)) => (vec![(Gen::G(2 * m + k2), q(m - k2, 2))], F::zero()),
            (Gen::G(k2), Gen::L(m)) => (vec![(Gen::G(2 * m + k2), q(k2 - m, 2))], F::zero()),
            (Gen::G(k2), Gen::G(l2)) => {
                let central = if k2 + l2 == 0 { self.c.clone() * q(k2 * k2 - 1, 12) } else { F::zero() };
                (vec![(Gen::L((k2 + l2) / 2), q(2, 1))], central)
            }
        }
    }

    /// `<c,h| G_{lb} L_{la} L_{-ma} G_{-mb} |c,h>`.
    pub fn pairing(&self, l: &SuperPartition, m: &SuperPartition) -> F {
        if l.level2() != m.level2() {
            return F::zero();
        }
        let bra: Vec<Gen> = l.word().iter().rev().map(|g| g.neg()).collect();
        let v = self.act_word(&bra, &VermaVector::monomial(m.clone(), F::one()));
        v.coeff(&SuperPartition::empty())
    }

    /// Gram matrix at doubled level `n2`, canonical order.
    pub fn gram_matrix(&self, n2: usize) -> Matrix<F> {
        let ls = super_partitions(n2);
        let rows = ls.iter().map(|a| ls.iter().map(|b| self.pairing(a, b)).collect()).collect();
        Matrix::from_rows(rows).expect("square")
    }

    /// Matrix of `x` from doubled level `n2` to `n2 - mode2(x)`.
    pub fn action_matrix(&self, x: Gen, n2: usize) -> Matrix<F> {
        let src = super_partitions(n2);
        let tgt_level = n2 as i64 - x.mode2();
        let tgt = if tgt_level < 0 { vec![] } else { super_partitions(tgt_level as usize) };
        let mut m = Matrix::zeros(tgt.len(), src.len());
        for (j, l) in src.iter().enumerate() {
            let v = self.act(x, &VermaVector::monomial(l.clone(), F::one()));
            for (i, t) in tgt.iter().enumerate() {
                m.set(i, j, v.coeff(t));
            }
        }
        m
    }

    /// True when every positive mode annihilates `v`; checks `G_{1/2}`,
    /// `G_{3/2}`, `L_1` and `L_2`.
    pub fn is_singular(&self, v: &VermaVector<F>) -> bool {
        [Gen::G(1), Gen::G(3), Gen::L(1), Gen::L(2)].iter().all(|&g| self.act(g, v).is_zero())
    }
}

/// Symbolic `c` with `h` the polynomial indeterminate.
pub fn symbolic_verma(t: &RatFun) -> Result<Verma<Poly<RatFun>>> {
    Ok(Verma::new(Poly::constant(central_charge(t)?), Poly::x()))
}

/// Gram matrix at doubled level `n2` over `Q(t)[h]`.
pub fn gram_matrix(n2: usize, t: &RatFun) -> Result<Matrix<Poly<RatFun>>> {
    Ok(symbolic_verma(t)?.gram_matrix(n2))
}

/// Gram matrix with `h` specialized.
pub fn gram_matrix_at(n2: usize, t: &RatFun, h: &RatFun) -> Result<Matrix<RatFun>> {
    Ok(Verma::new(central_charge(t)?, h.clone()).gram_matrix(n2))
}

/// Outcome of a Kac determinant check.
#[derive(Clone, Debug, PartialEq)]
pub struct KacReport {
    pub level2: usize,
    /// `det K` as a polynomial in `h`.
    pub det: Poly<RatFun>,
    /// `(r, s, multiplicity)` of each predicted zero.
    pub factors: Vec<(i64, i64, usize)>,
    /// `det K / prod (h - h_{r,s})^mult`, constant in `h`.
    pub constant: RatFun,
}

impl KacReport {
    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> =
            self.factors.iter().map(|(r, s, m)| json!({"r": r, "s": s, "multiplicity": m})).collect();
        json!({
            "level2": self.level2,
            "degree": self.det.degree(),
            "factors": factors,
            "constant": self.constant.to_json(),
        })
    }
}

/// Predicted zeros at doubled level `n2`.
pub fn kac_factors(n2: usize) -> Vec<(i64, i64, usize)> {
    let mut out = Vec::new();
    for r in 1..=n2 as i64 {
        for s in 1..=n2 as i64 {
            if (r - s) % 2 == 0 && r * s <= n2 as i64 {
                out.push((r, s, pns(n2 - (r * s) as usize)));
            }
        }
    }
    out
}

/// Interpolates `det K` in `h`, divides out the predicted factors and
/// requires an `h`-independent nonzero quotient.
pub fn kac_det_check(n2: usize, t: &RatFun) -> Result<KacReport> {
    let factors = kac_factors(n2);
    let degree: usize = factors.iter().map(|f| f.2).sum();
    let gram = gram_matrix(n2, t)?;
    let points: Vec<(Rational, RatFun)> = (0..degree as i64 + 3)
        .map(|i| {
            let x = rat(2 * i + 1, 3);
            let m = gram.map(|p| p.eval(&konst(x.clone())));
            Ok((x, m.det()?))
        })
        .collect::<Result<_>>()?;
    let det = poly_interpolate(&points, degree)?;
    let mut predicted = Poly::constant(RatFun::one());
    for &(r, s, m) in &factors {
        let lin = Poly::new(vec![-h_rs(t, r, s)?, RatFun::one()]);
        for _ in 0..m {
            predicted = predicted * lin.clone();
        }
    }
    let (quot, rem) = det.div_rem(&predicted)?;
    if !rem.is_zero() || quot.degree().unwrap_or(0) != 0 || quot.is_zero() {
        let residual = if rem.is_zero() { quot } else { rem };
        return Err(Error::FactorMismatch(residual.to_string()));
    }
    Ok(KacReport { level2: n2, det, factors, constant: quot.coeff(0) })
}

/// Runs [`kac_det_check`] at each rational `t` sample.
pub fn kac_det_check_samples(n2: usize, samples: &[Rational]) -> Result<Vec<KacReport>> {
    samples.iter().map(|t| kac_det_check(n2, &konst(t.clone()))).collect()
}

/// Singular vector at level `rs/2` in `M(c(t), h_{r,s}(t))`, as the kernel of
/// `G_{1/2}` and `G_{3/2}`. Scaled so the first nonzero coefficient in
/// canonical order is one.
pub fn singular_vector(r: i64, s: i64, t: &RatFun) -> Result<(HighestWeightData, VermaVector<RatFun>)> {
    let data = hw_data(t, r, s)?;
    let n2 = (r * s) as usize;
    let verma = Verma::new(data.c.clone(), data.h.clone());
    let mut stacked = verma.action_matrix(Gen::G(1), n2);
    let g32 = verma.action_matrix(Gen::G(3), n2);
    if g32.rows() > 0 {
        stacked = stacked.vstack(&g32)?;
    }
    let ker = nullspace(&stacked);
    if ker.len() != 1 {
        return Err(Error::KernelDimension { expected: 1, found: ker.len() });
    }
    let v = &ker[0];
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero kernel vector").clone();
    let v: Vec<RatFun> = v.iter().map(|x| x.try_div(&lead)).collect::<std::result::Result<_, _>>()?;
    let chi = VermaVector::from_vector(n2, &v);
    if !verma.is_singular(&chi) {
        return Err(Error::Mismatch(format!("kernel vector at ({r},{s}) is not annihilated by L_1, L_2")));
    }
    Ok((data, chi))
}
