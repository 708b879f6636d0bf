//! Selberg and Aomoto integrals: closed forms, numerical cross-checks, the
//! Aomoto recursion and the vanishing of the torus integrals `I(m)`.
//!
//! The only floating-point module of the crate.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussJacobi;
use rand::distributions::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use statrs::distribution::Beta;

use crate::error::{Error, Result};
use crate::kernel::{to_f64, Rational};

/// Parameters `(n, alpha, beta, gamma)` inside the convergence domain of the
/// real Selberg integral over `[0,1]^n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelbergSpec {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl SelbergSpec {
    pub fn new(n: usize, alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        if !(alpha > 0.0 && beta > 0.0) || !gamma.is_finite() {
            return Err(Error::Invalid(format!("need alpha, beta > 0, got ({alpha}, {beta})")));
        }
        let mut bound = 1.0 / n as f64;
        if n > 1 {
            bound = bound.min(alpha / (n - 1) as f64).min(beta / (n - 1) as f64);
        }
        if gamma <= -bound {
            return Err(Error::Invalid(format!("gamma = {gamma} must exceed {}", -bound)));
        }
        Ok(SelbergSpec { n, alpha, beta, gamma })
    }

    /// `prod x_i^{alpha-1} (1-x_i)^{beta-1} prod_{i<j} |x_i - x_j|^{2 gamma}`.
    pub fn weight(&self, x: &[f64]) -> f64 {
        let mut w = 1.0;
        for &xi in x {
            w *= xi.powf(self.alpha - 1.0) * (1.0 - xi).powf(self.beta - 1.0);
        }
        w * self.vandermonde(x)
    }

    fn vandermonde(&self, x: &[f64]) -> f64 {
        let mut w = 1.0;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                w *= (x[i] - x[j]).abs().powf(2.0 * self.gamma);
            }
        }
        w
    }
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() < 1e-12
}

/// `(ln |Gamma(x)|, sign Gamma(x))`, with reflection below 1/2.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if is_pole(x) {
        return Err(Error::Pole(format!("Gamma({x})")));
    }
    if x >= 0.5 {
        return Ok((statrs::function::gamma::ln_gamma(x), 1.0));
    }
    let s = (PI * x).sin();
    let (l, sign) = ln_gamma_signed(1.0 - x)?;
    Ok((PI.ln() - s.abs().ln() - l, s.signum() * sign))
}

/// Product of Gamma powers kept as a log and a sign.
struct LogProduct {
    log: f64,
    sign: f64,
}

impl LogProduct {
    fn new() -> Self {
        LogProduct { log: 0.0, sign: 1.0 }
    }

    fn gamma(&mut self, x: f64, power: i32) -> Result<()> {
        let (l, s) = ln_gamma_signed(x)?;
        self.log += power as f64 * l;
        if power % 2 != 0 {
            self.sign *= s;
        }
        Ok(())
    }

    fn value(&self) -> f64 {
        self.sign * self.log.exp()
    }
}

/// Selberg's product of Gamma values.
pub fn selberg_closed(n: usize, alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    let mut p = LogProduct::new();
    for j in 1..=n {
        let j1 = (j - 1) as f64;
        p.gamma(alpha + j1 * gamma, 1)?;
        p.gamma(beta + j1 * gamma, 1)?;
        p.gamma(1.0 + j as f64 * gamma, 1)?;
        p.gamma(alpha + beta + (n + j - 2) as f64 * gamma, -1)?;
        p.gamma(1.0 + gamma, -1)?;
    }
    Ok(p.value())
}

/// `prod_{j=1}^{k} (alpha + (n-j) gamma) / (alpha + beta + (2n-j-1) gamma)`.
pub fn aomoto_ratio(n: usize, k: usize, alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    if k > n {
        return Err(Error::Invalid(format!("k = {k} exceeds n = {n}")));
    }
    let mut v = 1.0;
    for j in 1..=k {
        let den = alpha + beta + (2 * n - j - 1) as f64 * gamma;
        if den == 0.0 {
            return Err(Error::Pole(format!("Aomoto factor j = {j}")));
        }
        v *= (alpha + (n - j) as f64 * gamma) / den;
    }
    Ok(v)
}

/// `S_n((1^k))`, Selberg's value times [`aomoto_ratio`].
pub fn aomoto_closed(n: usize, k: usize, alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    Ok(selberg_closed(n, alpha, beta, gamma)? * aomoto_ratio(n, k, alpha, beta, gamma)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

/// A numerical estimate and its error bound: the difference between two rule
/// sizes for quadrature, three standard errors for Monte Carlo.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Sampling and quadrature budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Budget {
    /// Gauss-Jacobi nodes per axis.
    pub nodes: usize,
    /// Monte Carlo samples.
    pub samples: u64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { nodes: 64, samples: 10_000_000, seed: 42 }
    }
}

const MAX_NODES: usize = 2048;
const MAX_SAMPLES: u64 = 1_000_000_000;
const STREAMS: u64 = 8;

fn jacobi_rule(spec: &SelbergSpec, nodes: usize) -> Result<Vec<(f64, f64)>> {
    let deg = NonZeroUsize::new(nodes).ok_or_else(|| Error::Invalid("zero quadrature nodes".into()))?;
    // on [-1,1] the weight is (1-u)^{beta-1} (1+u)^{alpha-1}; x = (1+u)/2
    let a = (spec.beta - 1.0).try_into().map_err(|_| Error::Invalid("beta".into()))?;
    let b = (spec.alpha - 1.0).try_into().map_err(|_| Error::Invalid("alpha".into()))?;
    let rule = GaussJacobi::new(deg, a, b);
    let scale = 2f64.powf(1.0 - spec.alpha - spec.beta);
    Ok(rule.iter().map(|(u, w)| ((1.0 + u) / 2.0, w * scale)).collect())
}

fn tensor_quadrature(spec: &SelbergSpec, m: &[i64], nodes: usize) -> Result<f64> {
    let rule = jacobi_rule(spec, nodes)?;
    let n = spec.n;
    let mut idx = vec![0usize; n];
    let mut x = vec![0.0; n];
    let mut acc = Kahan::default();
    loop {
        let mut w = 1.0;
        for i in 0..n {
            let (xi, wi) = rule[idx[i]];
            x[i] = xi;
            w *= wi * xi.powi(m[i] as i32);
        }
        acc.add(w * spec.vandermonde(&x));
        let mut i = 0;
        loop {
            if i == n {
                return Ok(acc.sum());
            }
            idx[i] += 1;
            if idx[i] < rule.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[derive(Default, Clone, Copy)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    fn sum(&self) -> f64 {
        self.sum
    }
}

/// Mean and standard error of `f` under independent seeded streams, reduced
/// in stream order so the result does not depend on scheduling.
fn monte_carlo<T: Copy + Send>(samples: u64, seed: u64, draw: impl Fn(&mut ChaCha8Rng) -> T + Sync, f: impl Fn(T) -> [f64; 2] + Sync) -> ([f64; 2], [f64; 2]) {
    let per = samples.div_ceil(STREAMS);
    let partial: Vec<([Kahan; 2], [Kahan; 2], u64)> = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..STREAMS)
            .map(|s| {
                let (draw, f) = (&draw, &f);
                sc.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(s);
                    let count = per.min(samples.saturating_sub(s * per));
                    let (mut s1, mut s2) = ([Kahan::default(); 2], [Kahan::default(); 2]);
                    for _ in 0..count {
                        let v = f(draw(&mut rng));
                        for k in 0..2 {
                            s1[k].add(v[k]);
                            s2[k].add(v[k] * v[k]);
                        }
                    }
                    (s1, s2, count)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling thread")).collect()
    });
    let total: u64 = partial.iter().map(|p| p.2).sum();
    let nf = total as f64;
    let mut mean = [0.0; 2];
    let mut se = [0.0; 2];
    for k in 0..2 {
        let s1: f64 = partial.iter().map(|p| p.0[k].sum()).sum();
        let s2: f64 = partial.iter().map(|p| p.1[k].sum()).sum();
        mean[k] = s1 / nf;
        let var = (s2 / nf - mean[k] * mean[k]).max(0.0) * nf / (nf - 1.0).max(1.0);
        se[k] = (var / nf).sqrt();
    }
    (mean, se)
}

/// `S_n(m; alpha, beta, gamma)` numerically. Quadrature is a tensor
/// Gauss-Jacobi rule (`n <= 2`); Monte Carlo draws `x_i ~ Beta(alpha, beta)`.
pub fn selberg_numeric_m(spec: &SelbergSpec, m: &[i64], method: Method, budget: &Budget) -> Result<Estimate> {
    let n = spec.n;
    if m.len() != n || m.iter().any(|&k| k < 0) {
        return Err(Error::Invalid(format!("multi-index must have {n} nonnegative entries")));
    }
    match method {
        Method::Quadrature => {
            if n > 2 {
                return Err(Error::Invalid("tensor quadrature is limited to n <= 2".into()));
            }
            if budget.nodes > MAX_NODES {
                return Err(Error::BudgetExceeded(format!("{} nodes > {MAX_NODES}", budget.nodes)));
            }
            let fine = tensor_quadrature(spec, m, budget.nodes)?;
            let coarse = tensor_quadrature(spec, m, (budget.nodes / 2).max(1))?;
            Ok(Estimate { value: fine, error: (fine - coarse).abs() })
        }
        Method::MonteCarlo => {
            if n > 4 {
                return Err(Error::Invalid("Monte Carlo is limited to n <= 4".into()));
            }
            if budget.samples > MAX_SAMPLES || budget.samples < 2 {
                return Err(Error::BudgetExceeded(format!("{} samples", budget.samples)));
            }
            let dist = Beta::new(spec.alpha, spec.beta).map_err(|e| Error::Invalid(e.to_string()))?;
            let norm = selberg_closed(1, spec.alpha, spec.beta, 0.0)?.powi(n as i32);
            let draw = |rng: &mut ChaCha8Rng| {
                let mut x = [0.0f64; 4];
                for xi in x.iter_mut().take(n) {
                    *xi = dist.sample(rng);
                }
                x
            };
            let f = |x: [f64; 4]| {
                let x = &x[..n];
                let mono: f64 = x.iter().zip(m).map(|(xi, &k)| xi.powi(k as i32)).product();
                [spec.vandermonde(x) * mono, 0.0]
            };
            let (mean, se) = monte_carlo(budget.samples, budget.seed, draw, f);
            Ok(Estimate { value: norm * mean[0], error: 3.0 * norm * se[0] })
        }
    }
}

pub fn selberg_numeric(spec: &SelbergSpec, method: Method, budget: &Budget) -> Result<Estimate> {
    selberg_numeric_m(spec, &vec![0; spec.n], method, budget)
}

/// One row of [`aomoto_recursion_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionRow {
    pub k: usize,
    /// `alpha S(k-1) - (alpha+beta) S(k-1) + gamma (n-k) S(k-1) - gamma (2n-k-1) S(k)`,
    /// relative to the largest term.
    pub verbatim: f64,
    /// `(alpha + gamma (n-k)) S(k-1) - (alpha + beta + gamma (2n-k-1)) S(k)`, relative.
    pub corrected: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecursionReport {
    pub spec: SelbergSpec,
    pub rows: Vec<RecursionRow>,
}

impl RecursionReport {
    /// Whether the verbatim relation holds for every `k`.
    pub fn verbatim_holds(&self, tol: f64) -> bool {
        self.rows.iter().all(|r| r.verbatim.abs() < tol)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| json!({"k": r.k, "verbatim": r.verbatim, "corrected": r.corrected}))
            .collect();
        json!({
            "n": self.spec.n, "alpha": self.spec.alpha, "beta": self.spec.beta, "gamma": self.spec.gamma,
            "rows": rows,
        })
    }
}

fn relative(terms: &[f64]) -> f64 {
    let scale = terms.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let sum: f64 = terms.iter().sum();
    if scale == 0.0 {
        0.0
    } else {
        sum / scale
    }
}

/// Evaluates the integration-by-parts relation between consecutive Aomoto
/// integrals in two forms. Fails only if the corrected form is violated.
pub fn aomoto_recursion_check(spec: &SelbergSpec) -> Result<RecursionReport> {
    let SelbergSpec { n, alpha, beta, gamma } = *spec;
    let s: Vec<f64> = (0..=n).map(|k| aomoto_closed(n, k, alpha, beta, gamma)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for k in 1..=n {
        let (a, b) = (s[k - 1], s[k]);
        let nk = (n - k) as f64;
        let tail = (2 * n - k - 1) as f64;
        let verbatim = relative(&[alpha * a, -(alpha + beta) * a, gamma * nk * a, -gamma * tail * b]);
        let corrected = relative(&[alpha * a, gamma * nk * a, -(alpha + beta) * b, -gamma * tail * b]);
        if corrected.abs() > 1e-10 {
            return Err(Error::RecursionViolation(format!("k = {k}: relative residual {corrected:e}")));
        }
        rows.push(RecursionRow { k, verbatim, corrected });
    }
    Ok(RecursionReport { spec: *spec, rows })
}

/// Result of [`vanishing_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct VanishingReport {
    pub r: usize,
    pub t: Rational,
    pub m: Vec<i64>,
    /// Estimate of `I(m)` on the torus, real and imaginary parts.
    pub estimate: [f64; 2],
    pub std_error: [f64; 2],
    /// Mean of `|integrand|`, the natural scale of the estimate.
    pub scale: f64,
    pub samples: u64,
    pub seed: u64,
}

impl VanishingReport {
    /// Both components within three standard errors of zero.
    pub fn consistent_with_zero(&self) -> bool {
        (0..2).all(|k| self.estimate[k].abs() <= 3.0 * self.std_error[k] + 1e-14 * self.scale)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r, "t": self.t.to_string(), "m": self.m,
            "estimate": self.estimate, "std_error": self.std_error, "scale": self.scale,
            "samples": self.samples, "seed": self.seed,
            "consistent_with_zero": self.consistent_with_zero(),
        })
    }
}

/// `I(m) = (2 pi i)^{-r} \oint z^m Phi_r(z; t) dz` over the torus `z_i = w_i^2`,
/// `|w_i| = 1`, with `Phi_r = prod z_i^{(1-r)t-1} prod_{i<j} (z_i - z_j)^{2t}`.
///
/// The real integral over `[0,1]^r` never converges at these parameters,
/// since `alpha + (r-1) gamma = 0`. The integrand is homogeneous of degree
/// `|m|` under `z -> e^{i theta} z`, which is why `I(m)` vanishes for
/// `|m| != 0` on any rotation-invariant cycle. The double cover `z = w^2`
/// makes every power single-valued when `2t` is a positive integer.
pub fn vanishing_check(r: usize, t: &Rational, m: &[i64], budget: &Budget) -> Result<VanishingReport> {
    if r == 0 || m.len() != r {
        return Err(Error::Invalid(format!("multi-index must have r = {r} entries")));
    }
    let two_t = t * Rational::from_integer(2.into());
    if !two_t.is_integer() || to_f64(&two_t) <= 0.0 {
        return Err(Error::Invalid(format!("2t = {two_t} must be a positive integer")));
    }
    if r > 8 {
        return Err(Error::Invalid("the torus check supports r <= 8".into()));
    }
    if budget.samples > MAX_SAMPLES || budget.samples < 2 {
        return Err(Error::BudgetExceeded(format!("{} samples", budget.samples)));
    }
    if m.iter().all(|&k| k == 0) {
        return Err(Error::Invalid("m = 0: I(0)/I(0) = 1 trivially, nothing to sample".into()));
    }
    let tf = to_f64(t);
    let e2 = to_f64(&two_t) as i32;
    // z_i^{(1-r)t - 1 + m_i} dz_i = 2 i w_i^{2((1-r)t + m_i)} dtheta_i
    let wpow: Vec<i32> = m.iter().map(|&k| (2.0 * ((1.0 - r as f64) * tf + k as f64)).round() as i32).collect();
    let draw = |rng: &mut ChaCha8Rng| {
        let mut th = [0.0f64; 8];
        for x in th.iter_mut().take(r) {
            *x = rng.gen::<f64>() * 2.0 * PI;
        }
        th
    };
    let f = |th: [f64; 8]| {
        let mut acc = (2f64.powi(r as i32), 0.0);
        for i in 0..r {
            let a = wpow[i] as f64 * th[i];
            acc = cmul(acc, (a.cos(), a.sin()));
        }
        for i in 0..r {
            for j in i + 1..r {
                let zi = (2.0 * th[i]).sin_cos();
                let zj = (2.0 * th[j]).sin_cos();
                let d = (zi.1 - zj.1, zi.0 - zj.0);
                acc = cmul(acc, cpow(d, e2));
            }
        }
        [acc.0, acc.1]
    };
    let (mean, se) = monte_carlo(budget.samples, budget.seed, draw, f);
    let scale = {
        let (m2, _) = monte_carlo(budget.samples.min(100_000), budget.seed ^ 0x5eed, draw, |th| {
            let v = f(th);
            [v[0].hypot(v[1]), 0.0]
        });
        m2[0]
    };
    if se[0].max(se[1]) > 0.1 * scale {
        return Err(Error::Inconclusive(format!(
            "standard error {:e} exceeds a tenth of the scale {scale:e}",
            se[0].max(se[1])
        )));
    }
    Ok(VanishingReport {
        r,
        t: t.clone(),
        m: m.to_vec(),
        estimate: mean,
        std_error: se,
        scale,
        samples: budget.samples,
        seed: budget.seed,
    })
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cpow(a: (f64, f64), e: i32) -> (f64, f64) {
    let mut out = (1.0, 0.0);
    for _ in 0..e {
        out = cmul(out, a);
    }
    out
}
