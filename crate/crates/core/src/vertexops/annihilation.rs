//! Positive modes of the deformed Virasoro current at `q = -e^h`,
//! `t = -e^{h/t_+^2}` acting on free-field images of singular vectors.

use serde_json::{json, Value};

use super::{dvir_current, DvirParams, GradedOperator};
use crate::error::{Error, Result};
use crate::fock::{singular_image, FockVector, S};
use crate::kernel::{Field, Jet, RatFun, Ring, ScalarJson, Var};
use crate::symfunc::Basis;

/// Outcome of [`t1_annihilation_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilationReport {
    pub r: i64,
    pub s: i64,
    /// Modes `n` for which `T0_n` and `T1_n` were applied.
    pub modes: Vec<i64>,
    /// The current's `alpha`, tied to the Fock momentum by `alpha = -alpha_+ / t`.
    pub alpha: RatFun,
}

impl AnnihilationReport {
    pub fn to_json(&self) -> Value {
        json!({"rs": [self.r, self.s], "modes": self.modes, "alpha": self.alpha.to_json()})
    }
}

fn apply(op: &GradedOperator<RatFun>, v: &FockVector) -> Result<FockVector> {
    let a = op.apply(&v.map(|x| x.a.clone()))?;
    let b = op.apply(&v.map(|x| x.b.clone()))?;
    Ok(a.map(|x| S::base(x.clone())).add(&b.map(|x| S::new(RatFun::zero(), x.clone()))))
}

fn order(op: &GradedOperator<Jet<RatFun>>, k: usize) -> GradedOperator<RatFun> {
    op.map(|j| j.coeff(k))
}

/// Applies `T0_n` and `T1_n(t^-2)` for `n = 1..=dmax` with the given current
/// `alpha` to `v` (power-sum basis, symbolic `t`). Fails on the first nonzero.
pub fn t1_annihilates(v: &FockVector, alpha: &RatFun, dmax: usize) -> Result<()> {
    let t = RatFun::var(Var::T);
    let gamma = (t.clone() * t).try_inv()?;
    let v = v.convert(Basis::P);
    let modes = dvir_current(&DvirParams::jets(&gamma, alpha, 2))?.modes(dmax);
    for n in 1..=dmax as i64 {
        for k in 0..2 {
            if !apply(&order(&modes[&n], k), &v)?.is_zero() {
                return Err(Error::NonzeroResult(format!("T{k}_{n}(t^-2)")));
            }
        }
    }
    Ok(())
}

/// Applies `T0_n` and `T1_n(t^-2)`, `n = 1..=dmax`, to the image of the
/// singular vector `chi_{r,s}` and requires zero.
pub fn t1_annihilation_check(r: i64, s: i64, dmax: usize) -> Result<AnnihilationReport> {
    if dmax < (r * s).max(0) as usize {
        return Err(Error::Invalid(format!("dmax = {dmax} is below the level r s = {}", r * s)));
    }
    let t = RatFun::var(Var::T);
    let img = singular_image(r, s, &t)?;
    let alpha = -img.weights.alpha_plus.try_div(&t)?;
    t1_annihilates(&img.image, &alpha, dmax).map_err(|e| match e {
        Error::NonzeroResult(m) => Error::NonzeroResult(format!("{m} on the image of chi_({r},{s})")),
        other => other,
    })?;
    Ok(AnnihilationReport { r, s, modes: (1..=dmax as i64).collect(), alpha })
}
