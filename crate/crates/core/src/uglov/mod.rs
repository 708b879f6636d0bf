//! Macdonald, Jack and Uglov (`p = 2`) symmetric functions from the
//! eigenoperator characterizations.

use crate::error::{Error, Result};
use crate::kernel::{int, Field, Jet, Matrix, RatFun, Rational, Ring, Var};
use crate::symfunc::{inner_qt, partitions, Basis, Partition, SymFunc};
use crate::vertexops::{c0_mode, c1_mode, eps, eps0, eps1, eta_mode, uglov_point};

/// Uglov function `P^{(g,2)}_lambda` with its two eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct UglovFunction<F> {
    pub lambda: Partition,
    pub gamma: F,
    /// Monic expansion in the monomial basis.
    pub expansion: SymFunc<F>,
    pub eigenvalue0: Rational,
    pub eigenvalue1: F,
}

/// Back-substitution for a monic eigenvector `m_lambda + sum_{mu < lambda}
/// c_mu m_mu`, walking down a linear extension of dominance. Rows where the
/// eigenvalue repeats but nothing feeds in are left at zero and reported.
fn back_substitute<F: Field>(op: &Matrix<F>, lambda: &Partition, eigenvalue: &F) -> Result<(Vec<F>, Vec<usize>)> {
    let ps = partitions(lambda.size());
    let li = ps.iter().position(|p| p == lambda).expect("partition of n");
    let mut c = vec![F::zero(); ps.len()];
    let mut free = Vec::new();
    c[li] = F::one();
    for i in li + 1..ps.len() {
        if !ps[i].dominance_leq(lambda) {
            continue;
        }
        let mut rhs = F::zero();
        for j in li..i {
            if !c[j].is_zero() && !op.get(i, j).is_zero() {
                rhs = rhs - op.get(i, j).clone() * c[j].clone();
            }
        }
        let diag = op.get(i, i).clone() - eigenvalue.clone();
        if diag.is_zero() {
            if rhs.is_zero() {
                free.push(i);
                continue;
            }
            return Err(Error::DegenerateEigenvalue { lambda: lambda.to_string(), mu: ps[i].to_string() });
        }
        c[i] = rhs.try_div(&diag).map_err(|e| match e {
            crate::error::KernelError::PrecisionLoss(_) => {
                Error::DegenerateEigenvalue { lambda: lambda.to_string(), mu: ps[i].to_string() }
            }
            other => other.into(),
        })?;
    }
    Ok((c, free))
}

fn eigen_residual<F: Field>(op: &Matrix<F>, c: &[F], eigenvalue: &F, lambda: &Partition) -> Result<()> {
    let ps = partitions(lambda.size());
    let residual = op.mul_vec(c)?;
    for (i, r) in residual.iter().enumerate() {
        if *r != c[i].clone() * eigenvalue.clone() {
            return Err(Error::Mismatch(format!(
                "eigen-equation fails at m{} for {lambda}: {} vs {}",
                ps[i],
                r,
                c[i].clone() * eigenvalue.clone()
            )));
        }
    }
    Ok(())
}

/// Monic eigenvector `m_lambda + sum_{mu < lambda} c_mu m_mu` of the
/// degree-`|lambda|` block `op` (monomial basis), by back-substitution down a
/// linear extension of dominance. The full eigen-equation is verified
/// afterwards, including rows outside the dominance ideal.
pub fn triangular_eigenvector<F: Field>(op: &Matrix<F>, lambda: &Partition, eigenvalue: &F) -> Result<SymFunc<F>> {
    let (c, free) = back_substitute(op, lambda, eigenvalue)?;
    if let Some(&i) = free.first() {
        let mu = &partitions(lambda.size())[i];
        return Err(Error::DegenerateEigenvalue { lambda: lambda.to_string(), mu: mu.to_string() });
    }
    eigen_residual(op, &c, eigenvalue, lambda)?;
    Ok(SymFunc::from_vector(Basis::M, lambda.size(), &c))
}

fn m_block<F: Ring>(op: crate::vertexops::GradedOperator<F>, n: usize) -> Matrix<F> {
    op.to_basis(Basis::M).block(n).expect("degree-preserving block").clone()
}

/// Macdonald `P_lambda(q, t)` as the monic triangular eigenvector of `eta_0`.
pub fn macdonald_eigen<F: Field>(lambda: &Partition, q: &F, t: &F) -> Result<SymFunc<F>> {
    let n = lambda.size();
    let block = m_block(eta_mode(q, t, 0, n)?, n);
    triangular_eigenvector(&block, lambda, &eps(lambda, q, t)?)
}

/// All `P_lambda(q, t)` with `|lambda| = n` by Gram-Schmidt on monomials,
/// from `(1^n)` upwards.
pub fn macdonald_gram_schmidt<F: Field>(n: usize, q: &F, t: &F) -> Result<Vec<(Partition, SymFunc<F>)>> {
    let mut done: Vec<(Partition, SymFunc<F>, F)> = Vec::new();
    for lam in partitions(n).into_iter().rev() {
        let m = SymFunc::<F>::basis_elem(Basis::M, lam.clone());
        let mut p = m.clone();
        for (_, b, norm) in &done {
            let c = inner_qt(&m, b, q, t)?.try_div(norm)?;
            p = p.sub(&b.scale(&c));
        }
        let norm = inner_qt(&p, &p, q, t)?;
        if norm.is_zero() {
            return Err(Error::Degeneracy(format!("isotropic vector at {lam}")));
        }
        done.push((lam, p, norm));
    }
    Ok(done.into_iter().rev().map(|(l, p, _)| (l, p)).collect())
}

fn is_root_of_unity_upto(x: &Rational, n: usize) -> bool {
    (1..=n.max(1)).any(|k| Ring::pow(x, k as u32) == int(1))
}

/// Macdonald `P_lambda(q, t)` at a rational point, cross-checked by both
/// characterizations.
pub fn macdonald(lambda: &Partition, q: &Rational, t: &Rational) -> Result<SymFunc<Rational>> {
    let n = lambda.size();
    if q.is_zero() || t.is_zero() || is_root_of_unity_upto(q, n) || is_root_of_unity_upto(t, n) {
        return Err(Error::Invalid(format!("(q, t) = ({q}, {t}) is not generic for degree {n}")));
    }
    let e = macdonald_eigen(lambda, q, t)?;
    let gs = macdonald_gram_schmidt(n, q, t)?;
    let g = gs.into_iter().find(|(l, _)| l == lambda).map(|(_, p)| p.convert(Basis::M)).unwrap();
    if g != e {
        return Err(Error::Mismatch(format!("Gram-Schmidt and eigenvector disagree for {lambda}")));
    }
    Ok(e)
}

/// Order-zero part of Macdonald `P_lambda` at `q = -e^h`, `t = -e^{g h}`.
fn macdonald_limit<F: Field>(lambda: &Partition, gamma: &F) -> Result<SymFunc<F>> {
    let mut order = 4;
    loop {
        let (q, t) = uglov_point(gamma, order);
        let jet = macdonald_eigen(lambda, &q, &t);
        let lost = match &jet {
            Ok(j) => j.terms().values().any(|x| x.precision() == Some(0)),
            Err(Error::DegenerateEigenvalue { .. }) => true,
            Err(_) => false,
        };
        if !lost {
            return Ok(jet?.map(|x| x.coeff(0)));
        }
        if order >= 4 * lambda.size() + 4 {
            return Err(Error::Truncation(format!("q -> -1 limit of P_{lambda} needs more than {order} orders")));
        }
        order *= 2;
    }
}

/// Uglov `P^{(g,2)}_lambda` over any field containing `g`: the monic
/// triangular eigenvector of `C1_0(g)`, with the `C0_0` relation post-checked.
///
/// From degree 5 on, some `mu < lambda` share both eigenvalues with `lambda`
/// identically in `g` (e.g. `(3,2)` under `(5)`). Those coefficients are not
/// fixed by the two operators, so they are read off the Macdonald limit, which
/// must still satisfy both eigen-equations.
pub fn uglov2_in<F: Field>(lambda: &Partition, gamma: &F) -> Result<UglovFunction<F>> {
    let n = lambda.size();
    let e1 = eps1(lambda, gamma);
    let block = m_block(c1_mode(gamma, 0, n), n);
    let (mut c, free) = back_substitute(&block, lambda, &e1).map_err(|e| match e {
        Error::DegenerateEigenvalue { lambda, mu } => {
            Error::Degeneracy(format!("eps1 difference vanishes for {lambda} against {mu}"))
        }
        other => other,
    })?;
    if !free.is_empty() {
        let lim = macdonald_limit(lambda, gamma)?.vector(n);
        // entries below the first free one depend on it; the eigen-equations
        // checked next cover those
        for (i, x) in lim.iter().enumerate().take(free[0]) {
            if *x != c[i] {
                let mu = &partitions(n)[i];
                return Err(Error::Mismatch(format!("limit of P_{lambda} disagrees with the C1_0 eigenvector at m{mu}")));
            }
        }
        c = lim;
    }
    eigen_residual(&block, &c, &e1, lambda)?;
    let e0 = eps0(lambda);
    let c0 = m_block(c0_mode::<F>(0, n), n);
    let w = c0.mul_vec(&c)?;
    let scale = F::from_rational(&e0);
    if w.iter().zip(&c).any(|(a, b)| *a != b.clone() * scale.clone()) {
        return Err(Error::Mismatch(format!("C0_0 eigenvalue of {lambda} differs from eps0 = {e0}")));
    }
    let expansion = SymFunc::from_vector(Basis::M, n, &c);
    Ok(UglovFunction { lambda: lambda.clone(), gamma: gamma.clone(), expansion, eigenvalue0: e0, eigenvalue1: e1 })
}

/// Uglov function with symbolic `g`.
pub fn uglov2_symbolic(lambda: &Partition) -> Result<UglovFunction<RatFun>> {
    uglov2_in(lambda, &RatFun::var(Var::Gamma))
}

pub fn uglov2(lambda: &Partition, gamma: &Rational) -> Result<UglovFunction<Rational>> {
    uglov2_in(lambda, gamma)
}

/// Order-zero part of a jet-valued symmetric function; fails when some
/// coefficient has lost all precision.
pub fn jet_limit(f: &SymFunc<Jet<Rational>>) -> Result<SymFunc<Rational>> {
    f.try_map(|j| {
        if j.precision() == Some(0) {
            Err(Error::Truncation("jet order too small for the limit".into()))
        } else {
            Ok(j.coeff(0))
        }
    })
}

/// Report of the `q -> 1` limit check.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub lambda: Partition,
    pub limit: SymFunc<Rational>,
    pub uglov: SymFunc<Rational>,
}

/// Macdonald over jets at `q = -e^h`, `t = -e^{g h}`; its order-zero part must
/// equal `uglov2(lambda, g)`.
pub fn uglov_limit_check(lambda: &Partition, gamma: &Rational, order: usize) -> Result<LimitReport> {
    let (q, t) = uglov_point(gamma, order.max(1));
    let jet = macdonald_eigen(lambda, &q, &t)?;
    let limit = jet_limit(&jet)?;
    let u = uglov2(lambda, gamma)?.expansion;
    if limit != u {
        let diff = limit.sub(&u);
        let (mu, c) = diff.terms().iter().next().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        return Err(Error::Mismatch(format!("limit differs from Uglov function at m{mu}: {c}")));
    }
    Ok(LimitReport { lambda: lambda.clone(), limit, uglov: u })
}

/// Jack `P_lambda(alpha)` as the `h -> 0` limit of Macdonald at `q = e^{alpha h}`, `t = e^h`.
pub fn jack(lambda: &Partition, alpha: &Rational) -> Result<SymFunc<Rational>> {
    let order = 2 * lambda.size() + 2;
    let q = Jet::exp_linear(alpha.clone(), order);
    let t = Jet::exp_linear(int(1), order);
    let jet = macdonald_eigen(lambda, &q, &t).map_err(|e| match e {
        Error::DegenerateEigenvalue { lambda, mu } => Error::Degeneracy(format!("{lambda} against {mu}")),
        other => other,
    })?;
    jet_limit(&jet)
}
