//! Per-degree change-of-basis matrices between power sums, monomials and
//! elementary functions, computed on demand and cached.
//!
//! Matrices are indexed by [`partitions`] of the degree. Column `j` of a
//! `from -> to` matrix holds the `to`-expansion of the `j`-th `from` basis
//! element.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, OnceLock, RwLock};

use serde_json::Value;

use super::{partitions, Partition};
use crate::kernel::{Matrix, Rational, ScalarJson};

/// Directory for an on-disk cache of power-sum to monomial matrices.
pub const CACHE_ENV: &str = "SVJACK_CACHE_DIR";

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Kind {
    PToM,
    MToP,
    EToP,
    PToE,
}

type Cache = RwLock<HashMap<(Kind, usize), Arc<Matrix<Rational>>>>;

fn cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn lookup(kind: Kind, n: usize, build: impl FnOnce() -> Matrix<Rational>) -> Arc<Matrix<Rational>> {
    if let Some(m) = cache().read().unwrap().get(&(kind, n)) {
        return m.clone();
    }
    // built outside the lock; a racing builder produces the same value
    let m = Arc::new(build());
    cache().write().unwrap().entry((kind, n)).or_insert(m).clone()
}

pub fn p_to_m(n: usize) -> Arc<Matrix<Rational>> {
    lookup(Kind::PToM, n, || load_disk(n).unwrap_or_else(|| {
        let m = build_p_to_m(n);
        store_disk(n, &m);
        m
    }))
}

pub fn m_to_p(n: usize) -> Arc<Matrix<Rational>> {
    lookup(Kind::MToP, n, || p_to_m(n).inverse().expect("power sums form a basis"))
}

pub fn e_to_p(n: usize) -> Arc<Matrix<Rational>> {
    lookup(Kind::EToP, n, || build_e_to_p(n))
}

pub fn p_to_e(n: usize) -> Arc<Matrix<Rational>> {
    lookup(Kind::PToE, n, || e_to_p(n).inverse().expect("elementary functions form a basis"))
}

fn index(ps: &[Partition]) -> HashMap<Partition, usize> {
    ps.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
}

/// Coefficient of `m_mu` in `p_k m_nu`: the number of positions of `mu`
/// (padded with a zero) whose removal of `k` leaves `nu`.
fn pk_times_m(k: usize, nu: &Partition) -> Vec<(Partition, usize)> {
    let mut padded = nu.parts().to_vec();
    padded.push(0);
    let mut out: Vec<(Partition, usize)> = Vec::new();
    for i in 0..padded.len() {
        if i > 0 && padded[i] == padded[i - 1] {
            continue;
        }
        let mut v = padded.clone();
        v[i] += k;
        let mu = Partition::new(v);
        if out.iter().any(|(m, _)| *m == mu) {
            continue;
        }
        let mut mv = mu.parts().to_vec();
        let count = (0..mv.len())
            .filter(|&j| {
                if mv[j] < k {
                    return false;
                }
                mv[j] -= k;
                let ok = Partition::new(mv.clone()) == *nu;
                mv[j] += k;
                ok
            })
            .count();
        out.push((mu, count));
    }
    out
}

fn build_p_to_m(n: usize) -> Matrix<Rational> {
    let ps = partitions(n);
    let idx = index(&ps);
    let mut m = Matrix::zeros(ps.len(), ps.len());
    for (j, lam) in ps.iter().enumerate() {
        // p_lam = p_{lam_1} p_rest, with p_rest expanded one degree down
        let Some((&k, rest)) = lam.parts().split_first() else {
            m.set(0, 0, Rational::from_integer(1.into()));
            continue;
        };
        let rest = Partition::new(rest.to_vec());
        let rn = rest.size();
        let sub = p_to_m(rn);
        let sub_ps = partitions(rn);
        let rj = sub_ps.iter().position(|p| *p == rest).unwrap();
        for (ri, nu) in sub_ps.iter().enumerate() {
            let c = sub.get(ri, rj);
            if *c == Rational::from_integer(0.into()) {
                continue;
            }
            for (mu, cnt) in pk_times_m(k, nu) {
                let i = idx[&mu];
                let v = m.get(i, j).clone() + c * Rational::from_integer((cnt as i64).into());
                m.set(i, j, v);
            }
        }
    }
    m
}

fn build_e_to_p(n: usize) -> Matrix<Rational> {
    let ps = partitions(n);
    let idx = index(&ps);
    // e_k = sum_{lam |- k} (-1)^{k - l(lam)} p_lam / z_lam
    let single = |k: usize| -> Vec<(Partition, Rational)> {
        partitions(k)
            .into_iter()
            .map(|l| {
                let sign = if (k - l.len()) % 2 == 0 { 1 } else { -1 };
                let c = Rational::from_integer(sign.into()) / l.z_lambda();
                (l, c)
            })
            .collect()
    };
    let mut m = Matrix::zeros(ps.len(), ps.len());
    for (j, lam) in ps.iter().enumerate() {
        let mut acc: Vec<(Partition, Rational)> = vec![(Partition::empty(), Rational::from_integer(1.into()))];
        for &k in lam.parts() {
            let ek = single(k);
            let mut next: HashMap<Partition, Rational> = HashMap::new();
            for (a, ca) in &acc {
                for (b, cb) in &ek {
                    *next.entry(a.union(b)).or_insert_with(|| Rational::from_integer(0.into())) += ca * cb;
                }
            }
            acc = next.into_iter().collect();
        }
        for (p, c) in acc {
            m.set(idx[&p], j, c);
        }
    }
    m
}

fn disk_path(n: usize) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(|d| PathBuf::from(d).join(format!("p_to_m_{n}.json")))
}

fn load_disk(n: usize) -> Option<Matrix<Rational>> {
    let text = std::fs::read_to_string(disk_path(n)?).ok()?;
    let v: Value = serde_json::from_str(&text).ok()?;
    let rows = v
        .as_array()?
        .iter()
        .map(|r| r.as_array()?.iter().map(|x| Rational::from_json(x).ok()).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    let m = Matrix::from_rows(rows).ok()?;
    let k = partitions(n).len();
    (m.rows() == k && m.cols() == k).then_some(m)
}

fn store_disk(n: usize, m: &Matrix<Rational>) {
    let Some(path) = disk_path(n) else { return };
    let rows: Vec<Value> = m
        .to_rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(ScalarJson::to_json).collect()))
        .collect();
    if let Some(dir) = path.parent() {
        let _ = std::fs::create_dir_all(dir);
    }
    // write then rename so concurrent readers never see a partial file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    if std::fs::write(&tmp, Value::Array(rows).to_string()).is_ok() {
        let _ = std::fs::rename(&tmp, &path);
    }
}
