use std::collections::BTreeMap;

use proptest::prelude::*;
use svjack::finite_n::*;
use svjack::kernel::{int, rat, Rational, Ring};
use svjack::symfunc::{partitions, Basis, Partition, SymFunc};

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec())
}

fn orbit(n: usize, v: &[usize]) -> NPoly {
    NPoly::orbit(n, part(v))
}

/// `prod_k (sum_i x_i^{lambda_k})`, expanded monomial by monomial.
fn power_sum_product(lambda: &Partition, n: usize) -> BTreeMap<Vec<u32>, Rational> {
    let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    acc.insert(vec![0; n], int(1));
    for &r in lambda.parts() {
        let mut next = BTreeMap::new();
        for (e, c) in &acc {
            for i in 0..n {
                let mut e = e.clone();
                e[i] += r as u32;
                let x = next.entry(e).or_insert_with(Rational::zero);
                *x = x.clone() + c.clone();
            }
        }
        acc = next;
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

#[test]
fn projection_examples() {
    let p1 = SymFunc::<Rational>::basis_elem(Basis::P, part(&[1]));
    assert_eq!(pr_n(&p1, 3), orbit(3, &[1]));
    let m21 = SymFunc::<Rational>::basis_elem(Basis::M, part(&[2, 1]));
    let got = pr_n(&m21, 2).expand();
    let want: BTreeMap<Vec<u32>, Rational> = [(vec![2, 1], int(1)), (vec![1, 2], int(1))].into_iter().collect();
    assert_eq!(got, want);
    let e3 = SymFunc::<Rational>::basis_elem(Basis::E, part(&[3]));
    assert!(pr_n(&e3, 2).is_zero());
}

#[test]
fn projection_matches_power_sum_substitution() {
    for n in 1..=4 {
        for d in 0..=5 {
            for l in partitions(d) {
                let p = SymFunc::<Rational>::basis_elem(Basis::P, l.clone());
                assert_eq!(pr_n(&p, n).expand(), power_sum_product(&l, n), "p{l}, N = {n}");
            }
        }
    }
}

#[test]
fn c0_examples() {
    assert_eq!(c0n_apply(&orbit(1, &[])).unwrap(), orbit(1, &[]).scale(&int(2)));
    assert!(c0n_apply(&orbit(2, &[])).unwrap().is_zero());
    assert_eq!(c0n_apply(&orbit(2, &[1])).unwrap(), orbit(2, &[1]).scale(&int(-4)));
    assert_eq!(c0n_apply(&orbit(1, &[1])).unwrap(), orbit(1, &[1]).scale(&int(-2)));
}

#[test]
fn c1_single_variable() {
    // N = 1: (1/2) D T_{-1} x^k = (1/2) k (-1)^k x^k
    for k in 0..5usize {
        let f = orbit(1, &if k == 0 { vec![] } else { vec![k] });
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let want = f.scale(&rat(sign * k as i64, 2));
        assert_eq!(c1n_apply(&f, &rat(3, 7)).unwrap(), want);
    }
}

#[test]
fn operators_preserve_degree_and_symmetry() {
    for n in 1..=4 {
        for d in 0..=4 {
            for l in partitions(d).into_iter().filter(|l| l.len() <= n) {
                let f = NPoly::orbit(n, l.clone());
                for g in [c0n_apply(&f).unwrap(), c1n_apply(&f, &rat(2, 5)).unwrap()] {
                    assert!(g.terms().keys().all(|m| m.size() == d && m.len() <= n));
                }
            }
        }
    }
}

#[test]
fn limit_diagnostic_constants_and_degree_one() {
    let rep = limit_diagnostic(1, &[1, 2], Which::C0, &int(0)).unwrap();
    let cell = |n: usize, d: usize| rep.cells.iter().find(|c| c.n == n && c.degree == d).unwrap();
    // C0_0 1 = 1, while C0_(1) 1 = 2 and C0_(2) 1 = 0
    assert!(!cell(1, 0).literal);
    assert_eq!(*cell(1, 0).difference.get(0, 0), int(1));
    assert_eq!(*cell(2, 0).difference.get(0, 0), int(-1));
    assert_eq!(cell(1, 0).average, Some(true));
    // C0_0 p1 = -3 p1 against -2 and -4
    assert_eq!(*cell(1, 1).difference.get(0, 0), int(1));
    assert_eq!(*cell(2, 1).difference.get(0, 0), int(-1));
    assert_eq!(cell(1, 1).average, Some(true));
    assert_eq!(cell(2, 1).average, None);
}

#[test]
fn limit_diagnostic_table() {
    for which in [Which::C0, Which::C1] {
        let rep = limit_diagnostic(3, &[3, 4, 5, 6], which, &rat(1, 3)).unwrap();
        assert_eq!(rep.cells.len(), 16);
        assert!(rep.cells.iter().filter(|c| c.n < 6).all(|c| c.average.is_some()));
        let js = rep.to_json();
        assert_eq!(js["cells"].as_array().unwrap().len(), 16);
    }
    assert!(limit_diagnostic(7, &[2], Which::C0, &int(0)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn c0_is_linear(n in 1usize..4, a in -5i64..5, b in -5i64..5, i in 0usize..5, j in 0usize..5) {
        let ls: Vec<Partition> = partitions(3).into_iter().filter(|l| l.len() <= n).collect();
        let (x, y) = (NPoly::orbit(n, ls[i % ls.len()].clone()), NPoly::orbit(n, ls[j % ls.len()].clone()));
        let f = x.scale(&int(a)).add(&y.scale(&int(b)));
        let lhs = c0n_apply(&f).unwrap();
        let rhs = c0n_apply(&x).unwrap().scale(&int(a)).add(&c0n_apply(&y).unwrap().scale(&int(b)));
        prop_assert_eq!(lhs, rhs);
    }
}
