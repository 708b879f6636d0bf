use svjack::fock::*;
use svjack::kernel::{rat, Field, RatFun, Ring, Var};
use svjack::svir::{singular_vector, super_partitions, Gen, VermaVector};
use svjack::symfunc::{Basis, Partition, SymFunc};

fn t() -> RatFun {
    RatFun::var(Var::T)
}

fn p(v: &[usize]) -> FockVector {
    SymFunc::basis_elem(Basis::P, Partition::new(v.to_vec()))
}

fn one() -> FockVector {
    SymFunc::one(Basis::P)
}

fn sq(x: RatFun) -> S {
    S::base(x)
}

fn test_vectors(max: usize) -> Vec<FockVector> {
    let mut out = vec![one()];
    for n in 1..=max {
        for (i, l) in svjack::symfunc::partitions(n).into_iter().enumerate() {
            let c = sq(RatFun::from_i64(i as i64 + 1));
            out.push(SymFunc::term(Basis::P, l, c));
        }
    }
    out
}

#[test]
fn bosons() {
    let fm = FockModule::new(&t(), &RatFun::from_i64(3)).unwrap();
    assert!(fm.boson_act(1, &one()).unwrap().is_zero());
    let want = p(&[2]).scale(&sq((t() * RatFun::from_i64(-2)).try_inv().unwrap()));
    assert_eq!(fm.boson_act(-1, &one()).unwrap(), want);
    for v in test_vectors(6) {
        let ab = fm.boson_act(1, &fm.boson_act(-1, &v).unwrap()).unwrap();
        let ba = fm.boson_act(-1, &fm.boson_act(1, &v).unwrap()).unwrap();
        assert_eq!(ab.sub(&ba), v);
    }
}

#[test]
fn fermions() {
    assert!(fermion_act(1, &one(), 4).unwrap().is_zero());
    // -i p_1 / sqrt 2
    let c = S::new(RatFun::zero(), RatFun::constant(Var::T, rat(-1, 2)));
    assert_eq!(fermion_act(-1, &one(), 4).unwrap(), p(&[1]).scale(&c));
    assert!(fermion_act(-3, &p(&[2]), 3).is_err());
    let ks = [-5, -3, -1, 1, 3, 5];
    for v in test_vectors(3) {
        let d = 13;
        for &k in &ks {
            for &l in &ks {
                let kl = fermion_act(k, &fermion_act(l, &v, d).unwrap(), d).unwrap();
                let lk = fermion_act(l, &fermion_act(k, &v, d).unwrap(), d).unwrap();
                let want = if k + l == 0 { v.clone() } else { SymFunc::zero(Basis::P) };
                assert_eq!(kl.add(&lk), want, "b_{k}/2 b_{l}/2");
            }
        }
    }
}

#[test]
fn free_field_low_modes() {
    let a = RatFun::from_i64(5) * t();
    let fm = FockModule::new(&t(), &a).unwrap();
    let l0 = fm.ff_act(Gen::L(0), &one()).unwrap();
    assert_eq!(l0, one().scale(&sq(fm.h())));
    let b = fm.fermion_act(-1, &one()).unwrap();
    assert_eq!(fm.ff_act(Gen::G(-1), &one()).unwrap(), b.scale(&sq(a.clone())));
    let lg = fm.ff_act(Gen::L(-1), &fm.ff_act(Gen::G(-1), &one()).unwrap()).unwrap();
    let ab = fm.boson_act(-1, &b).unwrap();
    let b3 = fm.fermion_act(-3, &one()).unwrap();
    let want = ab.scale(&sq(a.clone() * a.clone())).add(&b3.scale(&sq(a.clone())));
    assert_eq!(lg, want);
}

#[test]
fn intertwining() {
    let a = RatFun::constant(Var::T, rat(2, 7)) * t();
    let fm = FockModule::new(&t(), &a).unwrap();
    let verma = fm.verma().unwrap();
    for n2 in 0..=4 {
        for l in super_partitions(n2) {
            let v = VermaVector::monomial(l, RatFun::one());
            let img = fm.verma_to_lambda(&v).unwrap();
            assert!(img.terms().keys().all(|m| m.size() == n2));
            for g in [Gen::L(1), Gen::L(2), Gen::G(1), Gen::G(3), Gen::L(-1), Gen::G(-1)] {
                let lhs = fm.verma_to_lambda(&verma.act(g, &v)).unwrap();
                let rhs = fm.ff_act(g, &img).unwrap();
                assert_eq!(lhs, rhs, "{g} on {v}");
            }
        }
    }
}

#[test]
fn exclusion() {
    for v in test_vectors(3) {
        for k in [-1, -3] {
            let w = fermion_act(k, &fermion_act(k, &v, 10).unwrap(), 10).unwrap();
            assert!(w.is_zero());
        }
    }
}

#[test]
fn reference_images_up_to_scale() {
    let q = |n: i64, d: i64| RatFun::constant(Var::T, rat(n, d));
    let t2 = t() * t();
    let cases = [
        (3, 1, vec![(vec![3], q(-2, 3) * t2.clone()), (vec![2, 1], q(-1, 1)), (vec![1, 1, 1], q(-1, 3) * t2.clone())]),
        (1, 3, vec![(vec![3], q(1, 3)), (vec![2, 1], q(-1, 2)), (vec![1, 1, 1], q(1, 6))]),
        (1, 1, vec![(vec![1], q(1, 1))]),
    ];
    for (r, s, terms) in cases {
        let want = SymFunc::from_terms(Basis::P, terms.into_iter().map(|(v, c)| (Partition::new(v), sq(c))))
            .convert(Basis::M);
        let rect = Partition::rectangle(r, s);
        let want = want.scale(&want.coeff(&rect).try_inv().unwrap());
        let got = singular_image(r as i64, s as i64, &t()).unwrap();
        assert_eq!(got.image, want, "({r},{s})");
    }
}

#[test]
fn root_parity() {
    for (r, s) in [(1, 1), (2, 2), (3, 1)] {
        let (w, chi) = singular_vector(r, s, &t()).unwrap();
        let fm = FockModule::from_weights(&w).unwrap();
        let img = fm.verma_to_lambda(&chi).unwrap();
        let even = (r * s) % 2 == 0;
        assert_eq!(base_part(&img).is_some(), even, "({r},{s})");
    }
}

#[test]
fn screening() {
    let series = screening_series(7);
    for (m, c) in series.iter().enumerate() {
        let e = SymFunc::<svjack::kernel::Rational>::basis_elem(Basis::E, Partition::new(vec![m])).convert(Basis::P);
        let want = if m % 2 == 1 { e.scale(&rat(-2, 1)) } else { SymFunc::zero(Basis::P) };
        assert_eq!(*c, want, "u^{m}");
    }
    for s in [1, 3, 5, 7] {
        let got = screening_r1(s, &t()).unwrap();
        let e = SymFunc::<RatFun>::basis_elem(Basis::E, Partition::new(vec![s])).convert(Basis::P);
        assert_eq!(got, e.scale(&-t()));
    }
}

#[test]
fn conjecture_symbolic() {
    for (r, s) in [(1, 1), (1, 3), (3, 1), (2, 2), (1, 5), (5, 1)] {
        let rep = verify_conjecture(r, s, &t()).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}

#[test]
fn conjecture_level_four() {
    for tv in [rat(2, 1), rat(3, 5), rat(-7, 4)] {
        let tv = RatFun::constant(Var::T, tv);
        for (r, s) in [(2, 4), (4, 2)] {
            let rep = verify_conjecture(r, s, &tv).unwrap();
            assert!(rep.passed(), "({r},{s}) at {tv}");
        }
    }
}
