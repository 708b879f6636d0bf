use svjack::kernel::{int, rat, Field, Jet, RatFun, Rational, Ring, Var};
use svjack::symfunc::{Basis, Partition, SymFunc};
use svjack::vertexops::*;

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec())
}

fn p<F: Ring>(v: &[usize]) -> SymFunc<F> {
    SymFunc::basis_elem(Basis::P, part(v))
}

#[test]
fn c0_on_small_elements() {
    let op = c0_mode::<Rational>(0, 3);
    assert_eq!(op.apply(&SymFunc::one(Basis::P)).unwrap(), SymFunc::one(Basis::P));
    assert_eq!(op.apply(&p(&[1])).unwrap(), p::<Rational>(&[1]).scale(&int(-3)));
}

#[test]
fn c1_examples() {
    let g = RatFun::var(Var::Gamma);
    let op = c1_mode(&g, 0, 3);
    let p1 = p::<RatFun>(&[1]);
    let two = RatFun::from_i64(2);
    assert_eq!(op.apply(&p1).unwrap(), p1.scale(&(two.clone() * g.clone() - two)));
    let e2 = SymFunc::<RatFun>::basis_elem(Basis::E, part(&[2]));
    let got = op.apply(&e2).unwrap();
    assert_eq!(got.convert(Basis::E), e2.scale(&(RatFun::from_i64(-4) * g)));
    assert!(op.apply(&SymFunc::one(Basis::P)).unwrap().is_zero());
}

#[test]
fn eps_closed_forms() {
    assert_eq!(eps0(&Partition::empty()), int(1));
    assert_eq!(eps1(&Partition::empty(), &int(5)), int(0));
    assert_eq!(eps0(&part(&[2])), int(1));
    let g = RatFun::var(Var::Gamma);
    assert_eq!(eps1(&part(&[2]), &g), RatFun::from_i64(4));
    assert_eq!(eps1(&part(&[1, 1, 1]), &g), RatFun::from_i64(6) * g - RatFun::from_i64(2));
    let (q, t) = (rat(2, 3), rat(3, 5));
    assert_eq!(eps(&part(&[1]), &q, &t).unwrap(), int(1) + (&t - int(1)) * (&q - int(1)) / &t);
}

#[test]
fn eta_eigen_on_degree_one() {
    let (q, t) = (rat(2, 3), rat(3, 5));
    let op = eta_mode(&q, &t, 0, 2).unwrap();
    assert_eq!(op.apply(&SymFunc::one(Basis::P)).unwrap(), SymFunc::one(Basis::P));
    let e = eps(&part(&[1]), &q, &t).unwrap();
    assert_eq!(op.apply(&p(&[1])).unwrap(), p::<Rational>(&[1]).scale(&e));
}

#[test]
fn eta_at_zero_parameters_by_expansion() {
    // (q, t) -> 0 limit of the series coefficients: exp(sum p_n z^n / n) exp(-sum d_n z^-n)
    let op = VertexOperator::new(vec![VertexTerm::exponential(
        int(1),
        Some(series(|k| rat(1, k as i64))),
        Some(series(|_| int(-1))),
    )]);
    // e^B p1 = p1 - z^-1; the z^0 part after e^A is p1 - p1 = 0
    let m0 = op.mode(0, 2);
    assert!(m0.apply(&p(&[1])).unwrap().is_zero());
}

#[test]
fn eta_hbar_identity() {
    let r = eta_hbar_check(&int(1), 3, 2).unwrap();
    assert_eq!(r.max_degree_verified, 3);
    eta_hbar_check(&rat(1, 2), 0, 1).unwrap();
}

#[test]
fn eps_jet_expansion() {
    let g = rat(2, 3);
    let (q, t) = uglov_point(&g, 2);
    for n in 0..=4 {
        for l in svjack::symfunc::partitions(n) {
            let e = eps::<Jet<Rational>>(&l, &q, &t).unwrap();
            assert_eq!(e.coeff(0), eps0(&l), "{l}");
            assert_eq!(e.coeff(1), eps1(&l, &g), "{l}");
        }
    }
}

#[test]
fn commuting_c0_c1() {
    let g = RatFun::var(Var::Gamma);
    let a = c0_mode::<RatFun>(0, 4);
    let b = c1_mode(&g, 0, 4);
    assert_eq!(a.compose(&b).unwrap().first_mismatch(&b.compose(&a).unwrap()), None);
}

#[test]
fn deformed_virasoro_identity_at_rational_point() {
    let params = DvirParams::from_roots(rat(2, 3), rat(5, 4), rat(7, 2));
    dvir_identity_check(&params, 3).unwrap();
    dvir_identity_check(&params, 0).unwrap();
}

#[test]
fn deformed_virasoro_hbar_parts() {
    dvir_hbar_check(&rat(1, 2), &rat(1, 3), 3).unwrap();
}

#[test]
fn truncation_stability() {
    let g = rat(3, 7);
    let small = c1_mode(&g, 1, 3);
    let big = c1_mode(&g, 1, 5).truncate(3);
    assert_eq!(small, big);
}

#[test]
fn positive_current_modes_kill_singular_images() {
    for (r, s) in [(1, 1), (3, 1), (1, 3), (2, 2)] {
        let rep = t1_annihilation_check(r, s, (r * s) as usize + 1).unwrap();
        assert_eq!(rep.modes.len(), (r * s) as usize + 1);
    }
    assert!(t1_annihilation_check(2, 2, 3).is_err());
}

#[test]
fn annihilation_is_not_vacuous() {
    let t = RatFun::var(Var::T);
    let img = svjack::fock::singular_image(3, 1, &t).unwrap();
    let alpha = -img.weights.alpha_plus.try_div(&t).unwrap();
    t1_annihilates(&img.image, &alpha, 4).unwrap();
    let off = alpha.clone() + RatFun::one();
    assert!(matches!(t1_annihilates(&img.image, &off, 4), Err(svjack::Error::NonzeroResult(_))));
    let p3: SymFunc<svjack::fock::S> = p(&[3]);
    assert!(matches!(t1_annihilates(&p3, &alpha, 4), Err(svjack::Error::NonzeroResult(_))));
}
