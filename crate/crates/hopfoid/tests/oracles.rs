//! Values computed by the engine against independent computations: Bernoulli
//! numbers from their recurrence, leading terms of the antipode 1-form from
//! traces and the Killing form, and the equivalence witness by direct
//! evaluation in U(g).

use hopfoid::antipode::{build_fmu, solve_r};
use hopfoid::bialgebroid::{Coproducts, IdealKind, Oracle};
use hopfoid::lie::{catalog, LieAlgebraDef};
use hopfoid::multiindex::MultiIndex;
use hopfoid::pbw::PbwElement;
use hopfoid::rational::{binomial, factorial, q, qr, Q};
use hopfoid::realization::{phi_coefficients, RealizationContext};
use hopfoid::series::{bernoulli, MatrixSeries};
use hopfoid::tensor::TensorElement;
use hopfoid::twist::{Form, Twist};
use hopfoid::weyl::{Polynomial, WeylElement};
use num_traits::Zero;

/// B_0 = 1 and sum_{k<=m} C(m+1, k) B_k = 0.
fn bernoulli_by_recurrence(n: usize) -> Vec<Q> {
    let mut b = vec![q(1)];
    for m in 1..=n {
        let mut s = Q::zero();
        for (k, bk) in b.iter().enumerate() {
            s += Q::from_integer(binomial(m as u32 + 1, k as u32)) * bk;
        }
        b.push(-s / Q::from_integer(binomial(m as u32 + 1, m as u32)));
    }
    b
}

#[test]
fn phi_coefficients_follow_the_bernoulli_recurrence() {
    let b = bernoulli_by_recurrence(12);
    assert_eq!(b[1], qr(-1, 2));
    let phi = phi_coefficients(12);
    for (n, bn) in b.iter().enumerate() {
        assert_eq!(bernoulli(n as u32), *bn, "B_{n}");
        let sign = if n % 2 == 0 { q(1) } else { q(-1) };
        assert_eq!(phi[n], sign * bn / Q::from_integer(factorial(n as u32)), "coefficient {n}");
    }
    assert_eq!(&phi[..5], &[q(1), qr(1, 2), qr(1, 12), q(0), qr(-1, 720)]);
}

#[test]
fn heisenberg_phi_terminates() {
    let ctx = RealizationContext::new(&catalog("heisenberg3").unwrap(), 6);
    assert_eq!(ctx.phi, MatrixSeries::identity(3, 6).add(&ctx.c.scale(&qr(1, 2))));
}

fn trace_ad(alg: &LieAlgebraDef, mu: usize) -> Q {
    (0..alg.dim).map(|r| alg.c(r, mu, r)).sum()
}

/// K(s, g) = tr(ad_s ad_g) = C^r_{s a} C^a_{g r}.
fn killing(alg: &LieAlgebraDef, s: usize, g: usize) -> Q {
    let n = alg.dim;
    let mut k = Q::zero();
    for r in 0..n {
        for a in 0..n {
            k += alg.c(r, s, a) * alg.c(a, g, r);
        }
    }
    k
}

#[test]
fn one_form_constant_term_is_half_the_trace() {
    for name in ["abelian(2)", "heisenberg3", "su2", "kappa(2)", "kappa(3)"] {
        let alg = catalog(name).unwrap();
        let ctx = RealizationContext::new(&alg, 3);
        let f = build_fmu(&ctx).unwrap();
        for (mu, fm) in f.iter().enumerate() {
            assert_eq!(fm.constant_term(), trace_ad(&alg, mu) / q(2), "{name} F_{mu}");
        }
    }
}

/// For unimodular g the first-order part of F_g is -(1/12) K(s, g) d^s, so
/// the quadratic part of R is -(1/24) K(d, d).
#[test]
fn unimodular_quadratic_part_from_the_killing_form() {
    for name in ["heisenberg3", "su2"] {
        let alg = catalog(name).unwrap();
        let n = alg.dim;
        let ctx = RealizationContext::new(&alg, 4);
        let r = solve_r(&build_fmu(&ctx).unwrap()).unwrap();
        for s in 0..n {
            for g in 0..n {
                let m = MultiIndex::unit(n, s).add(&MultiIndex::unit(n, g));
                let sym = if s == g { q(1) } else { q(2) };
                if s <= g {
                    assert_eq!(r.coeff(&m), -killing(&alg, s, g) * sym / q(24), "{name} d{s} d{g}");
                }
            }
        }
    }
    let su2 = catalog("su2").unwrap();
    assert_eq!(killing(&su2, 0, 0), q(-2));
}

/// sum c · xi(A ▷ f) · xi(B ▷ g) over the terms A ⊗ B of `t`.
fn evaluate_in_ug(ctx: &RealizationContext, t: &TensorElement, f: &Polynomial, g: &Polynomial) -> PbwElement {
    let n = ctx.dim();
    let pbw = ctx.pbw();
    let mut u = PbwElement::zero(n);
    for (k, c) in t.terms() {
        let a = WeylElement::monomial(n, t.order(), k[0].clone(), q(1)).act(f).unwrap();
        let b = WeylElement::monomial(n, t.order(), k[1].clone(), q(1)).act(g).unwrap();
        u = u.add(&pbw.mul(&pbw.xi(&a), &pbw.xi(&b)).scale(c));
    }
    u
}

#[test]
fn left_right_witness_by_direct_evaluation() {
    for (name, want) in [("su2", qr(-1, 4)), ("kappa(2)", qr(1, 4))] {
        let ctx = RealizationContext::new(&catalog(name).unwrap(), 7);
        let n = ctx.dim();
        let x1 = PbwElement::generator(n, 0);
        let x1x2 = ctx.pbw().word(&[0, 1]);
        let f = ctx.pbw().xi_inv(&x1);
        let g = ctx.pbw().xi_inv(&x1x2);
        let expect = PbwElement::generator(n, 1).scale(&want);
        for order in [4, 6] {
            let l = Twist::build(Form::Left, &ctx, order).unwrap();
            let r = Twist::build(Form::Right, &ctx, order).unwrap();
            let diff = l.rep.sub(&r.rep);
            assert_eq!(evaluate_in_ug(&ctx, &diff, &f, &g), expect, "{name} at order {order}");
            let oracle = Oracle::new(&ctx);
            let m = oracle.member(&diff, IdealKind::Deformed, 3).unwrap();
            assert!(!m.member, "{name}");
            assert!(oracle.member(&diff, IdealKind::Undeformed, 3).unwrap().member, "{name}");
        }
    }
}

#[test]
fn oracle_accepts_ideal_generators() {
    for name in ["heisenberg3", "su2", "kappa(2)"] {
        let ctx = RealizationContext::new(&catalog(name).unwrap(), 5);
        let oracle = Oracle::new(&ctx);
        let one = ctx.one();
        for mu in 0..ctx.dim() {
            let g0 = TensorElement::pure(5, &[&ctx.x(mu), &one]).sub(&TensorElement::pure(5, &[&one, &ctx.x(mu)]));
            let gu = TensorElement::pure(5, &[ctx.yhat(mu), &one]).sub(&TensorElement::pure(5, &[&one, ctx.xhat(mu)]));
            // right ideals: multiply the generators on the right by anything
            let tail = TensorElement::pure(5, &[&ctx.d(0), ctx.xhat(mu)]);
            assert!(oracle.member(&g0.mul(&tail), IdealKind::Undeformed, 3).unwrap().member, "{name}");
            assert!(oracle.member(&gu.mul(&tail), IdealKind::Deformed, 3).unwrap().member, "{name}");
            assert!(!oracle.member(&TensorElement::one(ctx.dim(), 2, 5), IdealKind::Deformed, 3).unwrap().member);
        }
    }
}

#[test]
fn heisenberg_coproduct_closed_form() {
    let ctx = RealizationContext::new(&catalog("heisenberg3").unwrap(), 6);
    let cop = Coproducts::new(&ctx, 4);
    let d3 = cop.delta_monomial(&MultiIndex::unit(3, 2));
    let one = ctx.one();
    let want = TensorElement::pure(4, &[&ctx.d(2), &one])
        .add(&TensorElement::pure(4, &[&one, &ctx.d(2)]))
        .add(&TensorElement::pure(4, &[&ctx.d(0), &ctx.d(1)]).scale(&qr(1, 2)))
        .sub(&TensorElement::pure(4, &[&ctx.d(1), &ctx.d(0)]).scale(&qr(1, 2)));
    assert_eq!(d3, want);
}

#[test]
fn coassociativity_of_the_deformed_coproduct() {
    for name in ["heisenberg3", "kappa(2)"] {
        let ctx = RealizationContext::new(&catalog(name).unwrap(), 6);
        let cop = Coproducts::new(&ctx, 3);
        let oracle = Oracle::new(&ctx);
        let c = hopfoid::bialgebroid::check_coassociativity(&cop, &oracle, 2).unwrap();
        assert!(c.passed(), "{name}: {c}");
    }
}
