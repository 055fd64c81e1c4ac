//! Structural identities on random inputs.

use hopfoid::antipode::solve_r;
use hopfoid::lie::catalog;
use hopfoid::multiindex::MultiIndex;
use hopfoid::pbw::PbwElement;
use hopfoid::rational::q;
use hopfoid::realization::RealizationContext;
use hopfoid::series::MomentumSeries;
use hopfoid::weyl::{Mono, Polynomial, WeylElement};
use proptest::prelude::*;
use std::sync::OnceLock;

const N: usize = 3;
const ORDER: u32 = 5;

fn monos(d: u32) -> Vec<MultiIndex> {
    MultiIndex::up_to_degree(N, d)
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..len, -3i64..=3), 0..5)
}

fn series() -> impl Strategy<Value = MomentumSeries> {
    let ms = monos(3);
    coeffs(ms.len()).prop_map(move |cs| {
        let mut s = MomentumSeries::zero(N, ORDER);
        for (i, c) in cs {
            s.add_term(ms[i].clone(), q(c));
        }
        s
    })
}

fn poly(d: u32) -> impl Strategy<Value = Polynomial> {
    let ms = monos(d);
    coeffs(ms.len()).prop_map(move |cs| {
        let mut p = Polynomial::zero(N);
        for (i, c) in cs {
            p.add_term(ms[i].clone(), q(c));
        }
        p
    })
}

/// Exact Weyl polynomials with x- and d-degree at most two.
fn weyl() -> impl Strategy<Value = WeylElement> {
    let ms = monos(2);
    let k = ms.len();
    prop::collection::vec((0..k, 0..k, -3i64..=3), 0..4).prop_map(move |ts| {
        WeylElement::from_terms(N, 12, ts.into_iter().map(|(a, b, c)| (Mono::new(ms[a].clone(), ms[b].clone()), q(c))))
    })
}

fn ctx(name: &str) -> &'static RealizationContext {
    static SU2: OnceLock<RealizationContext> = OnceLock::new();
    static HEIS: OnceLock<RealizationContext> = OnceLock::new();
    let cell = if name == "su2" { &SU2 } else { &HEIS };
    cell.get_or_init(|| RealizationContext::new(&catalog(name).unwrap(), 6))
}

fn algebra() -> impl Strategy<Value = &'static str> {
    prop_oneof![Just("su2"), Just("heisenberg3")]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn exp_log_round_trip(a in series()) {
        let a = a.sub(&MomentumSeries::constant(N, ORDER, a.constant_term()));
        prop_assert_eq!(a.exp().unwrap().log().unwrap(), a.clone());
        let e = a.exp().unwrap();
        prop_assert_eq!(e.mul(&e.inv().unwrap()), MomentumSeries::one(N, ORDER));
    }

    #[test]
    fn mixed_partials_commute(a in series(), i in 0..N, j in 0..N) {
        prop_assert_eq!(a.partial(i).unwrap().partial(j).unwrap(), a.partial(j).unwrap().partial(i).unwrap());
    }

    #[test]
    fn weyl_product_is_associative(a in weyl(), b in weyl(), c in weyl()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn fock_action_is_a_module(a in weyl(), b in weyl(), f in poly(3)) {
        let lhs = a.mul(&b).act(&f).unwrap();
        let rhs = a.act(&b.act(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn s0_reverses_products(a in weyl(), b in weyl()) {
        prop_assert_eq!(a.mul(&b).s0(), b.s0().mul(&a.s0()));
        prop_assert_eq!(a.s0().s0(), a);
    }

    #[test]
    fn star_is_associative(name in algebra(), f in poly(2), g in poly(2), h in poly(1)) {
        let pbw = ctx(name).pbw();
        prop_assert_eq!(pbw.star(&pbw.star(&f, &g), &h), pbw.star(&f, &pbw.star(&g, &h)));
    }

    /// Symmetrizing a power of a linear form gives the same power in U(g).
    #[test]
    fn xi_of_powers_of_linear_forms(name in algebra(), a in prop::collection::vec(-2i64..=2, N), k in 0u32..4) {
        let pbw = ctx(name).pbw();
        let mut lin = Polynomial::zero(N);
        let mut u = PbwElement::zero(N);
        for (i, c) in a.iter().enumerate() {
            lin.add_term(MultiIndex::unit(N, i), q(*c));
            u.add_term(MultiIndex::unit(N, i), q(*c));
        }
        let mut p = Polynomial::one(N);
        let mut up = PbwElement::one(N);
        for _ in 0..k {
            p = p.mul(&lin);
            up = pbw.mul(&up, &u);
        }
        prop_assert_eq!(pbw.xi(&p), up);
        prop_assert_eq!(pbw.xi_inv(&pbw.xi(&p)), p);
    }

    #[test]
    fn smash_decomposition_round_trips(name in algebra(), a in weyl()) {
        let c = ctx(name);
        let w = a.reorder(c.order());
        let (parts, cert) = c.decompose_smash(&w).unwrap();
        let back = c.recompose(&parts);
        prop_assert!(back.first_difference(&w, cert.max(0) as u32).is_none());
    }

    /// The Euler homotopy inverts the gradient on series without constant term.
    #[test]
    fn euler_homotopy_inverts_the_gradient(p in series()) {
        let p = p.sub(&MomentumSeries::constant(N, ORDER, p.constant_term()));
        let grad: Vec<MomentumSeries> = (0..N).map(|i| p.partial(i).unwrap()).collect();
        prop_assert_eq!(solve_r(&grad).unwrap(), p);
    }

    /// realize(xi(f)) ▷ g = f ⋆ g.
    #[test]
    fn realized_action_is_the_star_product(name in algebra(), f in poly(2), g in poly(2)) {
        let c = ctx(name);
        let lhs = c.realize_poly(&f).act(&g).unwrap();
        prop_assert_eq!(lhs, c.pbw().star(&f, &g));
    }
}
