//! The matrices built from the power ladder of C^a_b = C^a_{bc} d^c, and the
//! realization of U(g) inside the Weyl algebra that they define.
//!
//! phi   = C/(1 - e^-C)    x̂_r = x_t phi^t_r
//! phit  = C/(e^C - 1)     ŷ_r = x_t phit^t_r
//! O     = e^C
//!
//! As matrices phit = phi O^-1, since z/(e^z - 1) = e^-z · z/(1 - e^-z).

use crate::check::Check;
use crate::lie::LieAlgebraDef;
use crate::multiindex::MultiIndex;
use crate::pbw::{Pbw, PbwElement};
use crate::rational::{factorial, fmt_q, Q};
use crate::series::{bernoulli_table, MatrixSeries, MomentumSeries};
use crate::weyl::{Mono, Polynomial, WeylElement, WeylError};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub struct RealizationContext {
    alg: LieAlgebraDef,
    order: u32,
    pbw: Arc<Pbw>,
    pub c: MatrixSeries,
    ladder: Vec<MatrixSeries>,
    pub phi: MatrixSeries,
    pub phit: MatrixSeries,
    pub o: MatrixSeries,
    pub o_inv: MatrixSeries,
    pub phi_inv: MatrixSeries,
    pub phit_inv: MatrixSeries,
    xhat: Vec<WeylElement>,
    yhat: Vec<WeylElement>,
    realized: Mutex<HashMap<MultiIndex, Arc<WeylElement>>>,
}

/// Coefficients w_0..w_k of a power series in C, given as a closure.
fn ladder_sum(ladder: &[MatrixSeries], w: impl Fn(u32) -> Q) -> MatrixSeries {
    let mut acc = MatrixSeries::zero(ladder[0].n(), ladder[0].order());
    for (k, p) in ladder.iter().enumerate() {
        let c = w(k as u32);
        if !c.is_zero() && !p.is_zero() {
            acc = acc.add(&p.scale(&c));
        }
    }
    acc
}

impl RealizationContext {
    pub fn new(alg: &LieAlgebraDef, order: u32) -> Self {
        let n = alg.dim;
        let c = MatrixSeries::from_fn(n, |a, b| {
            let mut s = MomentumSeries::zero(n, order);
            for g in 0..n {
                s.add_term(MultiIndex::unit(n, g), alg.c(a, b, g));
            }
            s
        });
        let mut ladder = vec![MatrixSeries::identity(n, order)];
        for k in 1..=order {
            let next = ladder[k as usize - 1].mul(&c);
            ladder.push(next);
        }
        let b = bernoulli_table(order);
        let inv_fact = |k: u32| Q::new(1.into(), factorial(k));
        let sign = |k: u32| if k.is_multiple_of(2) { Q::one() } else { -Q::one() };
        let phi = ladder_sum(&ladder, |k| sign(k) * &b[k as usize] * inv_fact(k));
        let phit = ladder_sum(&ladder, |k| &b[k as usize] * inv_fact(k));
        let o = ladder_sum(&ladder, inv_fact);
        let o_inv = ladder_sum(&ladder, |k| sign(k) * inv_fact(k));
        // (1 - e^-z)/z and (e^z - 1)/z
        let phi_inv = ladder_sum(&ladder, |k| sign(k) * inv_fact(k + 1));
        let phit_inv = ladder_sum(&ladder, |k| inv_fact(k + 1));
        let contract = |m: &MatrixSeries, r: usize| {
            let mut w = WeylElement::zero(n, order);
            for t in 0..n {
                let x = WeylElement::x(n, order, t);
                w = w.add(&x.mul(&WeylElement::from_momentum(m.get(t, r))));
            }
            w
        };
        let xhat = (0..n).map(|r| contract(&phi, r)).collect();
        let yhat = (0..n).map(|r| contract(&phit, r)).collect();
        RealizationContext {
            alg: alg.clone(),
            order,
            pbw: Arc::new(Pbw::new(alg)),
            c,
            ladder,
            phi,
            phit,
            o,
            o_inv,
            phi_inv,
            phit_inv,
            xhat,
            yhat,
            realized: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &LieAlgebraDef {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn pbw(&self) -> &Pbw {
        &self.pbw
    }

    /// C^k for k = 0..=order.
    pub fn ladder(&self) -> &[MatrixSeries] {
        &self.ladder
    }

    /// x̂_r (0-based).
    pub fn xhat(&self, r: usize) -> &WeylElement {
        &self.xhat[r]
    }

    /// ŷ_r (0-based).
    pub fn yhat(&self, r: usize) -> &WeylElement {
        &self.yhat[r]
    }

    pub fn x(&self, i: usize) -> WeylElement {
        WeylElement::x(self.dim(), self.order, i)
    }

    pub fn d(&self, i: usize) -> WeylElement {
        WeylElement::d(self.dim(), self.order, i)
    }

    pub fn one(&self) -> WeylElement {
        WeylElement::one(self.dim(), self.order)
    }

    pub fn momentum(&self, m: &MomentumSeries) -> WeylElement {
        WeylElement::from_momentum(m)
    }

    fn realize_monomial(&self, m: &MultiIndex) -> Arc<WeylElement> {
        if let Some(w) = self.realized.lock().unwrap().get(m) {
            return w.clone();
        }
        let w = match m.word().first() {
            None => self.one(),
            Some(&g) => self.xhat[g].mul(&self.realize_monomial(&m.with(g, -1).unwrap())),
        };
        let w = Arc::new(w);
        self.realized.lock().unwrap().insert(m.clone(), w.clone());
        w
    }

    /// The algebra map U(g) -> Weyl algebra sending X_m to x̂_m.
    pub fn realize(&self, u: &PbwElement) -> WeylElement {
        let mut r = WeylElement::zero(self.dim(), self.order);
        for (m, c) in u.terms() {
            r = r.add(&self.realize_monomial(m).scale(c));
        }
        r
    }

    /// `realize`, refusing results certified below `needed`.
    pub fn realize_checked(&self, u: &PbwElement, needed: u32) -> Result<WeylElement, WeylError> {
        let w = self.realize(u);
        if w.cert() < needed as i32 {
            return Err(WeylError::InsufficientOrder { cert: w.cert(), needed });
        }
        Ok(w)
    }

    /// realize(xi(f)), the element acting on polynomials as f ⋆ (-).
    pub fn realize_poly(&self, f: &Polynomial) -> WeylElement {
        self.realize(&self.pbw.xi(f))
    }

    /// Coordinates (f_b, b) with W = sum_b realize(xi(f_b)) d^b, eliminating
    /// by ascending d-degree up to the certificate of W. Also returns the
    /// degree through which the decomposition is certified.
    pub fn decompose_smash(&self, w: &WeylElement) -> Result<(Vec<(Polynomial, MultiIndex)>, i32), WeylError> {
        let n = self.dim();
        let limit = w.cert().min(self.order as i32);
        if limit < w.max_d_degree() as i32 && w.max_d_degree() as i32 <= self.order as i32 && w.is_complete() {
            return Err(WeylError::InsufficientOrder { cert: limit, needed: w.max_d_degree() });
        }
        let mut rest = w.clone();
        let mut out = Vec::new();
        let mut cert = limit;
        for k in 0..=limit.max(-1) {
            let mut groups: std::collections::BTreeMap<MultiIndex, Polynomial> = Default::default();
            for (m, c) in rest.terms() {
                if m.d_deg() == k as u32 {
                    groups.entry(m.d.clone()).or_insert_with(|| Polynomial::zero(n)).add_term(m.x.clone(), c.clone());
                }
            }
            for (b, f) in groups {
                let db = WeylElement::monomial(n, self.order, Mono::new(MultiIndex::zero(n), b.clone()), Q::one());
                let piece = self.realize_poly(&f).mul(&db);
                cert = cert.min(piece.cert());
                rest = rest.sub(&piece);
                out.push((f, b));
            }
        }
        if let Some((m, _)) = rest.terms().iter().find(|(m, _)| m.d_deg() as i32 <= cert) {
            return Err(WeylError::Convergence(format!("residue {} left after elimination", m.render())));
        }
        Ok((out, cert))
    }

    /// sum_b realize(xi(f_b)) d^b.
    pub fn recompose(&self, parts: &[(Polynomial, MultiIndex)]) -> WeylElement {
        let n = self.dim();
        let mut w = WeylElement::zero(n, self.order);
        for (f, b) in parts {
            let db = WeylElement::monomial(n, self.order, Mono::new(MultiIndex::zero(n), b.clone()), Q::one());
            w = w.add(&self.realize_poly(f).mul(&db));
        }
        w
    }

    /// [x̂_a, x̂_b] = C^l_{ab} x̂_l for all pairs.
    pub fn check_bracket(&self) -> Check {
        let n = self.dim();
        let mut cert = self.order as i32;
        for a in 0..n {
            for b in 0..n {
                let lhs = self.xhat[a].commutator(&self.xhat[b]);
                let mut rhs = WeylElement::zero(n, self.order);
                for l in 0..n {
                    rhs = rhs.add(&self.xhat[l].scale(&self.alg.c(l, a, b)));
                }
                let c = lhs.cert().min(rhs.cert());
                cert = cert.min(c);
                if let Some((m, x, y)) = lhs.first_difference(&rhs, c.max(0) as u32) {
                    return Check::new(
                        "realization bracket",
                        false,
                        Some(c),
                        format!("[x̂{}, x̂{}] differs at {}: {} vs {}", a + 1, b + 1, m.render(), fmt_q(&x), fmt_q(&y)),
                    );
                }
            }
        }
        Check::new("realization bracket", true, Some(cert), "")
    }

    /// ŷ_a = x̂_b (O^-1)^b_a as Weyl elements, and phit = phi O^-1 entrywise.
    pub fn check_y_from_x(&self) -> Vec<Check> {
        let n = self.dim();
        let prod = self.phi.mul(&self.o_inv);
        let m = prod.cert().min(self.phit.cert());
        let mat = match prod.first_difference(&self.phit, m) {
            None => Check::new("phit = phi O^-1", true, Some(m as i32), ""),
            Some((r, c, mi, a, b)) => Check::new(
                "phit = phi O^-1",
                false,
                Some(m as i32),
                format!("entry ({},{}) at {}: {} vs {}", r + 1, c + 1, mi.render("d"), fmt_q(&a), fmt_q(&b)),
            ),
        };
        let mut cert = self.order as i32;
        let mut bad = None;
        for a in 0..n {
            let mut rhs = WeylElement::zero(n, self.order);
            for b in 0..n {
                rhs = rhs.add(&self.xhat[b].mul(&self.momentum(self.o_inv.get(b, a))));
            }
            let c = rhs.cert().min(self.yhat[a].cert());
            cert = cert.min(c);
            if bad.is_none() {
                if let Some((mo, x, y)) = self.yhat[a].first_difference(&rhs, c.max(0) as u32) {
                    bad = Some(format!("ŷ{} at {}: {} vs {}", a + 1, mo.render(), fmt_q(&x), fmt_q(&y)));
                }
            }
        }
        let y = Check::new("ŷ = x̂ O^-1", bad.is_none(), Some(cert), bad.unwrap_or_default());
        vec![mat, y]
    }

    /// All n^2 commutators [x̂_a, ŷ_b] vanish up to their certificate.
    pub fn check_xy_commute(&self) -> Check {
        let n = self.dim();
        let mut cert = self.order as i32;
        for a in 0..n {
            for b in 0..n {
                let comm = self.xhat[a].commutator(&self.yhat[b]);
                let c = comm.cert();
                cert = cert.min(c);
                if let Some((m, v)) = comm.terms().iter().find(|(m, _)| m.d_deg() as i32 <= c) {
                    return Check::new(
                        "[x̂, ŷ] = 0",
                        false,
                        Some(c),
                        format!("[x̂{}, ŷ{}] has {} * {}", a + 1, b + 1, fmt_q(v), m.render()),
                    );
                }
            }
        }
        Check::new("[x̂, ŷ] = 0", true, Some(cert), format!("{} commutators", n * n))
    }

    /// (x̂_n - x_n) d^n = 0 after contraction over n.
    pub fn check_contraction(&self) -> Check {
        let n = self.dim();
        let mut s = WeylElement::zero(n, self.order);
        for nu in 0..n {
            s = s.add(&self.xhat[nu].sub(&self.x(nu)).mul(&self.d(nu)));
        }
        let c = s.cert();
        let bad = s.terms().iter().find(|(m, _)| m.d_deg() as i32 <= c);
        Check::new(
            "(x̂_n - x_n) d^n = 0",
            bad.is_none(),
            Some(c),
            bad.map(|(m, v)| format!("{} * {}", fmt_q(v), m.render())).unwrap_or_default(),
        )
    }
}

/// Coefficients of phi as a power series in C, from the Bernoulli numbers.
pub fn phi_coefficients(k: u32) -> Vec<Q> {
    let b = bernoulli_table(k);
    (0..=k)
        .map(|i| {
            let s = if i % 2 == 0 { Q::one() } else { -Q::one() };
            s * &b[i as usize] / Q::from_integer(factorial(i))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::rational::{q, qr};

    #[test]
    fn phi_ladder() {
        let c = phi_coefficients(4);
        assert_eq!(c, vec![q(1), qr(1, 2), qr(1, 12), q(0), qr(-1, 720)]);
    }

    #[test]
    fn heisenberg_closed_forms() {
        let ctx = RealizationContext::new(&catalog("heisenberg3").unwrap(), 4);
        let half = MatrixSeries::identity(3, 4).add(&ctx.c.scale(&qr(1, 2)));
        assert_eq!(ctx.phi, half);
        assert_eq!(ctx.xhat(0).to_string(), "1 * x1 + 1/2 * x3 d2");
        assert_eq!(ctx.xhat(1).to_string(), "1 * x2 + -1/2 * x3 d1");
        assert_eq!(ctx.xhat(2).to_string(), "1 * x3");
        assert_eq!(ctx.yhat(0).to_string(), "1 * x1 + -1/2 * x3 d2");
    }

    #[test]
    fn abelian_is_trivial() {
        let ctx = RealizationContext::new(&catalog("abelian(2)").unwrap(), 3);
        assert_eq!(ctx.phi, MatrixSeries::identity(2, 3));
        assert_eq!(ctx.phit, ctx.phi);
        assert_eq!(ctx.o, ctx.phi);
        assert_eq!(ctx.xhat(1), &ctx.x(1));
    }

    #[test]
    fn inverses_from_the_ladder() {
        let ctx = RealizationContext::new(&catalog("su2").unwrap(), 4);
        let id = MatrixSeries::identity(3, 4);
        assert_eq!(ctx.phi.mul(&ctx.phi_inv), id);
        assert_eq!(ctx.phit.mul(&ctx.phit_inv), id);
        assert_eq!(ctx.o.mul(&ctx.o_inv), id);
        assert_eq!(ctx.phi_inv, ctx.phi.inv().unwrap());
    }

    #[test]
    fn realization_identities() {
        for name in ["heisenberg3", "su2", "kappa(2)"] {
            let ctx = RealizationContext::new(&catalog(name).unwrap(), 4);
            assert!(ctx.check_bracket().passed(), "{name}");
            assert!(ctx.check_y_from_x().iter().all(|c| c.passed()), "{name}");
            assert!(ctx.check_xy_commute().passed(), "{name}");
            assert!(ctx.check_contraction().passed(), "{name}");
        }
    }

    #[test]
    fn decomposition_examples() {
        let ctx = RealizationContext::new(&catalog("heisenberg3").unwrap(), 4);
        let (parts, _) = ctx.decompose_smash(&ctx.x(0)).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (Polynomial::var(3, 0), MultiIndex::zero(3)));
        assert_eq!(parts[1], (Polynomial::var(3, 2).scale(&qr(-1, 2)), MultiIndex::unit(3, 1)));
        let (parts, _) = ctx.decompose_smash(&ctx.d(0)).unwrap();
        assert_eq!(parts, vec![(Polynomial::one(3), MultiIndex::unit(3, 0))]);
        let (parts, _) = ctx.decompose_smash(ctx.xhat(0)).unwrap();
        assert_eq!(parts, vec![(Polynomial::var(3, 0), MultiIndex::zero(3))]);
    }
}
