//! The twists F_l, F_r, F_c taking the undeformed Weyl bialgebroid to the
//! Heisenberg double, and the checks that they do so.
//!
//! Everything works on explicit representatives in H ⊗ H. Quotients only
//! enter through the membership oracle.

use crate::bialgebroid::{Coproducts, IdealKind, Oracle};
use crate::check::Check;
use crate::multiindex::MultiIndex;
use crate::rational::{fmt_q, Q};
use crate::realization::RealizationContext;
use crate::series::MomentumSeries;
use crate::tensor::{delta0, render_key, PolyTensor, TensorElement};
use crate::weyl::{Polynomial, WeylElement, WeylError};
use num_traits::One;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Left,
    Right,
    Coproduct,
}

impl Form {
    pub const ALL: [Form; 3] = [Form::Left, Form::Right, Form::Coproduct];

    pub fn tag(&self) -> &'static str {
        match self {
            Form::Left => "l",
            Form::Right => "r",
            Form::Coproduct => "c",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Form::Left => "F_l",
            Form::Right => "F_r",
            Form::Coproduct => "F_c",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Form {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "l" | "left" => Ok(Form::Left),
            "r" | "right" => Ok(Form::Right),
            "c" | "coproduct" => Ok(Form::Coproduct),
            _ => Err(format!("unknown twist form '{s}' (expected l, r or c)")),
        }
    }
}

/// A twist representative with its inverse. For F_l and F_r the exponents
/// are kept too, at the full context order, so that the twist can act on
/// polynomials of any degree the context supports.
pub struct Twist {
    pub form: Form,
    pub order: u32,
    pub rep: TensorElement,
    pub inv: TensorElement,
    exponents: Vec<TensorElement>,
}

fn sum_pure(n: usize, order: u32, f: impl Fn(usize) -> (WeylElement, WeylElement)) -> TensorElement {
    let mut t = TensorElement::zero(n, 2, order);
    for i in 0..n {
        let (a, b) = f(i);
        t = t.add(&TensorElement::pure(order, &[&a, &b]));
    }
    t
}

/// (Δ - Δ_0)(d^v) for each generator.
fn coproduct_corrections(ctx: &RealizationContext, order: u32) -> Vec<TensorElement> {
    let n = ctx.dim();
    let cop = Coproducts::new(ctx, order);
    (0..n)
        .map(|v| {
            cop.delta_left(&MomentumSeries::var(n, order, v))
                .sub(&TensorElement::pure(order, &[&ctx.d(v), &ctx.one()]))
                .sub(&TensorElement::pure(order, &[&ctx.one(), &ctx.d(v)]))
        })
        .collect()
}

/// An exponent of F_l or F_r as a function of the truncation order.
type Exponent<'a> = Box<dyn Fn(u32) -> TensorElement + 'a>;

impl Twist {
    /// Builds the representative truncated at total d-degree `order`.
    pub fn build(form: Form, ctx: &RealizationContext, order: u32) -> Result<Self, WeylError> {
        let n = ctx.dim();
        let order = order.min(ctx.order());
        let full = ctx.order();
        match form {
            Form::Left | Form::Right => {
                let (conv, a, b): (usize, Exponent, Exponent) =
                    if form == Form::Left {
                        (
                            0,
                            Box::new(|o| sum_pure(n, o, |i| (ctx.d(i), ctx.x(i)))),
                            Box::new(|o| sum_pure(n, o, |i| (ctx.d(i), ctx.xhat(i).clone()))),
                        )
                    } else {
                        (
                            1,
                            Box::new(|o| sum_pure(n, o, |i| (ctx.x(i), ctx.d(i)))),
                            Box::new(|o| sum_pure(n, o, |i| (ctx.yhat(i).clone(), ctx.d(i)))),
                        )
                    };
                let (a_t, b_t) = (a(order), b(order));
                let rep = a_t.neg().exp(conv)?.mul(&b_t.exp(conv)?);
                let inv = b_t.neg().exp(conv)?.mul(&a_t.exp(conv)?);
                Ok(Twist { form, order, rep, inv, exponents: vec![a(full).neg(), b(full)] })
            }
            Form::Coproduct => {
                let corr = coproduct_corrections(ctx, order);
                let one = ctx.one();
                let mut rep = TensorElement::zero(n, 2, order);
                // each correction carries total d-degree at least 2
                for i in MultiIndex::up_to_degree(n, order / 2) {
                    let xi = WeylElement::monomial(
                        n,
                        order,
                        crate::weyl::Mono::new(i.clone(), MultiIndex::zero(n)),
                        Q::new(1.into(), i.factorial()),
                    );
                    let mut term = TensorElement::pure(order, &[&xi, &one]);
                    for (v, c) in corr.iter().enumerate() {
                        for _ in 0..i.get(v) {
                            term = term.mul(c);
                        }
                    }
                    rep = rep.add(&term);
                }
                let unit = TensorElement::one(n, 2, order);
                let nil = rep.sub(&unit);
                let mut inv = unit.clone();
                let mut p = unit;
                for _ in 0..=order {
                    p = p.mul(&nil).neg();
                    if p.is_zero() {
                        break;
                    }
                    inv = inv.add(&p);
                }
                Ok(Twist { form, order, rep, inv, exponents: vec![] })
            }
        }
    }

    /// F ▷ on a sum of tuples of polynomials.
    pub fn act(&self, pt: &PolyTensor) -> Result<PolyTensor, WeylError> {
        if self.exponents.is_empty() {
            return self.rep.act_on(pt);
        }
        let mut cur = pt.clone();
        for g in self.exponents.iter().rev() {
            let mut acc = cur.clone();
            let mut term = cur;
            for k in 1.. {
                term = g.act_on(&term)?;
                if term.is_empty() {
                    break;
                }
                let s = Q::new(1.into(), (k as i64).into());
                term.values_mut().for_each(|v| *v *= &s);
                for (ms, v) in &term {
                    crate::weyl::accumulate(&mut acc, ms.clone(), v.clone());
                }
            }
            cur = acc;
        }
        Ok(cur)
    }

    /// f ⋆ g = (F^(1) ▷ f)(F^(2) ▷ g).
    pub fn twisted_star(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, WeylError> {
        let n = f.dim();
        let mut pt = PolyTensor::new();
        for (a, ca) in f.terms() {
            for (b, cb) in g.terms() {
                pt.insert(vec![a.clone(), b.clone()], ca * cb);
            }
        }
        let img = self.act(&pt)?;
        let mut out = Polynomial::zero(n);
        for (ms, c) in img {
            out.add_term(ms[0].add(&ms[1]), c);
        }
        Ok(out)
    }

    fn name(&self, what: &str) -> String {
        format!("{} {what}", self.form)
    }

    /// rep · inv = inv · rep = 1 ⊗ 1 through the certified degree.
    pub fn check_inverse(&self) -> Check {
        let n = self.rep.dim();
        let unit = TensorElement::one(n, 2, self.order);
        for (label, p) in [("F F⁻¹", self.rep.mul(&self.inv)), ("F⁻¹ F", self.inv.mul(&self.rep))] {
            let c = p.cert();
            if let Some((k, a, b)) = p.first_difference(&unit, c.max(0) as u32) {
                return Check::new(self.name("inverse"), false, Some(c), format!("{label} at {}: {} vs {}", render_key(&k), fmt_q(&a), fmt_q(&b)));
            }
        }
        Check::new(self.name("inverse"), true, Some(self.order as i32), "")
    }

    /// Δ_H(h) ≡ F⁻¹ Δ_0(h) F on h = d^m and h = x̂_m; for d^m also as an
    /// exact identity of tensors.
    pub fn check_twist_equation(&self, ctx: &RealizationContext, cop: &Coproducts, oracle: &Oracle, d: u32) -> Result<Vec<Check>, WeylError> {
        let n = ctx.dim();
        let mut out = Vec::new();
        for (label, h, momentum) in (0..n)
            .map(|m| (format!("d{}", m + 1), ctx.d(m), true))
            .chain((0..n).map(|m| (format!("x̂{}", m + 1), ctx.xhat(m).reorder(self.order), false)))
        {
            let lhs = self.inv.mul(&delta0(&h, self.order)).mul(&self.rep);
            let rhs = cop.delta_h(&h)?;
            let name = self.name(&format!("twist equation {label}"));
            if momentum {
                let c = lhs.cert().min(rhs.cert());
                if let Some((k, a, b)) = lhs.first_difference(&rhs, c.max(0) as u32) {
                    out.push(Check::new(name, false, Some(c), format!("at {}: {} vs {}", render_key(&k), fmt_q(&a), fmt_q(&b))));
                    continue;
                }
            }
            let diff = lhs.sub(&rhs);
            let m = oracle.member(&diff, IdealKind::Deformed, d)?;
            out.push(Check::new(name, m.member, Some(diff.cert()), m.describe(IdealKind::Deformed)));
        }
        Ok(out)
    }

    /// [(Δ_0 ⊗ id)F](F ⊗ 1) - [(id ⊗ Δ_0)F](1 ⊗ F) ∈ I_0.
    pub fn cocycle_residual(&self) -> TensorElement {
        let lhs = self.rep.delta0_at(0).mul(&self.rep.insert_unit(2));
        let rhs = self.rep.delta0_at(1).mul(&self.rep.insert_unit(0));
        lhs.sub(&rhs)
    }

    pub fn check_cocycle(&self, oracle: &Oracle, d: u32) -> Result<Check, WeylError> {
        let r = self.cocycle_residual();
        if r.is_zero() {
            return Ok(Check::new(self.name("cocycle"), true, Some(r.cert()), "residual is exactly 0"));
        }
        let m = oracle.member(&r, IdealKind::Undeformed, d)?;
        Ok(Check::new(self.name("cocycle"), m.member, Some(r.cert()), m.describe(IdealKind::Undeformed)))
    }

    /// (F⁻¹ ⊗ 1)(Δ_H ⊗ id)(F⁻¹) - (1 ⊗ F⁻¹)(id ⊗ Δ_H)(F⁻¹) ∈ I_U(g).
    pub fn check_inverse_cocycle(&self, cop: &Coproducts, oracle: &Oracle, d: u32) -> Result<Check, WeylError> {
        let lhs = self.inv.insert_unit(2).mul(&cop.delta_h_at(&self.inv, 0)?);
        let rhs = self.inv.insert_unit(0).mul(&cop.delta_h_at(&self.inv, 1)?);
        let r = lhs.sub(&rhs);
        let m = oracle.member(&r, IdealKind::Deformed, d)?;
        Ok(Check::new(self.name("inverse cocycle"), m.member, Some(r.cert()), m.describe(IdealKind::Deformed)))
    }

    /// (ε ⊗ 1)F = 1 = (1 ⊗ ε)F as Weyl elements.
    pub fn check_counitality(&self, ctx: &RealizationContext) -> Result<Check, WeylError> {
        let n = ctx.dim();
        let one = Polynomial::one(n);
        let unit = WeylElement::one(n, self.order);
        let mut cert = self.order as i32;
        for (label, w) in [("(ε⊗1)F", self.rep.act_left_into_right(&one)?), ("(1⊗ε)F", self.rep.act_right_into_left(&one)?)] {
            let c = w.cert();
            cert = cert.min(c);
            if let Some((m, a, b)) = w.first_difference(&unit, c.max(0) as u32) {
                return Ok(Check::new(self.name("counitality"), false, Some(c), format!("{label} at {}: {} vs {}", m.render(), fmt_q(&a), fmt_q(&b))));
            }
        }
        Ok(Check::new(self.name("counitality"), true, Some(cert), "both sides equal 1"))
    }

    /// α_F(x_m) = x̂_m and β_F(x_m) = ŷ_m.
    pub fn check_source_target(&self, ctx: &RealizationContext) -> Result<Vec<Check>, WeylError> {
        let n = ctx.dim();
        let mut out = Vec::new();
        for (label, left) in [("α_F(x) = x̂", true), ("β_F(x) = ŷ", false)] {
            let mut fail = None;
            let mut cert = self.order as i32;
            for m in 0..n {
                let xm = Polynomial::var(n, m);
                let got = if left { self.rep.act_left_into_right(&xm)? } else { self.rep.act_right_into_left(&xm)? };
                let want = if left { ctx.xhat(m) } else { ctx.yhat(m) };
                let c = got.cert().min(want.cert());
                cert = cert.min(c);
                if let Some((mo, a, b)) = got.first_difference(want, c.max(0) as u32) {
                    fail = Some(format!("x{} at {}: {} vs {}", m + 1, mo.render(), fmt_q(&a), fmt_q(&b)));
                    break;
                }
            }
            out.push(Check::new(self.name(label), fail.is_none(), Some(cert), fail.unwrap_or_default()));
        }
        Ok(out)
    }

    /// The conjugated generators of I_0, compared with their closed forms
    /// (F_l, F_r) and tested for membership in I_U(g); also F⁻¹ I_0 ⊂ I_U(g)
    /// and F I_U(g) ⊂ I_0 on generators.
    pub fn check_ideal_mapping(&self, ctx: &RealizationContext, oracle: &Oracle, d: u32) -> Result<Vec<Check>, WeylError> {
        let n = ctx.dim();
        let t = self.order;
        let one = ctx.one();
        let mom = |s: &MomentumSeries| ctx.momentum(s).reorder(t);
        let mut closed_fail = None;
        let mut member_fail = None;
        let mut left_fail = None;
        let mut back_fail = None;
        let mut cert = t as i32;
        for mu in 0..n {
            let g = TensorElement::pure(t, &[&ctx.x(mu), &one]).sub(&TensorElement::pure(t, &[&one, &ctx.x(mu)]));
            let conj = self.inv.mul(&g).mul(&self.rep);
            let closed = match self.form {
                Form::Left => {
                    let mut c = TensorElement::zero(n, 2, t);
                    for tau in 0..n {
                        let l = ctx.xhat(tau).mul(&mom(ctx.phi_inv.get(tau, mu)));
                        c = c.add(&TensorElement::pure(t, &[&l, &one]));
                        c = c.sub(&TensorElement::pure(t, &[&mom(ctx.phit_inv.get(tau, mu)), ctx.xhat(tau)]));
                    }
                    Some(c)
                }
                Form::Right => {
                    let mut c = TensorElement::pure(t, &[&one, &ctx.x(mu)]).neg();
                    for tau in 0..n {
                        c = c.add(&TensorElement::pure(t, &[ctx.yhat(tau), &mom(ctx.phi_inv.get(tau, mu))]));
                    }
                    Some(c)
                }
                Form::Coproduct => None,
            };
            if let Some(c) = closed {
                let k = conj.cert().min(c.cert());
                cert = cert.min(k);
                if closed_fail.is_none() {
                    if let Some((key, a, b)) = conj.first_difference(&c, k.max(0) as u32) {
                        closed_fail = Some(format!("m={} at {}: {} vs {}", mu + 1, render_key(&key), fmt_q(&a), fmt_q(&b)));
                    }
                }
            }
            if member_fail.is_none() {
                let m = oracle.member(&conj, IdealKind::Deformed, d)?;
                if !m.member {
                    member_fail = Some(format!("m={}: {}", mu + 1, m.describe(IdealKind::Deformed)));
                }
            }
            if left_fail.is_none() {
                let m = oracle.member(&self.inv.mul(&g), IdealKind::Deformed, d)?;
                if !m.member {
                    left_fail = Some(format!("m={}: {}", mu + 1, m.describe(IdealKind::Deformed)));
                }
            }
            if back_fail.is_none() {
                let gy = TensorElement::pure(t, &[ctx.yhat(mu), &one]).sub(&TensorElement::pure(t, &[&one, ctx.xhat(mu)]));
                let m = oracle.member(&self.rep.mul(&gy), IdealKind::Undeformed, d)?;
                if !m.member {
                    back_fail = Some(format!("m={}: {}", mu + 1, m.describe(IdealKind::Undeformed)));
                }
            }
        }
        let mut out = Vec::new();
        if self.form != Form::Coproduct {
            out.push(Check::new(self.name("conjugated I_0 generators, closed form"), closed_fail.is_none(), Some(cert), closed_fail.unwrap_or_default()));
        }
        out.push(Check::new(self.name("F⁻¹ (x⊗1 - 1⊗x) F ∈ I_U(g)"), member_fail.is_none(), Some(cert), member_fail.unwrap_or_default()));
        out.push(Check::new(self.name("F⁻¹ I_0 ⊂ I_U(g)"), left_fail.is_none(), Some(cert), left_fail.unwrap_or_default()));
        out.push(Check::new(self.name("F I_U(g) ⊂ I_0"), back_fail.is_none(), Some(cert), back_fail.unwrap_or_default()));
        Ok(out)
    }

    /// Star products of all monomial pairs with each degree at most `deg`
    /// against the U(g) oracle.
    pub fn check_star(&self, ctx: &RealizationContext, deg: u32) -> Result<Check, WeylError> {
        let n = ctx.dim();
        let monos = MultiIndex::up_to_degree(n, deg);
        for a in &monos {
            for b in &monos {
                let f = Polynomial::monomial(n, a.clone(), Q::one());
                let g = Polynomial::monomial(n, b.clone(), Q::one());
                let got = self.twisted_star(&f, &g)?;
                let want = ctx.pbw().star(&f, &g);
                if got != want {
                    return Ok(Check::new(
                        self.name("star = U(g) oracle"),
                        false,
                        None,
                        format!("{} ⋆ {}: {} vs {}", f.to_text(), g.to_text(), got.to_text(), want.to_text()),
                    ));
                }
            }
        }
        Ok(Check::new(self.name("star = U(g) oracle"), true, None, format!("{} pairs up to degree {deg}", monos.len() * monos.len())))
    }
}

/// Pairwise F_a ≡ F_b, in I_0 and in I_U(g).
pub fn check_equivalence(twists: &[&Twist], oracle: &Oracle, d: u32) -> Result<Vec<Check>, WeylError> {
    let mut out = Vec::new();
    for i in 0..twists.len() {
        for j in i + 1..twists.len() {
            let (a, b) = (twists[i], twists[j]);
            let diff = a.rep.sub(&b.rep);
            for kind in [IdealKind::Undeformed, IdealKind::Deformed] {
                let m = oracle.member(&diff, kind, d)?;
                out.push(Check::new(
                    format!("{} ≡ {} mod {}", a.form, b.form, kind.label()),
                    m.member,
                    Some(diff.cert()),
                    m.describe(kind),
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::rational::qr;

    #[test]
    fn abelian_twists_are_trivial() {
        let ctx = RealizationContext::new(&catalog("abelian(2)").unwrap(), 4);
        for form in Form::ALL {
            let tw = Twist::build(form, &ctx, 4).unwrap();
            assert_eq!(tw.rep, TensorElement::one(2, 2, 4), "{form}");
            assert_eq!(tw.inv, TensorElement::one(2, 2, 4), "{form}");
        }
    }

    #[test]
    fn heisenberg_left_first_order() {
        let ctx = RealizationContext::new(&catalog("heisenberg3").unwrap(), 4);
        let tw = Twist::build(Form::Left, &ctx, 4).unwrap();
        let x3d2 = ctx.x(2).mul(&ctx.d(1));
        let x3d1 = ctx.x(2).mul(&ctx.d(0));
        let expect = TensorElement::one(3, 2, 2)
            .add(&TensorElement::pure(2, &[&ctx.d(0), &x3d2]).scale(&qr(1, 2)))
            .sub(&TensorElement::pure(2, &[&ctx.d(1), &x3d1]).scale(&qr(1, 2)));
        // terms with left d-degree at most one
        let low: TensorElement = TensorElement::from_terms(
            3,
            2,
            4,
            tw.rep.terms().iter().filter(|(k, _)| k[0].d_deg() <= 1).map(|(k, c)| (k.clone(), c.clone())),
        );
        assert_eq!(low, expect.reorder(4));
        assert!(tw.check_inverse().passed());
    }

    #[test]
    fn heisenberg_star() {
        let ctx = RealizationContext::new(&catalog("heisenberg3").unwrap(), 4);
        let (x1, x2) = (Polynomial::var(3, 0), Polynomial::var(3, 1));
        for form in [Form::Left, Form::Right, Form::Coproduct] {
            let tw = Twist::build(form, &ctx, 4).unwrap();
            assert_eq!(tw.twisted_star(&x1, &x2).unwrap().to_text(), "x1*x2 + 1/2*x3", "{form}");
            assert_eq!(tw.twisted_star(&Polynomial::one(3), &x2).unwrap(), x2);
        }
    }

    #[test]
    fn heisenberg_twist_checks() {
        let ctx = RealizationContext::new(&catalog("heisenberg3").unwrap(), 7);
        let cop = Coproducts::new(&ctx, 4);
        let oracle = Oracle::new(&ctx);
        for form in Form::ALL {
            let tw = Twist::build(form, &ctx, 4).unwrap();
            assert!(tw.check_inverse().passed(), "{form}");
            for c in tw.check_twist_equation(&ctx, &cop, &oracle, 3).unwrap() {
                assert!(c.passed(), "{c}");
            }
            assert!(tw.check_counitality(&ctx).unwrap().passed(), "{form}");
            for c in tw.check_source_target(&ctx).unwrap() {
                assert!(c.passed(), "{c}");
            }
            for c in tw.check_ideal_mapping(&ctx, &oracle, 3).unwrap() {
                assert!(c.passed(), "{c}");
            }
        }
    }
}
