//! Antipodes: the undeformed S_0, the deformed S(h) = V^-1 S_0(h) V with
//! V = exp(R) solving d_mu R = F_mu, and the comparison with the twist-built
//! V_F = mu(S_0 ⊗ id)(F).

use crate::bialgebroid::{source, target, Coproducts, IdealKind, Oracle};
use crate::check::Check;
use crate::multiindex::MultiIndex;
use crate::rational::{fmt_q, Q};
use crate::realization::RealizationContext;
use crate::series::{MomentumSeries, SeriesError};
use crate::tensor::TensorElement;
use crate::twist::{Form, Twist};
use crate::weyl::{WeylElement, WeylError};
use num_traits::One;
use thiserror::Error;

/// Degrees of R_F through which agreement with R is asserted; higher
/// degrees are only reported.
pub const ASSERTED_DEGREE: u32 = 3;

#[derive(Debug, Error)]
pub enum AntipodeError {
    #[error("d_{mu} R differs from F_{mu} at {mono}: {got} vs {want}")]
    Unsolved { mu: usize, mono: String, got: String, want: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// F_mu = sum (phi^-1)^g_mu d_r phi^r_g.
pub fn build_fmu(ctx: &RealizationContext) -> Result<Vec<MomentumSeries>, SeriesError> {
    let n = ctx.dim();
    let mut div = Vec::with_capacity(n);
    for g in 0..n {
        let mut s = MomentumSeries::zero(n, ctx.order());
        for r in 0..n {
            s = s.add(&ctx.phi.get(r, g).partial(r)?);
        }
        div.push(s);
    }
    Ok((0..n)
        .map(|mu| {
            let mut f = MomentumSeries::zero(n, ctx.order());
            for (g, dg) in div.iter().enumerate() {
                f = f.add(&ctx.phi_inv.get(g, mu).mul(dg));
            }
            f
        })
        .collect())
}

fn min_cert(fs: &[MomentumSeries]) -> u32 {
    fs.iter().map(MomentumSeries::cert).min().unwrap_or(0)
}

/// d_nu F_mu = d_mu F_nu for every pair, through the certified degree.
pub fn check_integrability(f: &[MomentumSeries]) -> Result<Check, SeriesError> {
    let upto = min_cert(f).saturating_sub(1);
    for mu in 0..f.len() {
        for nu in mu + 1..f.len() {
            let a = f[mu].partial(nu)?;
            let b = f[nu].partial(mu)?;
            if let Some((m, x, y)) = a.first_difference(&b, upto) {
                return Ok(Check::new(
                    "integrability d_ν F_μ = d_μ F_ν",
                    false,
                    Some(upto as i32),
                    format!("(μ,ν) = ({},{}) at {}: {} vs {}", mu + 1, nu + 1, m.render("d"), fmt_q(&x), fmt_q(&y)),
                ));
            }
        }
    }
    Ok(Check::new("integrability d_ν F_μ = d_μ F_ν", true, Some(upto as i32), ""))
}

/// Euler homotopy: R_k = (1/k) [sum_mu d^mu F_mu]_(k-1), with R(0) = 0,
/// verified afterwards against every F_mu.
pub fn solve_r(f: &[MomentumSeries]) -> Result<MomentumSeries, AntipodeError> {
    let n = f.len();
    let order = f[0].order();
    let fc = min_cert(f);
    let mut r = MomentumSeries::zero(n, order);
    for (mu, fm) in f.iter().enumerate() {
        for (m, c) in fm.terms() {
            let k = m.degree() + 1;
            r.add_term(m.add(&MultiIndex::unit(n, mu)), c / Q::from_integer((k as i64).into()));
        }
    }
    let r = r.with_cert(fc + 1);
    for (mu, fm) in f.iter().enumerate() {
        if let Some((m, got, want)) = r.partial(mu)?.first_difference(fm, fc) {
            return Err(AntipodeError::Unsolved {
                mu: mu + 1,
                mono: m.render("d"),
                got: fmt_q(&got),
                want: fmt_q(&want),
            });
        }
    }
    Ok(r)
}

/// V_F = mu(S_0 ⊗ id)(F) for one twist, with its momentum-only checks.
pub struct TwistAntipode {
    pub form: Form,
    pub vf: WeylElement,
    pub vf_series: MomentumSeries,
    pub rf: Option<MomentumSeries>,
    pub checks: Vec<Check>,
}

/// Builds V_F from the twist representative.
///
/// Every term of a twist carries coordinate degree at most half its total
/// momentum degree. In the contraction a coordinate can cancel at most one
/// momentum, so terms beyond the truncation T land above degree T/2.
pub fn build_vf(tw: &Twist) -> Result<TwistAntipode, AntipodeError> {
    let t = tw.rep.cert().max(0) as u32;
    let mut checks = Vec::new();
    let heavy = tw.rep.terms().iter().find(|(k, _)| {
        let x: u32 = k.iter().map(|m| m.x_deg()).sum();
        let d: u32 = k.iter().map(|m| m.d_deg()).sum();
        2 * x > d
    });
    let weight_ok = heavy.is_none();
    checks.push(Check::new(
        format!("{} coordinate weight ≤ half momentum weight", tw.form),
        weight_ok,
        None,
        heavy.map(|(k, c)| format!("{} {}", fmt_q(c), crate::tensor::render_key(k))).unwrap_or_default(),
    ));
    let raw = tw.rep.s0_left().contract();
    let cert = if weight_ok { (t / 2) as i32 } else { raw.cert() };
    let vf = raw.with_cert(cert);
    let c = vf.cert().max(0) as u32;
    let dirt = vf.x_contamination(c);
    checks.push(Check::new(
        format!("{} V_F momentum-only", tw.form),
        dirt.is_none(),
        Some(vf.cert()),
        dirt.map(|(m, q)| format!("{} {}", fmt_q(&q), m.render())).unwrap_or_default(),
    ));
    let vf_series = vf.momentum_part().truncate(c);
    let v0 = vf_series.constant_term();
    checks.push(Check::new(format!("{} V_F(0) = 1", tw.form), v0.is_one(), Some(vf.cert()), format!("V_F(0) = {}", fmt_q(&v0))));
    let rf = if v0.is_one() { Some(vf_series.log()?) } else { None };
    Ok(TwistAntipode { form: tw.form, vf, vf_series, rf, checks })
}

/// Everything the antipode pipeline computes for one algebra.
pub struct AntipodeData {
    pub f_mu: Vec<MomentumSeries>,
    pub r: MomentumSeries,
    pub v: MomentumSeries,
    pub forms: Vec<TwistAntipode>,
}

impl AntipodeData {
    pub fn build(ctx: &RealizationContext, twists: &[&Twist]) -> Result<Self, AntipodeError> {
        let f_mu = build_fmu(ctx)?;
        let r = solve_r(&f_mu)?;
        let v = r.exp()?;
        let forms = twists.iter().map(|tw| build_vf(tw)).collect::<Result<_, _>>()?;
        Ok(AntipodeData { f_mu, r, v, forms })
    }

    /// The deformed antipode.
    pub fn antipode(&self) -> Antipode {
        Antipode::new(&self.v)
    }

    /// V_F agrees coefficientwise across the twist forms.
    pub fn check_vf_agreement(&self) -> Vec<Check> {
        let mut out = Vec::new();
        for (i, a) in self.forms.iter().enumerate() {
            for b in &self.forms[i + 1..] {
                let c = a.vf_series.cert().min(b.vf_series.cert());
                let diff = a.vf_series.first_difference(&b.vf_series, c);
                out.push(Check::new(
                    format!("V_F({}) = V_F({})", a.form, b.form),
                    diff.is_none(),
                    Some(c as i32),
                    diff.map(|(m, x, y)| format!("at {}: {} vs {}", m.render("d"), fmt_q(&x), fmt_q(&y))).unwrap_or_default(),
                ));
            }
        }
        out
    }

    /// R_F = log V_F against the solution R: the 1-form system per degree,
    /// then the first degree where the two diverge. Agreement is asserted
    /// through `ASSERTED_DEGREE`; beyond it the outcome is a finding.
    pub fn compare_conjecture(&self) -> Result<Vec<Check>, SeriesError> {
        let mut out = Vec::new();
        for fa in &self.forms {
            let Some(rf) = &fa.rf else {
                out.push(Check::new(format!("{} R_F = log V_F", fa.form), false, None, "V_F(0) ≠ 1"));
                continue;
            };
            let c = rf.cert().min(self.r.cert());
            let mut system: Option<(u32, String)> = None;
            for mu in 0..self.f_mu.len() {
                let lhs = rf.partial(mu)?;
                for k in 0..c {
                    let (a, b) = (lhs.homogeneous(k), self.f_mu[mu].homogeneous(k));
                    if let Some((m, x, y)) = a.first_difference(&b, k) {
                        if system.as_ref().is_none_or(|(k0, _)| k < *k0) {
                            system = Some((k, format!("μ={} at {}: {} vs {}", mu + 1, m.render("d"), fmt_q(&x), fmt_q(&y))));
                        }
                        break;
                    }
                }
            }
            let diverge = (0..=c).find(|&k| !rf.homogeneous(k).agrees(&self.r.homogeneous(k), k));
            let asserted = c.min(ASSERTED_DEGREE);
            let name = format!("{} R_F = R through degree {asserted}", fa.form);
            match diverge {
                Some(k) if k <= ASSERTED_DEGREE => {
                    let (m, x, y) = rf.homogeneous(k).first_difference(&self.r.homogeneous(k), k).unwrap();
                    out.push(Check::new(name, false, Some(c as i32), format!("degree {k} at {}: {} vs {}", m.render("d"), fmt_q(&x), fmt_q(&y))));
                }
                _ => out.push(Check::new(name, true, Some(c as i32), "")),
            }
            let system_name = format!("{} d_μ R_F = F_μ", fa.form);
            match system {
                Some((k, d)) if k < ASSERTED_DEGREE => out.push(Check::new(system_name, false, Some(c as i32), format!("degree {k}: {d}"))),
                Some((k, d)) => out.push(Check::info(system_name, format!("first violated at degree {k} (reported, not asserted): {d}"))),
                None => out.push(Check::info(system_name, format!("holds through degree {}", c.saturating_sub(1)))),
            }
            if c > ASSERTED_DEGREE {
                out.push(Check::info(
                    format!("{} R_F vs R beyond degree {ASSERTED_DEGREE}", fa.form),
                    match diverge {
                        Some(k) => format!("first divergence at degree {k} (reported, not asserted)"),
                        None => format!("agree through degree {c} (reported, not asserted)"),
                    },
                ));
            }
        }
        Ok(out)
    }
}

/// S(h) = V^-1 S_0(h) V.
pub struct Antipode {
    v: WeylElement,
    v_inv: WeylElement,
}

impl Antipode {
    pub fn new(v: &MomentumSeries) -> Self {
        let v_inv = v.inv().expect("V has constant term 1");
        Antipode { v: WeylElement::from_momentum(v), v_inv: WeylElement::from_momentum(&v_inv) }
    }

    pub fn apply(&self, h: &WeylElement) -> WeylElement {
        self.v_inv.mul(&h.s0()).mul(&self.v)
    }
}

fn compare(name: String, lhs: &WeylElement, rhs: &WeylElement) -> Check {
    let c = lhs.cert().min(rhs.cert());
    let diff = lhs.first_difference(rhs, c.max(0) as u32);
    Check::new(
        name,
        diff.is_none(),
        Some(c),
        diff.map(|(m, x, y)| format!("at {}: {} vs {}", m.render(), fmt_q(&x), fmt_q(&y))).unwrap_or_default(),
    )
}

/// The deformed antipode axioms on generators: S(ŷ_mu) = x̂_mu,
/// S(d^nu) = -d^nu, S∘β = α on words of length two, antimultiplicativity
/// on ŷ_mu ŷ_nu, and (S h_(1))_(1) h_(2) ⊗ (S h_(1))_(2) = 1 ⊗ S h for
/// h = d^mu modulo the deformed ideal.
pub fn check_s_axioms(
    ctx: &RealizationContext,
    s: &Antipode,
    cop: &Coproducts,
    oracle: &Oracle,
    d: u32,
) -> Result<Vec<Check>, WeylError> {
    let n = ctx.dim();
    let mut out = Vec::new();
    let first_fail = |checks: Vec<Check>, name: &str| -> Check {
        let cert = checks.iter().filter_map(|c| c.cert).min();
        match checks.into_iter().find(|c| !c.passed()) {
            Some(c) => Check::new(name, false, c.cert, format!("{}: {}", c.name, c.detail)),
            None => Check::new(name, true, cert, ""),
        }
    };
    out.push(first_fail((0..n).map(|m| compare(format!("μ={}", m + 1), &s.apply(ctx.yhat(m)), ctx.xhat(m))).collect(), "S(ŷ_μ) = x̂_μ"));
    out.push(first_fail((0..n).map(|m| compare(format!("ν={}", m + 1), &s.apply(&ctx.d(m)), &ctx.d(m).neg())).collect(), "S(d^ν) = -d^ν"));
    let mut words = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let u = ctx.pbw().word(&[a, b]);
            words.push(compare(format!("x{}x{}", a + 1, b + 1), &s.apply(&target(&u, ctx)), &source(&u, ctx)));
        }
    }
    out.push(first_fail(words, "S∘β = α"));
    let mut anti = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let lhs = s.apply(&ctx.yhat(a).mul(ctx.yhat(b)));
            let rhs = s.apply(ctx.yhat(b)).mul(&s.apply(ctx.yhat(a)));
            anti.push(compare(format!("ŷ{}ŷ{}", a + 1, b + 1), &lhs, &rhs));
        }
    }
    out.push(first_fail(anti, "S antimultiplicative"));
    out.push(check_sweedler(ctx, s, cop, oracle, d)?);
    Ok(out)
}

/// For each h_(1) ⊗ h_(2) of Δ(d^mu) the left factor is a momentum monomial
/// d^b, so S(h_(1)) = (-1)^|b| d^b up to conjugation by V, which commutes with
/// it, and Δ(S h_(1)) is a cached monomial coproduct.
fn check_sweedler(ctx: &RealizationContext, s: &Antipode, cop: &Coproducts, oracle: &Oracle, d: u32) -> Result<Check, WeylError> {
    let n = ctx.dim();
    let order = cop.order();
    let one = ctx.one();
    let name = "(S h₁)₁ h₂ ⊗ (S h₁)₂ = 1 ⊗ S h";
    let mut cert = order as i32;
    for mu in 0..n {
        let dh = cop.delta_monomial(&MultiIndex::unit(n, mu));
        let mut lhs = TensorElement::zero(n, 2, order);
        for (k, c) in dh.terms() {
            assert!(k[0].x.is_zero(), "left leg of a momentum coproduct");
            let b = &k[0].d;
            let sign = if b.degree() % 2 == 0 { c.clone() } else { -c.clone() };
            let h2 = WeylElement::monomial(n, order, k[1].clone(), Q::one());
            lhs = lhs.add(&cop.delta_monomial(b).mul(&TensorElement::pure(order, &[&h2, &one])).scale(&sign));
        }
        let c = lhs.cert().min(dh.cert());
        let lhs = lhs.with_cert(c);
        let rhs = TensorElement::pure(order, &[&one, &s.apply(&ctx.d(mu)).reorder(order)]);
        let diff = lhs.sub(&rhs);
        cert = cert.min(diff.cert());
        let m = oracle.member(&diff, IdealKind::Deformed, d)?;
        if !m.member {
            return Ok(Check::new(name, false, Some(diff.cert()), format!("h = d{}: {}", mu + 1, m.describe(IdealKind::Deformed))));
        }
    }
    Ok(Check::new(name, true, Some(cert), format!("h = d^μ, degree {d}")))
}
