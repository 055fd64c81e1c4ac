//! Report assembly for the `hopfoid` command: each subcommand builds a
//! `Report` of named sections, rendered either as text or as one JSON
//! document. Nothing in a report depends on timing or thread scheduling, so a
//! fixed configuration always produces the same bytes.

use hopfoid::antipode::{check_s_axioms, AntipodeData, ASSERTED_DEGREE};
use hopfoid::bialgebroid::{check_coassociativity, check_counit_axioms, check_source_target, Coproducts, Oracle};
use hopfoid::check::{Check, Status};
use hopfoid::lie::{catalog, load_path, LieAlgebraDef, LieError};
use hopfoid::multiindex::MultiIndex;
use hopfoid::rational::{fmt_q, q, Q};
use hopfoid::realization::{phi_coefficients, RealizationContext};
use hopfoid::series::MomentumSeries;
use hopfoid::tensor::{delta0, TensorElement};
use hopfoid::twist::{check_equivalence, Form, Twist};
use hopfoid::weyl::{Polynomial, PolyParseError, WeylError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

/// Extra momentum degrees of the working context beyond the requested order.
pub const SLACK: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub algebra: String,
    pub order: u32,
    pub degree: u32,
    pub form: Option<Form>,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(algebra: &str) -> Self {
        RunConfig { algebra: algebra.to_string(), order: 4, degree: 3, form: None, format: Format::Text, seed: 0 }
    }

    pub fn working_order(&self) -> u32 {
        self.order + SLACK
    }

    fn forms(&self) -> Vec<Form> {
        match self.form {
            Some(f) => vec![f],
            None => Form::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("cannot parse polynomial: {0}")]
    Poly(#[from] PolyParseError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Antipode(#[from] hopfoid::antipode::AntipodeError),
    #[error("{0}")]
    Usage(String),
}

/// A catalog name, or else a path to an algebra file.
pub fn load_algebra(src: &str) -> Result<LieAlgebraDef, LieError> {
    match catalog(src) {
        Ok(a) => Ok(a),
        Err(LieError::UnknownName(_)) if Path::new(src).exists() => load_path(Path::new(src)),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub values: BTreeMap<String, String>,
}

impl Section {
    fn new(name: impl Into<String>) -> Self {
        Section { name: name.into(), status: Status::Pass, checks: Vec::new(), values: BTreeMap::new() }
    }

    fn push(&mut self, c: Check) {
        if c.status == Status::Fail {
            self.status = Status::Fail;
        }
        self.checks.push(c);
    }

    fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        cs.into_iter().for_each(|c| self.push(c));
    }

    fn value(&mut self, key: impl Into<String>, v: impl ToString) {
        self.values.insert(key.into(), v.to_string());
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub algebra: String,
    pub dim: usize,
    #[serde(rename = "K")]
    pub order: u32,
    #[serde(rename = "D")]
    pub degree: u32,
    pub working_order: u32,
    pub seed: u64,
    pub status: Status,
    pub sections: Vec<Section>,
}

impl Report {
    fn new(command: &str, cfg: &RunConfig, alg: &LieAlgebraDef, sections: Vec<Section>) -> Self {
        let status = if sections.iter().any(|s| s.status == Status::Fail) { Status::Fail } else { Status::Pass };
        Report {
            command: command.into(),
            algebra: alg.name.clone(),
            dim: alg.dim,
            order: cfg.order,
            degree: cfg.degree,
            working_order: cfg.working_order(),
            seed: cfg.seed,
            status,
            sections,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn first_failure(&self) -> Option<&Section> {
        self.sections.iter().find(|s| s.status == Status::Fail)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} (n={}, K={}, D={}, working order {}, seed {})\n",
            self.command, self.algebra, self.dim, self.order, self.degree, self.working_order, self.seed
        );
        for sec in &self.sections {
            s += &format!("== {} ==\n", sec.name);
            for c in &sec.checks {
                s += &format!("{c}\n");
            }
            for (k, v) in &sec.values {
                s += &format!("  {k} = {v}\n");
            }
        }
        match self.first_failure() {
            None => s += &format!("RESULT: {}\n", self.status),
            Some(sec) => s += &format!("RESULT: FAIL (first failing section: {})\n", sec.name),
        }
        s
    }
}

struct Setup {
    alg: LieAlgebraDef,
    ctx: RealizationContext,
}

fn setup(cfg: &RunConfig) -> Result<Setup, CliError> {
    if cfg.order < 1 || cfg.degree < 1 {
        return Err(CliError::Usage("order and degree must be at least 1".into()));
    }
    let alg = load_algebra(&cfg.algebra)?;
    let ctx = RealizationContext::new(&alg, cfg.working_order());
    Ok(Setup { alg, ctx })
}

/// The first coefficients of phi as a series in C, against their known values.
fn ladder_check() -> Check {
    let want = [q(1), Q::new(1.into(), 2.into()), Q::new(1.into(), 12.into()), q(0), Q::new((-1).into(), 720.into())];
    let got = phi_coefficients(4);
    let text = got.iter().map(fmt_q).collect::<Vec<_>>().join(", ");
    Check::new("phi ladder coefficients", got[..] == want[..], None, text)
}

fn realization_section(ctx: &RealizationContext) -> Section {
    let mut s = Section::new("realization");
    s.push(ladder_check());
    s.push(ctx.check_bracket());
    s.extend(ctx.check_y_from_x());
    s.push(ctx.check_xy_commute());
    s.push(ctx.check_contraction());
    s
}

fn coproduct_section(ctx: &RealizationContext, cfg: &RunConfig) -> Result<Section, CliError> {
    let cop = Coproducts::new(ctx, cfg.order);
    let oracle = Oracle::new(ctx);
    let mut s = Section::new("bialgebroid");
    s.push(cop.check_left_right());
    s.push(cop.check_o_grouplike());
    s.push(check_counit_axioms(&cop)?);
    s.extend(check_source_target(ctx));
    // rank-3 membership is the most expensive oracle call; keep it small
    let small = Coproducts::new(ctx, cfg.order.min(3));
    s.push(check_coassociativity(&small, &oracle, cfg.degree.min(2))?);
    Ok(s)
}

/// Order and test degree of the cocycle checks, which work in rank 3.
fn cocycle_budget(cfg: &RunConfig) -> (u32, u32) {
    (cfg.order.min(3), cfg.degree.min(2))
}

fn twist_section(ctx: &RealizationContext, cfg: &RunConfig, form: Form) -> Result<Section, CliError> {
    let tw = Twist::build(form, ctx, cfg.order)?;
    let cop = Coproducts::new(ctx, cfg.order);
    let oracle = Oracle::new(ctx);
    let mut s = Section::new(format!("twist {form}"));
    s.push(tw.check_inverse());
    s.push(tw.check_counitality(ctx)?);
    s.extend(tw.check_source_target(ctx)?);
    s.extend(tw.check_twist_equation(ctx, &cop, &oracle, cfg.degree)?);
    s.extend(tw.check_ideal_mapping(ctx, &oracle, cfg.degree)?);
    // products of two degree-D monomials need the twist through degree 2D
    let full = Twist::build(form, ctx, ctx.order())?;
    s.push(full.check_star(ctx, cfg.degree)?);
    let (k, d) = cocycle_budget(cfg);
    let small = Twist::build(form, ctx, k)?;
    let small_cop = Coproducts::new(ctx, k);
    s.push(small.check_cocycle(&oracle, d)?.with_suffix(format!("(K={k}, D={d})")));
    s.push(small.check_inverse_cocycle(&small_cop, &oracle, d)?.with_suffix(format!("(K={k}, D={d})")));
    Ok(s)
}

trait Suffix {
    fn with_suffix(self, s: String) -> Self;
}

impl Suffix for Check {
    fn with_suffix(mut self, s: String) -> Self {
        self.name = format!("{} {s}", self.name);
        self
    }
}

fn equivalence_section(ctx: &RealizationContext, cfg: &RunConfig) -> Result<Section, CliError> {
    let tws = Form::ALL.iter().map(|&f| Twist::build(f, ctx, cfg.order)).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&Twist> = tws.iter().collect();
    let oracle = Oracle::new(ctx);
    let mut s = Section::new("twist equivalence");
    s.extend(check_equivalence(&refs, &oracle, cfg.degree)?);
    Ok(s)
}

fn render_series_list(fs: &[MomentumSeries]) -> String {
    fs.iter().enumerate().map(|(i, f)| format!("F_{} = {f}", i + 1)).collect::<Vec<_>>().join("; ")
}

/// F_mu, R, V and the twist-built V_F, R_F with all their checks. The
/// twists are built at the working order so that V_F is certified through
/// half of it.
fn antipode_sections(ctx: &RealizationContext, cfg: &RunConfig, forms: &[Form], axioms: bool) -> Result<Vec<Section>, CliError> {
    let wk = cfg.working_order();
    let tws = forms.iter().map(|&f| Twist::build(f, ctx, wk)).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&Twist> = tws.iter().collect();
    let mut s = Section::new("antipode");
    let f_mu = hopfoid::antipode::build_fmu(ctx).map_err(WeylError::from)?;
    s.push(hopfoid::antipode::check_integrability(&f_mu).map_err(WeylError::from)?);
    let data = match AntipodeData::build(ctx, &refs) {
        Ok(d) => d,
        Err(e) => {
            s.push(Check::new("d_μ R = F_μ", false, None, e.to_string()));
            return Ok(vec![s]);
        }
    };
    s.push(Check::new("d_μ R = F_μ", true, Some(data.r.cert() as i32 - 1), "solved by Euler homotopy"));
    if ctx.algebra().is_unimodular() {
        let zero = data.f_mu.iter().all(|f| f.constant_term() == q(0));
        s.push(Check::new("unimodular: F_μ(0) = 0", zero, None, ""));
        let vanish = data.f_mu.iter().all(MomentumSeries::is_zero);
        s.push(Check::info("F_μ vanishes identically", if vanish { "yes" } else { "no" }));
    }
    s.value("F", render_series_list(&data.f_mu));
    s.value("R", &data.r);
    s.value("V", &data.v);
    for fa in &data.forms {
        s.extend(fa.checks.iter().cloned());
        s.value(format!("V_F({})", fa.form), &fa.vf_series);
        if let Some(rf) = &fa.rf {
            s.value(format!("R_F({})", fa.form), rf);
        }
    }
    s.extend(data.check_vf_agreement());
    s.extend(data.compare_conjecture().map_err(WeylError::from)?);
    let divergence = data
        .forms
        .iter()
        .filter_map(|fa| {
            let rf = fa.rf.as_ref()?;
            let c = rf.cert().min(data.r.cert());
            Some((0..=c).find(|&k| !rf.homogeneous(k).agrees(&data.r.homogeneous(k), k)))
        })
        .min_by_key(|d| d.unwrap_or(u32::MAX))
        .flatten();
    s.value("divergence degree", divergence.map(|d| d.to_string()).unwrap_or_else(|| "none".into()));
    s.value("asserted through degree", ASSERTED_DEGREE);
    let mut out = vec![s];
    if axioms {
        let cop = Coproducts::new(ctx, cfg.order);
        let oracle = Oracle::new(ctx);
        let mut ax = Section::new("antipode axioms");
        ax.extend(check_s_axioms(ctx, &data.antipode(), &cop, &oracle, cfg.degree)?);
        out.push(ax);
    }
    Ok(out)
}

/// (f⋆g)⋆h = f⋆(g⋆h) on monomial triples of degree at most two.
fn star_section(ctx: &RealizationContext) -> Section {
    let n = ctx.dim();
    let pbw = ctx.pbw();
    let monos: Vec<Polynomial> = MultiIndex::up_to_degree(n, 2).into_iter().map(|m| Polynomial::monomial(n, m, Q::from_integer(1.into()))).collect();
    let mut fail = None;
    'outer: for f in &monos {
        for g in &monos {
            let fg = pbw.star(f, g);
            for h in &monos {
                let l = pbw.star(&fg, h);
                let r = pbw.star(f, &pbw.star(g, h));
                if l != r {
                    fail = Some(format!("({}, {}, {}): {} vs {}", f.to_text(), g.to_text(), h.to_text(), l.to_text(), r.to_text()));
                    break 'outer;
                }
            }
        }
    }
    let mut s = Section::new("star product");
    let count = monos.len().pow(3);
    s.push(Check::new("⋆ associative", fail.is_none(), None, fail.unwrap_or_else(|| format!("{count} triples up to degree 2"))));
    s
}

/// Random polynomial pairs, drawn from the seed, through every twisted star.
fn fuzz_section(ctx: &RealizationContext, cfg: &RunConfig) -> Result<Section, CliError> {
    let n = ctx.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let monos = MultiIndex::up_to_degree(n, 2);
    let random_poly = |rng: &mut ChaCha8Rng| {
        let mut p = Polynomial::zero(n);
        for _ in 0..3 {
            let m = monos[rng.gen_range(0..monos.len())].clone();
            let c: i64 = rng.gen_range(-3..=3);
            p.add_term(m, q(c));
        }
        p
    };
    let tws = Form::ALL.iter().map(|&f| Twist::build(f, ctx, ctx.order())).collect::<Result<Vec<_>, _>>()?;
    let mut s = Section::new("fuzz");
    let mut fail = None;
    let mut pairs = Vec::new();
    for _ in 0..8 {
        let (f, g) = (random_poly(&mut rng), random_poly(&mut rng));
        let want = ctx.pbw().star(&f, &g);
        for tw in &tws {
            let got = tw.twisted_star(&f, &g)?;
            if fail.is_none() && got != want {
                fail = Some(format!("{}: ({}) ⋆ ({}) = {} vs {}", tw.form, f.to_text(), g.to_text(), got.to_text(), want.to_text()));
            }
        }
        pairs.push(format!("({}) ⋆ ({})", f.to_text(), g.to_text()));
    }
    s.push(Check::new("random pairs: twisted ⋆ = U(g) ⋆", fail.is_none(), None, fail.unwrap_or_else(|| format!("{} pairs", pairs.len()))));
    s.value("pairs", pairs.join("; "));
    Ok(s)
}

/// For an abelian algebra every deformed object is the undeformed one.
fn degenerate_section(ctx: &RealizationContext, cfg: &RunConfig) -> Result<Section, CliError> {
    let n = ctx.dim();
    let k = cfg.order;
    let mut s = Section::new("abelian degeneracy");
    let hats = (0..n).all(|m| *ctx.xhat(m) == ctx.x(m) && *ctx.yhat(m) == ctx.x(m));
    s.push(Check::new("x̂ = ŷ = x", hats, None, ""));
    let cop = Coproducts::new(ctx, k);
    let prim = (0..n).all(|m| cop.delta_h(&ctx.d(m)).map(|t| t == delta0(&ctx.d(m), k)).unwrap_or(false));
    s.push(Check::new("Δ_H(d) = Δ_0(d)", prim, None, ""));
    for form in Form::ALL {
        let tw = Twist::build(form, ctx, k)?;
        let unit = TensorElement::one(n, 2, k);
        s.push(Check::new(format!("{form} = 1⊗1"), tw.rep == unit && tw.inv == unit, None, ""));
    }
    let data = AntipodeData::build(ctx, &[])?;
    s.push(Check::new("R = 0, V = 1", data.r.is_zero() && data.v == MomentumSeries::one(n, ctx.order()), None, ""));
    let (x1, x2) = (Polynomial::var(n, 0), Polynomial::var(n, n.min(2) - 1));
    s.push(Check::new("⋆ = pointwise product", ctx.pbw().star(&x1, &x2) == x1.mul(&x2), None, ""));
    Ok(s)
}

/// Runs every section in parallel; the order of the report is fixed.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Report, CliError> {
    let Setup { alg, ctx } = setup(cfg)?;
    let ctx = &ctx;
    type Job<'a> = Box<dyn FnOnce() -> Result<Vec<Section>, CliError> + Send + 'a>;
    let mut jobs: Vec<Job> = vec![
        Box::new(move || Ok(vec![realization_section(ctx)])),
        Box::new(move || Ok(vec![coproduct_section(ctx, cfg)?])),
    ];
    for form in Form::ALL {
        jobs.push(Box::new(move || Ok(vec![twist_section(ctx, cfg, form)?])));
    }
    jobs.push(Box::new(move || Ok(vec![equivalence_section(ctx, cfg)?])));
    jobs.push(Box::new(move || Ok(vec![star_section(ctx)])));
    jobs.push(Box::new(move || antipode_sections(ctx, cfg, &Form::ALL, true)));
    jobs.push(Box::new(move || Ok(vec![fuzz_section(ctx, cfg)?])));
    if alg.is_abelian() {
        jobs.push(Box::new(move || Ok(vec![degenerate_section(ctx, cfg)?])));
    }
    let results: Vec<Result<Vec<Section>, CliError>> = std::thread::scope(|sc| {
        let handles: Vec<_> = jobs.into_iter().map(|j| sc.spawn(j)).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut sections = vec![algebra_section(&alg)];
    for r in results {
        sections.extend(r?);
    }
    Ok(Report::new("verify", cfg, &alg, sections))
}

fn algebra_section(alg: &LieAlgebraDef) -> Section {
    let mut s = Section::new("algebra");
    s.push(Check::new("antisymmetry and Jacobi", alg.validate().is_ok(), None, ""));
    s.value("unimodular", alg.is_unimodular());
    s.value("abelian", alg.is_abelian());
    s
}

/// The U(g) star product of two polynomials and every twisted star.
pub fn cmd_star(cfg: &RunConfig, f: &str, g: &str) -> Result<Report, CliError> {
    let Setup { alg, ctx } = setup(cfg)?;
    let n = alg.dim;
    let (f, g) = (Polynomial::parse(n, f)?, Polynomial::parse(n, g)?);
    let want = ctx.pbw().star(&f, &g);
    let mut s = Section::new("star");
    s.value("oracle", want.to_text());
    for form in cfg.forms() {
        let got = Twist::build(form, &ctx, ctx.order())?.twisted_star(&f, &g)?;
        s.value(format!("twisted {form}"), got.to_text());
        s.push(Check::new(format!("{form} ⋆ = U(g) ⋆"), got == want, None, ""));
    }
    Ok(Report::new("star", cfg, &alg, vec![s]))
}

/// Parses `d2`, `D2` or `2` as the second momentum generator.
pub fn parse_generator(n: usize, s: &str) -> Result<usize, CliError> {
    let digits = s.trim().trim_start_matches(['d', 'D']);
    match digits.parse::<usize>() {
        Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
        _ => Err(CliError::Usage(format!("unknown generator {s:?} (expected d1..d{n})"))),
    }
}

/// Δ(d^mu) from both coproduct formulas and their difference.
pub fn cmd_coproduct(cfg: &RunConfig, generator: Option<&str>) -> Result<Report, CliError> {
    let Setup { alg, ctx } = setup(cfg)?;
    let n = alg.dim;
    let gens = match generator {
        Some(g) => vec![parse_generator(n, g)?],
        None => (0..n).collect(),
    };
    let cop = Coproducts::new(&ctx, cfg.order);
    let mut sections = Vec::new();
    for mu in gens {
        let p = MomentumSeries::var(n, cfg.order, mu);
        let (l, r) = (cop.delta_left(&p), cop.delta_right(&p));
        let diff = l.sub(&r);
        let mut s = Section::new(format!("Δ(d{})", mu + 1));
        s.value("left", &l);
        s.value("right", &r);
        s.value("difference", &diff);
        let c = diff.cert();
        let bad = diff.terms().iter().find(|(k, _)| k.iter().map(|m| m.d_deg()).sum::<u32>() as i32 <= c);
        s.push(Check::new("left = right", bad.is_none(), Some(c), bad.map(|(k, v)| format!("{} {}", fmt_q(v), hopfoid::tensor::render_key(k))).unwrap_or_default()));
        sections.push(s);
    }
    Ok(Report::new("coproduct", cfg, &alg, sections))
}

/// The twist representatives and their inverses, with the per-twist checks.
pub fn cmd_twist(cfg: &RunConfig) -> Result<Report, CliError> {
    let Setup { alg, ctx } = setup(cfg)?;
    let mut sections = Vec::new();
    for form in cfg.forms() {
        let tw = Twist::build(form, &ctx, cfg.order)?;
        let mut s = twist_section(&ctx, cfg, form)?;
        s.value("F", &tw.rep);
        s.value("F⁻¹", &tw.inv);
        sections.push(s);
    }
    Ok(Report::new("twist", cfg, &alg, sections))
}

pub fn cmd_antipode(cfg: &RunConfig) -> Result<Report, CliError> {
    let Setup { alg, ctx } = setup(cfg)?;
    let sections = antipode_sections(&ctx, cfg, &cfg.forms(), false)?;
    Ok(Report::new("antipode", cfg, &alg, sections))
}
