//! The completed Weyl algebra on x_1..x_n, d^1..d^n, truncated by d-degree,
//! and the polynomial algebra it acts on.
//!
//! Elements are stored normally ordered (x left of d). Beside the working
//! order every element carries a certificate: coefficients of d-degree up to
//! `cert` are exact. To propagate it through products each element also keeps
//! upper bounds, valid for the untruncated element, on `|x| - |d|` and on `|x|`
//! over all of its terms.

use crate::multiindex::MultiIndex;
use crate::rational::{fmt_q, parse_q, q, Q};
use crate::series::{term_text, MomentumSeries, SeriesError, Truncated};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Certificate value meaning "no term was ever truncated".
pub const EXACT: i32 = 1 << 24;
/// Bound value meaning "no bound is known".
pub const UNBOUNDED: i32 = 1 << 24;
/// Deficit bound of the zero element.
const NO_TERMS: i32 = -(1 << 24);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("certified order {cert} is below the required {needed}")]
    InsufficientOrder { cert: i32, needed: u32 },
    #[error("{0}")]
    Series(#[from] SeriesError),
    #[error("exponent {0} does not raise the d-degree of its convergence factor")]
    Convergence(String),
}

pub(crate) fn clamp_cert(c: i64) -> i32 {
    c.clamp(-1, EXACT as i64) as i32
}

pub(crate) fn add_bound(a: i32, b: i32) -> i32 {
    if a == NO_TERMS || b == NO_TERMS {
        NO_TERMS
    } else if a >= UNBOUNDED || b >= UNBOUNDED {
        UNBOUNDED
    } else {
        a + b
    }
}

/// Normally ordered monomial x^x d^d.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    pub x: MultiIndex,
    pub d: MultiIndex,
}

impl Mono {
    pub fn new(x: MultiIndex, d: MultiIndex) -> Self {
        Mono { x, d }
    }

    pub fn unit(n: usize) -> Self {
        Mono { x: MultiIndex::zero(n), d: MultiIndex::zero(n) }
    }

    pub fn x_deg(&self) -> u32 {
        self.x.degree()
    }

    pub fn d_deg(&self) -> u32 {
        self.d.degree()
    }

    /// |x| - |d|.
    pub fn deficit(&self) -> i32 {
        self.x_deg() as i32 - self.d_deg() as i32
    }

    pub fn render(&self) -> String {
        let xs = self.x.render("x");
        let ds = self.d.render("d");
        match (xs.is_empty(), ds.is_empty()) {
            (true, _) => ds,
            (_, true) => xs,
            _ => format!("{xs} {ds}"),
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.x_deg() + self.d_deg())
            .cmp(&(o.x_deg() + o.d_deg()))
            .then_with(|| self.x.cmp(&o.x))
            .then_with(|| self.d.cmp(&o.d))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.x, self.d)
    }
}

/// Normal ordering of d^a x^b: calls `f(k, c)` for every k <= min(a, b), the
/// term being c x^(b-k) d^(a-k) with c = prod a_i!/(a_i-k_i)! binom(b_i, k_i).
pub(crate) fn reorder_terms(a: &MultiIndex, b: &MultiIndex, mut f: impl FnMut(&MultiIndex, u128)) {
    let n = a.dim();
    let caps: Vec<u16> = (0..n).map(|i| a.get(i).min(b.get(i))).collect();
    let mut k = vec![0u16; n];
    loop {
        let mut c: u128 = 1;
        for (i, &ki) in k.iter().enumerate() {
            let (ai, bi, ki) = (a.get(i) as u128, b.get(i) as u128, ki as u128);
            for j in 0..ki {
                c = c * (ai - j) * (bi - j) / (j + 1);
            }
        }
        f(&MultiIndex::from_slice(&k), c);
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            if k[i] < caps[i] {
                k[i] += 1;
                break;
            }
            k[i] = 0;
            i += 1;
        }
    }
}

/// Product of two normally ordered monomials, keeping only results with
/// d-degree at most `budget`. Returns (monomial, integer coefficient).
pub(crate) fn mono_mul(u: &Mono, v: &Mono, budget: u32) -> Vec<(Mono, u128)> {
    let top = u.d_deg() + v.d_deg();
    let mut out = Vec::new();
    reorder_terms(&u.d, &v.x, |k, c| {
        if top - k.degree() > budget {
            return;
        }
        let x = u.x.add(&v.x).checked_sub(k).unwrap();
        let d = u.d.add(&v.d).checked_sub(k).unwrap();
        out.push((Mono { x, d }, c));
    });
    out
}

pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Q>, k: K, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone)]
pub struct WeylElement {
    dim: usize,
    order: u32,
    cert: i32,
    dmax: i32,
    xmax: i32,
    terms: BTreeMap<Mono, Q>,
}

impl WeylElement {
    pub fn zero(dim: usize, order: u32) -> Self {
        WeylElement { dim, order, cert: EXACT, dmax: NO_TERMS, xmax: 0, terms: BTreeMap::new() }
    }

    /// Builds an element from explicit terms, all of which are the whole
    /// element (nothing truncated beyond what `order` drops).
    pub fn from_terms(dim: usize, order: u32, terms: impl IntoIterator<Item = (Mono, Q)>) -> Self {
        let mut w = Self::zero(dim, order);
        for (m, c) in terms {
            w.push_exact(m, c);
        }
        w
    }

    fn push_exact(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        self.dmax = self.dmax.max(m.deficit());
        self.xmax = self.xmax.max(m.x_deg() as i32);
        if m.d_deg() > self.order {
            self.cert = self.cert.min(self.order as i32);
            return;
        }
        accumulate(&mut self.terms, m, c);
    }

    pub fn one(dim: usize, order: u32) -> Self {
        Self::monomial(dim, order, Mono::unit(dim), Q::one())
    }

    pub fn scalar(dim: usize, order: u32, c: Q) -> Self {
        Self::monomial(dim, order, Mono::unit(dim), c)
    }

    pub fn monomial(dim: usize, order: u32, m: Mono, c: Q) -> Self {
        Self::from_terms(dim, order, [(m, c)])
    }

    /// The coordinate x_i (0-based).
    pub fn x(dim: usize, order: u32, i: usize) -> Self {
        Self::monomial(dim, order, Mono::new(MultiIndex::unit(dim, i), MultiIndex::zero(dim)), Q::one())
    }

    /// The momentum d^i (0-based).
    pub fn d(dim: usize, order: u32, i: usize) -> Self {
        Self::monomial(dim, order, Mono::new(MultiIndex::zero(dim), MultiIndex::unit(dim, i)), Q::one())
    }

    pub fn from_momentum(p: &MomentumSeries) -> Self {
        let n = p.dim();
        let mut w = Self::zero(n, p.order());
        for (m, c) in p.terms() {
            w.push_exact(Mono::new(MultiIndex::zero(n), m.clone()), c.clone());
        }
        // the truncated tail sits in d-degree above the certificate
        w.cert = p.cert() as i32;
        w.dmax = w.dmax.max(-(w.cert + 1));
        w
    }

    pub fn from_polynomial(p: &Polynomial, order: u32) -> Self {
        let n = p.dim();
        Self::from_terms(
            n,
            order,
            p.terms().iter().map(|(m, c)| (Mono::new(m.clone(), MultiIndex::zero(n)), c.clone())),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree up to which coefficients are exact, capped at the order; -1
    /// when nothing is certified.
    pub fn cert(&self) -> i32 {
        self.cert.min(self.order as i32)
    }

    /// Raw certificate, `EXACT` when nothing has been truncated.
    pub fn raw_cert(&self) -> i32 {
        self.cert
    }

    pub fn is_complete(&self) -> bool {
        self.cert >= EXACT
    }

    pub fn deficit_bound(&self) -> i32 {
        self.dmax
    }

    pub fn x_bound(&self) -> i32 {
        self.xmax
    }

    /// Overrides the certificate; used where a structural argument gives a
    /// better bound than the generic propagation rule.
    pub fn with_cert(mut self, cert: i32) -> Self {
        self.cert = cert.clamp(-1, EXACT);
        self
    }

    pub fn with_bounds(mut self, dmax: i32, xmax: i32) -> Self {
        self.dmax = dmax;
        self.xmax = xmax;
        self
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Q> {
        &self.terms
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_d_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.d_deg()).max().unwrap_or(0)
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.x_deg()).max().unwrap_or(0)
    }

    fn check(&self, o: &Self) -> Result<(), WeylError> {
        if self.dim != o.dim {
            return Err(WeylError::DimMismatch(self.dim, o.dim));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let order = self.order.min(o.order);
        let mut r = self.reorder(order);
        for (m, c) in &o.terms {
            if m.d_deg() <= order {
                accumulate(&mut r.terms, m.clone(), c.clone());
            }
        }
        r.cert = r.cert.min(o.cert);
        if o.order > order && o.max_d_degree() > order {
            r.cert = r.cert.min(order as i32);
        }
        r.dmax = r.dmax.max(o.dmax);
        r.xmax = r.xmax.max(o.xmax);
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut r = self.clone();
        if c.is_zero() {
            r.terms.clear();
            return r;
        }
        for v in r.terms.values_mut() {
            *v *= c;
        }
        r
    }

    /// Lowers (or raises) the working order, keeping the certificate honest.
    pub fn reorder(&self, order: u32) -> Self {
        let mut r = self.clone();
        r.order = order;
        if order < self.order {
            let before = r.terms.len();
            r.terms.retain(|m, _| m.d_deg() <= order);
            if r.terms.len() != before || !self.is_complete() {
                r.cert = r.cert.min(order as i32);
            }
        }
        r
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, WeylError> {
        self.check(o)?;
        Ok(self.mul(o))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let order = self.order.min(o.order);
        let mut r = Self::zero(self.dim, order);
        let mut dropped = false;
        for (mu, cu) in &self.terms {
            for (mv, cv) in &o.terms {
                let top = mu.d_deg() + mv.d_deg();
                let k_max = mu.d.degree().min(mv.x.degree());
                if top.saturating_sub(k_max) > order {
                    dropped = true;
                    continue;
                }
                let cc = cu * cv;
                let prods = mono_mul(mu, mv, order);
                if prods.len() as u32 != count_k(&mu.d, &mv.x) {
                    dropped = true;
                }
                for (m, c) in prods {
                    accumulate(&mut r.terms, m, &cc * Q::from_integer(c.into()));
                }
            }
        }
        let mut cert = o.cert as i64;
        if !self.is_complete() {
            cert = cert.min(self.cert as i64 - o.dmax as i64);
        }
        if dropped || self.order > order && !self.is_complete() || o.order > order && !o.is_complete() {
            cert = cert.min(order as i64);
        }
        r.cert = clamp_cert(cert);
        r.dmax = add_bound(self.dmax, o.dmax);
        r.xmax = add_bound(self.xmax, o.xmax);
        r
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.dim, self.order);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// The undeformed antipode: the antihomomorphism fixing x and negating d.
    pub fn s0(&self) -> Self {
        let mut r = Self::zero(self.dim, self.order);
        for (m, c) in &self.terms {
            let sign = if m.d_deg() % 2 == 0 { c.clone() } else { -c.clone() };
            let dm = Mono::new(MultiIndex::zero(self.dim), m.d.clone());
            let xm = Mono::new(m.x.clone(), MultiIndex::zero(self.dim));
            for (p, k) in mono_mul(&dm, &xm, u32::MAX) {
                accumulate(&mut r.terms, p, &sign * Q::from_integer(k.into()));
            }
        }
        // a truncated term x^a d^b (|b| > cert) lands in degrees >= |b| - |a|
        r.cert = if self.is_complete() {
            EXACT
        } else {
            clamp_cert(self.cert as i64 - self.xmax as i64)
        };
        r.dmax = self.dmax;
        r.xmax = self.xmax;
        r
    }

    /// Terms with no d: the value of the element acting on 1.
    pub fn x_part(&self) -> Polynomial {
        let mut p = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            if m.d.is_zero() {
                p.add_term(m.x.clone(), c.clone());
            }
        }
        p
    }

    /// First stored term with nonzero x-part and d-degree <= `upto`.
    pub fn x_contamination(&self, upto: u32) -> Option<(Mono, Q)> {
        self.terms
            .iter()
            .find(|(m, _)| !m.x.is_zero() && m.d_deg() <= upto)
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    /// The pure-momentum terms as a series with the same order and certificate.
    pub fn momentum_part(&self) -> MomentumSeries {
        let mut s = MomentumSeries::zero(self.dim, self.order);
        for (m, c) in &self.terms {
            if m.x.is_zero() {
                s.add_term(m.d.clone(), c.clone());
            }
        }
        s.with_cert(self.cert().max(0) as u32)
    }

    /// First term (canonical order) with d-degree <= `upto` where the two
    /// elements differ.
    pub fn first_difference(&self, o: &Self, upto: u32) -> Option<(Mono, Q, Q)> {
        let mut keys: Vec<&Mono> = self.terms.keys().chain(o.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter(|m| m.d_deg() <= upto)
            .map(|m| (m.clone(), self.coeff(m), o.coeff(m)))
            .find(|(_, a, b)| a != b)
    }

    /// Acts on a polynomial as a differential operator.
    pub fn act(&self, f: &Polynomial) -> Result<Polynomial, WeylError> {
        let deg = f.degree();
        if self.cert() < deg as i32 && !self.is_complete() {
            return Err(WeylError::InsufficientOrder { cert: self.cert(), needed: deg });
        }
        Ok(self.act_unchecked(f))
    }

    pub(crate) fn act_unchecked(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            for (fm, fc) in f.terms() {
                if let Some((r, k)) = apply_mono(m, fm) {
                    out.add_term(r, c * fc * Q::from_integer(k.into()));
                }
            }
        }
        out
    }
}

fn count_k(a: &MultiIndex, b: &MultiIndex) -> u32 {
    (0..a.dim()).map(|i| a.get(i).min(b.get(i)) as u32 + 1).product()
}

/// x^a d^b applied to x^m.
pub(crate) fn apply_mono(w: &Mono, m: &MultiIndex) -> Option<(MultiIndex, u128)> {
    let rest = m.checked_sub(&w.d)?;
    let mut k: u128 = 1;
    for i in 0..m.dim() {
        for j in 0..w.d.get(i) as u128 {
            k *= m.get(i) as u128 - j;
        }
    }
    Some((rest.add(&w.x), k))
}

/// The Fock action on polynomials.
pub fn fock_act(w: &WeylElement, f: &Polynomial) -> Result<Polynomial, WeylError> {
    w.act(f)
}

impl PartialEq for WeylElement {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.terms == o.terms
    }
}

impl Eq for WeylElement {}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| term_text(c, &m.render())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[K={} cert={}] {}", self.order, self.cert(), self)
    }
}

impl Truncated for WeylElement {
    fn unit_like(&self) -> Self {
        Self::one(self.dim, self.order)
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.dim, self.order)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn scaled(&self, c: &Q) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn constant_coeff(&self) -> Q {
        self.coeff(&Mono::unit(self.dim))
    }
    fn nilpotency_bound(&self) -> usize {
        // products of elements without constant term can keep d-degree 0
        // only through x-terms, which the callers exclude
        self.order as usize + 1
    }
}

/// Polynomial in the commuting coordinates x_1..x_n.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("unexpected {found:?} at offset {at} in polynomial")]
    Unexpected { at: usize, found: String },
    #[error("variable x{0} out of range 1..={1}")]
    Variable(usize, usize),
    #[error("{0}")]
    Rational(#[from] crate::rational::RationalParseError),
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Polynomial { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        Self::monomial(dim, MultiIndex::zero(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Q::one())
    }

    pub fn monomial(dim: usize, m: MultiIndex, c: Q) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(m, c);
        p
    }

    pub fn var(dim: usize, i: usize) -> Self {
        Self::monomial(dim, MultiIndex::unit(dim, i), Q::one())
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, Q)>) -> Self {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Q> {
        &self.terms
    }

    pub fn coeff(&self, m: &MultiIndex) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Q) {
        accumulate(&mut self.terms, m, c);
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                r.add_term(a.add(b), ca * cb);
            }
        }
        r
    }

    /// Homogeneous component of degree `k`.
    pub fn homogeneous(&self, k: u32) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().filter(|(m, _)| m.degree() == k).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Compact text: descending degree, `1/2*x1^2*x3`, signs folded in.
    pub fn to_text(&self) -> String {
        render_compact(&self.terms, "x")
    }

    /// Parses the compact text form; see the README for the grammar.
    pub fn parse(dim: usize, s: &str) -> Result<Self, PolyParseError> {
        parse_compact(dim, s, 'x')
    }
}

pub(crate) fn render_compact(terms: &BTreeMap<MultiIndex, Q>, var: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut keys: Vec<&MultiIndex> = terms.keys().collect();
    keys.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
    let mut out = String::new();
    for (i, m) in keys.into_iter().enumerate() {
        let c = &terms[m];
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body: Vec<String> = m
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| if e == 1 { format!("{var}{}", j + 1) } else { format!("{var}{}^{e}", j + 1) })
            .collect();
        if body.is_empty() {
            out.push_str(&fmt_q(&mag));
        } else if mag.is_one() {
            out.push_str(&body.join("*"));
        } else {
            out.push_str(&format!("{}*{}", fmt_q(&mag), body.join("*")));
        }
    }
    out
}

pub(crate) fn parse_compact(dim: usize, s: &str, var: char) -> Result<Polynomial, PolyParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let unexpected = |i: usize| PolyParseError::Unexpected {
        at: i,
        found: if i < chars.len() { chars[i].to_string() } else { "end of input".into() },
    };
    let read_uint = |i: &mut usize| -> Option<String> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        (*i > start).then(|| chars[start..*i].iter().collect())
    };
    let mut poly = Polynomial::zero(dim);
    let mut first = true;
    loop {
        skip_ws(&mut i);
        let mut sign = Q::one();
        if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if !first {
            return Err(unexpected(i));
        }
        first = false;
        // term: factor ('*' factor)*
        let mut coeff = sign;
        let mut mono = MultiIndex::zero(dim);
        loop {
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == var {
                i += 1;
                let idx: usize = read_uint(&mut i).ok_or_else(|| unexpected(i))?.parse().map_err(|_| unexpected(i))?;
                if idx < 1 || idx > dim {
                    return Err(PolyParseError::Variable(idx, dim));
                }
                let mut e = 1i32;
                skip_ws(&mut i);
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    skip_ws(&mut i);
                    e = read_uint(&mut i).ok_or_else(|| unexpected(i))?.parse().map_err(|_| unexpected(i))?;
                }
                mono = mono.with(idx - 1, e).unwrap();
            } else if i < chars.len() && chars[i].is_ascii_digit() {
                let num = read_uint(&mut i).unwrap();
                skip_ws(&mut i);
                let lit = if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    skip_ws(&mut i);
                    let den = read_uint(&mut i).ok_or_else(|| unexpected(i))?;
                    format!("{num}/{den}")
                } else {
                    num
                };
                coeff *= parse_q(&lit)?;
            } else {
                return Err(unexpected(i));
            }
            skip_ws(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                continue;
            }
            // juxtaposition also multiplies
            if i < chars.len() && (chars[i] == var || chars[i].is_ascii_digit()) {
                continue;
            }
            break;
        }
        poly.add_term(mono, coeff);
        skip_ws(&mut i);
        if i == chars.len() {
            return Ok(poly);
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn x(i: usize) -> WeylElement {
        WeylElement::x(3, 6, i)
    }
    fn d(i: usize) -> WeylElement {
        WeylElement::d(3, 6, i)
    }

    #[test]
    fn canonical_commutation() {
        assert_eq!(d(0).mul(&x(0)), x(0).mul(&d(0)).add(&WeylElement::one(3, 6)));
        assert_eq!(d(0).mul(&x(1)), x(1).mul(&d(0)));
        assert_eq!(x(0).mul(&d(0)).to_string(), "1 * x1 d1");
    }

    #[test]
    fn heisenberg_witness_commutes() {
        let a = x(2).mul(&d(1));
        let b = x(2).mul(&d(0));
        assert!(a.commutator(&b).is_zero());
    }

    #[test]
    fn higher_reordering() {
        // d^2 x^2 = x^2 d^2 + 4 x d + 2
        let lhs = d(0).pow(2).mul(&x(0).pow(2));
        assert_eq!(lhs.to_string(), "2 + 4 * x1 d1 + 1 * x1^2 d1^2");
    }

    #[test]
    fn s0_values() {
        let w = x(0).mul(&d(0));
        assert_eq!(w.s0(), w.add(&WeylElement::one(3, 6)).neg());
        assert_eq!(x(0).s0(), x(0));
        assert_eq!(w.s0().s0(), w);
    }

    #[test]
    fn fock_examples() {
        let f = Polynomial::parse(3, "x1*x2").unwrap();
        assert_eq!(d(0).act(&f).unwrap(), Polynomial::var(3, 1));
        let xh1 = x(0).add(&x(2).mul(&d(1)).scale(&qr(1, 2)));
        let r = xh1.act(&Polynomial::var(3, 1)).unwrap();
        assert_eq!(r.to_text(), "x1*x2 + 1/2*x3");
        let w = x(0).mul(&d(0)).add(&x(1));
        assert_eq!(w.act(&Polynomial::one(3)).unwrap(), Polynomial::var(3, 1));
    }

    #[test]
    fn certificate_propagation() {
        let p = MomentumSeries::var(3, 2, 0);
        let w = WeylElement::from_momentum(&p);
        assert_eq!(w.cert(), 2);
        // multiplying a truncated series by x on the right loses one degree
        assert_eq!(w.mul(&x(0)).cert(), 1);
        assert_eq!(x(0).mul(&w).cert(), 2);
        assert!(x(0).mul(&x(1)).is_complete());
        let too_short = w.act(&Polynomial::parse(3, "x1^3").unwrap());
        assert!(matches!(too_short, Err(WeylError::InsufficientOrder { .. })));
    }

    #[test]
    fn polynomial_text() {
        let p = Polynomial::parse(3, "1/2*x3 + x1*x2 - 2 x1^2").unwrap();
        assert_eq!(p.to_text(), "-2*x1^2 + x1*x2 + 1/2*x3");
        assert_eq!(Polynomial::parse(3, &p.to_text()).unwrap(), p);
        assert_eq!(Polynomial::parse(2, "0").unwrap().to_text(), "0");
        assert!(Polynomial::parse(2, "x3").is_err());
        assert!(Polynomial::parse(2, "x1 +").is_err());
        assert!(matches!(
            Polynomial::parse(2, "1/0*x1"),
            Err(PolyParseError::Rational(crate::rational::RationalParseError::ZeroDenominator))
        ));
    }
}
