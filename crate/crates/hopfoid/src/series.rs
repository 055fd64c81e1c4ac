//! Truncated commutative power series in the momenta d^1..d^n, matrices of
//! such series, and the nilpotent exp/log/BCH toolkit shared by every
//! truncated algebra in the crate.

use crate::multiindex::MultiIndex;
use crate::rational::{binomial, factorial, fmt_q, one, q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("precondition on constant term violated: {0}")]
    ConstantTerm(String),
    #[error("element is not nilpotent within {0} powers")]
    NotNilpotent(usize),
}

/// B_N with x/(e^x - 1) = sum B_N x^N / N!, so B_1 = -1/2.
///
/// Computed as the reciprocal of the series (e^x - 1)/x = sum x^k/(k+1)!.
pub fn bernoulli(n: u32) -> Q {
    bernoulli_table(n).pop().unwrap()
}

/// B_0..=B_n in one pass.
pub fn bernoulli_table(n: u32) -> Vec<Q> {
    let a: Vec<Q> = (0..=n)
        .map(|k| Q::new(1.into(), factorial(k + 1)))
        .collect();
    // c = 1/a as power series; then B_k = k! c_k
    let mut c: Vec<Q> = Vec::with_capacity(n as usize + 1);
    for k in 0..=n as usize {
        let mut s = if k == 0 { one() } else { Q::zero() };
        for j in 1..=k {
            s -= &a[j] * &c[k - j];
        }
        c.push(s);
    }
    c.into_iter()
        .enumerate()
        .map(|(k, ck)| ck * Q::from_integer(factorial(k as u32)))
        .collect()
}

/// Element of the completed symmetric algebra on the momenta, truncated at
/// total degree `order`; coefficients of degree <= `cert` are exact.
#[derive(Clone)]
pub struct MomentumSeries {
    dim: usize,
    order: u32,
    cert: u32,
    terms: BTreeMap<MultiIndex, Q>,
}

impl MomentumSeries {
    pub fn zero(dim: usize, order: u32) -> Self {
        MomentumSeries { dim, order, cert: order, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, order: u32, c: Q) -> Self {
        let mut s = Self::zero(dim, order);
        s.add_term(MultiIndex::zero(dim), c);
        s
    }

    pub fn one(dim: usize, order: u32) -> Self {
        Self::constant(dim, order, one())
    }

    /// The generator d^i (0-based).
    pub fn var(dim: usize, order: u32, i: usize) -> Self {
        Self::monomial(dim, order, MultiIndex::unit(dim, i), one())
    }

    pub fn monomial(dim: usize, order: u32, m: MultiIndex, c: Q) -> Self {
        let mut s = Self::zero(dim, order);
        s.add_term(m, c);
        s
    }

    pub fn from_terms(dim: usize, order: u32, terms: impl IntoIterator<Item = (MultiIndex, Q)>) -> Self {
        let mut s = Self::zero(dim, order);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn cert(&self) -> u32 {
        self.cert
    }

    pub fn with_cert(mut self, cert: u32) -> Self {
        self.cert = cert.min(self.order);
        self
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&MultiIndex::zero(self.dim))
    }

    /// Adds `c * m`, dropping it if beyond the truncation order.
    pub fn add_term(&mut self, m: MultiIndex, c: Q) {
        if c.is_zero() || m.degree() > self.order {
            return;
        }
        match self.terms.entry(m) {
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

    fn check(&self, o: &Self) -> Result<(), SeriesError> {
        if self.dim != o.dim {
            return Err(SeriesError::DimMismatch(self.dim, o.dim));
        }
        if self.order != o.order {
            return Err(SeriesError::OrderMismatch(self.order, o.order));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r.cert = self.cert.min(o.cert);
        Ok(r)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let mut r = Self::zero(self.dim, self.order);
        for (a, ca) in &self.terms {
            let room = self.order - a.degree();
            for (b, cb) in &o.terms {
                if b.degree() > room {
                    continue;
                }
                r.add_term(a.add(b), ca * cb);
            }
        }
        r.cert = self.cert.min(o.cert);
        Ok(r)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("series add")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("series mul")
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut r = Self::zero(self.dim, self.order);
        r.cert = self.cert;
        if c.is_zero() {
            return r;
        }
        for (m, a) in &self.terms {
            r.terms.insert(m.clone(), a * c);
        }
        r
    }

    /// Formal derivative with respect to d^rho (0-based).
    pub fn partial(&self, rho: usize) -> Result<Self, SeriesError> {
        if rho >= self.dim {
            return Err(SeriesError::IndexOutOfRange(rho, self.dim));
        }
        let mut r = Self::zero(self.dim, self.order);
        for (m, c) in &self.terms {
            let e = m.get(rho);
            if e > 0 {
                r.add_term(m.with(rho, -1).unwrap(), c * q(e as i64));
            }
        }
        r.cert = self.cert.saturating_sub(1);
        Ok(r)
    }

    /// Multiplies by a monomial d^m (used when x-contraction is absent).
    pub fn shift(&self, m: &MultiIndex) -> Self {
        let mut r = Self::zero(self.dim, self.order);
        r.cert = self.cert;
        for (a, c) in &self.terms {
            r.add_term(a.add(m), c.clone());
        }
        r
    }

    pub fn homogeneous(&self, k: u32) -> Self {
        let mut r = Self::zero(self.dim, self.order);
        r.cert = self.cert;
        for (m, c) in &self.terms {
            if m.degree() == k {
                r.terms.insert(m.clone(), c.clone());
            }
        }
        r
    }

    /// Drops every term of degree above `k` and lowers the order to `k`.
    pub fn truncate(&self, k: u32) -> Self {
        let mut r = Self::zero(self.dim, k.min(self.order));
        r.cert = self.cert.min(r.order);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    /// Re-homes the series at another working order, keeping its certificate.
    pub fn reorder(&self, k: u32) -> Self {
        let mut r = Self::zero(self.dim, k);
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c.clone());
        }
        r.cert = self.cert.min(k);
        r
    }

    /// First monomial (in canonical order) of degree <= `upto` where the two
    /// series differ, with both coefficients.
    pub fn first_difference(&self, o: &Self, upto: u32) -> Option<(MultiIndex, Q, Q)> {
        let mut keys: Vec<&MultiIndex> = self.terms.keys().chain(o.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for m in keys {
            if m.degree() > upto {
                continue;
            }
            let (a, b) = (self.coeff(m), o.coeff(m));
            if a != b {
                return Some((m.clone(), a, b));
            }
        }
        None
    }

    pub fn agrees(&self, o: &Self, upto: u32) -> bool {
        self.first_difference(o, upto).is_none()
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        exp_nilpotent(self)
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        log_unipotent(self)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(SeriesError::ConstantTerm("zero constant term".into()));
        }
        let c0i = c0.recip();
        let n = self.scale(&c0i).sub(&Self::one(self.dim, self.order));
        // 1/(1+n) = sum (-n)^k
        let mut acc = Self::one(self.dim, self.order);
        let mut p = Self::one(self.dim, self.order);
        for _ in 0..=self.order {
            p = p.mul(&n.neg());
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p);
        }
        Ok(acc.scale(&c0i).with_cert(self.cert))
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

/// Equality of values; the certificate is bookkeeping and is ignored.
impl PartialEq for MomentumSeries {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.order == o.order && self.terms == o.terms
    }
}

impl Eq for MomentumSeries {}

impl fmt::Display for MomentumSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| term_text(c, &m.render("d")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for MomentumSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[K={} cert={}] {}", self.order, self.cert, self)
    }
}

/// `c * body`, or just `c` for the unit monomial.
pub(crate) fn term_text(c: &Q, body: &str) -> String {
    if body.is_empty() {
        fmt_q(c)
    } else {
        format!("{} * {}", fmt_q(c), body)
    }
}

/// The minimal interface needed to run nilpotent exponentials, logarithms and
/// Baker-Campbell-Hausdorff products inside a truncated algebra.
pub trait Truncated: Clone {
    fn unit_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scaled(&self, c: &Q) -> Self;
    fn vanishes(&self) -> bool;
    fn constant_coeff(&self) -> Q;
    /// Upper bound on how many powers of a nilpotent element can be nonzero.
    fn nilpotency_bound(&self) -> usize;
}

impl Truncated for MomentumSeries {
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
        self.constant_term()
    }
    fn nilpotency_bound(&self) -> usize {
        self.order as usize + 1
    }
}

/// sum_k a^k / k! for `a` without constant term.
pub fn exp_nilpotent<T: Truncated>(a: &T) -> Result<T, SeriesError> {
    if !a.constant_coeff().is_zero() {
        return Err(SeriesError::ConstantTerm(format!(
            "exp needs zero constant term, found {}",
            fmt_q(&a.constant_coeff())
        )));
    }
    let bound = a.nilpotency_bound();
    let mut acc = a.unit_like();
    let mut p = a.unit_like();
    for k in 1..=bound + 1 {
        p = p.times(a).scaled(&Q::new(1.into(), k.into()));
        if p.vanishes() {
            return Ok(acc);
        }
        acc = acc.plus(&p);
    }
    Err(SeriesError::NotNilpotent(bound))
}

/// sum_k (-1)^(k+1) n^k / k for `a = 1 + n`.
pub fn log_unipotent<T: Truncated>(a: &T) -> Result<T, SeriesError> {
    if !a.constant_coeff().is_one() {
        return Err(SeriesError::ConstantTerm(format!(
            "log needs constant term 1, found {}",
            fmt_q(&a.constant_coeff())
        )));
    }
    let n = a.plus(&a.unit_like().scaled(&q(-1)));
    let bound = a.nilpotency_bound();
    let mut acc = a.zero_like();
    let mut p = a.unit_like();
    for k in 1..=bound + 1 {
        p = p.times(&n);
        if p.vanishes() {
            return Ok(acc);
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = acc.plus(&p.scaled(&Q::new(sign.into(), (k as i64).into())));
    }
    Err(SeriesError::NotNilpotent(bound))
}

/// log(e^a e^b) in the truncated algebra.
pub fn bch_product<T: Truncated>(a: &T, b: &T) -> Result<T, SeriesError> {
    for (name, x) in [("A", a), ("B", b)] {
        if !x.constant_coeff().is_zero() {
            return Err(SeriesError::ConstantTerm(format!(
                "{name} has constant term {}",
                fmt_q(&x.constant_coeff())
            )));
        }
    }
    log_unipotent(&exp_nilpotent(a)?.times(&exp_nilpotent(b)?))
}

/// n x n matrix of momentum series; row = upper index, column = lower index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixSeries {
    n: usize,
    entries: Vec<MomentumSeries>,
}

impl MatrixSeries {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> MomentumSeries) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(f(r, c));
            }
        }
        MatrixSeries { n, entries }
    }

    pub fn zero(n: usize, order: u32) -> Self {
        Self::from_fn(n, |_, _| MomentumSeries::zero(n, order))
    }

    pub fn identity(n: usize, order: u32) -> Self {
        Self::from_fn(n, |r, c| {
            if r == c {
                MomentumSeries::one(n, order)
            } else {
                MomentumSeries::zero(n, order)
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.entries.first().map(|e| e.order()).unwrap_or(0)
    }

    pub fn cert(&self) -> u32 {
        self.entries.iter().map(|e| e.cert()).min().unwrap_or(0)
    }

    pub fn get(&self, r: usize, c: usize) -> &MomentumSeries {
        &self.entries[r * self.n + c]
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.n, |r, c| self.get(r, c).add(o.get(r, c)))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.n, |r, c| self.get(r, c).sub(o.get(r, c)))
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::from_fn(self.n, |r, c| self.get(r, c).scale(k))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let order = self.order();
        Self::from_fn(n, |r, c| {
            let mut acc = MomentumSeries::zero(n, order);
            let mut cert = order;
            for k in 0..n {
                let (a, b) = (self.get(r, k), o.get(k, c));
                cert = cert.min(a.cert()).min(b.cert());
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b));
            }
            acc.with_cert(cert)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Constant-term matrix as rationals.
    pub fn constant_part(&self) -> Vec<Vec<Q>> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c).constant_term()).collect())
            .collect()
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_part();
        if c0.iter().flatten().any(|x| !x.is_zero()) {
            return Err(SeriesError::ConstantTerm(format!(
                "matrix exp needs zero constant part, found {}",
                render_rational_matrix(&c0)
            )));
        }
        exp_nilpotent(self)
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_part();
        let id = identity_rational(self.n);
        if c0 != id {
            return Err(SeriesError::ConstantTerm(format!(
                "matrix log needs identity constant part, found {}",
                render_rational_matrix(&c0)
            )));
        }
        log_unipotent(self)
    }

    pub fn inv(&self) -> Result<Self, SeriesError> {
        let c0 = self.constant_part();
        let c0i = invert_rational(&c0).ok_or_else(|| {
            SeriesError::ConstantTerm(format!(
                "singular constant part {}",
                render_rational_matrix(&c0)
            ))
        })?;
        let order = self.order();
        let c0i_m = Self::from_fn(self.n, |r, c| MomentumSeries::constant(self.n, order, c0i[r][c].clone()));
        // M = C0 (1 + N) with N = C0^{-1} M - 1, so M^{-1} = (sum (-N)^k) C0^{-1}
        let n_part = c0i_m.mul(self).sub(&Self::identity(self.n, order));
        let mut acc = Self::identity(self.n, order);
        let mut p = Self::identity(self.n, order);
        for _ in 0..=order {
            p = p.mul(&n_part.scale(&q(-1)));
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p);
        }
        Ok(acc.mul(&c0i_m))
    }

    pub fn first_difference(&self, o: &Self, upto: u32) -> Option<(usize, usize, MultiIndex, Q, Q)> {
        for r in 0..self.n {
            for c in 0..self.n {
                if let Some((m, a, b)) = self.get(r, c).first_difference(o.get(r, c), upto) {
                    return Some((r, c, m, a, b));
                }
            }
        }
        None
    }

    pub fn entries(&self) -> &[MomentumSeries] {
        &self.entries
    }
}

impl Truncated for MatrixSeries {
    fn unit_like(&self) -> Self {
        Self::identity(self.n, self.order())
    }
    fn zero_like(&self) -> Self {
        Self::zero(self.n, self.order())
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
    /// Zero when the constant part is zero, one when it is the identity;
    /// anything else is reported as a non-scalar constant.
    fn constant_coeff(&self) -> Q {
        let c0 = self.constant_part();
        let n = self.n;
        let d = c0[0][0].clone();
        let scalar = (0..n).all(|r| (0..n).all(|c| if r == c { c0[r][c] == d } else { c0[r][c].is_zero() }));
        if scalar {
            d
        } else {
            q(-1)
        }
    }
    fn nilpotency_bound(&self) -> usize {
        self.order() as usize + 1
    }
}

fn identity_rational(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|r| (0..n).map(|c| if r == c { one() } else { Q::zero() }).collect())
        .collect()
}

fn render_rational_matrix(m: &[Vec<Q>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(fmt_q).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Gauss-Jordan inverse over Q.
pub fn invert_rational(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut inv = identity_rational(n);
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &a[col][j] * &f;
                    a[r][j] -= t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// binom(n, k) as a rational, for callers that mix it into series arithmetic.
pub fn binom_q(n: u32, k: u32) -> Q {
    Q::from_integer(binomial(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn d(n: usize, k: u32, i: usize) -> MomentumSeries {
        MomentumSeries::var(n, k, i)
    }

    #[test]
    fn first_bernoulli_numbers() {
        let b = bernoulli_table(6);
        assert_eq!(b[0], q(1));
        assert_eq!(b[1], qr(-1, 2));
        assert_eq!(b[2], qr(1, 6));
        assert_eq!(b[3], q(0));
        assert_eq!(b[4], qr(-1, 30));
        assert_eq!(b[6], qr(1, 42));
    }

    #[test]
    fn mul_truncates() {
        let one = MomentumSeries::one(2, 2);
        let a = one.add(&d(2, 2, 0));
        let b = one.sub(&d(2, 2, 0));
        let expected = one.sub(&d(2, 2, 0).mul(&d(2, 2, 0)));
        assert_eq!(a.mul(&b), expected);
        assert!(d(2, 1, 0).mul(&d(2, 1, 1)).is_zero());
        assert_eq!(a.mul(&one), a);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = d(2, 2, 0);
        let b = d(2, 3, 0);
        assert_eq!(a.checked_mul(&b), Err(SeriesError::OrderMismatch(2, 3)));
        assert_eq!(d(2, 2, 0).checked_mul(&d(3, 2, 0)), Err(SeriesError::DimMismatch(2, 3)));
    }

    #[test]
    fn partials() {
        let x = d(2, 3, 0);
        let y = d(2, 3, 1);
        assert_eq!(x.mul(&x).partial(0).unwrap(), x.scale(&q(2)));
        assert!(y.partial(0).unwrap().is_zero());
        assert_eq!(x.mul(&y).partial(1).unwrap(), x);
        assert_eq!(x.partial(0).unwrap().cert(), 2);
        assert!(x.partial(5).is_err());
    }

    #[test]
    fn exp_log_inverse() {
        let a = d(2, 5, 0).add(&d(2, 5, 1).mul(&d(2, 5, 0)).scale(&qr(1, 3)));
        let e = a.exp().unwrap();
        assert_eq!(e.log().unwrap(), a);
        assert_eq!(e.mul(&e.inv().unwrap()), MomentumSeries::one(2, 5));
        assert!(MomentumSeries::one(2, 5).exp().is_err());
    }

    #[test]
    fn bch_second_order() {
        let a = d(2, 3, 0);
        let b = d(2, 3, 1);
        // commuting arguments: plain sum
        assert_eq!(bch_product(&a, &b).unwrap(), a.add(&b));
    }

    #[test]
    fn matrix_exp_of_zero_and_inverse() {
        let z = MatrixSeries::zero(2, 3);
        assert_eq!(z.exp().unwrap(), MatrixSeries::identity(2, 3));
        let n = MatrixSeries::from_fn(2, |r, c| if r == 0 && c == 1 { d(2, 3, 0) } else { MomentumSeries::zero(2, 3) });
        let m = MatrixSeries::identity(2, 3).add(&n);
        let inv = m.inv().unwrap();
        assert_eq!(inv, MatrixSeries::identity(2, 3).sub(&n));
        assert_eq!(m.mul(&inv), MatrixSeries::identity(2, 3));
    }

    #[test]
    fn matrix_log_precondition() {
        let m = MatrixSeries::identity(2, 2).scale(&q(2));
        assert!(matches!(m.log(), Err(SeriesError::ConstantTerm(_))));
        assert!(matches!(m.exp(), Err(SeriesError::ConstantTerm(_))));
    }

    #[test]
    fn display_form() {
        let s = MomentumSeries::one(2, 2).add(&d(2, 2, 1).scale(&qr(-1, 2)));
        assert_eq!(s.to_string(), "1 + -1/2 * d2");
    }
}
