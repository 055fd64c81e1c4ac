//! Tensor powers of the truncated Weyl algebra over the ground field.
//!
//! Truncation is by the total d-degree summed over all factors, and the
//! certificate refers to that total. Twists only pair momenta in one factor
//! with coordinates in another, so a per-factor budget would certify less
//! for the same work.

use crate::multiindex::MultiIndex;
use crate::rational::{binomial, q, Q};
use crate::series::{term_text, MomentumSeries, SeriesError};
use crate::weyl::{
    accumulate, add_bound, apply_mono, clamp_cert, mono_mul, Mono, Polynomial, WeylElement, WeylError, EXACT,
    UNBOUNDED,
};
use num_traits::{One, Zero};
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;

pub type TensorKey = SmallVec<[Mono; 3]>;

/// A finite sum of tuples of monomials in the coordinates.
pub type PolyTensor = BTreeMap<Vec<MultiIndex>, Q>;

const NO_TERMS: i32 = -(1 << 24);

#[derive(Clone)]
pub struct TensorElement {
    dim: usize,
    rank: usize,
    order: u32,
    cert: i32,
    dmax: i32,
    xmax: i32,
    terms: BTreeMap<TensorKey, Q>,
}

fn key_d(k: &TensorKey) -> u32 {
    k.iter().map(|m| m.d_deg()).sum()
}

fn key_x(k: &TensorKey) -> u32 {
    k.iter().map(|m| m.x_deg()).sum()
}

impl TensorElement {
    pub fn zero(dim: usize, rank: usize, order: u32) -> Self {
        TensorElement { dim, rank, order, cert: EXACT, dmax: NO_TERMS, xmax: 0, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize, rank: usize, order: u32) -> Self {
        let mut t = Self::zero(dim, rank, order);
        t.push_exact((0..rank).map(|_| Mono::unit(dim)).collect(), Q::one());
        t
    }

    /// Exact element from explicit terms (only the order can truncate it).
    pub fn from_terms(dim: usize, rank: usize, order: u32, terms: impl IntoIterator<Item = (TensorKey, Q)>) -> Self {
        let mut t = Self::zero(dim, rank, order);
        for (k, c) in terms {
            assert_eq!(k.len(), rank, "rank mismatch");
            t.push_exact(k, c);
        }
        t
    }

    fn push_exact(&mut self, k: TensorKey, c: Q) {
        if c.is_zero() {
            return;
        }
        let (x, d) = (key_x(&k) as i32, key_d(&k));
        self.dmax = self.dmax.max(x - d as i32);
        self.xmax = self.xmax.max(x);
        if d > self.order {
            self.cert = self.cert.min(self.order as i32);
            return;
        }
        accumulate(&mut self.terms, k, c);
    }

    /// The pure tensor f_1 ⊗ ... ⊗ f_r.
    pub fn pure(order: u32, factors: &[&WeylElement]) -> Self {
        let dim = factors[0].dim();
        let rank = factors.len();
        let mut t = Self::zero(dim, rank, order);
        let mut acc: Vec<(TensorKey, Q, u32)> = vec![(TensorKey::new(), Q::one(), 0)];
        for f in factors {
            let mut next = Vec::new();
            for (k, c, d) in &acc {
                for (m, v) in f.terms() {
                    let nd = d + m.d_deg();
                    if nd > order {
                        continue;
                    }
                    let mut nk = k.clone();
                    nk.push(m.clone());
                    next.push((nk, c * v, nd));
                }
            }
            acc = next;
        }
        for (k, c, _) in acc {
            accumulate(&mut t.terms, k, c);
        }
        let mut cert = EXACT as i64;
        let mins: Vec<u32> = factors.iter().map(|f| f.terms().keys().map(|m| m.d_deg()).min().unwrap_or(0)).collect();
        let tops: Vec<u32> = factors.iter().map(|f| f.max_d_degree()).collect();
        // a truncated term of factor i still carries the minimal degrees of the others
        for (i, f) in factors.iter().enumerate() {
            if !f.is_complete() {
                let others: u32 = mins.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, m)| m).sum();
                cert = cert.min(f.raw_cert() as i64 + others as i64);
            }
        }
        if tops.iter().sum::<u32>() > order {
            cert = cert.min(order as i64);
        }
        if factors.iter().any(|f| f.is_zero()) {
            t.terms.clear();
        }
        t.cert = clamp_cert(cert);
        t.dmax = factors.iter().fold(0, |a, f| add_bound(a, f.deficit_bound()));
        t.xmax = factors.iter().fold(0, |a, f| add_bound(a, f.x_bound()));
        t
    }

    /// w placed in slot `pos` of a rank-`rank` tensor, units elsewhere.
    pub fn embed(w: &WeylElement, rank: usize, pos: usize, order: u32) -> Self {
        let one = WeylElement::one(w.dim(), w.order().max(order));
        let factors: Vec<&WeylElement> = (0..rank).map(|i| if i == pos { w } else { &one }).collect();
        Self::pure(order, &factors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn cert(&self) -> i32 {
        self.cert.min(self.order as i32)
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

    pub fn with_cert(mut self, cert: i32) -> Self {
        self.cert = cert.clamp(-1, EXACT);
        self
    }

    pub fn terms(&self) -> &BTreeMap<TensorKey, Q> {
        &self.terms
    }

    pub fn coeff(&self, k: &TensorKey) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
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
        self.terms.keys().map(key_d).max().unwrap_or(0)
    }

    fn same_shape(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        assert_eq!(self.rank, o.rank, "rank mismatch");
    }

    pub fn reorder(&self, order: u32) -> Self {
        let mut r = self.clone();
        r.order = order;
        if order < self.order {
            let before = r.terms.len();
            r.terms.retain(|k, _| key_d(k) <= order);
            if before != r.terms.len() || !self.is_complete() {
                r.cert = r.cert.min(order as i32);
            }
        }
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_shape(o);
        let order = self.order.min(o.order);
        let mut r = self.reorder(order);
        let ro = o.reorder(order);
        for (k, c) in ro.terms {
            accumulate(&mut r.terms, k, c);
        }
        r.cert = r.cert.min(ro.cert);
        r.dmax = r.dmax.max(ro.dmax);
        r.xmax = r.xmax.max(ro.xmax);
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

    /// Factorwise product.
    pub fn mul(&self, o: &Self) -> Self {
        self.same_shape(o);
        let order = self.order.min(o.order);
        let mut r = Self::zero(self.dim, self.rank, order);
        let mut dropped = false;
        for (ku, cu) in &self.terms {
            for (kv, cv) in &o.terms {
                let mut floor = 0u32;
                let mut top = 0u32;
                for (a, b) in ku.iter().zip(kv.iter()) {
                    let t = a.d_deg() + b.d_deg();
                    top += t;
                    floor += t - a.d.degree().min(b.x.degree());
                }
                if floor > order {
                    dropped = true;
                    continue;
                }
                if top > order {
                    dropped = true;
                }
                let cc = cu * cv;
                // expand factor by factor, pruning on the running total
                let mut acc: Vec<(TensorKey, u128, u32)> = vec![(TensorKey::new(), 1, 0)];
                let mut rest_floor = floor;
                for (a, b) in ku.iter().zip(kv.iter()) {
                    rest_floor -= a.d_deg() + b.d_deg() - a.d.degree().min(b.x.degree());
                    let prods = mono_mul(a, b, order);
                    let mut next = Vec::with_capacity(acc.len() * prods.len());
                    for (k, c, d) in &acc {
                        for (m, pc) in &prods {
                            let nd = d + m.d_deg();
                            if nd + rest_floor > order {
                                continue;
                            }
                            let mut nk = k.clone();
                            nk.push(m.clone());
                            next.push((nk, c * pc, nd));
                        }
                    }
                    acc = next;
                }
                for (k, c, _) in acc {
                    accumulate(&mut r.terms, k, &cc * Q::from_integer(c.into()));
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

    /// sum X^k/k!; every term of X must carry a momentum, and no coordinate,
    /// in factor `conv`, so the powers die out at the working order.
    pub fn exp(&self, conv: usize) -> Result<Self, WeylError> {
        for k in self.terms.keys() {
            let m = &k[conv];
            if m.d_deg() == 0 || m.x_deg() > 0 {
                return Err(WeylError::Convergence(render_key(k)));
            }
        }
        let mut acc = Self::one(self.dim, self.rank, self.order);
        let mut p = acc.clone();
        for k in 1..=self.order as i64 + 1 {
            p = p.mul(self).scale(&Q::new(1.into(), k.into()));
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p);
        }
        if !p.is_zero() {
            return Err(WeylError::Series(SeriesError::NotNilpotent(self.order as usize + 1)));
        }
        acc.cert = acc.cert.min(self.cert);
        if self.is_zero() {
            return Ok(acc);
        }
        acc.dmax = if self.dmax <= 0 { 0 } else { UNBOUNDED };
        acc.xmax = if self.xmax == 0 { 0 } else { UNBOUNDED };
        Ok(acc)
    }

    /// Applies a linear map to slot `pos`, given on monomials as a Weyl
    /// element; the caller supplies how the certificate transforms.
    fn map_slot(&self, pos: usize, f: impl Fn(&Mono) -> WeylElement) -> Self {
        let mut r = Self::zero(self.dim, self.rank, self.order);
        for (k, c) in &self.terms {
            let img = f(&k[pos]);
            let rest: u32 = key_d(k) - k[pos].d_deg();
            for (m, v) in img.terms() {
                if rest + m.d_deg() > self.order {
                    continue;
                }
                let mut nk = k.clone();
                nk[pos] = m.clone();
                accumulate(&mut r.terms, nk, c * v);
            }
        }
        r.cert = self.cert;
        r.dmax = self.dmax;
        r.xmax = self.xmax;
        r
    }

    /// S_0 applied to one slot.
    pub fn s0_at(&self, pos: usize) -> Self {
        let mut r = self.map_slot(pos, |m| WeylElement::monomial(self.dim, u32::MAX, m.clone(), Q::one()).s0());
        if !self.is_complete() {
            r.cert = clamp_cert(self.cert as i64 - self.xmax as i64);
        }
        r
    }

    /// (S_0 ⊗ id) on a rank-2 tensor.
    pub fn s0_left(&self) -> Self {
        self.s0_at(0)
    }

    /// The undeformed coproduct applied to slot `pos`, raising the rank by one:
    /// x stays in the left copy, each momentum is primitive.
    pub fn delta0_at(&self, pos: usize) -> Self {
        let mut r = Self::zero(self.dim, self.rank + 1, self.order);
        for (k, c) in &self.terms {
            for (left, right, bc) in delta0_mono(&k[pos]) {
                let mut nk: TensorKey = SmallVec::new();
                for (i, m) in k.iter().enumerate() {
                    if i == pos {
                        nk.push(left.clone());
                        nk.push(right.clone());
                    } else {
                        nk.push(m.clone());
                    }
                }
                accumulate(&mut r.terms, nk, c * &bc);
            }
        }
        r.cert = self.cert;
        r.dmax = self.dmax;
        r.xmax = self.xmax;
        r
    }

    /// Multiplies the factors of each term of a rank-2 tensor in order.
    pub fn contract(&self) -> WeylElement {
        assert_eq!(self.rank, 2, "contraction needs rank 2");
        let mut terms: BTreeMap<Mono, Q> = BTreeMap::new();
        for (k, c) in &self.terms {
            for (m, v) in mono_mul(&k[0], &k[1], u32::MAX) {
                accumulate(&mut terms, m, c * Q::from_integer(v.into()));
            }
        }
        let w = WeylElement::from_terms(self.dim, self.order, terms);
        // truncated terms lose at most their coordinate degree in the product
        let cert = if self.is_complete() { w.raw_cert() } else { clamp_cert(self.cert as i64 - self.xmax as i64) };
        let cert = cert.min(w.raw_cert());
        w.with_cert(cert).with_bounds(self.dmax, self.xmax)
    }

    /// sum c (A_1 ▷ f_1)···(A_r ▷ f_r).
    pub fn act_all(&self, fs: &[&Polynomial]) -> Result<Polynomial, WeylError> {
        assert_eq!(fs.len(), self.rank);
        let need: u32 = fs.iter().map(|f| f.degree()).sum();
        if !self.is_complete() && self.cert() < need as i32 {
            return Err(WeylError::InsufficientOrder { cert: self.cert(), needed: need });
        }
        let mut out = Polynomial::zero(self.dim);
        for (k, c) in &self.terms {
            let mut prod = Polynomial::constant(self.dim, c.clone());
            for (m, f) in k.iter().zip(fs) {
                let mut img = Polynomial::zero(self.dim);
                for (fm, fc) in f.terms() {
                    if let Some((r, kk)) = apply_mono(m, fm) {
                        img.add_term(r, fc * Q::from_integer(kk.into()));
                    }
                }
                if img.is_zero() {
                    prod = Polynomial::zero(self.dim);
                    break;
                }
                prod = prod.mul(&img);
            }
            out = out.add(&prod);
        }
        Ok(out)
    }

    /// Rank 2: sum c (A ▷ f) B, with the polynomial multiplying from the left.
    pub fn act_left_into_right(&self, f: &Polynomial) -> Result<WeylElement, WeylError> {
        self.act_into(0, f)
    }

    /// Rank 2: sum c (B ▷ f) A.
    pub fn act_right_into_left(&self, f: &Polynomial) -> Result<WeylElement, WeylError> {
        self.act_into(1, f)
    }

    fn act_into(&self, pos: usize, f: &Polynomial) -> Result<WeylElement, WeylError> {
        assert_eq!(self.rank, 2);
        let other = 1 - pos;
        let mut terms: BTreeMap<Mono, Q> = BTreeMap::new();
        for (k, c) in &self.terms {
            for (fm, fc) in f.terms() {
                if let Some((r, kk)) = apply_mono(&k[pos], fm) {
                    let m = Mono::new(k[other].x.add(&r), k[other].d.clone());
                    accumulate(&mut terms, m, c * fc * Q::from_integer(kk.into()));
                }
            }
        }
        let w = WeylElement::from_terms(self.dim, self.order, terms);
        let cert = if self.is_complete() {
            w.raw_cert()
        } else {
            clamp_cert(self.cert as i64 - f.degree() as i64).min(w.raw_cert())
        };
        Ok(w.with_cert(cert))
    }

    /// Inserts a unit factor at `pos`, raising the rank by one.
    pub fn insert_unit(&self, pos: usize) -> Self {
        let mut r = self.clone();
        r.rank += 1;
        r.terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut nk = k.clone();
                nk.insert(pos, Mono::unit(self.dim));
                (nk, c.clone())
            })
            .collect();
        r
    }

    /// The action on a sum of tuples of polynomials, slot by slot.
    pub fn act_on(&self, pt: &PolyTensor) -> Result<PolyTensor, WeylError> {
        let need = pt.keys().map(|ms| ms.iter().map(|m| m.degree()).sum::<u32>()).max().unwrap_or(0);
        if !self.is_complete() && self.cert() < need as i32 {
            return Err(WeylError::InsufficientOrder { cert: self.cert(), needed: need });
        }
        let mut out = PolyTensor::new();
        for (k, c) in &self.terms {
            'inputs: for (ms, v) in pt {
                let mut res: Vec<MultiIndex> = Vec::with_capacity(self.rank);
                let mut coeff = c * v;
                for (m, f) in k.iter().zip(ms) {
                    match apply_mono(m, f) {
                        Some((r, kk)) => {
                            res.push(r);
                            coeff *= Q::from_integer(kk.into());
                        }
                        None => continue 'inputs,
                    }
                }
                accumulate(&mut out, res, coeff);
            }
        }
        Ok(out)
    }

    /// First term with total d-degree <= `upto` where the tensors differ.
    pub fn first_difference(&self, o: &Self, upto: u32) -> Option<(TensorKey, Q, Q)> {
        let mut keys: Vec<&TensorKey> = self.terms.keys().chain(o.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter(|k| key_d(k) <= upto)
            .map(|k| (k.clone(), self.coeff(k), o.coeff(k)))
            .find(|(_, a, b)| a != b)
    }

    /// First term carrying a coordinate, if any.
    pub fn x_contamination(&self) -> Option<(TensorKey, Q)> {
        self.terms.iter().find(|(k, _)| key_x(k) > 0).map(|(k, c)| (k.clone(), c.clone()))
    }

    /// Keeps only the terms whose total d-degree is at most `k`.
    pub fn truncate(&self, k: u32) -> Self {
        self.reorder(k.min(self.order))
    }
}

/// Δ_0(x^a d^b) = sum_{c <= b} binom(b, c) x^a d^c ⊗ d^(b-c).
pub fn delta0_mono(m: &Mono) -> Vec<(Mono, Mono, Q)> {
    let n = m.d.dim();
    let mut out = Vec::new();
    for c in MultiIndex::up_to_degree(n, m.d_deg()) {
        if !c.divides(&m.d) {
            continue;
        }
        let rest = m.d.checked_sub(&c).unwrap();
        let mut coeff = num_bigint::BigInt::one();
        for i in 0..n {
            coeff *= binomial(m.d.get(i) as u32, c.get(i) as u32);
        }
        out.push((
            Mono::new(m.x.clone(), c),
            Mono::new(MultiIndex::zero(n), rest),
            Q::from_integer(coeff),
        ));
    }
    out
}

/// The undeformed coproduct of a Weyl element, with coordinates placed in
/// the left factor.
pub fn delta0(w: &WeylElement, order: u32) -> TensorElement {
    TensorElement::embed(w, 1, 0, order).delta0_at(0).with_cert(if w.is_complete() {
        EXACT
    } else {
        w.raw_cert()
    })
}

/// P ⊗ Q for momentum series.
pub fn momentum_pair(p: &MomentumSeries, q2: &MomentumSeries, order: u32) -> TensorElement {
    TensorElement::pure(order, &[&WeylElement::from_momentum(p), &WeylElement::from_momentum(q2)])
}

pub fn render_key(k: &TensorKey) -> String {
    k.iter()
        .map(|m| {
            let r = m.render();
            if r.is_empty() {
                "1".to_string()
            } else {
                r
            }
        })
        .collect::<Vec<_>>()
        .join(" ⊗ ")
}

impl PartialEq for TensorElement {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.rank == o.rank && self.terms == o.terms
    }
}

impl Eq for TensorElement {}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| term_text(c, &render_key(k))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[rank={} K={} cert={}] {}", self.rank, self.order, self.cert(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 3;
    const K: u32 = 4;

    fn x(i: usize) -> WeylElement {
        WeylElement::x(N, K, i)
    }
    fn d(i: usize) -> WeylElement {
        WeylElement::d(N, K, i)
    }
    fn one() -> WeylElement {
        WeylElement::one(N, K)
    }
    fn t2(a: &WeylElement, b: &WeylElement) -> TensorElement {
        TensorElement::pure(K, &[a, b])
    }

    #[test]
    fn factorwise_products() {
        assert_eq!(t2(&x(0), &one()).mul(&t2(&one(), &d(0))), t2(&x(0), &d(0)));
        let lhs = t2(&d(0), &one()).mul(&t2(&x(0), &one()));
        assert_eq!(lhs, t2(&x(0).mul(&d(0)).add(&one()), &one()));
    }

    #[test]
    fn exponentials() {
        let z = TensorElement::zero(N, 2, K);
        assert_eq!(z.exp(0).unwrap(), TensorElement::one(N, 2, K));
        let a = t2(&d(0), &x(0));
        let e = a.reorder(1).exp(0).unwrap();
        assert_eq!(e, TensorElement::one(N, 2, 1).add(&a.reorder(1)));
        let back = a.neg().exp(0).unwrap().mul(&a.exp(0).unwrap());
        assert_eq!(back, TensorElement::one(N, 2, K));
        assert!(t2(&x(0), &d(0)).exp(0).is_err());
    }

    #[test]
    fn delta0_values() {
        assert_eq!(delta0(&x(0), K), t2(&x(0), &one()));
        assert_eq!(delta0(&d(0), K), t2(&one(), &d(0)).add(&t2(&d(0), &one())));
        let w = x(0).mul(&d(0));
        assert_eq!(delta0(&w, K), t2(&x(0), &d(0)).add(&t2(&w, &one())));
    }

    #[test]
    fn s0_and_contraction() {
        assert_eq!(t2(&d(0), &x(0)).s0_left(), t2(&d(0), &x(0)).neg());
        assert_eq!(t2(&x(0), &d(0)).s0_left(), t2(&x(0), &d(0)));
        let w = x(0).mul(&d(0));
        assert_eq!(t2(&w, &one()).s0_left(), t2(&w.add(&one()).neg(), &one()));
        assert_eq!(t2(&x(0), &d(0)).contract(), w);
        assert_eq!(t2(&d(0), &x(0)).contract(), w.add(&one()));
    }

    #[test]
    fn actions() {
        let t = t2(&x(0), &one()).sub(&t2(&one(), &x(1)));
        let one_p = Polynomial::one(N);
        let r = t.act_all(&[&one_p, &one_p]).unwrap();
        assert_eq!(r, Polynomial::var(N, 0).sub(&Polynomial::var(N, 1)));
        let g = t2(&x(0), &one()).sub(&t2(&one(), &x(0)));
        let f = Polynomial::parse(N, "x1*x2").unwrap();
        assert!(g.act_all(&[&f, &one_p]).unwrap().is_zero());
    }

    #[test]
    fn total_degree_certificate() {
        let p = WeylElement::from_momentum(&MomentumSeries::var(N, 2, 0));
        let t = TensorElement::pure(K, &[&p, &d(1)]);
        assert_eq!(t.cert(), 3);
        assert_eq!(t.mul(&t2(&one(), &x(1))).cert(), 2);
        assert_eq!(t.mul(&t2(&d(0), &one())).cert(), 4);
    }
}
