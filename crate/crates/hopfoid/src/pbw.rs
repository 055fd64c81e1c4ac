//! The enveloping algebra U(g) in PBW coordinates: ordered monomials
//! X1^a1 ... Xn^an. This is the ground truth the Weyl-side computations are
//! checked against, so it shares no code with the realization.

use crate::lie::LieAlgebraDef;
use crate::multiindex::MultiIndex;
use crate::rational::Q;
use crate::weyl::{accumulate, render_compact, Polynomial, WeylElement, WeylError};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

#[derive(Clone, PartialEq, Eq)]
pub struct PbwElement {
    dim: usize,
    terms: BTreeMap<MultiIndex, Q>,
}

impl PbwElement {
    pub fn zero(dim: usize) -> Self {
        PbwElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(MultiIndex::zero(dim), Q::one())
    }

    pub fn monomial(m: MultiIndex, c: Q) -> Self {
        let mut u = Self::zero(m.dim());
        u.add_term(m, c);
        u
    }

    /// The generator X_i (0-based).
    pub fn generator(dim: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, i), Q::one())
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
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut r = Self::zero(self.dim);
        for (m, v) in &self.terms {
            r.add_term(m.clone(), v * c);
        }
        r
    }

    pub fn to_text(&self) -> String {
        render_compact(&self.terms, "X")
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

type Terms = Arc<Vec<(MultiIndex, Q)>>;

/// U(g) for a fixed algebra, with straightening and symmetrization caches.
pub struct Pbw {
    alg: LieAlgebraDef,
    gen_mul: Mutex<HashMap<(usize, MultiIndex), Terms>>,
    xi_mono: Mutex<HashMap<MultiIndex, Arc<PbwElement>>>,
}

impl Pbw {
    pub fn new(alg: &LieAlgebraDef) -> Self {
        Pbw { alg: alg.clone(), gen_mul: Mutex::new(HashMap::new()), xi_mono: Mutex::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &LieAlgebraDef {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    /// X_g · X^m in ordered coordinates.
    fn gen_times_mono(&self, g: usize, m: &MultiIndex) -> Terms {
        let key = (g, m.clone());
        if let Some(t) = self.gen_mul.lock().unwrap().get(&key) {
            return t.clone();
        }
        let n = self.dim();
        let first = (0..n).find(|&i| m.get(i) > 0);
        let out: Vec<(MultiIndex, Q)> = match first {
            Some(i) if g > i => {
                // X_g X_i X^rest = X_i (X_g X^rest) + [X_g, X_i] X^rest
                let rest = m.with(i, -1).unwrap();
                let mut acc: BTreeMap<MultiIndex, Q> = BTreeMap::new();
                for (p, c) in self.gen_times_mono(g, &rest).iter() {
                    for (p2, c2) in self.gen_times_mono(i, p).iter() {
                        accumulate(&mut acc, p2.clone(), c * c2);
                    }
                }
                for l in 0..n {
                    let cl = self.alg.c(l, g, i);
                    if cl.is_zero() {
                        continue;
                    }
                    for (p, c) in self.gen_times_mono(l, &rest).iter() {
                        accumulate(&mut acc, p.clone(), &cl * c);
                    }
                }
                acc.into_iter().collect()
            }
            _ => vec![(m.with(g, 1).unwrap(), Q::one())],
        };
        let out = Arc::new(out);
        self.gen_mul.lock().unwrap().insert(key, out.clone());
        out
    }

    /// X_g · u.
    pub fn gen_mul(&self, g: usize, u: &PbwElement) -> PbwElement {
        let mut r = PbwElement::zero(self.dim());
        for (m, c) in &u.terms {
            for (p, k) in self.gen_times_mono(g, m).iter() {
                r.add_term(p.clone(), c * k);
            }
        }
        r
    }

    /// Product in U(g).
    pub fn mul(&self, u: &PbwElement, v: &PbwElement) -> PbwElement {
        let mut r = PbwElement::zero(self.dim());
        for (m, c) in &u.terms {
            let mut acc = v.clone();
            for &g in m.word().iter().rev() {
                acc = self.gen_mul(g, &acc);
            }
            r = r.add(&acc.scale(c));
        }
        r
    }

    /// The product of the generators of a word, left to right.
    pub fn word(&self, w: &[usize]) -> PbwElement {
        let mut acc = PbwElement::one(self.dim());
        for &g in w.iter().rev() {
            acc = self.gen_mul(g, &acc);
        }
        acc
    }

    /// Symmetrization of a monomial: the average over all orderings.
    fn xi_monomial(&self, m: &MultiIndex) -> Arc<PbwElement> {
        if let Some(u) = self.xi_mono.lock().unwrap().get(m) {
            return u.clone();
        }
        let n = self.dim();
        // distinct orderings, built right to left so suffixes are shared
        fn rec(pbw: &Pbw, left: &mut Vec<u16>, acc: &PbwElement, out: &mut PbwElement) {
            if left.iter().all(|&e| e == 0) {
                *out = out.add(acc);
                return;
            }
            for g in 0..left.len() {
                if left[g] > 0 {
                    left[g] -= 1;
                    let next = pbw.gen_mul(g, acc);
                    rec(pbw, left, &next, out);
                    left[g] += 1;
                }
            }
        }
        let mut left: Vec<u16> = m.exps().to_vec();
        let mut sum = PbwElement::zero(n);
        rec(self, &mut left, &PbwElement::one(n), &mut sum);
        // each distinct ordering stands for m! of the r! permutations
        let r = m.degree();
        let w = Q::new(m.factorial(), crate::rational::factorial(r));
        let u = Arc::new(sum.scale(&w));
        self.xi_mono.lock().unwrap().insert(m.clone(), u.clone());
        u
    }

    /// The symmetrization map S(g) -> U(g).
    pub fn xi(&self, f: &Polynomial) -> PbwElement {
        let mut r = PbwElement::zero(self.dim());
        for (m, c) in f.terms() {
            r = r.add(&self.xi_monomial(m).scale(c));
        }
        r
    }

    /// Inverse of `xi`, eliminating from the top degree down.
    pub fn xi_inv(&self, u: &PbwElement) -> Polynomial {
        let n = self.dim();
        let mut rest = u.clone();
        let mut f = Polynomial::zero(n);
        while !rest.is_zero() {
            let top = rest.degree();
            let lead = Polynomial::from_terms(
                n,
                rest.terms.iter().filter(|(m, _)| m.degree() == top).map(|(m, c)| (m.clone(), c.clone())),
            );
            rest = rest.sub(&self.xi(&lead));
            debug_assert!(rest.terms.keys().all(|m| m.degree() < top));
            f = f.add(&lead);
        }
        f
    }

    /// The star product f ⋆ g = xi^-1(xi(f) xi(g)).
    pub fn star(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.xi_inv(&self.mul(&self.xi(f), &self.xi(g)))
    }

    /// W ▶ u, the Fock action transported to U(g) along xi.
    pub fn deformed_act(&self, w: &WeylElement, u: &PbwElement) -> Result<PbwElement, WeylError> {
        Ok(self.xi(&w.act(&self.xi_inv(u))?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::rational::{q, qr};

    fn gen(n: usize, i: usize) -> PbwElement {
        PbwElement::generator(n, i)
    }

    #[test]
    fn heisenberg_straightening() {
        let u = Pbw::new(&catalog("heisenberg3").unwrap());
        let p = u.mul(&gen(3, 1), &gen(3, 0));
        assert_eq!(p.to_text(), "X1*X2 - X3");
    }

    #[test]
    fn abelian_commutes() {
        let u = Pbw::new(&catalog("abelian(2)").unwrap());
        assert_eq!(u.mul(&gen(2, 1), &gen(2, 0)).to_text(), "X1*X2");
    }

    #[test]
    fn su2_associativity_witness() {
        let u = Pbw::new(&catalog("su2").unwrap());
        let x12 = u.word(&[0, 1]);
        let x21 = u.word(&[1, 0]);
        let lhs = u.mul(&x12, &gen(3, 0));
        let rhs = u.mul(&gen(3, 0), &x21);
        assert_eq!(u.mul(&lhs, &PbwElement::one(3)), lhs);
        assert_eq!(lhs, u.word(&[0, 1, 0]));
        assert_eq!(rhs, u.word(&[0, 1, 0]));
    }

    #[test]
    fn symmetrization() {
        let u = Pbw::new(&catalog("heisenberg3").unwrap());
        let f = Polynomial::parse(3, "x1*x2").unwrap();
        let xf = u.xi(&f);
        assert_eq!(xf.coeff(&MultiIndex::from_slice(&[1, 1, 0])), q(1));
        assert_eq!(xf.coeff(&MultiIndex::from_slice(&[0, 0, 1])), qr(-1, 2));
        assert_eq!(u.xi_inv(&xf), f);
        let back = u.xi_inv(&u.word(&[0, 1]));
        assert_eq!(back.to_text(), "x1*x2 + 1/2*x3");
        let lin = Polynomial::parse(3, "x1 - 3*x3").unwrap();
        assert_eq!(u.xi(&lin).to_text(), "X1 - 3*X3");
    }

    #[test]
    fn star_products() {
        let h = Pbw::new(&catalog("heisenberg3").unwrap());
        let (x1, x2) = (Polynomial::var(3, 0), Polynomial::var(3, 1));
        assert_eq!(h.star(&x1, &x2).to_text(), "x1*x2 + 1/2*x3");
        let s = Pbw::new(&catalog("su2").unwrap());
        assert_eq!(s.star(&x1, &x2).sub(&s.star(&x2, &x1)).to_text(), "x3");
        assert_eq!(s.star(&x1, &x1).to_text(), "x1^2");
    }
}
