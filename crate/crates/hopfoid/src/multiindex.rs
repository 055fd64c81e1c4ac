//! Exponent vectors for monomials in x_1..x_n or in the momenta d^1..d^n.

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(SmallVec<[u16; 4]>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut m = Self::zero(n);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(e: &[u16]) -> Self {
        MultiIndex(SmallVec::from_slice(e))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` when every entry stays non-negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(out))
    }

    pub fn with(&self, i: usize, delta: i32) -> Option<Self> {
        let mut m = self.clone();
        let v = m.0[i] as i32 + delta;
        if v < 0 {
            return None;
        }
        m.0[i] = v as u16;
        Some(m)
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Product of factorials of the entries.
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.0
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, &e| acc * crate::rational::factorial(e as u32))
    }

    /// All exponent vectors of total degree exactly `d`, in canonical order.
    pub fn of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<MultiIndex>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left as u16;
                out.push(MultiIndex::from_slice(cur));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(MultiIndex::zero(0));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }

    /// All exponent vectors of total degree at most `d`.
    pub fn up_to_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        (0..=d).flat_map(|k| Self::of_degree(n, k)).collect()
    }

    /// Expands the monomial into the ordered word of generator indices.
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(i, e as usize));
        }
        w
    }

    pub fn from_word(n: usize, w: &[usize]) -> Self {
        let mut m = Self::zero(n);
        for &i in w {
            m.0[i] += 1;
        }
        m
    }

    /// Space-separated factors like `x1^2 x3`; empty for the unit.
    pub fn render(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("{var}{}", i + 1)),
                _ => parts.push(format!("{var}{}^{e}", i + 1)),
            }
        }
        parts.join(" ")
    }
}

/// Graded order: total degree first, then earlier variables carrying
/// larger exponents come first.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(MultiIndex::of_degree(3, 2).len(), 6);
        assert_eq!(MultiIndex::up_to_degree(3, 3).len(), 20);
        let d1 = MultiIndex::of_degree(3, 1);
        assert_eq!(d1[0], MultiIndex::unit(3, 0));
    }

    #[test]
    fn graded_order() {
        let a = MultiIndex::from_slice(&[1, 0]);
        let b = MultiIndex::from_slice(&[0, 1]);
        let c = MultiIndex::from_slice(&[0, 2]);
        assert!(a < b && b < c);
        let mut v = vec![c.clone(), b.clone(), a.clone()];
        v.sort();
        assert_eq!(v, vec![a, b, c]);
    }

    #[test]
    fn words_round_trip() {
        let m = MultiIndex::from_slice(&[2, 0, 1]);
        assert_eq!(m.word(), vec![0, 0, 2]);
        assert_eq!(MultiIndex::from_word(3, &m.word()), m);
        assert_eq!(m.render("x"), "x1^2 x3");
    }
}
