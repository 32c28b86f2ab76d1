//! The Hecke algebra `H_r` in the basis `{H_w}` with
//! `H_i^2 = (q^{-1} - q) H_i + 1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::ratfn::{null_space, RatFn};
use crate::scalar::Scalar;

/// A permutation in one-line notation, `w[k] = w(k)` on `0..r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(r: usize) -> Self {
        Perm((0..r as u8).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
    }

    fn pos(&self, v: u8) -> usize {
        self.0.iter().position(|&x| x == v).unwrap()
    }

    /// `s_i w` for the generator `s_i` (1-based) swapping values `i-1, i`.
    pub fn left_mul_simple(&self, i: usize) -> Perm {
        let (a, b) = ((i - 1) as u8, i as u8);
        Perm(self.0.iter().map(|&x| if x == a { b } else if x == b { a } else { x }).collect())
    }

    /// Whether `l(s_i w) > l(w)`.
    pub fn left_ascent(&self, i: usize) -> bool {
        self.pos((i - 1) as u8) < self.pos(i as u8)
    }

    /// A reduced word `[i_1, ..., i_l]` (1-based) with `w = s_{i_1} ... s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 1..w.rank() {
                if !w.left_ascent(i) {
                    word.push(i);
                    w = w.left_mul_simple(i);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    pub fn all(r: usize) -> Vec<Perm> {
        use itertools::Itertools;
        (0..r as u8).permutations(r).map(Perm).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeckeError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    rank: usize,
    terms: BTreeMap<Perm, Scalar>,
}

impl HeckeElement {
    pub fn zero(rank: usize) -> Self {
        HeckeElement { rank, terms: BTreeMap::new() }
    }

    pub fn identity(rank: usize) -> Self {
        HeckeElement::basis(Perm::identity(rank))
    }

    pub fn basis(w: Perm) -> Self {
        let rank = w.rank();
        HeckeElement { rank, terms: [(w, Scalar::one())].into_iter().collect() }
    }

    /// The generator `H_i`, `1 <= i < rank`.
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i < rank, "generator index out of range");
        HeckeElement::basis(Perm::identity(rank).left_mul_simple(i))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Perm) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Perm, c: &Scalar) {
        let e = self.terms.entry(w.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        if self.rank != o.rank {
            return Err(HeckeError::RankMismatch(self.rank, o.rank));
        }
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c);
        }
        Ok(r)
    }

    pub fn scale(&self, c: &Scalar) -> HeckeElement {
        let mut r = HeckeElement::zero(self.rank);
        for (w, x) in &self.terms {
            r.add_term(w.clone(), &(x * c));
        }
        r
    }

    /// `H_i * self`
    pub fn left_mul_generator(&self, i: usize) -> HeckeElement {
        let z = Scalar::skein_z();
        let mut r = HeckeElement::zero(self.rank);
        for (w, c) in &self.terms {
            let sw = w.left_mul_simple(i);
            if w.left_ascent(i) {
                r.add_term(sw, c);
            } else {
                r.add_term(w.clone(), &(c * &z));
                r.add_term(sw, c);
            }
        }
        r
    }

    pub fn mul(&self, o: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        if self.rank != o.rank {
            return Err(HeckeError::RankMismatch(self.rank, o.rank));
        }
        let mut out = HeckeElement::zero(self.rank);
        for (w, c) in &self.terms {
            let mut t = o.scale(c);
            for &i in w.reduced_word().iter().rev() {
                t = t.left_mul_generator(i);
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// The sign character `H_w -> (-q)^{l(w)}`.
    pub fn sign_character(&self) -> Scalar {
        self.terms.iter().map(|(w, c)| c * &Scalar::neg_q_pow(w.length() as i64)).sum()
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*H{:?}", w.0)).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The idempotent `e_a` of rank `a` with `H_i e_a = e_a H_i = -q e_a`.
#[derive(Clone, Debug)]
pub struct Antisymmetrizer {
    pub a: usize,
    pub element: HeckeElement,
}

/// Solve `(H_i + q) e = 0` for all `i`, then rescale so that `e^2 = e`.
pub fn antisymmetrizer(a: usize) -> Antisymmetrizer {
    assert!(a >= 1);
    let perms = Perm::all(a);
    let index: BTreeMap<Perm, usize> = perms.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
    let mut rows: Vec<Vec<RatFn>> = Vec::new();
    let q = Scalar::q_pow(1);
    for i in 1..a {
        let mut block = vec![vec![Scalar::zero(); perms.len()]; perms.len()];
        for (col, w) in perms.iter().enumerate() {
            let h = HeckeElement::basis(w.clone());
            let img = h.left_mul_generator(i).add(&h.scale(&q)).unwrap();
            for (v, c) in img.terms() {
                block[index[v]][col] = c.clone();
            }
        }
        for row in block {
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row.iter().map(|c| c.to_ratfn().unwrap()).collect());
            }
        }
    }
    let ns = null_space(&rows, perms.len());
    assert_eq!(ns.len(), 1, "eigenvector condition must have a one-dimensional solution");
    let v = &ns[0];
    let id = index[&Perm::identity(a)];
    let mut e = HeckeElement::zero(a);
    for (k, w) in perms.iter().enumerate() {
        let c = v[k].div(&v[id]).to_scalar().expect("antisymmetrizer coefficients are Laurent");
        e.add_term(w.clone(), &c);
    }
    let lambda = e.mul(&e).unwrap().coeff(&Perm::identity(a));
    let inv = Scalar::one().checked_div(&lambda).expect("normalization is a product of quantum integers");
    Antisymmetrizer { a, element: e.scale(&inv) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(r: usize, i: usize) -> HeckeElement {
        HeckeElement::generator(r, i)
    }

    #[test]
    fn quadratic_relation() {
        let sq = h(2, 1).mul(&h(2, 1)).unwrap();
        let expect = h(2, 1).scale(&Scalar::skein_z()).add(&HeckeElement::identity(2)).unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn braid_relation() {
        let l = h(3, 1).mul(&h(3, 2)).unwrap().mul(&h(3, 1)).unwrap();
        let r = h(3, 2).mul(&h(3, 1)).unwrap().mul(&h(3, 2)).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.terms().count(), 1);
    }

    #[test]
    fn rank_mismatch() {
        assert!(h(2, 1).mul(&h(3, 1)).is_err());
    }

    #[test]
    fn reduced_words_realize_permutations() {
        for w in Perm::all(4) {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let mut x = Perm::identity(4);
            for &i in word.iter().rev() {
                x = x.left_mul_simple(i);
            }
            assert_eq!(x, w);
        }
    }

    #[test]
    fn small_antisymmetrizers() {
        assert_eq!(antisymmetrizer(1).element, HeckeElement::identity(1));
        let e2 = antisymmetrizer(2).element;
        // (q^{-1} H_id - H_1)/[2]
        let expect = HeckeElement::identity(2)
            .scale(&Scalar::q_pow(-1))
            .add(&h(2, 1).scale(&Scalar::from_int(-1)))
            .unwrap()
            .scale(&Scalar::one().div_qint(2));
        assert_eq!(e2, expect);
    }
}
