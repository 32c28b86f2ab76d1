//! Quantum exterior algebra of `C^{m|n} ⊗ C^k` on its monomial basis.
//!
//! A letter `(a, c)` stands for `z_{ac} = x_a ⊗ y_c` with 1-based indices.
//! Monomials are sorted by `(c, a)` (column first); even letters may not
//! repeat.

use std::collections::{BTreeMap, HashMap};

use crate::scalar::Scalar;

use super::SuperDim;

pub type Letter = (u8, u8);
pub type Monomial = Vec<Letter>;
pub type Lin = BTreeMap<Monomial, Scalar>;

fn key(l: Letter) -> (u8, u8) {
    (l.1, l.0)
}

pub(crate) fn add_to<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Whether a sorted monomial is a basis element.
pub fn is_admissible(sd: SuperDim, w: &[Letter]) -> bool {
    w.windows(2).all(|p| key(p[0]) < key(p[1]) || (p[0] == p[1] && sd.odd(p[0].0)))
}

/// Basis of `⋀^a C^{m|n}` as nondecreasing index lists.
pub fn wedge_basis(sd: SuperDim, a: usize) -> Vec<Vec<u8>> {
    fn rec(sd: SuperDim, a: usize, from: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for i in from..=sd.dim() as u8 {
            cur.push(i);
            let next = if sd.odd(i) { i } else { i + 1 };
            rec(sd, a, next, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(sd, a, 1, &mut Vec::with_capacity(a), &mut out);
    out
}

/// Straighten an arbitrary word into the monomial basis.
pub fn straighten(sd: SuperDim, word: &[Letter]) -> Lin {
    let mut memo = HashMap::new();
    straighten_memo(sd, word, &mut memo)
}

pub(crate) fn straighten_memo(sd: SuperDim, word: &[Letter], memo: &mut HashMap<Monomial, Lin>) -> Lin {
    if let Some(r) = memo.get(word) {
        return r.clone();
    }
    let mut out = Lin::new();
    let Some(t) = (0..word.len().saturating_sub(1)).find(|&t| {
        let (x, y) = (word[t], word[t + 1]);
        key(x) > key(y) || (x == y && !sd.odd(x.0))
    }) else {
        out.insert(word.to_vec(), Scalar::one());
        memo.insert(word.to_vec(), out.clone());
        return out;
    };
    let (x, y) = (word[t], word[t + 1]);
    if x != y {
        let mut swapped = word.to_vec();
        swapped.swap(t, t + 1);
        let s = if sd.odd(x.0) && sd.odd(y.0) { -1 } else { 1 };
        let mut rewrites: Vec<(Monomial, Scalar)> = Vec::with_capacity(2);
        if x.1 == y.1 {
            rewrites.push((swapped, Scalar::q_pow(1) * Scalar::from_int(-s)));
        } else if x.0 == y.0 {
            let c = if sd.odd(x.0) { Scalar::q_pow(-1) } else { -Scalar::q_pow(1) };
            rewrites.push((swapped, c));
        } else {
            rewrites.push((swapped, Scalar::from_int(-s)));
            if x.0 < y.0 {
                let mut extra = word.to_vec();
                extra[t] = (x.0, y.1);
                extra[t + 1] = (y.0, x.1);
                rewrites.push((extra, Scalar::skein_z()));
            }
        }
        for (w, c) in rewrites {
            for (m, d) in straighten_memo(sd, &w, memo) {
                add_to(&mut out, m, &c * &d);
            }
        }
    }
    memo.insert(word.to_vec(), out.clone());
    out
}

fn k_exponent(col: u8, i: u8) -> i64 {
    (col == i) as i64 - (col == i + 1) as i64
}

/// `E_i` of `U_q(gl_k)` on a sorted monomial.
pub fn act_e(sd: SuperDim, w: &[Letter], i: u8) -> Lin {
    let mut out = Lin::new();
    let mut memo = HashMap::new();
    for t in 0..w.len() {
        if w[t].1 != i + 1 {
            continue;
        }
        let e: i64 = w[t + 1..].iter().map(|l| -k_exponent(l.1, i)).sum();
        let mut v = w.to_vec();
        v[t].1 = i;
        for (m, c) in straighten_memo(sd, &v, &mut memo) {
            add_to(&mut out, m, c * Scalar::q_pow(e));
        }
    }
    out
}

/// `F_i` of `U_q(gl_k)` on a sorted monomial.
pub fn act_f(sd: SuperDim, w: &[Letter], i: u8) -> Lin {
    let mut out = Lin::new();
    let mut memo = HashMap::new();
    for t in 0..w.len() {
        if w[t].1 != i {
            continue;
        }
        let e: i64 = w[..t].iter().map(|l| k_exponent(l.1, i)).sum();
        let mut v = w.to_vec();
        v[t].1 = i + 1;
        for (m, c) in straighten_memo(sd, &v, &mut memo) {
            add_to(&mut out, m, c * Scalar::q_pow(e));
        }
    }
    out
}

/// The `gl_k` weight of a monomial: number of letters in each column.
pub fn weight(w: &[Letter], k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for l in w {
        out[l.1 as usize - 1] += 1;
    }
    out
}

/// Apply a linear operator given on monomials to a combination.
pub fn lin_map(v: &Lin, f: impl Fn(&[Letter]) -> Lin) -> Lin {
    let mut out = Lin::new();
    for (m, c) in v {
        for (m2, d) in f(m) {
            add_to(&mut out, m2, c * &d);
        }
    }
    out
}

/// All basis monomials of `⋀^N(C^{m|n} ⊗ C^k)`.
pub fn monomial_basis(sd: SuperDim, k: usize, n: usize) -> Vec<Monomial> {
    let letters: Vec<Letter> = (1..=k as u8)
        .flat_map(|c| (1..=sd.dim() as u8).map(move |a| (a, c)))
        .collect();
    fn rec(sd: SuperDim, letters: &[Letter], n: usize, from: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for j in from..letters.len() {
            let l = letters[j];
            cur.push(l);
            rec(sd, letters, n, if sd.odd(l.0) { j } else { j + 1 }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(sd, &letters, n, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: i64, k: i64) -> i64 {
        if k == 0 {
            return 1;
        }
        if k < 0 || n < 0 || k > n {
            return 0;
        }
        (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
    }

    #[test]
    fn basis_dimensions() {
        for (m, n) in [(2, 0), (3, 0), (1, 1), (2, 1), (1, 2)] {
            let sd = SuperDim::new(m, n);
            for a in 0..5i64 {
                let expect: i64 = (0..=a).map(|j| binom(m as i64, a - j) * binom(n as i64 + j - 1, j)).sum();
                assert_eq!(wedge_basis(sd, a as usize).len() as i64, expect, "({m},{n}) a={a}");
            }
        }
        assert_eq!(wedge_basis(SuperDim::new(2, 0), 3).len(), 0);
        assert_eq!(wedge_basis(SuperDim::new(2, 1), 3).len(), 4);
    }

    #[test]
    fn even_square_vanishes() {
        let sd = SuperDim::new(2, 0);
        assert!(straighten(sd, &[(1, 1), (1, 1)]).is_empty());
        let sd = SuperDim::new(1, 1);
        let r = straighten(sd, &[(2, 1), (2, 1)]);
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn same_column_swap() {
        let sd = SuperDim::new(2, 0);
        let r = straighten(sd, &[(2, 1), (1, 1)]);
        assert_eq!(r.get(&vec![(1, 1), (2, 1)]), Some(&-Scalar::q_pow(1)));
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn ef_on_two_columns() {
        for sd in [SuperDim::new(2, 0), SuperDim::new(1, 1), SuperDim::new(2, 1)] {
            for a in 1..=sd.dim() as u8 {
                for b in 1..=sd.dim() as u8 {
                    let w = straighten(sd, &[(a, 1), (b, 2)]);
                    let ef = lin_map(&w, |m| lin_map(&act_f(sd, m, 1), |m2| act_e(sd, m2, 1)));
                    let mut expect = straighten(sd, &[(a, 2), (b, 1)]);
                    for (m, c) in straighten(sd, &[(a, 1), (b, 2)]) {
                        add_to(&mut expect, m, c * Scalar::q_pow(1));
                    }
                    assert_eq!(ef, expect, "{sd:?} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn gl_k_relations() {
        for sd in [SuperDim::new(2, 0), SuperDim::new(1, 1), SuperDim::new(2, 1)] {
            for k in 2..=3usize {
                for n in 1..=3 {
                    for w in monomial_basis(sd, k, n) {
                        let lam = weight(&w, k);
                        let v: Lin = [(w.clone(), Scalar::one())].into();
                        for i in 1..k as u8 {
                            for j in 1..k as u8 {
                                let ef = lin_map(&lin_map(&v, |m| act_f(sd, m, j)), |m| act_e(sd, m, i));
                                let fe = lin_map(&lin_map(&v, |m| act_e(sd, m, i)), |m| act_f(sd, m, j));
                                let mut diff = ef;
                                for (m, c) in fe {
                                    add_to(&mut diff, m, -c);
                                }
                                if i == j {
                                    let h = lam[i as usize - 1] as i64 - lam[i as usize] as i64;
                                    add_to(&mut diff, w.clone(), -Scalar::qint_i(h));
                                }
                                assert!(diff.is_empty(), "{sd:?} k={k} w={w:?} i={i} j={j}");
                            }
                        }
                        if k == 3 {
                            // Serre: E1^2 E2 - [2] E1 E2 E1 + E2 E1^2 = 0
                            let e = |v: &Lin, i: u8| lin_map(v, |m| act_e(sd, m, i));
                            let f = |v: &Lin, i: u8| lin_map(v, |m| act_f(sd, m, i));
                            for (i, j) in [(1u8, 2u8), (2, 1)] {
                                let a = e(&e(&e(&v, j), i), i);
                                let b = e(&e(&e(&v, i), j), i);
                                let c = e(&e(&e(&v, i), i), j);
                                let mut s = a;
                                for (m, x) in b {
                                    add_to(&mut s, m, -(x * Scalar::qint_i(2)));
                                }
                                for (m, x) in c {
                                    add_to(&mut s, m, x);
                                }
                                assert!(s.is_empty());
                                let a = f(&f(&f(&v, j), i), i);
                                let b = f(&f(&f(&v, i), j), i);
                                let c = f(&f(&f(&v, i), i), j);
                                let mut s = a;
                                for (m, x) in b {
                                    add_to(&mut s, m, -(x * Scalar::qint_i(2)));
                                }
                                for (m, x) in c {
                                    add_to(&mut s, m, x);
                                }
                                assert!(s.is_empty());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_dimension() {
        for sd in [SuperDim::new(2, 0), SuperDim::new(1, 1), SuperDim::new(2, 1)] {
            for n in 0..=4 {
                let lhs: usize = (0..=n).map(|a| wedge_basis(sd, a).len() * wedge_basis(sd, n - a).len()).sum();
                assert_eq!(lhs, monomial_basis(sd, 2, n).len());
            }
        }
    }
}
