//! Evaluation of elementary morphisms on tensor products of exterior
//! powers and their duals.
//!
//! A basis state of an object `(a_1, ..., a_k)` is the concatenation of one
//! basis monomial of `⋀^{a_t}` per factor; for a dual factor the monomial
//! labels the dual basis vector.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::scalar::Scalar;
use crate::skein::Perm;
use crate::tangle::{Orientation, Strand};

use super::wedge::{self, add_to, Letter, Lin};
use super::{pivotal, rhat, rhat_inv, HoweError, SuperDim};

pub type Vector = HashMap<Vec<u8>, Scalar>;

/// Elementary morphisms understood by the evaluator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `E^{(r)}: a ⊗ b → (a+r) ⊗ (b−r)` on two upward factors.
    E { pos: usize, r: u32 },
    /// `F^{(r)}: a ⊗ b → (a−r) ⊗ (b+r)` on two upward factors.
    F { pos: usize, r: u32 },
    /// Creates `a ⊗ a*` (`Up`) or `a* ⊗ a` (`Down`) at `pos, pos + 1`.
    Cup { pos: usize, label: u32, orientation: Orientation },
    /// Closes `a ⊗ a*` (`Up`) or `a* ⊗ a` (`Down`) at `pos, pos + 1`.
    Cap { pos: usize, label: u32, orientation: Orientation },
    InsertZero { pos: usize, orientation: Orientation },
    RemoveZero { pos: usize },
    /// `R̂^{±1}` on two upward color-1 factors.
    Braid { pos: usize, inverse: bool },
    /// Unnormalized antisymmetrizer `Σ_w (−q)^{l(w)} H_w` on `width` color-1 factors.
    Antisym { pos: usize, width: usize },
}

type LocalMap = HashMap<Vec<u8>, Vec<(Vec<u8>, Scalar)>>;
/// `(is_e, a, b, r)` of a divided power rung.
type RungKey = (bool, u32, u32, u32);

/// Evaluator for a fixed `gl(m|n)`, caching exterior power data.
pub struct Howe {
    sd: SuperDim,
    pivot: Vec<Scalar>,
    pivot_inv: Vec<Scalar>,
    bases: RwLock<HashMap<u32, Arc<Vec<Vec<u8>>>>>,
    rungs: RwLock<HashMap<RungKey, Arc<LocalMap>>>,
}

fn offsets(obj: &[Strand]) -> Vec<usize> {
    let mut out = Vec::with_capacity(obj.len() + 1);
    let mut s = 0;
    out.push(0);
    for x in obj {
        s += x.color as usize;
        out.push(s);
    }
    out
}

fn splice(key: &[u8], start: usize, end: usize, new: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(key.len() - (end - start) + new.len());
    out.extend_from_slice(&key[..start]);
    out.extend_from_slice(new);
    out.extend_from_slice(&key[end..]);
    out
}

fn add_vec(v: &mut Vector, k: Vec<u8>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match v.entry(k) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl Howe {
    pub fn new(sd: SuperDim) -> Self {
        let pivot = pivotal(sd);
        let pivot_inv = pivot
            .iter()
            .map(|p| Scalar::one().checked_div(p).expect("pivotal weights are units"))
            .collect();
        Howe { sd, pivot, pivot_inv, bases: Default::default(), rungs: Default::default() }
    }

    pub fn super_dim(&self) -> SuperDim {
        self.sd
    }

    pub fn basis(&self, a: u32) -> Arc<Vec<Vec<u8>>> {
        if let Some(b) = self.bases.read().unwrap().get(&a) {
            return b.clone();
        }
        let b = Arc::new(wedge::wedge_basis(self.sd, a as usize));
        self.bases.write().unwrap().insert(a, b.clone());
        b
    }

    /// Basis states of an object.
    pub fn object_basis(&self, obj: &[Strand]) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new()];
        for x in obj {
            let b = self.basis(x.color);
            out = out
                .iter()
                .flat_map(|s| {
                    b.iter().map(move |m| {
                        let mut t = s.clone();
                        t.extend_from_slice(m);
                        t
                    })
                })
                .collect();
        }
        out
    }

    fn weight_of(&self, m: &[u8], inverse: bool) -> Scalar {
        let table = if inverse { &self.pivot_inv } else { &self.pivot };
        m.iter().fold(Scalar::one(), |acc, &i| acc * &table[i as usize - 1])
    }

    /// Divided power rung on `⋀^a ⊗ ⋀^b`, keyed by concatenated monomials.
    fn rung(&self, is_e: bool, a: u32, b: u32, r: u32) -> Result<Arc<LocalMap>, HoweError> {
        let k = (is_e, a, b, r);
        if let Some(m) = self.rungs.read().unwrap().get(&k) {
            return Ok(m.clone());
        }
        let mut map = LocalMap::new();
        let fact = Scalar::qfactorial(r);
        for s in self.basis(a).iter() {
            for t in self.basis(b).iter() {
                let mono: Vec<Letter> = s.iter().map(|&i| (i, 1)).chain(t.iter().map(|&i| (i, 2))).collect();
                let mut v: Lin = [(mono, Scalar::one())].into();
                for _ in 0..r {
                    v = wedge::lin_map(&v, |w| if is_e { wedge::act_e(self.sd, w, 1) } else { wedge::act_f(self.sd, w, 1) });
                }
                let mut col = Vec::with_capacity(v.len());
                for (w, c) in v {
                    let c = c.checked_div(&fact).map_err(|_| HoweError::NonIntegral)?;
                    if c.denom_power() > 0 || !c.denominator().is_empty() {
                        return Err(HoweError::NonIntegral);
                    }
                    col.push((w.iter().map(|l| l.0).collect::<Vec<u8>>(), c));
                }
                let mut key = s.clone();
                key.extend_from_slice(t);
                map.insert(key, col);
            }
        }
        let m = Arc::new(map);
        self.rungs.write().unwrap().insert(k, m.clone());
        Ok(m)
    }

    /// Target object of an atom, checking its source.
    pub fn target(&self, obj: &[Strand], atom: &Atom) -> Result<Vec<Strand>, HoweError> {
        let bad = |what: &str| Err(HoweError::Mismatch(format!("{what} on {}", crate::tangle::word_str(obj))));
        let mut out = obj.to_vec();
        let up = Orientation::Up;
        match *atom {
            Atom::E { pos, r } | Atom::F { pos, r } => {
                if pos + 1 >= obj.len() || obj[pos].orientation != up || obj[pos + 1].orientation != up {
                    return bad("rung");
                }
                let (a, b) = (obj[pos].color, obj[pos + 1].color);
                let (na, nb) = if matches!(atom, Atom::E { .. }) {
                    (Some(a + r), b.checked_sub(r))
                } else {
                    (a.checked_sub(r), Some(b + r))
                };
                let (Some(na), Some(nb)) = (na, nb) else {
                    return Err(HoweError::NegativeLabel);
                };
                out[pos].color = na;
                out[pos + 1].color = nb;
            }
            Atom::Cup { pos, label, orientation } => {
                if pos > obj.len() {
                    return bad("cup");
                }
                let s = Strand { color: label, orientation };
                out.splice(pos..pos, [s, s.dual()]);
            }
            Atom::Cap { pos, label, orientation } => {
                let s = Strand { color: label, orientation };
                if pos + 1 >= obj.len() || obj[pos] != s || obj[pos + 1] != s.dual() {
                    return bad("cap");
                }
                out.drain(pos..pos + 2);
            }
            Atom::InsertZero { pos, orientation } => {
                if pos > obj.len() {
                    return bad("zero insertion");
                }
                out.insert(pos, Strand { color: 0, orientation });
            }
            Atom::RemoveZero { pos } => {
                if pos >= obj.len() || obj[pos].color != 0 {
                    return bad("zero removal");
                }
                out.remove(pos);
            }
            Atom::Braid { pos, .. } => {
                if pos + 1 >= obj.len() || obj[pos] != Strand::up(1) || obj[pos + 1] != Strand::up(1) {
                    return bad("braid");
                }
            }
            Atom::Antisym { pos, width } => {
                if pos + width > obj.len() || obj[pos..pos + width].iter().any(|s| *s != Strand::up(1)) {
                    return bad("antisymmetrizer");
                }
            }
        }
        Ok(out)
    }

    /// Apply one atom to a vector in the object `obj`.
    pub fn apply(&self, v: &Vector, obj: &[Strand], atom: &Atom) -> Result<(Vector, Vec<Strand>), HoweError> {
        let target = self.target(obj, atom)?;
        let off = offsets(obj);
        let mut out = Vector::with_capacity(v.len());
        match *atom {
            Atom::E { pos, r } | Atom::F { pos, r } => {
                if r == 0 {
                    return Ok((v.clone(), target));
                }
                let (a, b) = (obj[pos].color, obj[pos + 1].color);
                let map = self.rung(matches!(atom, Atom::E { .. }), a, b, r)?;
                let (s, e) = (off[pos], off[pos + 2]);
                for (k, c) in v {
                    if let Some(col) = map.get(&k[s..e]) {
                        for (nk, d) in col {
                            add_vec(&mut out, splice(k, s, e, nk), c * d);
                        }
                    }
                }
            }
            Atom::Cup { pos, label, orientation } => {
                let s = off[pos];
                let basis = self.basis(label);
                for (k, c) in v {
                    for m in basis.iter() {
                        let mut new = m.clone();
                        new.extend_from_slice(m);
                        let w = match orientation {
                            Orientation::Up => c.clone(),
                            Orientation::Down => c * &self.weight_of(m, true),
                        };
                        add_vec(&mut out, splice(k, s, s, &new), w);
                    }
                }
            }
            Atom::Cap { pos, label, orientation } => {
                let (s, mid, e) = (off[pos], off[pos + 1], off[pos + 2]);
                debug_assert_eq!(mid - s, label as usize);
                for (k, c) in v {
                    if k[s..mid] != k[mid..e] {
                        continue;
                    }
                    let w = match orientation {
                        Orientation::Up => c * &self.weight_of(&k[s..mid], false),
                        Orientation::Down => c.clone(),
                    };
                    add_vec(&mut out, splice(k, s, e, &[]), w);
                }
            }
            Atom::InsertZero { .. } | Atom::RemoveZero { .. } => return Ok((v.clone(), target)),
            Atom::Braid { pos, inverse } => {
                let s = off[pos];
                for (k, c) in v {
                    let local = if inverse { rhat_inv(self.sd, k[s], k[s + 1]) } else { rhat(self.sd, k[s], k[s + 1]) };
                    for ((x, y), d) in local {
                        add_vec(&mut out, splice(k, s, s + 2, &[x, y]), c * &d);
                    }
                }
            }
            Atom::Antisym { pos, width } => {
                for w in Perm::all(width) {
                    let coeff = Scalar::neg_q_pow(w.length() as i64);
                    let mut cur = v.clone();
                    for &i in w.reduced_word().iter().rev() {
                        cur = self.apply(&cur, obj, &Atom::Braid { pos: pos + i - 1, inverse: false })?.0;
                    }
                    for (k, c) in cur {
                        add_vec(&mut out, k, c * &coeff);
                    }
                }
            }
        }
        Ok((out, target))
    }

    /// Apply a sequence of atoms (first element acts first).
    pub fn apply_all(&self, v: &Vector, obj: &[Strand], atoms: &[Atom]) -> Result<(Vector, Vec<Strand>), HoweError> {
        let mut cur = v.clone();
        let mut o = obj.to_vec();
        for a in atoms {
            let (nv, no) = self.apply(&cur, &o, a)?;
            cur = nv;
            o = no;
        }
        Ok((cur, o))
    }

    /// Target object of a sequence of atoms.
    pub fn target_all(&self, obj: &[Strand], atoms: &[Atom]) -> Result<Vec<Strand>, HoweError> {
        atoms.iter().try_fold(obj.to_vec(), |o, a| self.target(&o, a))
    }

    /// The operator of a sequence of atoms on the full source object.
    pub fn operator(&self, source: &[Strand], atoms: &[Atom]) -> Result<WedgeOperator, HoweError> {
        let target = self.target_all(source, atoms)?;
        let cols: Result<Vec<_>, HoweError> = self
            .object_basis(source)
            .into_par_iter()
            .map(|b| {
                let v: Vector = [(b.clone(), Scalar::one())].into();
                let (out, _) = self.apply_all(&v, source, atoms)?;
                Ok((b, out.into_iter().collect::<BTreeMap<_, _>>()))
            })
            .collect();
        let columns = cols?.into_iter().filter(|(_, c)| !c.is_empty()).collect();
        Ok(WedgeOperator { source: source.to_vec(), target, columns })
    }
}

/// Sparse operator between objects, column-major by source basis state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeOperator {
    pub source: Vec<Strand>,
    pub target: Vec<Strand>,
    pub columns: BTreeMap<Vec<u8>, BTreeMap<Vec<u8>, Scalar>>,
}

impl WedgeOperator {
    pub fn zero(source: Vec<Strand>, target: Vec<Strand>) -> Self {
        WedgeOperator { source, target, columns: BTreeMap::new() }
    }

    pub fn identity(h: &Howe, obj: &[Strand]) -> Self {
        let columns = h
            .object_basis(obj)
            .into_iter()
            .map(|b| (b.clone(), [(b, Scalar::one())].into()))
            .collect();
        WedgeOperator { source: obj.to_vec(), target: obj.to_vec(), columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn entry(&self, row: &[u8], col: &[u8]) -> Scalar {
        self.columns.get(col).and_then(|c| c.get(row)).cloned().unwrap_or_default()
    }

    fn same_shape(&self, o: &WedgeOperator) {
        assert!(self.source == o.source && self.target == o.target, "operator shapes differ");
    }

    pub fn add(&self, o: &WedgeOperator) -> WedgeOperator {
        self.same_shape(o);
        let mut columns = self.columns.clone();
        for (k, col) in &o.columns {
            let e = columns.entry(k.clone()).or_default();
            for (r, c) in col {
                add_to(e, r.clone(), c.clone());
            }
            if e.is_empty() {
                columns.remove(k);
            }
        }
        WedgeOperator { source: self.source.clone(), target: self.target.clone(), columns }
    }

    pub fn scale(&self, s: &Scalar) -> WedgeOperator {
        if s.is_zero() {
            return WedgeOperator::zero(self.source.clone(), self.target.clone());
        }
        let columns = self
            .columns
            .iter()
            .map(|(k, col)| (k.clone(), col.iter().map(|(r, c)| (r.clone(), c * s)).collect()))
            .collect();
        WedgeOperator { source: self.source.clone(), target: self.target.clone(), columns }
    }

    pub fn sub(&self, o: &WedgeOperator) -> WedgeOperator {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &WedgeOperator) -> WedgeOperator {
        assert_eq!(o.target, self.source, "composition of mismatched operators");
        let mut columns = BTreeMap::new();
        for (k, col) in &o.columns {
            let mut out = BTreeMap::new();
            for (mid, c) in col {
                if let Some(c2) = self.columns.get(mid) {
                    for (r, d) in c2 {
                        add_to(&mut out, r.clone(), c * d);
                    }
                }
            }
            if !out.is_empty() {
                columns.insert(k.clone(), out);
            }
        }
        WedgeOperator { source: o.source.clone(), target: self.target.clone(), columns }
    }

    /// Apply to a single vector.
    pub fn apply(&self, v: &BTreeMap<Vec<u8>, Scalar>) -> BTreeMap<Vec<u8>, Scalar> {
        let mut out = BTreeMap::new();
        for (k, c) in v {
            if let Some(col) = self.columns.get(k) {
                for (r, d) in col {
                    add_to(&mut out, r.clone(), c * d);
                }
            }
        }
        out
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(a: u32) -> Strand {
        Strand::up(a)
    }

    #[test]
    fn zigzags() {
        for sd in [SuperDim::new(2, 0), SuperDim::new(1, 1), SuperDim::new(2, 1)] {
            let h = Howe::new(sd);
            for a in 1..=2u32 {
                for o in [Orientation::Up, Orientation::Down] {
                    let s = Strand { color: a, orientation: o };
                    // (cap ⊗ id)(id ⊗ cup) = id on s
                    let z1 = h
                        .operator(
                            &[s],
                            &[Atom::Cup { pos: 1, label: a, orientation: o.flip() }, Atom::Cap { pos: 0, label: a, orientation: o }],
                        )
                        .unwrap();
                    assert_eq!(z1, WedgeOperator::identity(&h, &[s]), "{sd:?} {s}");
                    let z2 = h
                        .operator(
                            &[s],
                            &[Atom::Cup { pos: 0, label: a, orientation: o }, Atom::Cap { pos: 1, label: a, orientation: o.flip() }],
                        )
                        .unwrap();
                    assert_eq!(z2, WedgeOperator::identity(&h, &[s]), "{sd:?} {s}");
                }
            }
        }
    }

    #[test]
    fn circles_and_curls() {
        for sd in [SuperDim::new(2, 0), SuperDim::new(3, 0), SuperDim::new(1, 1), SuperDim::new(2, 1)] {
            let h = Howe::new(sd);
            for o in [Orientation::Up, Orientation::Down] {
                let c = h
                    .operator(&[], &[Atom::Cup { pos: 0, label: 1, orientation: o }, Atom::Cap { pos: 0, label: 1, orientation: o }])
                    .unwrap();
                assert_eq!(c.entry(&[], &[]), Scalar::qint_i(sd.d()));
            }
            // positive curl on an upward strand: cup on the right, braid, cap
            let curl = h
                .operator(
                    &[up(1)],
                    &[
                        Atom::Cup { pos: 1, label: 1, orientation: Orientation::Up },
                        Atom::Braid { pos: 0, inverse: false },
                        Atom::Cap { pos: 1, label: 1, orientation: Orientation::Up },
                    ],
                )
                .unwrap();
            assert_eq!(curl, WedgeOperator::identity(&h, &[up(1)]).scale(&Scalar::q_pow(-sd.d())));
        }
    }

    #[test]
    fn rung_divided_powers() {
        let h = Howe::new(SuperDim::new(2, 1));
        // E^{(2)}: 0 ⊗ 2 → 2 ⊗ 0 is the identity on monomials, and so is F^{(2)} back
        let op = h.operator(&[up(0), up(2)], &[Atom::E { pos: 0, r: 2 }]).unwrap();
        for (k, col) in &op.columns {
            assert_eq!(col.len(), 1);
            assert_eq!(col.get(k), Some(&Scalar::one()));
        }
        let op = h.operator(&[up(2), up(0)], &[Atom::F { pos: 0, r: 2 }]).unwrap();
        for (k, col) in &op.columns {
            assert_eq!(col.get(k), Some(&Scalar::one()));
        }
    }

    #[test]
    fn c11_is_rhat() {
        for sd in [SuperDim::new(2, 0), SuperDim::new(1, 1), SuperDim::new(2, 1)] {
            let h = Howe::new(sd);
            let obj = [up(1), up(1)];
            let fe = h.operator(&obj, &[Atom::E { pos: 0, r: 1 }, Atom::F { pos: 0, r: 1 }]).unwrap();
            let c = WedgeOperator::identity(&h, &obj).scale(&Scalar::q_pow(-1)).sub(&fe);
            let r = h.operator(&obj, &[Atom::Braid { pos: 0, inverse: false }]).unwrap();
            assert_eq!(c, r, "{sd:?}");
        }
    }
}
