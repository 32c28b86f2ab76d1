//! Exact coefficients: Laurent polynomials in `q` and `Q = q^beta` with
//! integer coefficients, localized at the factors of quantum integers.
//!
//! A [`Scalar`] is stored as `N / prod_j psi_j^{e_j}` where `N` lies in
//! `Z[q^{+-1}, Q^{+-1}]`, `psi_1 = q - q^{-1}` and `psi_j` (`j >= 2`) are the
//! balanced cyclotomic factors described in [`cyclo`]. The exponents `e_j` are
//! kept minimal, which makes the representation canonical.

pub mod cyclo;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::ratfn::{RatFn, UPoly};
pub use cyclo::{cyclotomic, psi, totient};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division is not exact in the coefficient ring: {0}")]
    Inexact(String),
    #[error("malformed scalar: {0}")]
    Malformed(String),
}

/// An exponent `u*beta + v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QExponent {
    pub u: i64,
    pub v: i64,
}

impl QExponent {
    pub const ZERO: QExponent = QExponent { u: 0, v: 0 };
    pub const BETA: QExponent = QExponent { u: 1, v: 0 };

    pub const fn new(u: i64, v: i64) -> Self {
        QExponent { u, v }
    }

    pub const fn int(v: i64) -> Self {
        QExponent { u: 0, v }
    }

    /// Value at `beta = d`.
    pub fn at(self, d: i64) -> i64 {
        self.u * d + self.v
    }
}

impl Add for QExponent {
    type Output = QExponent;
    fn add(self, o: QExponent) -> QExponent {
        QExponent::new(self.u + o.u, self.v + o.v)
    }
}

impl Sub for QExponent {
    type Output = QExponent;
    fn sub(self, o: QExponent) -> QExponent {
        QExponent::new(self.u - o.u, self.v - o.v)
    }
}

impl Neg for QExponent {
    type Output = QExponent;
    fn neg(self) -> QExponent {
        QExponent::new(-self.u, -self.v)
    }
}

impl fmt::Display for QExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u, self.v) {
            (0, v) => write!(f, "{v}"),
            (u, 0) => write!(f, "{}", beta_str(u)),
            (u, v) if v > 0 => write!(f, "{}+{v}", beta_str(u)),
            (u, v) => write!(f, "{}{v}", beta_str(u)),
        }
    }
}

fn beta_str(u: i64) -> String {
    match u {
        1 => "β".into(),
        -1 => "-β".into(),
        u => format!("{u}β"),
    }
}

/// Sparse terms keyed by `(Q exponent, q exponent)`.
type Terms = BTreeMap<(i64, i64), BigInt>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Terms,
    /// `j -> e_j > 0`
    den: BTreeMap<u32, u32>,
}

fn add_term(t: &mut Terms, k: (i64, i64), c: BigInt) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match t.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (&(ua, va), ca) in a {
        for (&(ub, vb), cb) in b {
            add_term(&mut out, (ua + ub, va + vb), ca * cb);
        }
    }
    out
}

fn psi_terms(j: u32) -> Terms {
    let (lo, c) = psi(j);
    c.iter()
        .enumerate()
        .filter(|(_, x)| **x != 0)
        .map(|(k, x)| ((0, lo + k as i64), BigInt::from(*x)))
        .collect()
}

fn psi_product(den: &BTreeMap<u32, u32>) -> Terms {
    let mut acc: Terms = [((0, 0), BigInt::one())].into_iter().collect();
    for (&j, &e) in den {
        let p = psi_terms(j);
        for _ in 0..e {
            acc = mul_terms(&acc, &p);
        }
    }
    acc
}

/// Divide every `Q`-slice of `num` by `psi_j`; `None` if some slice is not divisible.
fn div_terms_psi(num: &Terms, j: u32) -> Option<Terms> {
    let (lo, s) = psi(j);
    let ds = s.len() - 1;
    let mut out = Terms::new();
    let mut iter = num.iter().peekable();
    while let Some(&(&(u, _), _)) = iter.peek() {
        let mut slice: Vec<(i64, &BigInt)> = Vec::new();
        while let Some(&(&(u2, v), c)) = iter.peek() {
            if u2 != u {
                break;
            }
            slice.push((v, c));
            iter.next();
        }
        let low = slice[0].0;
        let high = slice[slice.len() - 1].0;
        let len = (high - low) as usize + 1;
        if len <= ds {
            return None;
        }
        let mut r = vec![BigInt::zero(); len];
        for (v, c) in slice {
            r[(v - low) as usize] = c.clone();
        }
        let mut quo = vec![BigInt::zero(); len - ds];
        for top in (ds..len).rev() {
            if r[top].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut r[top]);
            let shift = top - ds;
            for (k, &sk) in s.iter().enumerate().take(ds) {
                if sk != 0 {
                    r[shift + k] -= &c * sk;
                }
            }
            quo[shift] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        for (k, c) in quo.into_iter().enumerate() {
            if !c.is_zero() {
                out.insert((u, low - lo + k as i64), c);
            }
        }
    }
    Some(out)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Terms::new(), den: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Scalar::monomial(BigInt::from(c), 0, 0)
    }

    /// `c * Q^u * q^v`
    pub fn monomial(c: BigInt, u: i64, v: i64) -> Self {
        let mut num = Terms::new();
        add_term(&mut num, (u, v), c);
        Scalar { num, den: BTreeMap::new() }
    }

    /// `q^v`
    pub fn q_pow(v: i64) -> Self {
        Scalar::monomial(BigInt::one(), 0, v)
    }

    /// `q^{u*beta + v} = Q^u q^v`
    pub fn qpow(x: QExponent) -> Self {
        Scalar::monomial(BigInt::one(), x.u, x.v)
    }

    /// `(-q)^k` for an integer `k`.
    pub fn neg_q_pow(k: i64) -> Self {
        let s = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Scalar::monomial(BigInt::from(s), 0, k)
    }

    /// `q^{-1} - q`, the recurring skein coefficient.
    pub fn skein_z() -> Self {
        Scalar::q_pow(-1) - Scalar::q_pow(1)
    }

    /// Quantum integer `[x] = (q^x - q^{-x})/(q - q^{-1})`.
    pub fn qint(x: QExponent) -> Self {
        let mut num = Terms::new();
        add_term(&mut num, (x.u, x.v), BigInt::one());
        add_term(&mut num, (-x.u, -x.v), -BigInt::one());
        Scalar { num, den: [(1, 1)].into_iter().collect() }.normalized()
    }

    /// `[k]` for an integer `k`.
    pub fn qint_i(k: i64) -> Self {
        Scalar::qint(QExponent::int(k))
    }

    /// Quantum binomial coefficient.
    pub fn qbinom(x: QExponent, k: u32) -> Self {
        let mut acc = Scalar::one();
        for j in 0..k as i64 {
            acc = &acc * &Scalar::qint(x - QExponent::int(j));
        }
        acc.div_qfactorial(k)
    }

    /// `[k]!`
    pub fn qfactorial(k: u32) -> Self {
        (1..=k as i64).fold(Scalar::one(), |acc, i| &acc * &Scalar::qint_i(i))
    }

    /// Division by `[k]`; always exact in this ring.
    pub fn div_qint(&self, k: u32) -> Self {
        let mut s = self.clone();
        for j in 2..=k {
            if k.is_multiple_of(j) {
                *s.den.entry(j).or_insert(0) += 1;
            }
        }
        s.normalized()
    }

    /// Division by `[k]!`; always exact in this ring.
    pub fn div_qfactorial(&self, k: u32) -> Self {
        let mut s = self.clone();
        for j in 2..=k {
            let e = k / j;
            if e > 0 {
                *s.den.entry(j).or_insert(0) += e;
            }
        }
        s.normalized()
    }

    /// Polynomial `sum_k p_k q^{k + shift}` from dense coefficients.
    pub fn from_upoly(p: &UPoly, shift: i64) -> Self {
        let mut num = Terms::new();
        for (k, c) in p.coeffs().iter().enumerate() {
            add_term(&mut num, (0, k as i64 + shift), c.clone());
        }
        Scalar { num, den: BTreeMap::new() }
    }

    fn normalized(mut self) -> Self {
        self.num.retain(|_, c| !c.is_zero());
        if self.num.is_empty() {
            self.den.clear();
            return self;
        }
        let js: Vec<u32> = self.den.keys().copied().collect();
        for j in js {
            while let Some(&e) = self.den.get(&j) {
                if e == 0 {
                    self.den.remove(&j);
                    break;
                }
                match div_terms_psi(&self.num, j) {
                    Some(n) => {
                        self.num = n;
                        if e == 1 {
                            self.den.remove(&j);
                        } else {
                            self.den.insert(j, e - 1);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one()
    }

    /// True when no power of `Q` other than `Q^0` occurs.
    pub fn is_univariate(&self) -> bool {
        self.num.keys().all(|&(u, _)| u == 0)
    }

    /// Power of `q - q^{-1}` in the canonical denominator.
    pub fn denom_power(&self) -> u32 {
        self.den.get(&1).copied().unwrap_or(0)
    }

    /// Canonical denominator exponents `j -> e_j`.
    pub fn denominator(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    /// Numerator terms as `(q_exp, Q_exp, coeff)`, ordered by `(Q_exp, q_exp)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> {
        self.num.iter().map(|(&(u, v), c)| (v, u, c))
    }

    /// Substitute `Q := q^d`.
    pub fn specialize(&self, d: i64) -> Scalar {
        let mut num = Terms::new();
        for (&(u, v), c) in &self.num {
            add_term(&mut num, (0, v + d * u), c.clone());
        }
        Scalar { num, den: self.den.clone() }.normalized()
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient. The divisor's numerator must factor as a signed
    /// monomial times factors `psi_j`; anything else is reported as inexact.
    pub fn checked_div(&self, d: &Scalar) -> Result<Scalar, ScalarError> {
        if d.is_zero() {
            return Err(ScalarError::Inexact("division by zero".into()));
        }
        let mut n = d.num.clone();
        let mut f: BTreeMap<u32, u32> = BTreeMap::new();
        while n.len() > 1 {
            let lo = n.keys().map(|k| k.1).min().unwrap();
            let hi = n.keys().map(|k| k.1).max().unwrap();
            let span = (hi - lo) as u32;
            let mut progressed = false;
            let mut j = 1u32;
            while j <= 2 * span * span + 2 {
                let w = if j == 1 { 2 } else { 2 * totient(j) };
                if w <= span {
                    if let Some(m) = div_terms_psi(&n, j) {
                        n = m;
                        *f.entry(j).or_insert(0) += 1;
                        progressed = true;
                        break;
                    }
                }
                j += 1;
            }
            if !progressed {
                return Err(ScalarError::Inexact(format!("{self} / {d}")));
            }
        }
        let (&(u, v), c) = n.iter().next().expect("nonzero divisor");
        if !(c.is_one() || (-c).is_one()) {
            return Err(ScalarError::Inexact(format!("{self} / {d}")));
        }
        let mut inv_num = psi_product(&d.den);
        inv_num = mul_terms(&inv_num, &Scalar::monomial(c.clone(), -u, -v).num);
        let inv = Scalar { num: inv_num, den: f }.normalized();
        Ok(self * &inv)
    }

    /// Convert a univariate scalar into a rational function in `q`.
    pub fn to_ratfn(&self) -> Result<RatFn, ScalarError> {
        if !self.is_univariate() {
            return Err(ScalarError::Malformed("scalar depends on Q".into()));
        }
        let (pn, sn) = laurent_to_poly(&self.num);
        let (pd, sd) = laurent_to_poly(&psi_product(&self.den));
        let shift = sn - sd;
        let (num, den) = if shift >= 0 {
            (pn.mul(&UPoly::monomial(1, shift as usize)), pd)
        } else {
            (pn, pd.mul(&UPoly::monomial(1, (-shift) as usize)))
        };
        Ok(RatFn::new(num, den))
    }

    /// JSON form: `{"terms": [[q_exp, Q_exp, coeff], ...], "denom_power": k,
    /// "denom_cyclotomic": [[j, e_j], ...]}`. Coefficients outside the `i64`
    /// range are written as decimal strings.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .num
            .iter()
            .map(|(&(u, v), c)| {
                let cv = match c.to_i64() {
                    Some(x) => json!(x),
                    None => json!(c.to_string()),
                };
                json!([v, u, cv])
            })
            .collect();
        let cyc: Vec<Value> = self
            .den
            .iter()
            .filter(|(&j, _)| j >= 2)
            .map(|(&j, &e)| json!([j, e]))
            .collect();
        json!({"terms": terms, "denom_power": self.denom_power(), "denom_cyclotomic": cyc})
    }

    pub fn from_json(v: &Value) -> Result<Scalar, ScalarError> {
        let bad = |m: &str| ScalarError::Malformed(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let mut num = Terms::new();
        for t in obj.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
            let a = t.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("term must be a triple"))?;
            let qe = a[0].as_i64().ok_or_else(|| bad("q exponent"))?;
            let ue = a[1].as_i64().ok_or_else(|| bad("Q exponent"))?;
            let c: BigInt = match &a[2] {
                Value::Number(n) => BigInt::from(n.as_i64().ok_or_else(|| bad("coefficient"))?),
                Value::String(s) => s.parse().map_err(|_| bad("coefficient"))?,
                _ => return Err(bad("coefficient")),
            };
            add_term(&mut num, (ue, qe), c);
        }
        let mut den = BTreeMap::new();
        let k = obj.get("denom_power").and_then(Value::as_u64).unwrap_or(0) as u32;
        if k > 0 {
            den.insert(1, k);
        }
        if let Some(cyc) = obj.get("denom_cyclotomic") {
            for p in cyc.as_array().ok_or_else(|| bad("denom_cyclotomic"))? {
                let a = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("denom pair"))?;
                let j = a[0].as_u64().filter(|&j| j >= 2).ok_or_else(|| bad("cyclotomic index"))? as u32;
                let e = a[1].as_u64().ok_or_else(|| bad("cyclotomic exponent"))? as u32;
                if e > 0 {
                    *den.entry(j).or_insert(0) += e;
                }
            }
        }
        Ok(Scalar { num, den }.normalized())
    }
}

fn laurent_to_poly(t: &Terms) -> (UPoly, i64) {
    let Some(lo) = t.keys().map(|k| k.1).min() else {
        return (UPoly::zero(), 0);
    };
    let hi = t.keys().map(|k| k.1).max().unwrap();
    let mut c = vec![BigInt::zero(); (hi - lo) as usize + 1];
    for (&(_, v), x) in t {
        c[(v - lo) as usize] += x;
    }
    (UPoly::from_coeffs(c), lo)
}

fn add_impl(a: &Scalar, b: &Scalar, sign: i32) -> Scalar {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if sign > 0 { b.clone() } else { -b };
    }
    let push = |acc: &mut Terms, t: &Terms, neg: bool| {
        for (k, c) in t {
            add_term(acc, *k, if neg { -c } else { c.clone() });
        }
    };
    if a.den == b.den {
        let mut num = a.num.clone();
        push(&mut num, &b.num, sign < 0);
        return Scalar { num, den: a.den.clone() }.normalized();
    }
    let mut den = a.den.clone();
    for (&j, &e) in &b.den {
        let x = den.entry(j).or_insert(0);
        *x = (*x).max(e);
    }
    let lift = |s: &Scalar| -> Terms {
        let extra: BTreeMap<u32, u32> = den
            .iter()
            .map(|(&j, &e)| (j, e - s.den.get(&j).copied().unwrap_or(0)))
            .filter(|(_, e)| *e > 0)
            .collect();
        if extra.is_empty() {
            s.num.clone()
        } else {
            mul_terms(&s.num, &psi_product(&extra))
        }
    };
    let mut num = lift(a);
    push(&mut num, &lift(b), sign < 0);
    Scalar { num, den }.normalized()
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    let mut den = a.den.clone();
    for (&j, &e) in &b.den {
        *den.entry(j).or_insert(0) += e;
    }
    Scalar { num: mul_terms(&a.num, &b.num), den }.normalized()
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                $body(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $body(&self, &o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                $body(&self, o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $body(self, &o)
            }
        }
    };
}

binop!(Add, add, |a, b| add_impl(a, b, 1));
binop!(Sub, sub, |a, b| add_impl(a, b, -1));
binop!(Mul, mul, mul_impl);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = add_impl(self, o, 1);
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = add_impl(self, &o, 1);
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.iter().map(|(k, c)| (*k, -c)).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::from_int(c)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

fn fmt_monomial(u: i64, v: i64) -> String {
    let mut parts = Vec::new();
    match u {
        0 => {}
        1 => parts.push("Q".to_string()),
        u => parts.push(format!("Q^{u}")),
    }
    match v {
        0 => {}
        1 => parts.push("q".to_string()),
        v => parts.push(format!("q^{v}")),
    }
    parts.join("*")
}

fn fmt_terms(t: &Terms) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (&(u, v), c)) in t.iter().enumerate() {
        let mono = fmt_monomial(u, v);
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{a}*{mono}"));
        }
    }
    s
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = fmt_terms(&self.num);
        if self.den.is_empty() {
            return write!(f, "{n}");
        }
        let d: Vec<String> = self
            .den
            .iter()
            .map(|(&j, &e)| {
                let base = if j == 1 { "(q-q^-1)".to_string() } else { format!("Psi{j}") };
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        write!(f, "({n})/({})", d.join("*"))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Scalar::from_json(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Scalar::q_pow(v)
    }

    #[test]
    fn qpow_examples() {
        assert!(Scalar::qpow(QExponent::ZERO).is_one());
        assert_eq!(Scalar::qpow(QExponent::new(-1, 2)).to_string(), "Q^-1*q^2");
    }

    #[test]
    fn qint_examples() {
        assert!(Scalar::qint_i(0).is_zero());
        assert_eq!(Scalar::qint_i(2), q(1) + q(-1));
        let b = Scalar::qint(QExponent::BETA);
        assert_eq!(b.denom_power(), 1);
        assert_eq!(b.to_string(), "(-Q^-1 + Q)/((q-q^-1))");
        assert_eq!(Scalar::qint_i(-1), Scalar::from_int(-1));
        assert_eq!(Scalar::qint_i(3), q(2) + Scalar::one() + q(-2));
    }

    #[test]
    fn quantum_integer_is_product_of_psi() {
        for k in 2..13u32 {
            let mut s = Scalar::one();
            for j in 2..=k {
                if k % j == 0 {
                    s = s * Scalar { num: psi_terms(j), den: BTreeMap::new() };
                }
            }
            assert_eq!(s, Scalar::qint_i(k as i64), "k = {k}");
        }
    }

    #[test]
    fn qbinom_examples() {
        assert!(Scalar::qbinom(QExponent::int(3), 0).is_one());
        assert_eq!(Scalar::qbinom(QExponent::int(2), 1), Scalar::qint_i(2));
        assert!(Scalar::qbinom(QExponent::int(6), 3).denominator().is_empty());
        let b = QExponent::BETA;
        let expect = (Scalar::qint(b) * Scalar::qint(b - QExponent::int(1))).div_qint(2);
        assert_eq!(Scalar::qbinom(b, 2), expect);
    }

    #[test]
    fn specialize_examples() {
        let b = Scalar::qint(QExponent::BETA);
        assert_eq!(b.specialize(2), Scalar::qint_i(2));
        assert_eq!(Scalar::qpow(QExponent::new(1, 0)).specialize(-1), q(-1));
        assert_eq!(Scalar::qint(QExponent::new(1, -1)).specialize(0), Scalar::from_int(-1));
    }

    #[test]
    fn checked_div_roundtrip() {
        let a = Scalar::qint(QExponent::new(1, 3)) * q(5);
        let d = Scalar::qint_i(6) * Scalar::qint_i(4) * q(-3);
        let r = (&a * &d).checked_div(&d).unwrap();
        assert_eq!(r, a);
        let r = a.checked_div(&d).unwrap();
        assert_eq!(r * d, a);
        assert!(a.checked_div(&(q(1) + Scalar::from_int(2))).is_err());
    }

    #[test]
    fn json_roundtrip_and_big_coefficients() {
        let big = Scalar::monomial(BigInt::from(10).pow(30), 2, -3);
        let s = big + Scalar::qbinom(QExponent::new(1, 2), 3);
        let j = s.to_json();
        assert_eq!(Scalar::from_json(&j).unwrap(), s);
        let text = serde_json::to_string(&s).unwrap();
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn ratfn_roundtrip() {
        let s = Scalar::qbinom(QExponent::int(5), 2).div_qint(3) * q(-4);
        let r = s.to_ratfn().unwrap();
        assert_eq!(r.to_scalar().unwrap(), s);
    }
}
