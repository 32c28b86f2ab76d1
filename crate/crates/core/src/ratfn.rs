//! Univariate polynomials and rational functions in `q` over the integers.
//!
//! Used for the small exact linear-algebra problems (antisymmetrizer solve,
//! operator ranks). Values are converted to and from [`Scalar`] at the edges.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

use crate::scalar::Scalar;

/// Dense integer polynomial, `coeffs[k]` is the coefficient of `q^k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        UPoly::from_coeffs(vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c.into();
        UPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            v[i] += c;
        }
        UPoly::from_coeffs(v)
    }

    pub fn neg(&self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &BigInt) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut g = self.content();
        if self.lead().unwrap().is_negative() {
            g = -g;
        }
        UPoly::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of `self` by `d`.
    fn prem(&self, d: &UPoly) -> UPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone();
            if c.is_zero() {
                r.pop();
                continue;
            }
            for x in r.iter_mut() {
                *x *= &lc;
            }
            let shift = top - dd;
            for (k, dk) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &c * dk;
            }
            r.pop();
        }
        UPoly::from_coeffs(r)
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        if self.is_zero() {
            return o.primitive();
        }
        if o.is_zero() {
            return self.primitive();
        }
        let cont = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&cont)
    }

    /// Exact quotient `self / d`; `None` if `d` does not divide `self` over the integers.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let lc = d.lead().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return None;
        }
        let mut quo = vec![BigInt::zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = &r[top];
            if c.is_zero() {
                continue;
            }
            let (qc, rem) = c.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            let shift = top - dd;
            for (k, dk) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &qc * dk;
            }
            quo[shift] = qc;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(UPoly::from_coeffs(quo))
        } else {
            None
        }
    }

    /// Number of trailing zero coefficients (the power of `q` dividing it).
    pub fn q_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

/// Element of the field `Q(q)`, kept reduced with a positive leading denominator coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: UPoly,
    den: UPoly,
}

impl RatFn {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFn { num, den };
        r.reduce();
        r
    }

    pub fn zero() -> Self {
        RatFn { num: UPoly::zero(), den: UPoly::constant(1) }
    }

    pub fn one() -> Self {
        RatFn { num: UPoly::constant(1), den: UPoly::constant(1) }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFn { num: p, den: UPoly::constant(1) }
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = UPoly::constant(1);
            return;
        }
        let g = self.num.gcd(&self.den);
        let mut g = g;
        if self.den.lead().unwrap().is_negative() {
            g = g.neg();
        }
        self.num = self.num.div_exact(&g).expect("gcd divides numerator");
        self.den = self.den.div_exact(&g).expect("gcd divides denominator");
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return RatFn::new(self.num.add(&o.num), self.den.clone());
        }
        RatFn::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> RatFn {
        assert!(!self.is_zero(), "inverse of zero");
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFn) -> RatFn {
        self.mul(&o.inv())
    }

    /// Exact conversion into the localized coefficient ring; fails when the
    /// denominator has a factor other than `q` and the cyclotomic factors.
    pub fn to_scalar(&self) -> Result<Scalar, crate::scalar::ScalarError> {
        let n = Scalar::from_upoly(&self.num, 0);
        let d = Scalar::from_upoly(&self.den, 0);
        n.checked_div(&d)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = Scalar::from_upoly(self, 0);
        write!(f, "{s}")
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

/// Rank of a matrix over `Q(q)` by fraction-free elimination on a copy.
#[allow(clippy::needless_range_loop)]
pub fn rank(rows: &[Vec<RatFn>]) -> usize {
    let mut m: Vec<Vec<RatFn>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_inv = m[rank][col].inv();
        for r in 0..m.len() {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&pivot_inv);
            for c in col..ncols {
                if m[rank][c].is_zero() {
                    continue;
                }
                let t = m[rank][c].mul(&f);
                m[r][c] = m[r][c].sub(&t);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// A basis of the right null space `{x : M x = 0}`.
#[allow(clippy::needless_range_loop)]
pub fn null_space(rows: &[Vec<RatFn>], ncols: usize) -> Vec<Vec<RatFn>> {
    let mut m: Vec<Vec<RatFn>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inv();
        for c in 0..ncols {
            m[r][c] = m[r][c].mul(&inv);
        }
        for i in 0..m.len() {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for c in 0..ncols {
                if m[r][c].is_zero() {
                    continue;
                }
                let t = m[r][c].mul(&f);
                m[i][c] = m[i][c].sub(&t);
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![RatFn::zero(); ncols];
            v[fc] = RatFn::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = m[row][fc].neg();
            }
            v
        })
        .collect()
}

impl From<i64> for RatFn {
    fn from(c: i64) -> Self {
        RatFn::from_poly(UPoly::constant(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (q^2 - 1)(q + 2) and (q^2 - 1)(q - 3)
        let f = p(&[-1, 0, 1]);
        let a = f.mul(&p(&[2, 1]));
        let b = f.mul(&p(&[-3, 1]));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn ratfn_reduces() {
        let r = RatFn::new(p(&[-1, 0, 1]), p(&[1, 1]));
        assert_eq!(r.num(), &p(&[-1, 1]));
        assert_eq!(r.den(), &p(&[1]));
    }

    #[test]
    fn rank_and_null_space() {
        let rows: Vec<Vec<RatFn>> = vec![
            vec![RatFn::from_poly(p(&[0, 1])), RatFn::from(1)],
            vec![RatFn::from_poly(p(&[0, 0, 1])), RatFn::from_poly(p(&[0, 1]))],
        ];
        assert_eq!(rank(&rows), 1);
        let ns = null_space(&rows, 2);
        assert_eq!(ns.len(), 1);
        // x0 = -x1 / q
        assert_eq!(ns[0][1], RatFn::one());
        assert_eq!(ns[0][0], RatFn::new(p(&[-1]), p(&[0, 1])));
    }
}
