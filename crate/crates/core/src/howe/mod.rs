//! Matrix realization of the spider at `β = m − n` through quantum
//! `gl(m|n)` exterior powers and skew Howe duality.

pub mod functor;
pub mod rt;
pub mod wedge;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::tangle::TangleError;

pub use functor::{Atom, Howe, Vector, WedgeOperator};
pub use rt::{rt_eval, rt_operator, rt_reduced, rt_reduced_at, tangle_atoms, walled_brauer_rank};
pub use wedge::{act_e, act_f, straighten, wedge_basis, Letter, Lin, Monomial};

/// The super dimension `m|n` of the vector representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SuperDim {
    pub m: usize,
    pub n: usize,
}

impl SuperDim {
    pub fn new(m: usize, n: usize) -> Self {
        assert!(m + n >= 1, "empty vector representation");
        SuperDim { m, n }
    }

    pub fn dim(self) -> usize {
        self.m + self.n
    }

    /// The specialization `d = m − n` of β.
    pub fn d(self) -> i64 {
        self.m as i64 - self.n as i64
    }

    /// Parity of the 1-based index `i`.
    pub fn odd(self, i: u8) -> bool {
        i as usize > self.m
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HoweError {
    #[error("generator does not match the object: {0}")]
    Mismatch(String),
    #[error("label would become negative")]
    NegativeLabel,
    #[error("divided power is not integral")]
    NonIntegral,
    #[error(transparent)]
    Tangle(#[from] TangleError),
}

/// `R̂(x_a ⊗ x_b)` as a list of `((a', b'), coefficient)`.
pub fn rhat(sd: SuperDim, a: u8, b: u8) -> Vec<((u8, u8), Scalar)> {
    let sign = if sd.odd(a) && sd.odd(b) { -1 } else { 1 };
    match a.cmp(&b) {
        std::cmp::Ordering::Equal if sd.odd(a) => vec![((a, a), -Scalar::q_pow(1))],
        std::cmp::Ordering::Equal => vec![((a, a), Scalar::q_pow(-1))],
        std::cmp::Ordering::Less => vec![((b, a), Scalar::from_int(sign))],
        std::cmp::Ordering::Greater => {
            vec![((b, a), Scalar::from_int(sign)), ((a, b), Scalar::skein_z())]
        }
    }
}

/// `R̂^{-1} = R̂ − (q^{-1} − q)`.
pub fn rhat_inv(sd: SuperDim, a: u8, b: u8) -> Vec<((u8, u8), Scalar)> {
    let mut out = rhat(sd, a, b);
    if let Some(e) = out.iter_mut().find(|e| e.0 == (a, b)) {
        e.1 = &e.1 - &Scalar::skein_z();
        if e.1.is_zero() {
            out.retain(|e| e.0 != (a, b));
        }
    } else {
        out.push(((a, b), -Scalar::skein_z()));
    }
    out
}

/// Pivotal weights `p_i` on `V`: the cap `V ⊗ V* → 1` is `x_i ⊗ x^j ↦ δ_ij p_i`.
///
/// They are fixed by requiring the positive curl on `V` to be `q^{-d}`,
/// which is triangular in the standard basis.
pub fn pivotal(sd: SuperDim) -> Vec<Scalar> {
    let mut p: Vec<Scalar> = Vec::with_capacity(sd.dim());
    let target = Scalar::q_pow(-sd.d());
    for a in 1..=sd.dim() as u8 {
        let below: Scalar = p.iter().cloned().sum();
        let rhs = &target - &(&Scalar::skein_z() * &below);
        // divide by the diagonal entry q^{-1} or -q
        let pa = if sd.odd(a) { -(rhs * Scalar::q_pow(-1)) } else { rhs * Scalar::q_pow(1) };
        p.push(pa);
    }
    p
}
