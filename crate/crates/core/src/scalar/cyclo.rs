//! Cyclotomic factors of quantum integers.
//!
//! With `x = q^2` one has `[k] = q^{1-k} (x^k - 1)/(x - 1)`, so `[k]` is, up to a
//! power of `q`, the product of `Phi_j(q^2)` over divisors `j > 1` of `k`. We
//! use the balanced factors `psi_j = q^{-phi(j)} Phi_j(q^2)` for `j >= 2`, and
//! `psi_1 = q - q^{-1}`. Then `[k]` is exactly the product of `psi_j` over
//! divisors `j >= 2` of `k`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// `Phi_j(x)` as dense coefficients, lowest degree first.
pub fn cyclotomic(j: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&j) {
        return c.clone();
    }
    assert!(j >= 1);
    // x^j - 1 divided by Phi_d for every proper divisor d
    let mut p = vec![0i64; j as usize + 1];
    p[0] = -1;
    p[j as usize] = 1;
    for d in 1..j {
        if j.is_multiple_of(d) {
            let f = cyclotomic(d);
            p = div_monic(&p, &f);
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(j, p.clone());
    p
}

fn div_monic(p: &[i64], d: &[i64]) -> Vec<i64> {
    let dd = d.len() - 1;
    let mut r = p.to_vec();
    let mut q = vec![0i64; p.len() - dd];
    for top in (dd..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        let shift = top - dd;
        for (k, dk) in d.iter().enumerate() {
            r[shift + k] -= c * dk;
        }
        q[shift] = c;
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// Euler's totient.
pub fn totient(j: u32) -> u32 {
    (1..=j).filter(|&k| num_integer::gcd(k, j) == 1).count() as u32
}

/// The balanced factor `psi_j` as a Laurent polynomial in `q`:
/// returns `(lowest exponent, dense coefficients)`. It is monic and its
/// constant coefficient (after shifting) is `+-1`.
pub fn psi(j: u32) -> (i64, Vec<i64>) {
    if j == 1 {
        return (-1, vec![-1, 0, 1]);
    }
    let phi = cyclotomic(j);
    let mut c = vec![0i64; 2 * (phi.len() - 1) + 1];
    for (k, a) in phi.iter().enumerate() {
        c[2 * k] = *a;
    }
    (-(totient(j) as i64), c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(*cyclotomic(1), vec![-1, 1]);
        assert_eq!(*cyclotomic(2), vec![1, 1]);
        assert_eq!(*cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12).len() - 1, totient(12) as usize);
    }

    #[test]
    fn psi_two_is_quantum_two() {
        assert_eq!(psi(2), (-1, vec![1, 0, 1]));
    }
}
