//! Finite relation grids for `U̇_q(gl_η)_β` checked through `Φ_η`.

use rayon::prelude::*;

use crate::howe::{Howe, SuperDim};
use crate::scalar::Scalar;
use crate::spider::Check;

use super::{lusztig_t, oracle_equal, square_commutes, DSElement, DSGen, DSWeight, DsError, SignSeq};
use DSGen::{E, F};

/// One relation instance `lhs = rhs`.
pub struct Instance {
    pub name: String,
    pub lhs: DSElement,
    pub rhs: DSElement,
}

type Terms = Vec<(Scalar, Vec<DSGen>)>;

fn element(source: &DSWeight, terms: &Terms) -> Option<DSElement> {
    let mut x = terms.iter().find_map(|(_, w)| DSElement::word(source, w.clone()).expect("indices in range"))?;
    x = DSElement::zero(x.source().clone(), x.target().clone());
    for (c, w) in terms {
        x.add_word(w.clone(), c).expect("terms share a target");
    }
    Some(x)
}

fn zero_like(x: &DSElement) -> DSElement {
    DSElement::zero(x.source().clone(), x.target().clone())
}

/// All weights of `P_η` whose labels are at most `max`.
pub fn weights(eta: &SignSeq, max: u32) -> Vec<DSWeight> {
    let k = eta.len();
    let mut out = Vec::new();
    let mut labels = vec![0u32; k];
    loop {
        out.push(DSWeight::from_labels(eta.clone(), &labels).expect("labels are valid"));
        let mut j = 0;
        while j < k && labels[j] == max {
            labels[j] = 0;
            j += 1;
        }
        if j == k {
            return out;
        }
        labels[j] += 1;
    }
}

/// (DS1)–(DS3) instances on `1_λ`.
pub fn instances(lambda: &DSWeight) -> Vec<Instance> {
    let k = lambda.eta().len();
    let one = Scalar::one;
    let mut out = Vec::new();
    let mut push = |name: String, lhs: Terms, rhs_scalar: Option<Scalar>| {
        let Some(l) = element(lambda, &lhs) else { return };
        let rhs = match rhs_scalar {
            Some(c) => DSElement::identity(lambda).scale(&c),
            None => zero_like(&l),
        };
        out.push(Instance { name: format!("{name} at {lambda} eta={}", lambda.eta()), lhs: l, rhs });
    };
    for i in 1..k {
        for j in 1..k {
            let rhs = (i == j).then(|| {
                let e = lambda.entries();
                Scalar::qint(e[i - 1] - e[i])
            });
            push(format!("DS1 [E{i},F{j}]"), vec![(one(), vec![F(j), E(i)]), (-one(), vec![E(i), F(j)])], rhs);
            if i.abs_diff(j) == 1 {
                for g in [E as fn(usize) -> DSGen, F] {
                    let (gi, gj) = (g(i), g(j));
                    push(
                        format!("DS2 {gi}{gi}{gj}"),
                        vec![
                            (one(), vec![gj, gi, gi]),
                            (-(Scalar::q_pow(1) + Scalar::q_pow(-1)), vec![gi, gj, gi]),
                            (one(), vec![gi, gi, gj]),
                        ],
                        None,
                    );
                }
            }
            if i.abs_diff(j) > 1 && i < j {
                for g in [E as fn(usize) -> DSGen, F] {
                    let (gi, gj) = (g(i), g(j));
                    push(format!("DS3 {gi}{gj}"), vec![(one(), vec![gj, gi]), (-one(), vec![gi, gj])], None);
                }
            }
        }
    }
    out
}

fn grid(shapes: &[(usize, u32)]) -> Vec<DSWeight> {
    shapes
        .iter()
        .flat_map(|&(k, max)| SignSeq::all(k).into_iter().flat_map(move |eta| weights(&eta, max)))
        .collect()
}

fn check(h: &Howe, name: String, lhs: &DSElement, rhs: &DSElement) -> Check {
    let level = lhs.source().level(h.super_dim().d());
    let passed = oracle_equal(h, level, lhs, rhs).unwrap_or(false);
    Check { name, passed }
}

/// (DS1)–(DS3) on every sign sequence of length 2 and 3 with labels up to
/// 3, and length 4 with labels up to 1.
pub fn ds_relation_suite(sd: SuperDim) -> Vec<Check> {
    let h = Howe::new(sd);
    let cases: Vec<Instance> = grid(&[(2, 3), (3, 3), (4, 1)]).iter().flat_map(instances).collect();
    cases.par_iter().map(|c| check(&h, c.name.clone(), &c.lhs, &c.rhs)).collect()
}

/// Positions where `T_i` applies.
fn swaps(eta: &SignSeq) -> Vec<usize> {
    (1..eta.len()).filter(|&i| eta.sign(i) == 1 && eta.sign(i + 1) == -1).collect()
}

/// The square `Φ ∘ T_i = T_i(·) ∘ Φ` on `1_λ` and every generator, labels up
/// to `max`, sign sequences of length 2 and 3.
pub fn square_suite(sd: SuperDim, max: u32) -> Vec<Check> {
    let h = Howe::new(sd);
    let mut cases: Vec<(String, usize, DSElement)> = Vec::new();
    for lambda in grid(&[(2, max), (3, max)]) {
        let k = lambda.eta().len();
        for i in swaps(lambda.eta()) {
            cases.push((format!("T{i} on 1 at {lambda} eta={}", lambda.eta()), i, DSElement::identity(&lambda)));
            for j in 1..k {
                for g in [E(j), F(j)] {
                    if let Some(x) = DSElement::word(&lambda, vec![g]).expect("index in range") {
                        cases.push((format!("T{i} on {g} at {lambda} eta={}", lambda.eta()), i, x));
                    }
                }
            }
        }
    }
    cases
        .par_iter()
        .map(|(name, i, x)| Check { name: name.clone(), passed: square_commutes(&h, *i, x).unwrap_or(false) })
        .collect()
}

/// Images under `T_i` of the (DS1)–(DS2) instances, checked over `s_i η`.
pub fn t_relation_suite(sd: SuperDim, max: u32) -> Vec<Check> {
    let h = Howe::new(sd);
    let mut cases = Vec::new();
    for lambda in grid(&[(2, max), (3, max)]) {
        for i in swaps(lambda.eta()) {
            for inst in instances(&lambda) {
                cases.push((i, inst));
            }
        }
    }
    cases
        .par_iter()
        .map(|(i, inst)| {
            let name = format!("T{i} image of {}", inst.name);
            let images: Result<(DSElement, DSElement), DsError> =
                lusztig_t(*i, &inst.lhs).and_then(|l| Ok((l, lusztig_t(*i, &inst.rhs)?)));
            match images {
                Ok((l, r)) => check(&h, name, &l, &r),
                Err(_) => Check { name, passed: false },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_all(label: &str, checks: &[Check]) {
        let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
        assert!(!checks.is_empty());
        assert!(failed.is_empty(), "{label}: {} of {} failed, e.g. {:?}", failed.len(), checks.len(), &failed[..failed.len().min(10)]);
    }

    #[test]
    fn ds_relations_on_grid() {
        assert_all("(1,1)", &ds_relation_suite(SuperDim::new(1, 1)));
    }

    #[test]
    fn square_commutes_off_gl21() {
        for (m, n) in [(2, 0), (1, 1)] {
            assert_all("square", &square_suite(SuperDim::new(m, n), 2));
        }
    }

    #[test]
    fn t_images_satisfy_relations() {
        assert_all("T images", &t_relation_suite(SuperDim::new(2, 1), 2));
    }
}
