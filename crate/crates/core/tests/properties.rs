use num_bigint::BigInt;
use proptest::prelude::*;

use spiderq::dschur::{DSWeight, SignSeq};
use spiderq::scalar::{QExponent, Scalar};
use spiderq::skein::{eval_closed, Framing, HeckeElement, Perm};
use spiderq::tangle::{close, from_pd, parse_braid, TangleDiagram};

fn monomials() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    prop::collection::vec((-3i64..=3, -2i64..=2, -4i64..=4), 0..5)
}

/// A Laurent polynomial in `Q, q` divided by `[k]!` for a small `k`.
fn scalar() -> impl Strategy<Value = Scalar> {
    (monomials(), 0u32..4).prop_map(|(ms, k)| {
        let p: Scalar = ms.into_iter().map(|(c, u, v)| Scalar::monomial(BigInt::from(c), u, v)).sum();
        p.div_qfactorial(k)
    })
}

fn exponent() -> impl Strategy<Value = QExponent> {
    (-1i64..=1, -4i64..=4).prop_map(|(u, v)| QExponent::new(u, v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn qint_addition(x in exponent(), y in exponent()) {
        let lhs = Scalar::qint(x + y);
        let rhs = &Scalar::qpow(y) * &Scalar::qint(x) + &Scalar::qpow(-x) * &Scalar::qint(y);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn qbinom_pascal(x in exponent(), k in 1u32..4) {
        let one = QExponent::int(1);
        let lhs = Scalar::qbinom(x, k);
        let rhs = &Scalar::qpow(QExponent::int(-(k as i64))) * &Scalar::qbinom(x - one, k)
            + &Scalar::qpow(x - QExponent::int(k as i64)) * &Scalar::qbinom(x - one, k - 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialization_is_a_ring_map(x in scalar(), y in scalar(), d in -3i64..=3) {
        prop_assert_eq!((&x + &y).specialize(d), &x.specialize(d) + &y.specialize(d));
        prop_assert_eq!((&x * &y).specialize(d), &x.specialize(d) * &y.specialize(d));
    }

    #[test]
    fn exact_division_round_trip(
        x in scalar(),
        ks in prop::collection::vec(1i64..6, 0..3),
        shift in -3i64..=3,
        negate in any::<bool>(),
    ) {
        let mut y = Scalar::q_pow(shift);
        for k in ks {
            y = &y * &Scalar::qint_i(k);
        }
        if negate {
            y = -y;
        }
        prop_assert_eq!((&x * &y).checked_div(&y).unwrap(), x);
    }

    #[test]
    fn json_round_trip(x in scalar()) {
        prop_assert_eq!(Scalar::from_json(&x.to_json()).unwrap(), x.clone());
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&s).unwrap(), x);
    }
}

/// PD code of a braid closure, built crossing by crossing with every strand
/// oriented upward. Each crossing lists bottom left, bottom right, top right,
/// top left counterclockwise, rotated to start at the incoming under strand.
fn braid_pd(word: &[i64], n: usize) -> (Vec<[i64; 4]>, Vec<i32>) {
    let mut current: Vec<i64> = (1..=n as i64).collect();
    let mut next = n as i64 + 1;
    let (mut x, mut signs) = (Vec::new(), Vec::new());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (bl, br) = (current[i], current[i + 1]);
        let (tl, tr) = (next, next + 1);
        next += 2;
        if g > 0 {
            x.push([br, tr, tl, bl]);
        } else {
            x.push([bl, br, tr, tl]);
        }
        signs.push(g.signum() as i32);
        current[i] = tl;
        current[i + 1] = tr;
    }
    for (k, &top) in current.iter().enumerate() {
        for q in x.iter_mut().flat_map(|q| q.iter_mut()) {
            if *q == top {
                *q = k as i64 + 1;
            }
        }
    }
    (x, signs)
}

fn braid_word() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (2usize..=3)
        .prop_flat_map(|n| {
            let g = (1..n as i64).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
            (Just(n), prop::collection::vec(g, 1..=6))
        })
        .prop_filter("every strand crosses", |(n, w)| (1..*n as i64).all(|i| w.iter().any(|g| g.abs() == i)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pd_sweep_matches_braid_closure((n, w) in braid_word()) {
        let braid = close(&parse_braid(&w, &vec![1; n]).unwrap()).unwrap();
        let (x, signs) = braid_pd(&w, n);
        let pd = from_pd(&x, &signs, &[]).unwrap();
        prop_assert_eq!(pd.components().len(), braid.components().len());
        prop_assert_eq!(pd.total_writhe(), braid.total_writhe());
        let value = eval_closed(&braid, Framing::Framed).unwrap();
        prop_assert_eq!(eval_closed(&pd, Framing::Framed).unwrap(), value.clone());
        // crossing order and edge names carry no information
        let relabeled: Vec<[i64; 4]> = x.iter().rev().map(|q| q.map(|e| 100 - 3 * e)).collect();
        let signs: Vec<i32> = signs.into_iter().rev().collect();
        let pd = from_pd(&relabeled, &signs, &[]).unwrap();
        prop_assert_eq!(eval_closed(&pd, Framing::Framed).unwrap(), value);
    }

    #[test]
    fn diagram_json_round_trip((n, w) in braid_word(), colors in prop::collection::vec(1u32..=3, 3)) {
        // one color per strand; mixed colors only survive closure on pure braids
        let t = match close(&parse_braid(&w, &colors[..n]).unwrap()) {
            Ok(t) => t,
            Err(_) => parse_braid(&w, &colors[..n]).unwrap(),
        };
        let s = serde_json::to_string(&t.to_json()).unwrap();
        let back = TangleDiagram::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn hecke_product_is_associative(
        cs in prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 3),
    ) {
        let perms = Perm::all(3);
        let elems: Vec<HeckeElement> = cs
            .iter()
            .map(|c| {
                let mut h = HeckeElement::zero(3);
                for (w, &k) in perms.iter().zip(c) {
                    h.add_term(w.clone(), &Scalar::from_int(k));
                }
                h
            })
            .collect();
        let (a, b, c) = (&elems[0], &elems[1], &elems[2]);
        prop_assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
    }

    #[test]
    fn weight_shifts_invert_and_keep_level(
        signs in prop::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 2..=4),
        labels in prop::collection::vec(0u32..=3, 4),
        i in 1usize..4,
        d in -2i64..=3,
    ) {
        let k = signs.len();
        prop_assume!(i < k);
        let w = DSWeight::from_labels(SignSeq::new(signs).unwrap(), &labels[..k]).unwrap();
        for sign in [1, -1] {
            if let Some(s) = w.shifted(i, sign) {
                prop_assert_eq!(s.level(d), w.level(d));
                prop_assert_eq!(s.shifted(i, -sign), Some(w.clone()));
            }
        }
    }
}
