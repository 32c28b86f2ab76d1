//! Defining relations of the spider checked as operator identities on
//! `gl(m|n)` representations.

use rayon::prelude::*;

use crate::howe::{Howe, SuperDim};
use crate::scalar::{QExponent, Scalar};
use crate::tangle::{word_str, Orientation, Slice, Strand, TangleDiagram};

use super::{apply_ladder, braiding, functor_q, lusztig_braiding, twist_pow, word_atoms, Gen, Morphism, Rotation, SpiderError};

/// Outcome of one relation instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

enum Case {
    Equal { name: String, lhs: Morphism, rhs: Morphism },
    Rotations { name: String, source: Vec<Strand>, gens: Vec<Gen> },
}

type Terms = Vec<(Scalar, Vec<Gen>)>;

/// `Σ lhs = Σ rhs` on `source`, or `None` when every word vanishes.
fn relation(name: String, source: &[Strand], lhs: Terms, rhs: Terms) -> Option<Case> {
    let target = lhs
        .iter()
        .chain(&rhs)
        .find_map(|(_, w)| Morphism::word(source, w.clone()).expect("relation words fit their source"))?
        .target()
        .to_vec();
    let build = |terms: &Terms| {
        let mut m = Morphism::zero(source.to_vec(), target.clone());
        for (c, w) in terms {
            m.add_word(w.clone(), c).expect("relation words share a target");
        }
        m
    };
    Some(Case::Equal { lhs: build(&lhs), rhs: build(&rhs), name })
}

fn one() -> Scalar {
    Scalar::one()
}

fn e(pos: usize, r: u32) -> Gen {
    Gen::E { pos, r }
}

fn f(pos: usize, r: u32) -> Gen {
    Gen::F { pos, r }
}

fn rung(is_e: bool, pos: usize, r: u32) -> Gen {
    if is_e {
        e(pos, r)
    } else {
        f(pos, r)
    }
}

fn letter(is_e: bool) -> &'static str {
    if is_e {
        "E"
    } else {
        "F"
    }
}

/// Weight coordinate of a strand: `a` upward, `β − a` downward.
fn weight(s: Strand) -> QExponent {
    match s.orientation {
        Orientation::Up => QExponent::int(s.color as i64),
        Orientation::Down => QExponent::new(1, -(s.color as i64)),
    }
}

fn objects(len: usize, labels: std::ops::RangeInclusive<u32>) -> Vec<Vec<Strand>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Strand>| {
                labels.clone().flat_map(move |a| {
                    let w = w.clone();
                    [Orientation::Up, Orientation::Down].into_iter().map(move |o| {
                        let mut v = w.clone();
                        v.push(Strand { color: a, orientation: o });
                        v
                    })
                })
            })
            .collect();
    }
    out
}

fn far_commutation(out: &mut Vec<Case>) {
    use Orientation::{Down, Up};
    let patterns = [[Up, Up, Up, Up], [Up, Down, Down, Up], [Down, Up, Up, Down], [Down, Down, Down, Down]];
    for p in patterns {
        for labels in objects(4, 1..=2).into_iter().filter(|o| o.iter().all(|s| s.orientation == Up)) {
            let obj: Vec<Strand> = labels.iter().zip(p).map(|(s, o)| Strand { color: s.color, orientation: o }).collect();
            for (x, y) in [(true, true), (true, false), (false, true), (false, false)] {
                let name = format!("far commutation {}{} on {}", letter(x), letter(y), word_str(&obj));
                let a = vec![rung(x, 0, 1), rung(y, 2, 1)];
                let b = vec![rung(y, 2, 1), rung(x, 0, 1)];
                out.extend(relation(name, &obj, vec![(one(), a)], vec![(one(), b)]));
            }
        }
    }
}

fn near_commutation(out: &mut Vec<Case>) {
    for obj in objects(3, 0..=2) {
        for (i, j) in [(0, 1), (1, 0)] {
            let name = format!("E{i} F{j} commute on {}", word_str(&obj));
            let a = vec![f(j, 1), e(i, 1)];
            let b = vec![e(i, 1), f(j, 1)];
            out.extend(relation(name, &obj, vec![(one(), a)], vec![(one(), b)]));
        }
    }
}

fn divided_powers(out: &mut Vec<Case>) {
    for obj in objects(2, 0..=3) {
        for is_e in [true, false] {
            for r in 1..=2 {
                for s in 1..=3 - r {
                    let name = format!("{x}({s}) {x}({r}) merge on {}", word_str(&obj), x = letter(is_e));
                    let lhs = vec![(one(), vec![rung(is_e, 0, r), rung(is_e, 0, s)])];
                    let c = Scalar::qbinom(QExponent::int((r + s) as i64), r);
                    let rhs = vec![(c, vec![rung(is_e, 0, r + s)])];
                    out.extend(relation(name, &obj, lhs, rhs));
                }
            }
        }
    }
}

fn commutator(out: &mut Vec<Case>) {
    for obj in objects(2, 0..=3) {
        let name = format!("[E,F] on {}", word_str(&obj));
        let k = Scalar::qint(weight(obj[0]) - weight(obj[1]));
        let lhs = vec![(one(), vec![f(0, 1), e(0, 1)]), (-one(), vec![e(0, 1), f(0, 1)])];
        out.extend(relation(name, &obj, lhs, vec![(k, vec![])]));
    }
}

fn serre(out: &mut Vec<Case>) {
    for obj in objects(3, 0..=2) {
        for is_e in [true, false] {
            for (i, j) in [(0, 1), (1, 0)] {
                let name = format!("Serre {x}{i}{x}{j} on {}", word_str(&obj), x = letter(is_e));
                let (xi, xj, xi2) = (rung(is_e, i, 1), rung(is_e, j, 1), rung(is_e, i, 2));
                let lhs = vec![
                    (one(), vec![xj.clone(), xi2.clone()]),
                    (-one(), vec![xi.clone(), xj.clone(), xi]),
                    (one(), vec![xi2, xj]),
                ];
                out.extend(relation(name, &obj, lhs, vec![]));
            }
        }
    }
}

fn digons_and_circles(out: &mut Vec<Case>) {
    use Orientation::{Down, Up};
    let bm1 = Scalar::qint(QExponent::new(1, -1));
    let digons = [
        (Strand::up(1), 1, Down, true),
        (Strand::up(1), 0, Down, false),
        (Strand::down(1), 1, Up, false),
        (Strand::down(1), 0, Up, true),
    ];
    for (s, zpos, o, e_first) in digons {
        let mid = if e_first { [e(0, 1), f(0, 1)] } else { [f(0, 1), e(0, 1)] };
        let mut w = vec![Gen::InsertZero { pos: zpos, orientation: o }];
        w.extend(mid);
        w.push(Gen::RemoveZero { pos: zpos });
        let name = format!("digon on {s} with a zero at {zpos}");
        out.extend(relation(name, &[s], vec![(one(), w)], vec![(bm1.clone(), vec![])]));
    }
    for a in 1..=3 {
        for o in [Up, Down] {
            let w = vec![Gen::Cup { pos: 0, label: a, orientation: o }, Gen::Cap { pos: 0, label: a, orientation: o }];
            let name = format!("circle of label {a} {o:?}");
            out.extend(relation(name, &[], vec![(one(), w)], vec![(Scalar::qbinom(QExponent::BETA, a), vec![])]));
        }
    }
    let two_minus = Scalar::qint(QExponent::new(-1, 2));
    for o in [Up, Down] {
        let obj = [Strand { color: 1, orientation: o }, Strand { color: 1, orientation: o.flip() }];
        let cupcap = vec![Gen::Cap { pos: 0, label: 1, orientation: o }, Gen::Cup { pos: 0, label: 1, orientation: o }];
        let ladder = if o == Up { vec![e(0, 1), f(0, 1)] } else { vec![f(0, 1), e(0, 1)] };
        let name = format!("sideways commutator on {}", word_str(&obj));
        out.extend(relation(name, &obj, vec![(one(), cupcap), (-one(), ladder)], vec![(two_minus.clone(), vec![])]));
    }
}

fn zigzags(out: &mut Vec<Case>) {
    for a in 0..=3 {
        for o in [Orientation::Up, Orientation::Down] {
            let s = Strand { color: a, orientation: o };
            let z1 = vec![Gen::Cup { pos: 1, label: a, orientation: o.flip() }, Gen::Cap { pos: 0, label: a, orientation: o }];
            let z2 = vec![Gen::Cup { pos: 0, label: a, orientation: o }, Gen::Cap { pos: 1, label: a, orientation: o.flip() }];
            for (k, z) in [z1, z2].into_iter().enumerate() {
                out.extend(relation(format!("zigzag {k} on {s}"), &[s], vec![(one(), z)], vec![(one(), vec![])]));
            }
        }
    }
    for a in 0..=3 {
        for b in 0..=3 {
            let src = vec![Strand::down(a), Strand::down(b)];
            for is_e in [true, false] {
                for r in 1..=2 {
                    let gens = vec![rung(is_e, 0, r)];
                    if Morphism::word(&src, gens.clone()).unwrap().is_some() {
                        let name = format!("left and right duals of {}({r}) on {}", letter(is_e), word_str(&src));
                        out.push(Case::Rotations { name, source: src.clone(), gens });
                    }
                }
            }
        }
    }
}

fn curl(s: Strand, sign: i32, left: bool) -> TangleDiagram {
    let a = s.color;
    let o = s.orientation;
    let slices = if left {
        vec![
            Slice::Cup { pos: 0, color: a, orientation: o.flip() },
            Slice::crossing(1, sign),
            Slice::Cap { pos: 0, color: a, orientation: o.flip() },
        ]
    } else {
        vec![Slice::Cup { pos: 1, color: a, orientation: o }, Slice::crossing(0, sign), Slice::Cap { pos: 1, color: a, orientation: o }]
    };
    TangleDiagram::new(vec![s], slices).expect("curl diagram is consistent")
}

fn curls(out: &mut Vec<Case>) {
    for a in 1..=3 {
        for o in [Orientation::Up, Orientation::Down] {
            let s = Strand { color: a, orientation: o };
            for sign in [1, -1] {
                for left in [false, true] {
                    let t = curl(s, sign, left);
                    let lhs = functor_q(&t);
                    let rhs = Morphism::identity(&[s]).scale(&twist_pow(a, sign as i64));
                    let side = if left { "left" } else { "right" };
                    let name = format!("curl {side} sign {sign} on {s}");
                    out.push(Case::Equal { name, lhs, rhs });
                }
            }
        }
    }
}

fn super_one_one(out: &mut Vec<Case>) {
    let q = |k: i64| Scalar::qint_i(k);
    for a in 0..=3i64 {
        for b in 0..=3i64 {
            let obj = [Strand::up(a as u32), Strand::up(b as u32)];
            let lhs = vec![
                (q(a + 1) * q(a) * q(b) * q(b - 1), vec![]),
                (-(q(2) * q(a + 1) * q(b - 1)), vec![e(0, 1), f(0, 1)]),
                (q(2) * q(2), vec![e(0, 2), f(0, 2)]),
            ];
            out.extend(relation(format!("one-one quotient on {}", word_str(&obj)), &obj, lhs, vec![]));
        }
    }
}

fn sign_pow(cond: bool) -> Scalar {
    if cond {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

type Braiding = fn(Strand, Strand, i32) -> Morphism;

fn crossing_slides(out: &mut Vec<Case>) -> Result<(), SpiderError> {
    let up = Strand::up;
    let word = |src: &[Strand], g: Gen| Morphism::word(src, vec![g]).unwrap();
    let forms: [(&str, Braiding); 2] = [("ladder sum", lusztig_braiding), ("natural", braiding)];
    for (form, cross) in forms {
        let natural = form == "natural";
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                let obj = [up(a), up(b)];
                let (ai, bi) = (a as i64, b as i64);
                for sign in [1, -1] {
                    // F below the crossing against E above it
                    if let Some(fw) = word(&obj, f(0, 1)) {
                        let lhs = cross(up(a - 1), up(b + 1), sign).compose(&fw)?;
                        let c = cross(up(a), up(b), sign);
                        let k = if sign > 0 { ai - bi - 1 } else { bi - ai + 1 };
                        let even = if natural { (ai - bi + 1) % 2 == 0 } else { a == b + 1 };
                        let rhs = word(c.target(), e(0, 1)).unwrap().compose(&c)?.scale(&(sign_pow(even) * Scalar::q_pow(k)));
                        let name = format!("slide F through {form} crossing {sign} on {}", word_str(&obj));
                        out.push(Case::Equal { name, lhs, rhs });
                    }
                    if let Some(ew) = word(&obj, e(0, 1)) {
                        let lhs = cross(up(a + 1), up(b - 1), sign).compose(&ew)?;
                        let c = cross(up(a), up(b), sign);
                        let k = if sign > 0 { bi - ai - 1 } else { ai - bi + 1 };
                        let even = if natural { (ai - bi + 1) % 2 == 0 } else { b == a + 1 };
                        let rhs = word(c.target(), f(0, 1)).unwrap().compose(&c)?.scale(&(sign_pow(even) * Scalar::q_pow(k)));
                        let name = format!("slide E through {form} crossing {sign} on {}", word_str(&obj));
                        out.push(Case::Equal { name, lhs, rhs });
                    }
                }
            }
        }
    }
    Ok(())
}

fn braiding_inverse(out: &mut Vec<Case>) -> Result<(), SpiderError> {
    for obj in objects(2, 1..=3) {
        let (x, y) = (obj[0], obj[1]);
        let mixed = x.orientation != Orientation::Up || y.orientation != Orientation::Up;
        if mixed && (x.color > 2 || y.color > 2) {
            continue;
        }
        for sign in [1, -1] {
            let lhs = braiding(y, x, -sign).compose(&braiding(x, y, sign))?;
            let name = format!("crossing {sign} then its inverse on {}", word_str(&obj));
            out.push(Case::Equal { name, lhs, rhs: Morphism::identity(&obj) });
        }
    }
    Ok(())
}

/// `x` crossing the pair to its right, one strand at a time.
fn pass_right(x: Strand, a: Strand, b: Strand, sign: i32) -> Result<Morphism, SpiderError> {
    let first = braiding(x, a, sign).embed(&[], &[b]);
    let second = braiding(x, b, sign).embed(&[a], &[]);
    second.compose(&first)
}

fn naturality(out: &mut Vec<Case>) -> Result<(), SpiderError> {
    for x in objects(1, 1..=2).into_iter().map(|o| o[0]) {
        for a in 0..=3 {
            for b in 0..=3 {
                let (sa, sb) = (Strand::up(a), Strand::up(b));
                for is_e in [true, false] {
                    let g = rung(is_e, 0, 1);
                    let Some(gw) = Morphism::word(&[sa, sb], vec![g]).unwrap() else { continue };
                    let (na, nb) = (gw.target()[0], gw.target()[1]);
                    for sign in [1, -1] {
                        let lhs = gw.embed(&[], &[x]).compose(&pass_right(x, sa, sb, sign)?)?;
                        let rhs = pass_right(x, na, nb, sign)?.compose(&gw.embed(&[x], &[]))?;
                        let name = format!("{} slides under crossings {sign} of {x} past ({a},{b})", letter(is_e));
                        out.push(Case::Equal { name, lhs, rhs });
                    }
                }
            }
        }
    }
    Ok(())
}

fn cases(sd: SuperDim) -> Result<Vec<Case>, SpiderError> {
    let mut out = Vec::new();
    far_commutation(&mut out);
    near_commutation(&mut out);
    divided_powers(&mut out);
    commutator(&mut out);
    serre(&mut out);
    digons_and_circles(&mut out);
    zigzags(&mut out);
    curls(&mut out);
    if sd == SuperDim::new(1, 1) {
        super_one_one(&mut out);
    }
    crossing_slides(&mut out)?;
    braiding_inverse(&mut out)?;
    naturality(&mut out)?;
    Ok(out)
}

fn run(h: &Howe, case: &Case) -> Result<bool, SpiderError> {
    match case {
        Case::Equal { lhs, rhs, .. } => Ok(apply_ladder(h, lhs)? == apply_ladder(h, rhs)?),
        Case::Rotations { source, gens, .. } => {
            let l = h.operator(source, &word_atoms(source, gens, Rotation::Left)?)?;
            let r = h.operator(source, &word_atoms(source, gens, Rotation::Right)?)?;
            Ok(l == r)
        }
    }
}

/// Every relation instance of the suite at `gl(m|n)`.
pub fn relation_suite(sd: SuperDim) -> Vec<Check> {
    let h = Howe::new(sd);
    let cases = match cases(sd) {
        Ok(c) => c,
        Err(e) => return vec![Check { name: format!("building relations: {e}"), passed: false }],
    };
    cases
        .par_iter()
        .map(|c| {
            let name = match c {
                Case::Equal { name, .. } | Case::Rotations { name, .. } => name.clone(),
            };
            Check { passed: run(&h, c).unwrap_or(false), name }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_on_grid() {
        let checks = relation_suite(SuperDim::new(1, 1));
        let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{} of {} failed, e.g. {:?}", failed.len(), checks.len(), &failed[..failed.len().min(20)]);
    }
}
