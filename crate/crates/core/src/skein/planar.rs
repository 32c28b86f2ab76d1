//! Combinatorial oriented link diagrams and their skein evaluation.
//!
//! A diagram is a set of crossings with four ports each plus boundary
//! endpoints. Every outgoing port (and every source endpoint) points to the
//! incoming port (or sink endpoint) reached next along its strand. Port ids
//! are stable under switching and smoothing, so base points chosen by id
//! survive the recursion.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::scalar::{QExponent, Scalar};
use crate::tangle::{left_is_over, Orientation, Slice, TangleDiagram};

const NONE: u32 = u32::MAX;

// roles of a crossing's ports
const OVER_IN: usize = 0;
const OVER_OUT: usize = 1;
const UNDER_IN: usize = 2;
const UNDER_OUT: usize = 3;

#[derive(Clone, Copy, Debug)]
struct Xing {
    sign: i8,
    /// port ids for over-in, over-out, under-in, under-out
    roles: [u32; 4],
}

#[derive(Clone, Debug)]
pub struct PlanarDiagram {
    xs: Vec<Option<Xing>>,
    succ: Vec<u32>,
    pred: Vec<u32>,
    n_sources: u32,
    free_loops: u32,
}

/// Options controlling base points and crossing choice; every choice must
/// give the same value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EvalOptions {
    /// 0 orders arcs by id; other values order them by a seeded hash.
    pub seed: u64,
    /// Resolve the last non-descending crossing met instead of the first.
    pub pick_last: bool,
}

impl PlanarDiagram {
    fn src_base(&self) -> u32 {
        4 * self.xs.len() as u32
    }

    fn is_sink(&self, p: u32) -> bool {
        p >= self.src_base() + self.n_sources
    }

    fn role(&self, p: u32) -> Option<(usize, usize)> {
        if p >= self.src_base() {
            return None;
        }
        let c = (p / 4) as usize;
        let x = self.xs[c].as_ref()?;
        Some((c, x.roles.iter().position(|&r| r == p).unwrap()))
    }

    /// Out port on the same strand as the in port `p`.
    fn through(&self, p: u32) -> u32 {
        let (c, r) = self.role(p).expect("crossing port");
        let x = self.xs[c].unwrap();
        match r {
            OVER_IN => x.roles[OVER_OUT],
            UNDER_IN => x.roles[UNDER_OUT],
            _ => panic!("through() on an outgoing port"),
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.xs.iter().filter(|x| x.is_some()).count()
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    fn switch(&mut self, c: usize) {
        let x = self.xs[c].as_mut().unwrap();
        x.sign = -x.sign;
        x.roles.swap(OVER_IN, UNDER_IN);
        x.roles.swap(OVER_OUT, UNDER_OUT);
    }

    /// Oriented smoothing: over-in continues as under-out, under-in as over-out.
    fn smooth(&mut self, c: usize) {
        let x = self.xs[c].take().unwrap();
        let exit_of = |p: u32| -> Option<u32> {
            if p == x.roles[OVER_IN] {
                Some(x.roles[UNDER_OUT])
            } else if p == x.roles[UNDER_IN] {
                Some(x.roles[OVER_OUT])
            } else {
                None
            }
        };
        let own = |p: u32| x.roles.contains(&p);
        let mut visited = [false; 2];
        for (k, entry) in [x.roles[OVER_IN], x.roles[UNDER_IN]].into_iter().enumerate() {
            let p = self.pred[entry as usize];
            if own(p) {
                continue;
            }
            visited[k] = true;
            let mut out = exit_of(entry).unwrap();
            loop {
                let n = self.succ[out as usize];
                if let Some(o2) = exit_of(n) {
                    visited[if n == x.roles[OVER_IN] { 0 } else { 1 }] = true;
                    out = o2;
                } else {
                    self.succ[p as usize] = n;
                    self.pred[n as usize] = p;
                    break;
                }
            }
        }
        // paths not entered from outside close up into free loops
        let entries = [x.roles[OVER_IN], x.roles[UNDER_IN]];
        let mut k = 0;
        while k < 2 {
            if !visited[k] {
                self.free_loops += 1;
                let mut cur = k;
                while !visited[cur] {
                    visited[cur] = true;
                    let n = self.succ[exit_of(entries[cur]).unwrap() as usize];
                    cur = if n == entries[0] { 0 } else { 1 };
                }
            }
            k += 1;
        }
        for p in x.roles {
            self.succ[p as usize] = NONE;
            self.pred[p as usize] = NONE;
        }
    }

    fn key(&self, p: u32, seed: u64) -> u64 {
        if seed == 0 {
            return p as u64;
        }
        let mut h = DefaultHasher::new();
        (seed, p).hash(&mut h);
        h.finish()
    }

    /// Walk all components from their base points. Open strands come first in
    /// source order, then closed components by smallest arc key.
    fn traverse(&self, seed: u64) -> Traversal {
        let mut w = Walker {
            comp_of: vec![[usize::MAX; 2]; self.xs.len()],
            bad: Vec::new(),
            seen: vec![false; self.xs.len()],
            code: vec![self.n_sources as i64],
            label: HashMap::new(),
            visited_arc: vec![false; self.succ.len()],
        };
        let mut comp = 0usize;
        for s in 0..self.n_sources {
            w.walk(self, self.src_base() + s, false, comp);
            comp += 1;
        }
        let mut outs: Vec<u32> = self
            .xs
            .iter()
            .flatten()
            .flat_map(|x| [x.roles[OVER_OUT], x.roles[UNDER_OUT]])
            .collect();
        outs.sort_by_key(|&p| (self.key(p, seed), p));
        for &p in &outs {
            if !w.visited_arc[p as usize] {
                w.code.push(i64::MIN);
                w.walk(self, p, true, comp);
                comp += 1;
            }
        }
        let mut signs: Vec<(i64, i8)> = w.label.iter().map(|(&c, &l)| (l, self.xs[c].unwrap().sign)).collect();
        signs.sort();
        w.code.push(i64::MAX);
        w.code.extend(signs.iter().map(|&(_, s)| s as i64));
        w.code.push(self.free_loops as i64);
        Traversal { comp_of: w.comp_of, bad: w.bad, n_components: comp, code: w.code }
    }

    /// Value of a descending diagram: split framed unknots, the open strands
    /// reduced by the sign character.
    fn descending_value(&self, t: &Traversal) -> Scalar {
        let n_open = self.n_sources as usize;
        let mut writhe = vec![0i64; t.n_components];
        let mut mixed_open = 0i64;
        for (c, x) in self.xs.iter().enumerate() {
            let Some(x) = x else { continue };
            let [a, b] = t.comp_of[c];
            if a == b {
                writhe[a] += x.sign as i64;
            } else if a < n_open && b < n_open {
                mixed_open += x.sign as i64;
            }
        }
        let total_w: i64 = writhe.iter().sum();
        let closed = (t.n_components - n_open) as u32 + self.free_loops;
        let beta = Scalar::qint(QExponent::BETA);
        Scalar::qpow(QExponent::new(-total_w, 0)) * Scalar::neg_q_pow(mixed_open) * beta.pow(closed)
    }
}

struct Walker {
    comp_of: Vec<[usize; 2]>,
    bad: Vec<usize>,
    seen: Vec<bool>,
    code: Vec<i64>,
    label: HashMap<usize, i64>,
    visited_arc: Vec<bool>,
}

impl Walker {
    fn walk(&mut self, d: &PlanarDiagram, start: u32, closed: bool, comp: usize) {
        let mut arc = start;
        loop {
            self.visited_arc[arc as usize] = true;
            let n = d.succ[arc as usize];
            if d.is_sink(n) {
                self.code.push(-1 - (n - d.src_base() - d.n_sources) as i64);
                break;
            }
            let (c, r) = d.role(n).unwrap();
            let over = r == OVER_IN;
            self.comp_of[c][if over { 0 } else { 1 }] = comp;
            if !self.seen[c] {
                self.seen[c] = true;
                if !over {
                    self.bad.push(c);
                }
            }
            let l = self.label.len() as i64;
            let l = *self.label.entry(c).or_insert(l);
            self.code.push(2 * l + over as i64);
            arc = d.through(n);
            if closed && arc == start {
                break;
            }
        }
    }
}

struct Traversal {
    /// component of the over and the under strand at each crossing
    comp_of: Vec<[usize; 2]>,
    /// crossings first met along their under strand, in traversal order
    bad: Vec<usize>,
    n_components: usize,
    code: Vec<i64>,
}

pub type Memo = HashMap<Vec<i64>, Scalar>;

/// Skein evaluation. Closed components are framed HOMFLY-PT; open strands
/// are reduced by the sign character of the Hecke algebra.
pub fn evaluate(d: &PlanarDiagram, opts: EvalOptions, memo: &mut Memo) -> Scalar {
    let t = d.traverse(opts.seed);
    if let Some(v) = memo.get(&t.code) {
        return v.clone();
    }
    let v = match if opts.pick_last { t.bad.last() } else { t.bad.first() } {
        None => d.descending_value(&t),
        Some(&c) => {
            let sign = d.xs[c].unwrap().sign;
            let mut switched = d.clone();
            switched.switch(c);
            let mut smoothed = d.clone();
            smoothed.smooth(c);
            let a = evaluate(&switched, opts, memo);
            let b = evaluate(&smoothed, opts, memo) * Scalar::skein_z();
            // P(D+) - P(D-) = (q^{-1} - q) P(D0)
            if sign > 0 {
                a + b
            } else {
                a - b
            }
        }
    };
    memo.insert(t.code, v.clone());
    v
}

#[derive(Clone, Copy, Debug)]
enum Pending {
    /// upward strand: waiting to learn the successor of this port
    Succ(u32),
    /// downward strand: waiting to learn the predecessor of this port
    Pred(u32),
}

/// Build the combinatorial diagram of a color-1 tangle.
pub fn from_tangle(t: &TangleDiagram) -> PlanarDiagram {
    let ncross = t.crossing_count() as u32;
    let bottom = t.bottom();
    let top = t.top();
    let count = |o: Orientation, w: &[crate::tangle::Strand]| w.iter().filter(|s| s.orientation == o).count() as u32;
    let n_sources = count(Orientation::Up, bottom) + count(Orientation::Down, top);
    let n_sinks = count(Orientation::Down, bottom) + count(Orientation::Up, top);
    let src_base = 4 * ncross;
    let sink_base = src_base + n_sources;
    // joints (cup turning points) are numbered after the sinks, in pairs (in, out)
    let joint_base = sink_base + n_sinks;
    let mut n_joints = 0u32;
    let mut succ: HashMap<u32, u32> = HashMap::new();
    let mut xs = Vec::with_capacity(ncross as usize);
    let (mut next_src, mut next_sink) = (0u32, 0u32);

    let mut state: Vec<Pending> = bottom
        .iter()
        .map(|s| match s.orientation {
            Orientation::Up => {
                next_src += 1;
                Pending::Succ(src_base + next_src - 1)
            }
            Orientation::Down => {
                next_sink += 1;
                Pending::Pred(sink_base + next_sink - 1)
            }
        })
        .collect();
    let link = |from: Pending, to_in: u32, succ: &mut HashMap<u32, u32>| -> Option<u32> {
        match from {
            Pending::Succ(p) => {
                succ.insert(p, to_in);
                None
            }
            Pending::Pred(_) => None,
        }
    };

    for (k, sl) in t.slices().iter().enumerate() {
        let w = t.level(k);
        match *sl {
            Slice::Positive { pos } | Slice::Negative { pos } => {
                let sign = sl.sign().unwrap() as i8;
                let c = xs.len() as u32;
                let base = 4 * c;
                let (ol, or) = (w[pos].orientation, w[pos + 1].orientation);
                let lover = left_is_over(sign as i32, ol, or);
                // port ids: over strand uses base, base+1; under strand base+2, base+3
                let (lin, lout, rin, rout) = if lover {
                    (base, base + 1, base + 2, base + 3)
                } else {
                    (base + 2, base + 3, base, base + 1)
                };
                xs.push(Some(Xing { sign, roles: [base, base + 1, base + 2, base + 3] }));
                // left strand runs bottom-left to top-right
                let (sl_, sr_) = (state[pos], state[pos + 1]);
                let new_right = match ol {
                    Orientation::Up => {
                        link(sl_, lin, &mut succ);
                        Pending::Succ(lout)
                    }
                    Orientation::Down => {
                        if let Pending::Pred(p) = sl_ {
                            succ.insert(lout, p);
                        }
                        Pending::Pred(lin)
                    }
                };
                let new_left = match or {
                    Orientation::Up => {
                        link(sr_, rin, &mut succ);
                        Pending::Succ(rout)
                    }
                    Orientation::Down => {
                        if let Pending::Pred(p) = sr_ {
                            succ.insert(rout, p);
                        }
                        Pending::Pred(rin)
                    }
                };
                state[pos] = new_left;
                state[pos + 1] = new_right;
            }
            Slice::Cup { pos, orientation, .. } => {
                let jin = joint_base + 2 * n_joints;
                let jout = jin + 1;
                n_joints += 1;
                let pair = match orientation {
                    Orientation::Up => [Pending::Succ(jout), Pending::Pred(jin)],
                    Orientation::Down => [Pending::Pred(jin), Pending::Succ(jout)],
                };
                state.splice(pos..pos, pair);
            }
            Slice::Cap { pos, .. } => {
                match (state[pos], state[pos + 1]) {
                    (Pending::Succ(a), Pending::Pred(b)) | (Pending::Pred(b), Pending::Succ(a)) => {
                        succ.insert(a, b);
                    }
                    _ => panic!("cap joins two strands of equal orientation"),
                }
                state.drain(pos..pos + 2);
            }
            Slice::Identity => {}
        }
    }
    for (k, st) in state.into_iter().enumerate() {
        let _ = k;
        match st {
            Pending::Succ(p) => {
                next_sink += 1;
                succ.insert(p, sink_base + next_sink - 1);
            }
            Pending::Pred(p) => {
                next_src += 1;
                succ.insert(src_base + next_src - 1, p);
            }
        }
    }
    // contract joints
    let is_joint_in = |p: u32| p >= joint_base && (p - joint_base).is_multiple_of(2);
    let total = (joint_base) as usize;
    let mut fsucc = vec![NONE; total];
    let mut fpred = vec![NONE; total];
    let mut joint_used = vec![false; n_joints as usize];
    for (&from, &to) in &succ {
        if from >= joint_base {
            continue;
        }
        let mut t = to;
        while is_joint_in(t) {
            joint_used[((t - joint_base) / 2) as usize] = true;
            t = succ[&(t + 1)];
        }
        fsucc[from as usize] = t;
        fpred[t as usize] = from;
    }
    // joints never reached from a real port form crossingless circles
    let mut free_loops = 0;
    for j in 0..n_joints {
        if joint_used[j as usize] {
            continue;
        }
        free_loops += 1;
        let mut t = joint_base + 2 * j;
        while is_joint_in(t) && !joint_used[((t - joint_base) / 2) as usize] {
            joint_used[((t - joint_base) / 2) as usize] = true;
            t = succ[&(t + 1)];
        }
    }
    PlanarDiagram { xs, succ: fsucc, pred: fpred, n_sources, free_loops }
}
