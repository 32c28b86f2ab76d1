//! Planar diagram codes, converted to slices by a bottom-to-top sweep.
//!
//! `X[a,b,c,d]` lists the four edges of a crossing counterclockwise, starting
//! with the under strand entering it, so the under strand runs `a → c` and the
//! over strand joins `b` and `d`. The direction of the over strand is given
//! by the crossing sign: `+1` means it runs `d → b`, `-1` means `b → d`.
//!
//! The sweep keeps the processed crossings below a horizontal line and
//! attaches next a crossing whose edges on that line are adjacent and in
//! counterclockwise order, reading the line cyclically through infinity.
//! Cups supply missing incoming legs and caps close edges whose two ends are
//! both below the line. A nugatory crossing met from the wrong side has the
//! part hanging from it drawn first, in the gap between its two line edges.
//!
//! Every crossing is drawn with its slots counterclockwise and every edge
//! joins the slots the code names, so the drawing realizes the code's planar
//! map; any two such drawings differ by an isotopy of the sphere.

use std::collections::{BTreeMap, HashMap};

use super::{Orientation, Slice, Strand, TangleDiagram, TangleError};

fn err(msg: impl Into<String>) -> TangleError {
    TangleError::Parse(msg.into())
}

/// One end of an edge: crossing index and slot `0..4`.
type End = (usize, usize);

struct Code<'a> {
    x: &'a [[i64; 4]],
    signs: &'a [i32],
    ends: HashMap<i64, [End; 2]>,
    color: HashMap<i64, u32>,
}

impl Code<'_> {
    fn edge(&self, (c, s): End) -> i64 {
        self.x[c][s]
    }

    /// Whether the edge leaves the crossing at this slot.
    fn outgoing(&self, (c, s): End) -> bool {
        match s {
            0 => false,
            2 => true,
            1 => self.signs[c] > 0,
            _ => self.signs[c] < 0,
        }
    }

    fn far(&self, end: End) -> End {
        let [p, q] = self.ends[&self.edge(end)];
        if p == end {
            q
        } else {
            p
        }
    }

    /// The strand seen on the sweep line for an edge leaving `end` upward.
    fn strand(&self, end: End) -> Strand {
        let orientation = if self.outgoing(end) { Orientation::Up } else { Orientation::Down };
        Strand { color: self.color[&self.edge(end)], orientation }
    }
}

/// Build a closed diagram from a PD code, per-crossing signs and per-component
/// colors. Components are ordered by their smallest edge label; `colors` may
/// be empty for all ones.
pub fn from_pd(x: &[[i64; 4]], signs: &[i32], colors: &[u32]) -> Result<TangleDiagram, TangleError> {
    if x.is_empty() {
        return Err(err("pd code has no crossings"));
    }
    if signs.len() != x.len() {
        return Err(err(format!("{} signs given for {} crossings", signs.len(), x.len())));
    }
    if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
        return Err(err(format!("crossing sign must be 1 or -1, got {s}")));
    }
    let mut incidences: BTreeMap<i64, Vec<End>> = BTreeMap::new();
    for (c, q) in x.iter().enumerate() {
        for (s, &e) in q.iter().enumerate() {
            incidences.entry(e).or_default().push((c, s));
        }
    }
    let mut ends = HashMap::new();
    for (&e, v) in &incidences {
        match v[..] {
            [p, q] => {
                ends.insert(e, [p, q]);
            }
            _ => return Err(err(format!("edge {e} occurs {} times, expected 2", v.len()))),
        }
    }
    let mut code = Code { x, signs, ends, color: HashMap::new() };
    for (&e, &[p, q]) in &code.ends {
        if code.outgoing(p) == code.outgoing(q) {
            return Err(err(format!("edge {e}: crossing signs give it no consistent direction")));
        }
    }

    // components, by following each edge into its head and straight through
    let mut component: HashMap<i64, usize> = HashMap::new();
    let mut count = 0;
    for &start in incidences.keys() {
        if component.contains_key(&start) {
            continue;
        }
        let mut e = start;
        while component.insert(e, count).is_none() {
            let [p, q] = code.ends[&e];
            let (c, s) = if code.outgoing(p) { q } else { p };
            e = x[c][(s + 2) % 4];
        }
        count += 1;
    }
    let colors = if colors.is_empty() { vec![1; count] } else { colors.to_vec() };
    if colors.len() != count {
        return Err(err(format!("{} colors given for {count} components", colors.len())));
    }
    code.color = component.iter().map(|(&e, &k)| (e, colors[k])).collect();

    let mut sweep = Sweep { code: &code, done: vec![false; x.len()] };
    let mut slices = Vec::new();
    while let Some(c) = sweep.done.iter().position(|d| !d) {
        let d = sweep.run(c)?;
        if !d.line.is_empty() {
            return Err(not_planar());
        }
        slices.extend(d.slices);
    }
    TangleDiagram::new(Vec::new(), slices)
}

fn not_planar() -> TangleError {
    err("pd code is not a planar diagram with counterclockwise crossings")
}

/// Slices drawn so far and the near ends of the edges crossing the sweep
/// line at their top, left to right.
#[derive(Default)]
struct Drawing {
    slices: Vec<Slice>,
    line: Vec<End>,
}

impl Drawing {
    /// Cap adjacent line entries that are the two ends of one edge.
    fn cap_pairs(&mut self, code: &Code) {
        let mut p = 0;
        while p + 1 < self.line.len() {
            if code.edge(self.line[p]) == code.edge(self.line[p + 1]) {
                let s = code.strand(self.line[p]);
                self.slices.push(Slice::Cap { pos: p, color: s.color, orientation: s.orientation });
                self.line.drain(p..p + 2);
                p = p.saturating_sub(1);
            } else {
                p += 1;
            }
        }
    }

    /// Move the leftmost line strand to the right end, routing it around the
    /// outside of the drawing. This is an isotopy on the sphere, so neither
    /// the link nor its blackboard framing changes.
    fn rotate(&mut self, code: &Code) {
        let first = self.line.remove(0);
        let s = code.strand(first);
        let o = s.orientation.flip();
        let mut out = Vec::with_capacity(self.slices.len() + 2);
        out.push(Slice::Cup { pos: 0, color: s.color, orientation: o });
        out.extend(self.slices.iter().map(|sl| sl.shifted(1)));
        out.push(Slice::Cap { pos: 0, color: s.color, orientation: o });
        self.slices = out;
        self.line.push(first);
    }

    /// Place `sub`, drawn from an empty line, between line positions
    /// `at - 1` and `at`.
    fn insert(&mut self, at: usize, sub: Drawing) {
        self.slices.extend(sub.slices.into_iter().map(|sl| sl.shifted(at)));
        self.line.splice(at..at, sub.line);
    }

    /// Emit slices for crossing `c` whose slots `s, s+1, ..` meet the `k`
    /// line edges starting at `p`. The remaining slots leave upward in
    /// clockwise order.
    fn attach(&mut self, code: &Code, c: usize, s: usize, p: usize, k: usize) {
        let slot = |j: usize| (c, (s + j) % 4);
        let up = |end: End| code.strand(end);
        let into = |end: End| {
            let t = up(end);
            Strand { color: t.color, orientation: t.orientation.flip() }
        };
        let slices = &mut self.slices;
        // incoming legs below the crossing, as (left, right)
        let (left, right) = match k {
            0 => {
                let (l, r) = (into(slot(0)), into(slot(1)));
                slices.push(Slice::Cup { pos: p, color: l.color, orientation: l.orientation.flip() });
                slices.push(Slice::Cup { pos: p + 2, color: r.color, orientation: r.orientation });
                (l, r)
            }
            1 => {
                let r = into(slot(1));
                slices.push(Slice::Cup { pos: p + 1, color: r.color, orientation: r.orientation });
                (into(slot(0)), r)
            }
            _ => (into(slot(0)), into(slot(1))),
        };
        let at = if k == 0 { p + 1 } else { p };
        slices.push(Slice::crossing_with_over(at, s % 2 == 1, left.orientation, right.orientation));
        let new: Vec<End> = match k {
            0 => vec![slot(0), slot(3), slot(2), slot(1)],
            1 => vec![slot(3), slot(2), slot(1)],
            2 => vec![slot(3), slot(2)],
            3 => {
                let t = up(slot(2));
                slices.push(Slice::Cap { pos: p + 1, color: t.color, orientation: t.orientation });
                vec![slot(3)]
            }
            _ => {
                for (pos, j) in [(p + 1, 2), (p, 3)] {
                    let t = up(slot(j));
                    slices.push(Slice::Cap { pos, color: t.color, orientation: t.orientation });
                }
                vec![]
            }
        };
        self.line.splice(p..p + k, new);
    }
}

/// `(crossing, first slot, line position, block length)` for [`Drawing::attach`].
type Attach = (usize, usize, usize, usize);

struct Sweep<'a> {
    code: &'a Code<'a>,
    done: Vec<bool>,
}

impl Sweep<'_> {
    /// Sweep the part of the diagram reachable from crossing `start` without
    /// passing a crossing already marked done.
    fn run(&mut self, start: usize) -> Result<Drawing, TangleError> {
        let code = self.code;
        let mut d = Drawing::default();
        let q = &code.x[start];
        let s = (0..4).find(|&s| q[s] != q[(s + 1) % 4]).expect("an edge occurs at most twice");
        d.attach(code, start, s, 0, 0);
        self.done[start] = true;
        loop {
            d.cap_pairs(code);
            let len = d.line.len();
            if len > 2 && code.edge(d.line[0]) == code.edge(d.line[len - 1]) {
                d.rotate(code);
                continue;
            }
            if let Some((c, s, mut p, k)) = self.next_crossing(&d.line) {
                while p + k > d.line.len() {
                    d.rotate(code);
                    p -= 1;
                }
                d.attach(code, c, s, p, k);
                self.done[c] = true;
            } else if let Some((c, t, mut p)) = self.nugatory(&d.line) {
                while p + 2 > d.line.len() {
                    d.rotate(code);
                    p -= 1;
                }
                let sub = self.hanging(c, t)?;
                d.insert(p + 1, sub);
                d.attach(code, c, (t + 1) % 4, p, 4);
                self.done[c] = true;
            } else if d.line.iter().all(|&e| self.done[code.far(e).0]) {
                return Ok(d);
            } else {
                return Err(not_planar());
            }
        }
    }

    /// Crossings met by line edges, with the positions of those edges.
    fn pending(&self, line: &[End]) -> BTreeMap<usize, Vec<usize>> {
        let mut at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pos, &end) in line.iter().enumerate() {
            let (c, _) = self.code.far(end);
            if !self.done[c] {
                at.entry(c).or_default().push(pos);
            }
        }
        at
    }

    /// A crossing whose edges on the line form a block, cyclically, in
    /// counterclockwise order: `(crossing, first slot, start, len)`. Blocks
    /// that do not wrap around the ends of the line come first, then longer
    /// blocks.
    fn next_crossing(&self, line: &[End]) -> Option<Attach> {
        let code = self.code;
        let len = line.len();
        let mut best: Option<((bool, usize), Attach)> = None;
        for (c, pos) in self.pending(line) {
            let k = pos.len();
            for &p in &pos {
                if k < len && pos.contains(&((p + len - 1) % len)) {
                    continue;
                }
                let s = code.far(line[p]).1;
                if (0..k).all(|j| code.far(line[(p + j) % len]) == (c, (s + j) % 4)) {
                    let key = (p + k <= len, k);
                    if best.is_none_or(|(b, _)| key > b) {
                        best = Some((key, (c, s, p, k)));
                    }
                }
            }
        }
        best.map(|b| b.1)
    }

    /// A crossing met by exactly two adjacent line edges in clockwise order,
    /// at slots `t + 1` then `t`: its other two slots lead into a part of the
    /// diagram hanging between those edges. Returns `(crossing, t, start)`.
    fn nugatory(&self, line: &[End]) -> Option<(usize, usize, usize)> {
        let len = line.len();
        self.pending(line).into_iter().find_map(|(c, pos)| {
            let [a, b] = pos[..] else { return None };
            let p = if b == a + 1 {
                a
            } else if a == 0 && b == len - 1 {
                b
            } else {
                return None;
            };
            let (l, r) = (self.code.far(line[p]).1, self.code.far(line[(p + 1) % len]).1);
            (l == (r + 1) % 4).then_some((c, r, p))
        })
    }

    /// Draw the part hanging from slots `t + 2, t + 3` of crossing `c`, ending
    /// in the two edges that meet those slots, left to right.
    fn hanging(&mut self, c: usize, t: usize) -> Result<Drawing, TangleError> {
        let code = self.code;
        let (a, b) = ((c, (t + 2) % 4), (c, (t + 3) % 4));
        if code.far(a) == b {
            let s = code.strand(b);
            let cup = Slice::Cup { pos: 0, color: s.color, orientation: s.orientation };
            return Ok(Drawing { slices: vec![cup], line: vec![b, a] });
        }
        self.done[c] = true;
        let mut sub = self.run(code.far(a).0)?;
        self.done[c] = false;
        if sub.line.len() == 2 && code.far(sub.line[0]) == b {
            sub.rotate(code);
        }
        match sub.line[..] {
            [l, r] if code.far(l) == a && code.far(r) == b => Ok(sub),
            _ => Err(not_planar()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::{eval_closed, Framing};
    use crate::tangle::{close, parse_braid};

    const TREFOIL: [[i64; 4]; 3] = [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]];
    const FIGURE_EIGHT: [[i64; 4]; 4] = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]];

    /// Signs when every component is numbered consecutively along its direction.
    fn consecutive_signs(x: &[[i64; 4]], n_edges: i64) -> Vec<i32> {
        x.iter().map(|q| if (q[3] % n_edges) + 1 == q[1] { 1 } else { -1 }).collect()
    }

    fn braid(w: &[i64], n: usize) -> TangleDiagram {
        close(&parse_braid(w, &vec![1; n]).unwrap()).unwrap()
    }

    fn same_framed(a: &TangleDiagram, b: &TangleDiagram) {
        assert_eq!(eval_closed(a, Framing::Framed).unwrap(), eval_closed(b, Framing::Framed).unwrap());
    }

    #[test]
    fn trefoil_is_left_handed() {
        let t = from_pd(&TREFOIL, &consecutive_signs(&TREFOIL, 6), &[]).unwrap();
        assert_eq!(t.components().len(), 1);
        assert_eq!(t.total_writhe(), -3);
        same_framed(&t, &braid(&[-1, -1, -1], 2));
    }

    #[test]
    fn figure_eight() {
        let signs = consecutive_signs(&FIGURE_EIGHT, 8);
        assert_eq!(signs.iter().sum::<i32>(), 0);
        let t = from_pd(&FIGURE_EIGHT, &signs, &[]).unwrap();
        same_framed(&t, &braid(&[1, -2, 1, -2], 3));
    }

    #[test]
    fn hopf_signs_are_forced() {
        let x = [[4, 1, 3, 2], [2, 3, 1, 4]];
        let t = from_pd(&x, &[-1, -1], &[]).unwrap();
        assert_eq!(t.components().len(), 2);
        same_framed(&t, &braid(&[-1, -1], 2));
        assert!(from_pd(&x, &[1, 1], &[]).is_err());
        assert!(from_pd(&x, &[1, -1], &[]).is_err());
        let colored = from_pd(&x, &[-1, -1], &[2, 1]).unwrap();
        assert_eq!(colored.max_color(), 2);
    }

    #[test]
    fn kinks_and_split_unions() {
        let kink = from_pd(&[[1, 1, 2, 2]], &[1], &[]).unwrap();
        assert_eq!(kink.components()[0].writhe, 1);
        same_framed(&kink, &braid(&[1], 2));
        let two = from_pd(&[[1, 1, 2, 2], [3, 4, 4, 3]], &[1, -1], &[]).unwrap();
        assert_eq!(two.components().len(), 2);
        let w: Vec<i64> = two.components().iter().map(|c| c.writhe).collect();
        assert_eq!(w, vec![1, -1]);
    }

    #[test]
    fn nugatory_crossing_met_from_behind() {
        // closure of s2 s3 s1 on four strands
        let x = [[3, 6, 5, 2], [4, 4, 3, 6], [5, 2, 1, 1]];
        let t = from_pd(&x, &[1, 1, 1], &[]).unwrap();
        assert_eq!(t.components().len(), 1);
        same_framed(&t, &braid(&[2, 3, 1], 4));
    }

    #[test]
    fn bad_codes() {
        assert!(from_pd(&[], &[], &[]).is_err());
        assert!(from_pd(&TREFOIL, &[1, 1], &[]).is_err());
        assert!(from_pd(&TREFOIL, &[2, 1, 1], &[]).is_err());
        assert!(from_pd(&[[1, 2, 3, 4]], &[1], &[]).is_err());
        assert!(from_pd(&TREFOIL, &[-1, -1, -1], &[1, 2]).is_err());
    }
}
