//! Oriented framed labeled tangles as vertical stacks of elementary slices.
//!
//! Levels are numbered from the bottom: level `k` is the boundary word just
//! below slice `k`, so a diagram with `s` slices has `s + 1` levels. Framing is
//! the blackboard framing of the drawn diagram.

mod format;
mod pd;

pub use format::parse_text;
pub use pd::from_pd;

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TangleError {
    #[error("slice {slice}: position {pos} out of range for width {width}")]
    OutOfRange { slice: usize, pos: usize, width: usize },
    #[error("slice {slice}: {msg}")]
    Inconsistent { slice: usize, msg: String },
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("colors must be positive")]
    InvalidColor,
    #[error("component {0} not found")]
    ComponentNotFound(usize),
    #[error("diagram is not closed")]
    NotClosed,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Up,
    Down,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Up => Orientation::Down,
            Orientation::Down => Orientation::Up,
        }
    }
}

/// One boundary point: `a` when oriented up, `a*` when oriented down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Strand {
    pub color: u32,
    pub orientation: Orientation,
}

impl Strand {
    pub fn up(color: u32) -> Self {
        Strand { color, orientation: Orientation::Up }
    }

    pub fn down(color: u32) -> Self {
        Strand { color, orientation: Orientation::Down }
    }

    pub fn dual(self) -> Self {
        Strand { color: self.color, orientation: self.orientation.flip() }
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientation {
            Orientation::Up => write!(f, "{}", self.color),
            Orientation::Down => write!(f, "{}*", self.color),
        }
    }
}

pub type BoundaryWord = Vec<Strand>;

/// Elementary slice acting at horizontal position `pos` (0-based).
///
/// Crossings act on strands `pos, pos + 1`. A cup creates a pair at
/// `pos, pos + 1` and a cap removes one; their `orientation` is that of the
/// left leg, so `Cup { orientation: Up }` creates `a ⊗ a*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Slice {
    Positive { pos: usize },
    Negative { pos: usize },
    Cup { pos: usize, color: u32, orientation: Orientation },
    Cap { pos: usize, color: u32, orientation: Orientation },
    Identity,
}

impl Slice {
    pub fn crossing(pos: usize, sign: i32) -> Slice {
        if sign > 0 {
            Slice::Positive { pos }
        } else {
            Slice::Negative { pos }
        }
    }

    /// Crossing at `pos` with the prescribed over strand, sign derived from the
    /// orientations of the two incoming strands.
    pub fn crossing_with_over(pos: usize, left_over: bool, left: Orientation, right: Orientation) -> Slice {
        Slice::crossing(pos, if left_over == (left == right) { 1 } else { -1 })
    }

    pub fn sign(&self) -> Option<i32> {
        match self {
            Slice::Positive { .. } => Some(1),
            Slice::Negative { .. } => Some(-1),
            _ => None,
        }
    }

    fn shifted(self, by: usize) -> Slice {
        match self {
            Slice::Positive { pos } => Slice::Positive { pos: pos + by },
            Slice::Negative { pos } => Slice::Negative { pos: pos + by },
            Slice::Cup { pos, color, orientation } => Slice::Cup { pos: pos + by, color, orientation },
            Slice::Cap { pos, color, orientation } => Slice::Cap { pos: pos + by, color, orientation },
            Slice::Identity => Slice::Identity,
        }
    }
}

/// Whether the strand entering a crossing from the bottom left is the over strand.
pub fn left_is_over(sign: i32, left: Orientation, right: Orientation) -> bool {
    (sign > 0) == (left == right)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub color: u32,
    /// Signed count of crossings of the component with itself.
    pub writhe: i64,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleDiagram {
    slices: Vec<Slice>,
    levels: Vec<BoundaryWord>,
    /// Component index of every strand at every level.
    comp_at: Vec<Vec<usize>>,
    components: Vec<Component>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

impl TangleDiagram {
    /// Build a diagram from its bottom word and slices, checking consistency.
    pub fn new(bottom: BoundaryWord, slices: Vec<Slice>) -> Result<Self, TangleError> {
        if bottom.iter().any(|s| s.color == 0) {
            return Err(TangleError::InvalidColor);
        }
        let mut uf = UnionFind(Vec::new());
        let mut cur = bottom.clone();
        let mut seg: Vec<usize> = bottom.iter().map(|_| uf.add()).collect();
        let mut levels = vec![cur.clone()];
        let mut segs = vec![seg.clone()];
        let mut crossings: Vec<(usize, usize, i32)> = Vec::new();
        for (k, sl) in slices.iter().enumerate() {
            let width = cur.len();
            let range = |pos: usize, need: usize| {
                if pos + need > width {
                    Err(TangleError::OutOfRange { slice: k, pos, width })
                } else {
                    Ok(())
                }
            };
            match *sl {
                Slice::Positive { pos } | Slice::Negative { pos } => {
                    range(pos, 2)?;
                    crossings.push((seg[pos], seg[pos + 1], sl.sign().unwrap()));
                    cur.swap(pos, pos + 1);
                    seg.swap(pos, pos + 1);
                }
                Slice::Cup { pos, color, orientation } => {
                    if pos > width {
                        return Err(TangleError::OutOfRange { slice: k, pos, width });
                    }
                    if color == 0 {
                        return Err(TangleError::InvalidColor);
                    }
                    let s = Strand { color, orientation };
                    let id = uf.add();
                    cur.splice(pos..pos, [s, s.dual()]);
                    seg.splice(pos..pos, [id, id]);
                }
                Slice::Cap { pos, color, orientation } => {
                    range(pos, 2)?;
                    let s = Strand { color, orientation };
                    if cur[pos] != s || cur[pos + 1] != s.dual() {
                        return Err(TangleError::Inconsistent {
                            slice: k,
                            msg: format!("cap {s} {} does not match strands {} {}", s.dual(), cur[pos], cur[pos + 1]),
                        });
                    }
                    uf.union(seg[pos], seg[pos + 1]);
                    cur.drain(pos..pos + 2);
                    seg.drain(pos..pos + 2);
                }
                Slice::Identity => {}
            }
            levels.push(cur.clone());
            segs.push(seg.clone());
        }
        // number components by first appearance, scanning levels bottom to top
        let mut root_to_comp = std::collections::HashMap::new();
        let mut comp_color: Vec<u32> = Vec::new();
        let mut comp_at = Vec::with_capacity(segs.len());
        for (lvl, row) in segs.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (p, &s) in row.iter().enumerate() {
                let r = uf.find(s);
                let n = root_to_comp.len();
                let c = *root_to_comp.entry(r).or_insert(n);
                if c == comp_color.len() {
                    comp_color.push(levels[lvl][p].color);
                } else if comp_color[c] != levels[lvl][p].color {
                    return Err(TangleError::Inconsistent {
                        slice: lvl.saturating_sub(1),
                        msg: "component changes color".into(),
                    });
                }
                out.push(c);
            }
            comp_at.push(out);
        }
        let top: Vec<usize> = segs.last().unwrap().iter().map(|&s| uf.find(s)).collect();
        let bot: Vec<usize> = segs[0].iter().map(|&s| uf.find(s)).collect();
        let mut components: Vec<Component> = comp_color
            .iter()
            .map(|&color| Component { color, writhe: 0, closed: true })
            .collect();
        for (r, &c) in &root_to_comp {
            if top.contains(r) || bot.contains(r) {
                components[c].closed = false;
            }
        }
        for (a, b, s) in crossings {
            let (ra, rb) = (uf.find(a), uf.find(b));
            if ra == rb {
                components[root_to_comp[&ra]].writhe += s as i64;
            }
        }
        Ok(TangleDiagram { slices, levels, comp_at, components })
    }

    pub fn bottom(&self) -> &BoundaryWord {
        &self.levels[0]
    }

    pub fn top(&self) -> &BoundaryWord {
        self.levels.last().unwrap()
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    /// Boundary word at level `k` (below slice `k`).
    pub fn level(&self, k: usize) -> &BoundaryWord {
        &self.levels[k]
    }

    /// Component of each strand at level `k`.
    pub fn components_at(&self, k: usize) -> &[usize] {
        &self.comp_at[k]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_closed(&self) -> bool {
        self.bottom().is_empty() && self.top().is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.slices.iter().filter(|s| s.sign().is_some()).count()
    }

    /// Sum of all crossing signs.
    pub fn total_writhe(&self) -> i64 {
        self.slices.iter().filter_map(|s| s.sign()).map(i64::from).sum()
    }

    /// Crossing signs between distinct components, indexed `(min, max)`.
    pub fn mixed_crossings(&self) -> Vec<((usize, usize), i32)> {
        let mut out = Vec::new();
        for (k, sl) in self.slices.iter().enumerate() {
            if let (Some(s), Slice::Positive { pos } | Slice::Negative { pos }) = (sl.sign(), sl) {
                let (a, b) = (self.comp_at[k][*pos], self.comp_at[k][*pos + 1]);
                if a != b {
                    out.push(((a.min(b), a.max(b)), s));
                }
            }
        }
        out
    }

    pub fn max_color(&self) -> u32 {
        self.components.iter().map(|c| c.color).max().unwrap_or(1)
    }

    /// First level at which `component` has an upward strand, with the leftmost such position.
    pub fn first_up_segment(&self, component: usize) -> Option<(usize, usize)> {
        (0..self.levels.len()).find_map(|l| {
            (0..self.levels[l].len())
                .find(|&p| self.comp_at[l][p] == component && self.levels[l][p].orientation == Orientation::Up)
                .map(|p| (l, p))
        })
    }
}

/// Braid on `colors.len()` upward strands; generator `+i`/`-i` is a
/// positive/negative crossing of strands `i, i+1` (1-based).
pub fn parse_braid(word: &[i64], colors: &[u32]) -> Result<TangleDiagram, TangleError> {
    let n = colors.len();
    let mut slices = Vec::with_capacity(word.len());
    for (k, &g) in word.iter().enumerate() {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= n {
            return Err(TangleError::OutOfRange { slice: k, pos: i, width: n });
        }
        slices.push(Slice::crossing(i - 1, g.signum() as i32));
    }
    TangleDiagram::new(colors.iter().map(|&c| Strand::up(c)).collect(), slices)
}

/// Trace closure: nested cups below and nested caps above, on the right.
pub fn close(t: &TangleDiagram) -> Result<TangleDiagram, TangleError> {
    if t.bottom() != t.top() {
        return Err(TangleError::BoundaryMismatch(format!(
            "bottom {} differs from top {}",
            word_str(t.bottom()),
            word_str(t.top())
        )));
    }
    let w = t.bottom();
    let n = w.len();
    let mut slices: Vec<Slice> = w
        .iter()
        .enumerate()
        .map(|(k, s)| Slice::Cup { pos: k, color: s.color, orientation: s.orientation })
        .collect();
    slices.extend_from_slice(t.slices());
    for k in (0..n).rev() {
        slices.push(Slice::Cap { pos: k, color: w[k].color, orientation: w[k].orientation });
    }
    TangleDiagram::new(Vec::new(), slices)
}

pub fn word_str(w: &[Strand]) -> String {
    let parts: Vec<String> = w.iter().map(|s| s.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Where the parallel strands of a cabled component sit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marker {
    pub component: usize,
    /// Level in the cabled diagram.
    pub level: usize,
    /// Leftmost of the `width` adjacent upward strands.
    pub position: usize,
    pub width: usize,
}

#[derive(Clone, Debug)]
pub struct Cabled {
    pub diagram: TangleDiagram,
    pub markers: Vec<Marker>,
    /// Cabled component indices belonging to each original component.
    pub bundles: Vec<Vec<usize>>,
}

/// Blackboard cabling: each color-`a` strand becomes `a` parallel color-1 strands.
pub fn cable(t: &TangleDiagram) -> Cabled {
    let mut slices = Vec::new();
    let mut level_map = vec![0usize];
    for (k, sl) in t.slices().iter().enumerate() {
        let w = t.level(k);
        let offset = |i: usize| -> usize { w[..i].iter().map(|s| s.color as usize).sum() };
        match *sl {
            Slice::Positive { pos } | Slice::Negative { pos } => {
                let (a, b) = (w[pos].color as usize, w[pos + 1].color as usize);
                let p = offset(pos);
                for j in 0..b {
                    for i in (0..a).rev() {
                        slices.push(Slice::crossing(p + i + j, sl.sign().unwrap()));
                    }
                }
            }
            Slice::Cup { pos, color, orientation } => {
                let p = offset(pos);
                for i in 0..color as usize {
                    slices.push(Slice::Cup { pos: p + i, color: 1, orientation });
                }
            }
            Slice::Cap { pos, color, orientation } => {
                let p = offset(pos);
                for i in (0..color as usize).rev() {
                    slices.push(Slice::Cap { pos: p + i, color: 1, orientation });
                }
            }
            Slice::Identity => slices.push(Slice::Identity),
        }
        level_map.push(slices.len());
    }
    let bottom: BoundaryWord = t
        .bottom()
        .iter()
        .flat_map(|s| std::iter::repeat_n(Strand { color: 1, orientation: s.orientation }, s.color as usize))
        .collect();
    let diagram = TangleDiagram::new(bottom, slices).expect("cabling preserves consistency");
    let mut markers = Vec::new();
    let mut bundles = vec![Vec::new(); t.components().len()];
    for (c, comp) in t.components().iter().enumerate() {
        let (lvl, pos) = t.first_up_segment(c).expect("every component has an upward segment");
        let position: usize = t.level(lvl)[..pos].iter().map(|s| s.color as usize).sum();
        let level = level_map[lvl];
        let width = comp.color as usize;
        markers.push(Marker { component: c, level, position, width });
        for i in 0..width {
            let cc = diagram.components_at(level)[position + i];
            bundles[c].push(cc);
        }
    }
    Cabled { diagram, markers, bundles }
}

/// Cut a closed diagram open on `component`, producing a `(a, a)` tangle
/// whose other components stay closed. The cut is made at the first
/// upward segment of the component.
pub fn cut_strand(t: &TangleDiagram, component: usize) -> Result<TangleDiagram, TangleError> {
    if !t.is_closed() {
        return Err(TangleError::NotClosed);
    }
    let comp = t.components().get(component).ok_or(TangleError::ComponentNotFound(component))?;
    let (lvl, pos) = t.first_up_segment(component).unwrap();
    cut_at(t, lvl, pos, comp.color)
}

/// All upward segments `(level, position)` of a component, one per slice
/// region; used to check independence of the cut point.
pub fn up_segments(t: &TangleDiagram, component: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for l in 0..t.levels.len() {
        for p in 0..t.levels[l].len() {
            if t.comp_at[l][p] == component && t.levels[l][p].orientation == Orientation::Up {
                out.push((l, p));
            }
        }
    }
    out
}

/// Cut a closed diagram at the upward strand at `(level, pos)`.
///
/// The lower half of the cut strand is pulled over everything to its left up
/// to the top boundary, and the new bottom endpoint is pulled over everything
/// to the cut point. This introduces one extra self-crossing, cancelled by a
/// curl of opposite sign, so the framing is unchanged.
pub fn cut_at(t: &TangleDiagram, level: usize, pos: usize, color: u32) -> Result<TangleDiagram, TangleError> {
    let w = t.level(level);
    if pos >= w.len() || w[pos].orientation != Orientation::Up || w[pos].color != color {
        return Err(TangleError::BoundaryMismatch("cut point is not an upward strand of the given color".into()));
    }
    let up = Orientation::Up;
    let mut slices = vec![
        Slice::Cup { pos: 1, color, orientation: up },
        Slice::Negative { pos: 0 },
        Slice::Cap { pos: 1, color, orientation: up },
    ];
    slices.extend(t.slices()[..level].iter().map(|s| s.shifted(1)));
    // the cut strand's lower half moves left over w[pos-1], ..., w[0]
    for j in (0..pos).rev() {
        slices.push(Slice::crossing_with_over(j + 1, false, w[j].orientation, up));
    }
    slices.push(Slice::crossing_with_over(0, true, up, up));
    // the new strand moves right over w[0], ..., w[pos-1]
    for (j, s) in w.iter().enumerate().take(pos) {
        slices.push(Slice::crossing_with_over(j + 1, true, up, s.orientation));
    }
    slices.extend(t.slices()[level..].iter().map(|s| s.shifted(1)));
    TangleDiagram::new(vec![Strand::up(color)], slices)
}

/// Serializable form of a diagram: the bottom word and the slice list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub bottom: BoundaryWord,
    pub slices: Vec<Slice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<BoundaryWord>,
}

impl TangleDiagram {
    pub fn to_json(&self) -> DiagramJson {
        DiagramJson { bottom: self.bottom().clone(), slices: self.slices.clone(), top: Some(self.top().clone()) }
    }

    pub fn from_json(d: &DiagramJson) -> Result<Self, TangleError> {
        let t = TangleDiagram::new(d.bottom.clone(), d.slices.clone())?;
        if let Some(top) = &d.top {
            if top != t.top() {
                return Err(TangleError::BoundaryMismatch(format!(
                    "declared top {} but slices produce {}",
                    word_str(top),
                    word_str(t.top())
                )));
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_and_closure() {
        let b = parse_braid(&[1, 1, 1], &[1, 1]).unwrap();
        assert_eq!(b.crossing_count(), 3);
        let t = close(&b).unwrap();
        assert!(t.is_closed());
        assert_eq!(t.components().len(), 1);
        assert_eq!(t.components()[0].writhe, 3);

        let h = close(&parse_braid(&[1, 1], &[1, 1]).unwrap()).unwrap();
        assert_eq!(h.components().len(), 2);
        assert!(h.components().iter().all(|c| c.writhe == 0));
        assert_eq!(h.mixed_crossings().len(), 2);

        let u = close(&parse_braid(&[], &[1]).unwrap()).unwrap();
        assert_eq!(u.components(), &[Component { color: 1, writhe: 0, closed: true }]);

        let r2 = close(&parse_braid(&[1, -1], &[2, 3]).unwrap()).unwrap();
        assert_eq!(r2.components().len(), 2);
    }

    #[test]
    fn braid_errors() {
        assert!(parse_braid(&[2], &[1, 1]).is_err());
        assert!(parse_braid(&[0], &[1, 1]).is_err());
        let mixed = parse_braid(&[1], &[1, 2]).unwrap();
        assert!(close(&mixed).is_err());
    }

    #[test]
    fn cable_counts() {
        let u2 = close(&parse_braid(&[], &[2]).unwrap()).unwrap();
        let c = cable(&u2);
        assert_eq!(c.diagram.components().len(), 2);
        assert_eq!(c.diagram.crossing_count(), 0);

        let x = parse_braid(&[1], &[2, 1]).unwrap();
        let c = cable(&x);
        assert_eq!(c.diagram.crossing_count(), 2);
        assert!(c.diagram.slices().iter().all(|s| s.sign() == Some(1)));

        let curl = close(&parse_braid(&[1], &[2, 2]).unwrap()).unwrap();
        assert_eq!(curl.components().len(), 1);
        assert_eq!(cable(&curl).diagram.crossing_count(), 4);
    }

    #[test]
    fn cable_writhe_scales_by_color_squared() {
        let t = close(&parse_braid(&[1, 1, 1], &[2, 2]).unwrap()).unwrap();
        let c = cable(&t);
        let bundle = &c.bundles[0];
        let mut w = 0;
        for (k, sl) in c.diagram.slices().iter().enumerate() {
            if let (Some(s), Slice::Positive { pos } | Slice::Negative { pos }) = (sl.sign(), sl) {
                let at = c.diagram.components_at(k);
                if bundle.contains(&at[*pos]) && bundle.contains(&at[*pos + 1]) {
                    w += s as i64;
                }
            }
        }
        assert_eq!(w, 4 * t.components()[0].writhe);
    }

    #[test]
    fn cut_preserves_framing() {
        let t = close(&parse_braid(&[1, 1, 1], &[1, 1]).unwrap()).unwrap();
        for (l, p) in up_segments(&t, 0) {
            let c = cut_at(&t, l, p, 1).unwrap();
            assert_eq!(c.bottom(), &vec![Strand::up(1)]);
            assert_eq!(c.top(), &vec![Strand::up(1)]);
            assert_eq!(c.components()[0].writhe, 3);
            assert_eq!(c.components().len(), 1);
        }
        let unlink = close(&parse_braid(&[], &[1, 1]).unwrap()).unwrap();
        let c = cut_strand(&unlink, 1).unwrap();
        assert_eq!(c.components().len(), 2);
        assert_eq!(c.components().iter().filter(|k| k.closed).count(), 1);
    }

    #[test]
    fn json_round_trip() {
        let t = close(&parse_braid(&[1, -2, 1, -2], &[1, 1, 1]).unwrap()).unwrap();
        let s = serde_json::to_string(&t.to_json()).unwrap();
        let back = TangleDiagram::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, t);
    }
}
