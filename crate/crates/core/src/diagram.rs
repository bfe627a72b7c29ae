//! Disk diagrams over `W_Γ` as rewrite wire diagrams.
//!
//! A diagram is a bottom word together with a sequence of rewrite events:
//! `swap` exchanges two adjacent letters whose types commute (one square),
//! `cancel` deletes two adjacent equal letters (a cap). Each letter traces a
//! strand; strands joined by a cap form one dual curve. The boundary path
//! reads the bottom word left to right, then the top word right to left, so
//! boundary edge `i < n` is bottom letter `i` and edge `n + (m - 1 - j)` is
//! top letter `j`.
//!
//! A curve is dual to a boundary arc when it has an endpoint on the arc; two
//! curves intersect when they share a swap event.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::DiagramError;
use crate::graph::{is_strip_set_with, SimplicialGraph, StripPolicy, VertexSet};
use crate::hypergraph::{hypergraph_index, HypergraphIndex};
use crate::words::{is_reduced, Word};

/// Spoke cap for the exhaustive fence oracle.
pub const FENCE_ORACLE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Event {
    Swap { pos: usize },
    Cancel { pos: usize },
}

impl Event {
    pub fn op(self) -> &'static str {
        match self {
            Event::Swap { .. } => "swap",
            Event::Cancel { .. } => "cancel",
        }
    }

    pub fn pos(self) -> usize {
        match self {
            Event::Swap { pos } | Event::Cancel { pos } => pos,
        }
    }
}

/// A half-open range `[start, end)` of boundary edges, read in boundary
/// order and wrapping past the last edge when `end < start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Arc {
    pub start: usize,
    pub end: usize,
}

impl From<[usize; 2]> for Arc {
    fn from([start, end]: [usize; 2]) -> Self {
        Arc { start, end }
    }
}

impl From<Arc> for [usize; 2] {
    fn from(a: Arc) -> Self {
        [a.start, a.end]
    }
}

impl Arc {
    pub fn new(start: usize, end: usize) -> Self {
        Arc { start, end }
    }

    /// Number of edges on a boundary of `total` edges.
    pub fn len(self, total: usize) -> usize {
        if self.end >= self.start {
            self.end - self.start
        } else {
            total - self.start + self.end
        }
    }

    pub fn is_empty(self, total: usize) -> bool {
        self.len(total) == 0
    }

    /// Offset of boundary edge `pos` along the arc.
    pub fn offset(self, pos: usize, total: usize) -> Option<usize> {
        if total == 0 {
            return None;
        }
        let o = (pos + total - self.start % total) % total;
        (o < self.len(total)).then_some(o)
    }

    pub fn contains(self, pos: usize, total: usize) -> bool {
        self.offset(pos, total).is_some()
    }

    /// Boundary edge at `offset` along the arc.
    pub fn at(self, offset: usize, total: usize) -> usize {
        (self.start + offset) % total
    }

    pub fn positions(self, total: usize) -> impl Iterator<Item = usize> {
        (0..self.len(total)).map(move |i| self.at(i, total))
    }

    /// The sub-arc of edges with offsets in `from..to`.
    pub fn sub(self, from: usize, to: usize, total: usize) -> Arc {
        let start = (self.start + from) % total.max(1);
        Arc::new(start, start + (to - from))
            .normalized(total)
    }

    fn normalized(self, total: usize) -> Arc {
        if self.end > total {
            Arc::new(self.start, self.end - total)
        } else {
            self
        }
    }

    fn start_vertex(self, total: usize) -> usize {
        self.start % total.max(1)
    }

    fn end_vertex(self, total: usize) -> usize {
        self.end % total.max(1)
    }

    fn shares_edge(self, other: Arc, total: usize) -> bool {
        self.positions(total).any(|p| other.contains(p, total))
    }

    fn within(self, other: Arc, total: usize) -> bool {
        self.positions(total).all(|p| other.contains(p, total))
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCurve {
    pub id: usize,
    /// The vertex of `Γ` labeling every edge the curve is dual to.
    pub letter: usize,
    /// Boundary edges, ascending.
    pub endpoints: [usize; 2],
    /// Both endpoints on the bottom word, joined by a cancel.
    pub capped: bool,
    /// `(other curve, event index)` for each swap the curve takes part in.
    pub crossings: Vec<(usize, usize)>,
}

/// An unordered pair of curves with distinct non-adjacent types, stored with
/// `h < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Spoke {
    pub h: usize,
    pub k: usize,
}

impl Spoke {
    pub fn new(a: usize, b: usize) -> Self {
        Spoke {
            h: a.min(b),
            k: a.max(b),
        }
    }

    pub fn curves(self) -> [usize; 2] {
        [self.h, self.k]
    }
}

/// The spokes of an L-fence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fence {
    pub level: u32,
    /// Sorted.
    pub spokes: Vec<Spoke>,
}

impl Fence {
    pub fn new(level: u32, mut spokes: Vec<Spoke>) -> Self {
        spokes.sort();
        spokes.dedup();
        Fence { level, spokes }
    }

    pub fn contains(&self, s: Spoke) -> bool {
        self.spokes.binary_search(&s).is_ok()
    }

    /// Curves contained in the fence, ascending.
    pub fn curves(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.spokes.iter().flat_map(|s| s.curves()).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// `V(F)`: the types of the curves contained in the fence.
    pub fn types(&self, d: &DiskDiagram) -> VertexSet {
        self.curves().into_iter().map(|c| d.curves[c].letter).collect()
    }

    /// Some spoke intersects `a` and some spoke intersects `b`.
    pub fn connects(&self, d: &DiskDiagram, a: Arc, b: Arc) -> bool {
        self.spokes.iter().any(|&s| d.spoke_meets_arc(s, a))
            && self.spokes.iter().any(|&s| d.spoke_meets_arc(s, b))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "spokes": self.spokes.iter().map(|s| [s.h, s.k]).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct DiskDiagram {
    graph: SimplicialGraph,
    bottom: Word,
    top: Word,
    events: Vec<Event>,
    curves: Vec<DualCurve>,
    /// `(event, curve, curve)` per swap.
    crossings: Vec<(usize, usize, usize)>,
    meets: Vec<FixedBitSet>,
    boundary_curve: Vec<usize>,
    arcs: BTreeMap<String, Arc>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl DiskDiagram {
    /// Replays `events` on `bottom`; fails at the first illegal step.
    pub fn from_rewrite(
        g: &SimplicialGraph,
        bottom: Word,
        events: Vec<Event>,
    ) -> Result<Self, DiagramError> {
        bottom.check(g)?;
        let n = bottom.len();
        let letter = bottom.letters().to_vec();
        let mut state: Vec<usize> = (0..n).collect();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut strand_crossings = Vec::new();
        for (step, &ev) in events.iter().enumerate() {
            let pos = ev.pos();
            let illegal = |reason: String| DiagramError::IllegalEvent {
                step,
                op: ev.op(),
                pos,
                reason,
            };
            if pos + 1 >= state.len() {
                return Err(illegal(format!("word has length {}", state.len())));
            }
            let (a, b) = (state[pos], state[pos + 1]);
            let (la, lb) = (letter[a], letter[b]);
            match ev {
                Event::Swap { .. } => {
                    if la == lb || !g.adjacent(la, lb) {
                        return Err(illegal(format!(
                            "`{}` and `{}` do not commute",
                            g.name(la),
                            g.name(lb)
                        )));
                    }
                    strand_crossings.push((step, a, b));
                    state.swap(pos, pos + 1);
                }
                Event::Cancel { .. } => {
                    if la != lb {
                        return Err(illegal(format!(
                            "`{}` and `{}` are different letters",
                            g.name(la),
                            g.name(lb)
                        )));
                    }
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra.max(rb)] = ra.min(rb);
                    state.drain(pos..pos + 2);
                }
            }
        }
        let m = state.len();
        let top = Word::new(state.iter().map(|&s| letter[s]).collect());
        let total = n + m;

        let mut ends: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for s in 0..n {
            ends.entry(find(&mut parent, s)).or_default().push(s);
        }
        for (j, &s) in state.iter().enumerate() {
            ends.entry(find(&mut parent, s)).or_default().push(n + (m - 1 - j));
        }
        let mut classes: Vec<([usize; 2], usize)> = ends
            .into_iter()
            .map(|(root, mut e)| {
                debug_assert_eq!(e.len(), 2);
                e.sort_unstable();
                ([e[0], e[1]], root)
            })
            .collect();
        classes.sort();

        let mut curve_of_root = vec![usize::MAX; n];
        let mut boundary_curve = vec![0; total];
        let mut curves = Vec::with_capacity(classes.len());
        for (id, (endpoints, root)) in classes.into_iter().enumerate() {
            curve_of_root[root] = id;
            for e in endpoints {
                boundary_curve[e] = id;
            }
            curves.push(DualCurve {
                id,
                letter: letter[root],
                endpoints,
                capped: endpoints[1] < n,
                crossings: Vec::new(),
            });
        }
        let mut meets = vec![FixedBitSet::with_capacity(curves.len()); curves.len()];
        let mut crossings = Vec::with_capacity(strand_crossings.len());
        for (step, a, b) in strand_crossings {
            let ca = curve_of_root[find(&mut parent, a)];
            let cb = curve_of_root[find(&mut parent, b)];
            curves[ca].crossings.push((cb, step));
            curves[cb].crossings.push((ca, step));
            meets[ca].insert(cb);
            meets[cb].insert(ca);
            crossings.push((step, ca, cb));
        }
        Ok(DiskDiagram {
            graph: g.clone(),
            bottom,
            top,
            events,
            curves,
            crossings,
            meets,
            boundary_curve,
            arcs: BTreeMap::new(),
        })
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn top(&self) -> &Word {
        &self.top
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn curves(&self) -> &[DualCurve] {
        &self.curves
    }

    /// `(event, curve, curve)` for every swap.
    pub fn crossings(&self) -> &[(usize, usize, usize)] {
        &self.crossings
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary_curve.len()
    }

    /// The curve dual to boundary edge `pos`.
    pub fn curve_at(&self, pos: usize) -> usize {
        self.boundary_curve[pos]
    }

    pub fn boundary_letter(&self, pos: usize) -> usize {
        let n = self.bottom.len();
        if pos < n {
            self.bottom.letters()[pos]
        } else {
            self.top.letters()[self.top.len() - 1 - (pos - n)]
        }
    }

    /// Label of an arc read in boundary order.
    pub fn arc_label(&self, arc: Arc) -> Word {
        Word::new(
            arc.positions(self.boundary_len())
                .map(|p| self.boundary_letter(p))
                .collect(),
        )
    }

    pub fn arcs(&self) -> &BTreeMap<String, Arc> {
        &self.arcs
    }

    pub fn arc(&self, name: &str) -> Result<Arc, DiagramError> {
        self.arcs
            .get(name)
            .copied()
            .ok_or_else(|| DiagramError::UnknownArc(name.to_string()))
    }

    pub fn set_arc(&mut self, name: impl Into<String>, arc: Arc) -> Result<(), DiagramError> {
        self.check_arc(arc)?;
        self.arcs.insert(name.into(), arc);
        Ok(())
    }

    fn check_arc(&self, arc: Arc) -> Result<(), DiagramError> {
        let total = self.boundary_len();
        if arc.start > total || arc.end > total || (arc.start == total && total > 0) {
            return Err(DiagramError::ArcHypothesis(format!(
                "arc {arc} lies outside a boundary of {total} edges"
            )));
        }
        Ok(())
    }

    pub fn curves_intersect(&self, a: usize, b: usize) -> bool {
        self.meets[a].contains(b)
    }

    /// The curve has an endpoint on the arc.
    pub fn curve_dual_to(&self, c: usize, arc: Arc) -> bool {
        let total = self.boundary_len();
        self.curves[c].endpoints.iter().any(|&e| arc.contains(e, total))
    }

    /// Offsets along `arc` of the curve's endpoints on it.
    pub fn curve_offsets(&self, c: usize, arc: Arc) -> Vec<usize> {
        let total = self.boundary_len();
        let mut o: Vec<usize> = self.curves[c]
            .endpoints
            .iter()
            .filter_map(|&e| arc.offset(e, total))
            .collect();
        o.sort_unstable();
        o
    }

    /// Both curves of the spoke are dual to the arc.
    pub fn spoke_meets_arc(&self, s: Spoke, arc: Arc) -> bool {
        self.curve_dual_to(s.h, arc) && self.curve_dual_to(s.k, arc)
    }

    /// The curve intersects both curves of the spoke.
    pub fn curve_meets_spoke(&self, q: usize, s: Spoke) -> bool {
        self.meets[q].contains(s.h) && self.meets[q].contains(s.k)
    }

    pub fn curve_meets_fence(&self, q: usize, f: &Fence) -> bool {
        f.spokes.iter().any(|&s| self.curve_meets_spoke(q, s))
    }

    pub fn from_json_value(value: Value) -> Result<Self, DiagramError> {
        let doc: DiagramDoc =
            serde_json::from_value(value).map_err(|e| DiagramError::Malformed(e.to_string()))?;
        let g = SimplicialGraph::from_json_value(doc.graph)?;
        let bottom = Word::parse(&g, &doc.bottom)?;
        let mut d = DiskDiagram::from_rewrite(&g, bottom, doc.events)?;
        for (name, arc) in doc.arcs {
            d.set_arc(name, arc)?;
        }
        Ok(d)
    }

    pub fn to_json(&self) -> Value {
        let doc = DiagramDoc {
            graph: self.graph.to_json(),
            bottom: self.bottom.display(&self.graph),
            events: self.events.clone(),
            arcs: self.arcs.clone(),
        };
        serde_json::to_value(doc).expect("diagram serializes")
    }

    /// Curves, crossings and spokes, for inspection.
    pub fn describe_json(&self) -> Value {
        json!({
            "top": self.top.display(&self.graph),
            "boundary_length": self.boundary_len(),
            "curves": self.curves.iter().map(|c| json!({
                "id": c.id,
                "type": self.graph.name(c.letter),
                "endpoints": c.endpoints,
                "capped": c.capped,
                "crossings": c.crossings,
            })).collect::<Vec<_>>(),
            "spokes": spokes(self).iter().map(|s| [s.h, s.k]).collect::<Vec<_>>(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramDoc {
    graph: Value,
    bottom: String,
    #[serde(default)]
    events: Vec<Event>,
    #[serde(default)]
    arcs: BTreeMap<String, Arc>,
}

pub fn diagram_from_rewrite(
    g: &SimplicialGraph,
    bottom: Word,
    events: Vec<Event>,
) -> Result<DiskDiagram, DiagramError> {
    DiskDiagram::from_rewrite(g, bottom, events)
}

pub fn dual_curves(d: &DiskDiagram) -> &[DualCurve] {
    d.curves()
}

pub fn curves_intersect(d: &DiskDiagram, a: usize, b: usize) -> bool {
    d.curves_intersect(a, b)
}

fn is_spoke_pair(d: &DiskDiagram, a: usize, b: usize) -> bool {
    let (la, lb) = (d.curves[a].letter, d.curves[b].letter);
    la != lb && !d.graph.adjacent(la, lb)
}

/// All spokes, ordered by curve ids (curve ids follow endpoint order).
pub fn spokes(d: &DiskDiagram) -> Vec<Spoke> {
    spokes_among(d, None)
}

fn spokes_among(d: &DiskDiagram, keep: Option<&FixedBitSet>) -> Vec<Spoke> {
    let n = d.curves.len();
    let kept = |c: usize| keep.is_none_or(|k| k.contains(c));
    let mut out = Vec::new();
    for a in (0..n).filter(|&a| kept(a)) {
        for b in (a + 1..n).filter(|&b| kept(b)) {
            if is_spoke_pair(d, a, b) {
                out.push(Spoke::new(a, b));
            }
        }
    }
    out
}

/// Spokes of a (sub)diagram with, per spoke, the curves intersecting it.
struct SpokeSystem {
    spokes: Vec<Spoke>,
    hits: Vec<FixedBitSet>,
}

impl SpokeSystem {
    fn new(d: &DiskDiagram, keep: Option<&FixedBitSet>) -> Self {
        let spokes = spokes_among(d, keep);
        let hits = spokes
            .iter()
            .map(|s| {
                let mut h = d.meets[s.h].clone();
                h.intersect_with(&d.meets[s.k]);
                if let Some(k) = keep {
                    h.intersect_with(k);
                }
                h
            })
            .collect();
        SpokeSystem { spokes, hits }
    }

    fn hit_of(&self, members: &[usize]) -> FixedBitSet {
        let mut h = FixedBitSet::new();
        for &i in members {
            h.union_with(&self.hits[i]);
        }
        h
    }

    /// Some spoke of one group has both curves intersecting the other.
    fn adjacent(&self, a: &[usize], hit_a: &FixedBitSet, b: &[usize], hit_b: &FixedBitSet) -> bool {
        let covered = |members: &[usize], hit: &FixedBitSet| {
            members.iter().any(|&i| {
                let s = self.spokes[i];
                hit.contains(s.h) && hit.contains(s.k)
            })
        };
        covered(a, hit_b) || covered(b, hit_a)
    }

    /// Spoke-index groups of the maximal fences at levels `0..=max_level`.
    fn levels(&self, max_level: u32) -> Vec<Vec<Vec<usize>>> {
        let mut levels = vec![(0..self.spokes.len()).map(|i| vec![i]).collect::<Vec<_>>()];
        for _ in 0..max_level {
            let prev = levels.last().expect("level 0 present");
            let hits: Vec<FixedBitSet> = prev.iter().map(|f| self.hit_of(f)).collect();
            let mut parent: Vec<usize> = (0..prev.len()).collect();
            for i in 0..prev.len() {
                for j in i + 1..prev.len() {
                    if find(&mut parent, i) != find(&mut parent, j)
                        && self.adjacent(&prev[i], &hits[i], &prev[j], &hits[j])
                    {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
            let mut merged: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (i, f) in prev.iter().enumerate() {
                merged.entry(find(&mut parent, i)).or_default().extend(f);
            }
            let mut next: Vec<Vec<usize>> = merged
                .into_values()
                .map(|mut f| {
                    f.sort_unstable();
                    f
                })
                .collect();
            next.sort();
            levels.push(next);
        }
        levels
    }

    fn fence(&self, level: u32, members: &[usize]) -> Fence {
        Fence::new(level, members.iter().map(|&i| self.spokes[i]).collect())
    }
}

/// Maximal fences at every level `0..=max_level`. Level 0 is the spokes
/// themselves; level `ℓ` joins the maximal `(ℓ-1)`-fences along connected
/// components of the adjacency relation.
pub fn fence_levels(d: &DiskDiagram, max_level: u32) -> Vec<Vec<Fence>> {
    fence_levels_within(d, None, max_level)
}

fn fence_levels_within(d: &DiskDiagram, keep: Option<&FixedBitSet>, max_level: u32) -> Vec<Vec<Fence>> {
    let system = SpokeSystem::new(d, keep);
    system
        .levels(max_level)
        .into_iter()
        .enumerate()
        .map(|(l, groups)| groups.iter().map(|g| system.fence(l as u32, g)).collect())
        .collect()
}

/// The maximal L-fences; every spoke lies in exactly one.
pub fn maximal_fences(d: &DiskDiagram, level: u32) -> Vec<Fence> {
    fence_levels(d, level).pop().unwrap_or_default()
}

/// Maximal L-fences connecting two arcs.
pub fn fences_connecting(d: &DiskDiagram, a: Arc, b: Arc, level: u32) -> Vec<Fence> {
    maximal_fences(d, level)
        .into_iter()
        .filter(|f| f.connects(d, a, b))
        .collect()
}

/// `realizable[U]` for every subset `U` of `spokes`: whether some L-fence has
/// exactly the spokes `U`. Straight from the inductive definition: `U` is an
/// L-fence iff a family of (L-1)-fences inside `U`, connected under the
/// adjacency relation, covers `U`.
fn realizable_sets(d: &DiskDiagram, spokes: &[Spoke], level: u32) -> Result<Vec<bool>, DiagramError> {
    let s = spokes.len();
    if s > FENCE_ORACLE_CAP {
        return Err(DiagramError::TooManySpokes {
            count: s,
            max: FENCE_ORACLE_CAP,
        });
    }
    let full = 1usize << s;
    let n = d.curves.len();
    let mut hit = vec![FixedBitSet::with_capacity(n); full];
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        let mut h = hit[mask & (mask - 1)].clone();
        let sp = spokes[low];
        for q in 0..n {
            if d.curve_meets_spoke(q, sp) {
                h.insert(q);
            }
        }
        hit[mask] = h;
    }
    // good[X]: spokes with both curves intersecting the fence X
    let good: Vec<usize> = hit
        .iter()
        .map(|h| {
            (0..s)
                .filter(|&j| h.contains(spokes[j].h) && h.contains(spokes[j].k))
                .fold(0, |acc, j| acc | 1 << j)
        })
        .collect();
    let mut real = vec![false; full];
    for j in 0..s {
        real[1 << j] = true;
    }
    for _ in 0..level {
        let mut next = vec![false; full];
        for u in 1..full {
            let mut nodes = Vec::new();
            let mut x = u;
            while x > 0 {
                if real[x] {
                    nodes.push(x);
                }
                x = (x - 1) & u;
            }
            let mut parent: Vec<usize> = (0..nodes.len()).collect();
            for i in 0..nodes.len() {
                for j in i + 1..nodes.len() {
                    let (a, b) = (nodes[i], nodes[j]);
                    if a & good[b] != 0 || b & good[a] != 0 {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        if ri != rj {
                            parent[ri.max(rj)] = ri.min(rj);
                        }
                    }
                }
            }
            let mut cover = vec![0usize; nodes.len()];
            for i in 0..nodes.len() {
                let r = find(&mut parent, i);
                cover[r] |= nodes[i];
            }
            next[u] = cover.contains(&u);
        }
        if next == real {
            break;
        }
        real = next;
    }
    Ok(real)
}

/// Exhaustive check that the spokes of `f` form an L-fence at `f.level`.
/// Exponential; at most [`FENCE_ORACLE_CAP`] spokes.
pub fn fence_validate(d: &DiskDiagram, f: &Fence) -> Result<bool, DiagramError> {
    if f.spokes.is_empty() {
        return Ok(false);
    }
    if f.spokes.iter().any(|s| !is_spoke_pair(d, s.h, s.k)) {
        return Ok(false);
    }
    let real = realizable_sets(d, &f.spokes, f.level)?;
    Ok(real[(1 << f.spokes.len()) - 1])
}

/// Maximal L-fences by exhaustive search: for each spoke, the union of all
/// L-fences containing it. Exponential; at most [`FENCE_ORACLE_CAP`] spokes.
pub fn exhaustive_maximal_fences(d: &DiskDiagram, level: u32) -> Result<Vec<Fence>, DiagramError> {
    let all = spokes(d);
    let real = realizable_sets(d, &all, level)?;
    let mut unions = vec![0usize; all.len()];
    for (mask, _) in real.iter().enumerate().filter(|(_, &r)| r) {
        for (j, u) in unions.iter_mut().enumerate() {
            if mask >> j & 1 == 1 {
                *u |= mask;
            }
        }
    }
    unions.sort_unstable();
    unions.dedup();
    let mut fences: Vec<Fence> = unions
        .into_iter()
        .map(|mask| {
            let members = (0..all.len()).filter(|j| mask >> j & 1 == 1).map(|j| all[j]).collect();
            Fence::new(level, members)
        })
        .collect();
    fences.sort();
    Ok(fences)
}

/// Whether the union of the given curves is connected, two curves touching
/// when they cross.
pub fn curves_connected(d: &DiskDiagram, curves: &[usize]) -> bool {
    let Some(&first) = curves.first() else {
        return true;
    };
    let mut inside = FixedBitSet::with_capacity(d.curves.len());
    curves.iter().for_each(|&c| inside.insert(c));
    let mut seen = FixedBitSet::with_capacity(d.curves.len());
    seen.insert(first);
    let mut stack = vec![first];
    while let Some(c) = stack.pop() {
        for o in d.meets[c].ones() {
            if inside.contains(o) && !seen.contains(o) {
                seen.insert(o);
                stack.push(o);
            }
        }
    }
    curves.iter().all(|&c| seen.contains(c))
}

/// Outcome of [`fence_type_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeCheck {
    pub vertices: VertexSet,
    pub strip: bool,
    pub index: HypergraphIndex,
    pub pass: bool,
}

impl TypeCheck {
    pub fn to_json(&self, g: &SimplicialGraph) -> Value {
        json!({
            "vertices": g.labels(self.vertices),
            "strip": self.strip,
            "index": self.index.to_json(),
            "verdict": if self.pass { "PASS" } else { "FAIL" },
        })
    }
}

/// The subgraph induced by `V(F)` and the types of `crossing` must be a strip
/// (bare pairs allowed) or have hypergraph index at most `F.level`.
pub fn fence_type_check(
    d: &DiskDiagram,
    f: &Fence,
    crossing: &[usize],
) -> Result<TypeCheck, DiagramError> {
    let mut vertices = f.types(d);
    for &q in crossing {
        if !d.curve_meets_fence(q, f) {
            return Err(DiagramError::CurveMissesFence(q));
        }
        vertices.insert(d.curves[q].letter);
    }
    let sub = d.graph.induced(vertices);
    let strip = is_strip_set_with(&sub, sub.vertices(), StripPolicy::AllowBarePairs);
    let index = hypergraph_index(&sub).index;
    let pass = strip || index.finite().is_some_and(|k| k <= f.level);
    Ok(TypeCheck {
        vertices,
        strip,
        index,
        pass,
    })
}

/// Every curve intersecting the fence.
pub fn crossing_curves(d: &DiskDiagram, f: &Fence) -> Vec<usize> {
    (0..d.curves.len()).filter(|&q| d.curve_meets_fence(q, f)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationCheck {
    /// Curves dual to both `η` and `η'`.
    pub transversals: Vec<usize>,
    /// Transversals missing every spoke of the fence.
    pub violators: Vec<usize>,
}

impl SeparationCheck {
    pub fn pass(&self) -> bool {
        self.violators.is_empty()
    }
}

/// For a boundary split into consecutive nonempty arcs `γ, η, γ', η'` and a
/// fence connecting `γ` and `γ'`: every curve dual to both `η` and `η'`
/// must intersect a spoke of the fence.
pub fn check_separation(
    d: &DiskDiagram,
    arcs: [Arc; 4],
    f: &Fence,
) -> Result<SeparationCheck, DiagramError> {
    let total = d.boundary_len();
    for &a in &arcs {
        d.check_arc(a)?;
    }
    if arcs.iter().any(|a| a.is_empty(total)) {
        return Err(DiagramError::ArcHypothesis("arcs must be nonempty".into()));
    }
    for i in 0..4 {
        if arcs[i].end_vertex(total) != arcs[(i + 1) % 4].start_vertex(total) {
            return Err(DiagramError::ArcHypothesis(format!(
                "arc {} does not end where arc {} starts",
                arcs[i],
                arcs[(i + 1) % 4]
            )));
        }
    }
    if arcs.iter().map(|a| a.len(total)).sum::<usize>() != total {
        return Err(DiagramError::ArcHypothesis("arcs must tile the boundary once".into()));
    }
    let [gamma, eta, gamma2, eta2] = arcs;
    if !f.connects(d, gamma, gamma2) {
        return Err(DiagramError::ArcHypothesis("fence does not connect the two paths".into()));
    }
    let transversals: Vec<usize> = (0..d.curves.len())
        .filter(|&c| d.curve_dual_to(c, eta) && d.curve_dual_to(c, eta2))
        .collect();
    let violators = transversals
        .iter()
        .copied()
        .filter(|&c| !d.curve_meets_fence(c, f))
        .collect();
    Ok(SeparationCheck {
        transversals,
        violators,
    })
}

/// One spoke of a structured sequence, located along the path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuredPair {
    pub first: usize,
    pub second: usize,
    /// Offsets of the two dual edges along the path.
    pub offsets: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredSequence {
    /// `(s, t)`: types of the first and second curve of every pair.
    pub types: Option<(usize, usize)>,
    pub pairs: Vec<StructuredPair>,
}

impl StructuredSequence {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// `⌈⌊len / M⌋ / M²⌉` with `M = |V(Γ)|`: the guaranteed number of pairs in a
/// tight structured sequence along a reduced path. Zero for a clique.
pub fn structured_lower_bound(g: &SimplicialGraph, len: usize) -> usize {
    let m = g.len();
    if m == 0 || g.is_clique(g.vertices()) {
        return 0;
    }
    (len / m).div_ceil(m * m)
}

/// Longest `p1 < q1 < p2 < q2 < …` with `label[p] = s`, `label[q] = t` and
/// `allowed(p, q)`, by earliest-end interval scheduling.
fn longest_chain(
    label: &[usize],
    s: usize,
    t: usize,
    allowed: impl Fn(usize, usize) -> bool,
) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut next_free = 0;
    for q in 0..label.len() {
        if label[q] != t {
            continue;
        }
        if let Some(p) = (next_free..q).find(|&p| label[p] == s && allowed(p, q)) {
            out.push((p, q));
            next_free = q + 1;
        }
    }
    out
}

fn best_over_type_pairs(
    d: &DiskDiagram,
    arc: Arc,
    allowed: impl Fn(usize, usize) -> bool,
) -> StructuredSequence {
    let g = &d.graph;
    let total = d.boundary_len();
    let label = d.arc_label(arc).0;
    let mut best = StructuredSequence {
        types: None,
        pairs: Vec::new(),
    };
    for s in 0..g.len() {
        for t in 0..g.len() {
            if s == t || g.adjacent(s, t) {
                continue;
            }
            let chain = longest_chain(&label, s, t, &allowed);
            if chain.len() > best.pairs.len() {
                best = StructuredSequence {
                    types: Some((s, t)),
                    pairs: chain
                        .into_iter()
                        .map(|(p, q)| StructuredPair {
                            first: d.curve_at(arc.at(p, total)),
                            second: d.curve_at(arc.at(q, total)),
                            offsets: (p, q),
                        })
                        .collect(),
                };
            }
        }
    }
    best
}

/// The longest tight structured sequence of spokes along a reduced arc: one
/// type pair `(s, t)`, pairs in order along the arc, each pair within a
/// subpath of at most `|V(Γ)|` edges.
pub fn structured_sequences(d: &DiskDiagram, arc: Arc) -> Result<StructuredSequence, DiagramError> {
    d.check_arc(arc)?;
    if !is_reduced(&d.graph, &d.arc_label(arc)) {
        return Err(DiagramError::NotReduced);
    }
    let m = d.graph.len();
    Ok(best_over_type_pairs(d, arc, |p, q| q - p < m))
}

/// Length of the longest structured sequence along `arc` avoiding
/// `candidates`; the candidate set is M-adequate exactly when this is at
/// most M.
pub fn adequacy_defect(d: &DiskDiagram, arc: Arc, candidates: &[Spoke]) -> Result<usize, DiagramError> {
    d.check_arc(arc)?;
    for &c in candidates {
        if !d.spoke_meets_arc(c, arc) {
            return Err(DiagramError::SpokeMissesPath((c.h, c.k)));
        }
    }
    let total = d.boundary_len();
    let excluded: std::collections::HashSet<Spoke> =
        candidates.iter().map(|s| Spoke::new(s.h, s.k)).collect();
    let curve = |o: usize| d.curve_at(arc.at(o, total));
    Ok(best_over_type_pairs(d, arc, |p, q| !excluded.contains(&Spoke::new(curve(p), curve(q)))).len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingPoint {
    /// Offset along `γ1` of the edge whose midpoint is the splitting point;
    /// `None` when it is the start of `γ1`.
    pub edge: Option<usize>,
    /// `γ1'`: edges of `γ1` before the split edge.
    pub initial: Arc,
    /// `γ1''`: edges of `γ1` after the split edge.
    pub terminal: Arc,
    /// The spokes on `γ1` in fences connecting `γ1` and `γ2`, ordered by the
    /// offset of their earlier curve.
    pub spokes: Vec<Spoke>,
}

/// The L-splitting point of `(γ1, γ2; γ, α)`.
///
/// The boundary must read `γ1, α', γ2, γ'` consecutively, where `α'` lies in
/// `α` and `γ'` lies in `γ`; `γ2` is given in boundary orientation (so it is
/// traversed from `α` back to `γ`). The subdiagram `D'` keeps the curves
/// whose endpoints all lie on these four arcs.
pub fn splitting_point(
    d: &DiskDiagram,
    gamma1: Arc,
    gamma2: Arc,
    gamma: Arc,
    alpha: Arc,
    level: u32,
) -> Result<SplittingPoint, DiagramError> {
    let total = d.boundary_len();
    for a in [gamma1, gamma2, gamma, alpha] {
        d.check_arc(a)?;
    }
    let bad = |msg: &str| Err(DiagramError::ArcHypothesis(msg.to_string()));
    if gamma1.is_empty(total) || gamma2.is_empty(total) {
        return bad("γ1 and γ2 must be nonempty");
    }
    let alpha_part = Arc::new(gamma1.end_vertex(total), gamma2.start_vertex(total));
    let gamma_part = Arc::new(gamma2.end_vertex(total), gamma1.start_vertex(total));
    if alpha_part.is_empty(total) || gamma_part.is_empty(total) {
        return bad("γ1 and γ2 must be disjoint");
    }
    if gamma1.shares_edge(gamma2, total) {
        return bad("γ1 and γ2 share an edge");
    }
    if !alpha_part.within(alpha, total) {
        return bad("the path from γ1 to γ2 must lie in α");
    }
    if !gamma_part.within(gamma, total) {
        return bad("the path from γ2 to γ1 must lie in γ");
    }
    for a in [gamma1, gamma2] {
        if a.shares_edge(gamma, total) || a.shares_edge(alpha, total) {
            return bad("γ1 and γ2 must meet γ and α in single vertices");
        }
    }
    if gamma1.len(total) + alpha_part.len(total) + gamma2.len(total) + gamma_part.len(total) != total {
        return bad("γ1, α', γ2, γ' must tile the boundary");
    }
    for a in [gamma1, gamma2] {
        if !is_reduced(&d.graph, &d.arc_label(a)) {
            return Err(DiagramError::NotReduced);
        }
    }

    let mut region = FixedBitSet::with_capacity(total);
    for a in [gamma1, alpha_part, gamma2, gamma_part] {
        a.positions(total).for_each(|p| region.insert(p));
    }
    let mut keep = FixedBitSet::with_capacity(d.curves.len());
    for c in &d.curves {
        if c.endpoints.iter().all(|&e| region.contains(e)) {
            keep.insert(c.id);
        }
    }
    let fences = fence_levels_within(d, Some(&keep), level)
        .pop()
        .unwrap_or_default();
    let first_offset = |s: Spoke| {
        let a = d.curve_offsets(s.h, gamma1)[0];
        let b = d.curve_offsets(s.k, gamma1)[0];
        a.min(b)
    };
    let mut r: Vec<Spoke> = fences
        .iter()
        .filter(|f| f.connects(d, gamma1, gamma2))
        .flat_map(|f| f.spokes.iter().copied())
        .filter(|&s| d.spoke_meets_arc(s, gamma1))
        .collect();
    r.sort_by_key(|&s| (first_offset(s), s));
    let edge = r.iter().map(|&s| first_offset(s)).max();
    let len = gamma1.len(total);
    let (initial, terminal) = match edge {
        Some(j) => (gamma1.sub(0, j, total), gamma1.sub(j + 1, len, total)),
        None => (gamma1.sub(0, 0, total), gamma1),
    };
    Ok(SplittingPoint {
        edge,
        initial,
        terminal,
        spokes: r,
    })
}

/// A seeded random diagram: a uniform random word of `word_len` letters,
/// then up to `event_count` events, each chosen uniformly among the legal
/// ones. Stops early when no event is legal.
pub fn random_diagram(g: &SimplicialGraph, word_len: usize, event_count: usize, seed: u64) -> DiskDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bottom: Vec<usize> = if g.is_empty() {
        Vec::new()
    } else {
        (0..word_len).map(|_| rng.gen_range(0..g.len())).collect()
    };
    let mut word = bottom.clone();
    let mut events = Vec::new();
    for _ in 0..event_count {
        let legal: Vec<Event> = word
            .windows(2)
            .enumerate()
            .filter_map(|(pos, w)| {
                if w[0] == w[1] {
                    Some(Event::Cancel { pos })
                } else if g.adjacent(w[0], w[1]) {
                    Some(Event::Swap { pos })
                } else {
                    None
                }
            })
            .collect();
        if legal.is_empty() {
            break;
        }
        let ev = legal[rng.gen_range(0..legal.len())];
        match ev {
            Event::Swap { pos } => word.swap(pos, pos + 1),
            Event::Cancel { pos } => {
                word.drain(pos..pos + 2);
            }
        }
        events.push(ev);
    }
    DiskDiagram::from_rewrite(g, Word::new(bottom), events).expect("generated events are legal")
}
