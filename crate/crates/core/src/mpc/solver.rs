use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::sparsify::SurvivorArray;

use super::levels::LevelStore;

/// End of a positive-flow list.
pub(super) const NIL: usize = usize::MAX;
/// `pos_prev` of an edge that is on no list.
pub(super) const UNLISTED: usize = usize::MAX - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Path ids through per-layer segments and antichain links.
    K2,
    /// Path ids from an explicitly maintained cover.
    K3,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s.to_ascii_lowercase().as_str() {
            "k2" => Ok(Variant::K2),
            "k3" => Ok(Variant::K3),
            _ => Err(Error::InvalidParameter(format!("unknown variant {s:?}, expected k2 or k3"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::K2 => "k2",
            Variant::K3 => "k3",
        })
    }
}

/// Work counters. A unit is one examined edge, one relabeled or refreshed
/// vertex, or one followed link; each step is counted once.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Charges {
    /// One per inserted vertex: its own flow edges, levels and bookkeeping.
    pub insertions: u64,
    /// In-neighbors examined (path id lookup included) plus survivor slots.
    pub sparsification: u64,
    /// Residual edges scanned by the layered search.
    pub search: u64,
    /// Existing flow vertices whose level was rewritten.
    pub level_updates: u64,
    /// In-edges examined by backward flow walks, plus antichain scans.
    pub decomposition: u64,
    /// Layers renumbered, antichain members rechecked and segments relinked.
    pub merge: u64,
    /// Antichain path ids recomputed plus extra links followed.
    pub refresh: u64,
}

impl Charges {
    pub fn total(&self) -> u64 {
        self.insertions
            + self.sparsification
            + self.search
            + self.level_updates
            + self.decomposition
            + self.merge
            + self.refresh
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepReport {
    pub found: bool,
    pub min_level: usize,
    pub size: u64,
    pub merged: bool,
}

#[derive(Debug, Clone, Copy)]
pub(super) enum Step {
    RevCross(usize),
    Cross(usize),
    Split,
    RevSplit,
}

/// Search state of one flow vertex, packed so a visit touches one line.
#[derive(Debug, Clone, Copy)]
struct Mark {
    disc: u64,
    popped: u64,
    pred: usize,
    step: Step,
}

#[derive(Debug, Clone, Copy)]
pub(super) struct Segment {
    pub entry: Option<usize>,
    pub own_id: usize,
}

enum InEdge {
    Source,
    Cross(usize),
}

/// Unordered set of small integers with O(1) insert, remove and lookup.
#[derive(Debug, Clone, Default)]
pub(super) struct IndexSet {
    pub items: Vec<usize>,
    pos: Vec<usize>,
}

impl IndexSet {
    pub fn contains(&self, x: usize) -> bool {
        self.pos.get(x).is_some_and(|&p| p != usize::MAX)
    }

    pub fn insert(&mut self, x: usize) {
        if x >= self.pos.len() {
            self.pos.resize(x + 1, usize::MAX);
        }
        if self.pos[x] == usize::MAX {
            self.pos[x] = self.items.len();
            self.items.push(x);
        }
    }

    pub fn remove(&mut self, x: usize) {
        if !self.contains(x) {
            return;
        }
        let p = self.pos[x];
        self.items.swap_remove(p);
        if let Some(&moved) = self.items.get(p) {
            self.pos[moved] = p;
        }
        self.pos[x] = usize::MAX;
    }
}

/// Per-insertion buffers, kept so insertions do not allocate.
#[derive(Default)]
struct Scratch {
    raw: Vec<usize>,
    ids: Vec<usize>,
    kept: Vec<usize>,
    old: Vec<usize>,
    upper: Vec<(usize, usize)>,
    leaving: Vec<usize>,
}

/// Incremental minimum-flow solver. Vertices are numbered in insertion
/// order; flow vertex `2v` is `v_in`, `2v + 1` is `v_out`.
pub struct Solver<L: LevelStore> {
    pub(super) variant: Variant,
    pub(super) audit: bool,
    pub(super) trace: Option<Vec<String>>,
    pub(super) charges: Charges,
    pub(super) trajectory: Vec<u64>,

    pub(super) n: usize,
    pub(super) raw_in: Vec<Vec<usize>>,
    // in-edges of v are the edge ids in_start[v]..in_start[v + 1]
    pub(super) in_start: Vec<usize>,
    pub(super) tail: Vec<usize>,
    pub(super) head: Vec<usize>,
    pub(super) cflow: Vec<u64>,
    // out-edges with positive flow, as an intrusive list per tail vertex
    pub(super) pos_first: Vec<usize>,
    pub(super) pos_next: Vec<usize>,
    pub(super) pos_prev: Vec<usize>,
    pub(super) split: Vec<u64>,
    pub(super) src: Vec<u64>,
    pub(super) sink: Vec<u64>,
    pub(super) size: u64,

    pub(super) levels: L,
    pub(super) cut_demand: Vec<u64>,
    pub(super) ends: IndexSet,
    pub(super) antichain: IndexSet,

    epoch: u64,
    marks: Vec<Mark>,
    queues: Vec<VecDeque<usize>>,
    popped: Vec<usize>,

    wepoch: u64,
    crem_stamp: Vec<u64>,
    crem: Vec<u64>,
    vstamp: Vec<u64>,
    srem: Vec<u64>,
    cursor: Vec<usize>,

    pub(super) paths: Vec<Vec<usize>>,
    pub(super) pid: Vec<usize>,
    pub(super) ppos: Vec<usize>,

    pub(super) segs: Vec<Segment>,
    // union-find over segments joined through vertices that left the antichain
    seg_parent: Vec<usize>,
    entry_of: Vec<Vec<usize>>,
    pub(super) seg: Vec<usize>,
    pub(super) cached: Vec<usize>,

    survivors: SurvivorArray,
    scratch: Scratch,
}

impl<L: LevelStore> Solver<L> {
    pub fn new(variant: Variant) -> Self {
        Solver {
            variant,
            audit: false,
            trace: None,
            charges: Charges::default(),
            trajectory: Vec::new(),
            n: 0,
            raw_in: Vec::new(),
            in_start: vec![0],
            tail: Vec::new(),
            head: Vec::new(),
            cflow: Vec::new(),
            pos_first: Vec::new(),
            pos_next: Vec::new(),
            pos_prev: Vec::new(),
            split: Vec::new(),
            src: Vec::new(),
            sink: Vec::new(),
            size: 0,
            levels: L::default(),
            cut_demand: Vec::new(),
            ends: IndexSet::default(),
            antichain: IndexSet::default(),
            epoch: 0,
            marks: Vec::new(),
            queues: Vec::new(),
            popped: Vec::new(),
            wepoch: 0,
            crem_stamp: Vec::new(),
            crem: Vec::new(),
            vstamp: Vec::new(),
            srem: Vec::new(),
            cursor: Vec::new(),
            paths: Vec::new(),
            pid: Vec::new(),
            ppos: Vec::new(),
            segs: Vec::new(),
            seg_parent: Vec::new(),
            entry_of: Vec::new(),
            seg: Vec::new(),
            cached: Vec::new(),
            survivors: SurvivorArray::default(),
            scratch: Scratch::default(),
        }
    }

    /// Reserves room for `n` vertices with `m` in-edges in total, so the
    /// per-vertex arrays never move while the solver runs.
    pub fn reserve(&mut self, n: usize, m: usize) {
        for v in [&mut self.in_start, &mut self.cursor, &mut self.pid, &mut self.ppos] {
            v.reserve(n);
        }
        for v in [&mut self.seg, &mut self.cached] {
            v.reserve(n);
        }
        for v in [&mut self.tail, &mut self.head] {
            v.reserve(m);
        }
        self.pos_next.reserve(m);
        self.pos_prev.reserve(m);
        for v in [&mut self.cflow, &mut self.crem, &mut self.crem_stamp] {
            v.reserve(m);
        }
        for v in [&mut self.split, &mut self.src, &mut self.sink, &mut self.trajectory, &mut self.vstamp, &mut self.srem] {
            v.reserve(n);
        }
        self.marks.reserve(2 * n);
        self.raw_in.reserve(n);
        self.pos_first.reserve(n);
        self.entry_of.reserve(n);
        self.levels.reserve(2 * n);
    }

    /// Checks every invariant after each insertion; failures surface as
    /// [`Error::Invariant`].
    pub fn with_audit(mut self, audit: bool) -> Self {
        self.audit = audit;
        self
    }

    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace.then(Vec::new);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn charges(&self) -> Charges {
        self.charges
    }

    /// `|f|` after each insertion.
    pub fn trajectory(&self) -> &[u64] {
        &self.trajectory
    }

    pub fn trace_lines(&self) -> &[String] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn cut_demand(&self) -> &[u64] {
        &self.cut_demand
    }

    pub fn level_pair(&mut self, v: usize) -> (usize, usize) {
        (self.levels.level(2 * v), self.levels.level(2 * v + 1))
    }

    /// Sparsified in-neighbors of `v`.
    pub fn kept_in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.tail[self.in_start[v]..self.in_start[v + 1]].iter().copied()
    }

    pub fn kept_edge_count(&self) -> usize {
        self.tail.len()
    }

    pub fn split_flow(&self, v: usize) -> u64 {
        self.split[v]
    }

    pub fn source_flow(&self, v: usize) -> u64 {
        self.src[v]
    }

    pub fn sink_flow(&self, v: usize) -> u64 {
        self.sink[v]
    }

    /// Flow on the kept edge `(u, v)`, where `u` is the `j`-th kept
    /// in-neighbor of `v`.
    pub fn cross_flow(&self, v: usize, j: usize) -> u64 {
        self.cflow[self.in_start[v] + j]
    }

    /// Decomposes the current flow into paths of input ids, with the
    /// tie-breaks of [`crate::FlowNetwork::decompose`]: paths start in input-id
    /// order, and each step takes the sink edge first, then the positive
    /// out-edge whose head has the smallest input id.
    pub fn decompose(&self, order: &[usize]) -> Vec<Vec<usize>> {
        let mut sink = self.sink.clone();
        let mut rest = self.cflow.clone();
        let mut starts: Vec<usize> = (0..self.n).filter(|&u| self.src[u] > 0).collect();
        starts.sort_unstable_by_key(|&u| order[u]);
        let mut paths = Vec::with_capacity(self.size as usize);
        for u in starts {
            for _ in 0..self.src[u] {
                let mut path = vec![order[u]];
                let mut v = u;
                while sink[v] == 0 {
                    let mut best = NIL;
                    let mut e = self.pos_first[v];
                    while e != NIL {
                        if rest[e] > 0 && (best == NIL || order[self.head[e]] < order[self.head[best]]) {
                            best = e;
                        }
                        e = self.pos_next[e];
                    }
                    rest[best] -= 1;
                    v = self.head[best];
                    path.push(order[v]);
                }
                sink[v] -= 1;
                paths.push(path);
            }
        }
        paths
    }

    /// Maintained cover of the explicit variant.
    pub fn cover_paths(&self) -> Option<&[Vec<usize>]> {
        (self.variant == Variant::K3).then_some(&self.paths[..])
    }

    /// Id in `0..|f|` of some path of a minimum cover containing `u`.
    pub fn path_id(&mut self, u: usize) -> usize {
        match self.variant {
            Variant::K3 => self.pid[u],
            Variant::K2 => {
                if self.antichain.contains(u) {
                    self.cached[u]
                } else {
                    let s = self.seg[u];
                    self.resolve(s)
                }
            }
        }
    }

    fn find_seg(&mut self, mut s: usize) -> usize {
        // amortized constant, part of whatever lookup triggered it
        while self.seg_parent[s] != s {
            let up = self.seg_parent[self.seg_parent[s]];
            self.seg_parent[s] = up;
            s = up;
        }
        s
    }

    fn new_seg(&mut self) -> usize {
        let s = self.segs.len();
        self.segs.push(Segment { entry: None, own_id: 0 });
        self.seg_parent.push(s);
        s
    }

    fn in_len(&self, v: usize) -> usize {
        self.in_start[v + 1] - self.in_start[v]
    }

    /// `(tail, edge id)` of the `j`-th kept in-edge of `v`.
    fn in_edge(&self, v: usize, j: usize) -> (usize, usize) {
        let e = self.in_start[v] + j;
        (self.tail[e], e)
    }

    fn set_entry(&mut self, s: usize, u: usize) {
        self.segs[s].entry = Some(u);
        self.entry_of[u].push(s);
    }

    fn resolve(&mut self, mut s: usize) -> usize {
        loop {
            s = self.find_seg(s);
            match self.segs[s].entry {
                None => return self.segs[s].own_id,
                Some(u) if self.antichain.contains(u) => return self.cached[u],
                Some(u) => {
                    self.charges.refresh += 1;
                    s = self.seg[u];
                }
            }
        }
    }

    /// Inserts the next vertex with the given in-neighbors, all of which
    /// must be inserted already.
    pub fn insert_vertex(&mut self, in_neighbors: &[usize]) -> Result<StepReport> {
        let v = self.n;
        let mut raw = std::mem::take(&mut self.scratch.raw);
        raw.clear();
        raw.extend_from_slice(in_neighbors);
        raw.sort_unstable();
        raw.dedup();
        if let Some(&u) = raw.iter().find(|&&u| u >= v) {
            return Err(Error::OrderViolation { vertex: v, neighbor: u });
        }

        let mut kept = std::mem::take(&mut self.scratch.kept);
        self.sparsify(&raw, &mut kept)?;
        self.add_vertex(v, &raw, &kept);
        self.scratch.raw = raw;
        self.scratch.kept = kept;

        let old_ends: Vec<(usize, usize)> = if self.audit {
            self.ends.items.clone().into_iter().map(|u| (u, self.levels.level(2 * u + 1))).collect()
        } else {
            Vec::new()
        };

        let (found, last) = self.layered_search(v);
        let l = if found.is_some() { last } else { 0 };
        if self.audit && found.is_none() && !self.popped.is_empty() && last != 0 {
            return Err(Error::Invariant(format!(
                "insertion {v}: failed search ended at level {last}"
            )));
        }

        if let Some(y) = found {
            self.augment(v, y);
        }
        self.update_levels(v, l);
        if l == self.cut_demand.len() {
            self.cut_demand.push(1);
        } else {
            self.cut_demand[l] += 1;
        }

        let merged = l >= 1 && self.cut_demand[l] == self.cut_demand[l - 1];
        if merged || self.variant == Variant::K2 {
            self.scan_antichain(l);
        }
        match self.variant {
            Variant::K3 => self.rebuild_cover(v, l, found.is_some())?,
            Variant::K2 => self.maintain_links(l)?,
        }

        // audits resolve path ids, which must not show up in the counters
        let charges = self.charges;
        if self.audit {
            self.audit_pre_merge(v, found, &old_ends)?;
        }

        if merged {
            self.merge(l);
        }

        self.trajectory.push(self.size);
        if let Some(trace) = &mut self.trace {
            trace.push(format!(
                "i={v} found={} l={l} |f|={} merge={merged}",
                found.is_some(),
                self.size
            ));
        }
        if self.audit {
            self.audit_full()?;
            self.charges = Charges {
                merge: self.charges.merge,
                ..charges
            };
        }
        Ok(StepReport {
            found: found.is_some(),
            min_level: l,
            size: self.size,
            merged,
        })
    }

    /// Fills `kept` with the surviving in-neighbors of the next vertex, sorted.
    fn sparsify(&mut self, raw: &[usize], kept: &mut Vec<usize>) -> Result<()> {
        let t = self.size as usize;
        self.charges.sparsification += (raw.len() + t) as u64;
        kept.clear();
        if raw.is_empty() {
            return Ok(());
        }
        let mut ids = std::mem::take(&mut self.scratch.ids);
        ids.clear();
        for &u in raw {
            let id = self.path_id(u);
            ids.push(id);
        }
        // vertices arrive in topological order, so the id is the position
        let keyed = ids.iter().copied().zip(raw.iter().copied());
        let r = self.survivors.sparsify_keyed(keyed, |u| u, t, kept);
        self.scratch.ids = ids;
        r?;
        kept.sort_unstable();
        Ok(())
    }

    fn add_vertex(&mut self, v: usize, raw: &[usize], kept: &[usize]) {
        for &u in kept {
            self.tail.push(u);
            self.head.push(v);
            self.cflow.push(0);
            self.pos_next.push(NIL);
            self.pos_prev.push(UNLISTED);
            self.crem_stamp.push(0);
            self.crem.push(0);
        }
        self.in_start.push(self.tail.len());
        self.raw_in.push(if self.audit { raw.to_vec() } else { Vec::new() });
        self.pos_first.push(NIL);
        // tentative flow: one new unit through v alone
        self.split.push(1);
        self.src.push(1);
        self.sink.push(1);
        self.size += 1;
        let mark = Mark {
            disc: 0,
            popped: 0,
            pred: 0,
            step: Step::Split,
        };
        self.marks.extend([mark, mark]);
        self.vstamp.push(0);
        self.srem.push(0);
        self.cursor.push(0);
        self.pid.push(0);
        self.ppos.push(0);
        self.seg.push(0);
        self.cached.push(0);
        self.entry_of.push(Vec::new());
        self.n += 1;
    }

    /// Searches for a decrementing path from `v_in`, highest layer first.
    /// Returns the end vertex reached, if any, and the level of the last
    /// vertex popped.
    fn layered_search(&mut self, v: usize) -> (Option<usize>, usize) {
        self.epoch += 1;
        self.popped.clear();
        let vin = 2 * v;
        self.marks[vin].disc = self.epoch;
        let mut top = 0;
        for j in 0..self.in_len(v) {
            let (u, e) = self.in_edge(v, j);
            top = top.max(self.discover(2 * u + 1, vin, Step::RevCross(e)));
        }
        let mut found = None;
        let mut last = 0;
        loop {
            while top > 0 && self.queues[top].is_empty() {
                top -= 1;
            }
            let Some(x) = self.queues.get_mut(top).and_then(VecDeque::pop_front) else {
                break;
            };
            self.popped.push(x);
            self.marks[x].popped = self.epoch;
            last = top;
            let y = x / 2;
            if x % 2 == 0 {
                for j in 0..self.in_len(y) {
                    let (w, e) = self.in_edge(y, j);
                    self.discover(2 * w + 1, x, Step::RevCross(e));
                }
                if self.split[y] > 1 {
                    self.discover(x + 1, x, Step::Split);
                }
            } else {
                self.charges.search += 1;
                if self.sink[y] > 0 {
                    found = Some(y);
                    break;
                }
                self.discover(x - 1, x, Step::RevSplit);
                let mut e = self.pos_first[y];
                while e != NIL {
                    self.discover(2 * self.head[e], x, Step::Cross(e));
                    e = self.pos_next[e];
                }
            }
        }
        for q in &mut self.queues {
            q.clear();
        }
        (found, last)
    }

    fn discover(&mut self, y: usize, from: usize, step: Step) -> usize {
        self.charges.search += 1;
        let l = self.levels.level(y);
        let mark = &mut self.marks[y];
        if mark.disc != self.epoch {
            *mark = Mark {
                disc: self.epoch,
                popped: mark.popped,
                pred: from,
                step,
            };
            if self.queues.len() <= l {
                self.queues.resize_with(l + 1, VecDeque::new);
            }
            self.queues[l].push_back(y);
        }
        l
    }

    fn add_cross(&mut self, e: usize, up: bool) {
        let u = self.tail[e];
        if up {
            self.cflow[e] += 1;
            if self.cflow[e] == 1 {
                let first = self.pos_first[u];
                if first != NIL {
                    self.pos_prev[first] = e;
                }
                self.pos_next[e] = first;
                self.pos_prev[e] = NIL;
                self.pos_first[u] = e;
            }
        } else {
            self.cflow[e] -= 1;
            if self.cflow[e] == 0 {
                let (prev, next) = (self.pos_prev[e], self.pos_next[e]);
                if prev == NIL {
                    self.pos_first[u] = next;
                } else {
                    self.pos_next[prev] = next;
                }
                if next != NIL {
                    self.pos_prev[next] = prev;
                }
                self.pos_prev[e] = UNLISTED;
            }
        }
    }

    /// Pushes one unit back along the decrementing path ending at `y_out`.
    fn augment(&mut self, v: usize, y: usize) {
        self.sink[y] -= 1;
        self.ends.remove(y);
        let vin = 2 * v;
        let mut x = 2 * y + 1;
        while x != vin {
            let Mark { pred: p, step, .. } = self.marks[x];
            match step {
                Step::RevCross(e) => self.add_cross(e, true),
                Step::Cross(e) => self.add_cross(e, false),
                Step::Split => self.split[x / 2] -= 1,
                Step::RevSplit => self.split[x / 2] += 1,
            }
            x = p;
        }
        self.src[v] -= 1;
        self.size -= 1;
    }

    fn update_levels(&mut self, v: usize, l: usize) {
        let popped = std::mem::take(&mut self.popped);
        let mut old = std::mem::take(&mut self.scratch.old);
        old.clear();
        for &x in &popped {
            let level = self.levels.level(x);
            old.push(level);
        }
        for &x in &popped {
            self.levels.set(x, l);
        }
        self.levels.set(2 * v, l);
        self.levels.set(2 * v + 1, l + 1);
        self.charges.level_updates += popped.len() as u64;
        self.charges.insertions += 1;

        if self.variant == Variant::K2 {
            // z_in dropped but z_out stayed: the rest of z's old segment
            // now starts at z
            for (i, &x) in popped.iter().enumerate() {
                if x % 2 == 0 && self.marks[x + 1].popped != self.epoch {
                    let z = x / 2;
                    let out = self.levels.level(x + 1);
                    if old[i] == out && out > l {
                        let s = self.find_seg(self.seg[z]);
                        self.set_entry(s, z);
                    }
                }
            }
        }

        for &x in &popped {
            self.refresh_antichain(x / 2);
        }
        self.refresh_antichain(v);
        self.ends.insert(v);
        self.popped = popped;
        self.scratch.old = old;
    }

    fn refresh_antichain(&mut self, y: usize) {
        if self.levels.level(2 * y) < self.levels.level(2 * y + 1) {
            self.antichain.insert(y);
        } else {
            self.antichain.remove(y);
        }
    }

    /// Collects antichain vertices with in-level `>= l`, sorted by in-level,
    /// and those a merge of layer `l` would take out of the antichain.
    fn scan_antichain(&mut self, l: usize) {
        let mut upper = std::mem::take(&mut self.scratch.upper);
        let mut leaving = std::mem::take(&mut self.scratch.leaving);
        upper.clear();
        leaving.clear();
        self.charges.decomposition += self.antichain.items.len() as u64;
        for i in 0..self.antichain.items.len() {
            let u = self.antichain.items[i];
            let (lin, lout) = (self.levels.level(2 * u), self.levels.level(2 * u + 1));
            if lin >= l {
                upper.push((lin, u));
            } else if lin + 1 == l && lout == l {
                leaving.push(u);
            }
        }
        upper.sort_unstable();
        self.scratch.upper = upper;
        self.scratch.leaving = leaving;
    }

    fn merge(&mut self, l: usize) {
        let leaving = std::mem::take(&mut self.scratch.leaving);
        self.cut_demand.remove(l);
        self.charges.merge += self.levels.merge(l) as u64 + leaving.len() as u64;
        for &y in &leaving {
            self.refresh_antichain(y);
            if self.variant == Variant::K2 && !self.antichain.contains(y) {
                // segments entering through y now continue y's own segment
                for s in std::mem::take(&mut self.entry_of[y]) {
                    self.charges.merge += 1;
                    if self.seg_parent[s] == s && self.segs[s].entry == Some(y) {
                        self.seg_parent[s] = self.find_seg(self.seg[y]);
                    }
                }
            }
        }
        self.scratch.leaving = leaving;
    }

    /// Takes one unit of not yet consumed flow on an in-edge of `y_in`,
    /// preferring the source edge, then kept in-edges in order.
    fn take_in_edge(&mut self, y: usize) -> Option<InEdge> {
        if self.vstamp[y] != self.wepoch {
            self.vstamp[y] = self.wepoch;
            self.srem[y] = self.src[y];
            self.cursor[y] = 0;
        }
        if self.srem[y] > 0 {
            self.charges.decomposition += 1;
            self.srem[y] -= 1;
            return Some(InEdge::Source);
        }
        while self.cursor[y] < self.in_len(y) {
            self.charges.decomposition += 1;
            let (u, e) = self.in_edge(y, self.cursor[y]);
            if self.crem_stamp[e] != self.wepoch {
                self.crem_stamp[e] = self.wepoch;
                self.crem[e] = self.cflow[e];
            }
            if self.crem[e] > 0 {
                self.crem[e] -= 1;
                return Some(InEdge::Cross(u));
            }
            self.cursor[y] += 1;
        }
        None
    }

    /// Re-decomposes the flow above level `l - 1` and rejoins it to the
    /// untouched path prefixes.
    fn rebuild_cover(&mut self, v: usize, l: usize, found: bool) -> Result<()> {
        if !found {
            self.pid[v] = self.paths.len();
            self.ppos[v] = 0;
            self.paths.push(vec![v]);
            return Ok(());
        }
        self.wepoch += 1;
        let mut walks = Vec::new();
        for e in self.ends.items.clone() {
            if self.levels.level(2 * e + 1) < l {
                continue;
            }
            let mut suffix = Vec::new();
            let mut cur = e;
            let boundary = loop {
                if self.levels.level(2 * cur) < l {
                    break Some(cur);
                }
                suffix.push(cur);
                match self.take_in_edge(cur) {
                    Some(InEdge::Source) => break None,
                    Some(InEdge::Cross(u)) => cur = u,
                    None => return Err(Error::Invariant(format!("flow into {cur} exhausted"))),
                }
            };
            suffix.reverse();
            walks.push((boundary, suffix));
        }
        if l == 0 {
            self.paths.clear();
            for (boundary, path) in walks {
                if boundary.is_some() {
                    return Err(Error::Invariant("boundary below level 0".into()));
                }
                for (i, &y) in path.iter().enumerate() {
                    self.pid[y] = self.paths.len();
                    self.ppos[y] = i;
                }
                self.paths.push(path);
            }
            return Ok(());
        }
        for (boundary, suffix) in walks {
            let a = boundary.ok_or_else(|| Error::Invariant(format!("source flow above level {l}")))?;
            let p = self.pid[a];
            let path = &mut self.paths[p];
            path.truncate(self.ppos[a] + 1);
            for y in suffix {
                self.pid[y] = p;
                self.ppos[y] = path.len();
                path.push(y);
            }
        }
        Ok(())
    }

    /// Re-decomposes layer `l` into segments and refreshes the cached path
    /// ids of antichain vertices from layer `l` upward.
    fn maintain_links(&mut self, l: usize) -> Result<()> {
        let by_level = std::mem::take(&mut self.scratch.upper);
        self.wepoch += 1;

        let mut own = 0;
        for &(lin, w) in &by_level {
            if lin != l {
                break;
            }
            let s = self.new_seg();
            let mut cur = w;
            loop {
                self.seg[cur] = s;
                match self.take_in_edge(cur) {
                    Some(InEdge::Source) => {
                        if l != 0 {
                            return Err(Error::Invariant(format!("source flow into layer {l}")));
                        }
                        self.segs[s].own_id = own;
                        own += 1;
                        break;
                    }
                    Some(InEdge::Cross(u)) => {
                        if self.levels.level(2 * u) < l {
                            self.set_entry(s, u);
                            break;
                        }
                        cur = u;
                    }
                    None => return Err(Error::Invariant(format!("flow into {cur} exhausted"))),
                }
            }
        }

        for &(_, u) in &by_level {
            self.charges.refresh += 1;
            let s = self.seg[u];
            self.cached[u] = self.resolve(s);
        }
        self.scratch.upper = by_level;
        Ok(())
    }
}
