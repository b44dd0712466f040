//! The minimum-flow reduction of a DAG and conversions between flows and
//! path covers.
//!
//! Every vertex `v` is split into `v_in -> v_out` with demand one; a source
//! feeds every `v_in` and every `v_out` drains into the sink. Edges are
//! numbered canonically: split edges first, then source edges, sink edges and
//! finally one cross edge per DAG edge in [`Dag::edges`] order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dag::{Dag, PathCover, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlowVertex {
    Source,
    Sink,
    In(VertexId),
    Out(VertexId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Split(VertexId),
    SourceIn(VertexId),
    OutSink(VertexId),
    Cross(VertexId, VertexId),
}

impl EdgeKind {
    pub fn tail(self) -> FlowVertex {
        match self {
            EdgeKind::Split(v) => FlowVertex::In(v),
            EdgeKind::SourceIn(_) => FlowVertex::Source,
            EdgeKind::OutSink(v) => FlowVertex::Out(v),
            EdgeKind::Cross(u, _) => FlowVertex::Out(u),
        }
    }

    pub fn head(self) -> FlowVertex {
        match self {
            EdgeKind::Split(v) => FlowVertex::Out(v),
            EdgeKind::SourceIn(v) => FlowVertex::In(v),
            EdgeKind::OutSink(_) => FlowVertex::Sink,
            EdgeKind::Cross(_, v) => FlowVertex::In(v),
        }
    }

    pub fn demand(self) -> u64 {
        match self {
            EdgeKind::Split(_) => 1,
            _ => 0,
        }
    }
}

/// The flow reduction of a DAG.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    base: Dag,
    cross: Vec<(VertexId, VertexId)>,
    // cross edge indices grouped by head, laid out like `in_neighbors`;
    // grouped by tail they are the ranges `base.out_range(v)`
    cross_in: Vec<usize>,
}

/// Integral flow, one value per canonical edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub values: Vec<u64>,
}

impl FlowNetwork {
    pub fn reduce(dag: &Dag) -> FlowNetwork {
        FlowNetwork::from_dag(dag.clone())
    }

    /// Same as [`FlowNetwork::reduce`], taking ownership of the graph.
    pub fn from_dag(dag: Dag) -> FlowNetwork {
        let n = dag.n();
        let cross: Vec<_> = dag.edges().collect();
        let mut fill: Vec<usize> = (0..n).map(|v| dag.in_range(v).start).collect();
        let mut cross_in = vec![0; cross.len()];
        for (j, &(_, v)) in cross.iter().enumerate() {
            cross_in[fill[v]] = j;
            fill[v] += 1;
        }
        FlowNetwork {
            base: dag,
            cross,
            cross_in,
        }
    }

    pub fn base(&self) -> &Dag {
        &self.base
    }

    pub fn into_base(self) -> Dag {
        self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n() + 2
    }

    pub fn edge_count(&self) -> usize {
        3 * self.n() + self.cross.len()
    }

    pub fn split(&self, v: VertexId) -> usize {
        v
    }

    pub fn source_in(&self, v: VertexId) -> usize {
        self.n() + v
    }

    pub fn out_sink(&self, v: VertexId) -> usize {
        2 * self.n() + v
    }

    pub fn cross_id(&self, j: usize) -> usize {
        3 * self.n() + j
    }

    /// Canonical id of the cross edge for DAG edge `(u, v)`.
    pub fn find_cross(&self, u: VertexId, v: VertexId) -> Option<usize> {
        if u >= self.n() {
            return None;
        }
        let range = self.base.out_range(u);
        let i = self.base.out_neighbors(u).binary_search(&v).ok()?;
        Some(self.cross_id(range.start + i))
    }

    pub fn kind(&self, e: usize) -> EdgeKind {
        let n = self.n();
        if e < n {
            EdgeKind::Split(e)
        } else if e < 2 * n {
            EdgeKind::SourceIn(e - n)
        } else if e < 3 * n {
            EdgeKind::OutSink(e - 2 * n)
        } else {
            let (u, v) = self.cross[e - 3 * n];
            EdgeKind::Cross(u, v)
        }
    }

    /// Canonical ids of the edges leaving `x`, in increasing order.
    pub fn out_edges(&self, x: FlowVertex) -> Vec<usize> {
        match x {
            FlowVertex::Source => (0..self.n()).map(|v| self.source_in(v)).collect(),
            FlowVertex::Sink => Vec::new(),
            FlowVertex::In(v) => vec![self.split(v)],
            FlowVertex::Out(v) => {
                let mut out: Vec<usize> = self.base.out_range(v).map(|j| self.cross_id(j)).collect();
                out.insert(0, self.out_sink(v));
                out
            }
        }
    }

    /// Canonical ids of the edges entering `x`, in increasing order.
    pub fn in_edges(&self, x: FlowVertex) -> Vec<usize> {
        match x {
            FlowVertex::Source => Vec::new(),
            FlowVertex::Sink => (0..self.n()).map(|v| self.out_sink(v)).collect(),
            FlowVertex::In(v) => {
                let mut ins: Vec<usize> = self.cross_in[self.base.in_range(v)].iter().map(|&j| self.cross_id(j)).collect();
                ins.insert(0, self.source_in(v));
                ins
            }
            FlowVertex::Out(v) => vec![self.split(v)],
        }
    }

    pub fn zero_flow(&self) -> Flow {
        Flow {
            values: vec![0; self.edge_count()],
        }
    }

    /// Flow induced by a path cover: one unit along `s, v_in, v_out, ..., t`
    /// for every path.
    pub fn flow_from_cover(&self, cover: &PathCover) -> Result<Flow> {
        cover.check(&self.base)?;
        let mut flow = self.zero_flow();
        for path in &cover.paths {
            flow.values[self.source_in(path[0])] += 1;
            for (i, &v) in path.iter().enumerate() {
                flow.values[self.split(v)] += 1;
                if let Some(&w) = path.get(i + 1) {
                    let e = self.find_cross(v, w).expect("checked edge");
                    flow.values[e] += 1;
                }
            }
            flow.values[self.out_sink(*path.last().unwrap())] += 1;
        }
        Ok(flow)
    }

    /// Net flow out of the source.
    pub fn size(&self, f: &Flow) -> u64 {
        (0..self.n()).map(|v| f.values[self.source_in(v)]).sum()
    }

    /// Decomposes `f` into `|f|` paths. Each search follows the lowest-id
    /// positive out-edge; per-vertex cursors keep the total work linear in
    /// the output length plus the edge count.
    pub fn decompose(&self, f: &Flow) -> Result<PathCover> {
        let violations = self.basic_violations(f);
        if let Some(first) = violations.into_iter().next() {
            return Err(Error::InvalidFlow(first));
        }
        let n = self.n();
        let mut rest = f.values.clone();
        let mut cursor = vec![0usize; n];
        let mut paths = Vec::new();
        for start in 0..n {
            while rest[self.source_in(start)] > 0 {
                rest[self.source_in(start)] -= 1;
                let mut path = Vec::new();
                let mut v = start;
                loop {
                    path.push(v);
                    rest[self.split(v)] -= 1;
                    if rest[self.out_sink(v)] > 0 {
                        // sink edge has the lowest id among out-edges
                        rest[self.out_sink(v)] -= 1;
                        break;
                    }
                    let list = self.base.out_range(v);
                    while cursor[v] < list.len() && rest[self.cross_id(list.start + cursor[v])] == 0 {
                        cursor[v] += 1;
                    }
                    let j = list.start + cursor[v];
                    rest[self.cross_id(j)] -= 1;
                    v = self.cross[j].1;
                }
                paths.push(path);
            }
        }
        Ok(PathCover::new(paths))
    }

    /// Out-neighbors of `x` in the residual network of `f`: the reverse of
    /// every edge entering `x`, plus every edge leaving `x` whose flow exceeds
    /// its demand.
    pub fn residual_out(&self, f: &Flow, x: FlowVertex) -> Vec<FlowVertex> {
        let mut out: Vec<FlowVertex> = self.in_edges(x).into_iter().map(|e| self.kind(e).tail()).collect();
        for e in self.out_edges(x) {
            let kind = self.kind(e);
            if f.values[e] > kind.demand() {
                out.push(kind.head());
            }
        }
        out
    }

    /// Source-reachable part of the residual network, as a membership test
    /// closure over flow vertices. Used for antichain extraction and for
    /// minimality checks.
    pub fn residual_reachable(&self, f: &Flow) -> ResidualCut {
        let n = self.n();
        let mut reached_in = vec![false; n];
        let mut reached_out = vec![false; n];
        let mut sink = false;
        let mut stack: Vec<FlowVertex> = Vec::new();
        for v in 0..n {
            if f.values[self.source_in(v)] > 0 {
                reached_in[v] = true;
                stack.push(FlowVertex::In(v));
            }
        }
        while let Some(x) = stack.pop() {
            for y in self.residual_out(f, x) {
                let seen = match y {
                    FlowVertex::Source => true,
                    FlowVertex::Sink => std::mem::replace(&mut sink, true),
                    FlowVertex::In(v) => std::mem::replace(&mut reached_in[v], true),
                    FlowVertex::Out(v) => std::mem::replace(&mut reached_out[v], true),
                };
                if !seen && y != FlowVertex::Sink {
                    stack.push(y);
                }
            }
        }
        ResidualCut {
            reached_in,
            reached_out,
            sink,
        }
    }

    /// Every demand or conservation violation of `f`, plus a size mismatch
    /// against `f(S)` on ten random cuts.
    pub fn check_flow(&self, f: &Flow) -> Vec<String> {
        let mut problems = self.basic_violations(f);
        if !problems.is_empty() || f.values.len() != self.edge_count() {
            return problems;
        }
        let size = self.size(f) as i128;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for round in 0..10 {
            let in_s: Vec<(bool, bool)> = (0..self.n()).map(|_| (rng.gen(), rng.gen())).collect();
            let side = |x: FlowVertex| match x {
                FlowVertex::Source => true,
                FlowVertex::Sink => false,
                FlowVertex::In(v) => in_s[v].0,
                FlowVertex::Out(v) => in_s[v].1,
            };
            let cut_value = self.cut_flow(f, side);
            if cut_value != size {
                problems.push(format!("cut {round}: f(S) = {cut_value} but |f| = {size}"));
            }
        }
        problems
    }

    /// `f(S)`: flow leaving `S` minus flow entering it.
    pub fn cut_flow(&self, f: &Flow, in_s: impl Fn(FlowVertex) -> bool) -> i128 {
        let mut total = 0i128;
        for e in 0..self.edge_count() {
            let kind = self.kind(e);
            match (in_s(kind.tail()), in_s(kind.head())) {
                (true, false) => total += f.values[e] as i128,
                (false, true) => total -= f.values[e] as i128,
                _ => {}
            }
        }
        total
    }

    /// Total demand of edges leaving `S`, or `None` when some edge enters `S`
    /// (the cut is not one-way).
    pub fn ow_cut_demand(&self, in_s: impl Fn(FlowVertex) -> bool) -> Option<u64> {
        let mut demand = 0;
        for e in 0..self.edge_count() {
            let kind = self.kind(e);
            match (in_s(kind.tail()), in_s(kind.head())) {
                (true, false) => demand += kind.demand(),
                (false, true) => return None,
                _ => {}
            }
        }
        Some(demand)
    }

    fn basic_violations(&self, f: &Flow) -> Vec<String> {
        let n = self.n();
        if f.values.len() != self.edge_count() {
            return vec![format!(
                "flow has {} values, network has {} edges",
                f.values.len(),
                self.edge_count()
            )];
        }
        let mut problems = Vec::new();
        for v in 0..n {
            if f.values[self.split(v)] < 1 {
                problems.push(format!("demand violated on split {v}"));
            }
        }
        let cross = |j: usize| f.values[self.cross_id(j)];
        for v in 0..n {
            let split = f.values[self.split(v)];
            let into_in = f.values[self.source_in(v)]
                + self.cross_in[self.base.in_range(v)].iter().map(|&j| cross(j)).sum::<u64>();
            let out_of_out = f.values[self.out_sink(v)] + self.base.out_range(v).map(cross).sum::<u64>();
            for (x, inflow, outflow) in [(FlowVertex::In(v), into_in, split), (FlowVertex::Out(v), split, out_of_out)] {
                if inflow != outflow {
                    problems.push(format!("conservation violated at {x:?}: in {inflow}, out {outflow}"));
                }
            }
        }
        problems
    }

    /// Debug dump: one `kind args value` line per edge.
    pub fn dump(&self, f: &Flow) -> String {
        let mut s = String::new();
        for e in 0..self.edge_count() {
            let line = match self.kind(e) {
                EdgeKind::Split(v) => format!("split {v} {}\n", f.values[e]),
                EdgeKind::SourceIn(v) => format!("source {v} {}\n", f.values[e]),
                EdgeKind::OutSink(v) => format!("sink {v} {}\n", f.values[e]),
                EdgeKind::Cross(u, v) => format!("cross {u} {v} {}\n", f.values[e]),
            };
            s.push_str(&line);
        }
        s
    }
}

/// The set `S` of flow vertices reachable from the source in a residual
/// network.
#[derive(Debug, Clone)]
pub struct ResidualCut {
    pub reached_in: Vec<bool>,
    pub reached_out: Vec<bool>,
    pub sink: bool,
}

impl ResidualCut {
    pub fn contains(&self, x: FlowVertex) -> bool {
        match x {
            FlowVertex::Source => true,
            FlowVertex::Sink => self.sink,
            FlowVertex::In(v) => self.reached_in[v],
            FlowVertex::Out(v) => self.reached_out[v],
        }
    }
}
