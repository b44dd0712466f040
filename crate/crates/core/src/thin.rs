//! Rewiring a path cover until its support has fewer than `2n` edges.
//!
//! Paths are doubly linked lists of vertex occurrences. Each edge keeps the
//! list of occurrences whose outgoing link traverses it, so its multiplicity
//! is the length of that list and any path through it is found in O(1).

use std::collections::HashMap;

use crate::dag::{Dag, PathCover, VertexId};
use crate::error::{Error, Result};
use crate::mpc::{solve, Variant};

const NIL: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Node {
    vertex: VertexId,
    prev: usize,
    next: usize,
    // index of this node in the occurrence list of its outgoing edge
    occ: usize,
}

/// A path cover stored as linked occurrences.
#[derive(Debug, Clone)]
pub struct LinkedCover {
    nodes: Vec<Node>,
    free: Vec<usize>,
    edge_id: HashMap<(VertexId, VertexId), usize>,
    ends: Vec<(VertexId, VertexId)>,
    occ: Vec<Vec<usize>>,
    /// Pointer operations performed so far.
    pub steps: usize,
}

impl LinkedCover {
    /// Links `cover`, which must be a path cover of `dag`. Edge ids follow
    /// `dag.edges()`.
    pub fn new(dag: &Dag, cover: &PathCover) -> Result<Self> {
        cover.check(dag)?;
        let ends: Vec<_> = dag.edges().collect();
        let edge_id = ends.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut lc = LinkedCover {
            nodes: Vec::with_capacity(cover.length()),
            free: Vec::new(),
            edge_id,
            occ: vec![Vec::new(); ends.len()],
            ends,
            steps: 0,
        };
        for path in &cover.paths {
            let mut last = NIL;
            for &v in path {
                let x = lc.alloc(v);
                if last != NIL {
                    lc.link(last, x)?;
                }
                last = x;
            }
        }
        lc.steps = 0;
        Ok(lc)
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, e: usize) -> (VertexId, VertexId) {
        self.ends[e]
    }

    pub fn edge(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edge_id.get(&(u, v)).copied()
    }

    /// Number of paths using edge `e`.
    pub fn mu(&self, e: usize) -> usize {
        self.occ[e].len()
    }

    /// Sum of squared multiplicities.
    pub fn phi(&self) -> u64 {
        self.occ.iter().map(|o| (o.len() as u64).pow(2)).sum()
    }

    /// Edges with positive multiplicity, in edge id order.
    pub fn support(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.ends.len()).filter(|&e| self.mu(e) > 0).map(|e| self.ends[e]).collect()
    }

    fn alloc(&mut self, vertex: VertexId) -> usize {
        let node = Node { vertex, prev: NIL, next: NIL, occ: NIL };
        match self.free.pop() {
            Some(x) => {
                self.nodes[x] = node;
                x
            }
            None => {
                self.nodes.push(node);
                self.nodes.len() - 1
            }
        }
    }

    fn release(&mut self, x: usize) {
        self.nodes[x].vertex = NIL;
        self.free.push(x);
    }

    fn out_edge(&self, x: usize) -> usize {
        let y = self.nodes[x].next;
        self.edge_id[&(self.nodes[x].vertex, self.nodes[y].vertex)]
    }

    /// Detaches the outgoing link of `x`, if any.
    fn unlink(&mut self, x: usize) {
        let y = self.nodes[x].next;
        if y == NIL {
            return;
        }
        let e = self.out_edge(x);
        let i = self.nodes[x].occ;
        self.occ[e].swap_remove(i);
        if let Some(&moved) = self.occ[e].get(i) {
            self.nodes[moved].occ = i;
        }
        self.nodes[x].next = NIL;
        self.nodes[x].occ = NIL;
        self.nodes[y].prev = NIL;
        self.steps += 1;
    }

    /// Links the path end `x` to the path start `y`.
    fn link(&mut self, x: usize, y: usize) -> Result<()> {
        debug_assert!(self.nodes[x].next == NIL && self.nodes[y].prev == NIL);
        let (u, v) = (self.nodes[x].vertex, self.nodes[y].vertex);
        let e = self.edge(u, v).ok_or_else(|| Error::Invariant(format!("no edge ({u}, {v})")))?;
        self.nodes[x].next = y;
        self.nodes[y].prev = x;
        self.nodes[x].occ = self.occ[e].len();
        self.occ[e].push(x);
        self.steps += 1;
        Ok(())
    }

    /// Reconnects paths so that one of them contains `d` as a subpath, and
    /// returns the occurrence of `d[0]` on it. Multiplicities and the number
    /// of paths do not change.
    pub fn splice(&mut self, d: &[VertexId]) -> Result<usize> {
        if d.len() < 2 {
            return Err(Error::InvalidPath("a spliced path needs at least one edge".into()));
        }
        let mut edges = Vec::with_capacity(d.len() - 1);
        for w in d.windows(2) {
            match self.edge(w[0], w[1]) {
                Some(e) if self.mu(e) > 0 => edges.push(e),
                _ => return Err(Error::EdgeUncovered(w[0], w[1])),
            }
        }
        let start = self.occ[edges[0]][0];
        let mut cur = self.nodes[start].next;
        for (i, &e) in edges.iter().enumerate().skip(1) {
            let next = self.nodes[cur].next;
            if next != NIL && self.nodes[next].vertex == d[i + 1] {
                cur = next;
                continue;
            }
            // another path leaves d[i] along e: exchange the two suffixes
            let other = self.occ[e][0];
            let theirs = self.nodes[other].next;
            self.unlink(cur);
            self.unlink(other);
            self.link(cur, theirs)?;
            if next != NIL {
                self.link(other, next)?;
            }
            cur = theirs;
        }
        Ok(start)
    }

    /// Current paths, ordered by the storage index of their first node.
    pub fn to_cover(&self) -> PathCover {
        let mut paths = Vec::new();
        for node in &self.nodes {
            if node.vertex == NIL || node.prev != NIL {
                continue;
            }
            let mut path = vec![node.vertex];
            let mut y = node.next;
            while y != NIL {
                path.push(self.nodes[y].vertex);
                y = self.nodes[y].next;
            }
            paths.push(path);
        }
        PathCover::new(paths)
    }
}

/// Splices `cover` through the path `d` of `dag`.
pub fn splice(dag: &Dag, cover: &PathCover, d: &[VertexId]) -> Result<PathCover> {
    let mut lc = LinkedCover::new(dag, cover)?;
    lc.splice(d)?;
    Ok(lc.to_cover())
}

/// One splicing pass around a red cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PassStat {
    pub cycle_len: usize,
    /// Increase of the sum of squared multiplicities.
    pub delta_phi: u64,
    /// Pointer operations spent by the pass.
    pub cost: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThinResult {
    pub cover: PathCover,
    pub passes: Vec<PassStat>,
    /// Red cycles eliminated.
    pub cycles: usize,
    /// Full searches run; the last one finds no red cycle.
    pub rounds: usize,
    pub phi_start: u64,
    pub phi_end: u64,
}

/// A linked cover together with the degrees of its support.
#[derive(Debug, Clone)]
pub struct Support {
    pub cover: LinkedCover,
    deg: Vec<usize>,
    // incident edge ids per vertex, in edge id order
    adj: Vec<Vec<usize>>,
}

impl Support {
    pub fn new(dag: &Dag, cover: &PathCover) -> Result<Self> {
        let cover = LinkedCover::new(dag, cover)?;
        let mut deg = vec![0; dag.n()];
        let mut adj = vec![Vec::new(); dag.n()];
        for e in 0..cover.edge_count() {
            if cover.mu(e) > 0 {
                let (u, v) = cover.ends(e);
                deg[u] += 1;
                deg[v] += 1;
                adj[u].push(e);
                adj[v].push(e);
            }
        }
        Ok(Support { cover, deg, adj })
    }

    pub fn is_red(&self, v: VertexId) -> bool {
        self.deg[v] >= 3
    }

    fn edge_is_red(&self, e: usize) -> bool {
        let (u, v) = self.cover.ends(e);
        self.cover.mu(e) > 0 && self.is_red(u) && self.is_red(v)
    }

    fn red_edge_between(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.cover
            .edge(a, b)
            .or_else(|| self.cover.edge(b, a))
            .filter(|&e| self.edge_is_red(e))
    }

    /// Depth-first search over red edges that eliminates every red cycle
    /// it closes. Returns the number of cycles eliminated.
    fn search_round(&mut self, passes: &mut Vec<PassStat>) -> Result<usize> {
        #[derive(Clone, Copy, PartialEq)]
        enum State {
            New,
            Open,
            Done,
        }
        let n = self.deg.len();
        let mut state = vec![State::New; n];
        let mut pos = vec![0; n];
        let mut cursor = vec![0; n];
        let mut processed = vec![false; self.cover.edge_count()];
        // (vertex, edge it was reached by)
        let mut stack: Vec<(VertexId, usize)> = Vec::new();
        let mut cycles = 0;
        for root in 0..n {
            if state[root] != State::New || !self.is_red(root) {
                continue;
            }
            state[root] = State::Open;
            pos[root] = 0;
            cursor[root] = 0;
            stack.push((root, NIL));
            while let Some(&(v, via)) = stack.last() {
                let next = loop {
                    let Some(&e) = self.adj[v].get(cursor[v]) else { break None };
                    cursor[v] += 1;
                    if e != via && !processed[e] && self.edge_is_red(e) {
                        break Some(e);
                    }
                };
                let Some(e) = next else {
                    stack.pop();
                    state[v] = State::Done;
                    if via != NIL {
                        processed[via] = true;
                    }
                    continue;
                };
                let (a, b) = self.cover.ends(e);
                let w = if a == v { b } else { a };
                match state[w] {
                    State::New => {
                        state[w] = State::Open;
                        pos[w] = stack.len();
                        cursor[w] = 0;
                        stack.push((w, e));
                    }
                    State::Open => {
                        let cycle: Vec<VertexId> = stack[pos[w]..].iter().map(|&(x, _)| x).collect();
                        passes.extend(self.eliminate_red_cycle(&cycle)?);
                        cycles += 1;
                        // reopen the cycle vertices, keeping w if still red
                        while stack.len() > pos[w] + 1 {
                            let (x, _) = stack.pop().expect("stack holds the cycle");
                            state[x] = State::New;
                        }
                        cursor[w] = 0;
                        let (_, wvia) = stack[pos[w]];
                        if !self.is_red(w) || (wvia != NIL && !self.edge_is_red(wvia)) {
                            stack.pop();
                            state[w] = State::New;
                        }
                    }
                    // reached from the other side after a reopening; the
                    // next round looks at it again
                    State::Done => {}
                }
            }
        }
        Ok(cycles)
    }

    /// Runs splicing passes around the red cycle `cycle` (first vertex not
    /// repeated) until an edge on the spliced side leaves the support.
    pub fn eliminate_red_cycle(&mut self, cycle: &[VertexId]) -> Result<Vec<PassStat>> {
        let l = cycle.len();
        if l < 3 {
            return Err(Error::NotARedCycle(format!("{l} vertices")));
        }
        let mut seq = cycle.to_vec();
        let mut forward = Vec::with_capacity(l);
        let mut edges = Vec::with_capacity(l);
        for i in 0..l {
            let (a, b) = (seq[i], seq[(i + 1) % l]);
            let e = self
                .red_edge_between(a, b)
                .ok_or_else(|| Error::NotARedCycle(format!("no red edge between {a} and {b}")))?;
            edges.push(e);
            forward.push(self.cover.ends(e).0 == a);
        }
        let sum = |fwd: bool| -> usize {
            (0..l).filter(|&i| forward[i] == fwd).map(|i| self.cover.mu(edges[i])).sum()
        };
        if sum(true) < sum(false) {
            // walk the cycle the other way so the lighter side is backward
            seq.reverse();
            edges.reverse();
            edges.rotate_left(1);
            forward = edges.iter().enumerate().map(|(i, &e)| self.cover.ends(e).0 == seq[i]).collect();
        }
        // start on a forward edge that follows a backward one
        let shift = (0..l)
            .find(|&i| forward[i] && !forward[(i + l - 1) % l])
            .ok_or_else(|| Error::Invariant("cycle edges all point the same way".into()))?;
        seq.rotate_left(shift);
        edges.rotate_left(shift);
        forward.rotate_left(shift);

        // alternating segments as vertex runs in cycle order
        let mut fwd_segs: Vec<Vec<VertexId>> = Vec::new();
        let mut back_segs: Vec<Vec<VertexId>> = Vec::new();
        let mut i = 0;
        while i < l {
            let side = forward[i];
            let mut run = vec![seq[i]];
            while i < l && forward[i] == side {
                run.push(seq[(i + 1) % l]);
                i += 1;
            }
            if side {
                fwd_segs.push(run);
            } else {
                // stored in edge direction
                run.reverse();
                back_segs.push(run);
            }
        }
        let back_edges: Vec<usize> = (0..l).filter(|&i| !forward[i]).map(|i| edges[i]).collect();
        let c = back_segs.len();

        let mut stats = Vec::new();
        loop {
            let steps_before = self.cover.steps;
            let phi_before: u64 = edges.iter().map(|&e| (self.cover.mu(e) as u64).pow(2)).sum();
            let mut starts = Vec::with_capacity(c);
            let mut ends = Vec::with_capacity(c);
            for seg in &back_segs {
                let s = self.cover.splice(seg)?;
                let mut x = s;
                for _ in 1..seg.len() {
                    x = self.cover.nodes[x].next;
                }
                starts.push(s);
                ends.push(x);
            }
            // drop every spliced backward run
            for (k, &s) in starts.iter().enumerate() {
                let mut x = s;
                while x != ends[k] {
                    let y = self.cover.nodes[x].next;
                    self.cover.unlink(x);
                    if x != s {
                        self.cover.release(x);
                    }
                    x = y;
                }
            }
            // the prefix ending at the start of backward run k continues
            // along the next forward run into the suffix after run k + 1
            for k in 0..c {
                let run = &fwd_segs[(k + 1) % c];
                let mut x = starts[k];
                for &v in &run[1..run.len() - 1] {
                    let y = self.cover.alloc(v);
                    self.cover.link(x, y)?;
                    x = y;
                }
                self.cover.link(x, ends[(k + 1) % c])?;
            }
            let phi_after: u64 = edges.iter().map(|&e| (self.cover.mu(e) as u64).pow(2)).sum();
            if phi_after < phi_before + l as u64 {
                return Err(Error::Invariant(format!(
                    "pass raised the potential by {} on a cycle of {l}",
                    phi_after as i64 - phi_before as i64
                )));
            }
            stats.push(PassStat {
                cycle_len: l,
                delta_phi: phi_after - phi_before,
                cost: self.cover.steps - steps_before,
            });
            let emptied: Vec<usize> = back_edges.iter().copied().filter(|&e| self.cover.mu(e) == 0).collect();
            if !emptied.is_empty() {
                for e in emptied {
                    let (u, v) = self.cover.ends(e);
                    self.deg[u] -= 1;
                    self.deg[v] -= 1;
                }
                return Ok(stats);
            }
        }
    }
}

/// Rewires `cover` until no red cycle remains. The result has the same
/// number of paths and fewer than `2n` distinct edges.
pub fn thin(dag: &Dag, cover: &PathCover) -> Result<ThinResult> {
    let mut support = Support::new(dag, cover)?;
    let phi_start = support.cover.phi();
    let mut passes = Vec::new();
    let mut cycles = 0;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let found = support.search_round(&mut passes)?;
        cycles += found;
        if found == 0 {
            break;
        }
    }
    Ok(ThinResult {
        cover: support.cover.to_cover(),
        passes,
        cycles,
        rounds,
        phi_start,
        phi_end: support.cover.phi(),
    })
}

/// Counts behind the `2n` bound for a support with no red cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportShape {
    pub blue_vertices: usize,
    pub red_vertices: usize,
    /// Blue components that are paths, isolated vertices included.
    pub blue_paths: usize,
    pub blue_cycles: usize,
    pub blue_edges: usize,
    pub red_edges: usize,
    pub purple_edges: usize,
}

/// Classifies the support `edges` on `n` vertices and checks that red
/// edges form a forest, blue parts are paths and cycles, and the edge
/// count stays below `2n`.
pub fn audit_support(n: usize, edges: &[(VertexId, VertexId)]) -> Result<SupportShape> {
    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let red = |v: usize| deg[v] >= 3;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let (mut blue_edges, mut red_edges, mut purple_edges) = (0, 0, 0);
    let mut blue_deg = vec![0usize; n];
    for &(u, v) in edges {
        match (red(u), red(v)) {
            (true, true) => {
                red_edges += 1;
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    return Err(Error::Invariant(format!("red edge ({u}, {v}) closes a cycle")));
                }
                parent[a] = b;
            }
            (false, false) => {
                blue_edges += 1;
                blue_deg[u] += 1;
                blue_deg[v] += 1;
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
            _ => purple_edges += 1,
        }
    }
    let blue_vertices = (0..n).filter(|&v| !red(v)).count();
    let mut size = vec![0usize; n];
    let mut edge_count = vec![0usize; n];
    for v in (0..n).filter(|&v| !red(v)) {
        let r = find(&mut parent, v);
        size[r] += 1;
        edge_count[r] += blue_deg[v];
    }
    let (mut blue_paths, mut blue_cycles) = (0, 0);
    for r in 0..n {
        if size[r] == 0 {
            continue;
        }
        // blue degrees are at most 2, so a component is a path or a cycle
        if edge_count[r] / 2 == size[r] {
            blue_cycles += 1;
        } else {
            blue_paths += 1;
        }
    }
    let shape = SupportShape {
        blue_vertices,
        red_vertices: n - blue_vertices,
        blue_paths,
        blue_cycles,
        blue_edges,
        red_edges,
        purple_edges,
    };
    if blue_edges + blue_paths != blue_vertices {
        return Err(Error::Invariant(format!("blue parts are not paths and cycles: {shape:?}")));
    }
    if purple_edges > 2 * blue_paths {
        return Err(Error::Invariant(format!("too many purple edges: {shape:?}")));
    }
    if n > 0 && edges.len() >= 2 * n {
        return Err(Error::Invariant(format!("{} edges on {n} vertices", edges.len())));
    }
    Ok(shape)
}

/// Spanning subgraph made of the edges of a thinned minimum path cover.
/// It has fewer than `2n` edges and the same width as `dag`.
pub fn width_preserving_sparsify(dag: &Dag) -> Dag {
    let mpc = solve(dag, Variant::K3);
    let thinned = thin(dag, &mpc.cover).expect("the solver returns a path cover");
    dag.with_edges(&thinned.cover.distinct_edges())
        .expect("a subset of the edges of a DAG is a DAG")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{corpus, remark_family};
    use crate::oracle::oracle_width;

    fn mu_map(cover: &PathCover) -> HashMap<(usize, usize), usize> {
        let mut m = HashMap::new();
        for p in &cover.paths {
            for w in p.windows(2) {
                *m.entry((w[0], w[1])).or_default() += 1;
            }
        }
        m
    }

    #[test]
    fn splice_exchanges_suffixes() {
        let g = Dag::new(3, &[(0, 1), (1, 2)]).unwrap();
        let cover = PathCover::new(vec![vec![0, 1], vec![1, 2]]);
        let out = splice(&g, &cover, &[0, 1, 2]).unwrap();
        assert_eq!(out.paths, vec![vec![0, 1, 2], vec![1]]);
        assert_eq!(mu_map(&out), mu_map(&cover));
    }

    #[test]
    fn splice_existing_subpath_is_noop() {
        let g = Dag::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let cover = PathCover::new(vec![vec![0, 1, 3], vec![0, 2, 3]]);
        assert_eq!(splice(&g, &cover, &[0, 2]).unwrap(), cover);
    }

    #[test]
    fn splice_reports_uncovered_edge() {
        let g = Dag::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let cover = PathCover::new(vec![vec![0, 1, 2]]);
        assert_eq!(splice(&g, &cover, &[0, 2]), Err(Error::EdgeUncovered(0, 2)));
    }

    #[test]
    fn rejects_non_red_cycle() {
        // a diamond has only vertices of degree 2
        let g = Dag::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let cover = PathCover::new(vec![vec![0, 1, 3], vec![0, 2, 3]]);
        let mut s = Support::new(&g, &cover).unwrap();
        assert!(matches!(s.eliminate_red_cycle(&[0, 1, 3, 2]), Err(Error::NotARedCycle(_))));
        assert!(matches!(s.eliminate_red_cycle(&[0, 1]), Err(Error::NotARedCycle(_))));
    }

    #[test]
    fn single_backward_edge_goes_in_one_pass() {
        // red triangle 1 -> 2 -> 3, 1 -> 3, each vertex with a private leaf
        let edges = [(0, 1), (1, 2), (2, 3), (1, 3), (3, 4), (2, 5), (6, 2)];
        let g = Dag::new(7, &edges).unwrap();
        let cover = PathCover::new(vec![vec![0, 1, 2, 3, 4], vec![1, 3], vec![2, 5], vec![6, 2]]);
        let mut s = Support::new(&g, &cover).unwrap();
        let stats = s.eliminate_red_cycle(&[1, 2, 3]).unwrap();
        assert_eq!(stats.len(), 1);
        // three cycle edges, plus the forward side's two units each gaining one
        assert_eq!(stats[0].delta_phi, 5);
        let out = s.cover.to_cover();
        out.check(&g).unwrap();
        assert_eq!(out.size(), 4);
        assert!(!out.distinct_edges().contains(&(1, 3)));
    }

    #[test]
    fn remark_family_keeps_every_edge() {
        for n in 2..=8 {
            let g = remark_family(n).unwrap();
            let thin_g = width_preserving_sparsify(&g);
            assert_eq!(thin_g.edge_count(), 2 * n * n, "n = {n}");
            // edges over vertices equals 2 - 4 / (n + 2) exactly
            assert_eq!(thin_g.edge_count() * (n + 2), (2 * (n + 2) - 4) * thin_g.n());
        }
    }

    #[test]
    fn chain_unchanged() {
        let edges: Vec<_> = (0..7).map(|i| (i, i + 1)).collect();
        let g = Dag::new(8, &edges).unwrap();
        let cover = PathCover::new(vec![(0..8).collect()]);
        let r = thin(&g, &cover).unwrap();
        assert_eq!(r.cover, cover);
        assert_eq!((r.cycles, r.rounds), (0, 1));
    }

    fn check_thinned(g: &Dag, t: &PathCover) -> ThinResult {
        let r = thin(g, t).unwrap();
        r.cover.check(g).unwrap();
        assert_eq!(r.cover.size(), t.size());
        let support = r.cover.distinct_edges();
        audit_support(g.n(), &support).unwrap();
        for p in &r.passes {
            assert!(p.delta_phi >= p.cycle_len as u64);
        }
        let total: u64 = r.passes.iter().map(|p| p.delta_phi).sum();
        assert_eq!(r.phi_end - r.phi_start, total);
        let tt = t.size() as u64;
        assert!(r.phi_end <= tt * tt * support.len() as u64);
        let cost: usize = r.passes.iter().map(|p| p.cost).sum();
        assert!(cost <= 6 * t.size() * t.size() * g.n());
        r
    }

    #[test]
    fn corpus_thinning_keeps_width() {
        for inst in corpus(120, 40, 6, 31) {
            let g = &inst.dag;
            let r = check_thinned(g, &solve(g, Variant::K3).cover);
            let sparse = g.with_edges(&r.cover.distinct_edges()).unwrap();
            assert_eq!(oracle_width(&sparse).unwrap(), oracle_width(g).unwrap());
        }
    }

    #[test]
    fn overlapping_covers_lose_red_cycles() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut cycles = 0;
        for inst in corpus(200, 60, 8, 7) {
            let g = &inst.dag;
            let mut paths = solve(g, Variant::K3).cover.paths;
            // extra maximal random walks make the support dense
            for _ in 0..rng.gen_range(0..12) {
                let mut v = rng.gen_range(0..g.n());
                let mut p = vec![v];
                while let Some(&w) = g.out_neighbors(v).get(rng.gen_range(0..g.out_neighbors(v).len().max(1))) {
                    v = w;
                    p.push(v);
                }
                paths.push(p);
            }
            cycles += check_thinned(g, &PathCover::new(paths)).cycles;
        }
        assert!(cycles > 50, "only {cycles} red cycles met");
    }
}
