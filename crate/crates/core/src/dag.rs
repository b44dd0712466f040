//! Immutable DAG storage with a canonical topological order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A simple directed acyclic graph on the dense vertex set `0..n`.
///
/// Adjacency lists are sorted and deduplicated. The topological order is the
/// one produced by Kahn's algorithm with the smallest available id taken first,
/// so two equal edge sets always get the same order.
#[derive(Clone, PartialEq, Eq)]
pub struct Dag {
    // compressed rows: the neighbors of v are adj[start[v]..start[v + 1]]
    out_start: Vec<usize>,
    out_adj: Vec<VertexId>,
    in_start: Vec<usize>,
    in_adj: Vec<VertexId>,
    topo: Vec<VertexId>,
    topo_pos: Vec<usize>,
}

impl std::fmt::Debug for Dag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Dag::new({}, {:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Dag {
    /// Builds a DAG from an edge list, dropping duplicate edges.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Dag> {
        let mut deg = vec![0usize; n + 1];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::OutOfRange { id: u, n });
            }
            if v >= n {
                return Err(Error::OutOfRange { id: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            deg[u + 1] += 1;
        }
        for v in 0..n {
            deg[v + 1] += deg[v];
        }
        let mut fill = deg.clone();
        let mut raw = vec![0; edges.len()];
        for &(u, v) in edges {
            raw[fill[u]] = v;
            fill[u] += 1;
        }
        // sort and deduplicate each row while compacting
        let mut out_start = vec![0; n + 1];
        let mut out_adj = Vec::with_capacity(edges.len());
        for u in 0..n {
            let row = &mut raw[deg[u]..deg[u + 1]];
            row.sort_unstable();
            for (i, &v) in row.iter().enumerate() {
                if i == 0 || row[i - 1] != v {
                    out_adj.push(v);
                }
            }
            out_start[u + 1] = out_adj.len();
        }
        let mut in_start = vec![0; n + 1];
        for &v in &out_adj {
            in_start[v + 1] += 1;
        }
        for v in 0..n {
            in_start[v + 1] += in_start[v];
        }
        let mut fill = in_start.clone();
        let mut in_adj = vec![0; out_adj.len()];
        for u in 0..n {
            for &v in &out_adj[out_start[u]..out_start[u + 1]] {
                in_adj[fill[v]] = u;
                fill[v] += 1;
            }
        }

        let mut indeg: Vec<usize> = (0..n).map(|v| in_start[v + 1] - in_start[v]).collect();
        let mut heap: BinaryHeap<Reverse<VertexId>> =
            (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(Reverse(u)) = heap.pop() {
            topo.push(u);
            for &v in &out_adj[out_start[u]..out_start[u + 1]] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
        if topo.len() != n {
            return Err(Error::CycleDetected);
        }
        let mut topo_pos = vec![0; n];
        for (i, &v) in topo.iter().enumerate() {
            topo_pos[v] = i;
        }
        Ok(Dag {
            out_start,
            out_adj,
            in_start,
            in_adj,
            topo,
            topo_pos,
        })
    }

    pub fn n(&self) -> usize {
        self.topo.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[self.out_start[v]..self.out_start[v + 1]]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[self.in_start[v]..self.in_start[v + 1]]
    }

    /// Positions of the out-edges of `v` in `edges()` order.
    pub(crate) fn out_range(&self, v: VertexId) -> std::ops::Range<usize> {
        self.out_start[v]..self.out_start[v + 1]
    }

    /// Slots of the in-edges of `v`, for arrays laid out like `in_neighbors`.
    pub(crate) fn in_range(&self, v: VertexId) -> std::ops::Range<usize> {
        self.in_start[v]..self.in_start[v + 1]
    }

    pub fn topo_order(&self) -> &[VertexId] {
        &self.topo
    }

    pub fn topo_pos(&self) -> &[usize] {
        &self.topo_pos
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && self.out_neighbors(u).binary_search(&v).is_ok()
    }

    /// All edges, grouped by tail in increasing id order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n()).flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Induced subgraph on the first `i` vertices of the topological order.
    ///
    /// Returns the subgraph and the map from its vertex ids to ids of `self`;
    /// vertex `j` of the prefix is the `j`-th vertex of the order.
    pub fn prefix(&self, i: usize) -> Result<(Dag, Vec<VertexId>)> {
        if i == 0 || i > self.n() {
            return Err(Error::OutOfRange { id: i, n: self.n() });
        }
        let map: Vec<VertexId> = self.topo[..i].to_vec();
        let mut edges = Vec::new();
        for (j, &v) in map.iter().enumerate() {
            for &w in self.out_neighbors(v) {
                let p = self.topo_pos[w];
                if p < i {
                    edges.push((j, p));
                }
            }
        }
        Ok((Dag::new(i, &edges)?, map))
    }

    /// True iff `u` reaches `v` (every vertex reaches itself).
    pub fn reaches(&self, u: VertexId, v: VertexId) -> bool {
        if u == v {
            return true;
        }
        if self.topo_pos[u] > self.topo_pos[v] {
            return false;
        }
        let limit = self.topo_pos[v];
        let mut seen = vec![false; self.n()];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for &y in self.out_neighbors(x) {
                if y == v {
                    return true;
                }
                if !seen[y] && self.topo_pos[y] < limit {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// Set of vertices reachable from `u`, as a boolean mask.
    pub fn reachable_from(&self, u: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(x) = stack.pop() {
            for &y in self.out_neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Spanning subgraph with the given edge subset.
    pub fn with_edges(&self, edges: &[(VertexId, VertexId)]) -> Result<Dag> {
        Dag::new(self.n(), edges)
    }
}

/// A collection of paths, each a vertex sequence of the owning graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathCover {
    pub paths: Vec<Vec<VertexId>>,
}

impl PathCover {
    pub fn new(paths: Vec<Vec<VertexId>>) -> Self {
        PathCover { paths }
    }

    /// One singleton path per vertex.
    pub fn trivial(n: usize) -> Self {
        PathCover {
            paths: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Number of paths.
    pub fn size(&self) -> usize {
        self.paths.len()
    }

    /// Total number of vertex occurrences.
    pub fn length(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    /// Sorted distinct edges used by the paths.
    pub fn distinct_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut edges: Vec<_> = self
            .paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0], w[1])))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// Checks that every sequence is a nonempty path of `dag` and that every
    /// vertex is covered. Returns the first problem found.
    pub fn check(&self, dag: &Dag) -> Result<()> {
        let mut covered = vec![false; dag.n()];
        for (i, path) in self.paths.iter().enumerate() {
            if path.is_empty() {
                return Err(Error::InvalidPath(format!("path {i} is empty")));
            }
            for &v in path {
                if v >= dag.n() {
                    return Err(Error::OutOfRange { id: v, n: dag.n() });
                }
                covered[v] = true;
            }
            for w in path.windows(2) {
                if !dag.has_edge(w[0], w[1]) {
                    return Err(Error::InvalidPath(format!("not an edge: ({}, {})", w[0], w[1])));
                }
            }
        }
        match covered.iter().position(|&c| !c) {
            Some(v) => Err(Error::NotACover(v)),
            None => Ok(()),
        }
    }
}
