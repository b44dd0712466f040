//! Cover-guided transitive sparsification: per path of a reference cover, a
//! vertex only needs its latest in-neighbor on that path.

use crate::dag::{Dag, PathCover, VertexId};
use crate::error::{Error, Result};

/// Per-path survivor slots, reset in O(1) by bumping an epoch.
#[derive(Debug, Clone, Default)]
pub struct SurvivorArray {
    epoch: u64,
    stamp: Vec<u64>,
    slot: Vec<VertexId>,
    used: Vec<usize>,
}

impl SurvivorArray {
    pub fn new(t: usize) -> Self {
        SurvivorArray {
            epoch: 1,
            stamp: vec![0; t],
            slot: vec![0; t],
            used: Vec::new(),
        }
    }

    fn ensure(&mut self, t: usize) {
        if self.stamp.len() < t {
            self.stamp.resize(t, 0);
            self.slot.resize(t, 0);
        }
    }

    /// Keeps, for every path id, the in-neighbor with the largest `topo_pos`.
    /// Survivors come back ordered by the first appearance of their path id.
    pub fn sparsify(
        &mut self,
        in_neighbors: &[VertexId],
        path_id: impl Fn(VertexId) -> usize,
        topo_pos: impl Fn(VertexId) -> usize,
        t: usize,
    ) -> Result<Vec<VertexId>> {
        let mut out = Vec::new();
        let keyed = in_neighbors.iter().map(|&u| (path_id(u), u));
        self.sparsify_keyed(keyed, topo_pos, t, &mut out)?;
        Ok(out)
    }

    /// Same as [`SurvivorArray::sparsify`] over `(path id, vertex)` pairs,
    /// replacing the contents of `out`.
    pub fn sparsify_keyed(
        &mut self,
        keyed: impl IntoIterator<Item = (usize, VertexId)>,
        topo_pos: impl Fn(VertexId) -> usize,
        t: usize,
        out: &mut Vec<VertexId>,
    ) -> Result<()> {
        self.ensure(t);
        self.epoch += 1;
        self.used.clear();
        for (p, u) in keyed {
            if p >= t {
                return Err(Error::BadPathId { id: p, t });
            }
            if self.stamp[p] != self.epoch {
                self.stamp[p] = self.epoch;
                self.slot[p] = u;
                self.used.push(p);
            } else if topo_pos(u) > topo_pos(self.slot[p]) {
                self.slot[p] = u;
            }
        }
        out.clear();
        out.extend(self.used.iter().map(|&p| self.slot[p]));
        Ok(())
    }
}

/// One-shot version of [`SurvivorArray::sparsify`].
pub fn sparsify_vertex(
    in_neighbors: &[VertexId],
    path_id: impl Fn(VertexId) -> usize,
    topo_pos: impl Fn(VertexId) -> usize,
    t: usize,
) -> Result<Vec<VertexId>> {
    SurvivorArray::new(t).sparsify(in_neighbors, path_id, topo_pos, t)
}

/// Lowest index of a path containing each vertex.
pub fn path_ids(n: usize, cover: &PathCover) -> Vec<usize> {
    let mut id = vec![usize::MAX; n];
    for (p, path) in cover.paths.iter().enumerate().rev() {
        for &v in path {
            id[v] = p;
        }
    }
    id
}

/// Spanning subgraph keeping at most `|cover|` in-edges per vertex with the
/// same reachability as `dag`.
pub fn sparsify_all(dag: &Dag, cover: &PathCover) -> Result<Dag> {
    cover.check(dag)?;
    let t = cover.size();
    let ids = path_ids(dag.n(), cover);
    let pos = dag.topo_pos();
    let mut scratch = SurvivorArray::new(t);
    let mut edges = Vec::new();
    for v in 0..dag.n() {
        for u in scratch.sparsify(dag.in_neighbors(v), |u| ids[u], |u| pos[u], t)? {
            edges.push((u, v));
        }
    }
    dag.with_edges(&edges)
}
