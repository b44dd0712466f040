//! Instance generators for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dag::{Dag, VertexId};
use crate::error::{Error, Result};

/// Random DAG of width at most `k_target`.
///
/// The vertices are laid out along a random permutation and split into
/// `k_target` nonempty vertex-disjoint chains, so the chains alone already
/// cover the graph. On top of that `floor(extra_edge_factor * n)` random
/// edges are added, always pointing forward in the permutation.
pub fn gen_random_dag(n: usize, k_target: usize, extra_edge_factor: f64, seed: u64) -> Result<Dag> {
    if n == 0 || k_target == 0 || k_target > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k_target <= n, got n={n} k_target={k_target}"
        )));
    }
    if !extra_edge_factor.is_finite() || extra_edge_factor < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "extra_edge_factor must be a nonnegative number, got {extra_edge_factor}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);

    // first k positions get distinct chains so none is empty
    let mut label: Vec<usize> = (0..k_target).collect();
    label.shuffle(&mut rng);
    label.extend((k_target..n).map(|_| rng.gen_range(0..k_target)));

    let mut edges = Vec::new();
    let mut last: Vec<Option<VertexId>> = vec![None; k_target];
    for (pos, &v) in order.iter().enumerate() {
        let c = label[pos];
        if let Some(u) = last[c] {
            edges.push((u, v));
        }
        last[c] = Some(v);
    }
    let extra = (extra_edge_factor * n as f64).floor() as usize;
    if n >= 2 {
        for _ in 0..extra {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            edges.push((order[i], order[j]));
        }
    }
    Dag::new(n, &edges)
}

/// Vertex id of `v_{i,j}` (layer `i` in `0..=n`, position `j`) in [`remark_family`].
pub fn remark_layer_vertex(n: usize, i: usize, j: usize) -> VertexId {
    i * (n + 1) + j
}

/// Vertex id of hub `u_i` (`i` in `1..=n`) in [`remark_family`].
pub fn remark_hub(n: usize, i: usize) -> VertexId {
    (i - 1) * (n + 1) + n
}

/// Width-`n` DAG where every path cover of size `n` uses every edge.
///
/// `n + 1` layers of `n` vertices alternate with `n` hubs; layer `i - 1` is
/// fully joined to hub `u_i`, which is fully joined to layer `i`. The graph has
/// `n(n + 2)` vertices and `2n^2` edges.
pub fn remark_family(n: usize) -> Result<Dag> {
    if n == 0 {
        return Err(Error::InvalidParameter("remark family needs n >= 1".into()));
    }
    let total = n * (n + 2);
    let mut edges = Vec::with_capacity(2 * n * n);
    for i in 1..=n {
        let hub = remark_hub(n, i);
        for j in 0..n {
            edges.push((remark_layer_vertex(n, i - 1, j), hub));
            edges.push((hub, remark_layer_vertex(n, i, j)));
        }
    }
    Dag::new(total, &edges)
}

#[derive(Debug, Clone)]
pub struct CorpusInstance {
    pub dag: Dag,
    pub k_target: usize,
    pub extra_edge_factor: f64,
    pub seed: u64,
}

const FACTORS: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 3.0, 5.0];

/// Deterministic corpus of random DAGs with `n` in `1..=max_n` and
/// `k_target` in `1..=min(max_k, n)`, cycling through several edge densities.
pub fn corpus(count: usize, max_n: usize, max_k: usize, seed: u64) -> Vec<CorpusInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_n);
            let k_target = rng.gen_range(1..=max_k.min(n));
            let extra_edge_factor = FACTORS[i % FACTORS.len()];
            let seed = rng.gen();
            let dag = gen_random_dag(n, k_target, extra_edge_factor, seed)
                .expect("corpus parameters are valid");
            CorpusInstance {
                dag,
                k_target,
                extra_edge_factor,
                seed,
            }
        })
        .collect()
}
