//! Maximum antichains from minimum flows, and chain covers from path covers.

use crate::dag::{Dag, PathCover, VertexId};
use crate::error::{Error, Result};
use crate::flow::{Flow, FlowNetwork};

/// Vertices whose split edge crosses the residual cut of a minimum flow,
/// sorted by id.
pub fn max_antichain_from_flow(net: &FlowNetwork, f: &Flow) -> Result<Vec<VertexId>> {
    let cut = net.residual_reachable(f);
    if cut.sink {
        return Err(Error::NotMinimum);
    }
    Ok((0..net.n())
        .filter(|&v| cut.reached_in[v] && !cut.reached_out[v])
        .collect())
}

/// Maximum antichain of `dag` given a minimum path cover.
pub fn max_antichain(dag: &Dag, cover: &PathCover) -> Result<Vec<VertexId>> {
    let net = FlowNetwork::reduce(dag);
    let f = net.flow_from_cover(cover)?;
    max_antichain_from_flow(&net, &f)
}

/// Minimum chain cover: every vertex stays in the first path listing it.
/// Fails if a path loses all its vertices, which cannot happen for a
/// minimum cover.
pub fn chain_cover_from_mpc(dag: &Dag, cover: &PathCover) -> Result<Vec<Vec<VertexId>>> {
    cover.check(dag)?;
    let mut taken = vec![false; dag.n()];
    let mut chains = Vec::with_capacity(cover.size());
    for (i, path) in cover.paths.iter().enumerate() {
        let chain: Vec<VertexId> = path
            .iter()
            .copied()
            .filter(|&v| !std::mem::replace(&mut taken[v], true))
            .collect();
        if chain.is_empty() {
            return Err(Error::InvalidPath(format!(
                "path {i} repeats only earlier vertices, so the cover is not minimum"
            )));
        }
        chains.push(chain);
    }
    Ok(chains)
}

/// Checks that `chains` are disjoint, cover `dag`, and are paths of its
/// transitive closure.
pub fn check_chain_cover(dag: &Dag, chains: &[Vec<VertexId>]) -> Result<()> {
    let mut seen = vec![false; dag.n()];
    for chain in chains {
        for &v in chain {
            if v >= dag.n() {
                return Err(Error::OutOfRange { id: v, n: dag.n() });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPath(format!("vertex {v} is in two chains")));
            }
        }
        for w in chain.windows(2) {
            if w[0] == w[1] || !dag.reaches(w[0], w[1]) {
                return Err(Error::InvalidPath(format!("{} does not reach {}", w[0], w[1])));
            }
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(Error::NotACover(v)),
        None => Ok(()),
    }
}
