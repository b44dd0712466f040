//! Batch shrinking of an arbitrary path cover to a minimum one.

use crate::dag::{Dag, PathCover};
use crate::error::Result;
use crate::flow::{Flow, FlowNetwork, FlowVertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShrinkResult {
    pub cover: PathCover,
    /// Number of decrementing paths applied.
    pub decrementing_paths: usize,
}

/// Residual out-edges of `x` as `(head, edge, is_direct)`, reverse edges
/// first, each group in canonical edge order.
fn residual_edges(net: &FlowNetwork, f: &Flow, x: FlowVertex) -> Vec<(FlowVertex, usize, bool)> {
    let mut out: Vec<_> = net
        .in_edges(x)
        .into_iter()
        .map(|e| (net.kind(e).tail(), e, false))
        .collect();
    for e in net.out_edges(x) {
        let kind = net.kind(e);
        if f.values[e] > kind.demand() {
            out.push((kind.head(), e, true));
        }
    }
    out
}

fn index(x: FlowVertex) -> usize {
    match x {
        FlowVertex::Source => 0,
        FlowVertex::Sink => 1,
        FlowVertex::In(v) => 2 + 2 * v,
        FlowVertex::Out(v) => 3 + 2 * v,
    }
}

/// Looks for an s-t path in the residual network by iterative DFS and
/// applies it. Returns false when none exists.
fn decrement_once(net: &FlowNetwork, f: &mut Flow) -> bool {
    let mut pred: Vec<Option<(FlowVertex, usize, bool)>> = vec![None; net.vertex_count()];
    let mut seen = vec![false; net.vertex_count()];
    seen[index(FlowVertex::Source)] = true;
    let mut stack = vec![(FlowVertex::Source, residual_edges(net, f, FlowVertex::Source), 0usize)];
    let mut reached = false;
    while let Some((x, edges, i)) = stack.last_mut() {
        let Some(&(y, e, direct)) = edges.get(*i) else {
            stack.pop();
            continue;
        };
        *i += 1;
        let x = *x;
        let yi = index(y);
        if y == FlowVertex::Source || seen[yi] {
            continue;
        }
        seen[yi] = true;
        pred[yi] = Some((x, e, direct));
        if y == FlowVertex::Sink {
            reached = true;
            break;
        }
        let next = residual_edges(net, f, y);
        stack.push((y, next, 0));
    }
    if !reached {
        return false;
    }
    let mut y = FlowVertex::Sink;
    while let Some((x, e, direct)) = pred[index(y)] {
        if direct {
            f.values[e] -= 1;
        } else {
            f.values[e] += 1;
        }
        y = x;
    }
    true
}

/// Turns any path cover into a minimum one.
pub fn shrink(dag: &Dag, cover: &PathCover) -> Result<ShrinkResult> {
    let net = FlowNetwork::reduce(dag);
    let mut f = net.flow_from_cover(cover)?;
    let mut decrementing_paths = 0;
    while decrement_once(&net, &mut f) {
        decrementing_paths += 1;
    }
    Ok(ShrinkResult {
        cover: net.decompose(&f)?,
        decrementing_paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn d4() -> Dag {
        Dag::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn d4_three_to_two() {
        let cover = PathCover::new(vec![vec![0, 1, 3], vec![2], vec![0, 2, 3]]);
        let r = shrink(&d4(), &cover).unwrap();
        assert_eq!(r.cover.size(), 2);
        assert_eq!(r.decrementing_paths, 1);
        assert!(r.cover.check(&d4()).is_ok());
    }

    #[test]
    fn minimum_cover_unchanged() {
        let cover = PathCover::new(vec![vec![0, 1, 3], vec![0, 2, 3]]);
        let r = shrink(&d4(), &cover).unwrap();
        assert_eq!((r.cover.size(), r.decrementing_paths), (2, 0));
    }

    #[test]
    fn chain_of_singletons() {
        let edges: Vec<_> = (0..9).map(|i| (i, i + 1)).collect();
        let chain = Dag::new(10, &edges).unwrap();
        let r = shrink(&chain, &PathCover::trivial(10)).unwrap();
        assert_eq!(r.cover.paths, vec![(0..10).collect::<Vec<_>>()]);
        assert_eq!(r.decrementing_paths, 9);
    }

    #[test]
    fn rejects_non_cover() {
        assert_eq!(
            shrink(&d4(), &PathCover::new(vec![vec![0, 1, 3]])),
            Err(Error::NotACover(2))
        );
    }
}
