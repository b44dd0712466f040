//! Brute-force references used to check the solvers.
//!
//! Nothing here shares code with the flow machinery: width comes from a
//! maximum matching on the transitive closure, and antichains are found by
//! exhaustive search.

use crate::dag::{Dag, PathCover};
use crate::error::{Error, Result};

pub const DEFAULT_WIDTH_LIMIT: usize = 500;
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Transitive closure: `closure[u]` holds every `v != u` reachable from `u`.
pub fn transitive_closure(dag: &Dag) -> Vec<Vec<bool>> {
    (0..dag.n())
        .map(|u| {
            let mut row = dag.reachable_from(u);
            row[u] = false;
            row
        })
        .collect()
}

/// Width of `dag` by Dilworth: `n` minus a maximum matching between left and
/// right copies of the vertices over closure edges.
pub fn oracle_width(dag: &Dag) -> Result<usize> {
    oracle_width_with_limit(dag, DEFAULT_WIDTH_LIMIT)
}

pub fn oracle_width_with_limit(dag: &Dag, limit: usize) -> Result<usize> {
    let n = dag.n();
    if n > limit {
        return Err(Error::TooLarge { n, limit });
    }
    let closure = transitive_closure(dag);
    let adj: Vec<Vec<usize>> = closure
        .iter()
        .map(|row| (0..n).filter(|&v| row[v]).collect())
        .collect();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut matched = 0;
    for u in 0..n {
        let mut seen = vec![false; n];
        if augment(u, &adj, &mut seen, &mut match_right) {
            matched += 1;
        }
    }
    Ok(n - matched)
}

fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let free = match match_right[v] {
            None => true,
            Some(w) => augment(w, adj, seen, match_right),
        };
        if free {
            match_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// Size of a maximum antichain by exhaustive branch over vertex subsets.
pub fn oracle_max_antichain(dag: &Dag) -> Result<usize> {
    let n = dag.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let closure = transitive_closure(dag);
    // comparable[v]: bitmask of vertices related to v in either direction
    let mut comparable = vec![0u32; n];
    for u in 0..n {
        for v in 0..n {
            if closure[u][v] {
                comparable[u] |= 1 << v;
                comparable[v] |= 1 << u;
            }
        }
    }
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut ok = true;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if comparable[v] & mask != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            best = size;
        }
    }
    Ok(best)
}

/// True iff no member reaches another.
pub fn is_antichain(dag: &Dag, members: &[usize]) -> bool {
    members.iter().enumerate().all(|(i, &a)| {
        members
            .iter()
            .skip(i + 1)
            .all(|&b| a != b && !dag.reaches(a, b) && !dag.reaches(b, a))
    })
}

/// Lists every problem with `cover` as a path cover of `dag`.
pub fn validate_cover(dag: &Dag, cover: &PathCover) -> Vec<String> {
    let mut problems = Vec::new();
    let mut covered = vec![false; dag.n()];
    for (i, path) in cover.paths.iter().enumerate() {
        if path.is_empty() {
            problems.push(format!("empty path: {i}"));
        }
        for &v in path {
            if v >= dag.n() {
                problems.push(format!("unknown vertex: {v}"));
            } else {
                covered[v] = true;
            }
        }
        for w in path.windows(2) {
            if !dag.has_edge(w[0], w[1]) {
                problems.push(format!("not an edge: ({},{})", w[0], w[1]));
            }
        }
    }
    for (v, c) in covered.iter().enumerate() {
        if !c {
            problems.push(format!("uncovered: {v}"));
        }
    }
    problems
}

/// Full reachability matrix, for comparing graphs on the same vertex set.
pub fn reachability_matrix(dag: &Dag) -> Vec<Vec<bool>> {
    (0..dag.n()).map(|u| dag.reachable_from(u)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_random_dag;

    fn d4() -> Dag {
        Dag::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn widths() {
        assert_eq!(oracle_width(&d4()).unwrap(), 2);
        let chain = Dag::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(oracle_width(&chain).unwrap(), 1);
        assert_eq!(oracle_width(&Dag::new(7, &[]).unwrap()).unwrap(), 7);
    }

    #[test]
    fn exhaustive_antichains() {
        assert_eq!(oracle_max_antichain(&d4()).unwrap(), 2);
        let chain = Dag::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(oracle_max_antichain(&chain).unwrap(), 1);
        assert!(oracle_max_antichain(&Dag::new(21, &[]).unwrap()).is_err());
    }

    #[test]
    fn duality_on_small_graphs() {
        for seed in 0..60 {
            let n = 1 + (seed as usize % 15);
            let k = 1 + (seed as usize % n.min(5));
            let g = gen_random_dag(n, k, 1.0, seed).unwrap();
            assert_eq!(oracle_width(&g).unwrap(), oracle_max_antichain(&g).unwrap());
        }
    }

    #[test]
    fn too_large() {
        let g = Dag::new(3, &[]).unwrap();
        assert_eq!(
            oracle_width_with_limit(&g, 2),
            Err(Error::TooLarge { n: 3, limit: 2 })
        );
    }

    #[test]
    fn validator_reports() {
        let g = d4();
        assert!(validate_cover(&g, &PathCover::new(vec![vec![0, 1, 3], vec![0, 2, 3]])).is_empty());
        assert_eq!(
            validate_cover(&g, &PathCover::new(vec![vec![0, 1, 3]])),
            vec!["uncovered: 2".to_string()]
        );
        assert_eq!(
            validate_cover(&g, &PathCover::new(vec![vec![0, 3], vec![1], vec![2]])),
            vec!["not an edge: (0,3)".to_string()]
        );
    }
}
