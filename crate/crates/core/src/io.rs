//! Plain-text formats: edge lists, path covers and id lines.
//!
//! Edge list: optional `#` comment lines, a header `n m`, then `m` lines
//! `u v`. Path cover: a count line `t`, then one line of ids per path.

use std::fmt::Write;

use crate::dag::{Dag, PathCover, VertexId};
use crate::error::{Error, Result};

/// A parsed graph and the input id of each dense vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub dag: Dag,
    pub ids: Vec<u64>,
    /// False when every input id was already below `n`.
    pub remapped: bool,
}

/// Non-comment, non-blank lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers(line: usize, s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line,
                msg: format!("expected a nonnegative integer, found {tok:?}"),
            })
        })
        .collect()
}

fn exactly<const N: usize>(line: usize, s: &str, what: &str) -> Result<[u64; N]> {
    numbers(line, s)?.try_into().map_err(|v: Vec<u64>| Error::Parse {
        line,
        msg: format!("expected {what}, found {} values", v.len()),
    })
}

fn to_usize(line: usize, x: u64) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::Parse { line, msg: format!("{x} is too large") })
}

/// Parses an edge list. If some id is `>= n`, the distinct ids are mapped
/// to `0..` in increasing order; more than `n` distinct ids is an error.
/// Duplicate edges are dropped.
pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header \"n m\"".into() })?;
    let [n, m] = exactly::<2>(hl, header, "header \"n m\"")?;
    let (n, m) = (to_usize(hl, n)?, to_usize(hl, m)?);
    let mut raw = Vec::with_capacity(m);
    let mut last = hl;
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| Error::Parse {
            line: last + 1,
            msg: format!("expected {m} edges, found {}", raw.len()),
        })?;
        let [u, v] = exactly::<2>(ln, l, "an edge \"u v\"")?;
        raw.push((u, v));
        last = ln;
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse { line: ln, msg: format!("more than {m} edges") });
    }

    let remapped = raw.iter().any(|&(u, v)| u.max(v) >= n as u64);
    let ids: Vec<u64> = if remapped {
        let mut distinct: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() > n {
            return Err(Error::Parse {
                line: hl,
                msg: format!("{} distinct vertex ids but n = {n}", distinct.len()),
            });
        }
        // vertices named by no edge get fresh ids above the largest one
        let top = distinct.last().copied().unwrap_or(0);
        let fresh = (1..).map(|i| top + i).take(n - distinct.len());
        distinct.into_iter().chain(fresh).collect()
    } else {
        (0..n as u64).collect()
    };
    let dense = |x: u64| -> VertexId {
        if remapped {
            ids.binary_search(&x).expect("every edge id is mapped")
        } else {
            x as usize
        }
    };
    let edges: Vec<(VertexId, VertexId)> = raw.iter().map(|&(u, v)| (dense(u), dense(v))).collect();
    Ok(ParsedGraph { dag: Dag::new(n, &edges)?, ids, remapped })
}

pub fn write_edge_list(dag: &Dag) -> String {
    let mut out = format!("{} {}\n", dag.n(), dag.edge_count());
    for (u, v) in dag.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// One `dense original` pair per line.
pub fn write_mapping(ids: &[u64]) -> String {
    let mut out = String::new();
    for (v, id) in ids.iter().enumerate() {
        writeln!(out, "{v} {id}").unwrap();
    }
    out
}

/// Space-separated ids on one line.
pub fn write_ids(ids: &[VertexId]) -> String {
    let mut out = ids.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    out.push('\n');
    out
}

pub fn write_cover(paths: &[Vec<VertexId>]) -> String {
    let mut out = format!("{}\n", paths.len());
    for p in paths {
        out.push_str(&write_ids(p));
    }
    out
}

/// Parses the path-cover format. Paths are not checked against a graph.
pub fn parse_cover(text: &str) -> Result<PathCover> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing path count".into() })?;
    let [t] = exactly::<1>(hl, header, "a path count")?;
    let t = to_usize(hl, t)?;
    let mut paths = Vec::with_capacity(t);
    for (ln, l) in lines {
        if paths.len() == t {
            return Err(Error::Parse { line: ln, msg: format!("more than {t} paths") });
        }
        let path = numbers(ln, l)?
            .into_iter()
            .map(|x| to_usize(ln, x))
            .collect::<Result<Vec<_>>>()?;
        paths.push(path);
    }
    if paths.len() < t {
        return Err(Error::Parse {
            line: text.lines().count() + 1,
            msg: format!("expected {t} paths, found {}", paths.len()),
        });
    }
    Ok(PathCover::new(paths))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_comments() {
        let text = "# diamond\n4 4\n0 1\n0 2\n1 3\n2 3\n";
        let g = parse_edge_list(text).unwrap();
        assert!(!g.remapped);
        assert_eq!(g.dag.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(write_edge_list(&g.dag), "4 4\n0 1\n0 2\n1 3\n2 3\n");
    }

    #[test]
    fn sparse_ids_are_remapped() {
        let g = parse_edge_list("3 2\n10 500\n500 7\n").unwrap();
        assert!(g.remapped);
        assert_eq!(g.ids, vec![7, 10, 500]);
        assert_eq!(g.dag.edges().collect::<Vec<_>>(), vec![(1, 2), (2, 0)]);
        assert_eq!(write_mapping(&g.ids), "0 7\n1 10\n2 500\n");
    }

    #[test]
    fn remap_pads_unnamed_vertices() {
        let g = parse_edge_list("4 1\n9 12\n").unwrap();
        assert_eq!(g.ids, vec![9, 12, 13, 14]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert_eq!(
            parse_edge_list("# c\n2 1\n0 x\n"),
            Err(Error::Parse { line: 3, msg: "expected a nonnegative integer, found \"x\"".into() })
        );
        assert!(matches!(parse_edge_list("2 2\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_edge_list("2 1\n0 1\n1 0\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_edge_list("2 2\n5 6\n6 7\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("2 1 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn graph_errors_pass_through() {
        assert_eq!(parse_edge_list("2 2\n0 1\n1 0\n"), Err(Error::CycleDetected));
        assert_eq!(parse_edge_list("2 1\n1 1\n"), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn cover_round_trip() {
        let paths = vec![vec![0, 1, 3], vec![0, 2, 3]];
        let text = write_cover(&paths);
        assert_eq!(text, "2\n0 1 3\n0 2 3\n");
        assert_eq!(parse_cover(&text).unwrap().paths, paths);
        assert!(matches!(parse_cover("3\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_cover("1\n0\n1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn empty_graph() {
        let g = parse_edge_list("1 0\n").unwrap();
        assert_eq!((g.dag.n(), g.dag.edge_count()), (1, 0));
        assert_eq!(write_ids(&[]), "\n");
    }
}
