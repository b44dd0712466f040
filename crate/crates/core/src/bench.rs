//! Size sweeps of the incremental solver.

use std::time::Instant;

use crate::error::Result;
use crate::generate::gen_random_dag;
use crate::mpc::{solve, Variant};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    /// Width found by the solver.
    pub k: usize,
    pub variant: Variant,
    /// Median wall time over the runs.
    pub ms: f64,
    pub charges: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub k: usize,
    pub sizes: Vec<usize>,
    pub variant: Variant,
    pub runs: usize,
    pub extra_edge_factor: f64,
    pub seed: u64,
}

/// Solves one generated graph per size `runs` times after one untimed
/// warm-up run, and keeps the median. Runs cycle through the sizes so that
/// drift in machine speed hits every size alike.
pub fn sweep(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let graphs = cfg
        .sizes
        .iter()
        .map(|&n| gen_random_dag(n, cfg.k, cfg.extra_edge_factor, cfg.seed))
        .collect::<Result<Vec<_>>>()?;
    // the solver is deterministic, so the warm-up result stands for every run
    let results: Vec<_> = graphs.iter().map(|g| solve(g, cfg.variant)).collect();
    let runs = cfg.runs.max(1);
    let mut times = vec![Vec::with_capacity(runs); graphs.len()];
    for _ in 0..runs {
        for (g, t) in graphs.iter().zip(&mut times) {
            let start = Instant::now();
            let r = solve(g, cfg.variant);
            t.push(start.elapsed().as_secs_f64() * 1e3);
            drop(r);
        }
    }
    Ok(graphs
        .iter()
        .zip(results)
        .zip(&mut times)
        .map(|((g, r), t)| {
            t.sort_by(f64::total_cmp);
            BenchRow {
                n: g.n(),
                m: g.edge_count(),
                k: r.cover.size(),
                variant: cfg.variant,
                ms: t[t.len() / 2],
                charges: r.charges.total(),
            }
        })
        .collect())
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,m,k,variant,ms,charges\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{:.3},{}\n", r.n, r.m, r.k, r.variant, r.ms, r.charges));
    }
    out
}
