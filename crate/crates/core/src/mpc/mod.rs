//! Minimum path cover by inserting vertices in topological order and
//! repairing a minimum flow after each insertion.

mod audit;
pub mod levels;
mod solver;

pub use levels::{EagerLevels, LayeredLevels, LevelStore};
pub use solver::{Charges, Solver, StepReport, Variant};

use crate::dag::{Dag, PathCover, VertexId};
use crate::error::{Error, Result};
use crate::flow::{Flow, FlowNetwork};

/// Environment variable that turns on audits and the per-insertion trace.
pub const DEBUG_ENV: &str = "DAGWIDTH_DEBUG";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub audit: bool,
    pub trace: bool,
}

impl SolveOptions {
    /// Audits and tracing on iff `DAGWIDTH_DEBUG` is set to anything but
    /// `0` or the empty string.
    pub fn from_env() -> Self {
        let on = std::env::var(DEBUG_ENV).is_ok_and(|s| !s.is_empty() && s != "0");
        SolveOptions { audit: on, trace: on }
    }
}

#[derive(Debug, Clone)]
pub struct MpcResult {
    /// A minimum path cover of the input.
    pub cover: PathCover,
    /// The sparsified graph the solver worked on, with input vertex ids.
    pub sparse: Dag,
    /// Minimum flow on `FlowNetwork::reduce(&sparse)`.
    pub flow: Flow,
    /// `(level(v_in), level(v_out))` per input vertex.
    pub levels: Vec<(usize, usize)>,
    pub cut_demand: Vec<u64>,
    pub charges: Charges,
    /// `|f|` after each insertion.
    pub trajectory: Vec<u64>,
    pub trace: Vec<String>,
}

pub fn solve(dag: &Dag, variant: Variant) -> MpcResult {
    solve_with(dag, variant, SolveOptions::default()).expect("audits are off")
}

/// Runs the solver; only fails when auditing is on and an invariant breaks.
pub fn solve_with(dag: &Dag, variant: Variant, options: SolveOptions) -> Result<MpcResult> {
    solve_with_store::<LayeredLevels>(dag, variant, options)
}

pub fn solve_with_store<L: LevelStore>(dag: &Dag, variant: Variant, options: SolveOptions) -> Result<MpcResult> {
    let order = dag.topo_order();
    let pos = dag.topo_pos();
    let mut solver = Solver::<L>::new(variant)
        .with_audit(options.audit)
        .with_trace(options.trace);
    solver.reserve(dag.n(), dag.edge_count());
    let mut ins = Vec::new();
    for &v in order {
        ins.clear();
        ins.extend(dag.in_neighbors(v).iter().map(|&u| pos[u]));
        solver.insert_vertex(&ins)?;
    }
    extract(&mut solver, order)
}

fn extract<L: LevelStore>(solver: &mut Solver<L>, order: &[VertexId]) -> Result<MpcResult> {
    let n = order.len();
    let mut edges = Vec::with_capacity(solver.kept_edge_count());
    for v in 0..n {
        edges.extend(solver.kept_in_neighbors(v).map(|u| (order[u], order[v])));
    }
    let net = FlowNetwork::from_dag(Dag::new(n, &edges)?);
    let mut flow = net.zero_flow();
    for v in 0..n {
        let ov = order[v];
        flow.values[net.split(ov)] = solver.split_flow(v);
        flow.values[net.source_in(ov)] = solver.source_flow(v);
        flow.values[net.out_sink(ov)] = solver.sink_flow(v);
        for (j, u) in solver.kept_in_neighbors(v).enumerate() {
            let e = net.find_cross(order[u], ov).expect("kept edge is in the sparse graph");
            flow.values[e] = solver.cross_flow(v, j);
        }
    }
    let cover = match solver.cover_paths() {
        Some(paths) => PathCover::new(
            paths
                .iter()
                .map(|p| p.iter().map(|&v| order[v]).collect())
                .collect(),
        ),
        None => {
            let paths = PathCover::new(solver.decompose(order));
            if solver.audit && net.decompose(&flow)? != paths {
                return Err(Error::Invariant("solver decomposition differs from the network's".into()));
            }
            paths
        }
    };
    let mut levels = vec![(0, 0); n];
    for v in 0..n {
        levels[order[v]] = solver.level_pair(v);
    }
    Ok(MpcResult {
        cover,
        sparse: net.into_base(),
        flow,
        levels,
        cut_demand: solver.cut_demand().to_vec(),
        charges: solver.charges(),
        trajectory: solver.trajectory().to_vec(),
        trace: solver.trace_lines().to_vec(),
    })
}

#[cfg(test)]
mod tests;
