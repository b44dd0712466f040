//! Path covers, maximum antichains and width-preserving sparsification of
//! DAGs via an incremental minimum-flow solver.

pub mod antichain;
pub mod bench;
pub mod dag;
pub mod error;
pub mod flow;
pub mod generate;
pub mod io;
pub mod mpc;
pub mod oracle;
pub mod shrink;
pub mod sparsify;
pub mod thin;

pub use dag::{Dag, PathCover, VertexId};
pub use error::{Error, Result};
pub use flow::{Flow, FlowNetwork, FlowVertex};
pub use mpc::{solve, MpcResult, Variant};
