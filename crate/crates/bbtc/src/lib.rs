//! Block-based triangle counting on a symmetrically partitioned adjacency matrix.
//!
//! The pipeline: ingest an edge list, canonicalize it to an upper-triangular
//! degree-ordered CSR, cut the vertex range with a symmetric rectilinear
//! partition, materialize the upper-triangular blocks as a block CSR, compose
//! one counting task per block triplet `{i,j,k}` with `i <= j <= k`, and run
//! the ordered task queue across host workers and fast lanes with a dual-ended
//! scheduler.

pub mod bcsr;
pub mod gen;
pub mod graph;
pub mod io;
pub mod kernels;
pub mod oracle;
pub mod partition;
pub mod runspec;
pub mod scheduler;
pub mod tasking;

#[cfg(test)]
pub(crate) mod testutil;

pub use bcsr::{BlockGraph, SubgraphBlock};
pub use graph::{GraphCsr, RawEdgeList};
pub use kernels::{LatapyConfig, ScratchMap};
pub use partition::{PartitionStats, PartitionVector};
pub use scheduler::{RunReport, SchedulerConfig, TransferModel};
pub use tasking::{Estimator, Task, TaskList};
