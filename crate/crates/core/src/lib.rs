//! Class dependency networks of object-oriented software and their analysis
//! with complex-network techniques.

pub mod centrality;
pub mod control;
pub mod error;
pub mod extract;
pub mod metrics;
pub mod modules;
pub mod netcore;
pub mod network;
pub mod partition;
pub mod predict;
pub mod report;

pub use error::{Error, Result};
pub use network::{DependencyKind, DependencyNetwork, KindSet, Link, NodeId};
pub use partition::Partition;
