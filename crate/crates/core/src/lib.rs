//! Solvers for two-player graph games whose objectives are weakened by
//! progress assumptions on the environment (live edges, co-live edges,
//! live groups, persistent live groups and live CNF groups).

pub mod augmented;
pub mod classic;
pub mod error;
pub mod generate;
pub mod io;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod result;

pub use error::{Error, Result};
pub use result::SolveResult;
