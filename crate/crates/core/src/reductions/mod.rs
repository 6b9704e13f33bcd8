//! Constructive translations between game classes. Each one keeps the
//! original vertices at their ids and appends its gadget vertices, so
//! projecting back is a matter of dropping ids past `original_count`.

pub mod alternating;
pub mod live;
pub mod product;
pub mod rabin;
pub mod sat;

pub use alternating::{make_alternating, Alternating};
pub use live::{cnf_to_live_edges, singleton_groups_to_live_edges, to_live_groups, Extended};
pub use product::{decompose, product, Decomposition};
pub use rabin::{to_rabin, RabinEncoding};
pub use sat::{sat_to_game, CnfFormula};
