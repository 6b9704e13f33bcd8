//! Solvers that exploit the assumption directly, and a dispatcher that
//! picks one (or a reduction plus the oracle) for every assumption class.

pub mod attr_pers;
pub mod colive;
pub mod dispatch;
pub mod pers;

pub use attr_pers::attr_pers;
pub use colive::solve_colive;
pub use dispatch::{solve_augmented, Algo, Counters, Dispatched};
pub use pers::{qsolve_pers, solve_qsolve_pers, solve_zielonka_pers, zielonka_pers};
