//! Game arenas, objectives, assumptions and the tail semantics that ties
//! them together.

pub mod assumption;
pub mod attractor;
pub mod game;
pub mod graph;
pub mod objective;
pub mod profile;
pub mod scc;
pub mod sets;

pub use assumption::{restrict_pers, Assumption, Clause, LiveGroup, PersistentGroup};
pub use attractor::{attractor, Control, View};
pub use game::{
    as_tail_game, reach_to_parity, split_self_loops, AugmentedGame, LabeledGameGraph, SplitLoops, Strategy,
};
pub use graph::{pre, restrict_control, restrict_graph, Edge, EdgeId, GameGraph, GraphBuilder, Player, VertexId};
pub use objective::{Objective, RabinPair};
pub use profile::{classify_infset, enumerate_infsets, Classifier, InfSetProfile, LassoWitness};
pub use sets::{BitSet, EdgeSet, VertexSet};
