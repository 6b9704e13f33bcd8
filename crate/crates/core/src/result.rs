use std::collections::BTreeMap;

use crate::model::{GameGraph, LassoWitness, Player, Strategy, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub w0: VertexSet,
    pub w1: VertexSet,
    /// Defined on `W0 ∩ V0`.
    pub strategy0: Strategy,
    pub witness: Option<BTreeMap<VertexId, LassoWitness>>,
}

impl SolveResult {
    pub fn from_w0(g: &GameGraph, w0: VertexSet, strategy0: Strategy) -> SolveResult {
        let w1 = w0.complement();
        let strategy0 = strategy0
            .into_iter()
            .filter(|&(u, _)| w0.contains(u) && g.owner(u) == Player::Zero)
            .collect();
        SolveResult {
            w0,
            w1,
            strategy0,
            witness: None,
        }
    }

    pub fn winner(&self, v: VertexId) -> Player {
        if self.w0.contains(v) {
            Player::Zero
        } else {
            Player::One
        }
    }

    /// Partition, domain and edge checks of the result invariants.
    pub fn check_shape(&self, g: &GameGraph) -> Result<(), String> {
        if self.w0.intersects(&self.w1) || self.w0.union(&self.w1) != g.all_vertices() {
            return Err("W0 and W1 do not partition V".into());
        }
        for v in &self.w0 {
            if g.owner(v) == Player::Zero && g.out_degree(v) > 0 && !self.strategy0.contains_key(&v) {
                return Err(format!("no strategy at {}", g.name(v)));
            }
        }
        for (&u, &v) in &self.strategy0 {
            if !g.has_edge(u, v) {
                return Err(format!("strategy move {} -> {} is not an edge", g.name(u), g.name(v)));
            }
        }
        Ok(())
    }

    /// `strategy0` extended to every player-0 vertex by its first successor.
    pub fn total_strategy(&self, g: &GameGraph) -> Strategy {
        let mut s = self.strategy0.clone();
        for v in g.vertices() {
            if g.owner(v) == Player::Zero && !s.contains_key(&v) {
                if let Some(&(w, _)) = g.succ(v).first() {
                    s.insert(v, w);
                }
            }
        }
        s
    }
}
