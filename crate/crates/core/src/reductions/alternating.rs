use std::collections::BTreeMap;

use crate::model::{Assumption, AugmentedGame, Edge, Strategy, VertexId, VertexSet};

#[derive(Clone, Debug)]
pub struct Alternating {
    pub game: AugmentedGame,
    pub original_count: usize,
}

impl Alternating {
    pub fn project_set(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_iter_in(self.original_count, s.iter().filter(|&v| v < self.original_count))
    }

    /// `u → r_v` becomes `u → v`; relay moves are dropped.
    pub fn project_strategy(&self, s: &Strategy) -> Strategy {
        let g = &self.game.graph;
        s.iter()
            .filter(|(&u, _)| u < self.original_count)
            .map(|(&u, &v)| (u, if v < self.original_count { v } else { g.succ(v)[0].0 }))
            .collect()
    }
}

/// Routes every edge `(u,v)` between vertices of the same owner through a
/// relay `r_v` owned by the other player. One relay serves all such edges
/// into `v`, so vertices and edges at most double.
pub fn make_alternating(game: &AugmentedGame) -> Alternating {
    let g = &game.graph;
    let n = g.vertex_count();
    let mut b = g.to_builder_without_edges();
    let mut relay: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for &(u, v) in g.edges() {
        if g.owner(u) == g.owner(v) {
            let r = *relay
                .entry(v)
                .or_insert_with(|| b.add_fresh_vertex(&format!("{}~r", g.name(v)), g.owner(v).opponent()));
            b.add_edge(u, r);
            b.add_edge(r, v);
        } else {
            b.add_edge(u, v);
        }
    }
    let graph = b.build(g.dead_ends_allowed()).expect("every vertex keeps its moves");
    let mut old: Vec<VertexId> = (0..n).collect();
    old.resize(graph.vertex_count(), usize::MAX);
    let objective = game.objective.remap(&old, 0);
    let map_edge = |(u, v): Edge| Some(relay.get(&v).filter(|_| g.owner(u) == g.owner(v)).map_or((u, v), |&r| (u, r)));
    let mut assumption = game.assumption.remap(map_edge, &old);
    if let Assumption::Persistent(gs) = &mut assumption {
        for grp in gs.iter_mut() {
            for (&v, &r) in &relay {
                if grp.s.contains(v) {
                    grp.s.insert(r);
                }
            }
        }
    }
    Alternating {
        game: AugmentedGame {
            graph,
            objective,
            assumption,
            init: game.init,
            p0_assumption_edges: game.p0_assumption_edges,
        },
        original_count: n,
    }
}
