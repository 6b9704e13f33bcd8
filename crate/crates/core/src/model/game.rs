use std::collections::BTreeMap;

use super::assumption::{restrict_pers, Assumption};
use super::graph::{restrict_graph_with_map, Edge, GameGraph, GraphBuilder, VertexId};
use super::objective::Objective;
use super::sets::VertexSet;
use crate::error::{Error, Result};

pub type Strategy = BTreeMap<VertexId, VertexId>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedGame {
    pub graph: GameGraph,
    pub objective: Objective,
    pub assumption: Assumption,
    pub init: Option<VertexId>,
    /// Live, co-live, group and CNF edges may leave player-0 vertices.
    pub p0_assumption_edges: bool,
}

impl AugmentedGame {
    pub fn new(graph: GameGraph, objective: Objective, assumption: Assumption) -> Result<Self> {
        let g = AugmentedGame {
            graph,
            objective,
            assumption,
            init: None,
            p0_assumption_edges: false,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        self.objective.validate(&self.graph)?;
        self.assumption.validate(&self.graph, self.p0_assumption_edges)?;
        if let Some(i) = self.init {
            if i >= self.graph.vertex_count() {
                return Err(Error::Precondition("initial vertex out of range".into()));
            }
        }
        Ok(())
    }

    pub fn with_init(mut self, init: Option<VertexId>) -> Self {
        self.init = init;
        self
    }

    pub fn with_assumption(&self, assumption: Assumption) -> AugmentedGame {
        AugmentedGame {
            assumption,
            ..self.clone()
        }
    }

    pub fn priorities(&self) -> Result<&[u32]> {
        self.objective
            .priorities()
            .ok_or_else(|| Error::Objective(format!("expected a parity objective, found {}", self.objective.kind())))
    }

    /// Induced subgame on `u`; persistent groups are restricted, other
    /// assumption edges are intersected with the surviving edges.
    pub fn restrict(&self, u: &VertexSet) -> (AugmentedGame, Vec<VertexId>) {
        let (graph, old) = restrict_graph_with_map(&self.graph, u);
        let mut new_id = vec![usize::MAX; self.graph.vertex_count()];
        for (i, &o) in old.iter().enumerate() {
            new_id[o] = i;
        }
        let objective = self.objective.remap(&old, 0);
        let map_edge = |(a, b): Edge| (u.contains(a) && u.contains(b)).then(|| (new_id[a], new_id[b]));
        let assumption = match &self.assumption {
            Assumption::Persistent(gs) => {
                Assumption::Persistent(restrict_pers(gs, &self.graph, u)).remap(map_edge, &old)
            }
            a => a.remap(map_edge, &old),
        };
        let game = AugmentedGame {
            graph,
            objective,
            assumption,
            init: self.init.filter(|&i| u.contains(i)).map(|i| new_id[i]),
            p0_assumption_edges: self.p0_assumption_edges,
        };
        (game, old)
    }
}

/// Turns `Reach(T)` into parity: targets become priority-2 sinks, the rest
/// get priority 1, and assumption edges leaving targets are pruned.
pub fn reach_to_parity(game: &AugmentedGame) -> Result<AugmentedGame> {
    let Objective::Reach(t) = &game.objective else {
        return Err(Error::Objective(format!("expected reach, found {}", game.objective.kind())));
    };
    let g = &game.graph;
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(g.name(v), g.owner(v))?;
    }
    for &(u, v) in g.edges() {
        if t.contains(u) {
            b.add_edge(u, u);
        } else {
            b.add_edge(u, v);
        }
    }
    for u in t {
        b.add_edge(u, u);
    }
    let graph = b.build(g.dead_ends_allowed())?;
    let priorities = g.vertices().map(|v| if t.contains(v) { 2 } else { 1 }).collect();
    let ids: Vec<VertexId> = g.vertices().collect();
    let assumption = game.assumption.remap(|(u, v)| (!t.contains(u)).then_some((u, v)), &ids);
    Ok(AugmentedGame {
        graph,
        objective: Objective::Parity(priorities),
        assumption,
        init: game.init,
        p0_assumption_edges: game.p0_assumption_edges,
    })
}

/// Parity view of a game: reach objectives are converted, others kept.
pub fn as_tail_game(game: &AugmentedGame) -> Result<AugmentedGame> {
    match game.objective {
        Objective::Reach(_) => reach_to_parity(game),
        _ => Ok(game.clone()),
    }
}

/// Result of [`split_self_loops`]. Original vertices keep their ids; the
/// loop vertices are appended after them.
#[derive(Clone, Debug)]
pub struct SplitLoops {
    pub game: AugmentedGame,
    pub original_count: usize,
}

impl SplitLoops {
    pub fn project_set(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_iter_in(self.original_count, s.iter().filter(|&v| v < self.original_count))
    }

    pub fn project_strategy(&self, s: &Strategy) -> Strategy {
        s.iter()
            .filter(|(&u, _)| u < self.original_count)
            .map(|(&u, &v)| (u, if v < self.original_count { v } else { u }))
            .collect()
    }
}

/// Replaces each self-loop `(u,u)` by `u → u_e → u` where `u_e` belongs to
/// the opponent of `u`'s owner and carries priority 0. Assumption edges
/// `(u,u)` become `(u,u_e)`; `u_e` is in `S`/`T` of a persistent group
/// exactly when `u` is, so inf-sets keep their classification.
pub fn split_self_loops(game: &AugmentedGame) -> SplitLoops {
    let g = &game.graph;
    let n = g.vertex_count();
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(g.name(v), g.owner(v)).expect("names are unique");
    }
    let mut loop_vertex = BTreeMap::new();
    for u in g.self_loops().collect::<Vec<_>>() {
        let ue = b.add_fresh_vertex(&format!("{}~loop", g.name(u)), g.owner(u).opponent());
        loop_vertex.insert(u, ue);
    }
    for &(u, v) in g.edges() {
        match loop_vertex.get(&u) {
            Some(&ue) if u == v => {
                b.add_edge(u, ue);
                b.add_edge(ue, u);
            }
            _ => {
                b.add_edge(u, v);
            }
        }
    }
    let graph = b.build(g.dead_ends_allowed()).expect("split keeps every vertex's moves");
    let mut old: Vec<VertexId> = (0..n).collect();
    old.resize(graph.vertex_count(), usize::MAX);
    let objective = game.objective.remap(&old, 0);
    let map_edge = |(u, v): Edge| Some(if u == v { (u, loop_vertex[&u]) } else { (u, v) });
    let mut assumption = game.assumption.remap(map_edge, &old);
    if let Assumption::Persistent(gs) = &mut assumption {
        for grp in gs.iter_mut() {
            for (&u, &ue) in &loop_vertex {
                if grp.s.contains(u) {
                    grp.s.insert(ue);
                }
                if grp.t.contains(u) {
                    grp.t.insert(ue);
                }
            }
        }
    }
    SplitLoops {
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

/// A game graph whose edges carry symbols, with a designated initial vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGameGraph {
    pub graph: GameGraph,
    /// Symbol per edge id.
    pub labels: Vec<String>,
    pub init: VertexId,
}

impl LabeledGameGraph {
    pub fn new(graph: GameGraph, labels: Vec<String>, init: VertexId) -> Result<Self> {
        if labels.len() != graph.edge_count() {
            return Err(Error::Precondition("every edge needs exactly one label".into()));
        }
        if init >= graph.vertex_count() {
            return Err(Error::Precondition("initial vertex out of range".into()));
        }
        Ok(LabeledGameGraph { graph, labels, init })
    }

    pub fn label(&self, u: VertexId, v: VertexId) -> Option<&str> {
        self.graph.edge_id(u, v).map(|e| self.labels[e].as_str())
    }

    pub fn alphabet(&self) -> Vec<&str> {
        let mut a: Vec<&str> = self.labels.iter().map(String::as_str).collect();
        a.sort_unstable();
        a.dedup();
        a
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::graph::tests::grant_graph;
    use crate::model::Player;

    fn grant_reach() -> AugmentedGame {
        let g = grant_graph();
        let t = VertexSet::from_iter_in(3, [g.id("g").unwrap()]);
        AugmentedGame::new(g, Objective::Reach(t), Assumption::LiveEdges(vec![(1, 2)])).unwrap()
    }

    #[test]
    fn reach_to_parity_sinks_targets() {
        let p = reach_to_parity(&grant_reach()).unwrap();
        assert_eq!(p.objective, Objective::Parity(vec![1, 1, 2]));
        assert_eq!(p.graph.succ(2), &[(2, p.graph.edge_id(2, 2).unwrap())]);
        assert_eq!(p.assumption, Assumption::LiveEdges(vec![(1, 2)]));
    }

    #[test]
    fn reach_to_parity_prunes_target_sources() {
        let mut game = grant_reach();
        game.assumption = Assumption::LiveEdges(vec![(1, 2)]);
        game.objective = Objective::Reach(VertexSet::from_iter_in(3, [1]));
        let p = reach_to_parity(&game).unwrap();
        assert_eq!(p.assumption, Assumption::LiveEdges(vec![]));
    }

    #[test]
    fn split_loops_shape() {
        let p = reach_to_parity(&grant_reach()).unwrap();
        let s = split_self_loops(&p);
        assert_eq!(s.game.graph.vertex_count(), 5);
        assert_eq!(s.game.graph.self_loops().count(), 0);
        let wl = s.game.graph.id("w~loop").unwrap();
        assert_eq!(s.game.graph.owner(wl), Player::One);
        assert_eq!(s.game.objective.priorities().unwrap()[wl], 0);
        let none = split_self_loops(&s.game);
        assert_eq!(none.game.graph, s.game.graph);
    }

    #[test]
    fn restrict_game_keeps_names() {
        let game = grant_reach();
        let (sub, old) = game.restrict(&VertexSet::from_iter_in(3, [1, 2]));
        assert_eq!(old, vec![1, 2]);
        assert_eq!(sub.graph.name(0), "r");
        assert_eq!(sub.assumption, Assumption::LiveEdges(vec![(0, 1)]));
    }
}
