//! Eliminating live groups with a single source, and live CNF groups, in
//! favour of live edges; plus the trivial embeddings into live groups.

use crate::error::{Error, Result};
use crate::model::{Assumption, AugmentedGame, Edge, GraphBuilder, LiveGroup, VertexId, VertexSet};

/// Original vertices keep their ids; gadget vertices come after them.
#[derive(Clone, Debug)]
pub struct Extended {
    pub game: AugmentedGame,
    pub original_count: usize,
}

impl Extended {
    pub fn project_set(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_iter_in(self.original_count, s.iter().filter(|&v| v < self.original_count))
    }

    /// A move into a gadget vertex is replaced by the gadget's first exit.
    pub fn project_strategy(&self, s: &crate::model::Strategy) -> crate::model::Strategy {
        let g = &self.game.graph;
        s.iter()
            .filter(|(&u, _)| u < self.original_count)
            .map(|(&u, &v)| {
                let mut w = v;
                while w >= self.original_count {
                    w = s.get(&w).copied().unwrap_or(g.succ(w)[0].0);
                }
                (u, w)
            })
            .collect()
    }
}

fn finish(game: &AugmentedGame, b: GraphBuilder, assumption: Assumption, dead_ends: bool) -> Result<Extended> {
    let n = game.graph.vertex_count();
    let graph = b.build(game.graph.dead_ends_allowed() || dead_ends)?;
    let mut old: Vec<VertexId> = (0..n).collect();
    old.resize(graph.vertex_count(), usize::MAX);
    let objective = game.objective.remap(&old, 0);
    Ok(Extended {
        game: AugmentedGame {
            graph,
            objective,
            assumption,
            init: game.init,
            p0_assumption_edges: game.p0_assumption_edges,
        },
        original_count: n,
    })
}

/// Each group `H` leaving one vertex `a` becomes a fresh vertex `a_H` with
/// edges to the targets of `H`, and the live edge `(a, a_H)` replaces `H`.
pub fn singleton_groups_to_live_edges(game: &AugmentedGame) -> Result<Extended> {
    let Assumption::LiveGroups(groups) = &game.assumption else {
        return Err(Error::Unsupported(format!("expected live groups, found {}", game.assumption.kind())));
    };
    if let Some(h) = groups.iter().find(|h| h.sources().len() > 1) {
        return Err(Error::Precondition(format!("group {} has more than one source", h.name)));
    }
    let g = &game.graph;
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(g.name(v), g.owner(v))?;
    }
    let grouped: Vec<Edge> = groups.iter().flat_map(|h| h.edges.iter().copied()).collect();
    for &e in g.edges() {
        if !grouped.contains(&e) {
            b.add_edge(e.0, e.1);
        }
    }
    let mut live = Vec::new();
    for h in groups.iter().filter(|h| !h.edges.is_empty()) {
        let a = h.edges[0].0;
        let ah = b.add_fresh_vertex(&format!("{}~{}", g.name(a), h.name), g.owner(a));
        b.add_edge(a, ah);
        for &(_, v) in &h.edges {
            b.add_edge(ah, v);
        }
        live.push((a, ah));
    }
    finish(game, b, Assumption::LiveEdges(live), false)
}

/// Every clause of `φ_u` gets a fresh vertex `u_H` reachable by the live
/// edge `(u, u_H)` and leading to the clause's targets; the original edges
/// stay. An empty clause yields a gadget vertex without moves, so taking
/// the live edge strands its owner.
pub fn cnf_to_live_edges(game: &AugmentedGame) -> Result<Extended> {
    let Assumption::LiveCnf(m) = &game.assumption else {
        return Err(Error::Unsupported(format!("expected live CNF groups, found {}", game.assumption.kind())));
    };
    let g = &game.graph;
    let mut b = g.to_builder();
    let mut live = Vec::new();
    for (&u, clauses) in m {
        for (k, clause) in clauses.iter().enumerate() {
            if clause.iter().any(|e| e.0 != u) {
                return Err(Error::Assumption(format!("clause {} of {} leaves another vertex", k + 1, g.name(u))));
            }
            let uh = b.add_fresh_vertex(&format!("{}~c{}", g.name(u), k + 1), g.owner(u));
            b.add_edge(u, uh);
            for &(_, v) in clause {
                b.add_edge(uh, v);
            }
            live.push((u, uh));
        }
    }
    let empty_clause = m.values().flatten().any(|c| c.is_empty());
    finish(game, b, Assumption::LiveEdges(live), empty_clause)
}

/// Live edges as singleton groups and CNF clauses as groups; other
/// classes are returned unchanged.
pub fn to_live_groups(game: &AugmentedGame) -> AugmentedGame {
    let g = &game.graph;
    let groups = match &game.assumption {
        Assumption::LiveEdges(es) => es
            .iter()
            .map(|&(u, v)| LiveGroup {
                name: format!("{}>{}", g.name(u), g.name(v)),
                edges: vec![(u, v)],
            })
            .collect(),
        Assumption::LiveCnf(m) => m
            .iter()
            .flat_map(|(&u, clauses)| {
                clauses.iter().enumerate().map(move |(k, c)| LiveGroup {
                    name: format!("{}.{}", g.name(u), k + 1),
                    edges: c.clone(),
                })
            })
            .collect(),
        _ => return game.clone(),
    };
    game.with_assumption(Assumption::LiveGroups(groups))
}
