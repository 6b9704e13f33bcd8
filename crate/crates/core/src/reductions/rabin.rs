use crate::error::{Error, Result};
use crate::model::{
    as_tail_game, Assumption, AugmentedGame, GraphBuilder, Objective, RabinPair, Strategy, VertexId, VertexSet,
};

/// A Rabin game on `V ⊎ E`. Original vertices keep their ids; the vertex
/// of edge `e` is `original_count + e`.
#[derive(Clone, Debug)]
pub struct RabinEncoding {
    pub game: AugmentedGame,
    pub original_count: usize,
}

impl RabinEncoding {
    pub fn project_set(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_iter_in(self.original_count, s.iter().filter(|&v| v < self.original_count))
    }

    /// `u → e_uv` becomes `u → v`.
    pub fn project_strategy(&self, s: &Strategy) -> Strategy {
        let g = &self.game.graph;
        s.iter()
            .filter(|(&u, _)| u < self.original_count)
            .map(|(&u, &ev)| (u, g.succ(ev)[0].0))
            .collect()
    }

    pub fn lift_strategy(&self, s: &Strategy) -> Strategy {
        let g = &self.game.graph;
        s.iter()
            .map(|(&u, &v)| {
                let e = g.succ(u).iter().find(|&&(ev, _)| g.succ(ev)[0].0 == v).expect("strategy edge exists");
                (u, e.0)
            })
            .collect()
    }
}

/// Inserts a vertex on every edge and encodes live edges, co-live edges,
/// live groups, CNF clauses and the parity condition as Rabin pairs.
pub fn to_rabin(game: &AugmentedGame) -> Result<RabinEncoding> {
    let tail = as_tail_game(game)?;
    let g = &tail.graph;
    let prio = tail.priorities().map_err(|_| Error::Objective("the Rabin encoding needs a parity objective".into()))?;
    let n = g.vertex_count();
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(g.name(v), g.owner(v))?;
    }
    for &(u, v) in g.edges() {
        b.add_fresh_vertex(&format!("{}>{}", g.name(u), g.name(v)), g.owner(u));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        b.add_edge(u, n + e);
        b.add_edge(n + e, v);
    }
    let graph = b.build(g.dead_ends_allowed())?;
    let total = graph.vertex_count();
    let ev = |(u, v): (VertexId, VertexId)| n + g.edge_id(u, v).expect("assumption edge");
    let set = |it: &mut dyn Iterator<Item = VertexId>| VertexSet::from_iter_in(total, it);
    let group_pair = |edges: &[(VertexId, VertexId)]| RabinPair {
        good: set(&mut edges.iter().map(|e| e.0)),
        bad: set(&mut edges.iter().map(|&e| ev(e))),
    };

    let mut pairs = Vec::new();
    match &tail.assumption {
        Assumption::None => {}
        Assumption::LiveEdges(es) => pairs.extend(es.iter().map(|&e| group_pair(&[e]))),
        Assumption::CoLiveEdges(es) => pairs.extend(es.iter().map(|&e| RabinPair {
            good: set(&mut std::iter::once(ev(e))),
            bad: VertexSet::empty(total),
        })),
        Assumption::LiveGroups(gs) => pairs.extend(gs.iter().filter(|h| !h.edges.is_empty()).map(|h| group_pair(&h.edges))),
        Assumption::LiveCnf(m) => {
            for (&v, clauses) in m {
                for c in clauses {
                    pairs.push(RabinPair {
                        good: set(&mut std::iter::once(v)),
                        bad: set(&mut c.iter().map(|&e| ev(e))),
                    });
                }
            }
        }
        Assumption::Persistent(_) => {
            return Err(Error::Unsupported("persistent live groups have no Rabin encoding here".into()))
        }
    }
    let d = prio.iter().copied().max().unwrap_or(0);
    for i in (0..=d).step_by(2) {
        pairs.push(RabinPair {
            good: set(&mut (0..n).filter(|&v| prio[v] == i)),
            bad: set(&mut (0..n).filter(|&v| prio[v] > i)),
        });
    }
    Ok(RabinEncoding {
        game: AugmentedGame {
            graph,
            objective: Objective::Rabin(pairs),
            assumption: Assumption::None,
            init: tail.init,
            p0_assumption_edges: tail.p0_assumption_edges,
        },
        original_count: n,
    })
}
