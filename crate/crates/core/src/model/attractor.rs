//! Attractors on subgames.
//!
//! A [`View`] is the subgraph induced by a region, optionally with the
//! control restriction `G|_C` applied. All solvers work on views so that
//! subgames never have to be materialized.

use std::collections::VecDeque;

use super::game::Strategy;
use super::graph::{Edge, EdgeId, GameGraph, Player, VertexId};
use super::sets::{EdgeSet, VertexSet};

/// `G|_C` in compiled form.
#[derive(Clone, Debug)]
pub struct Control {
    pub sources: VertexSet,
    pub edges: EdgeSet,
}

impl Control {
    pub fn new(g: &GameGraph, c: &[Edge]) -> Control {
        let mut sources = g.empty_vertex_set();
        let mut edges = g.empty_edge_set();
        for &(u, v) in c {
            sources.insert(u);
            if let Some(e) = g.edge_id(u, v) {
                edges.insert(e);
            }
        }
        Control { sources, edges }
    }
}

#[derive(Clone, Copy)]
pub struct View<'a> {
    pub g: &'a GameGraph,
    pub region: &'a VertexSet,
    pub control: Option<&'a Control>,
}

impl<'a> View<'a> {
    pub fn new(g: &'a GameGraph, region: &'a VertexSet) -> Self {
        View { g, region, control: None }
    }

    pub fn with_control(mut self, control: &'a Control) -> Self {
        self.control = Some(control);
        self
    }

    #[inline]
    pub fn edge_ok(&self, u: VertexId, v: VertexId, e: EdgeId) -> bool {
        self.region.contains(u)
            && self.region.contains(v)
            && match self.control {
                Some(c) => !c.sources.contains(u) || c.edges.contains(e),
                None => true,
            }
    }

    pub fn succ(&self, u: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.g
            .succ(u)
            .iter()
            .filter(move |&&(v, e)| self.edge_ok(u, v, e))
            .map(|&(v, _)| v)
    }

    pub fn out_degree(&self, u: VertexId) -> usize {
        self.succ(u).count()
    }

    /// Predecessors of `t` inside the view.
    pub fn pre(&self, t: &VertexSet) -> VertexSet {
        let mut out = self.g.empty_vertex_set();
        for v in t {
            for &(u, e) in self.g.pred(v) {
                if self.edge_ok(u, v, e) {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// Attractor of `player` to `target ∩ region`. Vertices in `frozen` never
    /// join. The strategy moves every player vertex of `A ∖ target` to its
    /// lowest-index successor of strictly smaller rank.
    pub fn attractor(&self, player: Player, target: &VertexSet, frozen: Option<&VertexSet>) -> (VertexSet, Strategy) {
        let g = self.g;
        let n = g.vertex_count();
        let mut attr = target.intersection(self.region);
        let mut rank = vec![u32::MAX; n];
        let mut count = vec![0usize; n];
        let mut queue = VecDeque::new();
        for v in &attr {
            rank[v] = 0;
            queue.push_back(v);
        }
        let is_frozen = |v: VertexId| frozen.is_some_and(|f| f.contains(v));
        for v in self.region {
            if attr.contains(v) || g.owner(v) == player {
                continue;
            }
            count[v] = self.out_degree(v);
            if count[v] == 0 && !is_frozen(v) {
                attr.insert(v);
                rank[v] = 1;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &(u, e) in g.pred(v) {
                if attr.contains(u) || is_frozen(u) || !self.edge_ok(u, v, e) {
                    continue;
                }
                let join = if g.owner(u) == player {
                    true
                } else {
                    count[u] -= 1;
                    count[u] == 0
                };
                if join {
                    attr.insert(u);
                    rank[u] = rank[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        let mut strat = Strategy::new();
        for u in &attr {
            if rank[u] > 0 && g.owner(u) == player {
                let to = self
                    .succ(u)
                    .find(|&w| rank[w] < rank[u])
                    .expect("attractor vertex has a lower-rank successor");
                strat.insert(u, to);
            }
        }
        (attr, strat)
    }
}

/// Attractor of `player` to `t` in the whole graph.
pub fn attractor(g: &GameGraph, player: Player, t: &VertexSet) -> (VertexSet, Strategy) {
    let all = g.all_vertices();
    View::new(g, &all).attractor(player, t, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::graph::tests::grant_graph;

    #[test]
    fn grant_attractors() {
        let g = grant_graph();
        let t = VertexSet::from_iter_in(3, [2]);
        let (a, s) = attractor(&g, Player::Zero, &t);
        assert_eq!(a, t);
        assert!(s.is_empty());
        let (a, s) = attractor(&g, Player::One, &t);
        assert_eq!(a, VertexSet::from_iter_in(3, [1, 2]));
        assert_eq!(s.get(&1), Some(&2));
        let all = g.all_vertices();
        assert_eq!(attractor(&g, Player::Zero, &all).0, all);
    }

    #[test]
    fn opponent_dead_end_joins() {
        let mut b = crate::model::graph::GraphBuilder::new();
        b.add_vertex("a", Player::One).unwrap();
        b.add_vertex("b", Player::Zero).unwrap();
        b.add_edge(1, 1);
        let g = b.build(true).unwrap();
        let (a, _) = attractor(&g, Player::Zero, &g.empty_vertex_set());
        assert_eq!(a, VertexSet::from_iter_in(2, [0]));
    }
}
