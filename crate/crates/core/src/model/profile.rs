//! Inf-set profiles: the vertices and edges a play visits infinitely often.
//! Every objective and assumption here is a tail property, so the profile
//! alone decides who wins the play.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use super::assumption::Assumption;
use super::game::AugmentedGame;
use super::graph::{EdgeId, GameGraph, Player, VertexId};
use super::objective::Objective;
use super::scc::sccs;
use super::sets::{EdgeSet, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfSetProfile {
    pub vertices: VertexSet,
    pub edges: EdgeSet,
}

impl InfSetProfile {
    /// Checks that `(I, F)` is strongly connected and `I` is the endpoint set of `F`.
    pub fn is_realizable(&self, g: &GameGraph) -> bool {
        if self.edges.is_empty() {
            return false;
        }
        let mut ends = g.empty_vertex_set();
        for e in &self.edges {
            let (u, v) = g.edge(e);
            ends.insert(u);
            ends.insert(v);
        }
        ends == self.vertices && strongly_connected(g, &self.vertices, &self.edges)
    }
}

fn strongly_connected(g: &GameGraph, i: &VertexSet, f: &EdgeSet) -> bool {
    let Some(start) = i.first() else { return false };
    let reach = |forward: bool| {
        let mut seen = g.empty_vertex_set();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let adj = if forward { g.succ(x) } else { g.pred(x) };
            for &(y, e) in adj {
                if f.contains(e) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    };
    reach(true) == *i && reach(false) == *i
}

/// A play `stem · cycle^ω`. An empty cycle marks a finite play that ends in
/// the dead end at the last stem vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoWitness {
    pub stem: Vec<VertexId>,
    pub cycle: Vec<VertexId>,
}

impl LassoWitness {
    pub fn start(&self) -> Option<VertexId> {
        self.stem.first().or(self.cycle.first()).copied()
    }

    /// Legal in `g`, and at player-0 vertices it follows `strat` where defined.
    pub fn is_legal(&self, g: &GameGraph, strat: Option<&super::game::Strategy>) -> bool {
        let seq: Vec<VertexId> = self.stem.iter().chain(&self.cycle).copied().collect();
        if seq.is_empty() {
            return false;
        }
        let mut steps: Vec<(VertexId, VertexId)> = seq.windows(2).map(|w| (w[0], w[1])).collect();
        if let (Some(&l), Some(&f)) = (self.cycle.last(), self.cycle.first()) {
            steps.push((l, f));
        } else if g.out_degree(*seq.last().unwrap()) != 0 {
            return false;
        }
        steps.iter().all(|&(u, v)| {
            g.has_edge(u, v)
                && match strat {
                    Some(s) if g.owner(u) == Player::Zero => s.get(&u).is_none_or(|&t| t == v),
                    _ => true,
                }
        })
    }

    pub fn profile(&self, g: &GameGraph) -> Option<InfSetProfile> {
        if self.cycle.is_empty() {
            return None;
        }
        let mut vertices = g.empty_vertex_set();
        let mut edges = g.empty_edge_set();
        let k = self.cycle.len();
        for i in 0..k {
            let (u, v) = (self.cycle[i], self.cycle[(i + 1) % k]);
            vertices.insert(u);
            edges.insert(g.edge_id(u, v)?);
        }
        Some(InfSetProfile { vertices, edges })
    }
}

enum Phi {
    Parity(Vec<u32>),
    Rabin(Vec<(VertexSet, VertexSet)>),
}

enum Psi {
    None,
    Live(Vec<(VertexId, EdgeId)>),
    CoLive(EdgeSet),
    Groups(Vec<(VertexSet, EdgeSet)>),
    Pers(Vec<PersCompiled>),
    Cnf(Vec<(VertexId, Vec<EdgeSet>)>),
}

struct PersCompiled {
    s: VertexSet,
    t: VertexSet,
    sources: VertexSet,
    c: EdgeSet,
}

/// Compiled winner function for the profiles of one game.
pub struct Classifier {
    phi: Phi,
    psi: Psi,
    edge_src: Vec<VertexId>,
}

impl Classifier {
    pub fn new(game: &AugmentedGame) -> Result<Classifier> {
        let g = &game.graph;
        let eid = |u: VertexId, v: VertexId| g.edge_id(u, v).expect("validated assumption edge");
        let edge_set = |es: &[(VertexId, VertexId)]| {
            EdgeSet::from_iter_in(g.edge_count(), es.iter().map(|&(u, v)| eid(u, v)))
        };
        let phi = match &game.objective {
            Objective::Reach(_) => {
                return Err(Error::Objective("convert reach objectives to parity before classifying".into()))
            }
            Objective::Parity(p) => Phi::Parity(p.clone()),
            Objective::Rabin(pairs) => Phi::Rabin(pairs.iter().map(|p| (p.good.clone(), p.bad.clone())).collect()),
        };
        let psi = match &game.assumption {
            Assumption::None => Psi::None,
            Assumption::LiveEdges(es) => Psi::Live(es.iter().map(|&(u, v)| (u, eid(u, v))).collect()),
            Assumption::CoLiveEdges(es) => Psi::CoLive(edge_set(es)),
            Assumption::LiveGroups(gs) => Psi::Groups(
                gs.iter()
                    .map(|h| {
                        let src = VertexSet::from_iter_in(g.vertex_count(), h.edges.iter().map(|e| e.0));
                        (src, edge_set(&h.edges))
                    })
                    .collect(),
            ),
            Assumption::Persistent(gs) => Psi::Pers(
                gs.iter()
                    .map(|p| PersCompiled {
                        s: p.s.clone(),
                        t: p.t.clone(),
                        sources: p.control_sources(),
                        c: edge_set(&p.c),
                    })
                    .collect(),
            ),
            Assumption::LiveCnf(m) => {
                Psi::Cnf(m.iter().map(|(&v, cl)| (v, cl.iter().map(|c| edge_set(c)).collect())).collect())
            }
        };
        Ok(Classifier {
            phi,
            psi,
            edge_src: g.edges().iter().map(|e| e.0).collect(),
        })
    }

    pub fn assumption_holds(&self, p: &InfSetProfile) -> bool {
        let (i, f) = (&p.vertices, &p.edges);
        match &self.psi {
            Psi::None => true,
            Psi::Live(es) => es.iter().all(|&(u, e)| !i.contains(u) || f.contains(e)),
            Psi::CoLive(ec) => !f.intersects(ec),
            Psi::Groups(gs) => gs.iter().all(|(src, h)| !src.intersects(i) || h.intersects(f)),
            Psi::Pers(gs) => !gs.iter().any(|grp| {
                i.is_subset(&grp.s)
                    && !i.intersects(&grp.t)
                    && f.iter().all(|e| !grp.sources.contains(self.edge_src[e]) || grp.c.contains(e))
            }),
            Psi::Cnf(m) => m
                .iter()
                .all(|(v, clauses)| !i.contains(*v) || clauses.iter().all(|c| c.intersects(f))),
        }
    }

    pub fn objective_holds(&self, p: &InfSetProfile) -> bool {
        let i = &p.vertices;
        match &self.phi {
            Phi::Parity(pr) => i.iter().map(|v| pr[v]).max().is_some_and(|m| m % 2 == 0),
            Phi::Rabin(pairs) => pairs.iter().any(|(good, bad)| good.intersects(i) && !bad.intersects(i)),
        }
    }

    pub fn winner(&self, p: &InfSetProfile) -> Player {
        if !self.assumption_holds(p) || self.objective_holds(p) {
            Player::Zero
        } else {
            Player::One
        }
    }
}

/// Winner of every play whose inf-set profile is `p`.
pub fn classify_infset(p: &InfSetProfile, game: &AugmentedGame) -> Result<Player> {
    Ok(Classifier::new(game)?.winner(p))
}

/// Edges of `g` that are enabled, as a filter over edge ids.
pub struct EdgeFilter<'a> {
    pub g: &'a GameGraph,
    pub enabled: &'a EdgeSet,
}

impl EdgeFilter<'_> {
    fn succ(&self, u: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.g.succ(u).iter().copied().filter(|&(_, e)| self.enabled.contains(e))
    }

    pub fn reachable(&self, from: &VertexSet) -> VertexSet {
        let mut seen = from.clone();
        let mut stack: Vec<_> = from.iter().collect();
        while let Some(x) = stack.pop() {
            for (y, _) in self.succ(x) {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Components with at least one internal edge, restricted to `within`.
    pub fn nontrivial_sccs(&self, within: &VertexSet) -> Vec<Vec<VertexId>> {
        let mut comps = sccs(self.g.vertex_count(), within, |v| self.succ(v).map(|(w, _)| w));
        comps.retain(|c| c.len() > 1 || self.succ(c[0]).any(|(w, _)| w == c[0]));
        comps.reverse();
        comps
    }

    /// Internal edges of a component, and those leaving branching vertices.
    pub fn component_edges(&self, comp: &VertexSet) -> (Vec<EdgeId>, Vec<EdgeId>) {
        let mut all = Vec::new();
        let mut branching = Vec::new();
        for u in comp {
            let inner: Vec<EdgeId> = self.succ(u).filter(|&(w, _)| comp.contains(w)).map(|(_, e)| e).collect();
            if inner.len() > 1 {
                branching.extend(&inner);
            }
            all.extend(inner);
        }
        (all, branching)
    }

    /// Calls `f` on every realizable profile inside the component `comp`.
    /// Edges of vertices with a single inner successor are forced, so only
    /// subsets of the branching edges are enumerated.
    pub fn for_each_profile(
        &self,
        comp: &VertexSet,
        mut f: impl FnMut(&InfSetProfile) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let g = self.g;
        let inner = |u: VertexId| -> Vec<(VertexId, EdgeId)> { self.succ(u).filter(|&(w, _)| comp.contains(w)).collect() };
        let forced: Vec<Option<(VertexId, EdgeId)>> = (0..g.vertex_count())
            .map(|u| {
                if !comp.contains(u) {
                    return None;
                }
                let s = inner(u);
                (s.len() == 1).then(|| s[0])
            })
            .collect();
        let (_, branching) = self.component_edges(comp);

        // Pure cycles through forced vertices only, reported once from their least vertex.
        for start in comp {
            if forced[start].is_none() {
                continue;
            }
            let mut vertices = g.empty_vertex_set();
            let mut edges = g.empty_edge_set();
            let mut x = start;
            let closed = loop {
                let Some((y, e)) = forced[x] else { break false };
                if !vertices.insert(x) {
                    break false;
                }
                edges.insert(e);
                if y == start {
                    break true;
                }
                if y < start {
                    break false;
                }
                x = y;
            };
            if closed {
                f(&InfSetProfile { vertices, edges })?;
            }
        }

        let b = branching.len();
        assert!(b < 64, "branching edge count must be bounded by the caller");
        for mask in 1u64..(1u64 << b) {
            let mut vertices = g.empty_vertex_set();
            let mut edges = g.empty_edge_set();
            let mut work = Vec::new();
            for (k, &e) in branching.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    edges.insert(e);
                    let (u, v) = g.edge(e);
                    for x in [u, v] {
                        if vertices.insert(x) {
                            work.push(x);
                        }
                    }
                }
            }
            let mut ok = true;
            while let Some(x) = work.pop() {
                match forced[x] {
                    Some((y, e)) => {
                        edges.insert(e);
                        if vertices.insert(y) {
                            work.push(y);
                        }
                    }
                    None => {
                        if !self.succ(x).any(|(_, e)| edges.contains(e)) {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if ok && strongly_connected(g, &vertices, &edges) {
                f(&InfSetProfile { vertices, edges })?;
            }
        }
        ControlFlow::Continue(())
    }

    /// A shortest path `from → … ` ending in a vertex of `to`, as the
    /// vertices before the first `to` vertex, plus that vertex.
    pub fn path_to(&self, from: VertexId, to: &VertexSet) -> Option<(Vec<VertexId>, VertexId)> {
        bfs_path(self.g.vertex_count(), from, to, |u| self.succ(u).map(|(w, _)| w).collect())
    }
}

pub(crate) fn bfs_path(
    n: usize,
    from: VertexId,
    to: &VertexSet,
    succ: impl Fn(VertexId) -> Vec<VertexId>,
) -> Option<(Vec<VertexId>, VertexId)> {
    let mut parent = vec![usize::MAX; n];
    let mut seen = VertexSet::empty(n);
    seen.insert(from);
    let mut q = VecDeque::from([from]);
    while let Some(x) = q.pop_front() {
        if to.contains(x) {
            let mut path = Vec::new();
            let mut y = x;
            while y != from {
                y = parent[y];
                path.push(y);
            }
            path.reverse();
            return Some((path, x));
        }
        for y in succ(x) {
            if seen.insert(y) {
                parent[y] = x;
                q.push_back(y);
            }
        }
    }
    None
}

/// A closed walk from `start` that uses exactly the edges of `p`.
pub fn covering_cycle(g: &GameGraph, p: &InfSetProfile, start: VertexId) -> Vec<VertexId> {
    let n = g.vertex_count();
    let inner = |u: VertexId| -> Vec<VertexId> {
        g.succ(u).iter().filter(|&&(_, e)| p.edges.contains(e)).map(|&(w, _)| w).collect()
    };
    let mut seq = vec![start];
    let mut cur = start;
    let walk_to = |cur: &mut VertexId, target: VertexId, seq: &mut Vec<VertexId>| {
        if *cur != target {
            let t = VertexSet::from_iter_in(n, [target]);
            let (path, end) = bfs_path(n, *cur, &t, inner).expect("profile is strongly connected");
            seq.extend(path.into_iter().skip(1));
            seq.push(end);
            *cur = target;
        }
    };
    for e in &p.edges {
        let (a, b) = g.edge(e);
        walk_to(&mut cur, a, &mut seq);
        seq.push(b);
        cur = b;
    }
    walk_to(&mut cur, start, &mut seq);
    seq.pop();
    seq
}

/// Lasso from `from` realizing `p`, moving only along `filter` edges.
pub fn lasso_for(filter: &EdgeFilter<'_>, from: VertexId, p: &InfSetProfile) -> Option<LassoWitness> {
    let (stem, entry) = filter.path_to(from, &p.vertices)?;
    Some(LassoWitness {
        stem,
        cycle: covering_cycle(filter.g, p, entry),
    })
}

/// Number of branching edges among the edges reachable from `start`.
pub fn branching_edge_count(filter: &EdgeFilter<'_>, within: &VertexSet) -> usize {
    filter
        .nontrivial_sccs(within)
        .iter()
        .map(|c| filter.component_edges(&VertexSet::from_iter_in(filter.g.vertex_count(), c.iter().copied())).1.len())
        .sum()
}

/// Every realizable profile reachable from `start`, in a fixed order.
/// `max_branching` bounds the edges whose subsets get enumerated.
pub fn enumerate_infsets(g: &GameGraph, start: VertexId, max_branching: usize) -> Result<Vec<InfSetProfile>> {
    let all = EdgeSet::full(g.edge_count());
    let filter = EdgeFilter { g, enabled: &all };
    let reach = filter.reachable(&VertexSet::from_iter_in(g.vertex_count(), [start]));
    let comps = filter.nontrivial_sccs(&reach);
    let mut out = Vec::new();
    for c in comps {
        let comp = VertexSet::from_iter_in(g.vertex_count(), c);
        let b = filter.component_edges(&comp).1.len();
        if b > max_branching {
            return Err(Error::Bound {
                what: "branching edges in a component",
                bound: max_branching as u64,
                actual: b as u64,
            });
        }
        let _ = filter.for_each_profile(&comp, |p| {
            out.push(p.clone());
            ControlFlow::Continue(())
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::graph::tests::grant_graph;
    use crate::model::graph::GraphBuilder;

    fn cycle2() -> GameGraph {
        let mut b = GraphBuilder::new();
        b.add_vertex("a", Player::Zero).unwrap();
        b.add_vertex("b", Player::One).unwrap();
        b.add_edge(0, 1);
        b.add_edge(1, 0);
        b.build(false).unwrap()
    }

    #[test]
    fn two_cycle_has_one_profile() {
        let ps = enumerate_infsets(&cycle2(), 0, 18).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].edges.len(), 2);
    }

    #[test]
    fn self_loop_profile() {
        let mut b = GraphBuilder::new();
        b.add_vertex("v", Player::Zero).unwrap();
        b.add_edge(0, 0);
        let g = b.build(false).unwrap();
        let ps = enumerate_infsets(&g, 0, 18).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(ps[0].vertices.contains(0));
    }

    /// Reference: all edge subsets, kept when realizable.
    fn brute(g: &GameGraph, start: VertexId) -> Vec<InfSetProfile> {
        let all = EdgeSet::full(g.edge_count());
        let reach = EdgeFilter { g, enabled: &all }.reachable(&VertexSet::from_iter_in(g.vertex_count(), [start]));
        let mut out = Vec::new();
        for mask in 1u32..(1 << g.edge_count()) {
            let edges = EdgeSet::from_iter_in(g.edge_count(), (0..g.edge_count()).filter(|k| mask >> k & 1 == 1));
            let mut vertices = g.empty_vertex_set();
            for e in &edges {
                vertices.insert(g.edge(e).0);
                vertices.insert(g.edge(e).1);
            }
            let p = InfSetProfile { vertices, edges };
            if p.vertices.is_subset(&reach) && p.is_realizable(g) {
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn grant_matches_brute_force() {
        let g = grant_graph();
        let mut a = enumerate_infsets(&g, 0, 18).unwrap();
        let mut b = brute(&g, 0);
        let key = |p: &InfSetProfile| p.edges.iter().collect::<Vec<_>>();
        a.sort_by_key(key);
        b.sort_by_key(key);
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.is_realizable(&g)));
    }

    #[test]
    fn grant_under_strategy_always_request() {
        let g = grant_graph();
        let mut enabled = EdgeSet::full(g.edge_count());
        enabled.remove(g.edge_id(0, 0).unwrap());
        let f = EdgeFilter { g: &g, enabled: &enabled };
        let reach = f.reachable(&VertexSet::from_iter_in(3, [0]));
        let wr = g.edge_id(0, 1).unwrap();
        for c in f.nontrivial_sccs(&reach) {
            let comp = VertexSet::from_iter_in(3, c);
            let _ = f.for_each_profile(&comp, |p| {
                assert!(p.edges.contains(wr) || !p.vertices.contains(0));
                ControlFlow::Continue(())
            });
        }
    }

    #[test]
    fn covering_cycle_uses_all_edges() {
        let g = grant_graph();
        for p in enumerate_infsets(&g, 0, 18).unwrap() {
            let start = p.vertices.first().unwrap();
            let l = LassoWitness {
                stem: vec![],
                cycle: covering_cycle(&g, &p, start),
            };
            assert!(l.is_legal(&g, None));
            assert_eq!(l.profile(&g).unwrap(), p);
        }
    }

    #[test]
    fn bound_is_enforced() {
        let g = grant_graph();
        assert!(matches!(enumerate_infsets(&g, 0, 2), Err(Error::Bound { .. })));
    }
}
