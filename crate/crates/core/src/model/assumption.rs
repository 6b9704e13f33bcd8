use std::collections::BTreeMap;

use super::graph::{Edge, GameGraph, Player, VertexId};
use super::sets::VertexSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiveGroup {
    pub name: String,
    pub edges: Vec<Edge>,
}

impl LiveGroup {
    pub fn sources(&self) -> Vec<VertexId> {
        let mut s: Vec<_> = self.edges.iter().map(|e| e.0).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// `(S, C, T)`: a play that eventually stays in `S` and always takes a
/// `C`-edge when leaving a source of `C` must reach `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistentGroup {
    pub name: String,
    pub s: VertexSet,
    pub c: Vec<Edge>,
    pub t: VertexSet,
}

impl PersistentGroup {
    pub fn control_sources(&self) -> VertexSet {
        VertexSet::from_iter_in(self.s.universe(), self.c.iter().map(|e| e.0))
    }
}

/// One clause of a live CNF constraint: a disjunction of outgoing edges.
pub type Clause = Vec<Edge>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Assumption {
    #[default]
    None,
    LiveEdges(Vec<Edge>),
    CoLiveEdges(Vec<Edge>),
    LiveGroups(Vec<LiveGroup>),
    Persistent(Vec<PersistentGroup>),
    LiveCnf(BTreeMap<VertexId, Vec<Clause>>),
}

impl Assumption {
    pub fn kind(&self) -> &'static str {
        match self {
            Assumption::None => "none",
            Assumption::LiveEdges(_) => "live",
            Assumption::CoLiveEdges(_) => "colive",
            Assumption::LiveGroups(_) => "group",
            Assumption::Persistent(_) => "pers",
            Assumption::LiveCnf(_) => "cnf",
        }
    }

    /// Every edge the assumption mentions.
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            Assumption::None => vec![],
            Assumption::LiveEdges(e) | Assumption::CoLiveEdges(e) => e.clone(),
            Assumption::LiveGroups(gs) => gs.iter().flat_map(|g| g.edges.iter().copied()).collect(),
            Assumption::Persistent(gs) => gs.iter().flat_map(|g| g.c.iter().copied()).collect(),
            Assumption::LiveCnf(m) => m.values().flatten().flatten().copied().collect(),
        }
    }

    /// Checks graph membership and the ownership rules. With
    /// `p0_edges_allowed`, live/co-live/group/CNF edges may leave P0 vertices.
    pub fn validate(&self, g: &GameGraph, p0_edges_allowed: bool) -> Result<()> {
        for (u, v) in self.edges() {
            if u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v) {
                return Err(Error::Assumption("assumption mentions a non-edge".into()));
            }
        }
        let n = g.vertex_count();
        match self {
            Assumption::Persistent(gs) => {
                for grp in gs {
                    if grp.s.universe() != n || grp.t.universe() != n {
                        return Err(Error::Assumption(format!("group {} does not match the graph", grp.name)));
                    }
                    if !grp.t.is_subset(&grp.s) {
                        return Err(Error::Assumption(format!("group {}: T is not a subset of S", grp.name)));
                    }
                    if let Some(&e) = grp.c.iter().find(|e| g.owner(e.0) != Player::Zero) {
                        return Err(Error::Assumption(format!(
                            "group {}: control edge {} does not leave a player-0 vertex",
                            grp.name,
                            g.edge_name(e)
                        )));
                    }
                }
            }
            Assumption::LiveCnf(m) => {
                for (&v, clauses) in m {
                    if let Some(&e) = clauses.iter().flatten().find(|e| e.0 != v) {
                        return Err(Error::Assumption(format!(
                            "literal {} is not an outgoing edge of {}",
                            g.edge_name(e),
                            g.name(v)
                        )));
                    }
                }
            }
            _ => {}
        }
        if !p0_edges_allowed && !matches!(self, Assumption::Persistent(_)) {
            if let Some(e) = self.edges().into_iter().find(|e| g.owner(e.0) != Player::One) {
                return Err(Error::Assumption(format!(
                    "{} edge {} leaves a player-0 vertex",
                    self.kind(),
                    g.edge_name(e)
                )));
            }
        }
        Ok(())
    }

    /// Rewrites every edge through `f`, dropping edges it maps to `None`.
    /// Vertex-indexed parts are lifted through `old` (new id -> old id,
    /// `usize::MAX` for fresh vertices, which join no set).
    pub fn remap(&self, f: impl Fn(Edge) -> Option<Edge>, old: &[VertexId]) -> Assumption {
        let map_all = |es: &[Edge]| -> Vec<Edge> { es.iter().filter_map(|&e| f(e)).collect() };
        match self {
            Assumption::None => Assumption::None,
            Assumption::LiveEdges(e) => Assumption::LiveEdges(map_all(e)),
            Assumption::CoLiveEdges(e) => Assumption::CoLiveEdges(map_all(e)),
            Assumption::LiveGroups(gs) => Assumption::LiveGroups(
                gs.iter()
                    .map(|h| LiveGroup {
                        name: h.name.clone(),
                        edges: map_all(&h.edges),
                    })
                    .collect(),
            ),
            Assumption::Persistent(gs) => {
                let n = old.len();
                let lift = |s: &VertexSet| {
                    VertexSet::from_iter_in(n, (0..n).filter(|&i| old[i] != usize::MAX && s.contains(old[i])))
                };
                Assumption::Persistent(
                    gs.iter()
                        .map(|p| PersistentGroup {
                            name: p.name.clone(),
                            s: lift(&p.s),
                            c: map_all(&p.c),
                            t: lift(&p.t),
                        })
                        .collect(),
                )
            }
            Assumption::LiveCnf(m) => {
                // A clause that loses every literal stays behind, empty.
                let mut new_id = BTreeMap::new();
                for (i, &o) in old.iter().enumerate() {
                    if o != usize::MAX {
                        new_id.insert(o, i);
                    }
                }
                let mut out: BTreeMap<VertexId, Vec<Clause>> = BTreeMap::new();
                for (v, clauses) in m {
                    if let Some(&nv) = new_id.get(v) {
                        out.insert(nv, clauses.iter().map(|c| map_all(c)).collect());
                    }
                }
                Assumption::LiveCnf(out)
            }
        }
    }
}

/// Restricts persistent groups to the subgame on `u`: `T ∩ U`, `C ∩ (U×U)`,
/// and `S ∩ U` minus every source whose control edges were all cut.
pub fn restrict_pers(groups: &[PersistentGroup], _g: &GameGraph, u: &VertexSet) -> Vec<PersistentGroup> {
    groups
        .iter()
        .map(|grp| {
            let c: Vec<Edge> = grp.c.iter().copied().filter(|&(a, b)| u.contains(a) && u.contains(b)).collect();
            let mut lost = grp.control_sources();
            for &(a, _) in &c {
                lost.remove(a);
            }
            let mut s = grp.s.intersection(u);
            s.difference_with(&lost);
            PersistentGroup {
                name: grp.name.clone(),
                s,
                c,
                t: grp.t.intersection(u),
            }
        })
        .collect()
}
