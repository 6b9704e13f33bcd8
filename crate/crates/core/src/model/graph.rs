use std::collections::HashMap;
use std::fmt;

use super::sets::{EdgeSet, VertexSet};
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type Edge = (VertexId, VertexId);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    Zero,
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Player> {
        match i {
            0 => Some(Player::Zero),
            1 => Some(Player::One),
            _ => None,
        }
    }

    /// Winner of a parity play with the given top priority.
    pub fn of_priority(p: u32) -> Player {
        if p.is_multiple_of(2) {
            Player::Zero
        } else {
            Player::One
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Two-player game arena. Vertices and edges keep their declaration order;
/// successor and predecessor lists are sorted by vertex index.
#[derive(Clone, Debug)]
pub struct GameGraph {
    names: Vec<String>,
    owners: Vec<Player>,
    edges: Vec<Edge>,
    succ: Vec<Vec<(VertexId, EdgeId)>>,
    pred: Vec<Vec<(VertexId, EdgeId)>>,
    edge_index: HashMap<Edge, EdgeId>,
    name_index: HashMap<String, VertexId>,
    dead_ends_allowed: bool,
}

impl PartialEq for GameGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.owners == other.owners
            && self.edges == other.edges
            && self.dead_ends_allowed == other.dead_ends_allowed
    }
}

impl Eq for GameGraph {}

#[derive(Default, Debug, Clone)]
pub struct GraphBuilder {
    names: Vec<String>,
    owners: Vec<Player>,
    edges: Vec<Edge>,
    edge_index: HashMap<Edge, EdgeId>,
    name_index: HashMap<String, VertexId>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, owner: Player) -> Result<VertexId> {
        let name = name.into();
        if self.name_index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = self.names.len();
        self.name_index.insert(name.clone(), id);
        self.names.push(name);
        self.owners.push(owner);
        Ok(id)
    }

    /// Adds a vertex named `base`, or `base~k` for the first free `k`.
    pub fn add_fresh_vertex(&mut self, base: &str, owner: Player) -> VertexId {
        if !self.name_index.contains_key(base) {
            return self.add_vertex(base, owner).expect("name is free");
        }
        let mut k = 1;
        loop {
            let name = format!("{base}~{k}");
            if !self.name_index.contains_key(&name) {
                return self.add_vertex(name, owner).expect("name is free");
            }
            k += 1;
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.name_index.get(name).copied()
    }

    pub fn owner(&self, v: VertexId) -> Player {
        self.owners[v]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_index.contains_key(&(u, v))
    }

    /// Adds `(u,v)` with set semantics; returns false on a duplicate.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        assert!(u < self.names.len() && v < self.names.len(), "edge endpoint out of range");
        if self.edge_index.contains_key(&(u, v)) {
            return false;
        }
        self.edge_index.insert((u, v), self.edges.len());
        self.edges.push((u, v));
        true
    }

    pub fn add_edge_by_name(&mut self, u: &str, v: &str) -> Result<bool> {
        let ui = self.id(u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
        let vi = self.id(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        Ok(self.add_edge(ui, vi))
    }

    pub fn build(self, dead_ends_allowed: bool) -> Result<GameGraph> {
        let n = self.names.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            succ[u].push((v, e));
            pred[v].push((u, e));
        }
        for l in succ.iter_mut().chain(pred.iter_mut()) {
            l.sort_unstable();
        }
        if !dead_ends_allowed {
            if let Some(v) = (0..n).find(|&v| succ[v].is_empty()) {
                return Err(Error::DeadEnd(self.names[v].clone()));
            }
        }
        Ok(GameGraph {
            names: self.names,
            owners: self.owners,
            edges: self.edges,
            succ,
            pred,
            edge_index: self.edge_index,
            name_index: self.name_index,
            dead_ends_allowed,
        })
    }
}

impl GameGraph {
    /// Starts a builder holding a copy of this graph's vertices and edges.
    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            names: self.names.clone(),
            owners: self.owners.clone(),
            edges: self.edges.clone(),
            edge_index: self.edge_index.clone(),
            name_index: self.name_index.clone(),
        }
    }

    /// Same vertices, no edges.
    pub fn to_builder_without_edges(&self) -> GraphBuilder {
        GraphBuilder {
            names: self.names.clone(),
            owners: self.owners.clone(),
            name_index: self.name_index.clone(),
            ..GraphBuilder::default()
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.name_index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<VertexId> {
        self.id(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn owner(&self, v: VertexId) -> Player {
        self.owners[v]
    }

    pub fn succ(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.succ[v]
    }

    pub fn pred(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.pred[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.succ[v].len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(u, v)).copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_index.contains_key(&(u, v))
    }

    pub fn dead_ends_allowed(&self) -> bool {
        self.dead_ends_allowed
    }

    pub fn empty_vertex_set(&self) -> VertexSet {
        VertexSet::empty(self.vertex_count())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn empty_edge_set(&self) -> EdgeSet {
        EdgeSet::empty(self.edge_count())
    }

    pub fn vertices_of(&self, p: Player) -> VertexSet {
        VertexSet::from_iter_in(self.vertex_count(), self.vertices().filter(|&v| self.owners[v] == p))
    }

    pub fn self_loops(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| self.has_edge(v, v))
    }

    pub fn dead_ends(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(|&v| self.succ[v].is_empty())
    }

    pub fn is_alternating(&self) -> bool {
        self.edges.iter().all(|&(u, v)| self.owners[u] != self.owners[v])
    }

    pub fn edge_name(&self, (u, v): Edge) -> String {
        format!("({},{})", self.names[u], self.names[v])
    }

    pub fn set_names(&self, s: &VertexSet) -> Vec<&str> {
        s.iter().map(|v| self.name(v)).collect()
    }

    pub fn with_dead_ends_allowed(mut self, allowed: bool) -> Result<GameGraph> {
        if !allowed {
            if let Some(v) = self.dead_ends().next() {
                return Err(Error::DeadEnd(self.names[v].clone()));
            }
        }
        self.dead_ends_allowed = allowed;
        Ok(self)
    }
}

/// `{ u | (u,v) ∈ E, v ∈ T }`.
pub fn pre(g: &GameGraph, t: &VertexSet) -> VertexSet {
    let mut out = g.empty_vertex_set();
    for v in t {
        for &(u, _) in g.pred(v) {
            out.insert(u);
        }
    }
    out
}

/// Induced subgraph on `u`. The second component maps new ids to old ids.
pub fn restrict_graph_with_map(g: &GameGraph, u: &VertexSet) -> (GameGraph, Vec<VertexId>) {
    let mut b = GraphBuilder::new();
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    let mut old = Vec::with_capacity(u.len());
    for v in u {
        new_id[v] = b.add_vertex(g.name(v), g.owner(v)).expect("names are unique");
        old.push(v);
    }
    for &(x, y) in g.edges() {
        if u.contains(x) && u.contains(y) {
            b.add_edge(new_id[x], new_id[y]);
        }
    }
    (b.build(true).expect("dead ends allowed"), old)
}

pub fn restrict_graph(g: &GameGraph, u: &VertexSet) -> GameGraph {
    restrict_graph_with_map(g, u).0
}

/// `G|_C`: at a source of `C` only the `C`-edges survive.
pub fn restrict_control(g: &GameGraph, c: &[Edge]) -> GameGraph {
    let mut src = g.empty_vertex_set();
    for &(u, _) in c {
        src.insert(u);
    }
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(g.name(v), g.owner(v)).expect("names are unique");
    }
    for &(x, y) in g.edges() {
        if !src.contains(x) || c.contains(&(x, y)) {
            b.add_edge(x, y);
        }
    }
    b.build(g.dead_ends_allowed()).expect("sources keep their C-edges")
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The request/grant arena used across the unit tests.
    pub(crate) fn grant_graph() -> GameGraph {
        let mut b = GraphBuilder::new();
        b.add_vertex("w", Player::Zero).unwrap();
        b.add_vertex("r", Player::One).unwrap();
        b.add_vertex("g", Player::Zero).unwrap();
        for (u, v) in [("w", "w"), ("w", "r"), ("r", "w"), ("r", "g"), ("g", "r"), ("g", "w")] {
            b.add_edge_by_name(u, v).unwrap();
        }
        b.build(false).unwrap()
    }

    fn set(g: &GameGraph, names: &[&str]) -> VertexSet {
        VertexSet::from_iter_in(g.vertex_count(), names.iter().map(|n| g.id(n).unwrap()))
    }

    #[test]
    fn pre_examples() {
        let g = grant_graph();
        assert_eq!(pre(&g, &set(&g, &["g"])), set(&g, &["r"]));
        assert!(pre(&g, &g.empty_vertex_set()).is_empty());
        assert_eq!(pre(&g, &set(&g, &["w"])), set(&g, &["w", "r", "g"]));
    }

    #[test]
    fn restrict_graph_examples() {
        let g = grant_graph();
        let h = restrict_graph(&g, &set(&g, &["w", "r"]));
        let names: Vec<_> = h.edges().iter().map(|&e| h.edge_name(e)).collect();
        assert_eq!(names, vec!["(w,w)", "(w,r)", "(r,w)"]);
        assert_eq!(restrict_graph(&g, &g.all_vertices()), g.clone().with_dead_ends_allowed(true).unwrap());
        assert_eq!(restrict_graph(&g, &g.empty_vertex_set()).vertex_count(), 0);
    }

    #[test]
    fn restrict_control_keeps_only_c_edges_at_sources() {
        let g = grant_graph();
        let w = g.id("w").unwrap();
        let r = g.id("r").unwrap();
        let h = restrict_control(&g, &[(w, r)]);
        assert_eq!(h.succ(w).len(), 1);
        assert_eq!(h.edge_count(), g.edge_count() - 1);
        assert_eq!(restrict_control(&g, &[]), g);
    }

    #[test]
    fn dead_end_rejected_unless_allowed() {
        let mut b = GraphBuilder::new();
        b.add_vertex("a", Player::Zero).unwrap();
        assert_eq!(b.clone().build(false), Err(Error::DeadEnd("a".into())));
        assert!(b.build(true).is_ok());
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let mut b = GraphBuilder::new();
        b.add_vertex("a", Player::Zero).unwrap();
        b.add_vertex("a~1", Player::Zero).unwrap();
        let v = b.add_fresh_vertex("a", Player::One);
        assert_eq!(b.build(true).unwrap().name(v), "a~2");
    }
}
