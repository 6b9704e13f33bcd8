//! Seeded random instances for tests, benchmarks and `gen --random`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{
    Assumption, AugmentedGame, Edge, GameGraph, GraphBuilder, LiveGroup, Objective, PersistentGroup, Player,
    VertexSet,
};
use crate::reductions::CnfFormula;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssumptionClass {
    None,
    Live,
    CoLive,
    /// Live groups with arbitrary sources.
    Group,
    /// Live groups with one source each.
    SingleGroup,
    Pers,
    Cnf,
}

impl AssumptionClass {
    pub const ALL: [AssumptionClass; 7] = [
        AssumptionClass::None,
        AssumptionClass::Live,
        AssumptionClass::CoLive,
        AssumptionClass::Group,
        AssumptionClass::SingleGroup,
        AssumptionClass::Pers,
        AssumptionClass::Cnf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AssumptionClass::None => "none",
            AssumptionClass::Live => "live",
            AssumptionClass::CoLive => "colive",
            AssumptionClass::Group => "group",
            AssumptionClass::SingleGroup => "single-group",
            AssumptionClass::Pers => "pers",
            AssumptionClass::Cnf => "cnf",
        }
    }
}

impl fmt::Display for AssumptionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AssumptionClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        AssumptionClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown assumption class `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectiveKind {
    Reach,
    Parity,
}

#[derive(Clone, Debug)]
pub struct GenParams {
    pub vertices: usize,
    /// Target edge count; the graph gets at least one edge per vertex.
    pub edges: usize,
    pub objective: ObjectiveKind,
    /// Priorities are drawn from `0..=max_priority`.
    pub max_priority: u32,
    pub assumption: AssumptionClass,
    pub self_loops: bool,
    pub alternating: bool,
    /// Cap on the summed out-degree of branching player-1 vertices.
    pub max_p1_choice: Option<usize>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            vertices: 6,
            edges: 12,
            objective: ObjectiveKind::Parity,
            max_priority: 3,
            assumption: AssumptionClass::None,
            self_loops: true,
            alternating: false,
            max_p1_choice: Some(14),
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_game_seeded(p: &GenParams, seed: u64) -> AugmentedGame {
    random_game(p, &mut rng_from_seed(seed))
}

fn p1_choice(b: &GraphBuilder, degree: &[usize]) -> usize {
    (0..degree.len())
        .filter(|&v| b.owner(v) == Player::One && degree[v] > 1)
        .map(|v| degree[v])
        .sum()
}

pub fn random_graph(p: &GenParams, rng: &mut impl Rng) -> GameGraph {
    let n = p.vertices.max(1);
    let mut b = GraphBuilder::new();
    let mut owners: Vec<Player> = (0..n).map(|_| if rng.random_bool(0.5) { Player::One } else { Player::Zero }).collect();
    if p.alternating {
        // Both players need vertices.
        if owners.iter().all(|&o| o == owners[0]) {
            let flip = if n > 1 { rng.random_range(0..n) } else { 0 };
            owners[flip] = owners[flip].opponent();
        }
    }
    for (v, &o) in owners.iter().enumerate() {
        b.add_vertex(format!("v{v}"), o).expect("fresh name");
    }
    let allowed = |u: usize, v: usize| {
        if p.alternating {
            owners[u] != owners[v]
        } else {
            p.self_loops || u != v || n == 1
        }
    };
    let mut degree = vec![0; n];
    for (u, d) in degree.iter_mut().enumerate() {
        let cands: Vec<usize> = (0..n).filter(|&v| allowed(u, v)).collect();
        let &v = cands.choose(rng).expect("some successor is allowed");
        b.add_edge(u, v);
        *d += 1;
    }
    let mut extra: Vec<Edge> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| allowed(u, v) && !b.has_edge(u, v))
        .collect();
    extra.shuffle(rng);
    let mut count = n;
    for (u, v) in extra {
        if count >= p.edges {
            break;
        }
        if let Some(cap) = p.max_p1_choice {
            if owners[u] == Player::One {
                degree[u] += 1;
                let over = p1_choice(&b, &degree) > cap;
                degree[u] -= 1;
                if over {
                    continue;
                }
            }
        }
        b.add_edge(u, v);
        degree[u] += 1;
        count += 1;
    }
    b.build(false).expect("every vertex has a move")
}

fn subset<T: Copy>(items: &[T], prob: f64, rng: &mut impl Rng) -> Vec<T> {
    items.iter().copied().filter(|_| rng.random_bool(prob)).collect()
}

fn nonempty_subset<T: Copy>(items: &[T], prob: f64, rng: &mut impl Rng) -> Vec<T> {
    let mut s = subset(items, prob, rng);
    if s.is_empty() {
        if let Some(&x) = items.choose(rng) {
            s.push(x);
        }
    }
    s
}

fn edges_of(g: &GameGraph, p: Player) -> Vec<Edge> {
    g.edges().iter().copied().filter(|e| g.owner(e.0) == p).collect()
}

pub fn random_assumption(g: &GameGraph, class: AssumptionClass, rng: &mut impl Rng) -> Assumption {
    let n = g.vertex_count();
    let e1 = edges_of(g, Player::One);
    match class {
        AssumptionClass::None => Assumption::None,
        AssumptionClass::Live => Assumption::LiveEdges(subset(&e1, 0.4, rng)),
        AssumptionClass::CoLive => Assumption::CoLiveEdges(subset(&e1, 0.4, rng)),
        AssumptionClass::Group => {
            let k = rng.random_range(1..=3);
            Assumption::LiveGroups(
                (1..=k)
                    .map(|i| LiveGroup {
                        name: format!("G{i}"),
                        edges: nonempty_subset(&e1, 0.3, rng),
                    })
                    .filter(|h| !h.edges.is_empty())
                    .collect(),
            )
        }
        AssumptionClass::SingleGroup => {
            let sources: Vec<usize> = g.vertices().filter(|&v| g.owner(v) == Player::One).collect();
            let k = rng.random_range(1..=3);
            let mut groups = Vec::new();
            for i in 1..=k {
                let Some(&a) = sources.choose(rng) else { break };
                let out: Vec<Edge> = g.succ(a).iter().map(|&(v, _)| (a, v)).collect();
                groups.push(LiveGroup {
                    name: format!("G{i}"),
                    edges: nonempty_subset(&out, 0.5, rng),
                });
            }
            Assumption::LiveGroups(groups)
        }
        AssumptionClass::Pers => {
            let e0 = edges_of(g, Player::Zero);
            let k = rng.random_range(1..=2);
            let all: Vec<usize> = g.vertices().collect();
            Assumption::Persistent(
                (1..=k)
                    .map(|i| {
                        let s = VertexSet::from_iter_in(n, nonempty_subset(&all, 0.6, rng));
                        let in_s: Vec<usize> = s.iter().collect();
                        let t = VertexSet::from_iter_in(n, subset(&in_s, 0.3, rng));
                        let c = subset(&e0, 0.4, rng);
                        PersistentGroup {
                            name: format!("P{i}"),
                            s,
                            c,
                            t,
                        }
                    })
                    .collect(),
            )
        }
        AssumptionClass::Cnf => {
            let mut m = BTreeMap::new();
            for v in g.vertices().filter(|&v| g.owner(v) == Player::One) {
                if !rng.random_bool(0.5) {
                    continue;
                }
                let out: Vec<Edge> = g.succ(v).iter().map(|&(w, _)| (v, w)).collect();
                let k = rng.random_range(1..=2);
                m.insert(v, (0..k).map(|_| nonempty_subset(&out, 0.5, rng)).collect());
            }
            Assumption::LiveCnf(m)
        }
    }
}

pub fn random_objective(g: &GameGraph, kind: ObjectiveKind, max_priority: u32, rng: &mut impl Rng) -> Objective {
    let n = g.vertex_count();
    match kind {
        ObjectiveKind::Parity => Objective::Parity((0..n).map(|_| rng.random_range(0..=max_priority)).collect()),
        ObjectiveKind::Reach => {
            let all: Vec<usize> = g.vertices().collect();
            Objective::Reach(VertexSet::from_iter_in(n, nonempty_subset(&all, 0.2, rng)))
        }
    }
}

pub fn random_game(p: &GenParams, rng: &mut impl Rng) -> AugmentedGame {
    let g = random_graph(p, rng);
    let objective = random_objective(&g, p.objective, p.max_priority, rng);
    let assumption = random_assumption(&g, p.assumption, rng);
    let init = p.alternating.then(|| g.vertices().find(|&v| g.owner(v) == Player::One)).flatten();
    AugmentedGame::new(g, objective, assumption)
        .expect("generated games are well-formed")
        .with_init(init)
}

/// Uniform 1-to-3-literal clauses over `vars` variables.
pub fn random_cnf(vars: usize, clauses: usize, rng: &mut impl Rng) -> CnfFormula {
    let cs = (0..clauses)
        .map(|_| {
            let k = rng.random_range(1..=3);
            (0..k)
                .map(|_| {
                    let x = rng.random_range(1..=vars as i32);
                    if rng.random_bool(0.5) {
                        x
                    } else {
                        -x
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula::new(vars, cs).expect("literals in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        for class in AssumptionClass::ALL {
            let p = GenParams {
                assumption: class,
                ..GenParams::default()
            };
            assert_eq!(random_game_seeded(&p, 7), random_game_seeded(&p, 7));
        }
    }

    #[test]
    fn respects_shape() {
        let p = GenParams {
            vertices: 8,
            edges: 30,
            alternating: true,
            max_p1_choice: Some(10),
            ..GenParams::default()
        };
        for seed in 0..50 {
            let g = random_game_seeded(&p, seed).graph;
            assert!(g.is_alternating());
            assert_eq!(g.dead_ends().count(), 0);
            let choice: usize = g
                .vertices()
                .filter(|&v| g.owner(v) == Player::One && g.out_degree(v) > 1)
                .map(|v| g.out_degree(v))
                .sum();
            assert!(choice <= 10);
        }
    }

    #[test]
    fn no_self_loops_when_disabled() {
        let p = GenParams {
            self_loops: false,
            edges: 20,
            ..GenParams::default()
        };
        for seed in 0..30 {
            assert_eq!(random_game_seeded(&p, seed).graph.self_loops().count(), 0);
        }
    }
}
