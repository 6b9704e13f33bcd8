use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::model::{
    Assumption, AugmentedGame, Edge, GameGraph, GraphBuilder, LabeledGameGraph, LiveGroup, Objective, Player,
    VertexId,
};

fn require_alternating(g: &GameGraph, init: VertexId, what: &str) -> Result<()> {
    if !g.is_alternating() {
        return Err(Error::Precondition(format!("{what} is not alternating")));
    }
    if g.owner(init) != Player::One {
        return Err(Error::Precondition(format!("{what} starts at a player-0 vertex")));
    }
    Ok(())
}

/// Synchronous product of a specification and a plant on equal labels,
/// restricted to the pairs reachable from the two initial vertices. Each
/// live edge of the plant turns into one live group holding all its copies.
/// Reachable pairs without a common label become dead ends of their owner.
pub fn product(
    spec: &LabeledGameGraph,
    spec_objective: &Objective,
    plant: &LabeledGameGraph,
    plant_live: &[Edge],
) -> Result<AugmentedGame> {
    let (g1, g2) = (&spec.graph, &plant.graph);
    require_alternating(g1, spec.init, "specification")?;
    require_alternating(g2, plant.init, "plant")?;
    spec_objective.validate(g1)?;
    for &(u, v) in plant_live {
        if !g2.has_edge(u, v) {
            return Err(Error::UnknownEdge(g2.name(u).into(), g2.name(v).into()));
        }
    }

    let mut b = GraphBuilder::new();
    let mut id: HashMap<(VertexId, VertexId), VertexId> = HashMap::new();
    let mut pairs = Vec::new();
    let mut intern = |b: &mut GraphBuilder, p: (VertexId, VertexId)| -> (VertexId, bool) {
        if let Some(&v) = id.get(&p) {
            return (v, false);
        }
        let v = b.add_fresh_vertex(&format!("{}@{}", g1.name(p.0), g2.name(p.1)), g1.owner(p.0));
        id.insert(p, v);
        pairs.push(p);
        (v, true)
    };
    let (start, _) = intern(&mut b, (spec.init, plant.init));
    let mut queue = VecDeque::from([((spec.init, plant.init), start)]);
    let mut copies: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
    while let Some(((v, w), from)) = queue.pop_front() {
        for &(v2, e1) in g1.succ(v) {
            for &(w2, e2) in g2.succ(w) {
                if spec.labels[e1] == plant.labels[e2] {
                    let (to, new) = intern(&mut b, (v2, w2));
                    if new {
                        queue.push_back(((v2, w2), to));
                    }
                    b.add_edge(from, to);
                    copies.entry((w, w2)).or_default().push((from, to));
                }
            }
        }
    }
    let dead_end = |(v, w): (VertexId, VertexId)| {
        !g1.succ(v)
            .iter()
            .any(|&(_, e1)| g2.succ(w).iter().any(|&(_, e2)| spec.labels[e1] == plant.labels[e2]))
    };
    if dead_end((spec.init, plant.init)) {
        return Err(Error::Precondition("no common label leaves the initial pair".into()));
    }
    let has_dead_end = pairs.iter().any(|&p| dead_end(p));
    let graph = b.build(has_dead_end || g1.dead_ends_allowed())?;

    let old: Vec<VertexId> = pairs.iter().map(|p| p.0).collect();
    let objective = spec_objective.remap(&old, 0);
    let groups = plant_live
        .iter()
        .enumerate()
        .map(|(k, e)| LiveGroup {
            name: format!("H{}", k + 1),
            edges: copies.get(e).cloned().unwrap_or_default(),
        })
        .collect::<Vec<_>>();
    let assumption = if groups.is_empty() {
        Assumption::None
    } else {
        Assumption::LiveGroups(groups)
    };
    let game = AugmentedGame {
        graph,
        objective,
        assumption,
        init: Some(start),
        p0_assumption_edges: false,
    };
    game.validate()?;
    Ok(game)
}

/// Output of [`decompose`]. The specification lives on the pre-split game,
/// whose first `original_count` vertices are the input's.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub spec: LabeledGameGraph,
    pub spec_objective: Objective,
    pub plant: LabeledGameGraph,
    pub plant_live: Vec<Edge>,
    pub original_count: usize,
}

/// Splits an alternating live-group game into a labeled specification,
/// where the edges of group `H_i` read `h_i` and all others `a`, and the
/// hub plant `u0 → u_*, u0 → x_i, u_* → u0, x_i → u0` with live edges
/// `(u0, x_i)`. An edge shared by several groups is first replaced by one
/// copy per group, each routed through a player-0 and a player-1 relay.
pub fn decompose(game: &AugmentedGame) -> Result<Decomposition> {
    let g = &game.graph;
    let init = game
        .init
        .ok_or_else(|| Error::Precondition("decompose needs an initial vertex".into()))?;
    require_alternating(g, init, "game")?;
    let groups: Vec<LiveGroup> = match &game.assumption {
        Assumption::None => vec![],
        Assumption::LiveGroups(gs) => gs.clone(),
        a => return Err(Error::Unsupported(format!("decompose expects live groups, found {}", a.kind()))),
    };
    if let Some(&(u, v)) = groups.iter().flat_map(|h| &h.edges).find(|e| g.owner(e.0) != Player::One) {
        return Err(Error::Precondition(format!("group edge {} leaves a player-0 vertex", g.edge_name((u, v)))));
    }

    let mut member: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, h) in groups.iter().enumerate() {
        for &e in &h.edges {
            let m = member.entry(e).or_default();
            if !m.contains(&i) {
                m.push(i);
            }
        }
    }
    let n = g.vertex_count();
    let mut b = g.to_builder_without_edges();
    let mut label_of: HashMap<Edge, String> = HashMap::new();
    for &(u, v) in g.edges() {
        match member.get(&(u, v)).map(Vec::as_slice) {
            None | Some([]) => {
                b.add_edge(u, v);
                label_of.insert((u, v), "a".into());
            }
            Some([i]) => {
                b.add_edge(u, v);
                label_of.insert((u, v), format!("h{}", i + 1));
            }
            Some(many) => {
                for &i in many {
                    let base = format!("{}>{}.{}", g.name(u), g.name(v), i + 1);
                    let p = b.add_fresh_vertex(&base, Player::Zero);
                    let q = b.add_fresh_vertex(&format!("{base}'"), Player::One);
                    for (e, l) in [((u, p), format!("h{}", i + 1)), ((p, q), "a".into()), ((q, v), "a".into())] {
                        b.add_edge(e.0, e.1);
                        label_of.insert(e, l);
                    }
                }
            }
        }
    }
    let split = b.build(g.dead_ends_allowed())?;
    let labels = split.edges().iter().map(|e| label_of[e].clone()).collect();
    let mut old: Vec<VertexId> = (0..n).collect();
    old.resize(split.vertex_count(), usize::MAX);
    let spec_objective = game.objective.remap(&old, 0);
    let spec = LabeledGameGraph::new(split, labels, init)?;

    let m = groups.len();
    let mut hb = GraphBuilder::new();
    let u0 = hb.add_vertex("u0", Player::One)?;
    let star = hb.add_vertex("u*", Player::Zero)?;
    let mut hub_labels = vec!["a".to_string(), "a".to_string()];
    hb.add_edge(u0, star);
    hb.add_edge(star, u0);
    let mut plant_live = Vec::with_capacity(m);
    for i in 1..=m {
        let x = hb.add_vertex(format!("x{i}"), Player::Zero)?;
        hb.add_edge(u0, x);
        hb.add_edge(x, u0);
        hub_labels.push(format!("h{i}"));
        hub_labels.push("a".into());
        plant_live.push((u0, x));
    }
    let plant = LabeledGameGraph::new(hb.build(false)?, hub_labels, u0)?;
    Ok(Decomposition {
        spec,
        spec_objective,
        plant,
        plant_live,
        original_count: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// a(P1) -> b(P0) twice over, groups sharing an edge.
    fn small() -> AugmentedGame {
        let mut b = GraphBuilder::new();
        let a = b.add_vertex("a", Player::One).unwrap();
        let x = b.add_vertex("x", Player::Zero).unwrap();
        let y = b.add_vertex("y", Player::Zero).unwrap();
        for (u, v) in [(a, x), (a, y), (x, a), (y, a)] {
            b.add_edge(u, v);
        }
        let g = b.build(false).unwrap();
        let groups = vec![
            LiveGroup { name: "G1".into(), edges: vec![(a, x)] },
            LiveGroup { name: "G2".into(), edges: vec![(a, x), (a, y)] },
        ];
        AugmentedGame::new(g, Objective::Parity(vec![1, 2, 1]), Assumption::LiveGroups(groups))
            .unwrap()
            .with_init(Some(a))
    }

    #[test]
    fn hub_shape() {
        let d = decompose(&small()).unwrap();
        assert_eq!(d.plant.graph.edge_count(), 2 * (2 + 1));
        assert_eq!(d.plant_live.len(), 2);
        assert!(d.spec.graph.is_alternating());
        // (a,x) is shared, so it is split into two relayed copies.
        assert!(!d.spec.graph.has_edge(0, 1));
        assert_eq!(d.spec.graph.vertex_count(), 3 + 4);
    }

    #[test]
    fn product_synchronizes_labels() {
        let d = decompose(&small()).unwrap();
        let p = product(&d.spec, &d.spec_objective, &d.plant, &d.plant_live).unwrap();
        for &(u, v) in p.graph.edges() {
            let (s1, s2) = p.graph.name(u).split_once('@').unwrap();
            let (t1, t2) = p.graph.name(v).split_once('@').unwrap();
            let l1 = d.spec.label(d.spec.graph.id(s1).unwrap(), d.spec.graph.id(t1).unwrap());
            let l2 = d.plant.label(d.plant.graph.id(s2).unwrap(), d.plant.graph.id(t2).unwrap());
            assert_eq!(l1, l2);
        }
        assert_eq!(p.graph.name(p.init.unwrap()), "a@u0");
        let Assumption::LiveGroups(gs) = &p.assumption else { unreachable!() };
        assert_eq!(gs.len(), 2);
    }

    #[test]
    fn empty_groups_give_bare_hub() {
        let game = small().with_assumption(Assumption::None);
        let d = decompose(&game).unwrap();
        assert_eq!(d.plant.graph.vertex_count(), 2);
        assert!(d.plant_live.is_empty());
        let p = product(&d.spec, &d.spec_objective, &d.plant, &d.plant_live).unwrap();
        assert_eq!(p.assumption, Assumption::None);
    }

    #[test]
    fn rejects_non_alternating() {
        let mut game = small();
        game.init = Some(1);
        assert!(decompose(&game).is_err());
    }
}
