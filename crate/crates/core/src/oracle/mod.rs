//! Exhaustive ground truth for small games.
//!
//! Player 0 never needs memory here: on the arena with one extra vertex per
//! edge, `¬ψ ∨ Φ` is a disjunction of Rabin pairs for every assumption class
//! (a persistent group is violated by an inf-set that stays inside `S`,
//! avoids `T` and avoids the non-`C` edges of `src(C)`, which is again a
//! Rabin pair). So `v ∈ W0` iff some positional `σ` leaves no reachable
//! player-1-winning inf-set in `G_σ`, and a single `σ` wins all of `W0`.

mod sat;

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use rayon::prelude::*;

pub use sat::sat_brute;

use crate::error::{Error, Result};
use crate::model::profile::{lasso_for, EdgeFilter};
use crate::model::{
    as_tail_game, AugmentedGame, Classifier, EdgeSet, GameGraph, InfSetProfile, LassoWitness, Objective, Player,
    Strategy, VertexId, VertexSet,
};
use crate::result::SolveResult;

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Edges leaving player-1 vertices with a real choice.
    pub max_choice_edges: usize,
    /// Number of positional player-0 strategies.
    pub max_strategies: u64,
    pub jobs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_choice_edges: 18,
            max_strategies: 1_000_000,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Counterexample(LassoWitness),
}

fn check_choice_edges(g: &GameGraph, limits: &Limits) -> Result<()> {
    let choice: usize = g
        .vertices()
        .filter(|&v| g.owner(v) == Player::One && g.out_degree(v) > 1)
        .map(|v| g.out_degree(v))
        .sum();
    if choice > limits.max_choice_edges {
        return Err(Error::Bound {
            what: "player-1 choice edges",
            bound: limits.max_choice_edges as u64,
            actual: choice as u64,
        });
    }
    Ok(())
}

/// Per-strategy analysis with a cache keyed by component edge sets.
struct Analyzer<'a> {
    g: &'a GameGraph,
    classifier: &'a Classifier,
    cache: HashMap<Vec<usize>, Option<InfSetProfile>>,
}

struct Analysis {
    lose: VertexSet,
    /// Player-0 dead ends and bad profiles, as lasso targets.
    dead_ends: VertexSet,
    bad: Vec<InfSetProfile>,
}

impl<'a> Analyzer<'a> {
    fn new(g: &'a GameGraph, classifier: &'a Classifier) -> Self {
        Analyzer {
            g,
            classifier,
            cache: HashMap::new(),
        }
    }

    fn analyze(&mut self, enabled: &EdgeSet, within: &VertexSet) -> Analysis {
        let g = self.g;
        let filter = EdgeFilter { g, enabled };
        let mut dead_ends = g.empty_vertex_set();
        for v in within {
            if g.owner(v) == Player::Zero && !g.succ(v).iter().any(|&(_, e)| enabled.contains(e)) {
                dead_ends.insert(v);
            }
        }
        let mut bad = Vec::new();
        let mut seeds = dead_ends.clone();
        for comp in filter.nontrivial_sccs(within) {
            let comp = VertexSet::from_iter_in(g.vertex_count(), comp);
            let (key, _) = filter.component_edges(&comp);
            let classifier = self.classifier;
            let found = self
                .cache
                .entry(key)
                .or_insert_with(|| {
                    let mut hit = None;
                    let _ = filter.for_each_profile(&comp, |p| {
                        if classifier.winner(p) == Player::One {
                            hit = Some(p.clone());
                            ControlFlow::Break(())
                        } else {
                            ControlFlow::Continue(())
                        }
                    });
                    hit
                })
                .clone();
            if let Some(p) = found {
                seeds.union_with(&comp);
                bad.push(p);
            }
        }
        // Backward closure of the seeds inside `within`.
        let mut lose = seeds.clone();
        let mut stack: Vec<_> = seeds.iter().collect();
        while let Some(x) = stack.pop() {
            for &(u, e) in g.pred(x) {
                if within.contains(u) && enabled.contains(e) && lose.insert(u) {
                    stack.push(u);
                }
            }
        }
        Analysis { lose, dead_ends, bad }
    }

    /// A lasso from `v` into a bad profile or a player-0 dead end.
    fn witness(&self, enabled: &EdgeSet, a: &Analysis, v: VertexId) -> Option<LassoWitness> {
        let filter = EdgeFilter { g: self.g, enabled };
        let mut targets = a.dead_ends.clone();
        for p in &a.bad {
            targets.union_with(&p.vertices);
        }
        let (_, hit) = filter.path_to(v, &targets)?;
        match a.bad.iter().find(|p| p.vertices.contains(hit)) {
            Some(p) => lasso_for(&filter, v, p),
            None => {
                let (mut stem, end) = filter.path_to(v, &a.dead_ends)?;
                stem.push(end);
                Some(LassoWitness { stem, cycle: vec![] })
            }
        }
    }
}

struct StrategySpace {
    p0: Vec<VertexId>,
    choices: Vec<Vec<(VertexId, usize)>>,
    base: EdgeSet,
    count: u64,
}

impl StrategySpace {
    fn new(g: &GameGraph, limits: &Limits) -> Result<Self> {
        let p0: Vec<VertexId> = g.vertices().filter(|&v| g.owner(v) == Player::Zero && g.out_degree(v) > 0).collect();
        let choices: Vec<Vec<(VertexId, usize)>> = p0.iter().map(|&v| g.succ(v).to_vec()).collect();
        let count = choices.iter().fold(1u64, |acc, c| acc.saturating_mul(c.len() as u64));
        if count > limits.max_strategies {
            return Err(Error::Bound {
                what: "positional player-0 strategies",
                bound: limits.max_strategies,
                actual: count,
            });
        }
        let mut base = g.empty_edge_set();
        for v in g.vertices().filter(|&v| g.owner(v) == Player::One) {
            for &(_, e) in g.succ(v) {
                base.insert(e);
            }
        }
        Ok(StrategySpace {
            p0,
            choices,
            base,
            count,
        })
    }

    fn decode(&self, mut idx: u64) -> (EdgeSet, Strategy) {
        let mut enabled = self.base.clone();
        let mut strat = Strategy::new();
        for (k, &v) in self.p0.iter().enumerate() {
            let c = &self.choices[k];
            let (w, e) = c[(idx % c.len() as u64) as usize];
            idx /= c.len() as u64;
            enabled.insert(e);
            strat.insert(v, w);
        }
        (enabled, strat)
    }
}

/// Winning regions by enumeration of positional player-0 strategies.
/// Reach objectives are converted to parity first.
pub fn oracle_solve(game: &AugmentedGame, limits: &Limits) -> Result<SolveResult> {
    let tail = as_tail_game(game)?;
    let g = &tail.graph;
    check_choice_edges(g, limits)?;
    let classifier = Classifier::new(&tail)?;
    let space = StrategySpace::new(g, limits)?;
    let all = g.all_vertices();

    let union_over = |range: std::ops::Range<u64>| {
        let mut an = Analyzer::new(g, &classifier);
        let mut w0 = g.empty_vertex_set();
        for idx in range {
            let (enabled, _) = space.decode(idx);
            let a = an.analyze(&enabled, &all);
            w0.union_with(&all.difference(&a.lose));
            if w0 == all {
                break;
            }
        }
        w0
    };
    let w0 = if limits.jobs > 1 {
        let chunk = space.count.div_ceil(limits.jobs as u64 * 4).max(1);
        let ranges: Vec<_> = (0..space.count).step_by(chunk as usize).map(|s| s..(s + chunk).min(space.count)).collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(limits.jobs)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        pool.install(|| {
            ranges
                .into_par_iter()
                .map(union_over)
                .reduce(|| g.empty_vertex_set(), |a, b| a.union(&b))
        })
    } else {
        union_over(0..space.count)
    };

    // A single strategy winning all of W0.
    let mut an = Analyzer::new(g, &classifier);
    for idx in 0..space.count {
        let (enabled, strat) = space.decode(idx);
        let a = an.analyze(&enabled, &all);
        if all.difference(&a.lose) == w0 {
            let mut witness = BTreeMap::new();
            for v in &a.lose {
                let l = an.witness(&enabled, &a, v).expect("losing vertex reaches a bad target");
                witness.insert(v, l);
            }
            let mut res = SolveResult::from_w0(&game.graph, w0, strat);
            fix_reach_targets(game, &mut res.strategy0);
            res.witness = Some(witness);
            return Ok(res);
        }
    }
    Err(Error::Precondition("no positional strategy wins the whole winning region".into()))
}

/// Targets are sinks in the parity view; map their moves back to real edges.
pub(crate) fn fix_reach_targets(game: &AugmentedGame, strat: &mut Strategy) {
    let g = &game.graph;
    for (&u, to) in strat.iter_mut() {
        if is_reach_target(game, u) && !g.has_edge(u, *to) {
            *to = g.succ(u)[0].0;
        }
    }
}

fn is_reach_target(game: &AugmentedGame, v: VertexId) -> bool {
    matches!(&game.objective, Objective::Reach(t) if t.contains(v))
}

/// Checks that `strat` wins from every vertex of `claim`.
pub fn verify_strategy(game: &AugmentedGame, strat: &Strategy, claim: &VertexSet, limits: &Limits) -> Result<Verdict> {
    let tail = as_tail_game(game)?;
    let g = &tail.graph;
    let classifier = Classifier::new(&tail)?;
    let mut enabled = g.empty_edge_set();
    let mut reach = claim.clone();
    let mut stack: Vec<_> = claim.iter().collect();
    while let Some(x) = stack.pop() {
        let moves: Vec<(VertexId, usize)> = if g.owner(x) == Player::One || is_reach_target(game, x) {
            g.succ(x).to_vec()
        } else if g.out_degree(x) == 0 {
            vec![]
        } else {
            let &to = strat
                .get(&x)
                .ok_or_else(|| Error::Precondition(format!("strategy has no move at {}", g.name(x))))?;
            let e = g
                .edge_id(x, to)
                .ok_or_else(|| Error::Precondition(format!("strategy move {} -> {} is not an edge", g.name(x), g.name(to))))?;
            vec![(to, e)]
        };
        for (y, e) in moves {
            enabled.insert(e);
            if reach.insert(y) {
                stack.push(y);
            }
        }
    }
    let filter = EdgeFilter { g, enabled: &enabled };
    let choice: usize = filter
        .nontrivial_sccs(&reach)
        .iter()
        .map(|c| filter.component_edges(&VertexSet::from_iter_in(g.vertex_count(), c.iter().copied())).1.len())
        .sum();
    if choice > limits.max_choice_edges {
        return Err(Error::Bound {
            what: "choice edges under the strategy",
            bound: limits.max_choice_edges as u64,
            actual: choice as u64,
        });
    }
    let mut an = Analyzer::new(g, &classifier);
    let a = an.analyze(&enabled, &reach);
    match claim.iter().find(|&v| a.lose.contains(v)) {
        None => Ok(Verdict::Ok),
        Some(v) => Ok(Verdict::Counterexample(an.witness(&enabled, &a, v).expect("losing vertex has a witness"))),
    }
}

/// Fills in a witness for every vertex of `query ∩ W1` that lacks one: a
/// lasso beating the result's own strategy, completed by first successors.
pub fn attach_witnesses(game: &AugmentedGame, res: &mut SolveResult, query: &VertexSet, limits: &Limits) -> Result<()> {
    let strat = res.total_strategy(&game.graph);
    let mut found = res.witness.take().unwrap_or_default();
    for v in query.intersection(&res.w1).iter() {
        if found.contains_key(&v) {
            continue;
        }
        let one = VertexSet::from_iter_in(game.graph.vertex_count(), [v]);
        match verify_strategy(game, &strat, &one, limits)? {
            Verdict::Counterexample(l) => {
                found.insert(v, l);
            }
            Verdict::Ok => {
                return Err(Error::Precondition(format!(
                    "{} is reported lost but the strategy wins there",
                    game.graph.name(v)
                )))
            }
        }
    }
    res.witness = Some(found);
    Ok(())
}

/// Does the lasso witness a player-1 win?
pub fn witness_is_losing(game: &AugmentedGame, l: &LassoWitness) -> Result<bool> {
    let tail = as_tail_game(game)?;
    let g = &tail.graph;
    if l.cycle.is_empty() {
        let last = *l.stem.last().ok_or_else(|| Error::Precondition("empty lasso".into()))?;
        return Ok(g.owner(last) == Player::Zero && g.out_degree(last) == 0);
    }
    let p = l
        .profile(g)
        .ok_or_else(|| Error::Precondition("lasso cycle uses a non-edge".into()))?;
    Ok(Classifier::new(&tail)?.winner(&p) == Player::One)
}
