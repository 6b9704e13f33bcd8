use crate::model::{attractor, Control, GameGraph, Player, Strategy, VertexSet, View};
use crate::result::SolveResult;

pub fn solve_reachability(g: &GameGraph, t: &VertexSet) -> SolveResult {
    let (a, strat) = attractor(g, Player::Zero, t);
    let mut res = SolveResult::from_w0(g, a, strat);
    // Targets are won already; any move will do.
    for v in t {
        if g.owner(v) == Player::Zero {
            if let Some(&(w, _)) = g.succ(v).first() {
                res.strategy0.entry(v).or_insert(w);
            }
        }
    }
    res
}

/// `◊A ∨ □S` on a view. `A` acts as one merged safe sink: its vertices never
/// enter player 1's attractor to the unsafe set, and edges into `A` count
/// as safe moves. Player 0 keeps the play inside the returned region.
pub(crate) fn reach_or_safe_in(view: &View<'_>, a: &VertexSet, s: &VertexSet) -> (VertexSet, Strategy) {
    let a = a.intersection(view.region);
    let mut unsafe_set = view.region.difference(s);
    unsafe_set.difference_with(&a);
    let (bad, _) = view.attractor(Player::One, &unsafe_set, Some(&a));
    let w = view.region.difference(&bad);
    let mut strat = Strategy::new();
    for u in &w {
        if !a.contains(u) && view.g.owner(u) == Player::Zero {
            if let Some(to) = view.succ(u).find(|&x| w.contains(x)) {
                strat.insert(u, to);
            }
        }
    }
    (w, strat)
}

pub fn solve_reach_or_safe(g: &GameGraph, a: &VertexSet, s: &VertexSet) -> SolveResult {
    let all = g.all_vertices();
    let (w, strat) = reach_or_safe_in(&View::new(g, &all), a, s);
    SolveResult::from_w0(g, w, strat)
}

/// `◊A ∨ □S` in `G|_C`.
pub fn solve_reach_or_safe_controlled(g: &GameGraph, c: &Control, a: &VertexSet, s: &VertexSet) -> SolveResult {
    let all = g.all_vertices();
    let (w, strat) = reach_or_safe_in(&View::new(g, &all).with_control(c), a, s);
    SolveResult::from_w0(g, w, strat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::graph::tests::grant_graph;

    #[test]
    fn grant_reachability() {
        let g = grant_graph();
        let r = solve_reachability(&g, &VertexSet::from_iter_in(3, [2]));
        assert_eq!(r.w0, VertexSet::from_iter_in(3, [2]));
        assert!(r.w1.contains(0) && r.w1.contains(1));
        let all = g.all_vertices();
        assert_eq!(solve_reachability(&g, &all).w0, all);
    }

    #[test]
    fn reach_or_safe_trivia() {
        let g = grant_graph();
        let all = g.all_vertices();
        let none = g.empty_vertex_set();
        assert_eq!(solve_reach_or_safe(&g, &all, &none).w0, all);
        assert_eq!(solve_reach_or_safe(&g, &none, &all).w0, all);
        // Staying in {w} is possible through the self-loop.
        let w = VertexSet::from_iter_in(3, [0]);
        let r = solve_reach_or_safe(&g, &none, &w);
        assert_eq!(r.w0, w);
        assert_eq!(r.strategy0.get(&0), Some(&0));
    }
}
