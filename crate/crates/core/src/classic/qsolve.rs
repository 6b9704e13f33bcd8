use super::zielonka::Zielonka;
use super::{peel_dead_ends, qsolve_bound, Attract0};
use crate::error::{Error, Result};
use crate::model::{GameGraph, Player, VertexSet};
use crate::result::SolveResult;

/// Recursion statistics of one top-level run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QStats {
    /// Nontrivial calls (non-empty game, precision above 1).
    pub calls: u64,
    pub n: usize,
    pub h: i64,
    pub l: u32,
    pub bound: u128,
}

impl QStats {
    pub fn within_bound(&self) -> bool {
        (self.calls as u128) <= self.bound
    }
}

pub(crate) struct QSolver<'a> {
    g: &'a GameGraph,
    prio: &'a [u32],
    a0: Attract0<'a>,
    pub calls: u64,
}

impl<'a> QSolver<'a> {
    pub(crate) fn new(g: &'a GameGraph, prio: &'a [u32], a0: Attract0<'a>) -> Self {
        QSolver { g, prio, a0, calls: 0 }
    }

    /// One pass: attract to the top priority, solve the rest for the
    /// opponent at precision `p_sub`, strip what the opponent wins.
    fn step(&mut self, i: Player, game: &mut VertexSet, h: i64, p_sub: u64, p_i: u64) -> bool {
        let g = self.g;
        let top = VertexSet::from_iter_in(
            g.vertex_count(),
            game.iter().filter(|&v| h >= 0 && self.prio[v] as i64 == h),
        );
        let (a, _) = self.a0.attract_for(i, g, game, &top);
        let rest = game.difference(&a);
        let w = self.solve(i.opponent(), &rest, h - 1, p_sub, p_i);
        if w.is_empty() {
            return false;
        }
        let (b, _) = self.a0.attract_for(i.opponent(), g, game, &w);
        game.difference_with(&b);
        true
    }

    /// Region of `game` won by player `i`, where `i` wins every dominion of
    /// size at most `p_i` and the opponent every dominion up to `p_opp`.
    pub(crate) fn solve(&mut self, i: Player, game: &VertexSet, h: i64, p_i: u64, p_opp: u64) -> VertexSet {
        if game.is_empty() || p_i <= 1 {
            return VertexSet::empty(game.universe());
        }
        self.calls += 1;
        let mut g = game.clone();
        loop {
            while self.step(i, &mut g, h, p_opp / 2, p_i) {}
            if self.step(i, &mut g, h, p_opp, p_i) {
                while self.step(i, &mut g, h, p_opp / 2, p_i) {}
            }
            // What is left belongs to player 1 only where player 0 cannot
            // force a violation; otherwise strip that part and go again.
            if i == Player::One {
                let (d, _) = self.a0.violation(self.g, &g);
                if !d.is_empty() {
                    g.difference_with(&d);
                    continue;
                }
            }
            return g;
        }
    }
}

/// Top even priority bound: the largest priority rounded up to even.
pub(crate) fn top_even(prio: &[u32], region: &VertexSet) -> i64 {
    let d = region.iter().map(|v| prio[v]).max().unwrap_or(0) as i64;
    d + d % 2
}

/// Dead ends peeled, then `QSolve_0` on the rest; the strategy comes from
/// Zielonka on the winning region, which must confirm all of it.
pub(crate) fn qsolve_total(g: &GameGraph, prio: &[u32], a0: Attract0<'_>) -> Result<(SolveResult, QStats)> {
    if let Some(v) = g.self_loops().next() {
        return Err(Error::SelfLoop(g.name(v).to_string()));
    }
    let (core, d0, mut strat) = peel_dead_ends(g, &g.all_vertices(), a0);
    let n = core.len();
    let h = top_even(prio, &core);
    let mut q = QSolver::new(g, prio, a0);
    let w = q.solve(Player::Zero, &core, h, n as u64, n as u64);
    let mut z = Zielonka::new(g, prio, a0);
    let (confirmed, sigma) = z.solve(&w);
    assert_eq!(confirmed, w, "strategy pass must confirm the whole winning region");
    strat.extend(sigma);
    let (l, bound) = qsolve_bound(n, h);
    let stats = QStats {
        calls: q.calls,
        n,
        h,
        l,
        bound,
    };
    Ok((SolveResult::from_w0(g, d0.union(&w), strat), stats))
}

/// Parity game solved by the precision recursion. Rejects self-loops.
pub fn solve_parity_parys(g: &GameGraph, priorities: &[u32]) -> Result<(SolveResult, QStats)> {
    qsolve_total(g, priorities, Attract0::Plain)
}

/// `QSolve_0(G, h, p0, p1)` on the whole graph, without dead-end handling.
pub fn qsolve_region(
    g: &GameGraph,
    priorities: &[u32],
    groups: &[crate::model::PersistentGroup],
    h: i64,
    p0: u64,
    p1: u64,
) -> Result<(VertexSet, u64)> {
    if let Some(v) = g.self_loops().next() {
        return Err(Error::SelfLoop(g.name(v).to_string()));
    }
    let mut q = QSolver::new(g, priorities, Attract0::Pers(groups));
    let w = q.solve(Player::Zero, &g.all_vertices(), h, p0, p1);
    Ok((w, q.calls))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{GraphBuilder, Player};

    fn two_cycle(p: [u32; 2]) -> (GameGraph, Vec<u32>) {
        let mut b = GraphBuilder::new();
        b.add_vertex("a", Player::Zero).unwrap();
        b.add_vertex("b", Player::One).unwrap();
        b.add_edge(0, 1);
        b.add_edge(1, 0);
        (b.build(false).unwrap(), p.to_vec())
    }

    #[test]
    fn even_two_cycle() {
        let (g, p) = two_cycle([2, 1]);
        let (r, stats) = solve_parity_parys(&g, &p).unwrap();
        assert_eq!(r.w0, g.all_vertices());
        assert!(stats.within_bound());
        assert!(stats.calls <= 4);
    }

    #[test]
    fn odd_two_cycle() {
        let (g, p) = two_cycle([1, 3]);
        assert!(solve_parity_parys(&g, &p).unwrap().0.w0.is_empty());
    }

    #[test]
    fn self_loop_rejected() {
        let mut b = GraphBuilder::new();
        b.add_vertex("a", Player::Zero).unwrap();
        b.add_edge(0, 0);
        let g = b.build(false).unwrap();
        assert!(matches!(solve_parity_parys(&g, &[0]), Err(Error::SelfLoop(_))));
    }

    #[test]
    fn bound_formula() {
        assert_eq!(qsolve_bound(1, 4), (0, 1));
        assert_eq!(qsolve_bound(4, 2), (4, 256 * 1296));
    }
}
