//! Baseline solvers: reachability, `◊A ∨ □S`, Zielonka and the
//! quasi-polynomial recursion with precision parameters.
//!
//! The parity solvers are shared with their persistent-group variants; the
//! only difference is how player 0 attracts (see [`Attract0`]).

pub mod qsolve;
pub mod reach;
pub mod zielonka;

pub use qsolve::{solve_parity_parys, QStats};
pub use reach::{solve_reach_or_safe, solve_reach_or_safe_controlled, solve_reachability};
pub use zielonka::solve_parity_zielonka;

use crate::augmented::attr_pers::attr_pers_in;
use crate::model::{restrict_pers, GameGraph, PersistentGroup, Player, Strategy, VertexSet, View};

/// Player 0's attractor: plain, or helped by persistent groups, which are
/// restricted to the current subgame on every call.
#[derive(Clone, Copy)]
pub(crate) enum Attract0<'a> {
    Plain,
    Pers(&'a [PersistentGroup]),
}

impl Attract0<'_> {
    pub(crate) fn attract(&self, g: &GameGraph, region: &VertexSet, target: &VertexSet) -> (VertexSet, Strategy) {
        match self {
            Attract0::Plain | Attract0::Pers([]) => View::new(g, region).attractor(Player::Zero, target, None),
            Attract0::Pers(groups) => {
                let local = restrict_pers(groups, g, region);
                attr_pers_in(g, region, target, &local).0
            }
        }
    }

    /// Where player 0 forces some group to be violated, with a strategy.
    pub(crate) fn violation(&self, g: &GameGraph, region: &VertexSet) -> (VertexSet, Strategy) {
        match self {
            Attract0::Pers(groups) if !groups.is_empty() => {
                let local = restrict_pers(groups, g, region);
                attr_pers_in(g, region, &VertexSet::empty(g.vertex_count()), &local).0
            }
            _ => (VertexSet::empty(g.vertex_count()), Strategy::new()),
        }
    }

    pub(crate) fn attract_for(
        &self,
        p: Player,
        g: &GameGraph,
        region: &VertexSet,
        target: &VertexSet,
    ) -> (VertexSet, Strategy) {
        match p {
            Player::Zero => self.attract(g, region, target),
            Player::One => View::new(g, region).attractor(Player::One, target, None),
        }
    }
}

/// Strips dead ends: player 1 attracts to player-0 dead ends, then player 0
/// attracts to player-1 dead ends in the rest. Returns the total remainder,
/// player 0's won part and its strategy.
pub(crate) fn peel_dead_ends(g: &GameGraph, region: &VertexSet, a0: Attract0<'_>) -> (VertexSet, VertexSet, Strategy) {
    let stuck = |r: &VertexSet, p: Player| {
        let view = View::new(g, r);
        VertexSet::from_iter_in(
            g.vertex_count(),
            r.iter().filter(|&v| g.owner(v) == p && view.succ(v).next().is_none()),
        )
    };
    let d1 = View::new(g, region).attractor(Player::One, &stuck(region, Player::Zero), None).0;
    let rest = region.difference(&d1);
    let (d0, strat) = a0.attract(g, &rest, &stuck(&rest, Player::One));
    (rest.difference(&d0), d0, strat)
}

/// `l = 2⌊log2 n⌋` and `n^l·(h+l)^l`, saturating.
pub fn qsolve_bound(n: usize, h: i64) -> (u32, u128) {
    let l = if n <= 1 { 0 } else { 2 * (usize::BITS - 1 - n.leading_zeros()) };
    let pow = |b: u128| (0..l).fold(1u128, |acc, _| acc.saturating_mul(b));
    let bound = pow(n as u128).saturating_mul(pow((h.max(0) as u128) + l as u128));
    (l, bound)
}
