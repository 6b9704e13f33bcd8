use crate::classic::qsolve::{qsolve_total, QStats};
use crate::classic::zielonka::Zielonka;
use crate::classic::Attract0;
use crate::error::{Error, Result};
use crate::model::{as_tail_game, split_self_loops, Assumption, AugmentedGame, GameGraph, PersistentGroup};
use crate::result::SolveResult;

fn groups_of(game: &AugmentedGame) -> Result<&[PersistentGroup]> {
    match &game.assumption {
        Assumption::Persistent(gs) => Ok(gs),
        Assumption::None => Ok(&[]),
        a => Err(Error::Unsupported(format!("persistent-group solver cannot handle {} assumptions", a.kind()))),
    }
}

/// Zielonka's recursion with player 0 attracting through [`attr_pers`](super::attr_pers).
pub fn zielonka_pers(g: &GameGraph, priorities: &[u32], groups: &[PersistentGroup]) -> (SolveResult, usize) {
    let mut z = Zielonka::new(g, priorities, Attract0::Pers(groups));
    let (w0, s) = z.solve_with_dead_ends(&g.all_vertices());
    (SolveResult::from_w0(g, w0, s), z.calls)
}

/// The precision recursion with persistent groups. Rejects self-loops;
/// [`solve_qsolve_pers`] splits them first.
pub fn qsolve_pers(g: &GameGraph, priorities: &[u32], groups: &[PersistentGroup]) -> Result<(SolveResult, QStats)> {
    qsolve_total(g, priorities, Attract0::Pers(groups))
}

pub fn solve_zielonka_pers(game: &AugmentedGame) -> Result<SolveResult> {
    let tail = as_tail_game(game)?;
    let (mut res, _) = zielonka_pers(&tail.graph, tail.priorities()?, groups_of(&tail)?);
    res = SolveResult::from_w0(&game.graph, res.w0, res.strategy0);
    crate::oracle::fix_reach_targets(game, &mut res.strategy0);
    Ok(res)
}

/// Splits self-loops, runs [`qsolve_pers`] and projects back.
pub fn solve_qsolve_pers(game: &AugmentedGame) -> Result<(SolveResult, QStats)> {
    let tail = as_tail_game(game)?;
    let split = split_self_loops(&tail);
    let sg = &split.game;
    let (res, stats) = qsolve_pers(&sg.graph, sg.priorities()?, groups_of(sg)?)?;
    let mut out = SolveResult::from_w0(
        &game.graph,
        split.project_set(&res.w0),
        split.project_strategy(&res.strategy0),
    );
    crate::oracle::fix_reach_targets(game, &mut out.strategy0);
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{GraphBuilder, Objective, Player, VertexSet};

    /// `a ↔ c` with odd top priority; the group covers both vertices and has
    /// no target, so every play breaks the assumption.
    fn vacuous() -> AugmentedGame {
        let mut b = GraphBuilder::new();
        let a = b.add_vertex("a", Player::One).unwrap();
        let c = b.add_vertex("c", Player::Zero).unwrap();
        b.add_edge(a, c);
        b.add_edge(c, a);
        let grp = PersistentGroup {
            name: "G".into(),
            s: VertexSet::full(2),
            c: vec![],
            t: VertexSet::empty(2),
        };
        AugmentedGame::new(b.build(false).unwrap(), Objective::Parity(vec![1, 0]), Assumption::Persistent(vec![grp]))
            .unwrap()
    }

    #[test]
    fn forced_violation_is_won() {
        let game = vacuous();
        assert_eq!(solve_zielonka_pers(&game).unwrap().w0, game.graph.all_vertices());
        assert_eq!(solve_qsolve_pers(&game).unwrap().0.w0, game.graph.all_vertices());
    }

    #[test]
    fn no_groups_is_plain_parity() {
        let game = vacuous().with_assumption(Assumption::None);
        assert!(solve_zielonka_pers(&game).unwrap().w0.is_empty());
        assert!(solve_qsolve_pers(&game).unwrap().0.w0.is_empty());
    }
}
