use crate::classic::zielonka::Zielonka;
use crate::classic::Attract0;
use crate::error::{Error, Result};
use crate::model::{as_tail_game, Assumption, AugmentedGame, GameGraph, GraphBuilder, Player, View};
use crate::result::SolveResult;

/// Solves a parity (or reach) game with co-live edges. Also returns the
/// number of rounds, which never exceeds `|V|`.
pub fn solve_colive(game: &AugmentedGame) -> Result<(SolveResult, usize)> {
    let tail = as_tail_game(game)?;
    let ec = match &tail.assumption {
        Assumption::CoLiveEdges(ec) => ec.clone(),
        Assumption::None => vec![],
        a => return Err(Error::Unsupported(format!("co-live solver cannot handle {} assumptions", a.kind()))),
    };
    let g = &tail.graph;
    let prio = tail.priorities()?;
    let reduced = without_edges(g, &ec);
    let mut region = g.all_vertices();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut z = Zielonka::new(&reduced, prio, Attract0::Plain);
        let (w0, sigma) = z.solve_with_dead_ends(&region);
        let w1 = region.difference(&w0);
        let (a, _) = View::new(g, &region).attractor(Player::One, &w1, None);
        let b = region.difference(&a);
        if b.is_empty() || b == region {
            let mut res = SolveResult::from_w0(&game.graph, b, sigma);
            crate::oracle::fix_reach_targets(game, &mut res.strategy0);
            return Ok((res, rounds));
        }
        region = b;
    }
}

fn without_edges(g: &GameGraph, drop: &[(usize, usize)]) -> GameGraph {
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(g.name(v), g.owner(v)).expect("names are unique");
    }
    for &e in g.edges() {
        if !drop.contains(&e) {
            b.add_edge(e.0, e.1);
        }
    }
    b.build(true).expect("dead ends allowed")
}
