#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use augame::io::{parse_game, GameFile};
use augame::model::{Assumption, AugmentedGame, LassoWitness, Objective, Player};
use augame::oracle::{verify_strategy, Limits, Verdict};
use augame::SolveResult;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture(name: &str) -> GameFile {
    parse_game(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Winner of a lasso play, evaluated directly on the cycle of the original
/// game. Shares no code with the library's classifier.
pub fn lasso_winner(game: &AugmentedGame, l: &LassoWitness) -> Player {
    let g = &game.graph;
    let visited = || l.stem.iter().chain(&l.cycle).copied();
    if let Objective::Reach(t) = &game.objective {
        if visited().any(|v| t.contains(v)) {
            return Player::Zero;
        }
    }
    if l.cycle.is_empty() {
        let last = *l.stem.last().expect("non-empty lasso");
        assert_eq!(g.out_degree(last), 0, "finite lasso must end in a dead end");
        return g.owner(last).opponent();
    }
    let cyc = &l.cycle;
    let inf: BTreeSet<usize> = cyc.iter().copied().collect();
    let steps: BTreeSet<(usize, usize)> = (0..cyc.len()).map(|i| (cyc[i], cyc[(i + 1) % cyc.len()])).collect();

    let phi = match &game.objective {
        Objective::Reach(_) => false,
        Objective::Parity(p) => inf.iter().map(|&v| p[v]).max().unwrap() % 2 == 0,
        Objective::Rabin(pairs) => pairs
            .iter()
            .any(|p| inf.iter().any(|&v| p.good.contains(v)) && !inf.iter().any(|&v| p.bad.contains(v))),
    };
    let psi = match &game.assumption {
        Assumption::None => true,
        Assumption::LiveEdges(es) => es.iter().all(|&(u, v)| !inf.contains(&u) || steps.contains(&(u, v))),
        Assumption::CoLiveEdges(es) => es.iter().all(|e| !steps.contains(e)),
        Assumption::LiveGroups(gs) => gs.iter().all(|h| {
            !h.edges.iter().any(|e| inf.contains(&e.0)) || h.edges.iter().any(|e| steps.contains(e))
        }),
        Assumption::Persistent(gs) => gs.iter().all(|p| {
            let sources: BTreeSet<usize> = p.c.iter().map(|e| e.0).collect();
            let stuck = cyc.iter().all(|&v| p.s.contains(v) && !p.t.contains(v))
                && steps.iter().all(|&(u, v)| !sources.contains(&u) || p.c.contains(&(u, v)));
            !stuck
        }),
        Assumption::LiveCnf(m) => m
            .iter()
            .all(|(v, cls)| !inf.contains(v) || cls.iter().all(|c| c.iter().any(|e| steps.contains(e)))),
    };
    if !psi || phi {
        Player::Zero
    } else {
        Player::One
    }
}

/// Shape, strategy and witness checks on a solver result for `game`.
pub fn certify(game: &AugmentedGame, res: &SolveResult, limits: &Limits) -> Result<(), String> {
    let g = &game.graph;
    res.check_shape(g)?;
    match verify_strategy(game, &res.strategy0, &res.w0, limits) {
        Ok(Verdict::Ok) => {}
        Ok(Verdict::Counterexample(l)) => return Err(format!("strategy loses along {l:?}")),
        Err(e) => return Err(format!("verify_strategy: {e}")),
    }
    if let Some(ws) = &res.witness {
        for v in &res.w1 {
            let l = ws.get(&v).ok_or_else(|| format!("no witness for {}", g.name(v)))?;
            if l.start() != Some(v) {
                return Err(format!("witness for {} starts elsewhere", g.name(v)));
            }
            if !l.is_legal(g, Some(&res.strategy0)) {
                return Err(format!("witness for {} is not a legal play", g.name(v)));
            }
            if lasso_winner(game, l) != Player::One {
                return Err(format!("witness for {} is won by player 0", g.name(v)));
            }
        }
    }
    Ok(())
}

/// Vertices where two results disagree, by name.
pub fn mismatch(game: &AugmentedGame, a: &SolveResult, b: &SolveResult) -> Vec<String> {
    game.graph
        .vertices()
        .filter(|&v| a.w0.contains(v) != b.w0.contains(v))
        .map(|v| game.graph.name(v).to_string())
        .collect()
}
