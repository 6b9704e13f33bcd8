use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{attr_pers, solve_colive, solve_qsolve_pers, solve_zielonka_pers};
use crate::classic::{solve_parity_zielonka, solve_reachability, QStats};
use crate::error::{Error, Result};
use crate::model::{as_tail_game, Assumption, AugmentedGame, LassoWitness, Objective, Player, Strategy, VertexSet};
use crate::oracle::{oracle_solve, Limits};
use crate::reductions::{cnf_to_live_edges, singleton_groups_to_live_edges, to_rabin};
use crate::result::SolveResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Auto,
    Zielonka,
    Parys,
    Colive,
    AttrPers,
    ZielonkaPers,
    QsolvePers,
    Oracle,
    RabinOracle,
}

impl Algo {
    pub const ALL: [Algo; 9] = [
        Algo::Auto,
        Algo::Zielonka,
        Algo::Parys,
        Algo::Colive,
        Algo::AttrPers,
        Algo::ZielonkaPers,
        Algo::QsolvePers,
        Algo::Oracle,
        Algo::RabinOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::Zielonka => "zielonka",
            Algo::Parys => "parys",
            Algo::Colive => "colive",
            Algo::AttrPers => "attr-pers",
            Algo::ZielonkaPers => "zielonka-pers",
            Algo::QsolvePers => "qsolve-pers",
            Algo::Oracle => "oracle",
            Algo::RabinOracle => "rabin-oracle",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Work counters of the pipeline that ran, where it has any.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub colive_rounds: Option<usize>,
    pub qsolve: Option<QStats>,
}

#[derive(Clone, Debug)]
pub struct Dispatched {
    pub result: SolveResult,
    /// Stages joined by ` -> `, e.g. `live-groups -> live-edges -> oracle`.
    pub pipeline: String,
    pub counters: Counters,
}

fn done(result: SolveResult, pipeline: &str) -> Result<Dispatched> {
    Ok(Dispatched {
        result,
        pipeline: pipeline.into(),
        counters: Counters::default(),
    })
}

fn incompatible(algo: Algo, game: &AugmentedGame) -> Error {
    Error::Unsupported(format!(
        "{algo} cannot solve a {} game with {} assumptions",
        game.objective.kind(),
        game.assumption.kind()
    ))
}

/// Drops every vertex at or past `n`; gadget vertices sit between two
/// original vertices joined by a real edge.
fn project_witnesses(w: Option<BTreeMap<usize, LassoWitness>>, n: usize) -> Option<BTreeMap<usize, LassoWitness>> {
    w.map(|m| {
        m.into_iter()
            .filter(|(v, _)| *v < n)
            .map(|(v, l)| {
                let keep = |xs: Vec<usize>| xs.into_iter().filter(|&x| x < n).collect();
                (v, LassoWitness { stem: keep(l.stem), cycle: keep(l.cycle) })
            })
            .collect()
    })
}

fn projected(
    game: &AugmentedGame,
    inner: SolveResult,
    n: usize,
    set: impl Fn(&VertexSet) -> VertexSet,
    strat: impl Fn(&Strategy) -> Strategy,
) -> SolveResult {
    let mut res = SolveResult::from_w0(&game.graph, set(&inner.w0), strat(&inner.strategy0));
    res.witness = project_witnesses(inner.witness, n);
    res
}

pub fn solve_augmented(game: &AugmentedGame, algo: Algo, limits: &Limits) -> Result<Dispatched> {
    let reach = matches!(game.objective, Objective::Reach(_));
    let parity_like = !matches!(game.objective, Objective::Rabin(_));
    let a = &game.assumption;
    match algo {
        Algo::Auto => match a {
            Assumption::None if reach => {
                let Objective::Reach(t) = &game.objective else { unreachable!() };
                done(solve_reachability(&game.graph, t), "reachability")
            }
            Assumption::None if parity_like => solve_augmented(game, Algo::Zielonka, limits),
            Assumption::CoLiveEdges(_) if parity_like => solve_augmented(game, Algo::Colive, limits),
            Assumption::Persistent(_) if reach => solve_augmented(game, Algo::AttrPers, limits),
            Assumption::Persistent(_) if parity_like => solve_augmented(game, Algo::QsolvePers, limits),
            Assumption::LiveGroups(gs) if gs.iter().all(|h| h.sources().len() <= 1) => {
                let ext = singleton_groups_to_live_edges(game)?;
                let inner = oracle_solve(&ext.game, limits)?;
                let n = ext.original_count;
                let res = projected(game, inner, n, |s| ext.project_set(s), |s| ext.project_strategy(s));
                done(res, "live-groups -> live-edges -> oracle")
            }
            Assumption::LiveCnf(_) => {
                let ext = cnf_to_live_edges(game)?;
                let inner = oracle_solve(&ext.game, limits)?;
                let n = ext.original_count;
                let res = projected(game, inner, n, |s| ext.project_set(s), |s| ext.project_strategy(s));
                done(res, "cnf -> live-edges -> oracle")
            }
            _ => solve_augmented(game, Algo::Oracle, limits),
        },
        Algo::Zielonka => {
            if !matches!(a, Assumption::None) || !parity_like {
                return Err(incompatible(algo, game));
            }
            let tail = as_tail_game(game)?;
            let mut res = solve_parity_zielonka(&tail.graph, tail.priorities()?);
            res = SolveResult::from_w0(&game.graph, res.w0, res.strategy0);
            crate::oracle::fix_reach_targets(game, &mut res.strategy0);
            done(res, "zielonka")
        }
        Algo::Parys | Algo::QsolvePers => {
            let ok = match a {
                Assumption::None => true,
                Assumption::Persistent(_) => algo == Algo::QsolvePers,
                _ => false,
            };
            if !ok || !parity_like {
                return Err(incompatible(algo, game));
            }
            let (res, stats) = solve_qsolve_pers(game)?;
            Ok(Dispatched {
                result: res,
                pipeline: algo.name().into(),
                counters: Counters {
                    qsolve: Some(stats),
                    ..Counters::default()
                },
            })
        }
        Algo::Colive => {
            if !matches!(a, Assumption::None | Assumption::CoLiveEdges(_)) || !parity_like {
                return Err(incompatible(algo, game));
            }
            let (res, rounds) = solve_colive(game)?;
            Ok(Dispatched {
                result: res,
                pipeline: "colive".into(),
                counters: Counters {
                    colive_rounds: Some(rounds),
                    ..Counters::default()
                },
            })
        }
        Algo::AttrPers => {
            let (Objective::Reach(t), Assumption::None | Assumption::Persistent(_)) = (&game.objective, a) else {
                return Err(incompatible(algo, game));
            };
            let groups = match a {
                Assumption::Persistent(gs) => gs.as_slice(),
                _ => &[],
            };
            let (w, mut s) = attr_pers(&game.graph, t, groups);
            // Targets are won on arrival; any move will do.
            for v in t.iter().filter(|&v| game.graph.owner(v) == Player::Zero) {
                if let Some(&(to, _)) = game.graph.succ(v).first() {
                    s.insert(v, to);
                }
            }
            done(SolveResult::from_w0(&game.graph, w, s), "attr-pers")
        }
        Algo::ZielonkaPers => {
            if !matches!(a, Assumption::None | Assumption::Persistent(_)) || !parity_like {
                return Err(incompatible(algo, game));
            }
            done(solve_zielonka_pers(game)?, "zielonka-pers")
        }
        Algo::Oracle => done(oracle_solve(game, limits)?, "oracle"),
        Algo::RabinOracle => {
            if !parity_like {
                return Err(incompatible(algo, game));
            }
            let enc = to_rabin(game)?;
            let inner = oracle_solve(&enc.game, limits)?;
            let n = enc.original_count;
            let mut res = projected(game, inner, n, |s| enc.project_set(s), |s| enc.project_strategy(s));
            crate::oracle::fix_reach_targets(game, &mut res.strategy0);
            done(res, "rabin -> oracle")
        }
    }
}
