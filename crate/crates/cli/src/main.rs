use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use augame::augmented::{solve_augmented, Algo};
use augame::generate::{random_game_seeded, AssumptionClass, GenParams, ObjectiveKind};
use augame::io::{parse_dimacs, parse_game_with, parse_strategy, serialize_game, serialize_result, GameFile, ParseError};
use augame::model::{reach_to_parity, Assumption, AugmentedGame, Player, VertexSet};
use augame::oracle::{attach_witnesses, verify_strategy, Limits, Verdict};
use augame::reductions::{
    cnf_to_live_edges, decompose, make_alternating, product, sat_to_game, singleton_groups_to_live_edges,
    to_live_groups, to_rabin,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "augame", version, about = "Solve games on graphs under progress assumptions")]
struct Cli {
    /// Accept assumption edges leaving player-0 vertices.
    #[arg(long, global = true)]
    allow_p0_assumption_edges: bool,
    /// Worker threads for the exhaustive oracle.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Query {
    /// Exit with 0 or 1 according to the winner of this vertex.
    #[arg(long)]
    from: Option<String>,
    /// Also write the player-0 strategy to this file.
    #[arg(long)]
    strategy_out: Option<PathBuf>,
    /// Print a witness lasso for each vertex player 1 wins (only `--from` if given).
    #[arg(long)]
    witness: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Rabin,
    Parity,
    LiveEdges,
    LiveGroups,
    Alternating,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a game and print winners and a player-0 strategy.
    Solve {
        file: String,
        #[arg(long, default_value = "auto", value_parser = parse_algo)]
        algo: Algo,
        #[command(flatten)]
        query: Query,
    },
    /// Solve by exhaustive enumeration of positional strategies.
    Oracle {
        file: String,
        #[command(flatten)]
        query: Query,
    },
    /// Translate a game into another class.
    Reduce {
        file: String,
        #[arg(long = "to", value_enum)]
        to: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a game from a DIMACS formula or at random.
    Gen {
        /// DIMACS CNF file with at most three literals per clause.
        #[arg(long = "3sat", conflicts_with = "random")]
        sat: Option<String>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 12)]
        edges: usize,
        #[arg(long, default_value = "none", value_parser = parse_class)]
        assumption: AssumptionClass,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest priority; 0 gives a reachability objective.
        #[arg(long, default_value_t = 3)]
        priorities: u32,
        #[arg(long)]
        alternating: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Product of a labeled specification and a labeled plant with live edges.
    Product {
        spec: String,
        plant: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split an alternating live-group game into a specification and a hub plant.
    Decompose {
        file: String,
        #[arg(long)]
        spec_out: PathBuf,
        #[arg(long)]
        plant_out: PathBuf,
    },
    /// Check that a strategy wins from every claimed vertex.
    Verify {
        file: String,
        #[arg(long)]
        strategy: String,
        #[arg(long, num_args = 1.., required = true)]
        claim: Vec<String>,
    },
    /// Report the pipeline and its recursion counters.
    Stats {
        file: String,
        #[arg(long, default_value = "auto", value_parser = parse_algo)]
        algo: Algo,
    },
}

fn parse_algo(s: &str) -> Result<Algo, String> {
    s.parse()
}

fn parse_class(s: &str) -> Result<AssumptionClass, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Bound(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<augame::Error> for Failure {
    fn from(e: augame::Error) -> Self {
        match e {
            augame::Error::Bound { .. } => Failure::Bound(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

struct Ctx {
    p0_edges: bool,
    limits: Limits,
}

impl Ctx {
    fn file(&self, path: &str) -> Result<GameFile, Failure> {
        Ok(parse_game_with(&read_input(path)?, self.p0_edges)?)
    }

    fn game(&self, path: &str) -> Result<(GameFile, AugmentedGame), Failure> {
        let f = self.file(path)?;
        let g = f.game()?;
        Ok((f, g))
    }
}

fn vertex(game: &AugmentedGame, name: &str) -> Result<usize, Failure> {
    game.graph
        .id(name)
        .ok_or_else(|| Failure::Usage(format!("unknown vertex `{name}`")))
}

fn solve(ctx: &Ctx, file: &str, algo: Algo, q: &Query) -> Outcome {
    let (_, game) = ctx.game(file)?;
    let from = q.from.as_deref().map(|v| vertex(&game, v)).transpose()?;
    let mut d = solve_augmented(&game, algo, &ctx.limits)?;
    if q.witness {
        let n = game.graph.vertex_count();
        let query = match from {
            Some(v) => VertexSet::from_iter_in(n, [v]),
            None => game.graph.all_vertices(),
        };
        attach_witnesses(&game, &mut d.result, &query, &ctx.limits)?;
    }
    let text = serialize_result(&game.graph, &d.result, q.witness);
    emit(None, &text)?;
    if let Some(p) = &q.strategy_out {
        let strat: String = d
            .result
            .strategy0
            .iter()
            .map(|(&u, &v)| format!("strategy {} -> {}\n", game.graph.name(u), game.graph.name(v)))
            .collect();
        emit(Some(p), &strat)?;
    }
    Ok(match from.map(|v| d.result.winner(v)) {
        Some(Player::One) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}

fn reduce(ctx: &Ctx, file: &str, to: Target, out: Option<&Path>) -> Outcome {
    let (f, game) = ctx.game(file)?;
    let name = f.name.as_deref();
    let reduced = match to {
        Target::Rabin => to_rabin(&game)?.game,
        Target::Parity => match game.objective {
            augame::model::Objective::Reach(_) => reach_to_parity(&game)?,
            _ => game,
        },
        Target::LiveEdges => match &game.assumption {
            Assumption::LiveGroups(_) => singleton_groups_to_live_edges(&game)?.game,
            Assumption::LiveCnf(_) => cnf_to_live_edges(&game)?.game,
            Assumption::None | Assumption::LiveEdges(_) => game,
            a => return Err(Failure::Usage(format!("{} assumptions have no live-edge form", a.kind()))),
        },
        Target::LiveGroups => match &game.assumption {
            Assumption::None | Assumption::LiveEdges(_) | Assumption::LiveCnf(_) | Assumption::LiveGroups(_) => {
                to_live_groups(&game)
            }
            a => return Err(Failure::Usage(format!("{} assumptions have no live-group form", a.kind()))),
        },
        Target::Alternating => make_alternating(&game).game,
    };
    emit(out, &serialize_game(&GameFile::from_game(name, &reduced)))?;
    Ok(ExitCode::SUCCESS)
}

fn gen(
    sat: Option<&str>,
    random: bool,
    params: GenParams,
    seed: u64,
    out: Option<&Path>,
) -> Outcome {
    let text = match (sat, random) {
        (Some(path), _) => {
            let f = parse_dimacs(&read_input(path)?)?;
            serialize_game(&GameFile::from_game(Some("sat"), &sat_to_game(&f)?))
        }
        (None, true) => {
            let game = random_game_seeded(&params, seed);
            serialize_game(&GameFile::from_game(Some(&format!("random-{seed}")), &game))
        }
        (None, false) => return Err(Failure::Usage("gen needs --3sat FILE or --random".into())),
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        p0_edges: cli.allow_p0_assumption_edges,
        limits: Limits {
            jobs: cli.jobs.max(1),
            ..Limits::default()
        },
    };
    match cli.cmd {
        Cmd::Solve { file, algo, query } => solve(&ctx, &file, algo, &query),
        Cmd::Oracle { file, query } => solve(&ctx, &file, Algo::Oracle, &query),
        Cmd::Reduce { file, to, out } => reduce(&ctx, &file, to, out.as_deref()),
        Cmd::Gen {
            sat,
            random,
            vertices,
            edges,
            assumption,
            seed,
            priorities,
            alternating,
            out,
        } => {
            let params = GenParams {
                vertices,
                edges,
                objective: if priorities == 0 { ObjectiveKind::Reach } else { ObjectiveKind::Parity },
                max_priority: priorities,
                assumption,
                self_loops: !alternating,
                alternating,
                max_p1_choice: Some(ctx.limits.max_choice_edges),
            };
            gen(sat.as_deref(), random, params, seed, out.as_deref())
        }
        Cmd::Product { spec, plant, out } => {
            let s = ctx.file(&spec)?;
            let p = ctx.file(&plant)?;
            let objective = s
                .objective
                .clone()
                .ok_or_else(|| Failure::Usage("the specification has no objective".into()))?;
            let game = product(&s.labeled()?, &objective, &p.labeled()?, &p.live_edges()?)?;
            emit(out.as_deref(), &serialize_game(&GameFile::from_game(Some("product"), &game)))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Decompose {
            file,
            spec_out,
            plant_out,
        } => {
            let (f, game) = ctx.game(&file)?;
            let d = decompose(&game)?;
            let name = f.name.unwrap_or_else(|| "game".into());
            let spec = GameFile::from_labeled(Some(&format!("{name}-spec")), &d.spec, Some(&d.spec_objective), &[]);
            let plant = GameFile::from_labeled(Some(&format!("{name}-plant")), &d.plant, None, &d.plant_live);
            emit(Some(&spec_out), &serialize_game(&spec))?;
            emit(Some(&plant_out), &serialize_game(&plant))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { file, strategy, claim } => {
            let (_, game) = ctx.game(&file)?;
            let strat = parse_strategy(&game.graph, &read_input(&strategy)?)?;
            let ids = claim.iter().map(|v| vertex(&game, v)).collect::<Result<Vec<_>, _>>()?;
            let claim = VertexSet::from_iter_in(game.graph.vertex_count(), ids);
            match verify_strategy(&game, &strat, &claim, &ctx.limits)? {
                Verdict::Ok => {
                    println!("ok");
                    Ok(ExitCode::SUCCESS)
                }
                Verdict::Counterexample(l) => {
                    let g = &game.graph;
                    let names = |xs: &[usize]| xs.iter().map(|&x| format!(" {}", g.name(x))).collect::<String>();
                    println!("counterexample stem{} cycle{}", names(&l.stem), names(&l.cycle));
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Stats { file, algo } => {
            let (_, game) = ctx.game(&file)?;
            let d = solve_augmented(&game, algo, &ctx.limits)?;
            println!("pipeline {}", d.pipeline);
            println!("vertices {}", game.graph.vertex_count());
            println!("edges {}", game.graph.edge_count());
            println!("w0 {}", d.result.w0.len());
            if let Some(r) = d.counters.colive_rounds {
                println!("colive-rounds {r}");
            }
            if let Some(q) = d.counters.qsolve {
                println!("qsolve-calls {}", q.calls);
                println!("qsolve-bound {}", q.bound);
                println!("qsolve-within-bound {}", q.within_bound());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Bound(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
