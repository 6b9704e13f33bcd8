//! The 3-SAT gadget: player 0 wins from `v0` iff the formula is satisfiable.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{Assumption, AugmentedGame, GraphBuilder, LiveGroup, Objective, Player, VertexSet};

/// A CNF formula over variables `1..=vars`; literal `-k` negates `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for &l in clauses.iter().flatten() {
            if l == 0 || l.unsigned_abs() as usize > vars {
                return Err(Error::Precondition(format!("literal {l} outside 1..={vars}")));
            }
        }
        Ok(CnfFormula { vars, clauses })
    }
}

fn lit_name(l: i32) -> String {
    if l > 0 {
        format!("x{l}")
    } else {
        format!("-x{}", -l)
    }
}

/// Hub `v0` (player 1) challenges a clause vertex `C_j` (player 0), which
/// picks a literal `y` (player 1); `y` either grants `goal` or returns to
/// `v0` through `y'`. The groups `{(x_i,goal), (-x_i',v0)}` and
/// `{(-x_i,goal), (x_i',v0)}` punish player 0 for using both polarities.
pub fn sat_to_game(f: &CnfFormula) -> Result<AugmentedGame> {
    if f.clauses.is_empty() {
        return Err(Error::Precondition("formula has no clauses".into()));
    }
    if let Some(c) = f.clauses.iter().find(|c| c.is_empty() || c.len() > 3) {
        return Err(Error::Precondition(format!("clause with {} literals; expected 1 to 3", c.len())));
    }
    let mut b = GraphBuilder::new();
    let v0 = b.add_vertex("v0", Player::One)?;
    let clause_ids: Vec<_> = (1..=f.clauses.len())
        .map(|j| b.add_vertex(format!("C{j}"), Player::Zero))
        .collect::<Result<_>>()?;
    let mut lit = HashMap::new();
    let mut primed = HashMap::new();
    for i in 1..=f.vars as i32 {
        for l in [i, -i] {
            lit.insert(l, b.add_vertex(lit_name(l), Player::One)?);
        }
        for l in [i, -i] {
            primed.insert(l, b.add_vertex(format!("{}'", lit_name(l)), Player::One)?);
        }
    }
    let goal = b.add_vertex("goal", Player::Zero)?;
    for (j, c) in f.clauses.iter().enumerate() {
        b.add_edge(v0, clause_ids[j]);
        // Short clauses repeat their last literal; edges have set semantics.
        let mut padded = c.clone();
        while padded.len() < 3 {
            padded.push(*c.last().expect("nonempty clause"));
        }
        for l in padded {
            b.add_edge(clause_ids[j], lit[&l]);
        }
    }
    for i in 1..=f.vars as i32 {
        for l in [i, -i] {
            b.add_edge(lit[&l], goal);
            b.add_edge(lit[&l], primed[&l]);
            b.add_edge(primed[&l], v0);
        }
    }
    b.add_edge(goal, goal);
    let graph = b.build(false)?;
    let mut groups = Vec::new();
    for i in 1..=f.vars as i32 {
        groups.push(LiveGroup {
            name: format!("H{i}a"),
            edges: vec![(lit[&i], goal), (primed[&-i], v0)],
        });
        groups.push(LiveGroup {
            name: format!("H{i}b"),
            edges: vec![(lit[&-i], goal), (primed[&i], v0)],
        });
    }
    let n = graph.vertex_count();
    let game = AugmentedGame::new(
        graph,
        Objective::Reach(VertexSet::from_iter_in(n, [goal])),
        Assumption::LiveGroups(groups),
    )?;
    Ok(game.with_init(Some(v0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure() {
        let f = CnfFormula::new(3, vec![vec![1, 2, -3], vec![-1, 2, -3], vec![-1, -2, 3]]).unwrap();
        let game = sat_to_game(&f).unwrap();
        let g = &game.graph;
        assert_eq!(g.out_degree(g.id("v0").unwrap()), 3);
        for name in ["x1", "-x1", "x2", "-x2", "x3", "-x3"] {
            assert_eq!(g.out_degree(g.id(name).unwrap()), 2);
        }
        match &game.assumption {
            Assumption::LiveGroups(gs) => assert_eq!(gs.len(), 6),
            _ => unreachable!(),
        }
    }

    #[test]
    fn padding_and_rejection() {
        let f = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        let game = sat_to_game(&f).unwrap();
        assert_eq!(game.graph.out_degree(game.graph.id("C1").unwrap()), 1);
        assert!(sat_to_game(&CnfFormula::new(1, vec![]).unwrap()).is_err());
    }
}
