use super::graph::{GameGraph, VertexId};
use super::sets::VertexSet;
use crate::error::{Error, Result};

/// Player 0 wins if `good` is visited infinitely often and `bad` only finitely often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RabinPair {
    pub good: VertexSet,
    pub bad: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Objective {
    Reach(VertexSet),
    /// Priority per vertex; the largest priority seen infinitely often must be even.
    Parity(Vec<u32>),
    Rabin(Vec<RabinPair>),
}

impl Objective {
    pub fn kind(&self) -> &'static str {
        match self {
            Objective::Reach(_) => "reach",
            Objective::Parity(_) => "parity",
            Objective::Rabin(_) => "rabin",
        }
    }

    pub fn validate(&self, g: &GameGraph) -> Result<()> {
        let n = g.vertex_count();
        let ok = match self {
            Objective::Reach(t) => t.universe() == n,
            Objective::Parity(p) => p.len() == n,
            Objective::Rabin(pairs) => pairs.iter().all(|p| p.good.universe() == n && p.bad.universe() == n),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Objective(format!("{} objective does not match a graph of {n} vertices", self.kind())))
        }
    }

    pub fn priorities(&self) -> Option<&[u32]> {
        match self {
            Objective::Parity(p) => Some(p),
            _ => None,
        }
    }

    pub fn max_priority(&self) -> u32 {
        self.priorities().and_then(|p| p.iter().copied().max()).unwrap_or(0)
    }

    /// Carries the objective over to a graph whose vertex `i` was vertex `old[i]`.
    pub fn remap(&self, old: &[VertexId], fresh: u32) -> Objective {
        let n = old.len();
        let lift = |s: &VertexSet| {
            VertexSet::from_iter_in(n, (0..n).filter(|&i| old[i] != usize::MAX && s.contains(old[i])))
        };
        match self {
            Objective::Reach(t) => Objective::Reach(lift(t)),
            Objective::Parity(p) => {
                Objective::Parity(old.iter().map(|&o| if o == usize::MAX { fresh } else { p[o] }).collect())
            }
            Objective::Rabin(pairs) => Objective::Rabin(
                pairs
                    .iter()
                    .map(|p| RabinPair {
                        good: lift(&p.good),
                        bad: lift(&p.bad),
                    })
                    .collect(),
            ),
        }
    }
}
