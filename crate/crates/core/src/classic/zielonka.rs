use super::{peel_dead_ends, Attract0};
use crate::model::{GameGraph, Player, Strategy, VertexSet, View};
use crate::result::SolveResult;

pub(crate) struct Zielonka<'a> {
    g: &'a GameGraph,
    prio: &'a [u32],
    a0: Attract0<'a>,
    pub calls: usize,
}

impl<'a> Zielonka<'a> {
    pub(crate) fn new(g: &'a GameGraph, prio: &'a [u32], a0: Attract0<'a>) -> Self {
        Zielonka { g, prio, a0, calls: 0 }
    }

    /// Solves the subgame on `region`, which must have no dead ends.
    /// Returns player 0's region and a strategy on it.
    pub(crate) fn solve(&mut self, region: &VertexSet) -> (VertexSet, Strategy) {
        self.calls += 1;
        let g = self.g;
        let Some(p) = region.iter().map(|v| self.prio[v]).max() else {
            return (region.clone(), Strategy::new());
        };
        let top = VertexSet::from_iter_in(g.vertex_count(), region.iter().filter(|&v| self.prio[v] == p));
        let plain1 = |r: &VertexSet, t: &VertexSet| View::new(g, r).attractor(Player::One, t, None).0;
        if p % 2 == 0 {
            let (a, pi_a) = self.a0.attract(g, region, &top);
            let sub = region.difference(&a);
            let (w0, sigma) = self.solve(&sub);
            let w1 = sub.difference(&w0);
            if w1.is_empty() {
                let mut s = sigma;
                s.extend(pi_a);
                let view = View::new(g, region);
                for v in &top {
                    if g.owner(v) == Player::Zero {
                        s.insert(v, view.succ(v).next().expect("no dead ends"));
                    }
                }
                (region.clone(), s)
            } else {
                let b = plain1(region, &w1);
                self.solve(&region.difference(&b))
            }
        } else {
            let a = plain1(region, &top);
            let (w0, sigma) = self.solve(&region.difference(&a));
            if w0.is_empty() {
                // Player 1 wins everything unless player 0 can force a violation.
                let (d, pi_d) = self.a0.violation(g, region);
                if d.is_empty() {
                    return (w0, Strategy::new());
                }
                let (w0d, mut s) = self.solve(&region.difference(&d));
                s.extend(pi_d);
                return (d.union(&w0d), s);
            }
            let (b, pi_b) = self.a0.attract(g, region, &w0);
            let (w0b, sigma_b) = self.solve(&region.difference(&b));
            let mut s = sigma;
            s.extend(pi_b);
            s.extend(sigma_b);
            (b.union(&w0b), s)
        }
    }

    /// Peels dead ends from `region` and solves the rest.
    pub(crate) fn solve_with_dead_ends(&mut self, region: &VertexSet) -> (VertexSet, Strategy) {
        let (core, d0, mut s) = peel_dead_ends(self.g, region, self.a0);
        let (w0, sigma) = self.solve(&core);
        s.extend(sigma);
        (d0.union(&w0), s)
    }
}

pub fn solve_parity_zielonka(g: &GameGraph, priorities: &[u32]) -> SolveResult {
    let mut z = Zielonka::new(g, priorities, Attract0::Plain);
    let (w0, s) = z.solve_with_dead_ends(&g.all_vertices());
    SolveResult::from_w0(g, w0, s)
}
