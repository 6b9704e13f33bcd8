use crate::classic::reach::reach_or_safe_in;
use crate::model::{Control, GameGraph, PersistentGroup, Player, Strategy, VertexSet, View};

/// Player 0's attractor to `target` inside `region`, helped by persistent
/// groups already restricted to `region`. Returns the region, a strategy on
/// it outside `target`, and the number of enlarging rounds.
pub(crate) fn attr_pers_in(
    g: &GameGraph,
    region: &VertexSet,
    target: &VertexSet,
    groups: &[PersistentGroup],
) -> ((VertexSet, Strategy), usize) {
    let view = View::new(g, region);
    let controls: Vec<Control> = groups.iter().map(|grp| Control::new(g, &grp.c)).collect();
    let mut goal = target.intersection(region);
    let mut strat = Strategy::new();
    let mut rounds = 0;
    loop {
        let (a, pi_a) = view.attractor(Player::Zero, &goal, None);
        for (u, v) in pi_a {
            strat.entry(u).or_insert(v);
        }
        let mut grown = None;
        // Every group is tried, also when S∖A has no edge into A: staying in
        // S∖T forever under C violates the assumption and wins outright.
        for (grp, ctl) in groups.iter().zip(&controls) {
            let safe = grp.s.difference(&grp.t);
            let (b, pi_b) = reach_or_safe_in(&view.with_control(ctl), &a, &safe);
            if !b.is_subset(&a) {
                for (u, v) in pi_b {
                    if !a.contains(u) {
                        strat.entry(u).or_insert(v);
                    }
                }
                grown = Some(a.union(&b));
                break;
            }
        }
        match grown {
            Some(next) => {
                goal = next;
                rounds += 1;
            }
            None => {
                strat.retain(|&u, _| a.contains(u) && !target.contains(u));
                return ((a, strat), rounds);
            }
        }
    }
}

/// Winning region and strategy of `◊T` under persistent live groups.
pub fn attr_pers(g: &GameGraph, t: &VertexSet, groups: &[PersistentGroup]) -> (VertexSet, Strategy) {
    attr_pers_in(g, &g.all_vertices(), t, groups).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{attractor, GraphBuilder};

    fn pers1() -> (GameGraph, PersistentGroup) {
        let mut b = GraphBuilder::new();
        let s = b.add_vertex("s", Player::Zero).unwrap();
        let q = b.add_vertex("q", Player::One).unwrap();
        let t = b.add_vertex("t", Player::Zero).unwrap();
        b.add_edge(s, q);
        b.add_edge(q, s);
        b.add_edge(q, t);
        b.add_edge(t, t);
        let grp = PersistentGroup {
            name: "G1".into(),
            s: VertexSet::full(3),
            c: vec![(s, q)],
            t: VertexSet::from_iter_in(3, [t]),
        };
        (b.build(false).unwrap(), grp)
    }

    #[test]
    fn pers1_fixture() {
        let (g, grp) = pers1();
        let (w, s) = attr_pers(&g, &VertexSet::from_iter_in(3, [2]), &[grp]);
        assert_eq!(w, g.all_vertices());
        assert_eq!(s.get(&0), Some(&1));
    }

    #[test]
    fn no_groups_is_plain_attractor() {
        let (g, _) = pers1();
        let t = VertexSet::from_iter_in(3, [2]);
        assert_eq!(attr_pers(&g, &t, &[]), attractor(&g, Player::Zero, &t));
    }

    /// The group's region has no edge into the attractor, yet player 1 can
    /// only keep the play inside S∖T, which breaks the assumption.
    #[test]
    fn unescapable_group_wins_without_reaching() {
        let mut b = GraphBuilder::new();
        let a = b.add_vertex("a", Player::One).unwrap();
        let t = b.add_vertex("t", Player::Zero).unwrap();
        b.add_edge(a, a);
        b.add_edge(t, t);
        let g = b.build(false).unwrap();
        let grp = PersistentGroup {
            name: "G".into(),
            s: VertexSet::from_iter_in(2, [a]),
            c: vec![],
            t: VertexSet::empty(2),
        };
        let (w, _) = attr_pers(&g, &VertexSet::from_iter_in(2, [t]), &[grp]);
        assert_eq!(w, g.all_vertices());
    }
}
