use super::graph::VertexId;
use super::sets::VertexSet;

/// Strongly connected components of the graph restricted to `within`,
/// via an iterative Tarjan. Components come out in reverse topological
/// order; each is sorted.
pub fn sccs<F, I>(n: usize, within: &VertexSet, succ: F) -> Vec<Vec<VertexId>>
where
    F: Fn(VertexId) -> I,
    I: Iterator<Item = VertexId>,
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0;
    for root in within {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(VertexId, Vec<VertexId>, usize)> = Vec::new();
        let kids = |v: VertexId| succ(v).filter(|&w| within.contains(w)).collect::<Vec<_>>();
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, kids(root), 0));
        while let Some((v, ks, i)) = call.last_mut() {
            let v = *v;
            if *i < ks.len() {
                let w = ks[*i];
                *i += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    let kw = kids(w);
                    call.push((w, kw, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some((parent, _, _)) = call.last() {
                    low[*parent] = low[*parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_components() {
        let adj: Vec<Vec<usize>> = vec![vec![1], vec![0, 2], vec![3], vec![2]];
        let all = VertexSet::full(4);
        let mut c = sccs(4, &all, |v| adj[v].iter().copied());
        c.sort();
        assert_eq!(c, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn respects_region() {
        let adj: Vec<Vec<usize>> = vec![vec![1], vec![0]];
        let only0 = VertexSet::from_iter_in(2, [0]);
        assert_eq!(sccs(2, &only0, |v| adj[v].iter().copied()), vec![vec![0]]);
    }
}
