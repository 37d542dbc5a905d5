//! Tarjan's algorithm over a subset of a structure's edges.

use fixedbitset::FixedBitSet;

use crate::structure::TransitionStructure;

/// Strongly connected components of the subgraph formed by `edges`,
/// returned as the edge sets internal to each component. Components without
/// an internal edge (single states without a self-loop) are dropped. Output is
/// ordered by smallest edge id.
pub fn edge_components(structure: &TransitionStructure, edges: &FixedBitSet) -> Vec<FixedBitSet> {
    let n = structure.state_count();
    let k = structure.symbol_count();
    let comp = tarjan(n, |v, out: &mut Vec<usize>| {
        for a in 0..k {
            let e = v * k + a;
            if edges.contains(e) {
                out.push(structure.step(v, a));
            }
        }
    });
    let mut groups: Vec<Option<FixedBitSet>> = vec![None; n];
    let mut order = Vec::new();
    for e in edges.ones() {
        let (p, q) = (e / k, structure.step(e / k, e % k));
        if comp[p] == comp[q] {
            let slot = &mut groups[comp[p]];
            if slot.is_none() {
                *slot = Some(FixedBitSet::with_capacity(edges.len()));
                order.push(comp[p]);
            }
            slot.as_mut().unwrap().insert(e);
        }
    }
    order
        .into_iter()
        .map(|c| groups[c].take().unwrap())
        .collect()
}

/// Strongly connected components (with at least one internal edge) of the
/// subgraph induced by `states`, as state sets.
pub fn state_components(structure: &TransitionStructure, states: &FixedBitSet) -> Vec<FixedBitSet> {
    let edges = structure.internal_edges(states);
    edge_components(structure, &edges)
        .iter()
        .map(|es| structure.edge_sources(es))
        .collect()
}

/// Iterative Tarjan. `succ(v, out)` pushes the successors of `v`. Returns a
/// component index per vertex; vertices with no edges get singleton components.
fn tarjan<F>(n: usize, mut succ: F) -> Vec<usize>
where
    F: FnMut(usize, &mut Vec<usize>),
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut out = Vec::new();
        succ(v, &mut out);
        adj.push(out);
    }
    // (vertex, next child position)
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, pos)) = call.last() {
            if pos == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if pos < adj[v].len() {
                let w = adj[v][pos];
                call.last_mut().unwrap().1 += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}
