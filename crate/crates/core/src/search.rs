//! Language comparison of two acceptors by searching their product for a
//! loop on which the two conditions disagree.

use std::collections::{HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::acceptance::{Acceptor, Compiled};
use crate::error::{Error, Result};
use crate::lasso::LassoWord;
use crate::scc::edge_components;
use crate::structure::{product, StateId, SymbolId, TransitionStructure};
use crate::Limits;

/// `true` iff both acceptors accept the same ω-words.
pub fn equivalent(a: &Acceptor, b: &Acceptor) -> Result<bool> {
    Ok(distinguish(a, b)?.is_none())
}

/// A lasso accepted by exactly one of the acceptors, or `None` if they are
/// equivalent.
pub fn distinguish(a: &Acceptor, b: &Acceptor) -> Result<Option<LassoWord>> {
    distinguish_with(a, b, &Limits::default())
}

pub fn distinguish_with(a: &Acceptor, b: &Acceptor, limits: &Limits) -> Result<Option<LassoWord>> {
    let prod = product(a.structure(), b.structure())?;
    let p = &prod.structure;
    let sides = [
        Side::new(a.structure(), a.compiled(), p, &prod.pairs, |pair| pair.0),
        Side::new(b.structure(), b.compiled(), p, &prod.pairs, |pair| pair.1),
    ];

    let all = p.internal_edges(&p.reachable());
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut stack = edge_components(p, &all);
    while let Some(edges) = stack.pop() {
        if !seen.insert(edges.clone()) {
            continue;
        }
        if seen.len() > limits.loop_sets {
            return Err(Error::CapacityExceeded {
                what: "product loops",
                limit: limits.loop_sets,
            });
        }
        let [(sa, ea), (sb, eb)] = [sides[0].project(&edges), sides[1].project(&edges)];
        let va = sides[0].compiled.verdict(&sa, &ea);
        let vb = sides[1].compiled.verdict(&sb, &eb);
        if va != vb {
            return Ok(Some(loop_witness(p, &edges)));
        }
        let split_possible = (sides[0].compiled.may_reach(true, &sa, &ea)
            && sides[1].compiled.may_reach(false, &sb, &eb))
            || (sides[0].compiled.may_reach(false, &sa, &ea)
                && sides[1].compiled.may_reach(true, &sb, &eb));
        if !split_possible {
            continue;
        }
        // Any disagreeing subloop misses a color of one side; drop each color in turn.
        for side in &sides {
            let mut colors: Vec<usize> = edges.ones().map(|e| side.color[e]).collect();
            colors.sort_unstable();
            colors.dedup();
            if colors.len() < 2 {
                // removing the only color removes every edge
                continue;
            }
            for c in colors {
                let mut rest = edges.clone();
                for e in edges.ones() {
                    if side.color[e] == c {
                        rest.set(e, false);
                    }
                }
                for sub in edge_components(p, &rest) {
                    if !seen.contains(&sub) {
                        stack.push(sub);
                    }
                }
            }
        }
    }
    Ok(None)
}

/// One operand seen through the product: each product edge is colored by
/// what the operand's condition observes (its state, or its edge).
struct Side {
    compiled: Compiled,
    color: Vec<usize>,
    state_of: Vec<StateId>,
    states: usize,
    edges: usize,
    edge_of: Vec<usize>,
}

impl Side {
    fn new(
        own: &TransitionStructure,
        compiled: Compiled,
        p: &TransitionStructure,
        pairs: &[(StateId, StateId)],
        pick: impl Fn(&(StateId, StateId)) -> StateId,
    ) -> Self {
        let k = p.symbol_count();
        let mut state_of = Vec::with_capacity(p.edge_count());
        let mut edge_of = Vec::with_capacity(p.edge_count());
        for e in 0..p.edge_count() {
            let q = pick(&pairs[e / k]);
            state_of.push(q);
            edge_of.push(own.edge_id(q, e % k));
        }
        let color = if compiled.state_based() {
            state_of.clone()
        } else {
            edge_of.clone()
        };
        Self {
            compiled,
            color,
            state_of,
            states: own.state_count(),
            edges: own.edge_count(),
            edge_of,
        }
    }

    fn project(&self, edges: &FixedBitSet) -> (FixedBitSet, FixedBitSet) {
        let mut s = FixedBitSet::with_capacity(self.states);
        let mut t = FixedBitSet::with_capacity(self.edges);
        for e in edges.ones() {
            s.insert(self.state_of[e]);
            t.insert(self.edge_of[e]);
        }
        (s, t)
    }
}

/// Lasso whose run takes exactly the (strongly connected) `edges` infinitely
/// often: shortest spoke to the loop, then a closed walk covering the edges.
pub(crate) fn loop_witness(structure: &TransitionStructure, edges: &FixedBitSet) -> LassoWord {
    let k = structure.symbol_count();
    let loop_states = structure.edge_sources(edges);
    let access = structure.access_words();
    let start = loop_states
        .ones()
        .filter(|&q| access[q].is_some())
        .min_by(|&x, &y| {
            let (wx, wy) = (access[x].as_ref().unwrap(), access[y].as_ref().unwrap());
            (wx.len(), wx).cmp(&(wy.len(), wy))
        })
        .expect("loop must be reachable");
    let spoke = access[start].clone().unwrap();

    let mut uncovered = edges.clone();
    let mut cycle = Vec::new();
    let mut cur = start;
    while uncovered.count_ones(..) > 0 {
        let path = path_within(structure, edges, cur, |q| {
            (0..k).any(|a| uncovered.contains(q * k + a))
        });
        for a in path {
            cur = structure.step(cur, a);
            cycle.push(a);
        }
        let a = (0..k).find(|&a| uncovered.contains(cur * k + a)).unwrap();
        uncovered.set(cur * k + a, false);
        cycle.push(a);
        cur = structure.step(cur, a);
    }
    for a in path_within(structure, edges, cur, |q| q == start) {
        cycle.push(a);
    }
    LassoWord::new(spoke, cycle).expect("loop has at least one edge")
}

/// Shortest, then lexicographically least, path using only `edges` from
/// `from` to a state satisfying `goal` (empty if `from` already does).
fn path_within(
    structure: &TransitionStructure,
    edges: &FixedBitSet,
    from: StateId,
    goal: impl Fn(StateId) -> bool,
) -> Vec<SymbolId> {
    let k = structure.symbol_count();
    let n = structure.state_count();
    let mut parent: Vec<Option<(StateId, SymbolId)>> = vec![None; n];
    let mut seen = FixedBitSet::with_capacity(n);
    seen.insert(from);
    let mut queue = VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        if goal(q) {
            let mut word = Vec::new();
            let mut cur = q;
            while let Some((p, a)) = parent[cur] {
                word.push(a);
                cur = p;
            }
            word.reverse();
            return word;
        }
        for a in 0..k {
            if edges.contains(q * k + a) {
                let r = structure.step(q, a);
                if !seen.put(r) {
                    parent[r] = Some((q, a));
                    queue.push_back(r);
                }
            }
        }
    }
    panic!("edge set is not strongly connected")
}
