//! Test-side oracles. Everything here is computed from the transition table
//! and `accepts` alone, by brute force, without the library's loop
//! enumeration, product search or quotient construction.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rightcon::{
    Acceptance, Acceptor, Alphabet, LassoWord, StateId, StateSet, SymbolId, Transition,
    TransitionSet, TransitionStructure,
};

/// Shortest access word of every reachable state.
pub fn access_words(s: &TransitionStructure) -> Vec<Option<Vec<SymbolId>>> {
    let mut words = vec![None; s.state_count()];
    words[s.initial()] = Some(Vec::new());
    let mut queue = VecDeque::from([s.initial()]);
    while let Some(q) = queue.pop_front() {
        for a in 0..s.symbol_count() {
            let r = s.step(q, a);
            if words[r].is_none() {
                let mut w = words[q].clone().unwrap();
                w.push(a);
                words[r] = Some(w);
                queue.push_back(r);
            }
        }
    }
    words
}

/// States reachable from `from` in one or more steps over `edges`.
fn reach_within(
    s: &TransitionStructure,
    edges: &BTreeSet<(StateId, SymbolId)>,
    from: StateId,
) -> BTreeSet<StateId> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![from];
    while let Some(q) = stack.pop() {
        for &(p, a) in edges.range((q, 0)..(q + 1, 0)) {
            let r = s.step(p, a);
            if seen.insert(r) {
                stack.push(r);
            }
        }
    }
    seen
}

fn strongly_connected(s: &TransitionStructure, edges: &BTreeSet<(StateId, SymbolId)>) -> bool {
    let states: BTreeSet<StateId> = edges.iter().map(|e| e.0).collect();
    if edges.iter().any(|&(p, a)| !states.contains(&s.step(p, a))) {
        return false;
    }
    states.iter().all(|&q| reach_within(s, edges, q) == states)
}

/// Every reachable state set that is strongly connected with at least one
/// internal edge, by scanning all subsets.
pub fn state_loops(s: &TransitionStructure) -> Vec<StateSet> {
    let n = s.state_count();
    assert!(n <= 16);
    let access = access_words(s);
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let set: StateSet = (0..n).filter(|q| mask >> q & 1 == 1).collect();
        if set.iter().any(|&q| access[q].is_none()) {
            continue;
        }
        let edges: BTreeSet<(StateId, SymbolId)> = set
            .iter()
            .flat_map(|&q| (0..s.symbol_count()).map(move |a| (q, a)))
            .filter(|&(q, a)| set.contains(&s.step(q, a)))
            .collect();
        if edges.is_empty() {
            continue;
        }
        if set.iter().all(|&q| reach_within(s, &edges, q) == set) {
            out.push(set);
        }
    }
    out
}

/// Every reachable strongly connected set of transitions.
pub fn edge_loops(s: &TransitionStructure) -> Vec<TransitionSet> {
    let k = s.symbol_count();
    let m = s.state_count() * k;
    assert!(m <= 20, "too many transitions for subset scan");
    let access = access_words(s);
    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        let edges: BTreeSet<(StateId, SymbolId)> = (0..m)
            .filter(|e| mask >> e & 1 == 1)
            .map(|e| (e / k, e % k))
            .collect();
        if edges.iter().any(|&(q, _)| access[q].is_none()) {
            continue;
        }
        if strongly_connected(s, &edges) {
            out.push(
                edges
                    .iter()
                    .map(|&(p, a)| Transition::new(p, a, s.step(p, a)))
                    .collect(),
            );
        }
    }
    out
}

pub fn internal_transitions(s: &TransitionStructure, set: &StateSet) -> TransitionSet {
    set.iter()
        .flat_map(|&q| (0..s.symbol_count()).map(move |a| (q, a)))
        .filter(|&(q, a)| set.contains(&s.step(q, a)))
        .map(|(q, a)| Transition::new(q, a, s.step(q, a)))
        .collect()
}

fn bfs_path(
    s: &TransitionStructure,
    edges: &BTreeSet<(StateId, SymbolId)>,
    from: StateId,
    goal: impl Fn(StateId) -> bool,
) -> Vec<SymbolId> {
    let mut prev: BTreeMap<StateId, (StateId, SymbolId)> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    while let Some(q) = queue.pop_front() {
        if goal(q) {
            let mut w = Vec::new();
            let mut c = q;
            while c != from {
                let (p, a) = prev[&c];
                w.push(a);
                c = p;
            }
            w.reverse();
            return w;
        }
        for &(p, a) in edges.range((q, 0)..(q + 1, 0)) {
            let r = s.step(p, a);
            if seen.insert(r) {
                prev.insert(r, (p, a));
                queue.push_back(r);
            }
        }
    }
    panic!("goal unreachable inside loop")
}

/// A lasso whose run takes exactly `loop_edges` infinitely often.
pub fn realize(s: &TransitionStructure, loop_edges: &TransitionSet) -> LassoWord {
    let edges: BTreeSet<(StateId, SymbolId)> =
        loop_edges.iter().map(|t| (t.from, t.symbol)).collect();
    let access = access_words(s);
    let start = edges.iter().next().unwrap().0;
    let spoke = access[start].clone().expect("loop reachable");
    let mut cycle = Vec::new();
    let mut cur = start;
    for &(p, a) in &edges {
        let path = bfs_path(s, &edges, cur, |q| q == p);
        cur = s.run(cur, &path);
        cycle.extend(path);
        cycle.push(a);
        cur = s.step(cur, a);
    }
    cycle.extend(bfs_path(s, &edges, cur, |q| q == start));
    LassoWord::new(spoke, cycle).unwrap()
}

/// All words of length `lo..=hi`.
pub fn words(k: usize, lo: usize, hi: usize) -> Vec<Vec<SymbolId>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<SymbolId>> = vec![Vec::new()];
    for len in 0..=hi {
        if len >= lo {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn random_lasso<R: Rng>(
    rng: &mut R,
    k: usize,
    max_spoke: usize,
    max_cycle: usize,
) -> LassoWord {
    let spoke = (0..rng.gen_range(0..=max_spoke))
        .map(|_| rng.gen_range(0..k))
        .collect();
    let cycle = (0..rng.gen_range(1..=max_cycle))
        .map(|_| rng.gen_range(0..k))
        .collect();
    LassoWord::new(spoke, cycle).unwrap()
}

/// Small random acceptor of any of the five kinds.
pub fn random_acceptor<R: Rng>(rng: &mut R, max_states: usize) -> Acceptor {
    let k = rng.gen_range(1..=3);
    random_acceptor_over(rng, max_states, Alphabet::letters(k).unwrap())
}

pub fn random_acceptor_over<R: Rng>(
    rng: &mut R,
    max_states: usize,
    alphabet: Alphabet,
) -> Acceptor {
    let n = rng.gen_range(1..=max_states);
    let k = alphabet.len();
    let delta = (0..n)
        .map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let s = TransitionStructure::from_table(alphabet, 0, delta).unwrap();
    let kind = rng.gen_range(0..5);
    let acceptance = match kind {
        0 => Acceptance::Buchi((0..n).filter(|_| rng.gen_bool(0.4)).collect()),
        1 => Acceptance::CoBuchi((0..n).filter(|_| rng.gen_bool(0.4)).collect()),
        2 => Acceptance::parity_from(
            &(0..n)
                .map(|_| rng.gen_range(0..=(2 * n as u32).min(3)))
                .collect::<Vec<_>>(),
        ),
        3 => {
            let mut loops = state_loops(&s);
            loops.shuffle(rng);
            let keep = rng.gen_range(0..=loops.len());
            Acceptance::MullerStates(loops.into_iter().take(keep).collect())
        }
        _ => {
            let mut loops = if n * k <= 12 {
                edge_loops(&s)
            } else {
                Vec::new()
            };
            loops.shuffle(rng);
            let keep = rng.gen_range(0..=loops.len());
            Acceptance::MullerTransitions(loops.into_iter().take(keep).collect())
        }
    };
    Acceptor::new(s, acceptance).unwrap()
}

/// Lassos realizing every loop of `a` (state loops with all internal
/// transitions and, when small enough, every transition loop).
pub fn loop_lassos(a: &Acceptor) -> Vec<LassoWord> {
    let s = a.structure();
    let mut out: Vec<LassoWord> = state_loops(s)
        .iter()
        .map(|l| realize(s, &internal_transitions(s, l)))
        .collect();
    if s.state_count() * s.symbol_count() <= 12 {
        out.extend(edge_loops(s).iter().map(|l| realize(s, l)));
    }
    out
}

/// Flags decided by exhaustive search over acceptance conditions placed on
/// the quotient structure, judged on one lasso per loop of `a`. `class_of`
/// maps acceptor states onto quotient states. State-based `a` only.
#[derive(Debug, PartialEq, Eq)]
pub struct OracleFlags {
    pub im: bool,
    pub ip: bool,
    pub ib: bool,
    pub ic: bool,
}

pub fn exhaustive_flags(
    a: &Acceptor,
    q_states: usize,
    class_of: &[Option<StateId>],
) -> OracleFlags {
    let s = a.structure();
    let samples: Vec<(BTreeSet<StateId>, bool)> = state_loops(s)
        .iter()
        .map(|l| {
            let w = realize(s, &internal_transitions(s, l));
            let proj = l.iter().map(|&q| class_of[q].unwrap()).collect();
            (proj, a.accepts(&w).unwrap())
        })
        .collect();
    let mut by_proj: BTreeMap<&BTreeSet<StateId>, bool> = BTreeMap::new();
    let mut im = true;
    for (p, v) in &samples {
        if let Some(&w) = by_proj.get(p) {
            im &= w == *v;
        }
        by_proj.insert(p, *v);
    }
    let subsets = || {
        (0u32..(1 << q_states)).map(|m| {
            (0..q_states)
                .filter(move |q| m >> q & 1 == 1)
                .collect::<BTreeSet<_>>()
        })
    };
    let ib = subsets().any(|f| samples.iter().all(|(p, v)| *v == !p.is_disjoint(&f)));
    let ic = subsets().any(|f| samples.iter().all(|(p, v)| *v == p.is_disjoint(&f)));
    let mut colors = vec![0u32; q_states];
    let ip = color_search(&samples, &mut colors, 0, q_states as u32);
    OracleFlags { im, ip, ib, ic }
}

/// Backtracking over colorings with colors `0..=max`; a loop is checked
/// once all of its states are colored.
fn color_search(
    samples: &[(BTreeSet<StateId>, bool)],
    colors: &mut Vec<u32>,
    next: usize,
    max: u32,
) -> bool {
    let ok = samples.iter().all(|(p, v)| {
        if p.iter().any(|&q| q >= next) {
            return true;
        }
        (p.iter().map(|&q| colors[q]).min().unwrap() % 2 == 1) == *v
    });
    if !ok {
        return false;
    }
    if next == colors.len() {
        return true;
    }
    for c in 0..=max {
        colors[next] = c;
        if color_search(samples, colors, next + 1, max) {
            return true;
        }
    }
    false
}

/// `(x, u)` with `x·u^ω` accepted whose classes `x·u^n` never settle, with
/// `x`, `u` ranging over the given lengths.
pub fn brute_respective_violation(
    a: &Acceptor,
    max_x: usize,
    max_u: usize,
) -> Option<(Vec<SymbolId>, Vec<SymbolId>)> {
    let q = rightcon::rightcon_quotient(a).unwrap();
    let k = a.structure().symbol_count();
    for x in words(k, 0, max_x) {
        for u in words(k, 1, max_u) {
            if !rightcon::respective_pair_check_in(a, &q, &x, &u).unwrap() {
                return Some((x, u));
            }
        }
    }
    None
}

/// Whether a transition-Muller table on the quotient exists: no two
/// transition loops of `a` with the same projected quotient transitions get
/// different verdicts. `None` when `a` has too many transitions to scan.
pub fn exhaustive_it(a: &Acceptor, class_of: &[Option<StateId>]) -> Option<bool> {
    let s = a.structure();
    if s.state_count() * s.symbol_count() > 12 {
        return None;
    }
    let mut seen: BTreeMap<BTreeSet<(StateId, SymbolId)>, bool> = BTreeMap::new();
    for l in edge_loops(s) {
        let proj = l
            .iter()
            .map(|t| (class_of[t.from].unwrap(), t.symbol))
            .collect();
        let v = a.accepts(&realize(s, &l)).unwrap();
        if *seen.entry(proj).or_insert(v) != v {
            return Some(false);
        }
    }
    Some(true)
}
