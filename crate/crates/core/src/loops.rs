//! Loopable sets: reachable, strongly connected (not necessarily maximal)
//! subsets of a structure, and the measures derived from classifying them.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::acceptance::{Acceptance, Acceptor};
use crate::error::{Error, Result};
use crate::scc::{edge_components, state_components};
use crate::structure::{bits_to_set, StateSet, TransitionSet, TransitionStructure};
use crate::Limits;

/// Every reachable strongly connected state set, found by recursive vertex
/// removal inside the maximal components. Sorted by (size, state list).
pub(crate) fn state_loops(
    structure: &TransitionStructure,
    limits: &Limits,
) -> Result<Vec<FixedBitSet>> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut stack = state_components(structure, &structure.reachable());
    while let Some(set) = stack.pop() {
        if seen.contains(&set) {
            continue;
        }
        for v in set.ones() {
            let mut smaller = set.clone();
            smaller.set(v, false);
            for c in state_components(structure, &smaller) {
                if !seen.contains(&c) {
                    stack.push(c);
                }
            }
        }
        seen.insert(set);
        if seen.len() > limits.loop_sets {
            return Err(Error::CapacityExceeded {
                what: "loopable sets",
                limit: limits.loop_sets,
            });
        }
    }
    Ok(canonical(seen))
}

/// Every reachable strongly connected edge set (a set of transitions that a
/// single run can take infinitely often), found by recursive edge removal.
pub(crate) fn edge_loops(
    structure: &TransitionStructure,
    limits: &Limits,
) -> Result<Vec<FixedBitSet>> {
    let all = structure.internal_edges(&structure.reachable());
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut stack = edge_components(structure, &all);
    while let Some(set) = stack.pop() {
        if seen.contains(&set) {
            continue;
        }
        for e in set.ones() {
            let mut smaller = set.clone();
            smaller.set(e, false);
            for c in edge_components(structure, &smaller) {
                if !seen.contains(&c) {
                    stack.push(c);
                }
            }
        }
        seen.insert(set);
        if seen.len() > limits.loop_sets {
            return Err(Error::CapacityExceeded {
                what: "loopable transition sets",
                limit: limits.loop_sets,
            });
        }
    }
    Ok(canonical(seen))
}

fn canonical(sets: HashSet<FixedBitSet>) -> Vec<FixedBitSet> {
    let mut out: Vec<FixedBitSet> = sets.into_iter().collect();
    out.sort_by_cached_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
    out
}

/// What a loop table entry is identified by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopKey {
    States,
    Transitions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopableSet {
    pub states: StateSet,
    /// For state-keyed tables, all transitions internal to `states`.
    pub transitions: TransitionSet,
    pub accepting: bool,
}

#[derive(Debug, Clone)]
pub struct LoopTable {
    pub key: LoopKey,
    pub entries: Vec<LoopableSet>,
}

impl LoopTable {
    pub fn verdict_of(&self, states: &StateSet) -> Option<bool> {
        self.entries
            .iter()
            .find(|e| &e.states == states)
            .map(|e| e.accepting)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Loops of one acceptor in bitset form, each with its verdict.
#[derive(Debug, Clone)]
pub(crate) struct RawLoops {
    pub key: LoopKey,
    pub states: Vec<FixedBitSet>,
    pub edges: Vec<FixedBitSet>,
    pub accepting: Vec<bool>,
}

impl RawLoops {
    pub fn of(acceptor: &Acceptor, limits: &Limits) -> Result<Self> {
        let compiled = acceptor.compiled();
        let structure = acceptor.structure();
        let (key, states, edges) = if compiled.state_based() {
            let states = state_loops(structure, limits)?;
            let edges = states.iter().map(|s| structure.internal_edges(s)).collect();
            (LoopKey::States, states, edges)
        } else {
            let edges = edge_loops(structure, limits)?;
            let states = edges.iter().map(|e| structure.edge_sources(e)).collect();
            (LoopKey::Transitions, states, edges)
        };
        let accepting = states
            .iter()
            .zip(&edges)
            .map(|(s, e)| compiled.verdict(s, e))
            .collect();
        Ok(Self {
            key,
            states,
            edges,
            accepting,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    fn key_set(&self, i: usize) -> &FixedBitSet {
        match self.key {
            LoopKey::States => &self.states[i],
            LoopKey::Transitions => &self.edges[i],
        }
    }

    /// Strict inclusion of loop `i` in loop `j`.
    pub fn strictly_within(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.key_set(i), self.key_set(j));
        a != b && a.is_subset(b)
    }

    pub fn is_db(&self) -> bool {
        !self.any_pair(true, false)
    }

    pub fn is_dc(&self) -> bool {
        !self.any_pair(false, true)
    }

    fn any_pair(&self, small_accepting: bool, large_accepting: bool) -> bool {
        (0..self.len()).any(|i| {
            self.accepting[i] == small_accepting
                && (0..self.len())
                    .any(|j| self.accepting[j] == large_accepting && self.strictly_within(i, j))
        })
    }
}

pub fn loopable_sets(acceptor: &Acceptor) -> Result<LoopTable> {
    loopable_sets_with(acceptor, &Limits::default())
}

pub fn loopable_sets_with(acceptor: &Acceptor, limits: &Limits) -> Result<LoopTable> {
    let raw = RawLoops::of(acceptor, limits)?;
    let structure = acceptor.structure();
    let entries = (0..raw.len())
        .map(|i| LoopableSet {
            states: bits_to_set(&raw.states[i]),
            transitions: structure.edges_to_transitions(&raw.edges[i]),
            accepting: raw.accepting[i],
        })
        .collect();
    Ok(LoopTable {
        key: raw.key,
        entries,
    })
}

/// No inclusion chain of loops alternates between accepting and rejecting.
pub fn is_weak(acceptor: &Acceptor) -> Result<bool> {
    let raw = RawLoops::of(acceptor, &Limits::default())?;
    Ok(!raw.any_pair(true, false) && !raw.any_pair(false, true))
}

/// No accepting loop sits inside a rejecting one.
pub fn is_db(acceptor: &Acceptor) -> Result<bool> {
    let raw = RawLoops::of(acceptor, &Limits::default())?;
    Ok(!raw.any_pair(true, false))
}

/// No rejecting loop sits inside an accepting one.
pub fn is_dc(acceptor: &Acceptor) -> Result<bool> {
    let raw = RawLoops::of(acceptor, &Limits::default())?;
    Ok(!raw.any_pair(false, true))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Plus,
    Minus,
    Both,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Plus => "+",
            Polarity::Minus => "-",
            Polarity::Both => "±",
        })
    }
}

impl std::str::FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Polarity::Plus),
            "-" | "minus" => Ok(Polarity::Minus),
            "±" | "+-" | "pm" | "both" => Ok(Polarity::Both),
            other => Err(Error::parse(0, format!("unknown polarity {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternationMeasure {
    pub max_alternations: usize,
    /// `None` when the acceptor has no loops at all.
    pub polarity: Option<Polarity>,
    /// Strictly increasing chain realizing the maximum, smallest set first.
    pub witness_chain: Vec<LoopableSet>,
}

/// Longest alternation along inclusion chains of loops.
///
/// Polarity convention: among chains realizing the maximum, only those in the
/// maximal components not reachable from another such component count; the
/// polarity is the verdict of their smallest sets (`±` when both occur).
pub fn alternation_measure(acceptor: &Acceptor) -> Result<AlternationMeasure> {
    let raw = RawLoops::of(acceptor, &Limits::default())?;
    let n = raw.len();
    let structure = acceptor.structure();
    if n == 0 {
        return Ok(AlternationMeasure {
            max_alternations: 0,
            polarity: None,
            witness_chain: Vec::new(),
        });
    }
    // loops are sorted by size, so every strict subset comes first
    let mut best = vec![0usize; n];
    let mut starts = vec![(false, false); n]; // (some chain starts accepting, some starts rejecting)
    let mut pred = vec![usize::MAX; n];
    for i in 0..n {
        starts[i] = (raw.accepting[i], !raw.accepting[i]);
        for j in 0..i {
            if !raw.strictly_within(j, i) {
                continue;
            }
            let value = best[j] + usize::from(raw.accepting[j] != raw.accepting[i]);
            if value > best[i] {
                best[i] = value;
                starts[i] = starts[j];
                pred[i] = j;
            } else if value == best[i] && pred[i] != usize::MAX {
                starts[i] = (starts[i].0 || starts[j].0, starts[i].1 || starts[j].1);
            } else if value == best[i] {
                // ties with the chain consisting of loop i alone
                starts[i] = (starts[i].0 || starts[j].0, starts[i].1 || starts[j].1);
            }
        }
    }
    let max = *best.iter().max().unwrap();
    let top: Vec<usize> = (0..n).filter(|&i| best[i] == max).collect();

    let components = state_components(structure, &structure.reachable());
    let component_of = |i: usize| {
        components
            .iter()
            .position(|c| raw.states[i].is_subset(c))
            .expect("every loop lies in a maximal component")
    };
    let involved: BTreeSet<usize> = top.iter().map(|&i| component_of(i)).collect();
    let reach: Vec<FixedBitSet> = involved
        .iter()
        .map(|&c| {
            let from = components[c].ones().next().unwrap();
            structure.rooted_at(from).reachable()
        })
        .collect();
    let involved: Vec<usize> = involved.into_iter().collect();
    let sources: BTreeSet<usize> = involved
        .iter()
        .enumerate()
        .filter(|&(_, &c)| {
            let rep = components[c].ones().next().unwrap();
            !involved
                .iter()
                .enumerate()
                .any(|(j, &d)| d != c && reach[j].contains(rep))
        })
        .map(|(_, &c)| c)
        .collect();
    let (mut plus, mut minus) = (false, false);
    for &i in &top {
        if sources.contains(&component_of(i)) {
            plus |= starts[i].0;
            minus |= starts[i].1;
        }
    }
    let polarity = match (plus, minus) {
        (true, false) => Polarity::Plus,
        (false, true) => Polarity::Minus,
        _ => Polarity::Both,
    };

    let mut chain = Vec::new();
    let mut cur = top[0];
    loop {
        chain.push(LoopableSet {
            states: bits_to_set(&raw.states[cur]),
            transitions: structure.edges_to_transitions(&raw.edges[cur]),
            accepting: raw.accepting[cur],
        });
        if pred[cur] == usize::MAX {
            break;
        }
        cur = pred[cur];
    }
    chain.reverse();
    Ok(AlternationMeasure {
        max_alternations: max,
        polarity: Some(polarity),
        witness_chain: chain,
    })
}

fn weak_marking(acceptor: &Acceptor, accepting: bool) -> Result<StateSet> {
    let raw = RawLoops::of(acceptor, &Limits::default())?;
    if raw.any_pair(true, false) || raw.any_pair(false, true) {
        return Err(Error::NotWeak);
    }
    Ok((0..raw.len())
        .filter(|&i| raw.accepting[i] == accepting)
        .flat_map(|i| raw.states[i].ones().collect::<Vec<_>>())
        .collect())
}

/// Büchi acceptor on the same structure marking every state of an accepting loop.
pub fn weak_to_buchi(acceptor: &Acceptor) -> Result<Acceptor> {
    let f = weak_marking(acceptor, true)?;
    Acceptor::new(acceptor.structure().clone(), Acceptance::Buchi(f))
}

/// Co-Büchi acceptor on the same structure marking every state of a rejecting loop.
pub fn weak_to_cobuchi(acceptor: &Acceptor) -> Result<Acceptor> {
    let f = weak_marking(acceptor, false)?;
    Acceptor::new(acceptor.structure().clone(), Acceptance::CoBuchi(f))
}
