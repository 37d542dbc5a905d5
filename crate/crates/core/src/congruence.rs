//! The right congruence of an acceptor's language: state equivalence,
//! the quotient structure, refinement, and trivial-congruence decomposition.

use std::collections::{BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::acceptance::{Acceptance, Acceptor};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::lasso::{lasso_run_from, LassoWord};
use crate::scc::state_components;
use crate::search::distinguish_with;
use crate::structure::{product, set_to_bits, StateId, StateSet, SymbolId, TransitionStructure};
use crate::Limits;

/// `true` iff the acceptor accepts the same words from `p` and from `q`.
pub fn state_equivalent(acceptor: &Acceptor, p: StateId, q: StateId) -> Result<bool> {
    Ok(distinguish_states(acceptor, p, q, &Limits::default())?.is_none())
}

/// A lasso accepted from exactly one of `p`, `q`.
pub fn distinguish_states(
    acceptor: &Acceptor,
    p: StateId,
    q: StateId,
    limits: &Limits,
) -> Result<Option<LassoWord>> {
    if p == q {
        return Ok(None);
    }
    distinguish_with(&acceptor.rooted_at(p), &acceptor.rooted_at(q), limits)
}

/// The rightcon structure of an acceptor's language together with the
/// projection from acceptor states onto its classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub structure: TransitionStructure,
    /// Class of each acceptor state; `None` for unreachable states.
    pub class_of: Vec<Option<StateId>>,
    /// Shortest, then least, word reaching each class.
    pub representatives: Vec<Vec<SymbolId>>,
}

impl Quotient {
    pub fn index(&self) -> usize {
        self.structure.state_count()
    }

    pub fn class(&self, state: StateId) -> StateId {
        self.class_of[state].expect("state is reachable")
    }
}

pub fn rightcon_quotient(acceptor: &Acceptor) -> Result<Quotient> {
    rightcon_quotient_with(acceptor, &Limits::default())
}

pub fn rightcon_quotient_with(acceptor: &Acceptor, limits: &Limits) -> Result<Quotient> {
    let s = acceptor.structure();
    let access = s.access_words();
    let mut order: Vec<StateId> = s.reachable_order();
    order.sort_by(|&x, &y| {
        let (wx, wy) = (access[x].as_ref().unwrap(), access[y].as_ref().unwrap());
        (wx.len(), wx).cmp(&(wy.len(), wy))
    });
    // Classes are numbered by first appearance in shortlex order, so each
    // class's first member carries its representative.
    let mut class_of = vec![None; s.state_count()];
    let mut leaders: Vec<StateId> = Vec::new();
    for &q in &order {
        let mut found = None;
        for (c, &leader) in leaders.iter().enumerate() {
            if distinguish_states(acceptor, leader, q, limits)?.is_none() {
                found = Some(c);
                break;
            }
        }
        let c = found.unwrap_or_else(|| {
            leaders.push(q);
            leaders.len() - 1
        });
        class_of[q] = Some(c);
    }
    let delta = leaders
        .iter()
        .map(|&q| {
            (0..s.symbol_count())
                .map(|a| class_of[s.step(q, a)].unwrap())
                .collect()
        })
        .collect();
    let structure = TransitionStructure::from_table(
        s.alphabet().clone(),
        class_of[s.initial()].unwrap(),
        delta,
    )?;
    let representatives = leaders
        .iter()
        .map(|&q| access[q].clone().unwrap())
        .collect();
    Ok(Quotient {
        structure,
        class_of,
        representatives,
    })
}

pub fn index(acceptor: &Acceptor) -> Result<usize> {
    Ok(rightcon_quotient(acceptor)?.index())
}

pub fn is_trivial(acceptor: &Acceptor) -> Result<bool> {
    Ok(index(acceptor)? == 1)
}

/// Words reaching the same state of `a` always reach the same state of `b`.
pub fn refines(a: &TransitionStructure, b: &TransitionStructure) -> Result<bool> {
    let prod = product(a, b)?;
    let mut image: Vec<Option<StateId>> = vec![None; a.state_count()];
    for &(p, q) in &prod.pairs {
        match image[p] {
            Some(r) if r != q => return Ok(false),
            _ => image[p] = Some(q),
        }
    }
    Ok(true)
}

/// A transition structure whose transitions lead to sets of states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondeterministicStructure {
    pub alphabet: Alphabet,
    pub initial: StateSet,
    pub delta: Vec<Vec<StateSet>>,
}

impl NondeterministicStructure {
    pub fn state_count(&self) -> usize {
        self.delta.len()
    }
}

/// Subset construction restricted to reachable subsets, in breadth-first
/// symbol order. Returns the structure and the subset behind each state.
pub fn powerset(n: &NondeterministicStructure) -> Result<(TransitionStructure, Vec<StateSet>)> {
    let k = n.alphabet.len();
    let mut ids: HashMap<StateSet, StateId> = HashMap::new();
    let mut subsets = vec![n.initial.clone()];
    ids.insert(n.initial.clone(), 0);
    let mut delta: Vec<Vec<StateId>> = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next: StateSet = subsets[i]
                .iter()
                .flat_map(|&q| n.delta[q][a].iter().copied())
                .collect();
            let id = *ids.entry(next.clone()).or_insert_with(|| {
                subsets.push(next);
                queue.push_back(subsets.len() - 1);
                subsets.len() - 1
            });
            row.push(id);
        }
        if delta.len() <= i {
            delta.resize(i + 1, Vec::new());
        }
        delta[i] = row;
    }
    Ok((
        TransitionStructure::from_table(n.alphabet.clone(), 0, delta)?,
        subsets,
    ))
}

/// A deterministic automaton on finite words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAutomaton {
    pub structure: TransitionStructure,
    pub accepting: StateSet,
}

impl FiniteAutomaton {
    pub fn accepts(&self, word: &[SymbolId]) -> bool {
        self.accepting
            .contains(&self.structure.run(self.structure.initial(), word))
    }
}

/// One summand `R_i` of a trivial-congruence language `Σ*(∪ R_i^ω)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionPart {
    pub states: StateSet,
    pub anchor: StateId,
    /// Words leading from `anchor` back to `anchor` through exactly `states`.
    pub words: FiniteAutomaton,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialDecomposition {
    pub structure: TransitionStructure,
    pub parts: Vec<DecompositionPart>,
}

impl TrivialDecomposition {
    /// Membership of a lasso in `Σ*(∪ R_i^ω)`: some rotation of the cycle,
    /// read from an anchor, returns to it with infinity set exactly `S_i`.
    pub fn accepts(&self, word: &LassoWord) -> Result<bool> {
        let v = word.cycle();
        for part in &self.parts {
            for offset in 0..v.len() {
                let mut rotated = v[offset..].to_vec();
                rotated.extend_from_slice(&v[..offset]);
                let run =
                    lasso_run_from(&self.structure, part.anchor, &LassoWord::periodic(rotated)?)?;
                if run.entry_index == 0 && run.inf_states == part.states {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Splits a trivial-congruence state-Muller acceptor into its `R_i` parts,
/// one per strongly connected table entry.
pub fn trivial_decomposition(acceptor: &Acceptor) -> Result<TrivialDecomposition> {
    let Acceptance::MullerStates(table) = acceptor.acceptance() else {
        return Err(Error::NotMuller);
    };
    let idx = index(acceptor)?;
    if idx != 1 {
        return Err(Error::NotTrivial(idx));
    }
    let s = acceptor.structure();
    let n = s.state_count();
    let reachable = s.reachable();
    let mut parts = Vec::new();
    for entry in table {
        let bits = set_to_bits(entry, n);
        if !bits.is_subset(&reachable) || state_components(s, &bits) != vec![bits.clone()] {
            continue;
        }
        let anchor = *entry.iter().next().unwrap();
        parts.push(DecompositionPart {
            states: entry.clone(),
            anchor,
            words: loop_words(s, &bits, anchor)?,
        });
    }
    Ok(TrivialDecomposition {
        structure: s.clone(),
        parts,
    })
}

/// States are (current, visited) pairs inside `inside`, plus one dead state.
fn loop_words(
    s: &TransitionStructure,
    inside: &FixedBitSet,
    anchor: StateId,
) -> Result<FiniteAutomaton> {
    let k = s.symbol_count();
    let mut ids: HashMap<(StateId, FixedBitSet), StateId> = HashMap::new();
    let mut keys: Vec<(StateId, FixedBitSet)> = Vec::new();
    let start = (anchor, FixedBitSet::with_capacity(s.state_count()));
    ids.insert(start.clone(), 0);
    keys.push(start);
    let mut delta: Vec<Vec<StateId>> = Vec::new();
    let mut i = 0;
    let mut dead_used = false;
    const DEAD: StateId = usize::MAX;
    while i < keys.len() {
        let (q, visited) = keys[i].clone();
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let r = s.step(q, a);
            if !inside.contains(r) {
                dead_used = true;
                row.push(DEAD);
                continue;
            }
            let mut v = visited.clone();
            v.insert(r);
            let key = (r, v);
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    ids.insert(key.clone(), keys.len());
                    keys.push(key);
                    keys.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let dead = keys.len();
    if dead_used {
        for row in &mut delta {
            for t in row.iter_mut() {
                if *t == DEAD {
                    *t = dead;
                }
            }
        }
        delta.push(vec![dead; k]);
    }
    let accepting: BTreeSet<StateId> = ids
        .get(&(anchor, inside.clone()))
        .copied()
        .into_iter()
        .collect();
    Ok(FiniteAutomaton {
        structure: TransitionStructure::from_table(s.alphabet().clone(), 0, delta)?,
        accepting,
    })
}

pub(crate) fn projected_states(quotient: &Quotient, states: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(quotient.index());
    for q in states.ones() {
        out.insert(quotient.class(q));
    }
    out
}
