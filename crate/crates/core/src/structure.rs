//! Deterministic complete transition structures.
//!
//! States are dense integers `0..state_count`. A transition out of state `p`
//! on symbol `a` has the edge id `p * |Σ| + a`; edge ids index the bitsets the
//! loop machinery works with.

use std::collections::{BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::alphabet::Alphabet;
use crate::error::{Error, RefKind, Result};

pub type StateId = usize;
pub type SymbolId = usize;
pub type StateSet = BTreeSet<StateId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: StateId,
    pub symbol: SymbolId,
    pub to: StateId,
}

impl Transition {
    pub fn new(from: StateId, symbol: SymbolId, to: StateId) -> Self {
        Self { from, symbol, to }
    }
}

pub type TransitionSet = BTreeSet<Transition>;

/// A transition structure whose transition function may still be partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialStructure {
    pub alphabet: Alphabet,
    pub state_count: usize,
    pub initial: StateId,
    /// `delta[state][symbol]`
    pub delta: Vec<Vec<Option<StateId>>>,
}

impl PartialStructure {
    pub fn new(alphabet: Alphabet, state_count: usize, initial: StateId) -> Self {
        let k = alphabet.len();
        Self {
            alphabet,
            state_count,
            initial,
            delta: vec![vec![None; k]; state_count],
        }
    }

    pub fn set(&mut self, from: StateId, symbol: SymbolId, to: StateId) -> &mut Self {
        self.delta[from][symbol] = Some(to);
        self
    }

    /// Adds the transition `from --token--> to`, growing the state count as needed.
    pub fn add(&mut self, from: StateId, token: &str, to: StateId) -> Result<&mut Self> {
        let sym = self.alphabet.require(token)?;
        let needed = from.max(to) + 1;
        if needed > self.state_count {
            let k = self.alphabet.len();
            self.delta.resize(needed, vec![None; k]);
            self.state_count = needed;
        }
        Ok(self.set(from, sym, to))
    }

    /// Adds `from --t--> to` for every single-character token in `tokens`.
    pub fn add_all(&mut self, from: StateId, tokens: &[&str], to: StateId) -> Result<&mut Self> {
        for t in tokens {
            self.add(from, t, to)?;
        }
        Ok(self)
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Adds one fresh sink state absorbing every missing transition. A total
    /// structure is returned unchanged.
    pub fn complete_with_sink(mut self) -> Self {
        if self.is_complete() {
            return self;
        }
        let sink = self.state_count;
        let k = self.alphabet.len();
        self.delta.push(vec![Some(sink); k]);
        self.state_count += 1;
        for row in &mut self.delta {
            for t in row.iter_mut() {
                t.get_or_insert(sink);
            }
        }
        self
    }

    pub fn into_complete(self) -> Result<TransitionStructure> {
        if self.state_count == 0 {
            return Err(Error::NoStates);
        }
        if self.initial >= self.state_count {
            return Err(Error::DanglingReference(
                RefKind::InitialState,
                self.initial,
            ));
        }
        let mut delta = Vec::with_capacity(self.state_count);
        for (p, row) in self.delta.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (a, t) in row.iter().enumerate() {
                let q = t.ok_or_else(|| {
                    Error::IncompleteTransition(p, self.alphabet.symbol(a).to_string())
                })?;
                if q >= self.state_count {
                    return Err(Error::DanglingReference(RefKind::TransitionTarget, q));
                }
                out.push(q);
            }
            delta.push(out);
        }
        Ok(TransitionStructure {
            alphabet: self.alphabet,
            initial: self.initial,
            delta,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionStructure {
    alphabet: Alphabet,
    initial: StateId,
    delta: Vec<Vec<StateId>>,
}

impl TransitionStructure {
    /// Builds a complete structure from a `delta[state][symbol]` table.
    pub fn from_table(
        alphabet: Alphabet,
        initial: StateId,
        delta: Vec<Vec<StateId>>,
    ) -> Result<Self> {
        let n = delta.len();
        let mut partial = PartialStructure::new(alphabet, n, initial);
        for (p, row) in delta.into_iter().enumerate() {
            for (a, q) in row.into_iter().enumerate() {
                if a >= partial.alphabet.len() {
                    return Err(Error::DanglingReference(RefKind::Symbol, a));
                }
                partial.delta[p][a] = Some(q);
            }
        }
        partial.into_complete()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn step(&self, state: StateId, symbol: SymbolId) -> StateId {
        self.delta[state][symbol]
    }

    pub fn run(&self, from: StateId, word: &[SymbolId]) -> StateId {
        word.iter().fold(from, |q, &a| self.delta[q][a])
    }

    pub fn table(&self) -> &[Vec<StateId>] {
        &self.delta
    }

    /// Same structure, different initial state.
    pub fn rooted_at(&self, state: StateId) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            initial: state,
            delta: self.delta.clone(),
        }
    }

    pub fn to_partial(&self) -> PartialStructure {
        PartialStructure {
            alphabet: self.alphabet.clone(),
            state_count: self.state_count(),
            initial: self.initial,
            delta: self
                .delta
                .iter()
                .map(|row| row.iter().map(|&q| Some(q)).collect())
                .collect(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.state_count() * self.symbol_count()
    }

    pub fn edge_id(&self, from: StateId, symbol: SymbolId) -> usize {
        from * self.symbol_count() + symbol
    }

    pub fn edge(&self, id: usize) -> Transition {
        let k = self.symbol_count();
        let (p, a) = (id / k, id % k);
        Transition::new(p, a, self.delta[p][a])
    }

    pub fn has_transition(&self, t: &Transition) -> bool {
        t.from < self.state_count()
            && t.symbol < self.symbol_count()
            && self.delta[t.from][t.symbol] == t.to
    }

    /// Breadth-first search from the initial state trying symbols in order.
    /// Returns, per state, the shortest and then lexicographically least word
    /// reaching it (`None` for unreachable states).
    pub fn access_words(&self) -> Vec<Option<Vec<SymbolId>>> {
        let mut words: Vec<Option<Vec<SymbolId>>> = vec![None; self.state_count()];
        words[self.initial] = Some(Vec::new());
        let mut queue = VecDeque::from([self.initial]);
        while let Some(p) = queue.pop_front() {
            for a in 0..self.symbol_count() {
                let q = self.delta[p][a];
                if words[q].is_none() {
                    let mut w = words[p].clone().unwrap();
                    w.push(a);
                    words[q] = Some(w);
                    queue.push_back(q);
                }
            }
        }
        words
    }

    /// Reachable states in breadth-first discovery order.
    pub fn reachable_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        let mut order = vec![self.initial];
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            i += 1;
            for &q in &self.delta[p] {
                if !seen[q] {
                    seen[q] = true;
                    order.push(q);
                }
            }
        }
        order
    }

    pub fn reachable(&self) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.state_count());
        for q in self.reachable_order() {
            bits.insert(q);
        }
        bits
    }

    pub fn all_reachable(&self) -> bool {
        self.reachable_order().len() == self.state_count()
    }

    /// Restricts to reachable states, renumbered in discovery order. Returns
    /// the trimmed structure and the old id of each new state.
    pub fn trim(&self) -> (Self, Vec<StateId>) {
        let order = self.reachable_order();
        let mut new_id = vec![usize::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q] = i;
        }
        let delta = order
            .iter()
            .map(|&p| self.delta[p].iter().map(|&q| new_id[q]).collect())
            .collect();
        (
            Self {
                alphabet: self.alphabet.clone(),
                initial: 0,
                delta,
            },
            order,
        )
    }

    /// Edge ids of all transitions whose source and target lie in `states`.
    pub fn internal_edges(&self, states: &FixedBitSet) -> FixedBitSet {
        let mut edges = FixedBitSet::with_capacity(self.edge_count());
        for p in states.ones() {
            for a in 0..self.symbol_count() {
                if states.contains(self.delta[p][a]) {
                    edges.insert(self.edge_id(p, a));
                }
            }
        }
        edges
    }

    /// Source states of the given edges.
    pub fn edge_sources(&self, edges: &FixedBitSet) -> FixedBitSet {
        let k = self.symbol_count();
        let mut states = FixedBitSet::with_capacity(self.state_count());
        for e in edges.ones() {
            states.insert(e / k);
        }
        states
    }

    pub fn edges_to_transitions(&self, edges: &FixedBitSet) -> TransitionSet {
        edges.ones().map(|e| self.edge(e)).collect()
    }

    pub fn transitions_to_edges(&self, ts: &TransitionSet) -> Result<FixedBitSet> {
        let mut edges = FixedBitSet::with_capacity(self.edge_count());
        for t in ts {
            if !self.has_transition(t) {
                return Err(Error::UnknownTransition(t.from, t.symbol, t.to));
            }
            edges.insert(self.edge_id(t.from, t.symbol));
        }
        Ok(edges)
    }
}

pub(crate) fn bits_to_set(bits: &FixedBitSet) -> StateSet {
    bits.ones().collect()
}

pub(crate) fn set_to_bits(set: &StateSet, len: usize) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(len);
    for &q in set {
        bits.insert(q);
    }
    bits
}

/// Reachable synchronous product of two structures over the same alphabet.
#[derive(Debug, Clone)]
pub struct Product {
    pub structure: TransitionStructure,
    /// Component states of each product state.
    pub pairs: Vec<(StateId, StateId)>,
}

pub fn product(a: &TransitionStructure, b: &TransitionStructure) -> Result<Product> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let k = a.symbol_count();
    let start = (a.initial, b.initial);
    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::from([(start, 0)]);
    let mut pairs = vec![start];
    let mut delta: Vec<Vec<StateId>> = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        let mut row = Vec::with_capacity(k);
        for s in 0..k {
            let next = (a.delta[p][s], b.delta[q][s]);
            let id = *ids.entry(next).or_insert_with(|| {
                pairs.push(next);
                pairs.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    Ok(Product {
        structure: TransitionStructure {
            alphabet: a.alphabet.clone(),
            initial: 0,
            delta,
        },
        pairs,
    })
}
