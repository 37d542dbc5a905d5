//! Transition profiles of finite words and the monoid they form, used to
//! decide whether a language is respective of its right congruence and
//! whether it is non-counting.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::acceptance::{Acceptor, Compiled};
use crate::congruence::{distinguish_states, rightcon_quotient_with, Quotient};
use crate::error::{Error, Result};
use crate::lasso::LassoWord;
use crate::structure::{StateId, SymbolId, TransitionStructure};
use crate::Limits;

/// What reading a word does from each state: where it ends and what it
/// visits on the way (states entered, and transitions taken when the
/// acceptance observes transitions).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    pub target: Vec<StateId>,
    pub visited_states: Vec<FixedBitSet>,
    pub visited_transitions: Option<Vec<FixedBitSet>>,
}

impl Profile {
    pub fn identity(states: usize, edges: usize, track_transitions: bool) -> Self {
        Self {
            target: (0..states).collect(),
            visited_states: vec![FixedBitSet::with_capacity(states); states],
            visited_transitions: track_transitions
                .then(|| vec![FixedBitSet::with_capacity(edges); states]),
        }
    }

    pub fn letter(structure: &TransitionStructure, a: SymbolId, track_transitions: bool) -> Self {
        let n = structure.state_count();
        let mut p = Self::identity(n, structure.edge_count(), track_transitions);
        for q in 0..n {
            let r = structure.step(q, a);
            p.target[q] = r;
            p.visited_states[q].insert(r);
            if let Some(t) = &mut p.visited_transitions {
                t[q].insert(structure.edge_id(q, a));
            }
        }
        p
    }

    /// Profile of reading `self`'s word and then `next`'s.
    pub fn then(&self, next: &Profile) -> Profile {
        let n = self.target.len();
        let mut out = self.clone();
        for p in 0..n {
            let mid = self.target[p];
            out.target[p] = next.target[mid];
            out.visited_states[p].union_with(&next.visited_states[mid]);
            if let (Some(t), Some(u)) = (&mut out.visited_transitions, &next.visited_transitions) {
                t[p].union_with(&u[mid]);
            }
        }
        out
    }
}

/// All profiles of nonempty and empty words, each with its shortest, then
/// least, realizing word.
#[derive(Debug, Clone)]
pub struct ProfileMonoid {
    pub elements: Vec<Profile>,
    pub representatives: Vec<Vec<SymbolId>>,
    /// `right[i][a]` is the element of `representatives[i]·a`.
    pub right: Vec<Vec<usize>>,
    compiled: Compiled,
}

impl ProfileMonoid {
    pub const IDENTITY: usize = 0;

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Distinct target maps, i.e. the size of the plain transition monoid.
    pub fn target_maps(&self) -> usize {
        let maps: std::collections::HashSet<&Vec<StateId>> =
            self.elements.iter().map(|e| &e.target).collect();
        maps.len()
    }

    pub fn element_of(&self, word: &[SymbolId]) -> usize {
        word.iter().fold(Self::IDENTITY, |e, &a| self.right[e][a])
    }

    /// Acceptance of `rep(s)·rep(t)^ω` read from `from`.
    pub fn omega_accept(&self, s: usize, t: usize, from: StateId) -> bool {
        omega_verdict(&self.compiled, &self.elements[s], &self.elements[t], from)
    }
}

fn omega_verdict(compiled: &Compiled, s: &Profile, t: &Profile, from: StateId) -> bool {
    let n = t.target.len();
    let mut seen = vec![false; n];
    let mut q = s.target[from];
    while !seen[q] {
        seen[q] = true;
        q = t.target[q];
    }
    // q is now on the cycle of t's target map
    let mut states = FixedBitSet::with_capacity(n);
    let edge_len = t.visited_transitions.as_ref().map_or(0, |v| v[0].len());
    let mut edges = FixedBitSet::with_capacity(edge_len);
    let start = q;
    loop {
        states.union_with(&t.visited_states[q]);
        if let Some(v) = &t.visited_transitions {
            edges.union_with(&v[q]);
        }
        q = t.target[q];
        if q == start {
            break;
        }
    }
    compiled.verdict(&states, &edges)
}

/// Acceptance of (word of `s`)·(word of `t`)^ω from `from`; `t` must
/// describe a nonempty word.
pub fn omega_accept(acceptor: &Acceptor, s: &Profile, t: &Profile, from: StateId) -> bool {
    omega_verdict(&acceptor.compiled(), s, t, from)
}

pub fn profile_monoid(acceptor: &Acceptor) -> Result<ProfileMonoid> {
    profile_monoid_with(acceptor, &Limits::default())
}

pub fn profile_monoid_with(acceptor: &Acceptor, limits: &Limits) -> Result<ProfileMonoid> {
    let s = acceptor.structure();
    let compiled = acceptor.compiled();
    let track = !compiled.state_based();
    let k = s.symbol_count();
    let letters: Vec<Profile> = (0..k).map(|a| Profile::letter(s, a, track)).collect();
    let identity = Profile::identity(s.state_count(), s.edge_count(), track);
    let mut ids: HashMap<Profile, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut representatives = vec![Vec::new()];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for (a, letter) in letters.iter().enumerate() {
            let next = elements[i].then(letter);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if elements.len() >= limits.monoid_elements {
                        return Err(Error::CapacityExceeded {
                            what: "profile monoid elements",
                            limit: limits.monoid_elements,
                        });
                    }
                    let mut word = representatives[i].clone();
                    word.push(a);
                    ids.insert(next.clone(), elements.len());
                    elements.push(next);
                    representatives.push(word);
                    queue.push_back(elements.len() - 1);
                    elements.len() - 1
                }
            };
            row.push(id);
        }
        // elements are dequeued in creation order
        right.push(row);
    }
    Ok(ProfileMonoid {
        elements,
        representatives,
        right,
        compiled,
    })
}

/// The action of a word on quotient classes.
fn class_map(quotient: &Quotient, leaders: &[StateId], profile: &Profile) -> Vec<StateId> {
    leaders
        .iter()
        .map(|&q| quotient.class(profile.target[q]))
        .collect()
}

fn leaders(acceptor: &Acceptor, quotient: &Quotient) -> Vec<StateId> {
    quotient
        .representatives
        .iter()
        .map(|w| acceptor.structure().run(acceptor.structure().initial(), w))
        .collect()
}

/// Length of the cycle that the orbit of `c` under `f` ends in.
fn orbit_period(f: &[StateId], c: StateId) -> (usize, usize) {
    let mut first_seen = vec![usize::MAX; f.len()];
    let mut cur = c;
    let mut i = 0;
    while first_seen[cur] == usize::MAX {
        first_seen[cur] = i;
        cur = f[cur];
        i += 1;
    }
    (first_seen[cur], i - first_seen[cur])
}

/// A prefix `x` and nonempty `u` with `x·u^ω` accepted although the classes
/// of `x·u^n` never settle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RespectiveWitness {
    pub prefix: Vec<SymbolId>,
    pub pumped: Vec<SymbolId>,
}

pub fn is_respective(acceptor: &Acceptor) -> Result<bool> {
    Ok(respective_violation(acceptor, &Limits::default())?.is_none())
}

pub fn respective_violation(
    acceptor: &Acceptor,
    limits: &Limits,
) -> Result<Option<RespectiveWitness>> {
    let quotient = rightcon_quotient_with(acceptor, limits)?;
    let monoid = profile_monoid_with(acceptor, limits)?;
    let leaders = leaders(acceptor, &quotient);
    let s = acceptor.structure();
    let access = s.access_words();
    let mut states = s.reachable_order();
    states.sort_by(|&x, &y| {
        let (wx, wy) = (access[x].as_ref().unwrap(), access[y].as_ref().unwrap());
        (wx.len(), wx).cmp(&(wy.len(), wy))
    });
    for e in 1..monoid.len() {
        let f = class_map(&quotient, &leaders, &monoid.elements[e]);
        for &q in &states {
            if monoid.omega_accept(ProfileMonoid::IDENTITY, e, q)
                && orbit_period(&f, quotient.class(q)).1 != 1
            {
                return Ok(Some(RespectiveWitness {
                    prefix: access[q].clone().unwrap(),
                    pumped: monoid.representatives[e].clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Direct check of one instance: if `x·u^ω` is accepted, the classes of
/// `x·u^n` must reach a fixed point.
pub fn respective_pair_check(acceptor: &Acceptor, x: &[SymbolId], u: &[SymbolId]) -> Result<bool> {
    let quotient = rightcon_quotient_with(acceptor, &Limits::default())?;
    respective_pair_check_in(acceptor, &quotient, x, u)
}

/// [`respective_pair_check`] against an already computed quotient.
pub fn respective_pair_check_in(
    acceptor: &Acceptor,
    quotient: &Quotient,
    x: &[SymbolId],
    u: &[SymbolId],
) -> Result<bool> {
    let word = LassoWord::new(x.to_vec(), u.to_vec())?;
    if !acceptor.accepts(&word)? {
        return Ok(true);
    }
    let s = acceptor.structure();
    let mut first_seen = vec![usize::MAX; s.state_count()];
    let mut trail = Vec::new();
    let mut q = s.run(s.initial(), x);
    while first_seen[q] == usize::MAX {
        first_seen[q] = trail.len();
        trail.push(q);
        q = s.run(q, u);
    }
    let class = quotient.class(q);
    Ok(trail[first_seen[q]..]
        .iter()
        .all(|&r| quotient.class(r) == class))
}

/// `u·v^n·w` and `u·v^(n+1)·w` differ in membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingWitness {
    pub prefix: Vec<SymbolId>,
    pub pumped: Vec<SymbolId>,
    pub exponent: usize,
    pub tail: LassoWord,
}

impl CountingWitness {
    pub fn word(&self, extra: usize) -> LassoWord {
        let mut spoke = self.prefix.clone();
        for _ in 0..self.exponent + extra {
            spoke.extend_from_slice(&self.pumped);
        }
        self.tail.prefixed(&spoke)
    }
}

pub fn is_non_counting(acceptor: &Acceptor) -> Result<bool> {
    Ok(counting_witness(acceptor, &Limits::default())?.is_none())
}

/// Two words act alike in every finite context iff they move quotient
/// classes alike, so the language is non-counting iff no word permutes a
/// cycle of two or more classes.
pub fn counting_witness(acceptor: &Acceptor, limits: &Limits) -> Result<Option<CountingWitness>> {
    let quotient = rightcon_quotient_with(acceptor, limits)?;
    let monoid = profile_monoid_with(acceptor, limits)?;
    let leaders = leaders(acceptor, &quotient);
    let s = acceptor.structure();
    for e in 1..monoid.len() {
        let f = class_map(&quotient, &leaders, &monoid.elements[e]);
        for c in 0..f.len() {
            let (tail_len, period) = orbit_period(&f, c);
            if period == 1 || tail_len != 0 {
                continue;
            }
            let v = &monoid.representatives[e];
            let u = quotient.representatives[c].clone();
            let exponent = period * quotient.index().div_ceil(period);
            let mut word = u.clone();
            for _ in 0..exponent {
                word.extend_from_slice(v);
            }
            let r1 = s.run(s.initial(), &word);
            let r2 = s.run(r1, v);
            let tail = distinguish_states(acceptor, r1, r2, limits)?
                .expect("distinct classes are distinguishable");
            return Ok(Some(CountingWitness {
                prefix: u,
                pumped: v.clone(),
                exponent,
                tail,
            }));
        }
    }
    Ok(None)
}
