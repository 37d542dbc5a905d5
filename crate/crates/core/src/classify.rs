//! Decides which acceptance types can be placed on the rightcon structure of
//! a language, with a certificate for each positive answer and an
//! obstruction for each negative one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::acceptance::{Acceptance, Acceptor};
use crate::congruence::{projected_states, rightcon_quotient_with, Quotient};
use crate::error::Result;
use crate::lasso::LassoWord;
use crate::loops::{edge_loops, state_loops, RawLoops};
use crate::scc::state_components;
use crate::search::loop_witness;
use crate::structure::{bits_to_set, set_to_bits, StateSet, TransitionStructure};
use crate::Limits;

#[allow(clippy::upper_case_acronyms)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InfoClass {
    IT,
    IM,
    IP,
    IB,
    IC,
}

impl InfoClass {
    pub const ALL: [InfoClass; 5] = [
        InfoClass::IT,
        InfoClass::IM,
        InfoClass::IP,
        InfoClass::IB,
        InfoClass::IC,
    ];
}

impl fmt::Display for InfoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Why an acceptance type cannot be placed on the quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// Two lassos with the same infinity set on the quotient, one accepted.
    ConflictingLassos {
        accepted: LassoWord,
        rejected: LassoWord,
    },
    /// A quotient component every state of which lies on a loop of the
    /// opposite verdict, so no least color can be chosen for it.
    CoveredComponent {
        component: StateSet,
        accepting: bool,
    },
    /// A loop with the given verdict that avoids every state whose loops all
    /// share that verdict.
    UnmarkedLoop { set: StateSet, accepting: bool },
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub index: usize,
    pub trivial: bool,
    pub weak: bool,
    pub db: bool,
    pub dc: bool,
    pub quotient: Quotient,
    /// Acceptance on the quotient structure for every class that holds.
    pub certificates: BTreeMap<InfoClass, Acceptance>,
    pub obstructions: BTreeMap<InfoClass, Obstruction>,
}

impl Classification {
    pub fn holds(&self, class: InfoClass) -> bool {
        self.certificates.contains_key(&class)
    }

    pub fn certificate(&self, class: InfoClass) -> Option<Acceptor> {
        let acceptance = self.certificates.get(&class)?.clone();
        Some(
            Acceptor::new(self.quotient.structure.clone(), acceptance)
                .expect("certificates are well formed"),
        )
    }
}

pub fn classify(acceptor: &Acceptor) -> Result<Classification> {
    classify_with(acceptor, &Limits::default())
}

pub fn classify_with(acceptor: &Acceptor, limits: &Limits) -> Result<Classification> {
    let quotient = rightcon_quotient_with(acceptor, limits)?;
    let a = acceptor.structure();
    let k = a.symbol_count();
    let compiled = acceptor.compiled();
    let mut certificates = BTreeMap::new();
    let mut obstructions = BTreeMap::new();

    // Every run of the quotient is the image of a run of the acceptor, so the
    // acceptor's edge loops cover every infinity set the quotient can see.
    let loops: Vec<(FixedBitSet, bool)> = edge_loops(a, limits)?
        .into_iter()
        .map(|e| {
            let v = compiled.verdict(&a.edge_sources(&e), &e);
            (e, v)
        })
        .collect();
    let project_edges = |e: &FixedBitSet| {
        let mut out = FixedBitSet::with_capacity(quotient.structure.edge_count());
        for id in e.ones() {
            out.insert(quotient.class(id / k) * k + id % k);
        }
        out
    };

    let by_edges = fingerprint_table(&loops, project_edges);
    match by_edges {
        Ok(table) => {
            let t = &quotient.structure;
            let accepted = table
                .into_iter()
                .filter(|(_, v)| *v)
                .map(|(e, _)| t.edges_to_transitions(&e))
                .collect();
            certificates.insert(InfoClass::IT, Acceptance::MullerTransitions(accepted));
        }
        Err((x, y)) => {
            obstructions.insert(InfoClass::IT, conflict(acceptor, &loops, x, y));
        }
    }

    let by_states = fingerprint_table(&loops, |e| projected_states(&quotient, &a.edge_sources(e)));
    let verdicts = match by_states {
        Ok(table) => {
            let accepted = table
                .iter()
                .filter(|(_, v)| **v)
                .map(|(s, _)| bits_to_set(s))
                .collect();
            certificates.insert(InfoClass::IM, Acceptance::MullerStates(accepted));
            table
        }
        Err((x, y)) => {
            let o = conflict(acceptor, &loops, x, y);
            for class in [InfoClass::IM, InfoClass::IP, InfoClass::IB, InfoClass::IC] {
                obstructions.insert(class, o.clone());
            }
            return finish(acceptor, limits, quotient, certificates, obstructions);
        }
    };

    let q = &quotient.structure;
    let q_loops: Vec<(FixedBitSet, bool)> = state_loops(q, limits)?
        .into_iter()
        .map(|s| {
            let v = verdicts[&s];
            (s, v)
        })
        .collect();

    match parity_by_peeling(q, &q_loops) {
        Ok(colors) => {
            certificates.insert(InfoClass::IP, Acceptance::parity_from(&colors));
        }
        Err(o) => {
            obstructions.insert(InfoClass::IP, o);
        }
    }

    for (class, accepting) in [(InfoClass::IB, true), (InfoClass::IC, false)] {
        // states all of whose loops carry this verdict
        let marked: StateSet = (0..q.state_count())
            .filter(|&s| {
                q_loops
                    .iter()
                    .all(|(l, v)| !l.contains(s) || *v == accepting)
            })
            .collect();
        let marked_bits = set_to_bits(&marked, q.state_count());
        match q_loops
            .iter()
            .find(|(l, v)| *v == accepting && l.is_disjoint(&marked_bits))
        {
            None => {
                let acc = if accepting {
                    Acceptance::Buchi(marked)
                } else {
                    Acceptance::CoBuchi(marked)
                };
                certificates.insert(class, acc);
            }
            Some((l, _)) => {
                obstructions.insert(
                    class,
                    Obstruction::UnmarkedLoop {
                        set: bits_to_set(l),
                        accepting,
                    },
                );
            }
        }
    }
    finish(acceptor, limits, quotient, certificates, obstructions)
}

fn finish(
    acceptor: &Acceptor,
    limits: &Limits,
    quotient: Quotient,
    certificates: BTreeMap<InfoClass, Acceptance>,
    obstructions: BTreeMap<InfoClass, Obstruction>,
) -> Result<Classification> {
    let raw = RawLoops::of(acceptor, limits)?;
    let (db, dc) = (raw.is_db(), raw.is_dc());
    Ok(Classification {
        index: quotient.index(),
        trivial: quotient.index() == 1,
        weak: db && dc,
        db,
        dc,
        quotient,
        certificates,
        obstructions,
    })
}

/// Verdict per projected fingerprint, or the indices of two loops with the
/// same fingerprint and different verdicts.
fn fingerprint_table(
    loops: &[(FixedBitSet, bool)],
    key: impl Fn(&FixedBitSet) -> FixedBitSet,
) -> std::result::Result<HashMap<FixedBitSet, bool>, (usize, usize)> {
    let mut first: HashMap<FixedBitSet, (bool, usize)> = HashMap::new();
    for (i, (e, v)) in loops.iter().enumerate() {
        match first.get(&key(e)) {
            Some(&(w, j)) if w != *v => return Err((j, i)),
            Some(_) => {}
            None => {
                first.insert(key(e), (*v, i));
            }
        }
    }
    Ok(first.into_iter().map(|(k, (v, _))| (k, v)).collect())
}

fn conflict(acceptor: &Acceptor, loops: &[(FixedBitSet, bool)], x: usize, y: usize) -> Obstruction {
    let (acc, rej) = if loops[x].1 { (x, y) } else { (y, x) };
    Obstruction::ConflictingLassos {
        accepted: loop_witness(acceptor.structure(), &loops[acc].0),
        rejected: loop_witness(acceptor.structure(), &loops[rej].0),
    }
}

/// Parity coloring of the quotient, built component by component: states of
/// a component lying on no loop of the opposite verdict take the component's
/// color, and the remainder is colored recursively with larger colors.
/// Fails exactly when some component has no such state.
fn parity_by_peeling(
    q: &TransitionStructure,
    loops: &[(FixedBitSet, bool)],
) -> std::result::Result<Vec<u32>, Obstruction> {
    let verdict: HashMap<&FixedBitSet, bool> = loops.iter().map(|(s, v)| (s, *v)).collect();
    let mut colors = vec![0u32; q.state_count()];
    let mut work: Vec<(FixedBitSet, u32)> = state_components(q, &q.reachable())
        .into_iter()
        .map(|c| {
            let base = u32::from(verdict[&c]);
            (c, base)
        })
        .collect();
    while let Some((component, base)) = work.pop() {
        let v = verdict[&component];
        let mut covered = FixedBitSet::with_capacity(q.state_count());
        for (l, w) in loops {
            if *w != v && l.is_subset(&component) {
                covered.union_with(l);
            }
        }
        if covered == component {
            return Err(Obstruction::CoveredComponent {
                component: bits_to_set(&component),
                accepting: v,
            });
        }
        for s in component.difference(&covered) {
            colors[s] = base;
        }
        for inner in state_components(q, &covered) {
            let want = u32::from(verdict[&inner]);
            let next = if (base + 1) % 2 == want {
                base + 1
            } else {
                base + 2
            };
            work.push((inner, next));
        }
    }
    Ok(colors)
}
