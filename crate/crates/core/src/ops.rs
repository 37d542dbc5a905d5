//! Complement, Boolean combination and acceptance conversion.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use crate::acceptance::{Acceptance, AcceptanceKind, Acceptor};
use crate::error::{Error, Result};
use crate::loops::{edge_loops, state_loops};
use crate::structure::{bits_to_set, product, StateId};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
}

impl BoolOp {
    fn apply(self, x: bool, y: bool) -> bool {
        match self {
            BoolOp::Union => x || y,
            BoolOp::Intersection => x && y,
        }
    }
}

/// Acceptor on the same structure accepting exactly the rejected words.
pub fn complement(acceptor: &Acceptor) -> Result<Acceptor> {
    complement_with(acceptor, &Limits::default())
}

pub fn complement_with(acceptor: &Acceptor, limits: &Limits) -> Result<Acceptor> {
    let structure = acceptor.structure();
    let acceptance = match acceptor.acceptance() {
        Acceptance::Buchi(f) => Acceptance::CoBuchi(f.clone()),
        Acceptance::CoBuchi(f) => Acceptance::Buchi(f.clone()),
        Acceptance::Parity(kappa) => {
            Acceptance::Parity(kappa.iter().map(|(&q, &c)| (q, c + 1)).collect())
        }
        Acceptance::MullerStates(table) => Acceptance::MullerStates(
            state_loops(structure, limits)?
                .iter()
                .map(bits_to_set)
                .filter(|s| !table.contains(s))
                .collect(),
        ),
        Acceptance::MullerTransitions(table) => Acceptance::MullerTransitions(
            edge_loops(structure, limits)?
                .iter()
                .map(|e| structure.edges_to_transitions(e))
                .filter(|t| !table.contains(t))
                .collect(),
        ),
    };
    let acceptance = match acceptance {
        Acceptance::Parity(kappa)
            if kappa
                .values()
                .any(|&c| c > 2 * structure.state_count() as u32) =>
        {
            Acceptance::Parity(compact_colors(&kappa))
        }
        other => other,
    };
    Acceptor::new(structure.clone(), acceptance)
}

/// Merges adjacent colors of equal parity; the least color seen infinitely
/// often keeps its parity on every set of states.
fn compact_colors(kappa: &BTreeMap<StateId, u32>) -> BTreeMap<StateId, u32> {
    let distinct: BTreeSet<u32> = kappa.values().copied().collect();
    let mut renamed = BTreeMap::new();
    let mut prev: Option<(u32, u32)> = None;
    for c in distinct {
        let new = match prev {
            None => c % 2,
            Some((old, new)) if old % 2 == c % 2 => new,
            Some((_, new)) => new + 1,
        };
        renamed.insert(c, new);
        prev = Some((c, new));
    }
    kappa.iter().map(|(&q, c)| (q, renamed[c])).collect()
}

/// Muller acceptor on the reachable product whose loops are accepting iff
/// the operands' verdicts on the projections combine to `true`.
pub fn combine(a: &Acceptor, b: &Acceptor, op: BoolOp) -> Result<Acceptor> {
    combine_with(a, b, op, &Limits::default())
}

pub fn combine_with(a: &Acceptor, b: &Acceptor, op: BoolOp, limits: &Limits) -> Result<Acceptor> {
    let prod = product(a.structure(), b.structure())?;
    let p = &prod.structure;
    let k = p.symbol_count();
    let (ca, cb) = (a.compiled(), b.compiled());
    let project = |edges: &FixedBitSet, side: usize| {
        let own = if side == 0 {
            a.structure()
        } else {
            b.structure()
        };
        let mut s = FixedBitSet::with_capacity(own.state_count());
        let mut t = FixedBitSet::with_capacity(own.edge_count());
        for e in edges.ones() {
            let pair = prod.pairs[e / k];
            let q = if side == 0 { pair.0 } else { pair.1 };
            s.insert(q);
            t.insert(own.edge_id(q, e % k));
        }
        (s, t)
    };
    let verdict = |edges: &FixedBitSet| {
        let (sa, ea) = project(edges, 0);
        let (sb, eb) = project(edges, 1);
        op.apply(ca.verdict(&sa, &ea), cb.verdict(&sb, &eb))
    };
    let acceptance = if ca.state_based() && cb.state_based() {
        let mut table = BTreeSet::new();
        for states in state_loops(p, limits)? {
            if verdict(&p.internal_edges(&states)) {
                table.insert(bits_to_set(&states));
            }
        }
        Acceptance::MullerStates(table)
    } else {
        let mut table = BTreeSet::new();
        for edges in edge_loops(p, limits)? {
            if verdict(&edges) {
                table.insert(p.edges_to_transitions(&edges));
            }
        }
        Acceptance::MullerTransitions(table)
    };
    Acceptor::new(prod.structure.clone(), acceptance)
}

/// Same structure, different acceptance kind, same language.
pub fn convert(acceptor: &Acceptor, target: AcceptanceKind) -> Result<Acceptor> {
    convert_with(acceptor, target, &Limits::default())
}

pub fn convert_with(
    acceptor: &Acceptor,
    target: AcceptanceKind,
    limits: &Limits,
) -> Result<Acceptor> {
    use AcceptanceKind as K;
    let structure = acceptor.structure();
    let n = structure.state_count();
    let from = acceptor.kind();
    let colored = |f: &BTreeSet<StateId>, inside: u32, outside: u32| -> BTreeMap<StateId, u32> {
        (0..n)
            .map(|q| (q, if f.contains(&q) { inside } else { outside }))
            .collect()
    };
    let compiled = acceptor.compiled();
    let acceptance = match (acceptor.acceptance(), target) {
        (_, t) if t == from => acceptor.acceptance().clone(),
        (Acceptance::Buchi(f), K::Parity) => Acceptance::Parity(colored(f, 1, 2)),
        (Acceptance::CoBuchi(f), K::Parity) => Acceptance::Parity(colored(f, 0, 1)),
        (_, K::MullerStates) if from.is_state_based() => {
            let mut table = BTreeSet::new();
            for states in state_loops(structure, limits)? {
                if compiled.verdict(&states, &structure.internal_edges(&states)) {
                    table.insert(bits_to_set(&states));
                }
            }
            Acceptance::MullerStates(table)
        }
        (_, K::MullerTransitions) if from.is_state_based() => {
            let mut table = BTreeSet::new();
            for edges in edge_loops(structure, limits)? {
                if compiled.verdict(&structure.edge_sources(&edges), &edges) {
                    table.insert(structure.edges_to_transitions(&edges));
                }
            }
            Acceptance::MullerTransitions(table)
        }
        _ => {
            return Err(Error::UnsupportedConversion {
                from: from.token(),
                to: target.token(),
            })
        }
    };
    Acceptor::new(structure.clone(), acceptance)
}
