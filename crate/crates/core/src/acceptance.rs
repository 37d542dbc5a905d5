use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::{Error, RefKind, Result};
use crate::lasso::{lasso_run, lasso_run_from, LassoWord};
use crate::structure::{
    set_to_bits, PartialStructure, StateId, StateSet, TransitionSet, TransitionStructure,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AcceptanceKind {
    Buchi,
    CoBuchi,
    Parity,
    MullerStates,
    MullerTransitions,
}

impl AcceptanceKind {
    pub fn token(self) -> &'static str {
        match self {
            AcceptanceKind::Buchi => "buchi",
            AcceptanceKind::CoBuchi => "cobuchi",
            AcceptanceKind::Parity => "parity",
            AcceptanceKind::MullerStates => "muller",
            AcceptanceKind::MullerTransitions => "tmuller",
        }
    }

    pub fn is_state_based(self) -> bool {
        self != AcceptanceKind::MullerTransitions
    }
}

impl fmt::Display for AcceptanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for AcceptanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "buchi" => AcceptanceKind::Buchi,
            "cobuchi" => AcceptanceKind::CoBuchi,
            "parity" => AcceptanceKind::Parity,
            "muller" => AcceptanceKind::MullerStates,
            "tmuller" => AcceptanceKind::MullerTransitions,
            other => {
                return Err(Error::parse(
                    0,
                    format!("unknown acceptance type {other:?}"),
                ))
            }
        })
    }
}

/// Acceptance condition over the infinity set of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acceptance {
    /// Accept iff some state of the set is visited infinitely often.
    Buchi(StateSet),
    /// Accept iff the states of the set are visited only finitely often.
    CoBuchi(StateSet),
    /// Accept iff the least color visited infinitely often is odd.
    Parity(BTreeMap<StateId, u32>),
    /// Accept iff the set of states visited infinitely often is in the table.
    MullerStates(BTreeSet<StateSet>),
    /// Accept iff the set of transitions taken infinitely often is in the table.
    MullerTransitions(BTreeSet<TransitionSet>),
}

impl Acceptance {
    pub fn kind(&self) -> AcceptanceKind {
        match self {
            Acceptance::Buchi(_) => AcceptanceKind::Buchi,
            Acceptance::CoBuchi(_) => AcceptanceKind::CoBuchi,
            Acceptance::Parity(_) => AcceptanceKind::Parity,
            Acceptance::MullerStates(_) => AcceptanceKind::MullerStates,
            Acceptance::MullerTransitions(_) => AcceptanceKind::MullerTransitions,
        }
    }

    /// Parity condition from a color list indexed by state.
    pub fn parity_from(colors: &[u32]) -> Self {
        Acceptance::Parity(colors.iter().copied().enumerate().collect())
    }

    fn check(&self, structure: &TransitionStructure) -> Result<()> {
        let n = structure.state_count();
        let state = |q: StateId| {
            if q < n {
                Ok(())
            } else {
                Err(Error::DanglingReference(RefKind::State, q))
            }
        };
        match self {
            Acceptance::Buchi(f) | Acceptance::CoBuchi(f) => f.iter().try_for_each(|&q| state(q)),
            Acceptance::Parity(kappa) => {
                kappa.keys().try_for_each(|&q| state(q))?;
                let bound = 2 * n as u32;
                for q in 0..n {
                    let color = *kappa.get(&q).ok_or(Error::MissingColor(q))?;
                    if color > bound {
                        return Err(Error::ColorOutOfRange {
                            state: q,
                            color,
                            bound,
                        });
                    }
                }
                Ok(())
            }
            Acceptance::MullerStates(table) => {
                for set in table {
                    if set.is_empty() {
                        return Err(Error::EmptyTableEntry);
                    }
                    set.iter().try_for_each(|&q| state(q))?;
                }
                Ok(())
            }
            Acceptance::MullerTransitions(table) => {
                for set in table {
                    if set.is_empty() {
                        return Err(Error::EmptyTableEntry);
                    }
                    for t in set {
                        if !structure.has_transition(t) {
                            return Err(Error::UnknownTransition(t.from, t.symbol, t.to));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    pub(crate) fn compile(&self, structure: &TransitionStructure) -> Compiled {
        let n = structure.state_count();
        match self {
            Acceptance::Buchi(f) => Compiled::Buchi(set_to_bits(f, n)),
            Acceptance::CoBuchi(f) => Compiled::CoBuchi(set_to_bits(f, n)),
            Acceptance::Parity(kappa) => Compiled::Parity((0..n).map(|q| kappa[&q]).collect()),
            Acceptance::MullerStates(table) => {
                Compiled::Muller(table.iter().map(|s| set_to_bits(s, n)).collect())
            }
            Acceptance::MullerTransitions(table) => Compiled::TMuller(
                table
                    .iter()
                    .map(|ts| structure.transitions_to_edges(ts).expect("validated"))
                    .collect(),
            ),
        }
    }
}

/// Acceptance condition in bitset form for fast evaluation on infinity sets.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Buchi(FixedBitSet),
    CoBuchi(FixedBitSet),
    Parity(Vec<u32>),
    Muller(HashSet<FixedBitSet>),
    TMuller(HashSet<FixedBitSet>),
}

impl Compiled {
    pub fn state_based(&self) -> bool {
        !matches!(self, Compiled::TMuller(_))
    }

    /// `states` must be the source set of `edges`.
    pub fn verdict(&self, states: &FixedBitSet, edges: &FixedBitSet) -> bool {
        match self {
            Compiled::Buchi(f) => !f.is_disjoint(states),
            Compiled::CoBuchi(f) => f.is_disjoint(states),
            Compiled::Parity(kappa) => states
                .ones()
                .map(|q| kappa[q])
                .min()
                .is_some_and(|c| c % 2 == 1),
            Compiled::Muller(table) => table.contains(states),
            Compiled::TMuller(table) => table.contains(edges),
        }
    }

    /// Conservative test whether some loop within the given infinity set
    /// could be accepted (`want = true`) or rejected (`want = false`).
    pub fn may_reach(&self, want: bool, states: &FixedBitSet, edges: &FixedBitSet) -> bool {
        match (self, want) {
            (Compiled::Buchi(f), true) | (Compiled::CoBuchi(f), false) => !f.is_disjoint(states),
            (Compiled::Buchi(_), false) | (Compiled::CoBuchi(_), true) => true,
            (Compiled::Parity(kappa), _) => states.ones().any(|q| (kappa[q] % 2 == 1) == want),
            (Compiled::Muller(table), true) => table.iter().any(|s| s.is_subset(states)),
            (Compiled::TMuller(table), true) => table.iter().any(|s| s.is_subset(edges)),
            (Compiled::Muller(_), false) | (Compiled::TMuller(_), false) => true,
        }
    }
}

/// A deterministic complete transition structure with an acceptance condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Acceptor {
    structure: TransitionStructure,
    acceptance: Acceptance,
}

impl Acceptor {
    pub fn new(structure: TransitionStructure, acceptance: Acceptance) -> Result<Self> {
        acceptance.check(&structure)?;
        Ok(Self {
            structure,
            acceptance,
        })
    }

    pub fn structure(&self) -> &TransitionStructure {
        &self.structure
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn kind(&self) -> AcceptanceKind {
        self.acceptance.kind()
    }

    pub fn state_count(&self) -> usize {
        self.structure.state_count()
    }

    pub fn into_parts(self) -> (TransitionStructure, Acceptance) {
        (self.structure, self.acceptance)
    }

    pub(crate) fn compiled(&self) -> Compiled {
        self.acceptance.compile(&self.structure)
    }

    /// Same acceptor started from another state.
    pub fn rooted_at(&self, state: StateId) -> Self {
        Self {
            structure: self.structure.rooted_at(state),
            acceptance: self.acceptance.clone(),
        }
    }

    pub fn accepts(&self, word: &LassoWord) -> Result<bool> {
        let run = lasso_run(&self.structure, word)?;
        Ok(self.compiled().verdict(&run.state_bits, &run.edge_bits))
    }

    pub fn accepts_from(&self, state: StateId, word: &LassoWord) -> Result<bool> {
        let run = lasso_run_from(&self.structure, state, word)?;
        Ok(self.compiled().verdict(&run.state_bits, &run.edge_bits))
    }
}

/// Completes `structure` (it must already be total) and checks `acceptance`
/// against it.
pub fn validate(structure: PartialStructure, acceptance: Acceptance) -> Result<Acceptor> {
    Acceptor::new(structure.into_complete()?, acceptance)
}
