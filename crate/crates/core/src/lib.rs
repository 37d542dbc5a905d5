//! Analysis of deterministic ω-automata through their right congruence.
//!
//! Acceptors pair a complete deterministic transition structure with a Büchi,
//! co-Büchi, parity, state-Muller or transition-Muller condition. On top of
//! that the crate computes loop tables, the right-congruence quotient, the
//! informative-class classification, and the respective / non-counting
//! properties, and ships the fixture catalog and random experiment in [`lab`].

pub mod acceptance;
pub mod alphabet;
pub mod classify;
pub mod congruence;
pub mod error;
pub mod lab;
pub mod lasso;
pub mod loops;
pub mod oaf;
pub mod ops;
pub mod profile;
mod scc;
pub mod search;
pub mod structure;

pub use acceptance::{validate, Acceptance, AcceptanceKind, Acceptor};
pub use alphabet::Alphabet;

pub use classify::{classify, Classification, InfoClass, Obstruction};
pub use congruence::{
    index, is_trivial, powerset, refines, rightcon_quotient, state_equivalent,
    trivial_decomposition, DecompositionPart, FiniteAutomaton, NondeterministicStructure, Quotient,
    TrivialDecomposition,
};
pub use error::{Error, RefKind, Result};
pub use lasso::{lasso_run, LassoWord, RunAnalysis};
pub use loops::{
    alternation_measure, is_db, is_dc, is_weak, loopable_sets, weak_to_buchi, weak_to_cobuchi,
    AlternationMeasure, LoopKey, LoopTable, LoopableSet, Polarity,
};
pub use ops::{combine, complement, convert, BoolOp};
pub use profile::{
    counting_witness, is_non_counting, is_respective, omega_accept, profile_monoid,
    respective_pair_check, respective_pair_check_in, respective_violation, CountingWitness,
    Profile, ProfileMonoid, RespectiveWitness,
};

pub use search::{distinguish, equivalent};
pub use structure::{
    product, PartialStructure, Product, StateId, StateSet, SymbolId, Transition, TransitionSet,
    TransitionStructure,
};

/// Capacity bounds for the exponential enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Loopable sets enumerated per structure, and product loops visited by
    /// the disagreement search.
    pub loop_sets: usize,
    pub monoid_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            loop_sets: 1 << 20,
            monoid_elements: 200_000,
        }
    }
}
