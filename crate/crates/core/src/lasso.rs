use std::fmt;

use fixedbitset::FixedBitSet;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::structure::{
    bits_to_set, StateId, StateSet, SymbolId, TransitionSet, TransitionStructure,
};

/// An ultimately periodic word `spoke · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoWord {
    spoke: Vec<SymbolId>,
    cycle: Vec<SymbolId>,
}

impl LassoWord {
    pub fn new(spoke: Vec<SymbolId>, cycle: Vec<SymbolId>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        Ok(Self { spoke, cycle })
    }

    pub fn periodic(cycle: Vec<SymbolId>) -> Result<Self> {
        Self::new(Vec::new(), cycle)
    }

    pub fn spoke(&self) -> &[SymbolId] {
        &self.spoke
    }

    pub fn cycle(&self) -> &[SymbolId] {
        &self.cycle
    }

    /// Parses the `spoke:cycle` literal syntax.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let (spoke, cycle) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(0, format!("lasso {text:?} lacks ':'")))?;
        Self::new(alphabet.parse_word(spoke)?, alphabet.parse_word(cycle)?)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayLasso {
            lasso: self,
            alphabet,
        }
    }

    /// Same ω-word with the first cycle unrolled into the spoke.
    pub fn rotated(&self) -> Self {
        let mut spoke = self.spoke.clone();
        spoke.extend_from_slice(&self.cycle);
        Self {
            spoke,
            cycle: self.cycle.clone(),
        }
    }

    /// Same ω-word with the cycle repeated `k` times.
    pub fn pumped(&self, k: usize) -> Self {
        Self {
            spoke: self.spoke.clone(),
            cycle: self.cycle.repeat(k.max(1)),
        }
    }

    pub fn prefixed(&self, prefix: &[SymbolId]) -> Self {
        let mut spoke = prefix.to_vec();
        spoke.extend_from_slice(&self.spoke);
        Self {
            spoke,
            cycle: self.cycle.clone(),
        }
    }
}

struct DisplayLasso<'a> {
    lasso: &'a LassoWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayLasso<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}",
            self.alphabet.format_word(&self.lasso.spoke),
            self.alphabet.format_word(&self.lasso.cycle)
        )
    }
}

/// Infinity sets of the run of a structure on a lasso.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunAnalysis {
    pub inf_states: StateSet,
    pub inf_transitions: TransitionSet,
    /// Cycle repetitions read before the boundary states become periodic.
    pub entry_index: usize,
    pub(crate) state_bits: FixedBitSet,
    pub(crate) edge_bits: FixedBitSet,
}

pub fn lasso_run(structure: &TransitionStructure, word: &LassoWord) -> Result<RunAnalysis> {
    lasso_run_from(structure, structure.initial(), word)
}

pub fn lasso_run_from(
    structure: &TransitionStructure,
    from: StateId,
    word: &LassoWord,
) -> Result<RunAnalysis> {
    let k = structure.symbol_count();
    if let Some(&bad) = word.spoke.iter().chain(&word.cycle).find(|&&a| a >= k) {
        return Err(Error::UnknownSymbol(format!("#{bad}")));
    }
    let mut q = structure.run(from, &word.spoke);
    // boundary[q] = cycle repetition index at which the boundary state q was seen
    let mut seen = vec![usize::MAX; structure.state_count()];
    let mut boundaries = Vec::new();
    let mut rep = 0;
    while seen[q] == usize::MAX {
        seen[q] = rep;
        boundaries.push(q);
        q = structure.run(q, &word.cycle);
        rep += 1;
    }
    let entry_index = seen[q];
    let mut state_bits = FixedBitSet::with_capacity(structure.state_count());
    let mut edge_bits = FixedBitSet::with_capacity(structure.edge_count());
    for &start in &boundaries[entry_index..] {
        let mut p = start;
        for &a in &word.cycle {
            state_bits.insert(p);
            edge_bits.insert(structure.edge_id(p, a));
            p = structure.step(p, a);
        }
    }
    Ok(RunAnalysis {
        inf_states: bits_to_set(&state_bits),
        inf_transitions: structure.edges_to_transitions(&edge_bits),
        entry_index,
        state_bits,
        edge_bits,
    })
}
