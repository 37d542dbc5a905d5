//! Seeded random deterministic Muller acceptors.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::acceptance::{Acceptance, Acceptor};
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::loops::state_loops;
use crate::structure::{bits_to_set, TransitionStructure};
use crate::Limits;

/// Draws before giving up on finding a usable structure.
pub const MAX_ATTEMPTS: usize = 10_000;

/// `n` states over a 3-letter alphabet with 2 accepting loops.
pub fn random_dma(n: usize, seed: u64) -> Result<Acceptor> {
    random_dma_with(n, 3, 2, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Transitions are uniform per (state, symbol), redrawn until every state is
/// reachable; the table holds `accepting_sets` distinct loopable sets chosen
/// uniformly among all of them (structures with too few are redrawn). The
/// request is capped at `2^n - 1`, the number of nonempty state sets.
pub fn random_dma_with<R: Rng>(
    n: usize,
    alphabet_size: usize,
    accepting_sets: usize,
    rng: &mut R,
) -> Result<Acceptor> {
    if n == 0 || alphabet_size == 0 {
        return Err(Error::InvalidConfig(
            "need at least one state and one symbol".into(),
        ));
    }
    let alphabet = Alphabet::letters(alphabet_size)?;
    let accepting_sets = if n < usize::BITS as usize {
        accepting_sets.min((1 << n) - 1)
    } else {
        accepting_sets
    };
    for _ in 0..MAX_ATTEMPTS {
        let delta: Vec<Vec<usize>> = (0..n)
            .map(|_| (0..alphabet_size).map(|_| rng.gen_range(0..n)).collect())
            .collect();
        let structure = TransitionStructure::from_table(alphabet.clone(), 0, delta)?;
        if !structure.all_reachable() {
            continue;
        }
        let loops = state_loops(&structure, &Limits::default())?;
        if loops.len() < accepting_sets {
            continue;
        }
        let mut picked: Vec<usize> = sample(rng, loops.len(), accepting_sets).into_vec();
        picked.sort_unstable();
        let table: BTreeSet<_> = picked.iter().map(|&i| bits_to_set(&loops[i])).collect();
        return Acceptor::new(structure, Acceptance::MullerStates(table));
    }
    Err(Error::SamplingExhausted(MAX_ATTEMPTS))
}
