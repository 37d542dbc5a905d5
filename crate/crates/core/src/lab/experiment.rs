//! How often is a random Muller acceptor already the rightcon automaton of
//! its language? Decided exactly through the quotient, or by sampling
//! lassos until every pair of states has been told apart.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::acceptance::{Acceptance, Acceptor};
use crate::congruence::rightcon_quotient;
use crate::error::{Error, Result};
use crate::lab::random::random_dma_with;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentMode {
    Exact,
    Sampled,
}

impl fmt::Display for ExperimentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentMode::Exact => "exact",
            ExperimentMode::Sampled => "sample",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub sizes: Vec<usize>,
    pub trials_per_size: usize,
    pub alphabet_size: usize,
    pub accepting_sets: usize,
    pub mode: ExperimentMode,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            sizes: (5..=10).collect(),
            trials_per_size: 100,
            alphabet_size: 3,
            accepting_sets: 2,
            mode: ExperimentMode::Exact,
            samples: 100_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub size: usize,
    pub trials: usize,
    pub isomorphic: usize,
    pub not_isomorphic: usize,
    /// Trials that hit a capacity bound.
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentReport {
    pub mode: ExperimentMode,
    pub seed: u64,
    pub sizes: Vec<SizeReport>,
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode={}", self.mode)?;
        writeln!(f, "seed={}", self.seed)?;
        for row in &self.sizes {
            write!(
                f,
                "size={} trials={} isomorphic={} not_isomorphic={}",
                row.size, row.trials, row.isomorphic, row.not_isomorphic
            )?;
            if row.failed > 0 {
                write!(f, " failed={}", row.failed)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Independent stream per trial, so the report does not depend on scheduling.
fn trial_seed(seed: u64, size: usize, trial: usize) -> u64 {
    let mut z = seed
        ^ (size as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (trial as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F);
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.sizes.is_empty() || cfg.trials_per_size == 0 {
        return Err(Error::InvalidConfig(
            "sizes and trials must be nonempty".into(),
        ));
    }
    if cfg.mode == ExperimentMode::Sampled && cfg.samples == 0 {
        return Err(Error::InvalidConfig(
            "sampled mode needs at least one sample".into(),
        ));
    }
    let mut sizes = Vec::with_capacity(cfg.sizes.len());
    for &size in &cfg.sizes {
        let outcomes: Vec<Result<bool>> = (0..cfg.trials_per_size)
            .into_par_iter()
            .map(|trial| {
                let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, size, trial));
                let dma = random_dma_with(size, cfg.alphabet_size, cfg.accepting_sets, &mut rng)?;
                match cfg.mode {
                    ExperimentMode::Exact => Ok(rightcon_quotient(&dma)?.index() == size),
                    ExperimentMode::Sampled => {
                        Ok(sampled_distinguishes_all(&dma, cfg.samples, &mut rng))
                    }
                }
            })
            .collect();
        let mut row = SizeReport {
            size,
            trials: cfg.trials_per_size,
            isomorphic: 0,
            not_isomorphic: 0,
            failed: 0,
        };
        for outcome in outcomes {
            match outcome {
                Ok(true) => row.isomorphic += 1,
                Ok(false) => row.not_isomorphic += 1,
                Err(Error::CapacityExceeded { .. }) => row.failed += 1,
                Err(e) => return Err(e),
            }
        }
        sizes.push(row);
    }
    Ok(ExperimentReport {
        mode: cfg.mode,
        seed: cfg.seed,
        sizes,
    })
}

/// Random lasso: spoke length geometric(1/2) capped at `2n`, cycle length
/// uniform in `1..=2n`, symbols uniform.
fn random_lasso<R: Rng>(
    rng: &mut R,
    n: usize,
    k: usize,
    spoke: &mut Vec<usize>,
    cycle: &mut Vec<usize>,
) {
    spoke.clear();
    cycle.clear();
    while spoke.len() < 2 * n && rng.gen_bool(0.5) {
        spoke.push(rng.gen_range(0..k));
    }
    let len = rng.gen_range(1..=2 * n);
    cycle.extend((0..len).map(|_| rng.gen_range(0..k)));
}

/// Whether `samples` random lassos separate every pair of states. Runs are
/// evaluated on 64-bit state masks, so this expects at most 64 states.
fn sampled_distinguishes_all<R: Rng>(dma: &Acceptor, samples: usize, rng: &mut R) -> bool {
    let s = dma.structure();
    let n = s.state_count();
    let k = s.symbol_count();
    assert!(n <= 64, "sampling evaluator handles at most 64 states");
    let Acceptance::MullerStates(table) = dma.acceptance() else {
        unreachable!("random acceptors are state-Muller")
    };
    let table: Vec<u64> = table
        .iter()
        .map(|set| set.iter().fold(0u64, |m, &q| m | 1 << q))
        .collect();
    let mut class: Vec<usize> = vec![0; n];
    let mut classes = 1;
    let (mut spoke, mut cycle) = (Vec::new(), Vec::new());
    let mut seen = vec![false; n];
    for _ in 0..samples {
        if classes == n {
            return true;
        }
        random_lasso(rng, n, k, &mut spoke, &mut cycle);
        let mut accepted = vec![false; n];
        for (q, verdict) in accepted.iter_mut().enumerate() {
            let mut p = s.run(q, &spoke);
            seen.iter_mut().for_each(|x| *x = false);
            while !seen[p] {
                seen[p] = true;
                p = s.run(p, &cycle);
            }
            // p is the first boundary state of the periodic part
            let start = p;
            let mut mask = 0u64;
            loop {
                for &a in &cycle {
                    mask |= 1 << p;
                    p = s.step(p, a);
                }
                if p == start {
                    break;
                }
            }
            *verdict = table.contains(&mask);
        }
        let mut renumber = std::collections::HashMap::new();
        for q in 0..n {
            let next = renumber.len();
            class[q] = *renumber.entry((class[q], accepted[q])).or_insert(next);
        }
        classes = renumber.len();
    }
    classes == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_state_counts_add_up() {
        let cfg = ExperimentConfig {
            sizes: vec![1],
            trials_per_size: 10,
            ..Default::default()
        };
        let report = run_experiment(&cfg).unwrap();
        let row = &report.sizes[0];
        assert_eq!(row.isomorphic + row.not_isomorphic + row.failed, 10);
    }

    #[test]
    fn report_lines() {
        let cfg = ExperimentConfig {
            sizes: vec![2],
            trials_per_size: 3,
            mode: ExperimentMode::Sampled,
            samples: 50,
            seed: 9,
            ..Default::default()
        };
        let text = run_experiment(&cfg).unwrap().to_string();
        assert!(text.starts_with("mode=sample\nseed=9\nsize=2 trials=3 isomorphic="));
        assert_eq!(text, run_experiment(&cfg).unwrap().to_string());
    }
}
