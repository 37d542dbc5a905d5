//! Example automata, generators and the random isomorphism experiment.

pub mod experiment;
pub mod fixtures;
pub mod random;
pub mod wagner;

pub use experiment::{
    run_experiment, ExperimentConfig, ExperimentMode, ExperimentReport, SizeReport,
};
pub use fixtures::{fixture, FIXTURE_NAMES};
pub use random::random_dma;
pub use wagner::{wagner_family, wagner_state};
