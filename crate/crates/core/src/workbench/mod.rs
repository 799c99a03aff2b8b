//! Seeded instance generators, the checker registry, sweeps and the golden suite.

mod config;
mod generate;
mod golden;
mod run;
mod text;
mod verify;

pub use config::{Config, Family, FormulaWeights, GenSpec, CONFIG_ENV};
pub use generate::{atom_pool, generate, generate_one, Instance, ProgramShape, Sampler};
pub use golden::{
    circ_counterexample, golden, reverse_counterexample, two_extension_counterexample, Expectation,
    GoldenCase,
};
pub use run::{map_trials, Mode};
pub use verify::{
    check, check_craig, check_or_skip, from_json_lines, replay, to_json_lines, verify, Summary,
    TrialReport,
};
