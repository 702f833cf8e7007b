//! Phenomenological-noise Monte Carlo and the finite theorem checks.

mod baseline;
mod experiment;
mod pipeline;
mod rng;
mod stats;
mod theorems;

pub use baseline::{has_weight_two_word, search_baseline, BASELINE_LENGTHS};
pub use experiment::{
    cell_key, run_experiment, run_syndrome_only, run_until, syndrome_decoder, syndrome_trial,
    theory_rows, with_workers, LogicalCell, StopRule, SyndromeCell, SyndromeCode,
};
pub use pipeline::{
    adjudicate, Adjudicator, NoiseConfig, Pipeline, PipelineConfig, SyndromeLlr, TrialOutcome,
};
pub use rng::{fnv1a, sample_bits, splitmix64, substream_seed, trial_rng};
pub use stats::{results_csv, wilson_interval, McResult, RESULTS_CSV_HEADER, Z95};
pub use theorems::{
    check_repeated_round_condition, data_error_radius, lightest_logical, single_round_sweep,
    RoundCondition, SweepFailure, SweepReport,
};
