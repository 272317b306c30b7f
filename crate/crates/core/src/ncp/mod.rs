//! The naive colouring procedure, its per-round statistics, and the
//! iterated colouring driver built on it.

mod driver;
mod procedure;
pub mod rng;
mod round;
mod schedule;
mod stats;

pub use driver::{
    greedy_complete, iterative_colour, DriverParams, DriverRound, DriverTrace, GreedyCompletion,
    OnExhausted, VertexReport, DEFAULT_MAX_ROUNDS, DEFAULT_REGULARIZE_LIMIT,
};
pub use procedure::{
    keep_probability, keep_probability_exact, outcome_from_choices, run_round, sample_choices,
    RoundOutcome,
};
pub use round::{
    attempt_round, attempt_round_focused, RoundParams, RoundReport, RoundResult, ThresholdProfile,
    DEFAULT_MAX_RESTARTS,
};
pub use schedule::{
    build_schedule, Schedule, ScheduleInput, ScheduleRow, DEFAULT_BETA_FRACTION,
    DEFAULT_DELTA_PRIME_FACTOR,
};
pub use stats::{
    mask, pair_counts, quasirandom_check, round_stats, vertex_stat, PairCount, PairDeviation, QuasirandomReport,
    RoundStats, Slack, VertexStat,
};
