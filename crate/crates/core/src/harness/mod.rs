//! Oracles and experiments that check the procedure against exact and
//! statistical ground truth.

mod enumerate;
mod exact;
mod monte_carlo;
mod residual;

pub use enumerate::{
    enumerate_outcomes, outcome_count, EnumerationOptions, EnumerationResult, PairExpectation,
    VertexExpectation, ENUMERATION_LIMIT,
};
pub use exact::{correspondence_colouring, exact_chromatic, k_colouring, MAX_EXACT_VERTICES};
pub use monte_carlo::{
    monte_carlo_round, Estimate, MonteCarloOptions, MonteCarloReport, PairEstimate, VertexEstimate,
};
pub use residual::{residual_sparsity_experiment, ResidualRound, ResidualSparsityReport, Summary};

use num_rational::Ratio;
use serde::Serializer;

pub(crate) fn ratio_string<S: Serializer>(r: &Ratio<u128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}
