//! The range-dependent random hypergraph model: incoherence, edge
//! probabilities, likelihood, sampling and model comparison.

mod assignment;
mod compare;
mod likelihood;
mod model;
mod sample;
mod tuples;

pub use assignment::{
    brute_force_likelihood_assignment, brute_force_optimal_assignment, sites, Assignment, MAX_BRUTE_FORCE_NODES,
    TIE_TOLERANCE,
};
pub use compare::{compare_models, compare_over_c3, ComparisonConfig, GeometryFit, ModelComparison};
pub use likelihood::{
    fit_gamma, fit_gamma_with, log_likelihood, GammaRange, GammaSearch, LikelihoodProfile, LikelihoodReport,
};
pub use model::{
    edge_probability, incoherence, incoherence_linear, incoherence_periodic, Geometry, ModelFamily, ModelSpec,
    Positions,
};
pub use sample::{edge_count_variance, expected_edge_count, sample};
pub use tuples::{binomial, universe_size};
