//! Range-dependent hypergraph models with linear and periodic spectral
//! embeddings.
//!
//! The numeric core is generic over the scalar type: Laplacians accept any
//! [`scalar::Weight`] (including exact rationals), while eigensolvers,
//! likelihoods and clustering take a floating-point [`scalar::Real`]. The
//! aliases below fix `f64`, which is what the command-line tool uses.

pub mod dataio;
pub mod error;
pub mod evalkit;
pub mod hypercore;
pub mod optimize;
pub mod predict;
pub mod rangedep;
pub mod scalar;
pub mod spectral;
pub mod synthgen;

pub use error::{Error, Result};
pub use hypercore::Hypergraph;
pub use rangedep::Geometry;

pub type CardinalityWeights = hypercore::CardinalityWeights<f64>;
pub type LaplacianBundle = hypercore::LaplacianBundle<f64>;
pub type EigenSystem = spectral::EigenSystem<f64>;
pub type LinearEmbedding = spectral::LinearEmbedding<f64>;
pub type PeriodicEmbedding = spectral::PeriodicEmbedding<f64>;
pub type Positions = rangedep::Positions<f64>;
pub type ModelSpec = rangedep::ModelSpec<f64>;
pub type ModelFamily = rangedep::ModelFamily<f64>;
pub type LikelihoodReport = rangedep::LikelihoodReport<f64>;
pub type GammaRange = rangedep::GammaRange<f64>;
pub type ModelComparison = rangedep::ModelComparison<f64>;
pub type ComparisonConfig = rangedep::ComparisonConfig<f64>;
pub type ClusterPlan = synthgen::ClusterPlan<f64>;
pub type Clustering = evalkit::Clustering<f64>;

/// Exact-arithmetic Laplacian types.
pub mod exact {
    pub use num_rational::Rational64;

    pub type CardinalityWeights = crate::hypercore::CardinalityWeights<Rational64>;
    pub type LaplacianBundle = crate::hypercore::LaplacianBundle<Rational64>;
}
