//! Triadic hyperedge prediction: splitting, candidate triples, scoring and
//! AUC-PR evaluation.

mod scores;
mod split;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use scores::{
    candidate_triples, mark_positives, means, score_linear_model, score_means, GridPoint, LinearModelConfig,
    LinearModelScores, MeanScores, Triple,
};
pub use split::{split, unit_weights, SplitMode, SplitSpec, DEFAULT_SPLIT_ATTEMPTS};

use crate::error::{Error, Result};
use crate::evalkit::auc_pr;
use crate::hypercore::{binarized_components, restrict, Hypergraph};

/// Scoring methods, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Random,
    LinearModel,
    Arithmetic,
    Geometric,
    Harmonic,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Random,
        Method::LinearModel,
        Method::Arithmetic,
        Method::Geometric,
        Method::Harmonic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Random => "random",
            Method::LinearModel => "linear-model",
            Method::Arithmetic => "arithmetic",
            Method::Geometric => "geometric",
            Method::Harmonic => "harmonic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PredictionConfig {
    pub linear: LinearModelConfig,
    /// Seeds the random scores and the tie-breaking shuffle.
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionReport {
    pub train_edges: usize,
    pub test_edges: usize,
    /// Nodes in the largest component of the training hypergraph.
    pub lcc_size: usize,
    pub candidates: usize,
    pub positives: usize,
    pub c3_star: f64,
    pub gamma_star: f64,
    pub auc: Vec<(Method, f64)>,
    pub warnings: Vec<String>,
}

impl PredictionReport {
    pub fn base_rate(&self) -> f64 {
        self.positives as f64 / self.candidates as f64
    }

    pub fn auc_of(&self, method: Method) -> f64 {
        self.auc.iter().find(|(m, _)| *m == method).map_or(f64::NAN, |&(_, v)| v)
    }
}

/// Split, restrict to the training LCC, enumerate candidates, score with
/// every method and measure AUC-PR.
pub fn run_prediction(h: &Hypergraph, spec: &SplitSpec, config: &PredictionConfig) -> Result<PredictionReport> {
    let max_t = config.linear.max_cardinality;
    let h = &h.select_edges(|i| h.edges()[i].len() <= max_t);
    let (train, test) = split(h, spec)?;
    let comps = binarized_components(&train, &unit_weights(&train));
    let lcc = &comps[0];
    let (train_l, _) = restrict(&train, lcc)?;
    let (test_l, _) = restrict(&test, lcc)?;

    let nodes: Vec<usize> = (0..train_l.n()).collect();
    let triples = candidate_triples(&train_l, &nodes)?;
    let positive = mark_positives(&triples, &test_l);
    let positives = positive.iter().filter(|&&p| p).count();
    if positives == 0 {
        return Err(Error::UndefinedMetric("no test triangle among the candidates".into()));
    }

    let linear = score_linear_model(&train_l, &triples, &config.linear)?;
    let mean = score_means(&train_l, &triples);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(1);
    let random: Vec<f64> = (0..triples.len()).map(|_| rng.gen()).collect();

    let mut auc = Vec::with_capacity(Method::ALL.len());
    for method in Method::ALL {
        let s = match method {
            Method::Random => &random,
            Method::LinearModel => &linear.scores,
            Method::Arithmetic => &mean.arithmetic,
            Method::Geometric => &mean.geometric,
            Method::Harmonic => &mean.harmonic,
        };
        auc.push((method, auc_pr(s, &positive, config.seed)?.auc));
    }
    Ok(PredictionReport {
        train_edges: train.num_edges(),
        test_edges: test.num_edges(),
        lcc_size: lcc.len(),
        candidates: triples.len(),
        positives,
        c3_star: linear.c3_star,
        gamma_star: linear.gamma_star,
        auc,
        warnings: linear.warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_test_set_is_undefined() {
        // Every triangle lands in training at fraction 0.99.
        let edges = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0], vec![0, 1, 2]];
        let h = Hypergraph::with_timestamps(4, edges, vec![0.0, 1.0, 2.0, 3.0, 0.5]).unwrap();
        let spec = SplitSpec::new(0.99, SplitMode::Time, 0).unwrap();
        let mut config = PredictionConfig::default();
        config.linear.dims = 1;
        config.linear.eig_floor = 1e-9;
        match run_prediction(&h, &spec, &config) {
            Err(Error::UndefinedMetric(_)) => {}
            other => panic!("expected undefined metric, got {other:?}"),
        }
    }
}
