use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypercore::{build_laplacian, CardinalityWeights, Hypergraph};
use crate::rangedep::{GammaRange, GammaSearch, Geometry, LikelihoodProfile, ModelFamily, Positions};
use crate::scalar::logistic_decay;
use crate::spectral::Spectrum;

pub type Triple = [usize; 3];

/// All triples of `nodes` not already a triadic hyperedge of `train`, ascending.
pub fn candidate_triples(train: &Hypergraph, nodes: &[usize]) -> Result<Vec<Triple>> {
    let mut v: Vec<usize> = nodes.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() < 3 {
        return Err(Error::param("nodes", format!("need at least 3 nodes, got {}", v.len())));
    }
    let seen: HashSet<Triple> = train.edges_of_cardinality(3).map(|e| [e[0], e[1], e[2]]).collect();
    let mut out = Vec::new();
    for (a, &i) in v.iter().enumerate() {
        for (b, &j) in v.iter().enumerate().skip(a + 1) {
            for &k in &v[b + 1..] {
                let t = [i, j, k];
                if !seen.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

/// Whether each triple is a triadic hyperedge of `test`.
pub fn mark_positives(triples: &[Triple], test: &Hypergraph) -> Vec<bool> {
    let set: HashSet<Triple> = test.edges_of_cardinality(3).map(|e| [e[0], e[1], e[2]]).collect();
    triples.iter().map(|t| set.contains(t)).collect()
}

/// The three mean-of-pair-weights scores per triple.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanScores {
    pub arithmetic: Vec<f64>,
    pub geometric: Vec<f64>,
    pub harmonic: Vec<f64>,
}

/// Arithmetic, geometric and harmonic means of the three pair weights.
/// The geometric and harmonic means are 0 when any weight is 0.
pub fn means(w: [f64; 3]) -> (f64, f64, f64) {
    let arithmetic = (w[0] + w[1] + w[2]) / 3.0;
    if w.iter().any(|&x| x == 0.0) {
        return (arithmetic, 0.0, 0.0);
    }
    let geometric = (w[0] * w[1] * w[2]).cbrt();
    let harmonic = 3.0 / (1.0 / w[0] + 1.0 / w[1] + 1.0 / w[2]);
    (arithmetic, geometric, harmonic)
}

/// Mean scores from the dyadic adjacency `W^[2]` of `train`.
pub fn score_means(train: &Hypergraph, triples: &[Triple]) -> MeanScores {
    let n = train.n();
    let mut w2 = vec![0u32; n * n];
    for e in train.edges_of_cardinality(2) {
        w2[e[0] * n + e[1]] += 1;
        w2[e[1] * n + e[0]] += 1;
    }
    let all: Vec<(f64, f64, f64)> = triples
        .par_iter()
        .map(|&[i, j, k]| means([w2[i * n + j] as f64, w2[i * n + k] as f64, w2[j * n + k] as f64]))
        .collect();
    MeanScores {
        arithmetic: all.iter().map(|s| s.0).collect(),
        geometric: all.iter().map(|s| s.1).collect(),
        harmonic: all.iter().map(|s| s.2).collect(),
    }
}

/// Settings for the linear-model scores.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModelConfig {
    pub c3_grid: Vec<f64>,
    pub gamma_range: GammaRange<f64>,
    pub dims: usize,
    pub eig_floor: f64,
    pub max_cardinality: usize,
    pub search: GammaSearch,
}

impl Default for LinearModelConfig {
    fn default() -> Self {
        LinearModelConfig {
            c3_grid: (0..=15).map(|k| k as f64 / 10.0).collect(),
            gamma_range: GammaRange::default(),
            dims: 3,
            eig_floor: 0.01,
            max_cardinality: 3,
            search: GammaSearch::default(),
        }
    }
}

/// One point of the `c₃*` grid search.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub c3: f64,
    /// `None` when the embedding failed at this weight.
    pub log_likelihood: Option<f64>,
    pub gamma_star: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearModelScores {
    pub scores: Vec<f64>,
    pub c3_star: f64,
    pub gamma_star: f64,
    pub log_likelihood: f64,
    pub grid: Vec<GridPoint>,
    pub warnings: Vec<String>,
}

/// Fits `c₃*` (with `c₂* = 1`) and `γ*` by maximum likelihood on `train`,
/// then scores each triple by its hyperedge probability under the fitted
/// multi-dimensional linear model.
///
/// Grid points where the embedding fails are skipped with a warning.
pub fn score_linear_model(train: &Hypergraph, triples: &[Triple], config: &LinearModelConfig) -> Result<LinearModelScores> {
    let mut grid = Vec::with_capacity(config.c3_grid.len());
    let mut warnings = Vec::new();
    let mut best: Option<(f64, f64, f64, Positions<f64>)> = None;
    let mut last_err = None;
    for &c3 in &config.c3_grid {
        let weights = CardinalityWeights::dyadic_triadic(c3)?;
        let bundle = build_laplacian(train, &weights);
        let emb = Spectrum::of(&bundle).and_then(|s| s.linear(config.dims, config.eig_floor));
        let emb = match emb {
            Ok(e) => e,
            Err(e) => {
                let msg = format!("c3* = {c3}: embedding failed: {e}");
                log::warn!("{msg}");
                warnings.push(msg);
                grid.push(GridPoint {
                    c3,
                    log_likelihood: None,
                    gamma_star: None,
                });
                last_err = Some(e);
                continue;
            }
        };
        let pos = Positions::from(emb);
        let family = ModelFamily::new(Geometry::Linear, weights, config.max_cardinality)?;
        let fit = LikelihoodProfile::new(&family, &pos, train)?.fit(config.gamma_range, config.search);
        grid.push(GridPoint {
            c3,
            log_likelihood: Some(fit.log_likelihood),
            gamma_star: Some(fit.gamma_star),
        });
        if best.as_ref().map_or(true, |b| fit.log_likelihood > b.2) {
            best = Some((c3, fit.gamma_star, fit.log_likelihood, pos));
        }
    }
    let Some((c3_star, gamma_star, log_likelihood, pos)) = best else {
        return Err(last_err.unwrap_or_else(|| Error::param("c3 grid", "empty grid")));
    };
    let scale = gamma_star * c3_star;
    let scores = triples
        .par_iter()
        .map(|&[i, j, k]| {
            let inc = 2.0 * (pos.pair_distance(i, j) + pos.pair_distance(i, k) + pos.pair_distance(j, k));
            logistic_decay(scale * inc)
        })
        .collect();
    Ok(LinearModelScores {
        scores,
        c3_star,
        gamma_star,
        log_likelihood,
        grid,
        warnings,
    })
}
