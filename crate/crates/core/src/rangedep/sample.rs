use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{ModelSpec, Positions};
use super::tuples::{for_each_tuple, PairTable};
use crate::error::Result;
use crate::hypercore::Hypergraph;
use crate::scalar::{logistic_decay, Real};

fn check<S: Real>(model: &ModelSpec<S>, pos: &Positions<S>) -> Result<PairTable<S>> {
    model.check_positions(pos)?;
    Ok(PairTable::new(pos))
}

/// Draws every tuple of cardinality `2..=T` independently with its edge
/// probability. Tuples are visited by cardinality, then lexicographically,
/// one uniform draw each, so the output depends only on the seed.
pub fn sample<S: Real>(model: &ModelSpec<S>, pos: &Positions<S>, seed: u64) -> Result<Hypergraph> {
    let table = check(model, pos)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for t in 2..=model.family.max_cardinality {
        let scale = model.gamma * model.family.weights.get(t);
        for_each_tuple(&table, t, |r, i| {
            let u: f64 = rng.gen();
            let f = logistic_decay(scale * i).to_f64().unwrap_or(0.0);
            if u < f {
                edges.push(r.to_vec());
            }
        });
    }
    Ok(Hypergraph::from_canonical(pos.n(), edges, None))
}

/// `Σ_R f_R`, the expected number of hyperedges.
pub fn expected_edge_count<S: Real>(model: &ModelSpec<S>, pos: &Positions<S>) -> Result<S> {
    let table = check(model, pos)?;
    let mut total = S::zero();
    for t in 2..=model.family.max_cardinality {
        let scale = model.gamma * model.family.weights.get(t);
        for_each_tuple(&table, t, |_, i| total = total + logistic_decay(scale * i));
    }
    Ok(total)
}

/// `Σ_R f_R (1 − f_R)`, the variance of the hyperedge count.
pub fn edge_count_variance<S: Real>(model: &ModelSpec<S>, pos: &Positions<S>) -> Result<S> {
    let table = check(model, pos)?;
    let mut total = S::zero();
    for t in 2..=model.family.max_cardinality {
        let scale = model.gamma * model.family.weights.get(t);
        for_each_tuple(&table, t, |_, i| {
            let f = logistic_decay(scale * i);
            total = total + f * (S::one() - f);
        });
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::CardinalityWeights;
    use crate::rangedep::{Geometry, ModelFamily};

    fn model(gamma: f64) -> ModelSpec<f64> {
        ModelFamily::new(Geometry::Linear, CardinalityWeights::dyadic_triadic(1.0 / 3.0).unwrap(), 3)
            .unwrap()
            .with_gamma(gamma)
            .unwrap()
    }

    #[test]
    fn deterministic_per_seed() {
        let pos = Positions::line((0..12).map(|i| i as f64 * 0.1).collect());
        let a = sample(&model(2.0), &pos, 7).unwrap();
        let b = sample(&model(2.0), &pos, 7).unwrap();
        let c = sample(&model(2.0), &pos, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn large_gamma_empties_the_hypergraph() {
        let pos = Positions::line((0..10).map(f64::from).collect());
        let total: usize = (0..100).map(|s| sample(&model(1e3), &pos, s).unwrap().num_edges()).sum();
        assert_eq!(total, 0);
        assert!(expected_edge_count(&model(1e3), &pos).unwrap() < 1e-100);
    }

    #[test]
    fn mean_count_within_three_standard_errors() {
        let pos = Positions::line((0..10).map(|i| (i as f64 * 0.37).sin()).collect());
        let m = model(1.5);
        let runs = 200;
        let mean = (0..runs).map(|s| sample(&m, &pos, s).unwrap().num_edges() as f64).sum::<f64>() / runs as f64;
        let expect = expected_edge_count(&m, &pos).unwrap();
        let se = (edge_count_variance(&m, &pos).unwrap() / runs as f64).sqrt();
        assert!((mean - expect).abs() < 3.0 * se, "mean {mean} expected {expect} se {se}");
    }

    #[test]
    fn coincident_tuples_have_quarter_variance() {
        let pos = Positions::line(vec![0.0, 0.0]);
        let runs = 4000;
        let hits: Vec<f64> = (0..runs).map(|s| sample(&model(3.0), &pos, s).unwrap().num_edges() as f64).collect();
        let mean = hits.iter().sum::<f64>() / runs as f64;
        let var = hits.iter().map(|h| (h - mean).powi(2)).sum::<f64>() / (runs - 1) as f64;
        assert!((var - 0.25).abs() < 0.01, "variance {var}");
        assert!((edge_count_variance(&model(3.0), &pos).unwrap() - 0.25).abs() < 1e-15);
    }
}
