//! Planted-cluster hypergraphs drawn from the range-dependent model.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypercore::{binarized_components, CardinalityWeights, Hypergraph};
use crate::rangedep::{sample, Geometry, ModelFamily, Positions};
use crate::scalar::{count, Real};

pub const DEFAULT_MAX_ATTEMPTS: usize = 100;

/// `K` clusters of `m` nodes with centers evenly spaced on `[0, 2)` (linear)
/// or on the circle (periodic), plus uniform noise of half-width `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterPlan<S> {
    pub k: usize,
    pub m: usize,
    pub a: S,
    pub geometry: Geometry,
    pub gamma0: S,
    pub weights: CardinalityWeights<S>,
    pub max_cardinality: usize,
    pub seed: u64,
}

impl<S: Real> ClusterPlan<S> {
    /// Dyadic/triadic plan with `c₂ = 1`.
    pub fn new(geometry: Geometry, k: usize, m: usize, gamma0: S, a: S, c3: S, seed: u64) -> Result<Self> {
        let plan = ClusterPlan {
            k,
            m,
            a,
            geometry,
            gamma0,
            weights: CardinalityWeights::dyadic_triadic(c3)?,
            max_cardinality: 3,
            seed,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn n(&self) -> usize {
        self.k * self.m
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.m == 0 {
            return Err(Error::param("plan", "cluster count and size must be at least 1"));
        }
        if !(self.a >= S::zero()) || !self.a.is_finite() {
            return Err(Error::param("a", format!("noise width {} must be finite and >= 0", self.a)));
        }
        if !(self.gamma0 >= S::zero()) || !self.gamma0.is_finite() {
            return Err(Error::param("gamma0", format!("{} must be finite and >= 0", self.gamma0)));
        }
        Ok(())
    }
}

/// A generated hypergraph with its planted truth.
#[derive(Debug, Clone)]
pub struct Synthetic<S> {
    pub hypergraph: Hypergraph,
    pub positions: Positions<S>,
    /// Cluster index `0..K` per node.
    pub labels: Vec<usize>,
    /// Draws needed to obtain a connected hypergraph.
    pub attempts: usize,
}

fn planted<S: Real>(plan: &ClusterPlan<S>, rng: &mut ChaCha8Rng) -> (Positions<S>, Vec<usize>) {
    let span = match plan.geometry {
        Geometry::Linear => count::<S>(2),
        Geometry::Periodic => S::TAU(),
    };
    let mut coords = Vec::with_capacity(plan.n());
    let mut labels = Vec::with_capacity(plan.n());
    for l in 0..plan.k {
        let center = span * count(l) / count(plan.k);
        for _ in 0..plan.m {
            // Drawn even when a = 0 so the stream is the same for every width.
            let u: f64 = rng.gen_range(-1.0..1.0);
            let noise = if plan.a > S::zero() {
                plan.a * S::from_f64(u).expect("f64 representable")
            } else {
                S::zero()
            };
            coords.push(center + noise);
            labels.push(l);
        }
    }
    let positions = match plan.geometry {
        Geometry::Linear => Positions::line(coords),
        Geometry::Periodic => Positions::circle(coords),
    };
    (positions, labels)
}

/// Node positions and cluster labels; nodes of a cluster are contiguous.
pub fn plant_positions<S: Real>(plan: &ClusterPlan<S>) -> Result<(Positions<S>, Vec<usize>)> {
    plan.validate()?;
    Ok(planted(plan, &mut ChaCha8Rng::seed_from_u64(plan.seed)))
}

/// Plants positions once, then redraws hyperedges until the binarized
/// Laplacian is connected.
pub fn generate_until_connected<S: Real>(plan: &ClusterPlan<S>, max_attempts: usize) -> Result<Synthetic<S>> {
    plan.validate()?;
    if max_attempts == 0 {
        return Err(Error::param("max_attempts", "must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let (positions, labels) = planted(plan, &mut rng);
    let model = ModelFamily::new(plan.geometry, plan.weights.clone(), plan.max_cardinality)?.with_gamma(plan.gamma0)?;
    let mut last_sizes = Vec::new();
    for attempt in 1..=max_attempts {
        let h = sample(&model, &positions, rng.next_u64())?;
        let comps = binarized_components(&h, &plan.weights);
        if comps.len() == 1 {
            return Ok(Synthetic {
                hypergraph: h,
                positions,
                labels,
                attempts: attempt,
            });
        }
        last_sizes = comps.iter().map(Vec::len).collect();
    }
    Err(Error::GenerationFailed {
        attempts: max_attempts,
        last_sizes,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn noiseless_linear_centers() {
        let plan = ClusterPlan::new(Geometry::Linear, 5, 3, 4.0, 0.0, 1.0 / 3.0, 1).unwrap();
        let (pos, labels) = plant_positions(&plan).unwrap();
        let Positions::Linear { coords, .. } = pos else { panic!() };
        let centers: Vec<f64> = coords.iter().step_by(3).copied().collect();
        let expect = [0.0, 0.4, 0.8, 1.2, 1.6];
        for (c, e) in centers.iter().zip(expect) {
            assert!((c - e).abs() < 1e-15);
        }
        assert_eq!(labels, vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4]);
    }

    #[test]
    fn noiseless_periodic_centers() {
        let plan = ClusterPlan::new(Geometry::Periodic, 4, 1, 1.0, 0.0, 1.0, 1).unwrap();
        let (pos, _) = plant_positions(&plan).unwrap();
        let Positions::Periodic(theta) = pos else { panic!() };
        for (k, t) in theta.iter().enumerate() {
            assert!((t - k as f64 * PI / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn noise_stays_within_half_width() {
        let plan = ClusterPlan::new(Geometry::Linear, 5, 40, 4.0, 0.05, 1.0 / 3.0, 9).unwrap();
        let (pos, labels) = plant_positions(&plan).unwrap();
        let Positions::Linear { coords, .. } = pos else { panic!() };
        for (x, l) in coords.iter().zip(labels) {
            assert!((x - 0.4 * l as f64).abs() <= 0.05);
        }
    }

    #[test]
    fn zero_decay_connects_first_time() {
        let plan = ClusterPlan::new(Geometry::Linear, 4, 6, 0.0, 0.05, 1.0 / 3.0, 3).unwrap();
        let s = generate_until_connected(&plan, 10).unwrap();
        assert_eq!(s.attempts, 1);
    }

    #[test]
    fn hopeless_plan_fails_cleanly() {
        let plan = ClusterPlan::new(Geometry::Linear, 3, 2, 1e6, 0.0, 1.0 / 3.0, 3).unwrap();
        match generate_until_connected(&plan, 5) {
            Err(Error::GenerationFailed { attempts: 5, last_sizes }) => assert_eq!(last_sizes.iter().sum::<usize>(), 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        let plan = ClusterPlan::new(Geometry::Periodic, 3, 8, 1.0, 0.1, 0.5, 11).unwrap();
        let a = generate_until_connected(&plan, 100).unwrap();
        let b = generate_until_connected(&plan, 100).unwrap();
        assert_eq!(a.hypergraph, b.hypergraph);
        let other = ClusterPlan { seed: 12, ..plan };
        let c = generate_until_connected(&other, 100).unwrap();
        let sa: std::collections::HashSet<_> = a.hypergraph.edges().iter().collect();
        let sc: std::collections::HashSet<_> = c.hypergraph.edges().iter().collect();
        let jaccard = sa.intersection(&sc).count() as f64 / sa.union(&sc).count() as f64;
        assert!(jaccard < 0.9);
    }
}
