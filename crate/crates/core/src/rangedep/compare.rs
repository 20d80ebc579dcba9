use super::likelihood::{GammaRange, GammaSearch, LikelihoodProfile, LikelihoodReport};
use super::model::{Geometry, ModelFamily, Positions};
use crate::error::{Error, Result};
use crate::hypercore::{build_laplacian, CardinalityWeights, Hypergraph};
use crate::scalar::{lit, Real};
use crate::spectral::{phase_angles, Spectrum, DEFAULT_EIG_FLOOR};

/// Settings shared by every fit in a comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonConfig<S> {
    pub eig_floor: S,
    pub gamma_range: GammaRange<S>,
    /// Eigenvectors used by the linear embedding.
    pub d_linear: usize,
    /// Largest tuple cardinality in the likelihood.
    pub max_cardinality: usize,
    pub search: GammaSearch,
}

impl<S: Real> Default for ComparisonConfig<S> {
    fn default() -> Self {
        ComparisonConfig {
            eig_floor: lit(DEFAULT_EIG_FLOOR),
            gamma_range: GammaRange::default(),
            d_linear: 1,
            max_cardinality: 3,
            search: GammaSearch::default(),
        }
    }
}

/// Embedding plus maximum-likelihood fit for one geometry.
#[derive(Debug, Clone)]
pub struct GeometryFit<S> {
    pub geometry: Geometry,
    pub positions: Positions<S>,
    pub report: LikelihoodReport<S>,
    pub eigenvalues: Vec<S>,
    pub warnings: Vec<String>,
}

/// Linear versus periodic fit of the same hypergraph under the same weights.
#[derive(Debug, Clone)]
pub struct ModelComparison<S> {
    pub weights: CardinalityWeights<S>,
    pub linear: GeometryFit<S>,
    pub periodic: GeometryFit<S>,
}

impl<S: Real> ModelComparison<S> {
    /// Geometry with the larger maximized log-likelihood; linear on an exact tie.
    pub fn winner(&self) -> Geometry {
        if self.periodic.report.log_likelihood > self.linear.report.log_likelihood {
            Geometry::Periodic
        } else {
            Geometry::Linear
        }
    }

    pub fn fit(&self, geometry: Geometry) -> &GeometryFit<S> {
        match geometry {
            Geometry::Linear => &self.linear,
            Geometry::Periodic => &self.periodic,
        }
    }
}

/// Embeds the hypergraph both ways, fits `γ` for each and reports both.
pub fn compare_models<S: Real>(
    h: &Hypergraph,
    weights: &CardinalityWeights<S>,
    config: &ComparisonConfig<S>,
) -> Result<ModelComparison<S>> {
    let bundle = build_laplacian(h, weights);
    let spectrum = Spectrum::of(&bundle)?;
    Ok(ModelComparison {
        weights: weights.clone(),
        linear: fit_linear(h, weights, &spectrum, config)?,
        periodic: fit_periodic(h, weights, &spectrum, config)?,
    })
}

/// Runs [`compare_models`] with `c₂ = 1` and each `c₃` of the grid.
pub fn compare_over_c3<S: Real>(h: &Hypergraph, c3_grid: &[S], config: &ComparisonConfig<S>) -> Result<Vec<ModelComparison<S>>> {
    c3_grid
        .iter()
        .map(|&c3| compare_models(h, &CardinalityWeights::dyadic_triadic(c3)?, config))
        .collect()
}

fn family<S: Real>(geometry: Geometry, weights: &CardinalityWeights<S>, config: &ComparisonConfig<S>) -> Result<ModelFamily<S>> {
    ModelFamily::new(geometry, weights.clone(), config.max_cardinality)
}

fn fit_linear<S: Real>(
    h: &Hypergraph,
    weights: &CardinalityWeights<S>,
    spectrum: &Spectrum<S>,
    config: &ComparisonConfig<S>,
) -> Result<GeometryFit<S>> {
    let emb = spectrum.linear(config.d_linear, config.eig_floor)?;
    let eigenvalues = emb.eigenvalues().to_vec();
    let warnings = emb.warnings.clone();
    let positions = Positions::from(emb);
    let fam = family(Geometry::Linear, weights, config)?;
    let report = LikelihoodProfile::new(&fam, &positions, h)?.fit(config.gamma_range, config.search);
    Ok(GeometryFit {
        geometry: Geometry::Linear,
        positions,
        report,
        eigenvalues,
        warnings,
    })
}

fn fit_periodic<S: Real>(
    h: &Hypergraph,
    weights: &CardinalityWeights<S>,
    spectrum: &Spectrum<S>,
    config: &ComparisonConfig<S>,
) -> Result<GeometryFit<S>> {
    let (theta, eigenvalues, warnings) = match spectrum.periodic(config.eig_floor) {
        Ok(emb) => (emb.theta().to_vec(), emb.eigenvalues().to_vec(), emb.warnings),
        Err(Error::InsufficientSpectrum { available: 1, .. }) => {
            // Two-node case: a single usable eigenvector, taken as the real axis.
            let k = (0..spectrum.system().len())
                .find(|&k| spectrum.system().values[k] > config.eig_floor)
                .expect("one eigenvalue above the floor");
            let v = &spectrum.system().vectors[k];
            let (theta, _) = phase_angles(v, &vec![S::zero(); v.len()]);
            let msg = "only one eigenvalue above the floor; periodic angles use it alone".to_string();
            log::warn!("{msg}");
            (theta, vec![spectrum.system().values[k]], vec![msg])
        }
        Err(e) => return Err(e),
    };
    let positions = Positions::circle(theta);
    let fam = family(Geometry::Periodic, weights, config)?;
    let report = LikelihoodProfile::new(&fam, &positions, h)?.fit(config.gamma_range, config.search);
    Ok(GeometryFit {
        geometry: Geometry::Periodic,
        positions,
        report,
        eigenvalues,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_dyadic_edge() {
        let h = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        let w = CardinalityWeights::dyadic_triadic(1.0f64 / 3.0).unwrap();
        let cmp = compare_models(&h, &w, &ComparisonConfig::default()).unwrap();
        assert!(cmp.linear.report.log_likelihood.is_finite());
        assert!(cmp.periodic.report.log_likelihood.is_finite());
        assert!(!cmp.periodic.warnings.is_empty());
        let _ = cmp.winner();
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let w = CardinalityWeights::dyadic_triadic(1.0).unwrap();
        assert!(matches!(
            compare_models(&h, &w, &ComparisonConfig::default()),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn cycle_prefers_periodic_and_path_prefers_linear() {
        let n = 12;
        let cycle: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        let path: Vec<Vec<usize>> = (0..n - 1).map(|i| vec![i, i + 1]).collect();
        let w = CardinalityWeights::new([(2, 1.0)]).unwrap();
        let cfg = ComparisonConfig::default();
        let c = compare_models(&Hypergraph::new(n, cycle).unwrap(), &w, &cfg).unwrap();
        assert_eq!(c.winner(), Geometry::Periodic);
        let p = compare_models(&Hypergraph::new(n, path).unwrap(), &w, &cfg).unwrap();
        assert_eq!(p.winner(), Geometry::Linear);
    }
}
