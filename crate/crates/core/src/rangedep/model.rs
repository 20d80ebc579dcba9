use std::fmt;

use crate::error::{Error, Result};
use crate::hypercore::CardinalityWeights;
use crate::scalar::{lit, logistic_decay, Real};
use crate::spectral::{LinearEmbedding, PeriodicEmbedding};

/// Distance geometry of a range-dependent model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Linear,
    Periodic,
}

impl Geometry {
    pub fn as_str(self) -> &'static str {
        match self {
            Geometry::Linear => "linear",
            Geometry::Periodic => "periodic",
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Geometry::Linear),
            "periodic" => Ok(Geometry::Periodic),
            other => Err(Error::param("geometry", format!("unknown geometry `{other}`"))),
        }
    }
}

/// Latent node positions: points in `R^d` or phase angles on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub enum Positions<S> {
    /// Row-major `n × dim` coordinates.
    Linear { dim: usize, coords: Vec<S> },
    /// Angles in radians; any finite value, only differences matter.
    Periodic(Vec<S>),
}

impl<S: Real> Positions<S> {
    pub fn line(x: Vec<S>) -> Self {
        Positions::Linear { dim: 1, coords: x }
    }

    pub fn linear(dim: usize, coords: Vec<S>) -> Result<Self> {
        if dim == 0 || coords.len() % dim != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: coords.len(),
            });
        }
        Ok(Positions::Linear { dim, coords })
    }

    pub fn circle(theta: Vec<S>) -> Self {
        Positions::Periodic(theta)
    }

    pub fn n(&self) -> usize {
        match self {
            Positions::Linear { dim, coords } => coords.len() / dim,
            Positions::Periodic(t) => t.len(),
        }
    }

    pub fn geometry(&self) -> Geometry {
        match self {
            Positions::Linear { .. } => Geometry::Linear,
            Positions::Periodic(_) => Geometry::Periodic,
        }
    }

    /// Multiplies linear coordinates by `s`; angles are left unchanged.
    pub fn scaled(&self, s: S) -> Self {
        match self {
            Positions::Linear { dim, coords } => Positions::Linear {
                dim: *dim,
                coords: coords.iter().map(|&x| x * s).collect(),
            },
            Positions::Periodic(t) => Positions::Periodic(t.clone()),
        }
    }

    /// Squared distance between two nodes: `‖x_i − x_j‖²` or `|e^{iθ_i} − e^{iθ_j}|²`.
    #[inline]
    pub fn pair_distance(&self, i: usize, j: usize) -> S {
        match self {
            Positions::Linear { dim, coords } => {
                let a = &coords[i * dim..(i + 1) * dim];
                let b = &coords[j * dim..(j + 1) * dim];
                a.iter().zip(b).map(|(&p, &q)| (p - q) * (p - q)).sum()
            }
            Positions::Periodic(t) => {
                let two: S = lit(2.0);
                two - two * (t[i] - t[j]).cos()
            }
        }
    }

    fn check_tuple(&self, r: &[usize]) -> Result<()> {
        let n = self.n();
        if let Some(&node) = r.iter().find(|&&v| v >= n) {
            return Err(Error::NodeOutOfRange { node, n });
        }
        for (a, &u) in r.iter().enumerate() {
            if r[a + 1..].contains(&u) {
                return Err(Error::InvalidHyperedge {
                    index: 0,
                    reason: format!("node {u} repeated in tuple"),
                });
            }
        }
        Ok(())
    }
}

impl<S: Real> From<LinearEmbedding<S>> for Positions<S> {
    fn from(e: LinearEmbedding<S>) -> Self {
        Positions::Linear {
            dim: e.dims(),
            coords: e.coords().to_vec(),
        }
    }
}

impl<S: Real> From<PeriodicEmbedding<S>> for Positions<S> {
    fn from(e: PeriodicEmbedding<S>) -> Self {
        Positions::Periodic(e.into_theta())
    }
}

/// Incoherence of a tuple: sum over ordered pairs of squared distances,
/// i.e. twice the sum over unordered pairs.
pub fn incoherence<S: Real>(pos: &Positions<S>, r: &[usize]) -> Result<S> {
    pos.check_tuple(r)?;
    let mut total = S::zero();
    for (a, &i) in r.iter().enumerate() {
        for &j in &r[a + 1..] {
            total = total + pos.pair_distance(i, j);
        }
    }
    Ok(total + total)
}

/// Linear incoherence `Σ_{i,j∈R} ‖x_i − x_j‖²` (ordered pairs).
pub fn incoherence_linear<S: Real>(pos: &Positions<S>, r: &[usize]) -> Result<S> {
    if pos.geometry() != Geometry::Linear {
        return Err(Error::param("positions", "expected linear coordinates"));
    }
    incoherence(pos, r)
}

/// Periodic incoherence `Σ_{i,j∈R} |e^{iθ_i} − e^{iθ_j}|²` (ordered pairs).
pub fn incoherence_periodic<S: Real>(pos: &Positions<S>, r: &[usize]) -> Result<S> {
    if pos.geometry() != Geometry::Periodic {
        return Err(Error::param("positions", "expected phase angles"));
    }
    incoherence(pos, r)
}

/// A range-dependent model without its decay parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFamily<S> {
    pub geometry: Geometry,
    pub weights: CardinalityWeights<S>,
    /// Largest tuple cardinality in the universe `ℛ`.
    pub max_cardinality: usize,
}

impl<S: Real> ModelFamily<S> {
    pub fn new(geometry: Geometry, weights: CardinalityWeights<S>, max_cardinality: usize) -> Result<Self> {
        if max_cardinality < 2 {
            return Err(Error::CardinalityOutOfRange {
                t: max_cardinality,
                min: 2,
                max: usize::MAX,
            });
        }
        Ok(ModelFamily {
            geometry,
            weights,
            max_cardinality,
        })
    }

    pub fn with_gamma(self, gamma: S) -> Result<ModelSpec<S>> {
        ModelSpec::new(self, gamma)
    }
}

/// A fully specified range-dependent model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec<S> {
    pub family: ModelFamily<S>,
    pub gamma: S,
}

impl<S: Real> ModelSpec<S> {
    /// `gamma = 0` is accepted and gives the uniform `1/2` model.
    pub fn new(family: ModelFamily<S>, gamma: S) -> Result<Self> {
        if !(gamma >= S::zero()) || !gamma.is_finite() {
            return Err(Error::param("gamma", format!("{gamma} must be finite and >= 0")));
        }
        Ok(ModelSpec { family, gamma })
    }

    pub fn geometry(&self) -> Geometry {
        self.family.geometry
    }

    pub(crate) fn check_positions(&self, pos: &Positions<S>) -> Result<()> {
        if pos.geometry() != self.geometry() {
            return Err(Error::param(
                "positions",
                format!("{} positions for a {} model", pos.geometry(), self.geometry()),
            ));
        }
        Ok(())
    }
}

/// `P(A_R = 1) = 1 / (1 + exp(γ c_|R| I(x, R)))`.
pub fn edge_probability<S: Real>(model: &ModelSpec<S>, pos: &Positions<S>, r: &[usize]) -> Result<S> {
    model.check_positions(pos)?;
    let c = model.family.weights.get(r.len());
    let i = incoherence(pos, r)?;
    Ok(logistic_decay(model.gamma * c * i))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{E, FRAC_PI_2, PI};

    use super::*;

    #[test]
    fn linear_incoherence_examples() {
        let x = Positions::line(vec![0.0, 1.0, 2.0]);
        assert_eq!(incoherence_linear(&x, &[0, 1, 2]).unwrap(), 12.0);
        let same = Positions::line(vec![0.7; 4]);
        assert_eq!(incoherence_linear(&same, &[0, 1, 2, 3]).unwrap(), 0.0);
        let pair = Positions::line(vec![0.25, -0.5]);
        assert_eq!(incoherence_linear(&pair, &[0, 1]).unwrap(), 2.0 * 0.75 * 0.75);
    }

    #[test]
    fn multi_dimensional_incoherence() {
        let x = Positions::linear(2, vec![0.0, 0.0, 3.0, 4.0]).unwrap();
        assert_eq!(incoherence_linear(&x, &[0, 1]).unwrap(), 50.0);
    }

    #[test]
    fn periodic_incoherence_examples() {
        let t = Positions::circle(vec![0.0, PI]);
        assert!((incoherence_periodic(&t, &[0, 1]).unwrap() - 8.0).abs() < 1e-14);
        let same = Positions::circle(vec![1.3; 3]);
        assert_eq!(incoherence_periodic(&same, &[0, 1, 2]).unwrap(), 0.0);
        let t = Positions::circle(vec![0.0, FRAC_PI_2, PI]);
        assert!((incoherence_periodic(&t, &[0, 1, 2]).unwrap() - 16.0).abs() < 1e-14);
    }

    #[test]
    fn incoherence_errors() {
        let x = Positions::line(vec![0.0, 1.0]);
        assert!(matches!(incoherence(&x, &[0, 2]), Err(Error::NodeOutOfRange { node: 2, n: 2 })));
        assert!(incoherence(&x, &[1, 1]).is_err());
        assert!(incoherence_periodic(&x, &[0, 1]).is_err());
    }

    fn model(gamma: f64) -> ModelSpec<f64> {
        let w = CardinalityWeights::new([(2, 1.0)]).unwrap();
        ModelFamily::new(Geometry::Linear, w, 2).unwrap().with_gamma(gamma).unwrap()
    }

    #[test]
    fn edge_probability_values() {
        let x = Positions::line(vec![0.0, 0.0, 0.5f64.sqrt()]);
        assert_eq!(edge_probability(&model(1.0), &x, &[0, 1]).unwrap(), 0.5);
        // γ c I = 1.
        let p = edge_probability(&model(1.0), &x, &[0, 2]).unwrap();
        assert!((p - 1.0 / (1.0 + E)).abs() < 1e-15);
        assert!((p - 0.26894).abs() < 1e-5);
        // γ c I = 800 saturates.
        let p = edge_probability(&model(800.0), &x, &[0, 2]).unwrap();
        assert!(p.is_finite() && p >= 0.0 && p < 1e-300);
    }

    #[test]
    fn log_odds_are_linear_in_incoherence() {
        let x = Positions::line(vec![0.0, 0.3, 1.1]);
        for &g in &[0.5, 1.0, 3.0] {
            let m = model(g);
            for r in [[0, 1], [0, 2], [1, 2]] {
                let f = edge_probability(&m, &x, &r).unwrap();
                let i = incoherence(&x, &r).unwrap();
                assert!(((f / (1.0 - f)).ln() + g * i).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn geometry_mismatch_rejected() {
        let t = Positions::circle(vec![0.0, 1.0]);
        assert!(edge_probability(&model(1.0), &t, &[0, 1]).is_err());
        assert!(ModelSpec::new(model(1.0).family, -1.0).is_err());
    }
}
