use super::eigen::{symmetric_eigen, EigenSystem};
use crate::error::{Error, Result};
use crate::hypercore::LaplacianBundle;
use crate::scalar::{lit, Real};

/// Eigenvalue gap below which two eigenvalues count as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-9;

/// Magnitude of `v2_i + i·v3_i` below which the phase angle is set to 0.
pub const ANGLE_MAGNITUDE_FLOOR: f64 = 1e-12;

/// Default eigenvalue floor for synthetic runs.
pub const DEFAULT_EIG_FLOOR: f64 = 1e-9;

/// Node coordinates from the eigenvectors of the `d` smallest eigenvalues above a floor.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEmbedding<S> {
    n: usize,
    /// Row-major `n × d`.
    coords: Vec<S>,
    eigenvalues: Vec<S>,
    pub warnings: Vec<String>,
}

impl<S: Real> LinearEmbedding<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Row-major `n × d` coordinates.
    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn node(&self, i: usize) -> &[S] {
        let d = self.dims();
        &self.coords[i * d..(i + 1) * d]
    }

    /// Column `k`: the eigenvector of the `k`-th selected eigenvalue.
    pub fn column(&self, k: usize) -> Vec<S> {
        (0..self.n).map(|i| self.coords[i * self.dims() + k]).collect()
    }

    pub fn eigenvalues(&self) -> &[S] {
        &self.eigenvalues
    }
}

/// Phase angles in `[−π, π]` from the two smallest eigenvectors above a floor.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicEmbedding<S> {
    theta: Vec<S>,
    eigenvalues: Vec<S>,
    pub warnings: Vec<String>,
}

impl<S: Real> PeriodicEmbedding<S> {
    pub fn theta(&self) -> &[S] {
        &self.theta
    }

    pub fn into_theta(self) -> Vec<S> {
        self.theta
    }

    pub fn eigenvalues(&self) -> &[S] {
        &self.eigenvalues
    }
}

/// Full spectrum of a connected hypergraph Laplacian, shared by the linear
/// and periodic embeddings.
#[derive(Debug, Clone)]
pub struct Spectrum<S> {
    system: EigenSystem<S>,
}

impl<S: Real> Spectrum<S> {
    /// Checks the connectivity assumption, then decomposes `L`.
    pub fn of(bundle: &LaplacianBundle<S>) -> Result<Self> {
        let comps = bundle.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected {
                sizes: comps.iter().map(Vec::len).collect(),
                first_nodes: comps.iter().map(|c| c[0]).collect(),
            });
        }
        let n = bundle.n();
        let system = symmetric_eigen(n, bundle.laplacian().to_dense())?;
        Ok(Spectrum { system })
    }

    pub fn system(&self) -> &EigenSystem<S> {
        &self.system
    }

    /// Indices of the `d` smallest eigenvalues strictly above `floor`.
    fn select(&self, d: usize, floor: S) -> Result<(Vec<usize>, Vec<String>)> {
        let above: Vec<usize> = (0..self.system.len())
            .filter(|&k| self.system.values[k] > floor)
            .collect();
        if d == 0 || above.len() < d {
            return Err(Error::InsufficientSpectrum {
                needed: d,
                available: above.len(),
                floor: floor.to_f64().unwrap_or(f64::NAN),
            });
        }
        let mut warnings = Vec::new();
        let gap: S = lit(DEGENERACY_GAP);
        // Only the boundary of the selection matters: a tie there makes the
        // last selected eigenvector arbitrary.
        if let Some(&next) = above.get(d) {
            let (a, b) = (self.system.values[above[d - 1]], self.system.values[next]);
            if (b - a).abs() < gap {
                let msg = format!("near-degenerate eigenvalues {a} and {b}; eigenvector choice is arbitrary");
                log::warn!("{msg}");
                warnings.push(msg);
            }
        }
        Ok((above[..d].to_vec(), warnings))
    }

    pub fn linear(&self, d: usize, floor: S) -> Result<LinearEmbedding<S>> {
        let (idx, warnings) = self.select(d, floor)?;
        let n = self.system.vectors.first().map_or(0, Vec::len);
        let mut coords = Vec::with_capacity(n * d);
        for i in 0..n {
            coords.extend(idx.iter().map(|&k| self.system.vectors[k][i]));
        }
        Ok(LinearEmbedding {
            n,
            coords,
            eigenvalues: idx.iter().map(|&k| self.system.values[k]).collect(),
            warnings,
        })
    }

    pub fn periodic(&self, floor: S) -> Result<PeriodicEmbedding<S>> {
        let (idx, mut warnings) = self.select(2, floor)?;
        let (theta, zeros) = phase_angles(&self.system.vectors[idx[0]], &self.system.vectors[idx[1]]);
        if zeros > 0 {
            let msg = format!("{zeros} nodes have vanishing eigenvector pair; angle set to 0");
            log::warn!("{msg}");
            warnings.push(msg);
        }
        Ok(PeriodicEmbedding {
            theta,
            eigenvalues: idx.iter().map(|&k| self.system.values[k]).collect(),
            warnings,
        })
    }
}

/// `θ_i = angle(re_i + i·im_i)`; returns the angles and how many were forced to 0.
pub fn phase_angles<S: Real>(re: &[S], im: &[S]) -> (Vec<S>, usize) {
    let floor: S = lit(ANGLE_MAGNITUDE_FLOOR);
    let mut zeros = 0;
    let theta = re
        .iter()
        .zip(im)
        .map(|(&x, &y)| {
            if x.hypot(y) < floor {
                zeros += 1;
                S::zero()
            } else {
                y.atan2(x)
            }
        })
        .collect();
    (theta, zeros)
}

/// Linear embedding from the `d` smallest eigenvalues of `L` above `eig_floor`.
pub fn embed_linear<S: Real>(bundle: &LaplacianBundle<S>, d: usize, eig_floor: S) -> Result<LinearEmbedding<S>> {
    Spectrum::of(bundle)?.linear(d, eig_floor)
}

/// Periodic embedding from the two smallest eigenvalues of `L` above `eig_floor`.
pub fn embed_periodic<S: Real>(bundle: &LaplacianBundle<S>, eig_floor: S) -> Result<PeriodicEmbedding<S>> {
    Spectrum::of(bundle)?.periodic(eig_floor)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI};

    use super::*;
    use crate::hypercore::{build_laplacian, CardinalityWeights, Hypergraph};

    fn dyadic(n: usize, edges: &[(usize, usize)]) -> LaplacianBundle<f64> {
        let h = Hypergraph::new(n, edges.iter().map(|&(a, b)| vec![a, b]).collect()).unwrap();
        build_laplacian(&h, &CardinalityWeights::new([(2, 1.0)]).unwrap())
    }

    #[test]
    fn phase_angle_axes() {
        let (t, z) = phase_angles(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]);
        assert_eq!(t[0], 0.0);
        assert!((t[1] - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(t[2], 0.0);
        assert_eq!(z, 1);
    }

    #[test]
    fn fiedler_vector_of_path() {
        let b = dyadic(3, &[(0, 1), (1, 2)]);
        let e = embed_linear(&b, 1, 1e-9).unwrap();
        let v = e.column(0);
        let s = 1.0 / 2f64.sqrt();
        assert!((v[0] - s).abs() < 1e-12 && v[1].abs() < 1e-12 && (v[2] + s).abs() < 1e-12);
        assert!((e.eigenvalues()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disconnected_is_an_error() {
        let b = dyadic(4, &[(0, 1), (2, 3)]);
        match embed_linear(&b, 1, 1e-9) {
            Err(Error::Disconnected { sizes, first_nodes }) => {
                assert_eq!(sizes, vec![2, 2]);
                assert_eq!(first_nodes, vec![0, 2]);
            }
            other => panic!("expected disconnection, got {other:?}"),
        }
    }

    #[test]
    fn insufficient_spectrum() {
        let b = dyadic(3, &[(0, 1), (1, 2)]);
        assert!(matches!(
            embed_linear(&b, 3, 1e-9),
            Err(Error::InsufficientSpectrum { needed: 3, available: 2, .. })
        ));
        // Floor above every eigenvalue.
        assert!(matches!(embed_periodic(&b, 10.0), Err(Error::InsufficientSpectrum { .. })));
    }

    #[test]
    fn cycle_four_angles_are_quarter_turns() {
        let b = dyadic(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let p = embed_periodic(&b, 1e-9).unwrap();
        let mut t: Vec<f64> = p.theta().to_vec();
        t.sort_by(f64::total_cmp);
        for k in 0..4 {
            let gap = if k == 3 { t[0] + 2.0 * PI - t[3] } else { t[k + 1] - t[k] };
            assert!((gap - FRAC_PI_2).abs() < 1e-9, "gap {gap}");
        }
        assert!(p.theta().iter().all(|x| (-PI..=PI).contains(x)));
        // λ2 = λ3 on C4 is used as a pair, so no warning; the linear embedding warns.
        assert!(p.warnings.is_empty());
        assert!(!embed_linear(&b, 1, 1e-9).unwrap().warnings.is_empty());
    }
}
