use super::likelihood::LikelihoodProfile;
use super::model::{Geometry, ModelFamily, ModelSpec, Positions};
use super::tuples::PairTable;
use crate::error::{Error, Result};
use crate::hypercore::{CardinalityWeights, Hypergraph};
use crate::scalar::{count, lit, Real};

/// Largest node count accepted by the factorial enumeration.
pub const MAX_BRUTE_FORCE_NODES: usize = 9;

/// Relative tolerance under which two objective values count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Optimal placements of nodes on a discrete site set.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<S> {
    /// Every optimal permutation `p` (node `i` sits at site `p[i]`), in
    /// lexicographic order.
    pub optimal: Vec<Vec<usize>>,
    /// Objective value at the optimum.
    pub value: S,
}

/// The standard site set: integers `1..=n` on the line, or the angles
/// `2πk/n` on the circle.
pub fn sites<S: Real>(geometry: Geometry, n: usize) -> Vec<S> {
    match geometry {
        Geometry::Linear => (1..=n).map(count).collect(),
        Geometry::Periodic => {
            let step = S::TAU() / count(n.max(1));
            (0..n).map(|k| step * count(k)).collect()
        }
    }
}

fn placed<S: Real>(geometry: Geometry, sites: &[S], p: &[usize]) -> Positions<S> {
    let v = p.iter().map(|&k| sites[k]).collect();
    match geometry {
        Geometry::Linear => Positions::line(v),
        Geometry::Periodic => Positions::circle(v),
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_BRUTE_FORCE_NODES {
        return Err(Error::TooLarge {
            n,
            limit: MAX_BRUTE_FORCE_NODES,
        });
    }
    Ok(())
}

/// Rearranges `p` into the next permutation in lexicographic order; false
/// once `p` is the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Collects every permutation whose objective is within tolerance of the best.
fn extremal<S: Real>(n: usize, maximize: bool, mut objective: impl FnMut(&[usize]) -> Result<S>) -> Result<Assignment<S>> {
    let tol: S = lit(TIE_TOLERANCE);
    let mut p: Vec<usize> = (0..n).collect();
    let mut scored = Vec::new();
    loop {
        let v = objective(&p)?;
        scored.push((p.clone(), if maximize { v } else { -v }));
        if !next_permutation(&mut p) {
            break;
        }
    }
    let best = scored.iter().map(|(_, v)| *v).fold(S::neg_infinity(), S::max);
    let slack = tol * best.abs().max(S::one());
    let optimal = scored
        .into_iter()
        .filter(|(_, v)| *v >= best - slack)
        .map(|(p, _)| p)
        .collect();
    Ok(Assignment {
        optimal,
        value: if maximize { best } else { -best },
    })
}

/// Exhaustive minimizer of the total weighted incoherence
/// `Σ_{A_R=1} c_|R| I(p, R)` over placements on the standard sites.
pub fn brute_force_optimal_assignment<S: Real>(
    h: &Hypergraph,
    weights: &CardinalityWeights<S>,
    geometry: Geometry,
) -> Result<Assignment<S>> {
    let n = h.n();
    check_size(n)?;
    let s = sites::<S>(geometry, n);
    extremal(n, false, |p| {
        let table = PairTable::new(&placed(geometry, &s, p));
        Ok(h.edges()
            .iter()
            .map(|e| weights.get(e.len()) * table.incoherence(e))
            .fold(S::zero(), |a, b| a + b))
    })
}

/// Exhaustive maximizer of the log-likelihood at fixed `γ` over placements
/// on the standard sites.
pub fn brute_force_likelihood_assignment<S: Real>(h: &Hypergraph, model: &ModelSpec<S>) -> Result<Assignment<S>> {
    let n = h.n();
    check_size(n)?;
    let geometry = model.geometry();
    let s = sites::<S>(geometry, n);
    let family: &ModelFamily<S> = &model.family;
    extremal(n, true, |p| {
        Ok(LikelihoodProfile::new(family, &placed(geometry, &s, p), h)?
            .evaluate(model.gamma)
            .log_likelihood)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_in_order() {
        let mut p = vec![0, 1, 2];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2, 1]);
        assert_eq!(all[5], vec![2, 1, 0]);
    }

    #[test]
    fn empty_hypergraph_every_placement_optimal() {
        let h = Hypergraph::new(4, vec![]).unwrap();
        let w = CardinalityWeights::dyadic_triadic(1.0).unwrap();
        let a = brute_force_optimal_assignment::<f64>(&h, &w, Geometry::Linear).unwrap();
        assert_eq!(a.optimal.len(), 24);
        assert_eq!(a.value, 0.0);
    }

    #[test]
    fn path_is_laid_out_in_order() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let w = CardinalityWeights::new([(2, 1.0)]).unwrap();
        let a = brute_force_optimal_assignment::<f64>(&h, &w, Geometry::Linear).unwrap();
        assert_eq!(a.optimal, vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
        assert_eq!(a.value, 6.0);
    }

    #[test]
    fn refuses_large_inputs() {
        let h = Hypergraph::new(10, vec![]).unwrap();
        let w = CardinalityWeights::dyadic_triadic(1.0).unwrap();
        assert!(matches!(
            brute_force_optimal_assignment::<f64>(&h, &w, Geometry::Periodic),
            Err(Error::TooLarge { n: 10, .. })
        ));
    }

    #[test]
    fn periodic_sites_are_equally_spaced() {
        let s: Vec<f64> = sites(Geometry::Periodic, 4);
        assert_eq!(s[0], 0.0);
        assert!((s[1] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
