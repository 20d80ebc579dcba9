use std::collections::BTreeSet;
use std::f64::consts::PI;

use proptest::prelude::*;

use hyperrange::evalkit::{ari, auc_pr};
use hyperrange::hypercore::{binarized_components, build_laplacian, periodic_form, quadratic_form, restrict};
use hyperrange::predict::means;
use hyperrange::rangedep::{log_likelihood, sample, Positions};
use hyperrange::{CardinalityWeights, Geometry, Hypergraph, ModelFamily};

fn hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (3..=max_n).prop_flat_map(|n| {
        let edge = prop::collection::btree_set(0..n, 2..=3).prop_map(|s| s.into_iter().collect::<Vec<_>>());
        prop::collection::vec(edge, 0..3 * n).prop_map(move |edges| {
            let unique: BTreeSet<Vec<usize>> = edges.into_iter().collect();
            Hypergraph::new(n, unique.into_iter().collect()).unwrap()
        })
    })
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-12)
}

proptest! {
    #[test]
    fn quadratic_forms_match_incoherence(
        h in hypergraph(12),
        c2 in 0.0..2.0f64,
        c3 in 0.0..2.0f64,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..h.n()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let theta: Vec<f64> = (0..h.n()).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        let w = CardinalityWeights::new([(2, c2), (3, c3)]).unwrap();
        let l = build_laplacian(&h, &w);
        let mut lin = 0.0;
        let mut per = 0.0;
        for e in h.edges() {
            let c = if e.len() == 2 { c2 } else { c3 };
            for (a, &i) in e.iter().enumerate() {
                for &j in &e[a + 1..] {
                    lin += c * (x[i] - x[j]).powi(2);
                    per += c * (2.0 - 2.0 * (theta[i] - theta[j]).cos());
                }
            }
        }
        prop_assert!(close(quadratic_form(l.laplacian(), &x).unwrap(), lin, 1e-10));
        prop_assert!(close(periodic_form(l.laplacian(), &theta).unwrap(), per, 1e-10));
    }

    #[test]
    fn laplacian_rows_sum_to_zero(h in hypergraph(15), c3 in 0.0..3.0f64) {
        let l = build_laplacian(&h, &CardinalityWeights::dyadic_triadic(c3).unwrap());
        for s in l.laplacian().row_sums() {
            prop_assert!(s.abs() < 1e-12);
        }
    }

    #[test]
    fn components_partition_the_nodes(h in hypergraph(15), c3 in 0.0..1.0f64) {
        let comps = binarized_components(&h, &CardinalityWeights::dyadic_triadic(c3).unwrap());
        let mut all: Vec<usize> = comps.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..h.n()).collect::<Vec<_>>());
        for w in comps.windows(2) {
            prop_assert!(w[0].len() >= w[1].len());
        }
    }

    #[test]
    fn restrict_is_idempotent(h in hypergraph(12), mask in prop::collection::vec(any::<bool>(), 12)) {
        let nodes: Vec<usize> = (0..h.n()).filter(|&i| mask[i]).collect();
        prop_assume!(!nodes.is_empty());
        let (once, map) = restrict(&h, &nodes).unwrap();
        prop_assert_eq!(map, nodes);
        let all: Vec<usize> = (0..once.n()).collect();
        let (twice, _) = restrict(&once, &all).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn auc_is_invariant_under_monotone_maps(
        scores in prop::collection::vec(-5.0..5.0f64, 2..60),
        flags in prop::collection::vec(any::<bool>(), 60),
        seed in any::<u64>(),
    ) {
        let positive = &flags[..scores.len()];
        prop_assume!(positive.iter().any(|&p| p));
        let mapped: Vec<f64> = scores.iter().map(|s| (2.0 * s).exp() + 3.0).collect();
        let a = auc_pr(&scores, positive, seed).unwrap().auc;
        let b = auc_pr(&mapped, positive, seed).unwrap().auc;
        prop_assert_eq!(a, b);
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn mean_chain(w in prop::array::uniform3(1e-6..1e6f64)) {
        let (a, g, h) = means(w);
        prop_assert!(a * (1.0 + 1e-12) >= g);
        prop_assert!(g * (1.0 + 1e-12) >= h);
    }

    #[test]
    fn ari_ignores_label_names(labels in prop::collection::vec(0..4usize, 2..40), other in prop::collection::vec(0..3usize, 40)) {
        let other = &other[..labels.len()];
        let renamed: Vec<usize> = labels.iter().map(|&l| 10 + 3 * l).collect();
        prop_assert_eq!(ari(&labels, other).unwrap(), ari(&renamed, other).unwrap());
        prop_assert_eq!(ari(&labels, other).unwrap(), ari(other, &labels).unwrap());
        prop_assert!((ari(&labels, &renamed).unwrap() - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Scaling positions by `s` is the same model as scaling `γ` by `s²`.
    #[test]
    fn scale_trades_against_gamma(
        n in 4..9usize,
        seed in any::<u64>(),
        gamma in 0.1..3.0f64,
        s in 0.3..3.0f64,
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..3.0)).collect();
        let pos = Positions::line(x);
        let family = ModelFamily::new(Geometry::Linear, CardinalityWeights::dyadic_triadic(0.5).unwrap(), 3).unwrap();
        let h = sample(&family.clone().with_gamma(1.0).unwrap(), &pos, seed).unwrap();
        let scaled = log_likelihood(&family.clone().with_gamma(gamma).unwrap(), &pos.scaled(s), &h).unwrap();
        let reparam = log_likelihood(&family.with_gamma(gamma * s * s).unwrap(), &pos, &h).unwrap();
        prop_assert!(close(scaled.log_likelihood, reparam.log_likelihood, 1e-12));
    }

    /// Angles are only defined up to a common rotation.
    #[test]
    fn periodic_likelihood_is_rotation_invariant(n in 3..9usize, seed in any::<u64>(), shift in -10.0..10.0f64) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let theta: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        let rotated: Vec<f64> = theta.iter().map(|t| t + shift).collect();
        let model = ModelFamily::new(Geometry::Periodic, CardinalityWeights::dyadic_triadic(1.0).unwrap(), 3)
            .unwrap()
            .with_gamma(1.5)
            .unwrap();
        let h = sample(&model, &Positions::circle(theta.clone()), seed).unwrap();
        let a = log_likelihood(&model, &Positions::circle(theta), &h).unwrap().log_likelihood;
        let b = log_likelihood(&model, &Positions::circle(rotated), &h).unwrap().log_likelihood;
        prop_assert!(close(a, b, 1e-10));
    }
}
