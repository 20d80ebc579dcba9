//! The dense eigensolver and the embeddings checked against nalgebra.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperrange::hypercore::build_laplacian;
use hyperrange::rangedep::sample;
use hyperrange::spectral::{embed_linear, embed_periodic, symmetric_eigen};
use hyperrange::{CardinalityWeights, Geometry, Hypergraph, ModelFamily, Positions};

/// Eigenpairs sorted ascending.
fn oracle(n: usize, a: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let m = DMatrix::from_row_slice(n, n, a);
    let e = SymmetricEigen::new(m);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| e.eigenvalues[i].total_cmp(&e.eigenvalues[j]));
    let values = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let vectors = idx.iter().map(|&i| e.eigenvectors.column(i).iter().copied().collect()).collect();
    (values, vectors)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-1.0..1.0);
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    a
}

#[test]
fn eigenvalues_match_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = rng.gen_range(1..40);
        let a = random_symmetric(&mut rng, n);
        let mine = symmetric_eigen(n, a.clone()).unwrap();
        let (values, vectors) = oracle(n, &a);
        for k in 0..n {
            assert!((mine.values[k] - values[k]).abs() < 1e-10, "n={n} k={k}");
            // Random spectra are simple, so vectors agree up to sign.
            assert!((dot(&mine.vectors[k], &vectors[k]).abs() - 1.0).abs() < 1e-8);
        }
    }
}

#[test]
fn residuals_are_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let n = 60;
    let a = random_symmetric(&mut rng, n);
    let e = symmetric_eigen(n, a.clone()).unwrap();
    for k in 0..n {
        let v = &e.vectors[k];
        for i in 0..n {
            let av = dot(&a[i * n..(i + 1) * n], v);
            assert!((av - e.values[k] * v[i]).abs() < 1e-10);
        }
        for j in 0..k {
            assert!(dot(v, &e.vectors[j]).abs() < 1e-10);
        }
    }
}

fn sampled(geometry: Geometry, n: usize, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pos = match geometry {
        Geometry::Linear => Positions::line((0..n).map(|_| rng.gen_range(0.0..4.0)).collect()),
        Geometry::Periodic => Positions::circle((0..n).map(|_| rng.gen_range(0.0..6.28)).collect()),
    };
    let model = ModelFamily::new(geometry, CardinalityWeights::dyadic_triadic(0.5).unwrap(), 3)
        .unwrap()
        .with_gamma(0.8)
        .unwrap();
    sample(&model, &pos, seed).unwrap()
}

#[test]
fn fiedler_vector_matches_oracle() {
    for seed in 0..10 {
        let h = sampled(Geometry::Linear, 30, seed);
        let bundle = build_laplacian(&h, &CardinalityWeights::dyadic_triadic(0.5).unwrap());
        let Ok(emb) = embed_linear(&bundle, 1, 1e-9) else { continue };
        let (values, vectors) = oracle(h.n(), &bundle.laplacian().to_dense());
        assert!(values[0].abs() < 1e-9);
        assert!((emb.eigenvalues()[0] - values[1]).abs() < 1e-10);
        assert!((dot(&emb.column(0), &vectors[1]).abs() - 1.0).abs() < 1e-8);
        // Largest-magnitude entry is positive.
        let x = emb.column(0);
        let big = x.iter().copied().fold(0.0f64, |m, v| if v.abs() > m.abs() { v } else { m });
        assert!(big > 0.0);
    }
}

#[test]
fn periodic_angles_match_oracle() {
    for seed in 0..10 {
        let h = sampled(Geometry::Periodic, 25, 100 + seed);
        let bundle = build_laplacian(&h, &CardinalityWeights::dyadic_triadic(0.5).unwrap());
        let Ok(emb) = embed_periodic(&bundle, 1e-9) else { continue };
        let (values, vectors) = oracle(h.n(), &bundle.laplacian().to_dense());
        if (values[2] - values[1]).abs() < 1e-6 || (values[3] - values[2]).abs() < 1e-6 {
            continue;
        }
        // Fix the oracle signs by the same largest-entry rule.
        let fix = |v: &Vec<f64>| {
            let big = v.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
            v.iter().map(|x| x * big.signum()).collect::<Vec<f64>>()
        };
        let (v2, v3) = (fix(&vectors[1]), fix(&vectors[2]));
        for (i, &t) in emb.theta().iter().enumerate() {
            let want = v3[i].atan2(v2[i]);
            let diff = (t - want).rem_euclid(2.0 * std::f64::consts::PI);
            assert!(diff < 1e-7 || diff > 2.0 * std::f64::consts::PI - 1e-7, "node {i}: {t} vs {want}");
        }
    }
}
