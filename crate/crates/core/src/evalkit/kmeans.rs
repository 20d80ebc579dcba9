use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{count, Real};

pub const DEFAULT_RESTARTS: usize = 20;
pub const MAX_ITERATIONS: usize = 300;

/// Result of a k-means run.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering<S> {
    /// Cluster index per point, numbered by first appearance.
    pub labels: Vec<usize>,
    /// Row-major `K × d` centroids, in label order.
    pub centroids: Vec<S>,
    /// Within-cluster sum of squared distances.
    pub inertia: S,
    pub restarts_used: usize,
}

/// Unit-circle points `(cos θ, sin θ)`, row-major `n × 2`.
pub fn circle_points<S: Real>(theta: &[S]) -> Vec<S> {
    theta.iter().flat_map(|&t| [t.cos(), t.sin()]).collect()
}

fn dist2<S: Real>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).fold(S::zero(), |s, v| s + v)
}

/// Index and squared distance of the nearest centroid; ties go to the lower index.
fn nearest<S: Real>(p: &[S], centroids: &[S], d: usize) -> (usize, S) {
    let mut best = (0, S::infinity());
    for (c, cen) in centroids.chunks_exact(d).enumerate() {
        let v = dist2(p, cen);
        if v < best.1 {
            best = (c, v);
        }
    }
    best
}

fn seed_centroids<S: Real>(points: &[S], d: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<S> {
    let n = points.len() / d;
    let mut centroids = Vec::with_capacity(k * d);
    let first = rng.gen_range(0..n);
    centroids.extend_from_slice(&points[first * d..(first + 1) * d]);
    let mut d2: Vec<S> = points.chunks_exact(d).map(|p| dist2(p, &centroids[..d])).collect();
    for _ in 1..k {
        let total: S = d2.iter().fold(S::zero(), |s, &v| s + v);
        let pick = if total > S::zero() {
            let target = S::from_f64(rng.gen::<f64>()).expect("f64 representable") * total;
            let mut acc = S::zero();
            let mut chosen = n - 1;
            for (i, &v) in d2.iter().enumerate() {
                acc = acc + v;
                if acc > target && v > S::zero() {
                    chosen = i;
                    break;
                }
            }
            chosen
        } else {
            rng.gen_range(0..n)
        };
        let p = &points[pick * d..(pick + 1) * d];
        centroids.extend_from_slice(p);
        for (i, q) in points.chunks_exact(d).enumerate() {
            let v = dist2(q, p);
            if v < d2[i] {
                d2[i] = v;
            }
        }
    }
    centroids
}

fn lloyd<S: Real>(points: &[S], d: usize, k: usize, mut centroids: Vec<S>) -> (Vec<usize>, Vec<S>, S) {
    let n = points.len() / d;
    let mut labels = vec![usize::MAX; n];
    for _ in 0..MAX_ITERATIONS {
        let mut changed = false;
        for (i, p) in points.chunks_exact(d).enumerate() {
            let (c, _) = nearest(p, &centroids, d);
            if labels[i] != c {
                labels[i] = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        let mut sums = vec![S::zero(); k * d];
        let mut sizes = vec![0usize; k];
        for (p, &c) in points.chunks_exact(d).zip(&labels) {
            sizes[c] += 1;
            for (s, &x) in sums[c * d..(c + 1) * d].iter_mut().zip(p) {
                *s = *s + x;
            }
        }
        // An emptied cluster keeps its previous centroid.
        for c in 0..k {
            if sizes[c] > 0 {
                let size: S = count(sizes[c]);
                for j in 0..d {
                    centroids[c * d + j] = sums[c * d + j] / size;
                }
            }
        }
    }
    let inertia = points
        .chunks_exact(d)
        .zip(&labels)
        .map(|(p, &c)| dist2(p, &centroids[c * d..(c + 1) * d]))
        .fold(S::zero(), |s, v| s + v);
    (labels, centroids, inertia)
}

/// Renumbers clusters by first appearance and reorders centroids to match.
fn canonical<S: Real>(labels: Vec<usize>, centroids: Vec<S>, d: usize, k: usize) -> (Vec<usize>, Vec<S>) {
    let mut map = vec![usize::MAX; k];
    let mut next = 0;
    for &l in &labels {
        if map[l] == usize::MAX {
            map[l] = next;
            next += 1;
        }
    }
    for m in map.iter_mut().filter(|m| **m == usize::MAX) {
        *m = next;
        next += 1;
    }
    let mut reordered = vec![S::zero(); k * d];
    for (old, &new) in map.iter().enumerate() {
        reordered[new * d..(new + 1) * d].copy_from_slice(&centroids[old * d..(old + 1) * d]);
    }
    (labels.into_iter().map(|l| map[l]).collect(), reordered)
}

/// Lloyd's algorithm from k-means++ seeds, best of `restarts` by inertia.
///
/// `points` is row-major `n × d`. Restart `r` draws from stream `r` of a
/// ChaCha generator keyed by `seed`, and ties in inertia go to the lower
/// restart index, so the result does not depend on thread scheduling.
pub fn kmeans<S: Real>(points: &[S], d: usize, k: usize, seed: u64, restarts: usize) -> Result<Clustering<S>> {
    if d == 0 || points.len() % d != 0 {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: points.len(),
        });
    }
    let n = points.len() / d;
    if k == 0 || k > n {
        return Err(Error::param("k", format!("need 1 <= k <= n = {n}, got {k}")));
    }
    if restarts == 0 {
        return Err(Error::param("restarts", "must be at least 1"));
    }
    let runs: Vec<(Vec<usize>, Vec<S>, S)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let init = seed_centroids(points, d, k, &mut rng);
            lloyd(points, d, k, init)
        })
        .collect();
    let mut best = 0;
    for (r, run) in runs.iter().enumerate() {
        if run.2 < runs[best].2 {
            best = r;
        }
    }
    let (labels, centroids, inertia) = runs.into_iter().nth(best).expect("at least one restart");
    let (labels, centroids) = canonical(labels, centroids, d, k);
    Ok(Clustering {
        labels,
        centroids,
        inertia,
        restarts_used: restarts,
    })
}
