//! Enumeration of the tuple universe `ℛ`.

use super::model::Positions;
use crate::scalar::Real;

/// Dense table of pairwise squared distances.
pub(crate) struct PairTable<S> {
    n: usize,
    d: Vec<S>,
}

impl<S: Real> PairTable<S> {
    pub(crate) fn new(pos: &Positions<S>) -> Self {
        let n = pos.n();
        let mut d = vec![S::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = pos.pair_distance(i, j);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        PairTable { n, d }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> S {
        self.d[i * self.n + j]
    }

    /// Incoherence of `r` under the ordered-pair convention.
    pub(crate) fn incoherence(&self, r: &[usize]) -> S {
        let mut s = S::zero();
        for (a, &i) in r.iter().enumerate() {
            for &j in &r[a + 1..] {
                s = s + self.get(i, j);
            }
        }
        s + s
    }
}

/// Visits every `t`-subset of `0..n` in lexicographic order together with its
/// incoherence (ordered-pair convention).
pub(crate) fn for_each_tuple<S: Real>(table: &PairTable<S>, t: usize, mut visit: impl FnMut(&[usize], S)) {
    let n = table.n;
    if t < 2 || t > n {
        return;
    }
    let mut idx = vec![0usize; t];
    let mut partial = vec![S::zero(); t + 1];
    descend(table, n, t, 0, 0, &mut idx, &mut partial, &mut visit);
}

#[allow(clippy::too_many_arguments)]
fn descend<S: Real>(
    table: &PairTable<S>,
    n: usize,
    t: usize,
    depth: usize,
    start: usize,
    idx: &mut [usize],
    partial: &mut [S],
    visit: &mut impl FnMut(&[usize], S),
) {
    let last = depth + 1 == t;
    for v in start..=(n - (t - depth)) {
        let mut add = S::zero();
        for &u in &idx[..depth] {
            add = add + table.get(u, v);
        }
        idx[depth] = v;
        partial[depth + 1] = partial[depth] + add;
        if last {
            let s = partial[t];
            visit(idx, s + s);
        } else {
            descend(table, n, t, depth + 1, v + 1, idx, partial, visit);
        }
    }
}

/// `C(n, t)` as `f64`, for cost estimates.
pub fn binomial(n: usize, t: usize) -> f64 {
    if t > n {
        return 0.0;
    }
    (0..t).fold(1.0, |acc, k| acc * (n - k) as f64 / (k + 1) as f64)
}

/// Size of the universe of tuples with cardinality `2..=max_t` on `n` nodes.
pub fn universe_size(n: usize, max_t: usize) -> f64 {
    (2..=max_t).map(|t| binomial(n, t)).sum()
}
