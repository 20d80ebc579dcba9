//! Dense symmetric eigendecomposition.
//!
//! Householder reduction to tridiagonal form followed by the implicit QL
//! algorithm with Wilkinson-style shifts (the EISPACK `tred2`/`tql2` pair).
//! Works for any [`Real`] scalar.

use crate::error::{Error, Result};
use crate::hypercore::{first_asymmetry, SymmetricMatrix};
use crate::scalar::{lit, Real};

/// Eigenpairs sorted by ascending eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem<S> {
    pub values: Vec<S>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<S>>,
}

impl<S: Real> EigenSystem<S> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Keeps the `k` smallest pairs.
    pub fn truncate(mut self, k: usize) -> Self {
        self.values.truncate(k);
        self.vectors.truncate(k);
        self
    }
}

/// The `k` smallest eigenpairs of a symmetric matrix.
pub fn eig_smallest<S: Real>(l: &SymmetricMatrix<S>, k: usize) -> Result<EigenSystem<S>> {
    let n = l.n();
    if k == 0 || k > n {
        return Err(Error::param("k", format!("{k} not in [1, {n}]")));
    }
    Ok(symmetric_eigen(n, l.to_dense())?.truncate(k))
}

/// The `k` smallest eigenpairs of a dense matrix given as rows; rejects
/// asymmetric input.
pub fn eig_smallest_dense<S: Real>(rows: &[Vec<S>], k: usize) -> Result<EigenSystem<S>> {
    if let Some((i, j)) = first_asymmetry(rows) {
        return Err(Error::NotSymmetric { i, j });
    }
    let n = rows.len();
    if k == 0 || k > n {
        return Err(Error::param("k", format!("{k} not in [1, {n}]")));
    }
    let dense: Vec<S> = rows.iter().flatten().copied().collect();
    Ok(symmetric_eigen(n, dense)?.truncate(k))
}

/// Full eigendecomposition of a dense symmetric row-major matrix.
///
/// Each eigenvector is normalized and signed so that its entry of largest
/// magnitude (lowest index on ties) is positive.
pub fn symmetric_eigen<S: Real>(n: usize, a: Vec<S>) -> Result<EigenSystem<S>> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok(EigenSystem {
            values: Vec::new(),
            vectors: Vec::new(),
        });
    }
    let mut v = a;
    let mut d = vec![S::zero(); n];
    let mut e = vec![S::zero(); n];
    tridiagonalize(n, &mut v, &mut d, &mut e);
    ql_implicit(n, &mut v, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap_or(std::cmp::Ordering::Equal).then(i.cmp(&j)));
    let values = order.iter().map(|&k| d[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| {
            let mut col: Vec<S> = (0..n).map(|r| v[r * n + k]).collect();
            canonicalize(&mut col);
            col
        })
        .collect();
    Ok(EigenSystem { values, vectors })
}

/// Unit-normalizes and flips so the largest-magnitude entry is positive.
pub(crate) fn canonicalize<S: Real>(col: &mut [S]) {
    let norm = col.iter().map(|&x| x * x).sum::<S>().sqrt();
    if norm > S::zero() {
        col.iter_mut().for_each(|x| *x = *x / norm);
    }
    // Magnitudes within a few ulps of the maximum count as ties.
    let max = col.iter().fold(S::zero(), |m, x| m.max(x.abs()));
    let slack = max * S::epsilon() * lit(64.0);
    let best = col.iter().position(|x| x.abs() >= max - slack);
    if best.is_some_and(|b| col[b] < S::zero()) {
        col.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Householder reduction. On return `v` holds the orthogonal transform, `d`
/// the diagonal and `e[1..]` the subdiagonal.
fn tridiagonalize<S: Real>(n: usize, v: &mut [S], d: &mut [S], e: &mut [S]) {
    let at = |r: usize, c: usize| r * n + c;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = S::zero();
        let mut h = S::zero();
        for k in 0..i {
            scale = scale + d[k].abs();
        }
        if scale == S::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = S::zero();
                v[at(j, i)] = S::zero();
            }
        } else {
            for k in 0..i {
                d[k] = d[k] / scale;
                h = h + d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > S::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = S::zero();
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in (j + 1)..i {
                    g = g + v[at(k, j)] * d[k];
                    e[k] = e[k] + v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = S::zero();
            for j in 0..i {
                e[j] = e[j] / h;
                f = f + e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] = e[j] - hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] = v[at(k, j)] - (f * e[k] + g * d[k]);
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = S::zero();
            }
        }
        d[i] = h;
    }
    // Accumulate transformations.
    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = S::one();
        let h = d[i + 1];
        if h != S::zero() {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = S::zero();
                for k in 0..=i {
                    g = g + v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] = v[at(k, j)] - g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = S::zero();
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = S::zero();
    }
    v[at(n - 1, n - 1)] = S::one();
    e[0] = S::zero();
}

/// Implicit QL iterations on the tridiagonal matrix, accumulating into `v`.
fn ql_implicit<S: Real>(n: usize, v: &mut [S], d: &mut [S], e: &mut [S]) -> Result<()> {
    const MAX_SWEEPS_PER_VALUE: usize = 60;
    let at = |r: usize, c: usize| r * n + c;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = S::zero();

    let two = S::one() + S::one();
    let eps = S::epsilon();
    let mut f = S::zero();
    let mut tst1 = S::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_SWEEPS_PER_VALUE {
                    return Err(Error::NoConvergence {
                        iterations: MAX_SWEEPS_PER_VALUE,
                    });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(S::one());
                if p < S::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = S::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = S::zero();
                let mut s2 = S::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let hk = v[at(k, i + 1)];
                        v[at(k, i + 1)] = s * v[at(k, i)] + c * hk;
                        v[at(k, i)] = c * v[at(k, i)] - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = S::zero();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows_to_matrix(rows: &[Vec<f64>]) -> SymmetricMatrix<f64> {
        SymmetricMatrix::from_dense_rows(rows)
    }

    #[test]
    fn path_graph_spectrum() {
        let l = rows_to_matrix(&[vec![1.0, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 1.0]]);
        let es = eig_smallest(&l, 3).unwrap();
        for (got, want) in es.values.iter().zip([0.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
        // Kernel vector is constant.
        let c = 1.0 / 3f64.sqrt();
        for x in &es.vectors[0] {
            assert!((x - c).abs() < 1e-12);
        }
        // Fiedler vector ∝ (−1, 0, 1); sign convention picks the tie at index 0 positive.
        let f = &es.vectors[1];
        assert!((f[0] - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        assert!(f[1].abs() < 1e-12);
        assert!((f[2] + 1.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn triangle_spectrum() {
        // L = 3I − J for a single triad with c3 = 1.
        let l = rows_to_matrix(&[vec![2.0, -1.0, -1.0], vec![-1.0, 2.0, -1.0], vec![-1.0, -1.0, 2.0]]);
        let es = eig_smallest(&l, 3).unwrap();
        for (got, want) in es.values.iter().zip([0.0, 3.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn works_in_f32() {
        let l: SymmetricMatrix<f32> =
            SymmetricMatrix::from_dense_rows(&[vec![1.0, -1.0, 0.0], vec![-1.0, 2.0, -1.0], vec![0.0, -1.0, 1.0]]);
        let es = eig_smallest(&l, 3).unwrap();
        assert!((es.values[2] - 3.0).abs() < 1e-5);
    }

    #[test]
    fn rejects_asymmetric_and_bad_k() {
        let rows = vec![vec![1.0, 2.0], vec![0.0, 1.0]];
        assert!(matches!(eig_smallest_dense(&rows, 1), Err(Error::NotSymmetric { i: 0, j: 1 })));
        let l = rows_to_matrix(&[vec![1.0]]);
        assert!(eig_smallest(&l, 0).is_err());
        assert!(eig_smallest(&l, 2).is_err());
    }

    #[test]
    fn one_by_one_and_diagonal() {
        let es = symmetric_eigen(1, vec![4.0]).unwrap();
        assert_eq!(es.values, vec![4.0]);
        assert_eq!(es.vectors, vec![vec![1.0]]);
        let es = symmetric_eigen(3, vec![3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0]).unwrap();
        assert_eq!(es.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(es.vectors[0], vec![0.0, 1.0, 0.0]);
    }
}
