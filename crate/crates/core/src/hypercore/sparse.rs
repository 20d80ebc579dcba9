//! Compressed storage for symmetric matrices with an explicit diagonal.

use crate::scalar::Weight;

/// Off-diagonal pattern of a symmetric `n × n` matrix in CSR form.
///
/// Both `(i, j)` and `(j, i)` are stored; rows are sorted by column.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricCsr<T> {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<T>,
}

impl<T: Copy + PartialEq + std::ops::Add<Output = T>> SymmetricCsr<T> {
    pub fn empty(n: usize) -> Self {
        SymmetricCsr {
            n,
            row_ptr: vec![0; n + 1],
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    /// Builds from unordered off-diagonal contributions `(i, j, v)`, `i != j`.
    /// Repeated pairs are summed.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut entries: Vec<(usize, usize, T)> = Vec::new();
        for (i, j, v) in pairs {
            debug_assert!(i != j && i < n && j < n);
            entries.push((i, j, v));
            entries.push((j, i, v));
        }
        entries.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0; n + 1];
        let mut cols = Vec::with_capacity(entries.len());
        let mut vals: Vec<T> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in entries {
            if last == Some((i, j)) {
                let slot = vals.last_mut().unwrap();
                *slot = *slot + v;
            } else {
                cols.push(j);
                vals.push(v);
                row_ptr[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        SymmetricCsr { n, row_ptr, cols, vals }
    }

    /// Builds from a dense row-major matrix, keeping entries not equal to `zero`.
    pub(crate) fn from_dense(n: usize, dense: &[T], zero: T) -> Self {
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = dense[i * n + j];
                if i != j && v != zero {
                    cols.push(j);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        SymmetricCsr { n, row_ptr, cols, vals }
    }
}

impl<T: Copy> SymmetricCsr<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Stored entries, counting `(i, j)` and `(j, i)` separately.
    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[span.clone()].iter().copied().zip(self.vals[span].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<T> {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[span.clone()]
            .binary_search(&j)
            .ok()
            .map(|k| self.vals[span.start + k])
    }

    /// Iterates `(i, j, v)` over all stored entries.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> SymmetricCsr<U> {
        SymmetricCsr {
            n: self.n,
            row_ptr: self.row_ptr.clone(),
            cols: self.cols.clone(),
            vals: self.vals.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Symmetric matrix stored as a dense diagonal plus sparse off-diagonal part.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix<W> {
    diag: Vec<W>,
    off: SymmetricCsr<W>,
}

impl<W: Weight> SymmetricMatrix<W> {
    pub fn new(diag: Vec<W>, off: SymmetricCsr<W>) -> Self {
        assert_eq!(diag.len(), off.n(), "diagonal length must match dimension");
        SymmetricMatrix { diag, off }
    }

    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            diag: vec![W::zero(); n],
            off: SymmetricCsr::empty(n),
        }
    }

    /// Builds from dense rows. Only the upper triangle is read; use
    /// [`is_symmetric_dense`] first when the input may be asymmetric.
    pub fn from_dense_rows(rows: &[Vec<W>]) -> Self {
        let n = rows.len();
        let mut dense = vec![W::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                dense[i * n + j] = rows[i][j];
                dense[j * n + i] = rows[i][j];
            }
        }
        let diag = (0..n).map(|i| dense[i * n + i]).collect();
        SymmetricMatrix {
            diag,
            off: SymmetricCsr::from_dense(n, &dense, W::zero()),
        }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diagonal(&self) -> &[W] {
        &self.diag
    }

    pub fn off_diagonal(&self) -> &SymmetricCsr<W> {
        &self.off
    }

    pub fn get(&self, i: usize, j: usize) -> W {
        if i == j {
            self.diag[i]
        } else {
            self.off.get(i, j).unwrap_or_else(W::zero)
        }
    }

    pub fn row_sums(&self) -> Vec<W> {
        (0..self.n())
            .map(|i| self.off.row(i).fold(self.diag[i], |acc, (_, v)| acc + v))
            .collect()
    }

    pub fn mul_vec(&self, x: &[W]) -> Vec<W> {
        (0..self.n())
            .map(|i| {
                self.off
                    .row(i)
                    .fold(self.diag[i] * x[i], |acc, (j, v)| acc + v * x[j])
            })
            .collect()
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<W> {
        let n = self.n();
        let mut out = vec![W::zero(); n * n];
        for i in 0..n {
            out[i * n + i] = self.diag[i];
            for (j, v) in self.off.row(i) {
                out[i * n + j] = v;
            }
        }
        out
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<W>> {
        let n = self.n();
        self.to_dense().chunks(n.max(1)).take(n).map(<[W]>::to_vec).collect()
    }
}

/// Returns the first asymmetric entry of a square row-major matrix, if any.
pub fn first_asymmetry<W: Weight>(rows: &[Vec<W>]) -> Option<(usize, usize)> {
    let n = rows.len();
    for i in 0..n {
        if rows[i].len() != n {
            return Some((i, rows[i].len()));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rows[i][j] != rows[j][i] {
                return Some((i, j));
            }
        }
    }
    None
}
