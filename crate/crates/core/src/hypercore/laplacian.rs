use std::collections::{BTreeMap, VecDeque};

use num_complex::Complex;

use super::hypergraph::Hypergraph;
use super::sparse::{SymmetricCsr, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::scalar::{Real, Weight};

/// Nonnegative weight `c_t` per hyperedge cardinality `t ≥ 2`.
///
/// A cardinality without an entry has weight zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CardinalityWeights<W> {
    weights: BTreeMap<usize, W>,
}

impl<W: Weight> CardinalityWeights<W> {
    pub fn new(pairs: impl IntoIterator<Item = (usize, W)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (t, c) in pairs {
            if t < 2 {
                return Err(Error::CardinalityOutOfRange {
                    t,
                    min: 2,
                    max: usize::MAX,
                });
            }
            // Rejects NaN as well: NaN is not >= 0.
            if !(c >= W::zero()) {
                return Err(Error::InvalidWeight {
                    t,
                    reason: format!("{c:?} is negative"),
                });
            }
            weights.insert(t, c);
        }
        Ok(CardinalityWeights { weights })
    }

    /// `c₂ = 1`, `c₃ = c3`: the dyadic/triadic setting used throughout the experiments.
    pub fn dyadic_triadic(c3: W) -> Result<Self> {
        Self::new([(2, W::one()), (3, c3)])
    }

    pub fn get(&self, t: usize) -> W {
        self.weights.get(&t).copied().unwrap_or_else(W::zero)
    }

    pub fn contains(&self, t: usize) -> bool {
        self.weights.contains_key(&t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, W)> + '_ {
        self.weights.iter().map(|(&t, &c)| (t, c))
    }

    pub fn max_cardinality(&self) -> usize {
        self.weights.keys().next_back().copied().unwrap_or(2)
    }

    pub fn any_positive(&self) -> bool {
        self.weights.values().any(|&c| c > W::zero())
    }
}

/// Adjacency and degrees for one hyperedge cardinality.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderTerms {
    pub cardinality: usize,
    /// `W^[t]`: entry `(i, j)` counts cardinality-`t` hyperedges containing both.
    pub adjacency: SymmetricCsr<u32>,
    /// Diagonal of `D^[t]`.
    pub degree: Vec<u32>,
}

impl OrderTerms {
    /// `L^[t] = D^[t] − W^[t]`.
    pub fn laplacian<W: Weight>(&self) -> SymmetricMatrix<W> {
        let to_w = |v: u32| W::from_u32(v).expect("count fits scalar");
        let diag = self.degree.iter().map(|&d| to_w(d)).collect();
        let off = self.adjacency.map(|v| W::zero() - to_w(v));
        SymmetricMatrix::new(diag, off)
    }
}

/// Per-cardinality matrices plus the combined Laplacian `L = Σ_t c_t L^[t]`.
#[derive(Debug, Clone)]
pub struct LaplacianBundle<W> {
    n: usize,
    orders: Vec<OrderTerms>,
    weights: CardinalityWeights<W>,
    combined: SymmetricMatrix<W>,
}

impl<W: Weight> LaplacianBundle<W> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orders(&self) -> &[OrderTerms] {
        &self.orders
    }

    pub fn order(&self, t: usize) -> Option<&OrderTerms> {
        self.orders.iter().find(|o| o.cardinality == t)
    }

    pub fn weights(&self) -> &CardinalityWeights<W> {
        &self.weights
    }

    /// The combined hypergraph Laplacian.
    pub fn laplacian(&self) -> &SymmetricMatrix<W> {
        &self.combined
    }

    /// Recombines the same adjacency data under different weights.
    pub fn reweight<V: Weight>(&self, weights: CardinalityWeights<V>) -> LaplacianBundle<V> {
        assemble(self.n, self.orders.clone(), weights)
    }

    /// Connected components of the graph with an edge wherever `L_ij ≠ 0`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.combined.off_diagonal())
    }
}

/// `W^[t]` for the given cardinality.
pub fn build_adjacency(h: &Hypergraph, t: usize) -> Result<SymmetricCsr<u32>> {
    let max = if h.num_edges() == 0 { usize::MAX } else { h.max_cardinality() };
    if t < 2 || t > max {
        return Err(Error::CardinalityOutOfRange { t, min: 2, max });
    }
    Ok(adjacency_for(h, t))
}

fn adjacency_for(h: &Hypergraph, t: usize) -> SymmetricCsr<u32> {
    let n = h.n();
    // Dense counting is much faster than sorting pairs for desk-scale n.
    if n <= 4096 {
        let mut counts = vec![0u32; n * n];
        for e in h.edges_of_cardinality(t) {
            for (a, &i) in e.iter().enumerate() {
                for &j in &e[a + 1..] {
                    counts[i * n + j] += 1;
                    counts[j * n + i] += 1;
                }
            }
        }
        SymmetricCsr::from_dense(n, &counts, 0)
    } else {
        let pairs = h.edges_of_cardinality(t).flat_map(|e| {
            e.iter()
                .enumerate()
                .flat_map(move |(a, &i)| e[a + 1..].iter().map(move |&j| (i, j, 1u32)))
        });
        SymmetricCsr::from_pairs(n, pairs)
    }
}

/// Builds every `W^[t]`, `D^[t]` present in `h` and combines them with `weights`.
///
/// A cardinality present in `h` but absent from `weights` gets `c_t = 0` and a warning.
pub fn build_laplacian<W: Weight>(h: &Hypergraph, weights: &CardinalityWeights<W>) -> LaplacianBundle<W> {
    let counts = h.cardinality_counts();
    let mut orders = Vec::new();
    for (t, &count) in counts.iter().enumerate().skip(2) {
        if count == 0 {
            continue;
        }
        if !weights.contains(t) {
            log::warn!("no weight for cardinality {t} ({count} hyperedges); using c_{t} = 0");
        }
        let adjacency = adjacency_for(h, t);
        let degree = (0..h.n())
            .map(|i| adjacency.row(i).map(|(_, v)| v).sum())
            .collect();
        orders.push(OrderTerms {
            cardinality: t,
            adjacency,
            degree,
        });
    }
    assemble(h.n(), orders, weights.clone())
}

fn assemble<W: Weight>(n: usize, orders: Vec<OrderTerms>, weights: CardinalityWeights<W>) -> LaplacianBundle<W> {
    let to_w = |v: u32| W::from_u32(v).expect("count fits scalar");
    let mut diag = vec![W::zero(); n];
    let mut off: Vec<W> = vec![W::zero(); if n <= 4096 { n * n } else { 0 }];
    let mut pairs: Vec<(usize, usize, W)> = Vec::new();
    for o in &orders {
        let c = weights.get(o.cardinality);
        if c == W::zero() {
            continue;
        }
        for (i, d) in o.degree.iter().enumerate() {
            diag[i] = diag[i] + c * to_w(*d);
        }
        for (i, j, v) in o.adjacency.iter() {
            if off.is_empty() {
                if i < j {
                    pairs.push((i, j, W::zero() - c * to_w(v)));
                }
            } else {
                off[i * n + j] = off[i * n + j] - c * to_w(v);
            }
        }
    }
    let off = if off.is_empty() {
        SymmetricCsr::from_pairs(n, pairs)
    } else {
        SymmetricCsr::from_dense(n, &off, W::zero())
    };
    LaplacianBundle {
        n,
        orders,
        weights,
        combined: SymmetricMatrix::new(diag, off),
    }
}

/// `x' L x` for a real vector.
pub fn quadratic_form<W: Weight>(l: &SymmetricMatrix<W>, x: &[W]) -> Result<W> {
    if x.len() != l.n() {
        return Err(Error::DimensionMismatch {
            expected: l.n(),
            got: x.len(),
        });
    }
    let lx = l.mul_vec(x);
    Ok(x.iter().zip(&lx).fold(W::zero(), |acc, (&a, &b)| acc + a * b))
}

/// `ψᴴ L ψ` for a complex vector. The imaginary part vanishes for symmetric
/// `L` and is discarded.
pub fn hermitian_form<S: Real>(l: &SymmetricMatrix<S>, psi: &[Complex<S>]) -> Result<S> {
    if psi.len() != l.n() {
        return Err(Error::DimensionMismatch {
            expected: l.n(),
            got: psi.len(),
        });
    }
    let diag = l.diagonal();
    let mut total = S::zero();
    for (i, p) in psi.iter().enumerate() {
        let mut acc = p * diag[i];
        for (j, v) in l.off_diagonal().row(i) {
            acc = acc + psi[j] * v;
        }
        total = total + (p.conj() * acc).re;
    }
    Ok(total)
}

/// `ψᴴ L ψ` with `ψ_j = e^{iθ_j}`.
pub fn periodic_form<S: Real>(l: &SymmetricMatrix<S>, theta: &[S]) -> Result<S> {
    let psi: Vec<Complex<S>> = theta.iter().map(|&t| Complex::from_polar(S::one(), t)).collect();
    hermitian_form(l, &psi)
}

/// Components of the binarized combined Laplacian of `h` under `weights`.
///
/// Components are sorted by size descending, ties by smallest node; each
/// component lists its nodes ascending.
pub fn binarized_components<W: Weight>(h: &Hypergraph, weights: &CardinalityWeights<W>) -> Vec<Vec<usize>> {
    build_laplacian(h, weights).components()
}

pub(crate) fn components_of<W: Weight>(off: &SymmetricCsr<W>) -> Vec<Vec<usize>> {
    let n = off.n();
    let zero = W::zero();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for (u, w) in off.row(v) {
                if w != zero && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    comps
}
