use std::collections::HashMap;

use crate::error::{Error, Result};

/// Undirected, unweighted hypergraph on nodes `0..n`.
///
/// Hyperedges are stored as ascending node lists, unique as sets. The edge
/// order is the insertion order after deduplication; optional timestamps are
/// aligned with it.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    timestamps: Option<Vec<f64>>,
}

impl Hypergraph {
    /// Builds a hypergraph, dropping duplicate node-sets with a warning.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let (h, dropped) = Self::build(n, edges, None)?;
        if dropped > 0 {
            log::warn!("dropped {dropped} duplicate hyperedges");
        }
        Ok(h)
    }

    /// Builds a timestamped hypergraph. A duplicated node-set keeps its
    /// earliest timestamp (first occurrence on ties).
    pub fn with_timestamps(n: usize, edges: Vec<Vec<usize>>, timestamps: Vec<f64>) -> Result<Self> {
        let (h, dropped) = Self::build(n, edges, Some(timestamps))?;
        if dropped > 0 {
            log::warn!("dropped {dropped} duplicate hyperedges");
        }
        Ok(h)
    }

    /// Like [`Hypergraph::new`] / [`Hypergraph::with_timestamps`] but also
    /// returns the number of duplicates removed.
    pub fn build(
        n: usize,
        edges: Vec<Vec<usize>>,
        timestamps: Option<Vec<f64>>,
    ) -> Result<(Self, usize)> {
        if let Some(ts) = &timestamps {
            if ts.len() != edges.len() {
                return Err(Error::LengthMismatch {
                    left: edges.len(),
                    right: ts.len(),
                });
            }
        }
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
        let mut kept_ts: Vec<f64> = Vec::new();
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(edges.len());
        let mut dropped = 0;
        for (index, mut edge) in edges.into_iter().enumerate() {
            edge.sort_unstable();
            validate_edge(index, &edge, n)?;
            let time = timestamps.as_ref().map(|ts| ts[index]);
            match seen.get(&edge) {
                Some(&slot) => {
                    dropped += 1;
                    if let Some(t) = time {
                        if t < kept_ts[slot] {
                            kept_ts[slot] = t;
                        }
                    }
                }
                None => {
                    seen.insert(edge.clone(), kept.len());
                    kept.push(edge);
                    if let Some(t) = time {
                        kept_ts.push(t);
                    }
                }
            }
        }
        Ok((
            Hypergraph {
                n,
                edges: kept,
                timestamps: timestamps.map(|_| kept_ts),
            },
            dropped,
        ))
    }

    /// Skips validation; callers guarantee sorted, distinct, in-range, unique edges.
    pub(crate) fn from_canonical(n: usize, edges: Vec<Vec<usize>>, timestamps: Option<Vec<f64>>) -> Self {
        debug_assert!(edges.iter().all(|e| e.len() >= 2 && e.windows(2).all(|w| w[0] < w[1])));
        Hypergraph { n, edges, timestamps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn timestamps(&self) -> Option<&[f64]> {
        self.timestamps.as_deref()
    }

    /// Largest hyperedge cardinality present (2 for an edgeless hypergraph).
    pub fn max_cardinality(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(2).max(2)
    }

    pub fn edges_of_cardinality(&self, t: usize) -> impl Iterator<Item = &[usize]> + '_ {
        self.edges.iter().filter(move |e| e.len() == t).map(Vec::as_slice)
    }

    /// Number of hyperedges per cardinality, indexed by cardinality.
    pub fn cardinality_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_cardinality() + 1];
        for e in &self.edges {
            counts[e.len()] += 1;
        }
        counts
    }

    /// Keeps the edges selected by `keep`, preserving order and timestamps.
    pub(crate) fn select_edges(&self, keep: impl Fn(usize) -> bool) -> Hypergraph {
        let idx: Vec<usize> = (0..self.edges.len()).filter(|&i| keep(i)).collect();
        Hypergraph {
            n: self.n,
            edges: idx.iter().map(|&i| self.edges[i].clone()).collect(),
            timestamps: self
                .timestamps
                .as_ref()
                .map(|ts| idx.iter().map(|&i| ts[i]).collect()),
        }
    }
}

fn validate_edge(index: usize, edge: &[usize], n: usize) -> Result<()> {
    if edge.len() < 2 {
        return Err(Error::InvalidHyperedge {
            index,
            reason: format!("cardinality {} < 2", edge.len()),
        });
    }
    if let Some(&node) = edge.iter().find(|&&v| v >= n) {
        return Err(Error::NodeOutOfRange { node, n });
    }
    if edge.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidHyperedge {
            index,
            reason: "repeated node".into(),
        });
    }
    Ok(())
}

/// Keeps only the hyperedges entirely inside `nodes` and reindexes densely,
/// preserving the original node order.
///
/// Returns the new hypergraph and the map from new to original indices.
pub fn restrict(h: &Hypergraph, nodes: &[usize]) -> Result<(Hypergraph, Vec<usize>)> {
    let mut keep: Vec<usize> = nodes.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&node) = keep.iter().find(|&&v| v >= h.n) {
        return Err(Error::NodeOutOfRange { node, n: h.n });
    }
    let mut new_index = vec![usize::MAX; h.n];
    for (new, &old) in keep.iter().enumerate() {
        new_index[old] = new;
    }
    let mut edges = Vec::new();
    let mut times = h.timestamps.as_ref().map(|_| Vec::new());
    for (i, e) in h.edges.iter().enumerate() {
        if e.iter().all(|&v| new_index[v] != usize::MAX) {
            // Dense reindexing is monotone, so the edge stays sorted.
            edges.push(e.iter().map(|&v| new_index[v]).collect());
            if let (Some(out), Some(ts)) = (times.as_mut(), h.timestamps.as_ref()) {
                out.push(ts[i]);
            }
        }
    }
    Ok((Hypergraph::from_canonical(keep.len(), edges, times), keep))
}

/// Node degree as row sums of `Σ_t W^[t]`: each hyperedge of cardinality `t`
/// adds `t − 1` to each member.
pub fn pairwise_degree(h: &Hypergraph) -> Vec<usize> {
    let mut deg = vec![0; h.n];
    for e in &h.edges {
        for &v in e {
            deg[v] += e.len() - 1;
        }
    }
    deg
}

/// Removes the `⌈fraction·n⌉` highest- and lowest-degree nodes, then restricts.
///
/// Ties are broken by ascending node index on both ends.
pub fn trim_by_degree(h: &Hypergraph, fraction: f64) -> Result<(Hypergraph, Vec<usize>)> {
    if !(0.0..0.5).contains(&fraction) {
        return Err(Error::param("fraction", format!("{fraction} not in [0, 0.5)")));
    }
    let n = h.n;
    // Guard against 0.02 * 50 = 1.0000000000000002 style overshoot.
    let k = ((fraction * n as f64) - 1e-9).ceil().max(0.0) as usize;
    if k == 0 {
        return restrict(h, &(0..n).collect::<Vec<_>>());
    }
    let deg = pairwise_degree(h);
    let mut by_high: Vec<usize> = (0..n).collect();
    by_high.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    let mut by_low: Vec<usize> = (0..n).collect();
    by_low.sort_by(|&a, &b| deg[a].cmp(&deg[b]).then(a.cmp(&b)));
    let mut removed = vec![false; n];
    for &v in by_high.iter().take(k).chain(by_low.iter().take(k)) {
        removed[v] = true;
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    restrict(h, &keep)
}
