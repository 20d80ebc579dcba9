use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypercore::{binarized_components, CardinalityWeights, Hypergraph};

pub const DEFAULT_SPLIT_ATTEMPTS: usize = 100;

/// How hyperedges are divided between training and testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitMode {
    /// Earliest hyperedges train; ties keep file order.
    Time,
    /// A uniformly random subset trains, redrawn until connected.
    Random,
}

impl SplitMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SplitMode::Time => "time",
            SplitMode::Random => "random",
        }
    }
}

impl std::str::FromStr for SplitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "time" => Ok(SplitMode::Time),
            "random" => Ok(SplitMode::Random),
            other => Err(Error::param("split", format!("unknown split mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub mode: SplitMode,
    pub seed: u64,
    pub max_attempts: usize,
}

impl SplitSpec {
    pub fn new(train_fraction: f64, mode: SplitMode, seed: u64) -> Result<Self> {
        if !(train_fraction > 0.0 && train_fraction < 1.0) {
            return Err(Error::param("train fraction", format!("{train_fraction} not in (0, 1)")));
        }
        Ok(SplitSpec {
            train_fraction,
            mode,
            seed,
            max_attempts: DEFAULT_SPLIT_ATTEMPTS,
        })
    }

    /// Number of training hyperedges out of `m`.
    pub fn train_count(&self, m: usize) -> usize {
        ((self.train_fraction * m as f64) + 1e-9).floor() as usize
    }
}

/// Unit weight on every cardinality present, so any hyperedge links its nodes.
pub fn unit_weights(h: &Hypergraph) -> CardinalityWeights<f64> {
    CardinalityWeights::new((2..=h.max_cardinality()).map(|t| (t, 1.0))).expect("unit weights are valid")
}

/// Splits `h` into edge-disjoint training and testing hypergraphs on the same nodes.
pub fn split(h: &Hypergraph, spec: &SplitSpec) -> Result<(Hypergraph, Hypergraph)> {
    let m = h.num_edges();
    let k = spec.train_count(m);
    match spec.mode {
        SplitMode::Time => {
            let ts = h
                .timestamps()
                .ok_or_else(|| Error::param("split", "time split needs timestamps"))?;
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| ts[a].total_cmp(&ts[b]));
            Ok(partition(h, &order[..k]))
        }
        SplitMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let weights = unit_weights(h);
            let mut order: Vec<usize> = (0..m).collect();
            let mut last_sizes = Vec::new();
            for _ in 0..spec.max_attempts.max(1) {
                order.shuffle(&mut rng);
                let (train, test) = partition(h, &order[..k]);
                let comps = binarized_components(&train, &weights);
                if comps.len() == 1 {
                    return Ok((train, test));
                }
                last_sizes = comps.iter().map(Vec::len).collect();
            }
            Err(Error::GenerationFailed {
                attempts: spec.max_attempts.max(1),
                last_sizes,
            })
        }
    }
}

fn partition(h: &Hypergraph, train_idx: &[usize]) -> (Hypergraph, Hypergraph) {
    let mut in_train = vec![false; h.num_edges()];
    for &i in train_idx {
        in_train[i] = true;
    }
    (h.select_edges(|i| in_train[i]), h.select_edges(|i| !in_train[i]))
}
