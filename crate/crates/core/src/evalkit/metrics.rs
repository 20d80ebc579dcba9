use std::collections::HashMap;
use std::hash::Hash;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::slice::ParallelSliceMut;

use crate::error::{Error, Result};

fn pairs(x: u64) -> i128 {
    let x = x as i128;
    x * (x - 1).max(0) / 2
}

/// Adjusted Rand index between two labelings of the same items.
///
/// Returns 1 when the expected and maximal index coincide, which happens
/// only when both sides are trivial (all singletons or a single block).
pub fn ari<A: Eq + Hash, B: Eq + Hash>(a: &[A], b: &[B]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut ids_a: HashMap<&A, usize> = HashMap::new();
    let mut ids_b: HashMap<&B, usize> = HashMap::new();
    let mut cells: HashMap<(usize, usize), u64> = HashMap::new();
    for (x, y) in a.iter().zip(b) {
        let next = ids_a.len();
        let i = *ids_a.entry(x).or_insert(next);
        let next = ids_b.len();
        let j = *ids_b.entry(y).or_insert(next);
        *cells.entry((i, j)).or_insert(0) += 1;
    }
    let mut rows = vec![0u64; ids_a.len()];
    let mut cols = vec![0u64; ids_b.len()];
    let mut index = 0i128;
    for (&(i, j), &c) in &cells {
        rows[i] += c;
        cols[j] += c;
        index += pairs(c);
    }
    let sum_a: i128 = rows.iter().map(|&c| pairs(c)).sum();
    let sum_b: i128 = cols.iter().map(|&c| pairs(c)).sum();
    let total = pairs(a.len() as u64);
    if total == 0 {
        return Ok(1.0);
    }
    // Index, expectation and maximum scaled by 2·total so the ratio is
    // formed from exact integers.
    let num = 2 * (total * index - sum_a * sum_b);
    let den = total * (sum_a + sum_b) - 2 * sum_a * sum_b;
    if den == 0 {
        return Ok(1.0);
    }
    Ok(num as f64 / den as f64)
}

/// Precision-recall curve with its average-precision area.
#[derive(Debug, Clone, PartialEq)]
pub struct PRCurve {
    /// `(recall, precision)` at each rank holding a positive.
    pub points: Vec<(f64, f64)>,
    pub auc: f64,
}

/// Ranks items by descending score and returns the precision-recall curve.
///
/// Tied scores are ordered by a shuffle seeded with `seed` before the
/// stable sort. The area is average precision: the mean over positives of
/// the precision at the rank of that positive.
pub fn auc_pr(scores: &[f64], positive: &[bool], seed: u64) -> Result<PRCurve> {
    if scores.len() != positive.len() {
        return Err(Error::LengthMismatch {
            left: scores.len(),
            right: positive.len(),
        });
    }
    if let Some(i) = scores.iter().position(|s| s.is_nan()) {
        return Err(Error::UndefinedMetric(format!("score {i} is NaN")));
    }
    let total = positive.iter().filter(|&&p| p).count();
    if total == 0 {
        return Err(Error::UndefinedMetric("no positive items".into()));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    // Sorting by (score descending, shuffled position) equals a stable sort
    // of the shuffled order, and the keys are unique.
    let mut items: Vec<(f64, usize, bool)> = order.iter().enumerate().map(|(r, &i)| (scores[i], r, positive[i])).collect();
    drop(order);
    items.par_sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut points = Vec::with_capacity(total);
    let mut hits = 0usize;
    let mut area = 0.0;
    for (rank, &(_, _, is_positive)) in items.iter().enumerate() {
        if is_positive {
            hits += 1;
            let precision = hits as f64 / (rank + 1) as f64;
            area += precision;
            points.push((hits as f64 / total as f64, precision));
            if hits == total {
                break;
            }
        }
    }
    Ok(PRCurve {
        points,
        auc: area / total as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ari_identical_and_relabelled() {
        let a = [0, 0, 1, 1, 2, 2];
        let b = ["x", "x", "z", "z", "y", "y"];
        assert_eq!(ari(&a, &a).unwrap(), 1.0);
        assert_eq!(ari(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn ari_hand_case() {
        // Contingency table is all ones: index 0, row and column sums 2 each,
        // expected 2·2/6 = 2/3, max 2, so (0 − 2/3)/(2 − 2/3) = −1/2.
        let v = ari(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap();
        assert!((v + 0.5).abs() < 1e-15);
    }

    #[test]
    fn ari_is_symmetric() {
        let a = [0, 0, 0, 1, 1, 2, 2, 2, 2];
        let b = [1, 1, 0, 0, 0, 0, 2, 2, 1];
        assert_eq!(ari(&a, &b).unwrap(), ari(&b, &a).unwrap());
        assert!(ari(&a, &b[..3]).is_err());
    }

    #[test]
    fn average_precision_hand_case() {
        let c = auc_pr(&[0.9, 0.8, 0.7, 0.6], &[true, false, true, false], 0).unwrap();
        assert!((c.auc - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(c.points, vec![(0.5, 1.0), (1.0, 2.0 / 3.0)]);
    }

    #[test]
    fn perfect_ranking() {
        let c = auc_pr(&[3.0, 2.0, 1.0, 0.0], &[true, true, false, false], 5).unwrap();
        assert_eq!(c.auc, 1.0);
    }

    #[test]
    fn no_positives_is_undefined() {
        assert!(matches!(auc_pr(&[1.0], &[false], 0), Err(Error::UndefinedMetric(_))));
    }
}
