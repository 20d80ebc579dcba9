//! Clustering and ranking metrics.

mod kmeans;
mod metrics;

pub use kmeans::{circle_points, kmeans, Clustering, DEFAULT_RESTARTS, MAX_ITERATIONS};
pub use metrics::{ari, auc_pr, PRCurve};
