//! Laplacian eigendecomposition and the linear / periodic embeddings.

mod eigen;
mod embed;

pub use eigen::{eig_smallest, eig_smallest_dense, symmetric_eigen, EigenSystem};
pub use embed::{
    embed_linear, embed_periodic, phase_angles, LinearEmbedding, PeriodicEmbedding, Spectrum,
    ANGLE_MAGNITUDE_FLOOR, DEFAULT_EIG_FLOOR, DEGENERACY_GAP,
};
