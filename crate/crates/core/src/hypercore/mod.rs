//! Hypergraph data model and Laplacian construction.

mod hypergraph;
mod laplacian;
mod sparse;

pub use hypergraph::{pairwise_degree, restrict, trim_by_degree, Hypergraph};
pub use laplacian::{
    binarized_components, build_adjacency, build_laplacian, hermitian_form, periodic_form, quadratic_form,
    CardinalityWeights, LaplacianBundle, OrderTerms,
};
pub use sparse::{first_asymmetry, SymmetricCsr, SymmetricMatrix};
