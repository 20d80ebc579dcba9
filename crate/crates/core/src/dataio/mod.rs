//! Dataset readers and writers, and report serialization.

mod readers;
mod report;

pub use readers::{
    content_hash, default_names, read_dataset, read_edge_list, read_labels, read_simplex_triple_files, triple_paths,
    write_edge_list, write_labels, Labels, SimplexDataset, SourceFormat,
};
pub use report::{write_report, Report, ReportFormat, Value};

/// Largest hyperedge cardinality kept by the experiments.
pub const DEFAULT_MAX_CARDINALITY: usize = 3;
