//! Cographs, their cotrees, and certified sparse/dense extraction and
//! restricted partitions.
//!
//! Every extraction and partition returns certificates that can be checked
//! against the graph independently of the code that produced them. All
//! thresholds are exact rationals.

pub mod cotree;
pub mod error;
pub mod extract;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod rational;
pub mod viral;

pub use cotree::{build_cotree, parse_cotree, random_cograph, Cotree, P4Witness, Recognition};
pub use error::{Error, Result};
pub use extract::{
    betterthm_extract, delta_bounds, p4thm_extract, product_extract, toprange_extract, DeltaBounds,
    ExtractionParams,
};
pub use graph::{parse_graph, write_graph, Graph, Polarity, RestrictedCertificate, Side, VertexSet};
pub use partition::{rodl_partition, thin_thick_partition, Beribboning};
pub use rational::Rational;
pub use viral::{count_copies, viral_check, Pattern, ViralVerdict};
