//! Gallai colorings of complete graphs: recursive lower-bound constructions,
//! monochromatic-subgraph detectors, Gallai partitions, bound formulas and
//! small exhaustive oracles.
//!
//! A coloring is built from a [`recipe::Recipe`] tree, expanded into a
//! [`graph::ColoredCompleteGraph`], checked with the [`detectors`], and
//! serialized as a [`certificate::CertificateFile`].

pub mod bitset;
pub mod bounds;
pub mod catalog;
pub mod certificate;
pub mod constructions;
pub mod detectors;
pub mod gallai;
pub mod graph;
pub mod oracle;
pub mod pattern;
pub mod recipe;

pub use bitset::Bitset;
pub use certificate::{read_certificate, write_certificate, CertificateError, CertificateFile};
pub use detectors::{detect, DetectionReport};
pub use graph::{Color, ColoredCompleteGraph, EdgeColoring, GraphError, PartialColoring, Vertex};
pub use pattern::{Pattern, SmallGraph};
pub use recipe::Recipe;
