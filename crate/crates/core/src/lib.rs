//! Community detection and clustering evaluation for citation-style networks.
//!
//! The crate covers the full pipeline for comparing clustering methods on
//! simple undirected graphs:
//!
//! * [`graph`] — compressed immutable graphs, ingestion cleaning rules,
//!   subgraph extraction, degree-preserving rewiring.
//! * [`planted`] — planted-partition benchmark generation.
//! * [`partition`] — node partitions, relabeling, overlap flattening and
//!   contingency tables.
//! * [`methods`] — Louvain modularity optimization, two-level map equation
//!   minimization, label propagation and multilevel k-way partitioning.
//! * [`hybrid`] — two-stage methods that refine a coarse first-stage cut
//!   cluster by cluster under a log-likelihood acceptance rule.
//! * [`postprocess`] — splitting of giant clusters and merging of tiny ones,
//!   both governed by log-likelihood.
//! * [`metrics`] — connectivity, modularity, likelihood, size, diameter and
//!   degeneracy statistics of a (graph, clustering) pair.
//! * [`compare`] — variation of information, uncertainty, robustness curves,
//!   distance matrices and method classification.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature switches float math to the platform intrinsics. All algorithms are
//! deterministic for a fixed seed and operate on immutable shared graphs, so
//! independent runs can be scheduled concurrently by the caller.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod compare;
mod error;
pub mod graph;
pub mod hybrid;
mod math;
pub mod methods;
pub mod metrics;
pub mod partition;
pub mod planted;
pub mod postprocess;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{DegreeStats, Graph, RewireOutcome, SubgraphMap};
pub use methods::{Algorithm, MethodConfig, SizeVariant};
pub use partition::{Clustering, ContingencyTable};
pub use planted::PlantedBenchmark;
