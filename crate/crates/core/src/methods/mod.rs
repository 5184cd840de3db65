//! The clustering algorithms and their configuration.

mod kway;
mod level;
mod louvain;
mod lpa;
mod mapeq;

pub use kway::kway_partition;
pub use louvain::louvain;
pub use lpa::label_propagation;
pub use mapeq::{infomap_two_level, map_equation};

use louvain::louvain_capped;
use lpa::lpa_capped;
use mapeq::infomap_capped;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Clustering;

/// Algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Greedy multilevel modularity optimization.
    Louvain,
    /// Two-level map equation minimization.
    Infomap,
    /// Asynchronous label propagation.
    LabelPropagation,
    /// Multilevel k-way partitioning.
    KWay,
}

impl Algorithm {
    /// Canonical tag, also accepted by [`Algorithm::parse`].
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Louvain => "louvain",
            Algorithm::Infomap => "mapeq",
            Algorithm::LabelPropagation => "lpa",
            Algorithm::KWay => "kway",
        }
    }

    pub fn parse(name: &str) -> Result<Algorithm> {
        match name {
            "louvain" => Ok(Algorithm::Louvain),
            "mapeq" | "infomap" => Ok(Algorithm::Infomap),
            "lpa" => Ok(Algorithm::LabelPropagation),
            "kway" => Ok(Algorithm::KWay),
            other => Err(Error::UnknownMethod { name: other.into() }),
        }
    }
}

/// Cluster-count variant for methods that need the count fixed up front.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeVariant {
    /// n/15 clusters.
    Small,
    /// n/50 clusters.
    Large,
}

/// Default cluster count: floor(n/15) for the S variant, floor(n/50) for L,
/// never below 1.
pub fn default_cluster_count(n: usize, variant: SizeVariant) -> usize {
    let c = match variant {
        SizeVariant::Small => n / 15,
        SizeVariant::Large => n / 50,
    };
    c.max(1)
}

/// Variant selection by network size: S below 10^6 nodes, L otherwise.
pub fn auto_variant(n: usize) -> SizeVariant {
    if n < 1_000_000 {
        SizeVariant::Small
    } else {
        SizeVariant::Large
    }
}

/// Full configuration of a single clustering run. The seed fully determines
/// the output for a fixed graph.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodConfig {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Resolution multiplier on the modularity null term (Louvain only).
    pub resolution: f64,
    /// Target cluster count (k-way only); `None` applies the n/15 or n/50
    /// rule with the variant auto-selected by network size.
    pub target_clusters: Option<usize>,
    /// Hard cap on local-moving or propagation sweeps.
    pub max_passes: usize,
}

impl MethodConfig {
    pub fn new(algorithm: Algorithm) -> MethodConfig {
        MethodConfig {
            algorithm,
            seed: 0,
            resolution: 1.0,
            target_clusters: None,
            max_passes: 100,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> MethodConfig {
        self.seed = seed;
        self
    }

    pub fn with_resolution(mut self, resolution: f64) -> MethodConfig {
        self.resolution = resolution;
        self
    }

    pub fn with_target_clusters(mut self, clusters: usize) -> MethodConfig {
        self.target_clusters = Some(clusters);
        self
    }
}

/// Run the configured algorithm on `graph`.
pub fn run_method(graph: &Graph, config: &MethodConfig) -> Result<Clustering> {
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    match config.algorithm {
        Algorithm::Louvain => {
            louvain_capped(graph, config.resolution, config.seed, config.max_passes)
        }
        Algorithm::Infomap => infomap_capped(graph, config.seed, config.max_passes),
        Algorithm::LabelPropagation => lpa_capped(graph, config.seed, config.max_passes),
        Algorithm::KWay => {
            let c = config.target_clusters.unwrap_or_else(|| {
                default_cluster_count(graph.node_count(), auto_variant(graph.node_count()))
            });
            kway_partition(graph, c, config.seed)
        }
    }
}
