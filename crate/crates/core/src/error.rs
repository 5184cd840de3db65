use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by graph construction, partition handling and the
/// clustering machinery.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Edge list is empty after cleaning (self-loops, duplicates, isolated
    /// nodes removed).
    EmptyGraph,
    /// A node index is outside the graph.
    NodeOutOfRange { node: usize, node_count: usize },
    /// A label array does not match the expected node count.
    LengthMismatch { expected: usize, found: usize },
    /// A node is not covered by any set of an overlapping cover.
    UncoveredNode { node: usize },
    /// A cluster id is outside the clustering.
    ClusterOutOfRange {
        cluster: usize,
        cluster_count: usize,
    },
    /// Requested more clusters than there are nodes.
    TooManyClusters { requested: usize, node_count: usize },
    /// Power-law fit is undefined (degenerate tail).
    UndefinedFit { reason: &'static str },
    /// Normalized variation of information needs at least two nodes.
    GraphTooSmall { node_count: usize },
    /// Unknown method or preset name.
    UnknownMethod { name: String },
    /// Class count is invalid for the number of labels.
    BadClassCount { requested: usize, labels: usize },
    /// Benchmark parameters are out of range.
    BadParameter { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyGraph => write!(f, "graph is empty after cleaning"),
            Error::NodeOutOfRange { node, node_count } => {
                write!(f, "node {node} out of range (graph has {node_count} nodes)")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::UncoveredNode { node } => {
                write!(f, "node {node} is not covered by any cluster")
            }
            Error::ClusterOutOfRange {
                cluster,
                cluster_count,
            } => {
                write!(
                    f,
                    "cluster {cluster} out of range ({cluster_count} clusters)"
                )
            }
            Error::TooManyClusters {
                requested,
                node_count,
            } => {
                write!(f, "cannot cut {node_count} nodes into {requested} clusters")
            }
            Error::UndefinedFit { reason } => write!(f, "power-law fit undefined: {reason}"),
            Error::GraphTooSmall { node_count } => {
                write!(f, "need at least 2 nodes, got {node_count}")
            }
            Error::UnknownMethod { name } => write!(f, "unknown method '{name}'"),
            Error::BadClassCount { requested, labels } => {
                write!(f, "cannot form {requested} classes from {labels} labels")
            }
            Error::BadParameter { what } => write!(f, "invalid parameter: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
