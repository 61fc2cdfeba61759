//! Color-refinement testers over bags of subgraphs.
//!
//! The crate provides:
//! - a simple undirected [`Graph`](graph::Graph) with a text edge-list format,
//! - subgraph selection [`policies`](policy) (node-deleted, edge-deleted,
//!   ego-nets, single-edge, augmented variants),
//! - base refiners: classic 1-dimensional color refinement ([`wl`]) and
//!   folklore 2-dimensional refinement ([`fwl2`]),
//! - bag-level testers ([`bag`]): joint refinement across a bag of subgraphs
//!   with cross-subgraph channels, and per-subgraph independent refinement,
//! - graph [`generators`] for the families the testers are hard to fool by
//!   (circulant skip-link graphs, strongly regular grid graphs),
//! - an exact backtracking [isomorphism oracle](iso) for small graphs,
//! - uniform bag [subsampling with majority voting](sample).
//!
//! All pairwise testers are one-sided: `Distinguished` proves the inputs are
//! non-isomorphic, `PossiblyIsomorphic` proves nothing.

pub mod bag;
pub mod fwl2;
pub mod generators;
pub mod graph;
pub mod iso;
pub mod par;
pub mod policy;
pub mod sample;
pub mod tester;
pub mod verdict;
pub mod wl;

pub use graph::{ColorInterner, Graph, NodePartition};
pub use policy::{apply_policy, Bag, PolicySpec};
pub use verdict::Verdict;
