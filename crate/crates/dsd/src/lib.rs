//! Parallel densest-subgraph discovery.
//!
//! Two approximation algorithms — iterative greedy peeling and core-based
//! augmentation — plus exact oracles (subset enumeration and a max-flow
//! binary search) and a SNAP edge-list ingestion pipeline. All parallel
//! algorithms produce worker-count-independent results.

pub mod augment;
pub mod cli;
pub mod coredec;
pub mod error;
pub mod exact;
pub mod graph;
pub mod par;
pub mod peel;

pub use error::{DsdError, Result};
pub use graph::{density, DensityValue, Graph};
