//! Stable set rings of perfect graphs and the trace of their canonical
//! module.
//!
//! - [`graph`]: simple graphs, cliques, purity, perfection, stable sets.
//! - [`poset`]: posets, comparability graphs, order and chain polytopes.
//! - [`toric`]: lattice-point membership for the ring, `ω`, `ω⁻¹` and
//!   `tr(ω)`; cone faces.
//! - [`classify`]: the component criterion and its lattice-point oracle.
//! - [`numsgp`]: numerical semigroups, type and residue.
//! - [`verify`]: batch agreement checks over graph corpora.

pub mod classify;
pub mod error;
pub mod graph;
pub mod numsgp;
pub mod poset;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};

/// Vertex-count guards for the exponential algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeLimits {
    /// Largest graph accepted by the perfection test.
    pub perfection_vertices: usize,
    /// Largest ring dimension (`n + 1`) accepted by face enumeration.
    pub face_dimension: usize,
    /// Largest vertex count for exhaustive graph enumeration.
    pub enumeration_vertices: usize,
}

impl Default for SizeLimits {
    fn default() -> Self {
        SizeLimits {
            perfection_vertices: 12,
            face_dimension: 9,
            enumeration_vertices: 6,
        }
    }
}

impl SizeLimits {
    /// Every guard set from a single vertex bound `k`.
    pub fn uniform(k: usize) -> Self {
        SizeLimits {
            perfection_vertices: k,
            face_dimension: k + 1,
            enumeration_vertices: k,
        }
    }
}
