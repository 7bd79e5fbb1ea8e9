//! Coordinate-free combinatorics for genus-0 polygonal enclosures.
//!
//! The crate works purely with counts: how many faces of each degree a
//! surface has, how many tetrahedra fill it, how many triangles are glued
//! inside. Nothing here knows about coordinates, so a "feasible" verdict means
//! the counts are consistent, not that a polyhedron can be built.
//!
//! - [`multiset`]: polygon multisets and their angle/flatness sums
//! - [`external`]: surface identities and parity-sensitive extremal bounds
//! - [`internal`]: tetrahedral decomposition identities and the ladder family
//! - [`feasibility`]: the step-by-step enclosure worksheet
//! - [`typesolver`]: face-type and vertex-type integer solutions
//! - [`census`]: structure-pair counts and partition-based upper bounds
//! - [`audit`]: explicit tetrahedral complexes checked against the 3D Euler link

pub mod audit;
pub mod census;
mod error;
pub mod external;
pub mod feasibility;
pub mod internal;
pub mod multiset;
pub mod typesolver;

pub use audit::{
    accounting_row, audit, AccountingMode, AccountingRow, AuditCounts, AuditReport, TetComplex,
};
pub use census::{
    face_combo_restricted_bound, face_combo_upper_bound, pair_combination_count, partition_count,
    restricted_partition_count, CensusRow, PartitionTable,
};
pub use error::{Error, Result};
pub use external::{
    e_min, external_bounds, external_profile, flatness_series, m_bounds, ExternalBounds,
    ExternalProfile, FlatnessStep,
};
pub use feasibility::{
    check_enclosure, vertex_estimate, FeasibilityReport, InfeasibleReason, Verdict,
};
pub use internal::{
    boundary_from_interior, extended_euler, heuristic_prune, internal_ranges, ni_from_t,
    salt_ladder, t_from_si, BoundaryCounts, InternalConfig, InternalRanges, PrunedLadder,
};
pub use multiset::{derived_counts, validate_multiset, DerivedCounts, PolygonMultiset};
pub use typesolver::{
    enumerate_face_types, enumerate_vertex_types, Consistency, FaceTypeSolution, HighValencyCap,
    RealizabilityFilters, VertexTypeSolution,
};
