//! Good drawings of complete graphs through their rotation systems.
//!
//! The crate decides triangle emptiness from rotation systems, realizes
//! rotation systems as planarized drawings by backtracking, and enumerates
//! all realizable rotation systems of small `K_n` up to weak isomorphism.

pub mod canon;
pub mod census;
pub mod crossings;
pub mod drawing;
pub mod planar_map;
pub mod realize;
pub mod rotation;
pub mod triangles;

pub use census::{enumerate, Census, CensusError, CensusRecord, Claim, ClaimReport, Enumerator, Frontier, Progress};
pub use canon::{canonical_form, canonical_key, CanonicalForm, CanonicalKey};
pub use crossings::{crossing_pairs, empty_star_triangles, CrossingPair, CrossingSet, K4CrossingTable, K4Outcome};
pub use drawing::{parse_draw, PlaneClass, RealizedDrawing};
pub use realize::{build_k4_table, default_k4_table, realize, Realization, RealizeError, Realizer};
pub use rotation::{parse_rot, validate, Edge, RotationSystem, VertexId, Violation, MAX_VERTICES};
pub use triangles::{analyze, empty_triangles, is_empty, side_partition, vertex_stats, SidePartition, Triangle, VertexStats};
