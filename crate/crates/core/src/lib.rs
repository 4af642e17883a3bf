//! Weighted dual graphs of rational curves, their cycles, and the
//! combinatorics of compactification boundaries of the affine plane.

pub mod birational;
pub mod boundary;
pub mod construct;
pub mod corpus;
pub mod cycle;
pub mod error;
pub mod format;
pub mod graph;
pub mod linalg;
pub mod scalar;
pub mod singularity;

/// Default exact integer.
pub type Int = num_bigint::BigInt;
/// Default exact rational.
pub type Rational = num_rational::BigRational;

pub use birational::{
    blow_down, blow_up_at_edge, blow_up_on_curve, build_z, peel_step, peel_step_traced,
    reduce_to_trivial, PeelStep, ReductionTrace, StepTag, ZCycle,
};
pub use boundary::{
    classify_k, comb_decompose, coprime_check, detect_case, split_determinants,
    validate_boundary, BoundaryConfig, CombDecomposition, CombMismatch, KClass, KValue, PeelCase,
    SplitDeterminants, ValidationReport,
};
pub use construct::{
    apply_sequence, canonical_boundary, canonical_rooted, canonical_tree, enumerate_boundaries,
    EnumeratedBoundary, EnumerationConfig, Filters, HirzebruchSeed, Move, MoveSequence,
};
pub use cycle::{
    canonical_degree, canonical_pairing, compute_d_sharp, compute_d_sharp_in, k_gamma_mumford,
    pa_genus, pairing, Cycle, DSharpResult,
};
pub use error::{Error, ErrorClass, Result};
pub use format::{emit_graph, parse_cycle_literal, parse_graph, GraphFile};
pub use graph::{CurveVertex, IntersectionMatrix, VertexId, WeightedDualGraph};
pub use scalar::ExactInt;
pub use singularity::{
    fundamental_cycle, is_rational, max_pa_bounded, BoundedGenus, SingularityKind,
    SingularityReport,
};
