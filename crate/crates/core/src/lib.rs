//! Executable polyhedral theory of submodular set functions.
//!
//! The crate provides, over a closed zoo of concrete set functions (and any
//! user-supplied evaluator implementing [`SetFunction`]):
//!
//! * membership oracles for the lower polyhedron, base polytope, upper
//!   polyhedron, sub- and superdifferentials, their distance-restricted
//!   outer bounds, and the supergradient inner boxes ([`polyhedra`]);
//! * greedy chain extreme points, closed-form supergradients, and tight
//!   modular upper/lower bounds ([`polyhedra`], [`bounds`]);
//! * brute-force and local-search optimizers plus optimality certificates
//!   for minimization and maximization ([`optimize`]);
//! * exhaustive property validators and seeded instance generators
//!   ([`mod@validate`], [`random`]).
//!
//! Objects that are NP-hard to decide in general (exact superdifferential
//! membership, global-maximum certificates) are decided by explicit
//! enumeration and guarded by a per-ground-set cap, so everything stays
//! honest at desk scale. Evaluation is pure and read-only; all operations
//! can be called concurrently without synchronization.
//!
//! ```
//! use subpoly::{
//!     certificate, membership, supergradient, CertificateKind, Instance,
//!     PolyhedronDescriptor, Subset, SupergradientKind,
//! };
//!
//! // f = weighted cut of a triangle
//! let f = Instance::graph_cut(3, vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
//! let x = Subset::singleton(0);
//!
//! // the closed-form "grow" vector at {0} is an exact supergradient:
//! let g = supergradient(&f, x, SupergradientKind::Grow).unwrap();
//! let verdict = membership(&f, PolyhedronDescriptor::Superdifferential(x), &g).unwrap();
//! assert!(verdict.member);
//!
//! // and {0} is a global maximizer of the cut:
//! assert!(certificate(&f, x, CertificateKind::GlobalMaxExact).unwrap().holds);
//! ```

pub mod bounds;
pub mod error;
pub mod function;
pub mod optimize;
pub mod point;
pub mod polyhedra;
pub mod random;
pub mod set;
pub mod validate;

/// Absolute tolerance for every comparison of real values: an inequality
/// `a ≤ b` is accepted when `a ≤ b + TOLERANCE`, so boundary points belong
/// to the (closed) polyhedra they bound.
pub const TOLERANCE: f64 = 1e-9;

pub use bounds::{
    modular_lower_bound, modular_upper_bound, nemhauser_bound, supergradient, BoundDirection,
    ModularBound, NemhauserBound, NemhauserVariant, SupergradientKind,
};
pub use error::Error;
pub use function::{
    dual, is_normalized, normalize, ConcaveShape, DeclaredFlags, Dual, Family, Instance,
    MatroidKind, Normalized, SetFunction,
};
pub use optimize::{
    brute_force_optimize, certificate, local_search, one_third_max, Certificate,
    CertificateKind, CertificateMethod, CertificateWitness, Direction, OptResult, TraceStep,
};
pub use point::Point;
pub use polyhedra::{
    greedy_vertex, membership, positive_max_exists, subdiff_vertex, superdiff_part_subsets,
    superdiff_part_supersets, InnerBoxKind, MembershipMethod, MembershipVerdict,
    PolyhedronDescriptor, Violation,
};
pub use set::{
    GroundSet, Permutation, Subset, DEFAULT_EXHAUSTIVE_CAP, MAX_ELEMENTS, MAX_EXHAUSTIVE_CAP,
};
pub use validate::{validate, Counterexample, Property, ValidationReport};
