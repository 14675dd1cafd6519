//! Membership oracles and extreme-point constructions for every polyhedron
//! attached to a submodular function: the lower polyhedron and base polytope,
//! the upper polyhedron, the sub- and superdifferential at a set, their
//! distance-restricted outer bounds, and the inner boxes spanned by the
//! closed-form supergradients.
//!
//! Membership of the exact superdifferential is NP-hard in general, so it is
//! decided by explicit enumeration and guarded by the ground set's exhaustive
//! cap; everything with a known polynomial characterization uses it.

mod membership;
mod vertex;

pub use membership::{
    membership, superdiff_part_subsets, superdiff_part_supersets, InnerBoxKind, MembershipMethod,
    MembershipVerdict, PolyhedronDescriptor, Violation,
};
pub use vertex::{greedy_vertex, positive_max_exists, subdiff_vertex};
