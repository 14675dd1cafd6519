//! Error type shared by constructors, preconditions, and enumeration guards.

use thiserror::Error;

/// Everything that can go wrong short of a programming error.
///
/// Operations that would enumerate `2^n` subsets past the configured cap fail
/// loudly with [`Error::CapExceeded`] instead of silently degrading.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("ground set must contain at least one element")]
    EmptyGroundSet,
    #[error("ground set of {n} elements exceeds the supported maximum of {max}")]
    GroundSetTooLarge { n: usize, max: usize },
    #[error("exhaustive cap {cap} exceeds the hard limit of {max}")]
    CapTooLarge { cap: usize, max: usize },
    #[error("{got} labels supplied for a ground set of {expected} elements")]
    LabelsLength { expected: usize, got: usize },
    #[error("element {index} is out of range for a ground set of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("subset mask {mask:#x} has bits outside a ground set of {n} elements")]
    SubsetOutOfRange { mask: u64, n: usize },
    #[error("enumeration over {n} elements exceeds the exhaustive cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires a normalized function, but f(empty) = {value_at_empty}")]
    NotNormalized { value_at_empty: f64 },
    #[error("order of length {got} does not match a ground set of {expected} elements")]
    PermutationLength { expected: usize, got: usize },
    #[error("order is not a permutation: element {element} repeats or is out of range")]
    NotAPermutation { element: usize },
    #[error("position {position} holds element {element}, breaking the anchor-prefix requirement")]
    PermutationInconsistent { position: usize, element: usize },
    #[error("the tilde vector is not a supergradient and induces no modular upper bound")]
    NotASupergradient,
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("invalid polyhedron descriptor: {0}")]
    InvalidDescriptor(String),
}
