//! Exhaustive optimization oracles, single-element local search, the
//! deterministic 1/3-approximation for unconstrained maximization, and
//! certificates for every optimality condition the polyhedra encode.
//!
//! Certificates are membership queries of the zero vector:
//!
//! * global minimum — `0 ∈ ∂_f(A)` (equivalently `f(A) ≤ f(B)` for every
//!   `B ⊆ A` and `B ⊇ A`), necessary and sufficient;
//! * local minimum / maximum — the zero vector in the distance-one outer
//!   bound of the corresponding semidifferential, i.e. `2n` sign checks;
//! * global maximum — `0 ∈ ∂^f(A)`, decided by enumeration (NP-hard in
//!   general);
//! * sufficient global maximum — the zero vector in the convex hull of the
//!   grow and shrink boxes; sufficient but not necessary.

use serde::Serialize;

use crate::error::Error;
use crate::function::{ensure_normalized, SetFunction};
use crate::point::Point;
use crate::polyhedra::{membership, MembershipMethod, PolyhedronDescriptor};
use crate::set::Subset;
use crate::TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Minimize,
    Maximize,
}

impl Direction {
    fn improves(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Direction::Minimize => candidate < incumbent - TOLERANCE,
            Direction::Maximize => candidate > incumbent + TOLERANCE,
        }
    }

    fn beats(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Direction::Minimize => candidate < incumbent,
            Direction::Maximize => candidate > incumbent,
        }
    }
}

/// One accepted state of a search trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceStep {
    pub set: Subset,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptResult {
    pub argset: Subset,
    pub value: f64,
    /// Number of function evaluations performed.
    pub evaluations: u64,
    /// Accepted states, starting point first; values strictly improve in the
    /// search direction. `None` for exhaustive scans.
    pub trace: Option<Vec<TraceStep>>,
}

/// Scan all `2^n` subsets; ties broken by the smallest mask. This is the
/// oracle the NP-hard-in-general objects are validated against.
pub fn brute_force_optimize<F: SetFunction + ?Sized>(
    f: &F,
    direction: Direction,
) -> Result<OptResult, Error> {
    f.ground().ensure_enumerable()?;
    let n = f.n();
    let mut best_set = Subset::EMPTY;
    let mut best_value = f.evaluate(Subset::EMPTY);
    let mut evaluations = 1u64;
    for s in Subset::all(n).skip(1) {
        let value = f.evaluate(s);
        evaluations += 1;
        if direction.beats(value, best_value) {
            best_set = s;
            best_value = value;
        }
    }
    Ok(OptResult { argset: best_set, value: best_value, evaluations, trace: None })
}

/// First-improvement single-element local search: sweep elements in
/// ascending order, toggle the first one that strictly improves (beyond the
/// tolerance, so floating-point ties cannot cycle), restart the sweep, and
/// stop when a full sweep finds nothing. The result admits no improving
/// single-element addition or deletion, hence it satisfies the local
/// optimality certificate for `direction`.
pub fn local_search<F: SetFunction + ?Sized>(
    f: &F,
    direction: Direction,
    start: Subset,
) -> Result<OptResult, Error> {
    f.ground().check_subset(start)?;
    let n = f.n();
    let mut current = start;
    let mut value = f.evaluate(current);
    let mut evaluations = 1u64;
    let mut trace = vec![TraceStep { set: current, value }];
    'sweep: loop {
        for j in 0..n {
            let candidate = current.toggled(j);
            let candidate_value = f.evaluate(candidate);
            evaluations += 1;
            if direction.improves(candidate_value, value) {
                current = candidate;
                value = candidate_value;
                trace.push(TraceStep { set: current, value });
                continue 'sweep;
            }
        }
        break;
    }
    Ok(OptResult { argset: current, value, evaluations, trace: Some(trace) })
}

/// Local search for a maximum followed by the better of the local optimum
/// and its complement. For a normalized nonnegative submodular function the
/// returned value is at least a third of the true maximum.
pub fn one_third_max<F: SetFunction + ?Sized>(
    f: &F,
    start: Subset,
) -> Result<OptResult, Error> {
    ensure_normalized(f)?;
    let search = local_search(f, Direction::Maximize, start)?;
    let complement = search.argset.complement(f.n());
    let complement_value = f.evaluate(complement);
    let evaluations = search.evaluations + 1;
    if complement_value > search.value {
        Ok(OptResult {
            argset: complement,
            value: complement_value,
            evaluations,
            trace: search.trace,
        })
    } else {
        Ok(OptResult { argset: search.argset, value: search.value, evaluations, trace: search.trace })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    GlobalMin,
    LocalMin,
    LocalMax,
    GlobalMaxExact,
    GlobalMaxSufficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    ClosedForm,
    Enumeration,
    LambdaInterval,
}

/// The violation that falsified a certificate; recomputing the named
/// inequality confirms `lhs > rhs + tolerance` (for the λ-interval method,
/// an empty feasibility window).
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CertificateWitness {
    Set { set: Subset, lhs: f64, rhs: f64 },
    Element { element: usize, lhs: f64, rhs: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub holds: bool,
    pub witness: Option<CertificateWitness>,
    pub method: CertificateMethod,
}

/// Check the optimality condition `kind` at `candidate`. The implication
/// chain `GlobalMaxSufficient ⟹ GlobalMaxExact ⟹ LocalMax` holds for
/// submodular `f` by the polyhedral nesting.
pub fn certificate<F: SetFunction + ?Sized>(
    f: &F,
    candidate: Subset,
    kind: CertificateKind,
) -> Result<Certificate, Error> {
    f.ground().check_subset(candidate)?;
    let zero = Point::zeros(f.n());
    let descriptor = match kind {
        CertificateKind::GlobalMin => PolyhedronDescriptor::Subdifferential(candidate),
        CertificateKind::LocalMin => PolyhedronDescriptor::SubOuter11(candidate),
        CertificateKind::LocalMax => {
            PolyhedronDescriptor::SuperOuter { anchor: candidate, k: 1, l: 1 }
        }
        CertificateKind::GlobalMaxExact => PolyhedronDescriptor::Superdifferential(candidate),
        CertificateKind::GlobalMaxSufficient => PolyhedronDescriptor::InnerConv(candidate),
    };
    let verdict = membership(f, descriptor, &zero)?;
    let method = match verdict.method {
        MembershipMethod::ClosedForm => CertificateMethod::ClosedForm,
        MembershipMethod::Enumeration | MembershipMethod::RestrictedEnumeration => {
            CertificateMethod::Enumeration
        }
        MembershipMethod::LambdaInterval => CertificateMethod::LambdaInterval,
    };
    let witness = verdict.witness.map(|v| match method {
        CertificateMethod::Enumeration => {
            CertificateWitness::Set { set: v.set, lhs: v.lhs, rhs: v.rhs }
        }
        _ => CertificateWitness::Element {
            element: v.set.indices().next().expect("coordinate witness"),
            lhs: v.lhs,
            rhs: v.rhs,
        },
    });
    Ok(Certificate { kind, holds: verdict.member, witness, method })
}
