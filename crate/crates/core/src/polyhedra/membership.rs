//! The membership oracle for every polyhedron in the toolkit.
//!
//! Each descriptor is decided by the cheapest known characterization:
//!
//! * lower polyhedron / base polytope — `min_Y [f(Y) − x(Y)] ≥ 0`, with the
//!   minimum found by the brute-force minimizer;
//! * upper polyhedron — the `n` singleton inequalities `x(j) ≥ f(j)`, which
//!   are the only irredundant ones for submodular normalized `f`;
//! * subdifferential at `X` — the inequalities for `Y ⊆ X` and `Y ⊇ X` only;
//! * superdifferential at `X` — full enumeration (membership is NP-hard);
//! * the distance-`(k, l)` outer bounds — singleton families plus the layered
//!   enumeration of incomparable sets with `|Y\X| ≤ k−1`, `|X\Y| ≤ l−1`, so
//!   the cost stays `O(n^{k+l})` rather than `2^n`;
//! * inner boxes — coordinate comparisons against the matching supergradient;
//! * the convex hull of the grow and shrink boxes — exact intersection of the
//!   per-coordinate feasibility intervals for the mixing weight `λ`.
//!
//! An inequality `a ≤ b` counts as satisfied when `a ≤ b + 1e-9`, so boundary
//! points are members. Negative verdicts carry the first violated inequality
//! in scan order; `witness.lhs ≤ witness.rhs` is the inequality that failed.

use serde::Serialize;

use crate::bounds::{supergradient, SupergradientKind};
use crate::error::Error;
use crate::function::{ensure_normalized, SetFunction};
use crate::optimize::{brute_force_optimize, Direction};
use crate::point::Point;
use crate::set::{GroundSet, Subset};
use crate::TOLERANCE;

/// Which polyhedron a membership query targets. Anchored variants carry the
/// set `X` they are taken at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyhedronDescriptor {
    /// `P_f = { x : x(S) ≤ f(S) ∀S }`.
    LowerPolyhedron,
    /// `B_f = P_f ∩ { x : x(V) = f(V) }`.
    BasePolytope,
    /// `P^f = { x : x(S) ≥ f(S) ∀S }`.
    UpperPolyhedron,
    /// `∂_f(X) = { x : f(Y) − x(Y) ≥ f(X) − x(X) ∀Y }`.
    Subdifferential(Subset),
    /// `∂^f(X) = { x : f(Y) − x(Y) ≤ f(X) − x(X) ∀Y }`.
    Superdifferential(Subset),
    /// The distance-one outer bound of the subdifferential.
    SubOuter11(Subset),
    /// The distance-`(k, l)` outer bound of the superdifferential.
    SuperOuter { anchor: Subset, k: usize, l: usize },
    /// One of the three supergradient corner boxes inside `∂^f(X)`.
    InnerBox { anchor: Subset, kind: InnerBoxKind },
    /// The convex hull of the grow and shrink boxes.
    InnerConv(Subset),
}

/// Which inner box: each is the axis-aligned box whose single corner is the
/// matching closed-form supergradient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerBoxKind {
    Grow,
    Shrink,
    Bar,
}

impl InnerBoxKind {
    pub fn supergradient_kind(self) -> SupergradientKind {
        match self {
            InnerBoxKind::Grow => SupergradientKind::Grow,
            InnerBoxKind::Shrink => SupergradientKind::Shrink,
            InnerBoxKind::Bar => SupergradientKind::Bar,
        }
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipMethod {
    ClosedForm,
    Enumeration,
    RestrictedEnumeration,
    LambdaInterval,
}

/// A violated inequality `lhs ≤ rhs` (so `lhs > rhs + tolerance`), with the
/// subset it came from. For coordinate checks the set is the singleton of
/// the offending element; for the λ-interval method `lhs`/`rhs` are the
/// accumulated lower/upper bounds of the feasible window after the named
/// coordinate closed it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub set: Subset,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub member: bool,
    pub witness: Option<Violation>,
    pub method: MembershipMethod,
}

impl MembershipVerdict {
    fn member(method: MembershipMethod) -> Self {
        MembershipVerdict { member: true, witness: None, method }
    }

    fn violated(method: MembershipMethod, set: Subset, lhs: f64, rhs: f64) -> Self {
        MembershipVerdict { member: false, witness: Some(Violation { set, lhs, rhs }), method }
    }
}

// f(Y) − x(Y), the residual whose sign pattern decides the lower polyhedron.
struct Residual<'a, F: SetFunction + ?Sized> {
    f: &'a F,
    x: &'a Point,
}

impl<F: SetFunction + ?Sized> SetFunction for Residual<'_, F> {
    fn ground(&self) -> &GroundSet {
        self.f.ground()
    }

    fn evaluate(&self, s: Subset) -> f64 {
        self.f.evaluate(s) - self.x.sum_over(s)
    }
}

/// Decide whether `x` lies in the described polyhedron of `f`.
///
/// Enumeration-backed descriptors require the ground set to be within its
/// exhaustive cap. Descriptors whose characterization presumes a normalized
/// function (the upper polyhedron's singleton reduction and the supergradient
/// boxes) reject non-normalized instances.
pub fn membership<F: SetFunction + ?Sized>(
    f: &F,
    descriptor: PolyhedronDescriptor,
    x: &Point,
) -> Result<MembershipVerdict, Error> {
    let ground = f.ground();
    if x.len() != ground.len() {
        return Err(Error::DimensionMismatch { expected: ground.len(), got: x.len() });
    }
    match descriptor {
        PolyhedronDescriptor::LowerPolyhedron => lower_polyhedron(f, x, false),
        PolyhedronDescriptor::BasePolytope => lower_polyhedron(f, x, true),
        PolyhedronDescriptor::UpperPolyhedron => upper_polyhedron(f, x),
        PolyhedronDescriptor::Subdifferential(anchor) => {
            ground.check_subset(anchor)?;
            subdifferential(f, anchor, x)
        }
        PolyhedronDescriptor::Superdifferential(anchor) => {
            ground.check_subset(anchor)?;
            superdifferential(f, anchor, x)
        }
        PolyhedronDescriptor::SubOuter11(anchor) => {
            ground.check_subset(anchor)?;
            sub_outer_11(f, anchor, x)
        }
        PolyhedronDescriptor::SuperOuter { anchor, k, l } => {
            ground.check_subset(anchor)?;
            super_outer(f, anchor, k, l, x)
        }
        PolyhedronDescriptor::InnerBox { anchor, kind } => {
            ground.check_subset(anchor)?;
            inner_box(f, anchor, kind, x)
        }
        PolyhedronDescriptor::InnerConv(anchor) => {
            ground.check_subset(anchor)?;
            inner_conv(f, anchor, x)
        }
    }
}

fn lower_polyhedron<F: SetFunction + ?Sized>(
    f: &F,
    x: &Point,
    base: bool,
) -> Result<MembershipVerdict, Error> {
    f.ground().ensure_enumerable()?;
    let method = MembershipMethod::Enumeration;
    let residual = Residual { f, x };
    let minimum = brute_force_optimize(&residual, Direction::Minimize)?;
    if minimum.value < -TOLERANCE {
        // rescan for the first violation in mask order, testing the same
        // residual expression the minimizer saw
        for y in Subset::all(f.n()) {
            if residual.evaluate(y) < -TOLERANCE {
                return Ok(MembershipVerdict::violated(
                    method,
                    y,
                    x.sum_over(y),
                    f.evaluate(y),
                ));
            }
        }
        unreachable!("negative minimum without a violated inequality");
    }
    if base {
        let full = f.ground().full_subset();
        let xv = x.total();
        let fv = f.evaluate(full);
        if xv > fv + TOLERANCE {
            return Ok(MembershipVerdict::violated(method, full, xv, fv));
        }
        if fv > xv + TOLERANCE {
            return Ok(MembershipVerdict::violated(method, full, fv, xv));
        }
    }
    Ok(MembershipVerdict::member(method))
}

fn upper_polyhedron<F: SetFunction + ?Sized>(
    f: &F,
    x: &Point,
) -> Result<MembershipVerdict, Error> {
    // the singleton reduction presumes f(∅) = 0
    ensure_normalized(f)?;
    let method = MembershipMethod::ClosedForm;
    for j in 0..f.n() {
        let fj = f.evaluate(Subset::singleton(j));
        if fj > x[j] + TOLERANCE {
            return Ok(MembershipVerdict::violated(method, Subset::singleton(j), fj, x[j]));
        }
    }
    Ok(MembershipVerdict::member(method))
}

fn subdifferential<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    x: &Point,
) -> Result<MembershipVerdict, Error> {
    f.ground().ensure_enumerable()?;
    let method = MembershipMethod::RestrictedEnumeration;
    let base = f.evaluate(anchor) - x.sum_over(anchor);
    let families = [anchor.subsets(), anchor.supersets(f.n())];
    for family in families {
        for y in family {
            let rhs = f.evaluate(y) - x.sum_over(y);
            if base > rhs + TOLERANCE {
                return Ok(MembershipVerdict::violated(method, y, base, rhs));
            }
        }
    }
    Ok(MembershipVerdict::member(method))
}

fn superdifferential<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    x: &Point,
) -> Result<MembershipVerdict, Error> {
    f.ground().ensure_enumerable()?;
    let method = MembershipMethod::Enumeration;
    let base = f.evaluate(anchor) - x.sum_over(anchor);
    for y in Subset::all(f.n()) {
        let lhs = f.evaluate(y) - x.sum_over(y);
        if lhs > base + TOLERANCE {
            return Ok(MembershipVerdict::violated(method, y, lhs, base));
        }
    }
    Ok(MembershipVerdict::member(method))
}

fn sub_outer_11<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    x: &Point,
) -> Result<MembershipVerdict, Error> {
    let method = MembershipMethod::ClosedForm;
    for j in 0..f.n() {
        if anchor.contains(j) {
            // f(j | X − j) ≤ x(j)
            let lhs = f.gain(j, anchor.without(j));
            if lhs > x[j] + TOLERANCE {
                return Ok(MembershipVerdict::violated(method, Subset::singleton(j), lhs, x[j]));
            }
        } else {
            // x(j) ≤ f(j | X)
            let rhs = f.gain(j, anchor);
            if x[j] > rhs + TOLERANCE {
                return Ok(MembershipVerdict::violated(method, Subset::singleton(j), x[j], rhs));
            }
        }
    }
    Ok(MembershipVerdict::member(method))
}

/// The singleton form of the superdifferential inequalities for `Y ⊆ X`:
/// `x(j) ≤ f(j | X − j)` for every `j ∈ X`. For submodular `f` this equals
/// the full `Y ⊆ X` family.
pub fn superdiff_part_subsets<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    x: &Point,
) -> Result<MembershipVerdict, Error> {
    let ground = f.ground();
    if x.len() != ground.len() {
        return Err(Error::DimensionMismatch { expected: ground.len(), got: x.len() });
    }
    ground.check_subset(anchor)?;
    let method = MembershipMethod::ClosedForm;
    for j in anchor.indices() {
        let rhs = f.gain(j, anchor.without(j));
        if x[j] > rhs + TOLERANCE {
            return Ok(MembershipVerdict::violated(method, Subset::singleton(j), x[j], rhs));
        }
    }
    Ok(MembershipVerdict::member(method))
}

/// The singleton form of the superdifferential inequalities for `Y ⊇ X`:
/// `f(j | X) ≤ x(j)` for every `j ∉ X`. For submodular `f` this equals the
/// full `Y ⊇ X` family.
pub fn superdiff_part_supersets<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    x: &Point,
) -> Result<MembershipVerdict, Error> {
    let ground = f.ground();
    if x.len() != ground.len() {
        return Err(Error::DimensionMismatch { expected: ground.len(), got: x.len() });
    }
    ground.check_subset(anchor)?;
    let method = MembershipMethod::ClosedForm;
    for j in anchor.complement(ground.len()).indices() {
        let lhs = f.gain(j, anchor);
        if lhs > x[j] + TOLERANCE {
            return Ok(MembershipVerdict::violated(method, Subset::singleton(j), lhs, x[j]));
        }
    }
    Ok(MembershipVerdict::member(method))
}

fn super_outer<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    k: usize,
    l: usize,
    x: &Point,
) -> Result<MembershipVerdict, Error> {
    let n = f.n();
    if k == 0 || k > n || l == 0 || l > n {
        return Err(Error::InvalidDescriptor(format!(
            "outer-bound orders (k, l) = ({k}, {l}) must lie in 1..={n}"
        )));
    }

    let part1 = superdiff_part_subsets(f, anchor, x)?;
    if !part1.member {
        return Ok(part1);
    }
    let part2 = superdiff_part_supersets(f, anchor, x)?;
    if !part2.member {
        return Ok(part2);
    }
    if k == 1 && l == 1 {
        return Ok(MembershipVerdict::member(MembershipMethod::ClosedForm));
    }

    // Layered enumeration of incomparable sets keeps the cost polynomial in n
    // for fixed (k, l). Bound the work arithmetically before materializing
    // any combination, and only then enumerate.
    let outside = anchor.complement(n);
    let add_total: u128 = (1..k as u64).map(|a| binomial(outside.len() as u64, a)).sum();
    let drop_total: u128 = (1..l as u64).map(|b| binomial(anchor.len() as u64, b)).sum();
    let budget = 1u128 << f.ground().cap();
    if add_total.saturating_mul(drop_total) > budget {
        return Err(Error::CapExceeded { n, cap: f.ground().cap() });
    }

    let method = MembershipMethod::RestrictedEnumeration;
    let base = f.evaluate(anchor) - x.sum_over(anchor);
    for add_count in 1..k.min(outside.len() + 1) {
        for drop_count in 1..l.min(anchor.len() + 1) {
            for a in outside.combinations(add_count) {
                for b in anchor.combinations(drop_count) {
                    let y = anchor.difference(b).union(a);
                    let lhs = f.evaluate(y) - x.sum_over(y);
                    if lhs > base + TOLERANCE {
                        return Ok(MembershipVerdict::violated(method, y, lhs, base));
                    }
                }
            }
        }
    }
    Ok(MembershipVerdict::member(method))
}

fn binomial(m: u64, j: u64) -> u128 {
    if j > m {
        return 0;
    }
    let j = j.min(m - j);
    let mut result: u128 = 1;
    for i in 0..j {
        result = result * (m - i) as u128 / (i + 1) as u128;
    }
    result
}

fn inner_box<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    kind: InnerBoxKind,
    x: &Point,
) -> Result<MembershipVerdict, Error> {
    let corner = supergradient(f, anchor, kind.supergradient_kind())?;
    let method = MembershipMethod::ClosedForm;
    for j in 0..f.n() {
        if anchor.contains(j) {
            // x(j) ≤ corner(j)
            if x[j] > corner[j] + TOLERANCE {
                return Ok(MembershipVerdict::violated(
                    method,
                    Subset::singleton(j),
                    x[j],
                    corner[j],
                ));
            }
        } else {
            // corner(j) ≤ x(j)
            if corner[j] > x[j] + TOLERANCE {
                return Ok(MembershipVerdict::violated(
                    method,
                    Subset::singleton(j),
                    corner[j],
                    x[j],
                ));
            }
        }
    }
    Ok(MembershipVerdict::member(method))
}

fn inner_conv<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    x: &Point,
) -> Result<MembershipVerdict, Error> {
    let grow = supergradient(f, anchor, SupergradientKind::Grow)?;
    let shrink = supergradient(f, anchor, SupergradientKind::Shrink)?;
    let method = MembershipMethod::LambdaInterval;

    // x is a member iff some λ ∈ [0, 1] satisfies, per coordinate,
    //   j ∈ X:  x(j) ≤ λ·grow(j) + (1−λ)·shrink(j)   (both caps)
    //   j ∉ X:  x(j) ≥ λ·grow(j) + (1−λ)·shrink(j)   (both floors)
    // Each constraint is linear in λ, so the feasible set is an interval.
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    for j in 0..f.n() {
        let coefficient = grow[j] - shrink[j];
        if anchor.contains(j) {
            // λ·coefficient ≥ x(j) − shrink(j) − tol
            let target = x[j] - shrink[j] - TOLERANCE;
            if coefficient == 0.0 {
                if target > 0.0 {
                    return Ok(MembershipVerdict::violated(
                        method,
                        Subset::singleton(j),
                        x[j],
                        shrink[j],
                    ));
                }
            } else if coefficient > 0.0 {
                lo = lo.max(target / coefficient);
            } else {
                hi = hi.min(target / coefficient);
            }
        } else {
            // λ·coefficient ≤ x(j) − shrink(j) + tol
            let target = x[j] - shrink[j] + TOLERANCE;
            if coefficient == 0.0 {
                if target < 0.0 {
                    return Ok(MembershipVerdict::violated(
                        method,
                        Subset::singleton(j),
                        shrink[j],
                        x[j],
                    ));
                }
            } else if coefficient > 0.0 {
                hi = hi.min(target / coefficient);
            } else {
                lo = lo.max(target / coefficient);
            }
        }
        if lo > hi {
            return Ok(MembershipVerdict::violated(method, Subset::singleton(j), lo, hi));
        }
    }
    Ok(MembershipVerdict::member(method))
}
