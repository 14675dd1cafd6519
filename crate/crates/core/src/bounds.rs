//! Closed-form supergradients, tight modular upper/lower bounds built from
//! them, and the two non-modular bounds used to certify the supergradients.
//!
//! For a submodular normalized `f` and anchor `X`, the three vectors
//!
//! ```text
//! grow:   g(j) = f(j | X−j) for j ∈ X,  f(j)     otherwise
//! shrink: g(j) = f(j | V−j) for j ∈ X,  f(j | X) otherwise
//! bar:    g(j) = f(j | V−j) for j ∈ X,  f(j)     otherwise
//! ```
//!
//! are supergradients at `X`: each induces a modular function that upper
//! bounds `f` everywhere and is tight at `X`. The `tilde` vector (`f(j | X−j)`
//! inside, `f(j | X)` outside) is the shared corner of the two distance-one
//! outer bounds and in general is neither a subgradient nor a supergradient.

use serde::Serialize;

use crate::error::Error;
use crate::function::{ensure_normalized, SetFunction};
use crate::point::Point;
use crate::polyhedra::subdiff_vertex;
use crate::set::{Permutation, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SupergradientKind {
    Grow,
    Shrink,
    Bar,
    Tilde,
}

/// The closed-form vector of the given kind at `anchor`. Requires a
/// normalized `f`; submodularity is what makes grow/shrink/bar actual
/// supergradients and is trusted, not checked.
pub fn supergradient<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    kind: SupergradientKind,
) -> Result<Point, Error> {
    let ground = f.ground();
    ground.check_subset(anchor)?;
    ensure_normalized(f)?;
    let n = ground.len();
    let full = ground.full_subset();
    let coords = (0..n)
        .map(|j| {
            let inside = anchor.contains(j);
            match kind {
                SupergradientKind::Grow => {
                    if inside {
                        f.gain(j, anchor.without(j))
                    } else {
                        f.evaluate(Subset::singleton(j))
                    }
                }
                SupergradientKind::Shrink => {
                    if inside {
                        f.gain(j, full.without(j))
                    } else {
                        f.gain(j, anchor)
                    }
                }
                SupergradientKind::Bar => {
                    if inside {
                        f.gain(j, full.without(j))
                    } else {
                        f.evaluate(Subset::singleton(j))
                    }
                }
                SupergradientKind::Tilde => {
                    if inside {
                        f.gain(j, anchor.without(j))
                    } else {
                        f.gain(j, anchor)
                    }
                }
            }
        })
        .collect();
    Ok(Point::new(coords))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundDirection {
    Upper,
    Lower,
}

/// A modular bound `m(Y) = f(X) + g(Y) − g(X)` anchored at `X`, where `g` is
/// a supergradient (upper) or subgradient (lower). Tight at the anchor by
/// construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModularBound {
    base: Point,
    anchor: Subset,
    anchor_value: f64,
    direction: BoundDirection,
}

impl ModularBound {
    pub fn evaluate(&self, y: Subset) -> f64 {
        self.anchor_value + self.base.sum_over(y) - self.base.sum_over(self.anchor)
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn anchor(&self) -> Subset {
        self.anchor
    }

    pub fn anchor_value(&self) -> f64 {
        self.anchor_value
    }

    pub fn direction(&self) -> BoundDirection {
        self.direction
    }
}

/// Modular upper bound from a grow/shrink/bar supergradient; `m(Y) ≥ f(Y)`
/// for every `Y` and `m(X) = f(X)`. The tilde vector is rejected because it
/// is not a supergradient.
pub fn modular_upper_bound<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    kind: SupergradientKind,
) -> Result<ModularBound, Error> {
    if kind == SupergradientKind::Tilde {
        return Err(Error::NotASupergradient);
    }
    let base = supergradient(f, anchor, kind)?;
    Ok(ModularBound {
        base,
        anchor,
        anchor_value: f.evaluate(anchor),
        direction: BoundDirection::Upper,
    })
}

/// Modular lower bound from the extreme subgradient of the chain `sigma`
/// (which must place the anchor's elements first). Because the base is an
/// extreme subgradient, `f(X) − h(X) = 0` and the bound reduces to the
/// normalized modular function `h(Y)`.
pub fn modular_lower_bound<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    sigma: &Permutation,
) -> Result<ModularBound, Error> {
    let base = subdiff_vertex(f, anchor, sigma)?;
    Ok(ModularBound {
        base,
        anchor,
        anchor_value: f.evaluate(anchor),
        direction: BoundDirection::Lower,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NemhauserVariant {
    One,
    Two,
}

/// One of the two classical non-modular upper bounds
///
/// ```text
/// one: f(Y) ≤ f(X) − Σ_{j∈X\Y} f(j | X−j)     + Σ_{j∈Y\X} f(j | X∩Y)
/// two: f(Y) ≤ f(X) − Σ_{j∈X\Y} f(j | X∪Y−j)   + Σ_{j∈Y\X} f(j | X)
/// ```
///
/// Both are tight at `X` and dominate the corresponding loosened modular
/// bound (grow for `one`, shrink for `two`). Exposed as an evaluator rather
/// than a `Point` because neither bound is modular.
#[derive(Debug, Clone, Copy)]
pub struct NemhauserBound<'a, F: SetFunction + ?Sized> {
    f: &'a F,
    anchor: Subset,
    variant: NemhauserVariant,
}

impl<F: SetFunction + ?Sized> NemhauserBound<'_, F> {
    pub fn evaluate(&self, y: Subset) -> f64 {
        let x = self.anchor;
        let mut value = self.f.evaluate(x);
        match self.variant {
            NemhauserVariant::One => {
                for j in x.difference(y).indices() {
                    value -= self.f.gain(j, x.without(j));
                }
                let meet = x.intersection(y);
                for j in y.difference(x).indices() {
                    value += self.f.gain(j, meet);
                }
            }
            NemhauserVariant::Two => {
                let join = x.union(y);
                for j in x.difference(y).indices() {
                    value -= self.f.gain(j, join.without(j));
                }
                for j in y.difference(x).indices() {
                    value += self.f.gain(j, x);
                }
            }
        }
        value
    }

    pub fn anchor(&self) -> Subset {
        self.anchor
    }

    pub fn variant(&self) -> NemhauserVariant {
        self.variant
    }
}

pub fn nemhauser_bound<'a, F: SetFunction + ?Sized>(
    f: &'a F,
    anchor: Subset,
    variant: NemhauserVariant,
) -> Result<NemhauserBound<'a, F>, Error> {
    f.ground().check_subset(anchor)?;
    Ok(NemhauserBound { f, anchor, variant })
}
