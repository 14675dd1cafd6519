//! Greedy extreme points of the lower polyhedron and the subdifferential.

use crate::error::Error;
use crate::function::{ensure_normalized, SetFunction};
use crate::point::Point;
use crate::set::{Permutation, Subset};
use crate::TOLERANCE;

/// The extreme point of the base polytope defined by the chain of `sigma`:
/// `h(sigma(i)) = f(S_i) − f(S_{i−1})`. For submodular normalized `f` the
/// result is tight along the chain (`h(S_i) = f(S_i)`) and lies in the base
/// polytope.
pub fn greedy_vertex<F: SetFunction + ?Sized>(
    f: &F,
    sigma: &Permutation,
) -> Result<Point, Error> {
    subdiff_vertex(f, Subset::EMPTY, sigma)
}

/// The extreme point of the subdifferential at `anchor` defined by a chain
/// that visits the anchor's elements first. With `anchor = ∅` this is
/// exactly [`greedy_vertex`], since the subdifferential at the empty set is
/// the lower polyhedron.
pub fn subdiff_vertex<F: SetFunction + ?Sized>(
    f: &F,
    anchor: Subset,
    sigma: &Permutation,
) -> Result<Point, Error> {
    let ground = f.ground();
    ground.check_subset(anchor)?;
    if sigma.len() != ground.len() {
        return Err(Error::PermutationLength { expected: ground.len(), got: sigma.len() });
    }
    sigma.consistent_with(anchor)?;
    ensure_normalized(f)?;

    let mut coords = vec![0.0; ground.len()];
    let mut chain = Subset::EMPTY;
    let mut previous = f.evaluate(chain);
    for &element in sigma.order() {
        chain = chain.with(element);
        let value = f.evaluate(chain);
        coords[element] = value - previous;
        previous = value;
    }
    Ok(Point::new(coords))
}

/// Whether `max_X f(X) > 0`, decided through the singletons alone: for a
/// normalized submodular function the maximum is positive exactly when some
/// `f({i})` is.
pub fn positive_max_exists<F: SetFunction + ?Sized>(f: &F) -> Result<bool, Error> {
    ensure_normalized(f)?;
    Ok((0..f.n()).any(|j| f.evaluate(Subset::singleton(j)) > TOLERANCE))
}
