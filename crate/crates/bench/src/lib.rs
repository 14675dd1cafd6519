//! Shared fixtures for the benchmark targets: deterministic instances at
//! sizes where the enumeration/polynomial split actually shows.

use subpoly::random::{random_instance, SplitMix64, ZooKind};
use subpoly::{Instance, Point, SetFunction, Subset, SupergradientKind};

/// A coverage instance at size `n` with a raised cap so `2^n` sweeps run.
pub fn coverage(n: usize) -> Instance {
    let mut rng = SplitMix64::new(0xC0FFEE);
    raise_cap(random_instance(ZooKind::Coverage, n, &mut rng), n)
}

/// A weighted cut instance at size `n` with a raised cap.
pub fn cut(n: usize) -> Instance {
    let mut rng = SplitMix64::new(0xBEEF);
    raise_cap(random_instance(ZooKind::GraphCut, n, &mut rng), n)
}

fn raise_cap(instance: Instance, n: usize) -> Instance {
    let cap = n.clamp(subpoly::DEFAULT_EXHAUSTIVE_CAP, subpoly::MAX_EXHAUSTIVE_CAP);
    instance.with_cap(cap).unwrap()
}

/// A mid-sized anchor: the even elements.
pub fn even_anchor(n: usize) -> Subset {
    Subset::from_indices((0..n).step_by(2))
}

/// A point just inside the superdifferential at the anchor.
pub fn interior_point(f: &Instance, anchor: Subset) -> Point {
    let g = subpoly::supergradient(f, anchor, SupergradientKind::Grow).unwrap();
    Point::new(
        (0..f.n())
            .map(|j| if anchor.contains(j) { g.get(j) - 0.01 } else { g.get(j) + 0.01 })
            .collect(),
    )
}
