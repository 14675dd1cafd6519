//! Seeded generators for zoo instances, points, subsets, and permutations.
//!
//! Everything here is driven by a small splitmix generator so that test
//! suites and experiment sweeps are reproducible bit for bit from a seed,
//! with no platform or dependency drift.

use crate::function::{ConcaveShape, DeclaredFlags, Family, Instance, MatroidKind};
use crate::point::Point;
use crate::set::{GroundSet, Permutation, Subset};

/// SplitMix64: tiny, fast, and stable forever.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range_f64(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform in `lo..=hi`.
    pub fn range_usize(&mut self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

/// The submodular zoo members the random generators draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZooKind {
    Modular,
    Coverage,
    GraphCut,
    ConcaveSqrt,
    ConcaveLog1p,
    ConcaveCapped,
    MatroidUniform,
    MatroidPartition,
}

pub const ALL_KINDS: [ZooKind; 8] = [
    ZooKind::Modular,
    ZooKind::Coverage,
    ZooKind::GraphCut,
    ZooKind::ConcaveSqrt,
    ZooKind::ConcaveLog1p,
    ZooKind::ConcaveCapped,
    ZooKind::MatroidUniform,
    ZooKind::MatroidPartition,
];

/// A random normalized instance of the given kind. All weights are drawn so
/// the declared flags (computed from the family) are genuinely satisfied.
pub fn random_instance(kind: ZooKind, n: usize, rng: &mut SplitMix64) -> Instance {
    let family = match kind {
        ZooKind::Modular => Family::Modular {
            weights: (0..n).map(|_| rng.range_f64(-2.0, 2.0)).collect(),
        },
        ZooKind::Coverage => {
            let items = (n + rng.range_usize(1, n.max(2))).min(60);
            let covers = (0..n)
                .map(|_| (0..items).filter(|_| rng.chance(0.4)).collect())
                .collect();
            Family::Coverage { covers }
        }
        ZooKind::GraphCut => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.chance(0.5) {
                        edges.push((u, v, rng.range_f64(0.25, 2.0)));
                    }
                }
            }
            Family::GraphCut { edges }
        }
        ZooKind::ConcaveSqrt => Family::ConcaveOverModular {
            shape: ConcaveShape::Sqrt,
            weights: (0..n).map(|_| rng.range_f64(0.0, 2.0)).collect(),
        },
        ZooKind::ConcaveLog1p => Family::ConcaveOverModular {
            shape: ConcaveShape::Log1p,
            weights: (0..n).map(|_| rng.range_f64(0.0, 2.0)).collect(),
        },
        ZooKind::ConcaveCapped => Family::ConcaveOverModular {
            shape: ConcaveShape::CappedLinear { budget: rng.range_f64(0.5, n as f64) },
            weights: (0..n).map(|_| rng.range_f64(0.0, 2.0)).collect(),
        },
        ZooKind::MatroidUniform => Family::MatroidRank {
            matroid: MatroidKind::Uniform { rank: rng.range_usize(1, n) },
        },
        ZooKind::MatroidPartition => {
            let mut elements: Vec<usize> = (0..n).collect();
            // Fisher-Yates
            for i in (1..n).rev() {
                elements.swap(i, rng.range_usize(0, i));
            }
            let block_count = rng.range_usize(1, n.min(3));
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); block_count];
            for (i, e) in elements.into_iter().enumerate() {
                blocks[i % block_count].push(e);
            }
            let capacities = blocks.iter().map(|b| rng.range_usize(1, b.len())).collect();
            Family::MatroidRank {
                matroid: MatroidKind::Partition { blocks, capacities },
            }
        }
    };
    let flags = DeclaredFlags::for_family(&family, 0.0);
    let ground = GroundSet::new(n).expect("generator sizes are valid");
    Instance::new(ground, family, 0.0, flags).expect("generated parameters are valid")
}

/// A random normalized submodular instance drawn uniformly from the zoo.
pub fn random_submodular(n: usize, rng: &mut SplitMix64) -> Instance {
    let kind = ALL_KINDS[rng.range_usize(0, ALL_KINDS.len() - 1)];
    random_instance(kind, n, rng)
}

/// Like [`random_submodular`] but guaranteed nonnegative (modular weights
/// are redrawn as nonnegative), for maximization-guarantee experiments.
pub fn random_nonnegative_submodular(n: usize, rng: &mut SplitMix64) -> Instance {
    let kind = ALL_KINDS[rng.range_usize(0, ALL_KINDS.len() - 1)];
    if kind == ZooKind::Modular {
        let weights = (0..n).map(|_| rng.range_f64(0.0, 2.0)).collect();
        let family = Family::Modular { weights };
        let flags = DeclaredFlags::for_family(&family, 0.0);
        let ground = GroundSet::new(n).expect("generator sizes are valid");
        return Instance::new(ground, family, 0.0, flags).expect("valid parameters");
    }
    random_instance(kind, n, rng)
}

/// A random instance from the subclasses whose superdifferential collapses
/// to the distance-two outer bound: matroid ranks and capped cardinality.
pub fn random_m_natural(n: usize, rng: &mut SplitMix64) -> Instance {
    match rng.range_usize(0, 2) {
        0 => random_instance(ZooKind::MatroidUniform, n, rng),
        1 => random_instance(ZooKind::MatroidPartition, n, rng),
        _ => {
            // capped cardinality: min(|S|, budget)
            let family = Family::ConcaveOverModular {
                shape: ConcaveShape::CappedLinear {
                    budget: rng.range_f64(0.5, n as f64 - 0.25),
                },
                weights: vec![1.0; n],
            };
            let flags = DeclaredFlags::for_family(&family, 0.0);
            let ground = GroundSet::new(n).expect("generator sizes are valid");
            Instance::new(ground, family, 0.0, flags).expect("valid parameters")
        }
    }
}

pub fn random_point(n: usize, lo: f64, hi: f64, rng: &mut SplitMix64) -> Point {
    Point::new((0..n).map(|_| rng.range_f64(lo, hi)).collect())
}

pub fn random_subset(n: usize, rng: &mut SplitMix64) -> Subset {
    Subset::from_mask(rng.next_u64() & Subset::full(n).mask())
}

pub fn random_permutation(n: usize, rng: &mut SplitMix64) -> Permutation {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.range_usize(0, i));
    }
    Permutation::new(order).expect("shuffle of 0..n is a permutation")
}

/// A random permutation that places the anchor's elements in the leading
/// positions, as the subdifferential chain construction requires.
pub fn random_consistent_permutation(
    anchor: Subset,
    n: usize,
    rng: &mut SplitMix64,
) -> Permutation {
    let mut inside: Vec<usize> = anchor.indices().collect();
    let mut outside: Vec<usize> = anchor.complement(n).indices().collect();
    for i in (1..inside.len()).rev() {
        inside.swap(i, rng.range_usize(0, i));
    }
    for i in (1..outside.len()).rev() {
        outside.swap(i, rng.range_usize(0, i));
    }
    inside.extend(outside);
    Permutation::new(inside).expect("concatenated shuffles form a permutation")
}
