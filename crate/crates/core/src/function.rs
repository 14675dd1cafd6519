//! Set functions: the evaluation contract, a closed zoo of concrete
//! families, submodular duals, and normalization.
//!
//! Every family evaluates to `0` on the empty set before the offset is
//! applied, so `f(∅) = offset` throughout.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::set::{GroundSet, Subset};
use crate::TOLERANCE;

/// The evaluation contract: a deterministic, pure set function over a fixed
/// ground set. Evaluation is read-only, so any implementor can be shared
/// across threads freely.
pub trait SetFunction {
    fn ground(&self) -> &GroundSet;

    /// `f(S)`. Panics if `S` has bits outside the ground set.
    fn evaluate(&self, s: Subset) -> f64;

    fn n(&self) -> usize {
        self.ground().len()
    }

    /// Marginal gain `f(j | S) = f(S ∪ {j}) − f(S)`; zero when `j ∈ S`.
    fn gain(&self, element: usize, s: Subset) -> f64 {
        assert!(element < self.n(), "element {element} out of range");
        if s.contains(element) {
            return 0.0;
        }
        self.evaluate(s.with(element)) - self.evaluate(s)
    }
}

impl<F: SetFunction + ?Sized> SetFunction for &F {
    fn ground(&self) -> &GroundSet {
        (**self).ground()
    }

    fn evaluate(&self, s: Subset) -> f64 {
        (**self).evaluate(s)
    }

    fn gain(&self, element: usize, s: Subset) -> f64 {
        (**self).gain(element, s)
    }
}

/// `true` when `|f(∅)| ≤` the global tolerance.
pub fn is_normalized<F: SetFunction + ?Sized>(f: &F) -> bool {
    f.evaluate(Subset::EMPTY).abs() <= TOLERANCE
}

pub(crate) fn ensure_normalized<F: SetFunction + ?Sized>(f: &F) -> Result<(), Error> {
    let value_at_empty = f.evaluate(Subset::EMPTY);
    if value_at_empty.abs() <= TOLERANCE {
        Ok(())
    } else {
        Err(Error::NotNormalized { value_at_empty })
    }
}

/// Concave shapes available to [`Family::ConcaveOverModular`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConcaveShape {
    Sqrt,
    Log1p,
    /// `t ↦ min(t, budget)`; with unit weights this is the capped-cardinality
    /// function `min(|S|, budget)`.
    CappedLinear { budget: f64 },
}

impl ConcaveShape {
    fn apply(self, t: f64) -> f64 {
        match self {
            ConcaveShape::Sqrt => t.sqrt(),
            ConcaveShape::Log1p => t.ln_1p(),
            ConcaveShape::CappedLinear { budget } => t.min(budget),
        }
    }
}

/// Matroids whose rank functions the zoo exposes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatroidKind {
    Uniform { rank: usize },
    Partition { blocks: Vec<Vec<usize>>, capacities: Vec<usize> },
}

/// The closed function zoo. `CardinalityPower` with exponent ≥ 2 is strictly
/// supermodular; it exists so that validators and instance files have a
/// built-in negative case to exercise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum Family {
    Modular { weights: Vec<f64> },
    Coverage { covers: Vec<Vec<usize>> },
    GraphCut { edges: Vec<(usize, usize, f64)> },
    ConcaveOverModular { shape: ConcaveShape, weights: Vec<f64> },
    MatroidRank { matroid: MatroidKind },
    CardinalityPower { exponent: u32 },
}

/// Properties the instance claims to satisfy. Claims are promises, not
/// proofs: [`validate`](crate::validate::validate) checks the first three
/// exhaustively on small ground sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredFlags {
    pub submodular: bool,
    pub monotone: bool,
    pub normalized: bool,
    pub m_natural_concave: bool,
}

impl DeclaredFlags {
    /// The flags a family actually satisfies; fixtures and generators use
    /// this so that declarations survive validation.
    pub fn for_family(family: &Family, offset: f64) -> Self {
        let normalized = offset == 0.0;
        match family {
            Family::Modular { weights } => DeclaredFlags {
                submodular: true,
                monotone: weights.iter().all(|&w| w >= 0.0),
                normalized,
                m_natural_concave: true,
            },
            Family::Coverage { .. } => DeclaredFlags {
                submodular: true,
                monotone: true,
                normalized,
                m_natural_concave: false,
            },
            Family::GraphCut { edges } => DeclaredFlags {
                submodular: edges.iter().all(|&(_, _, w)| w >= 0.0),
                monotone: edges.iter().all(|&(_, _, w)| w == 0.0),
                normalized,
                m_natural_concave: false,
            },
            Family::ConcaveOverModular { weights, .. } => DeclaredFlags {
                submodular: true,
                monotone: true,
                normalized,
                // concave over cardinality, i.e. unit weights
                m_natural_concave: weights.iter().all(|&w| w == 1.0),
            },
            Family::MatroidRank { .. } => DeclaredFlags {
                submodular: true,
                monotone: true,
                normalized,
                m_natural_concave: true,
            },
            Family::CardinalityPower { exponent } => DeclaredFlags {
                submodular: *exponent <= 1,
                monotone: true,
                normalized,
                m_natural_concave: *exponent <= 1,
            },
        }
    }
}

// Evaluation form of a family, precomputed once at construction.
#[derive(Debug, Clone, PartialEq)]
enum Kernel {
    Modular(Vec<f64>),
    Coverage(Vec<u64>),
    GraphCut(Vec<(usize, usize, f64)>),
    Concave(ConcaveShape, Vec<f64>),
    MatroidUniform(usize),
    MatroidPartition { masks: Vec<u64>, caps: Vec<usize> },
    CardPow(i32),
}

/// A concrete zoo member: ground set, family, offset, and declared flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    ground: GroundSet,
    family: Family,
    offset: f64,
    flags: DeclaredFlags,
    kernel: Kernel,
}

impl Instance {
    pub fn new(
        ground: GroundSet,
        family: Family,
        offset: f64,
        flags: DeclaredFlags,
    ) -> Result<Self, Error> {
        if !offset.is_finite() {
            return Err(Error::InvalidFamily("offset must be finite".into()));
        }
        let kernel = build_kernel(&ground, &family)?;
        Ok(Instance { ground, family, offset, flags, kernel })
    }

    /// Modular `f(S) = Σ_{j∈S} w_j`; the ground-set size is the weight count.
    pub fn modular(weights: Vec<f64>) -> Result<Self, Error> {
        let ground = GroundSet::new(weights.len())?;
        let family = Family::Modular { weights };
        let flags = DeclaredFlags::for_family(&family, 0.0);
        Instance::new(ground, family, 0.0, flags)
    }

    /// Unweighted coverage `f(S) = |⋃_{j∈S} covers[j]|`.
    pub fn coverage(n: usize, covers: Vec<Vec<usize>>) -> Result<Self, Error> {
        let ground = GroundSet::new(n)?;
        let family = Family::Coverage { covers };
        let flags = DeclaredFlags::for_family(&family, 0.0);
        Instance::new(ground, family, 0.0, flags)
    }

    /// Weighted cut `f(S) = Σ_{(u,v,w): |{u,v} ∩ S| = 1} w`.
    pub fn graph_cut(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self, Error> {
        let ground = GroundSet::new(n)?;
        let family = Family::GraphCut { edges };
        let flags = DeclaredFlags::for_family(&family, 0.0);
        Instance::new(ground, family, 0.0, flags)
    }

    /// `f(S) = shape(Σ_{j∈S} w_j)` with nonnegative weights.
    pub fn concave_over_modular(shape: ConcaveShape, weights: Vec<f64>) -> Result<Self, Error> {
        let ground = GroundSet::new(weights.len())?;
        let family = Family::ConcaveOverModular { shape, weights };
        let flags = DeclaredFlags::for_family(&family, 0.0);
        Instance::new(ground, family, 0.0, flags)
    }

    /// Uniform matroid rank `f(S) = min(|S|, rank)`.
    pub fn matroid_uniform(n: usize, rank: usize) -> Result<Self, Error> {
        let ground = GroundSet::new(n)?;
        let family = Family::MatroidRank { matroid: MatroidKind::Uniform { rank } };
        let flags = DeclaredFlags::for_family(&family, 0.0);
        Instance::new(ground, family, 0.0, flags)
    }

    /// Partition matroid rank `f(S) = Σ_i min(|S ∩ B_i|, c_i)`; the blocks
    /// must partition the ground set.
    pub fn matroid_partition(
        n: usize,
        blocks: Vec<Vec<usize>>,
        capacities: Vec<usize>,
    ) -> Result<Self, Error> {
        let ground = GroundSet::new(n)?;
        let family =
            Family::MatroidRank { matroid: MatroidKind::Partition { blocks, capacities } };
        let flags = DeclaredFlags::for_family(&family, 0.0);
        Instance::new(ground, family, 0.0, flags)
    }

    /// `f(S) = |S|^exponent`; strictly supermodular for exponent ≥ 2.
    pub fn cardinality_power(n: usize, exponent: u32) -> Result<Self, Error> {
        let ground = GroundSet::new(n)?;
        let family = Family::CardinalityPower { exponent };
        let flags = DeclaredFlags::for_family(&family, 0.0);
        Instance::new(ground, family, 0.0, flags)
    }

    /// Same instance shifted by a constant; flags are recomputed.
    pub fn with_offset(mut self, offset: f64) -> Result<Self, Error> {
        if !offset.is_finite() {
            return Err(Error::InvalidFamily("offset must be finite".into()));
        }
        self.offset = offset;
        self.flags = DeclaredFlags::for_family(&self.family, offset);
        Ok(self)
    }

    /// Override the declared flags (used to build instances whose claims are
    /// deliberately wrong).
    pub fn with_flags(mut self, flags: DeclaredFlags) -> Self {
        self.flags = flags;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Result<Self, Error> {
        self.ground.set_cap(cap)?;
        Ok(self)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn flags(&self) -> DeclaredFlags {
        self.flags
    }
}

fn build_kernel(ground: &GroundSet, family: &Family) -> Result<Kernel, Error> {
    let n = ground.len();
    let check_weights = |weights: &[f64], nonnegative: bool| -> Result<(), Error> {
        if weights.len() != n {
            return Err(Error::InvalidFamily(format!(
                "{} weights for {} elements",
                weights.len(),
                n
            )));
        }
        for &w in weights {
            if !w.is_finite() {
                return Err(Error::InvalidFamily("weights must be finite".into()));
            }
            if nonnegative && w < 0.0 {
                return Err(Error::InvalidFamily(format!("negative weight {w}")));
            }
        }
        Ok(())
    };
    match family {
        Family::Modular { weights } => {
            check_weights(weights, false)?;
            Ok(Kernel::Modular(weights.clone()))
        }
        Family::Coverage { covers } => {
            if covers.len() != n {
                return Err(Error::InvalidFamily(format!(
                    "{} cover lists for {} elements",
                    covers.len(),
                    n
                )));
            }
            let mut masks = Vec::with_capacity(n);
            for items in covers {
                let mut mask = 0u64;
                for &item in items {
                    if item > 63 {
                        return Err(Error::InvalidFamily(format!(
                            "covered item {item} exceeds the supported universe of 64 items"
                        )));
                    }
                    mask |= 1 << item;
                }
                masks.push(mask);
            }
            Ok(Kernel::Coverage(masks))
        }
        Family::GraphCut { edges } => {
            for &(u, v, w) in edges {
                if u >= n || v >= n {
                    return Err(Error::InvalidFamily(format!("edge ({u}, {v}) out of range")));
                }
                if u == v {
                    return Err(Error::InvalidFamily(format!("self-loop at vertex {u}")));
                }
                if !w.is_finite() {
                    return Err(Error::InvalidFamily("edge weights must be finite".into()));
                }
            }
            Ok(Kernel::GraphCut(edges.clone()))
        }
        Family::ConcaveOverModular { shape, weights } => {
            check_weights(weights, true)?;
            if let ConcaveShape::CappedLinear { budget } = shape {
                if !budget.is_finite() || *budget < 0.0 {
                    return Err(Error::InvalidFamily(format!("invalid budget {budget}")));
                }
            }
            Ok(Kernel::Concave(*shape, weights.clone()))
        }
        Family::MatroidRank { matroid } => match matroid {
            MatroidKind::Uniform { rank } => {
                if *rank > n {
                    return Err(Error::InvalidFamily(format!(
                        "uniform rank {rank} exceeds ground set of {n}"
                    )));
                }
                Ok(Kernel::MatroidUniform(*rank))
            }
            MatroidKind::Partition { blocks, capacities } => {
                if blocks.len() != capacities.len() {
                    return Err(Error::InvalidFamily(format!(
                        "{} blocks but {} capacities",
                        blocks.len(),
                        capacities.len()
                    )));
                }
                let mut seen = 0u64;
                let mut masks = Vec::with_capacity(blocks.len());
                for block in blocks {
                    let mut mask = 0u64;
                    for &e in block {
                        if e >= n {
                            return Err(Error::InvalidFamily(format!(
                                "block element {e} out of range"
                            )));
                        }
                        if seen >> e & 1 == 1 {
                            return Err(Error::InvalidFamily(format!(
                                "element {e} appears in two blocks"
                            )));
                        }
                        seen |= 1 << e;
                        mask |= 1 << e;
                    }
                    masks.push(mask);
                }
                if seen != Subset::full(n).mask() {
                    return Err(Error::InvalidFamily(
                        "blocks do not cover the ground set".into(),
                    ));
                }
                Ok(Kernel::MatroidPartition { masks, caps: capacities.clone() })
            }
        },
        Family::CardinalityPower { exponent } => {
            if *exponent == 0 {
                return Err(Error::InvalidFamily("exponent must be at least 1".into()));
            }
            Ok(Kernel::CardPow(*exponent as i32))
        }
    }
}

impl SetFunction for Instance {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn evaluate(&self, s: Subset) -> f64 {
        assert!(
            self.ground.contains(s),
            "subset {s} out of range for a ground set of {} elements",
            self.ground.len()
        );
        let raw = match &self.kernel {
            Kernel::Modular(w) => s.indices().map(|j| w[j]).sum(),
            Kernel::Coverage(masks) => {
                let mut union = 0u64;
                for j in s.indices() {
                    union |= masks[j];
                }
                union.count_ones() as f64
            }
            Kernel::GraphCut(edges) => edges
                .iter()
                .filter(|&&(u, v, _)| s.contains(u) != s.contains(v))
                .map(|&(_, _, w)| w)
                .sum(),
            Kernel::Concave(shape, w) => shape.apply(s.indices().map(|j| w[j]).sum()),
            Kernel::MatroidUniform(rank) => s.len().min(*rank) as f64,
            Kernel::MatroidPartition { masks, caps } => masks
                .iter()
                .zip(caps)
                .map(|(m, &c)| ((s.mask() & m).count_ones() as usize).min(c) as f64)
                .sum(),
            Kernel::CardPow(p) => (s.len() as f64).powi(*p),
        };
        raw + self.offset
    }
}

/// The submodular dual `f#(X) = f(V) − f(V \ X)`; supermodular whenever `f`
/// is submodular. For normalized `f`, `dual(dual(f))` equals `f` pointwise.
#[derive(Debug, Clone)]
pub struct Dual<F: SetFunction> {
    inner: F,
    total: f64,
}

pub fn dual<F: SetFunction>(f: F) -> Dual<F> {
    let total = f.evaluate(f.ground().full_subset());
    Dual { inner: f, total }
}

impl<F: SetFunction> SetFunction for Dual<F> {
    fn ground(&self) -> &GroundSet {
        self.inner.ground()
    }

    fn evaluate(&self, s: Subset) -> f64 {
        let n = self.inner.n();
        self.total - self.inner.evaluate(s.complement(n))
    }
}

/// `f'(S) = f(S) − f(∅)`, so `f'(∅) = 0`.
#[derive(Debug, Clone)]
pub struct Normalized<F: SetFunction> {
    inner: F,
    at_empty: f64,
}

pub fn normalize<F: SetFunction>(f: F) -> Normalized<F> {
    let at_empty = f.evaluate(Subset::EMPTY);
    Normalized { inner: f, at_empty }
}

impl<F: SetFunction> SetFunction for Normalized<F> {
    fn ground(&self) -> &GroundSet {
        self.inner.ground()
    }

    fn evaluate(&self, s: Subset) -> f64 {
        self.inner.evaluate(s) - self.at_empty
    }
}
