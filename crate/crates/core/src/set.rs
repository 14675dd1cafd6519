//! Ground sets, bit-indexed subsets, and permutation chains.
//!
//! A [`Subset`] is a plain `u64` mask; element `j` of the ground set
//! `V = {0, 1, ..., n-1}` corresponds to bit `j`. All enumeration helpers
//! yield subsets in a deterministic order so that witnesses and traces are
//! reproducible.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Largest ground set representable by a `u64` subset mask.
pub const MAX_ELEMENTS: usize = 63;

/// Default ceiling for operations that enumerate all `2^n` subsets.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

/// Hard ceiling for the exhaustive cap; sweeps beyond this are not desk scale.
pub const MAX_EXHAUSTIVE_CAP: usize = 30;

/// The universe `V = {0, 1, ..., n-1}` together with the enumeration cap that
/// guards every `2^n` sweep on instances over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
    cap: usize,
}

impl GroundSet {
    /// Ground set of `n` elements with the default exhaustive cap.
    pub fn new(n: usize) -> Result<Self, Error> {
        Self::with_cap(n, DEFAULT_EXHAUSTIVE_CAP)
    }

    /// Ground set with an explicit exhaustive cap (at most [`MAX_EXHAUSTIVE_CAP`]).
    pub fn with_cap(n: usize, cap: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge { n, max: MAX_ELEMENTS });
        }
        if cap > MAX_EXHAUSTIVE_CAP {
            return Err(Error::CapTooLarge { cap, max: MAX_EXHAUSTIVE_CAP });
        }
        Ok(GroundSet { n, labels: None, cap })
    }

    /// Attach display labels, one per element.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, Error> {
        if labels.len() != self.n {
            return Err(Error::LabelsLength { expected: self.n, got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// A ground set always has at least one element.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn set_cap(&mut self, cap: usize) -> Result<(), Error> {
        if cap > MAX_EXHAUSTIVE_CAP {
            return Err(Error::CapTooLarge { cap, max: MAX_EXHAUSTIVE_CAP });
        }
        self.cap = cap;
        Ok(())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The full set `V`.
    pub fn full_subset(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn complement(&self, s: Subset) -> Subset {
        s.complement(self.n)
    }

    /// Build a subset from element indices, checking every index.
    pub fn subset(&self, indices: &[usize]) -> Result<Subset, Error> {
        let mut mask = 0u64;
        for &i in indices {
            self.check_element(i)?;
            mask |= 1 << i;
        }
        Ok(Subset(mask))
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.0 < (1u64 << self.n)
    }

    pub fn check_subset(&self, s: Subset) -> Result<(), Error> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange { mask: s.0, n: self.n })
        }
    }

    pub fn check_element(&self, index: usize) -> Result<(), Error> {
        if index < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, n: self.n })
        }
    }

    /// Guard for operations that sweep all `2^n` subsets.
    pub fn ensure_enumerable(&self) -> Result<(), Error> {
        if self.n > self.cap {
            Err(Error::CapExceeded { n: self.n, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

// The cap is runtime configuration, not instance data: files carry only
// `n` and the labels.
#[derive(Serialize, Deserialize)]
struct GroundSetRepr {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Serialize for GroundSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroundSetRepr { n: self.n, labels: self.labels.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GroundSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GroundSetRepr::deserialize(deserializer)?;
        let ground = GroundSet::new(repr.n).map_err(D::Error::custom)?;
        match repr.labels {
            Some(labels) => ground.with_labels(labels).map_err(D::Error::custom),
            None => Ok(ground),
        }
    }
}

/// A subset of the ground set, stored as a bit mask.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u64) -> Self {
        Subset(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn singleton(element: usize) -> Self {
        assert!(element <= MAX_ELEMENTS, "element {element} does not fit in a subset mask");
        Subset(1 << element)
    }

    /// The full set over `n` elements.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set of {n} elements does not fit in a subset mask");
        Subset((1u64 << n) - 1)
    }

    /// Build from indices without a ground-set check; see [`GroundSet::subset`]
    /// for the checked constructor.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut mask = 0u64;
        for i in indices {
            assert!(i <= MAX_ELEMENTS, "element {i} does not fit in a subset mask");
            mask |= 1 << i;
        }
        Subset(mask)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: usize) -> bool {
        element <= MAX_ELEMENTS && self.0 >> element & 1 == 1
    }

    pub fn with(self, element: usize) -> Self {
        debug_assert!(element <= MAX_ELEMENTS);
        Subset(self.0 | 1 << element)
    }

    pub fn without(self, element: usize) -> Self {
        debug_assert!(element <= MAX_ELEMENTS);
        Subset(self.0 & !(1 << element))
    }

    pub fn toggled(self, element: usize) -> Self {
        debug_assert!(element <= MAX_ELEMENTS);
        Subset(self.0 ^ 1 << element)
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn symmetric_difference(self, other: Subset) -> Self {
        Subset(self.0 ^ other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        Subset(Subset::full(n).0 & !self.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Element indices in ascending order.
    pub fn indices(self) -> Indices {
        Indices(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// All `2^n` subsets of the full ground set, in ascending mask order.
    pub fn all(n: usize) -> SubsetsOf {
        Subset::full(n).subsets()
    }

    /// All subsets of `self`, in ascending mask order.
    pub fn subsets(self) -> SubsetsOf {
        SubsetsOf::new(0, self)
    }

    /// All supersets of `self` within an `n`-element ground set, in ascending
    /// mask order.
    pub fn supersets(self, n: usize) -> SubsetsOf {
        SubsetsOf::new(self.0, self.complement(n))
    }

    /// All `k`-element subsets of `self`, streamed in lexicographic position
    /// order.
    pub fn combinations(self, k: usize) -> Combinations {
        let positions: Vec<usize> = self.indices().collect();
        let exhausted = k > positions.len();
        Combinations { positions, choice: (0..k).collect(), exhausted }
    }

    /// All `k`-element subsets of `self`, collected.
    pub fn k_subsets(self, k: usize) -> Vec<Subset> {
        self.combinations(k).collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, j) in self.indices().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.indices())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        for &i in &indices {
            if i > MAX_ELEMENTS {
                return Err(D::Error::custom(format!(
                    "element {i} does not fit in a subset mask"
                )));
            }
        }
        Ok(Subset::from_indices(indices))
    }
}

/// Ascending iterator over the set bits of a mask.
pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let j = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(j)
        }
    }
}

/// Iterates `base ∪ Z` for every subset `Z` of a free mask, in ascending
/// mask order.
pub struct SubsetsOf {
    base: u64,
    positions: Vec<usize>,
    next: u64,
    count: u64,
}

impl SubsetsOf {
    fn new(base: u64, free: Subset) -> Self {
        let positions: Vec<usize> = free.indices().collect();
        let count = 1u64 << positions.len();
        SubsetsOf { base, positions, next: 0, count }
    }
}

impl Iterator for SubsetsOf {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.next == self.count {
            return None;
        }
        let mut mask = self.base;
        let mut bits = self.next;
        let mut i = 0;
        while bits != 0 {
            if bits & 1 == 1 {
                mask |= 1 << self.positions[i];
            }
            bits >>= 1;
            i += 1;
        }
        self.next += 1;
        Some(Subset(mask))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.count - self.next) as usize;
        (left, Some(left))
    }
}

/// Streaming lexicographic combination enumerator; see
/// [`Subset::combinations`].
pub struct Combinations {
    positions: Vec<usize>,
    choice: Vec<usize>,
    exhausted: bool,
}

impl Iterator for Combinations {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.exhausted {
            return None;
        }
        let out = Subset::from_indices(self.choice.iter().map(|&c| self.positions[c]));
        // advance to the next combination
        let k = self.choice.len();
        let m = self.positions.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.exhausted = true;
                return Some(out);
            }
            i -= 1;
            if self.choice[i] != i + m - k {
                break;
            }
        }
        self.choice[i] += 1;
        for j in i + 1..k {
            self.choice[j] = self.choice[j - 1] + 1;
        }
        Some(out)
    }
}

/// A permutation of the ground set; `order[i]` is the element placed at
/// position `i`. It induces the chain `∅ ⊂ {order[0]} ⊂ {order[0], order[1]}
/// ⊂ ... ⊂ V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    order: Vec<usize>,
}

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self, Error> {
        let n = order.len();
        if n == 0 || n > MAX_ELEMENTS {
            return Err(Error::PermutationLength { expected: 1, got: n });
        }
        let mut seen = 0u64;
        for &e in &order {
            if e >= n || seen >> e & 1 == 1 {
                return Err(Error::NotAPermutation { element: e });
            }
            seen |= 1 << e;
        }
        Ok(Permutation { order })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { order: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn at(&self, position: usize) -> usize {
        self.order[position]
    }

    /// The chain prefix `S_i = {order[0], ..., order[i-1]}`.
    pub fn prefix(&self, i: usize) -> Subset {
        Subset::from_indices(self.order[..i].iter().copied())
    }

    /// Checks the anchor-prefix requirement: position `i < |X|` holds an
    /// element of `X` if and only if `order[i] ∈ X`. Reports the first
    /// breaking position.
    pub fn consistent_with(&self, anchor: Subset) -> Result<(), Error> {
        let k = anchor.len();
        for (position, &element) in self.order.iter().enumerate() {
            if (position < k) != anchor.contains(element) {
                return Err(Error::PermutationInconsistent { position, element });
            }
        }
        Ok(())
    }

    /// All `n!` permutations in lexicographic order.
    pub fn enumerate(n: usize) -> Permutations {
        Permutations { current: Some((0..n).collect()) }
    }
}

/// Lexicographic permutation stream; see [`Permutation::enumerate`].
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.current.take()?;
        let out = Permutation { order: current.clone() };
        let mut next = current;
        // standard next-permutation step
        let n = next.len();
        let mut i = n.saturating_sub(1);
        while i > 0 && next[i - 1] >= next[i] {
            i -= 1;
        }
        if i == 0 {
            self.current = None;
        } else {
            let mut j = n - 1;
            while next[j] <= next[i - 1] {
                j -= 1;
            }
            next.swap(i - 1, j);
            next[i..].reverse();
            self.current = Some(next);
        }
        Some(out)
    }
}
