//! Fixed-width bitsets over dense agent/object indices.

use std::fmt;

/// A set of small indices (agents or objects) backed by a `u64` mask.
///
/// All solver-level set algebra (endowments, coalitions, control closures)
/// runs on these; string labels exist only at the I/O layer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SmallSet(u64);

impl SmallSet {
    pub const EMPTY: SmallSet = SmallSet(0);

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < 64);
        SmallSet(1 << i)
    }

    /// The full set {0, .., n-1}.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            SmallSet(u64::MAX)
        } else {
            SmallSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = SmallSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> Self {
        SmallSet(bits)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < 64);
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn union(self, other: SmallSet) -> SmallSet {
        SmallSet(self.0 | other.0)
    }

    pub fn intersect(self, other: SmallSet) -> SmallSet {
        SmallSet(self.0 & other.0)
    }

    pub fn difference(self, other: SmallSet) -> SmallSet {
        SmallSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: SmallSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: SmallSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: SmallSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Members in ascending index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// The lowest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// All subsets of `self` (including the empty set and `self`),
    /// in ascending numeric (bitmask) order.
    pub fn subsets(self) -> impl Iterator<Item = SmallSet> {
        let mask = self.0;
        let mut cur: u64 = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = SmallSet(cur);
            if cur == mask {
                done = true;
            } else {
                cur = cur.wrapping_sub(mask) & mask;
            }
            Some(out)
        })
    }

    /// Nonempty subsets of `self`, ascending bitmask order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = SmallSet> {
        self.subsets().filter(|s| !s.is_empty())
    }
}

impl fmt::Debug for SmallSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for SmallSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        SmallSet::from_indices(iter)
    }
}

/// A nonempty set of agents.
pub type Coalition = SmallSet;
