//! Vertex sets as 32-bit masks.
//!
//! Every graph, separator, clique and imset coordinate in this crate is a
//! subset of a universe of at most [`MAX_VERTICES`] vertices, so sets are a
//! single machine word. Vertex `i` corresponds to bit `i`. The integer value
//! of the mask doubles as the canonical encoding used wherever subsets need a
//! total order (imset coordinates, deterministic output).

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

/// Hard cap on the universe size; sets are `u32` masks.
pub const MAX_VERTICES: usize = 32;

/// A subset of the vertex universe, stored as a bit mask.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    /// The empty set.
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> VertexSet {
        assert!(n <= MAX_VERTICES, "universe of {n} exceeds {MAX_VERTICES}");
        if n == MAX_VERTICES {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    /// The singleton `{v}`.
    pub fn singleton(v: usize) -> VertexSet {
        assert!(v < MAX_VERTICES);
        VertexSet(1 << v)
    }

    /// Builds a set from anything yielding vertex indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s = s.with(v);
        }
        s
    }

    /// The raw mask. Doubles as the canonical subset encoding.
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Rebuilds a set from a raw mask.
    pub fn from_bits(bits: u32) -> VertexSet {
        VertexSet(bits)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Number of vertices in the set.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    /// `self` with `v` added.
    pub fn with(self, v: usize) -> VertexSet {
        assert!(v < MAX_VERTICES);
        VertexSet(self.0 | (1 << v))
    }

    /// `self` with `v` removed.
    pub fn without(self, v: usize) -> VertexSet {
        assert!(v < MAX_VERTICES);
        VertexSet(self.0 & !(1 << v))
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint_from(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement within `universe`.
    pub fn complement_in(self, universe: VertexSet) -> VertexSet {
        VertexSet(universe.0 & !self.0)
    }

    /// Smallest vertex in the set, if any.
    pub fn min_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Iterates the vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// Iterates all subsets of `self`, in increasing mask order.
    ///
    /// The standard submask walk enumerates proper submasks in decreasing
    /// order; reversing bit arithmetic is not worth it, so this counts up and
    /// keeps only masks inside `self` when the set is dense, and falls back to
    /// the submask walk collected into a sorted order otherwise. Callers rely
    /// on the increasing order for deterministic output.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let mask = self.0;
        let mut sub: u32 = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = sub;
            // Next submask in increasing order: add one, then skip bits
            // outside the mask by propagating them upward.
            let next = (sub.wrapping_sub(mask)) & mask;
            if next == 0 {
                done = true;
            }
            sub = next;
            Some(VertexSet(cur))
        })
    }

    /// Iterates all unordered pairs `{u, v}` inside the set, `u < v`.
    pub fn pairs(self) -> impl Iterator<Item = (usize, usize)> {
        let members: Vec<usize> = self.iter().collect();
        let mut i = 0;
        let mut j = 1;
        std::iter::from_fn(move || {
            if j >= members.len() {
                i += 1;
                j = i + 1;
                if j >= members.len() {
                    return None;
                }
            }
            let pair = (members[i], members[j]);
            j += 1;
            Some(pair)
        })
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitXor for VertexSet {
    type Output = VertexSet;
    fn bitxor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 ^ rhs.0)
    }
}

/// Set difference.
impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        VertexSet::from_indices(iter)
    }
}
