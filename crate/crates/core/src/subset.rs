//! Subsets of {1, …, 64} packed into a `u64`.
//!
//! Vertex labels are 1-based everywhere in the crate; bit `v-1` of the word
//! encodes membership of `v`. The `Ord` instance compares the ascending vertex
//! lists lexicographically, so `{1} < {1,2} < {1,3} < {2}`.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

pub const MAX_GROUND: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The set {v} for 1 <= v <= 64.
    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&v));
        Subset(1u64 << (v - 1))
    }

    /// The full set {1, …, m}.
    pub fn full(m: usize) -> Self {
        debug_assert!(m <= MAX_GROUND);
        if m == 0 {
            Subset(0)
        } else {
            Subset(u64::MAX >> (64 - m))
        }
    }

    pub fn from_iter(vs: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Subset(0);
        for v in vs {
            s = s.insert(v);
        }
        s
    }

    /// Validated construction from a 1-based vertex list: rejects vertices
    /// outside 1..=m and repeats.
    pub fn try_from_vertices(vs: &[usize], m: usize) -> crate::error::Result<Self> {
        let mut s = Subset(0);
        for &v in vs {
            if v == 0 || v > m {
                return Err(crate::error::Error::InvalidInput(format!(
                    "vertex {v} outside 1..={m}"
                )));
            }
            if s.contains(v) {
                return Err(crate::error::Error::InvalidInput(format!("repeated vertex {v}")));
            }
            s = s.insert(v);
        }
        Ok(s)
    }

    pub fn insert(self, v: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&v));
        Subset(self.0 | (1u64 << (v - 1)))
    }

    pub fn remove(self, v: usize) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&v));
        Subset(self.0 & !(1u64 << (v - 1)))
    }

    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= MAX_GROUND && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn inter(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn minus(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_strict_subset_of(self, o: Subset) -> bool {
        self.0 != o.0 && self.is_subset_of(o)
    }

    pub fn intersects(self, o: Subset) -> bool {
        self.0 & o.0 != 0
    }

    pub fn min_elem(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    pub fn max_elem(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Number of elements of `self` strictly below `v`.
    pub fn rank_below(self, v: usize) -> usize {
        debug_assert!((1..=MAX_GROUND).contains(&v));
        (self.0 & ((1u64 << (v - 1)) - 1)).count_ones() as usize
    }

    /// Ascending members.
    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in ascending bit-pattern order (∅ first).
    pub fn subsets(self) -> SubSubsets {
        SubSubsets { mask: self.0, cur: 0, done: false }
    }

    /// All 2^m subsets of {1, …, m}, in ascending bit-pattern order.
    pub fn all(m: usize) -> SubSubsets {
        Subset::full(m).subsets()
    }

    /// All k-element subsets of {1, …, m}, in ascending bit-pattern order.
    pub fn all_of_size(m: usize, k: usize) -> SizeSubsets {
        debug_assert!(m <= MAX_GROUND);
        if k > m {
            SizeSubsets { cur: 0, limit: 0, done: true }
        } else if k == 0 {
            SizeSubsets { cur: 0, limit: 0, done: false }
        } else {
            SizeSubsets {
                cur: (1u64 << k) - 1,
                limit: Subset::full(m).0,
                done: false,
            }
        }
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize + 1;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

pub struct SubSubsets {
    mask: u64,
    cur: u64,
    done: bool,
}

impl Iterator for SubSubsets {
    type Item = Subset;
    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out = Subset(self.cur);
        if self.cur == self.mask {
            self.done = true;
        } else {
            self.cur = (self.cur.wrapping_sub(self.mask)) & self.mask;
        }
        Some(out)
    }
}

pub struct SizeSubsets {
    cur: u64,
    limit: u64,
    done: bool,
}

impl Iterator for SizeSubsets {
    type Item = Subset;
    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out = Subset(self.cur);
        if self.cur == 0 {
            self.done = true;
            return Some(out);
        }
        // Gosper's hack: next word with the same popcount.
        let c = self.cur & self.cur.wrapping_neg();
        let r = self.cur + c;
        if r == 0 {
            self.done = true;
        } else {
            self.cur = (((r ^ self.cur) >> 2) / c) | r;
            if self.cur > self.limit {
                self.done = true;
            }
        }
        Some(out)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0, other.0);
        while a != 0 && b != 0 {
            let (va, vb) = (a.trailing_zeros(), b.trailing_zeros());
            match va.cmp(&vb) {
                Ordering::Equal => {
                    a &= a - 1;
                    b &= b - 1;
                }
                ord => return ord,
            }
        }
        (a != 0).cmp(&(b != 0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sort key placing sets by cardinality first, then lexicographically.
pub fn card_lex(s: &Subset) -> (usize, Subset) {
    (s.len(), *s)
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (t, v) in self.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
