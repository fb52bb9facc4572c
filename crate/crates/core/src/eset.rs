//! Subsets of the ordered ground set `{0, …, n}` as 64-bit masks.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

/// Index of a ground-set element. Ground sets are capped at 64 elements.
pub type Element = u8;

/// Largest supported ground-set size.
pub const MAX_GROUND: usize = 64;

/// A subset of the ground set, stored as a bitmask.
///
/// The derived `Ord` is the dictionary order on the sorted element
/// sequences: `{0} < {0,1} < {0,2} < {1}`. This is the order meant whenever
/// the library speaks of a "lexicographically smallest" set.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct ESet(u64);

impl ESet {
    pub const EMPTY: ESet = ESet(0);

    /// The full ground set on `n_plus_1` elements.
    pub fn full(n_plus_1: usize) -> ESet {
        assert!(n_plus_1 <= MAX_GROUND);
        if n_plus_1 == MAX_GROUND {
            ESet(u64::MAX)
        } else {
            ESet((1u64 << n_plus_1) - 1)
        }
    }

    pub fn singleton(e: Element) -> ESet {
        ESet(1u64 << e)
    }

    pub fn from_bits(bits: u64) -> ESet {
        ESet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, e: Element) -> bool {
        self.0 >> e & 1 == 1
    }

    #[must_use]
    pub fn with(self, e: Element) -> ESet {
        ESet(self.0 | 1 << e)
    }

    #[must_use]
    pub fn without(self, e: Element) -> ESet {
        ESet(self.0 & !(1 << e))
    }

    pub fn is_subset(self, other: ESet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement_in(self, ground: ESet) -> ESet {
        ESet(ground.0 & !self.0)
    }

    pub fn min(self) -> Option<Element> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Element)
    }

    pub fn max(self) -> Option<Element> {
        (self.0 != 0).then(|| (63 - self.0.leading_zeros()) as Element)
    }

    /// Elements of `self` strictly greater than `e`.
    pub fn above(self, e: Element) -> ESet {
        if e >= 63 {
            ESet::EMPTY
        } else {
            ESet(self.0 & !((1u64 << (e + 1)) - 1))
        }
    }

    /// Elements of `self` strictly smaller than `e`.
    pub fn below(self, e: Element) -> ESet {
        ESet(self.0 & ((1u64 << e) - 1))
    }

    /// Ascending iterator over the elements.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, the empty set first, `self` last.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, cur: 0, done: false }
    }
}

impl FromIterator<Element> for ESet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> ESet {
        let mut s = ESet::EMPTY;
        for e in iter {
            s = s.with(e);
        }
        s
    }
}

impl BitOr for ESet {
    type Output = ESet;
    fn bitor(self, rhs: ESet) -> ESet {
        ESet(self.0 | rhs.0)
    }
}

impl BitAnd for ESet {
    type Output = ESet;
    fn bitand(self, rhs: ESet) -> ESet {
        ESet(self.0 & rhs.0)
    }
}

impl BitXor for ESet {
    type Output = ESet;
    fn bitxor(self, rhs: ESet) -> ESet {
        ESet(self.0 ^ rhs.0)
    }
}

impl Sub for ESet {
    type Output = ESet;
    fn sub(self, rhs: ESet) -> ESet {
        ESet(self.0 & !rhs.0)
    }
}

impl Ord for ESet {
    fn cmp(&self, other: &ESet) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        // The set containing the smallest differing element e wins, unless
        // the other set has no element beyond e at all (and so is a strict
        // prefix of this one as a sorted sequence).
        let low = (self.0 ^ other.0) & (self.0 ^ other.0).wrapping_neg();
        let beyond = !((low << 1).wrapping_sub(1));
        if self.0 & low != 0 {
            if other.0 & beyond != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & beyond != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for ESet {
    fn partial_cmp(&self, other: &ESet) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ESet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = Element;
    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as Element;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Carry-rippler subset walk of a fixed mask.
#[derive(Clone)]
pub struct Subsets {
    mask: u64,
    cur: u64,
    done: bool,
}

impl Iterator for Subsets {
    type Item = ESet;
    fn next(&mut self) -> Option<ESet> {
        if self.done {
            return None;
        }
        let out = ESet(self.cur);
        if self.cur == self.mask {
            self.done = true;
        } else {
            self.cur = self.cur.wrapping_sub(self.mask) & self.mask;
        }
        Some(out)
    }
}

/// One-character label for an element: digits, then lowercase letters.
pub fn element_label(e: Element) -> char {
    match e {
        0..=9 => (b'0' + e) as char,
        10..=35 => (b'a' + e - 10) as char,
        _ => '?',
    }
}

/// Compact rendering of a set: `∅`, `E` for the full ground set, or the
/// concatenated element labels (`23467`, `9b`, …).
pub fn set_label(s: ESet, n_plus_1: usize) -> String {
    if s.is_empty() {
        return "∅".to_string();
    }
    if s == ESet::full(n_plus_1) {
        return "E".to_string();
    }
    if n_plus_1 <= 36 {
        s.iter().map(element_label).collect()
    } else {
        format!("{s:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(els: &[Element]) -> ESet {
        els.iter().copied().collect()
    }

    #[test]
    fn basic_ops() {
        let s = set(&[0, 3, 4]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(3));
        assert!(!s.contains(1));
        assert_eq!(s.min(), Some(0));
        assert_eq!(s.max(), Some(4));
        assert_eq!(s.with(1).len(), 4);
        assert_eq!(s.without(3), set(&[0, 4]));
        assert_eq!(s | set(&[1]), set(&[0, 1, 3, 4]));
        assert_eq!(s & set(&[3, 4, 5]), set(&[3, 4]));
        assert_eq!(s - set(&[0]), set(&[3, 4]));
        assert!(set(&[0, 3]).is_subset(s));
        assert!(!s.is_subset(set(&[0, 3])));
        assert_eq!(s.complement_in(ESet::full(8)), set(&[1, 2, 5, 6, 7]));
        assert_eq!(ESet::EMPTY.min(), None);
        assert_eq!(ESet::full(64).len(), 64);
    }

    #[test]
    fn above_below() {
        let s = set(&[0, 2, 5, 7]);
        assert_eq!(s.above(2), set(&[5, 7]));
        assert_eq!(s.below(5), set(&[0, 2]));
        assert_eq!(s.above(7), ESet::EMPTY);
        assert_eq!(s.below(0), ESet::EMPTY);
        assert_eq!(ESet::full(64).above(63), ESet::EMPTY);
    }

    #[test]
    fn dictionary_order() {
        // {0} < {0,1} < {0,2} < {1} < {1,2} < {2}
        let chain = [set(&[0]), set(&[0, 1]), set(&[0, 2]), set(&[1]), set(&[1, 2]), set(&[2])];
        for w in chain.windows(2) {
            assert!(w[0] < w[1], "{:?} < {:?}", w[0], w[1]);
        }
        assert!(ESet::EMPTY < set(&[0]));
        // Matches sorting the written-out sequences.
        let mut all: Vec<ESet> = ESet::full(5).subsets().collect();
        all.sort();
        let seqs: Vec<Vec<Element>> = all.iter().map(|s| s.iter().collect()).collect();
        let mut resorted = seqs.clone();
        resorted.sort();
        assert_eq!(seqs, resorted);
    }

    #[test]
    fn subsets_walk() {
        let s = set(&[1, 3]);
        let subs: Vec<ESet> = s.subsets().collect();
        assert_eq!(subs, vec![ESet::EMPTY, set(&[1]), set(&[3]), set(&[1, 3])]);
        assert_eq!(ESet::EMPTY.subsets().count(), 1);
        assert_eq!(ESet::full(10).subsets().count(), 1024);
    }

    #[test]
    fn labels() {
        assert_eq!(set_label(set(&[2, 3, 4, 6, 7]), 8), "23467");
        assert_eq!(set_label(set(&[9, 11]), 12), "9b");
        assert_eq!(set_label(ESet::EMPTY, 8), "∅");
        assert_eq!(set_label(ESet::full(12), 12), "E");
    }
}
