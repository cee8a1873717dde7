use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

const WORDS: usize = 4;

/// Largest vertex count any [`super::Graph`] may have.
pub const MAX_VERTICES: usize = WORDS * 64;

/// A set of vertex ids below [`MAX_VERTICES`], stored as a fixed bitset.
///
/// Sets compare lexicographically by their ascending member sequences, so
/// `{0, 2} < {0, 2, 3} < {1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet([u64; WORDS]);

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet([0; WORDS])
    }

    /// `{0, 1, …, len - 1}`.
    pub fn full(len: usize) -> Self {
        assert!(len <= MAX_VERTICES);
        let mut s = VertexSet::new();
        for (w, word) in s.0.iter_mut().enumerate() {
            let lo = w * 64;
            if len >= lo + 64 {
                *word = u64::MAX;
            } else if len > lo {
                *word = (1u64 << (len - lo)) - 1;
            }
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = VertexSet::new();
        s.insert(v);
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        let had = self.0[w] >> b & 1 == 1;
        self.0[w] |= 1 << b;
        !had
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        let had = self.0[w] >> b & 1 == 1;
        self.0[w] &= !(1 << b);
        had
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.0[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter(&self) -> Iter {
        Iter {
            words: self.0,
            word: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for &VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let b = w.trailing_zeros() as usize;
                self.words[self.word] &= w - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
        }
        None
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait for VertexSet {
            type Output = VertexSet;

            #[inline]
            fn $method(self, rhs: VertexSet) -> VertexSet {
                let mut out = [0; WORDS];
                for i in 0..WORDS {
                    out[i] = $op(self.0[i], rhs.0[i]);
                }
                VertexSet(out)
            }
        }
    };
}

binop!(BitAnd, bitand, |a: u64, b: u64| a & b);
binop!(BitOr, bitor, |a: u64, b: u64| a | b);
binop!(Sub, sub, |a: u64, b: u64| a & !b);

impl Not for VertexSet {
    type Output = VertexSet;

    fn not(self) -> VertexSet {
        VertexSet(self.0.map(|w| !w))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut s = VertexSet::new();
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(200);
        assert_eq!(s.to_vec(), vec![3, 200]);
        assert_eq!(s.last(), Some(200));
        assert!(s.remove(3));
        assert_eq!(s.len(), 1);
        assert_eq!(VertexSet::full(70).len(), 70);
        assert_eq!(VertexSet::full(70).last(), Some(69));
        assert_eq!(VertexSet::full(0), VertexSet::new());
    }

    #[test]
    fn lexicographic_order() {
        let a: VertexSet = [0, 2].into_iter().collect();
        let b: VertexSet = [0, 2, 3].into_iter().collect();
        let c: VertexSet = [1].into_iter().collect();
        assert!(a < b && b < c);
    }

    proptest! {
        #[test]
        fn matches_btreeset(xs in proptest::collection::btree_set(0usize..MAX_VERTICES, 0..40),
                            ys in proptest::collection::btree_set(0usize..MAX_VERTICES, 0..40)) {
            let a: VertexSet = xs.iter().copied().collect();
            let b: VertexSet = ys.iter().copied().collect();
            prop_assert_eq!(a.to_vec(), xs.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!((a & b).to_vec(), xs.intersection(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!((a | b).to_vec(), xs.union(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!((a - b).to_vec(), xs.difference(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.intersects(&b), !xs.is_disjoint(&ys));
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
            prop_assert_eq!(a.cmp(&b), xs.iter().cmp(ys.iter()));
        }
    }
}
