//! Bitset over the element indices of one finite structure.

use std::fmt;

const WORD: usize = 64;

/// A subset of `0..universe`, stored as packed bits with a cached cardinality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
    size: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
            size: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for x in 0..universe {
            set.insert(x);
        }
        set
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(universe: usize, elems: I) -> Self {
        let mut set = Self::empty(universe);
        for x in elems {
            set.insert(x);
        }
        set
    }

    /// Size of the ambient index range, not of the set.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn is_full(&self) -> bool {
        self.size == self.universe
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.words[x / WORD] & (1 << (x % WORD)) != 0
    }

    /// Returns `true` if `x` was not already present.
    ///
    /// Panics if `x` is outside the universe.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.universe, "element {x} outside universe {}", self.universe);
        let word = &mut self.words[x / WORD];
        let bit = 1 << (x % WORD);
        if *word & bit == 0 {
            *word |= bit;
            self.size += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, x: usize) -> bool {
        if !self.contains(x) {
            return false;
        }
        self.words[x / WORD] &= !(1 << (x % WORD));
        self.size -= 1;
        true
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.universe == other.universe
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.combine(other, |a, b| a & b)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.combine(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.combine(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> ElementSet {
        ElementSet::full(self.universe).difference(self)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn combine(&self, other: &ElementSet, op: impl Fn(u64, u64) -> u64) -> ElementSet {
        assert_eq!(self.universe, other.universe, "element sets over different universes");
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b))
            .collect();
        let size = words.iter().map(|w| w.count_ones() as usize).sum();
        ElementSet {
            universe: self.universe,
            words,
            size,
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Ascending iterator over the members of an [`ElementSet`].
pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn insert_remove_track_size() {
        let mut s = ElementSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_vec(), vec![0, 129]);
        assert!(s.remove(0));
        assert!(!s.remove(0));
        assert_eq!(s.len(), 1);
        assert!(!s.contains(200));
    }

    #[test]
    fn empty_universe() {
        let s = ElementSet::full(0);
        assert!(s.is_empty() && s.is_full());
        assert_eq!(s.first(), None);
    }

    proptest! {
        #[test]
        fn size_is_popcount(elems in proptest::collection::vec(0usize..200, 0..80)) {
            let s = ElementSet::from_elements(200, elems.iter().copied());
            let mut uniq = elems.clone();
            uniq.sort_unstable();
            uniq.dedup();
            prop_assert_eq!(s.len(), uniq.len());
            prop_assert_eq!(s.to_vec(), uniq);
        }

        #[test]
        fn set_algebra(a in proptest::collection::vec(0usize..100, 0..50),
                       b in proptest::collection::vec(0usize..100, 0..50)) {
            let sa = ElementSet::from_elements(100, a);
            let sb = ElementSet::from_elements(100, b);
            let inter = sa.intersection(&sb);
            let uni = sa.union(&sb);
            prop_assert_eq!(inter.len() + uni.len(), sa.len() + sb.len());
            prop_assert!(inter.is_subset(&sa) && sa.is_subset(&uni));
            prop_assert_eq!(sa.difference(&sb).len(), sa.len() - inter.len());
            prop_assert_eq!(sa.complement().len(), 100 - sa.len());
        }
    }
}
