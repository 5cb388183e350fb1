//! Bit-membership sets over a fixed-width carrier of labelled elements.
//!
//! `SentenceSet` backs both sentence subsets of a universe and point
//! subsets of an environment. Widths up to 64 stay on the single-word
//! fast path; larger carriers spill into additional words.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

const WORD_BITS: usize = 64;

/// A subset of a carrier of `width` elements, stored as a bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SentenceSet {
    width: usize,
    words: Vec<u64>,
}

fn word_count(width: usize) -> usize {
    width.div_ceil(WORD_BITS).max(1)
}

impl SentenceSet {
    pub fn empty(width: usize) -> Self {
        SentenceSet {
            width,
            words: vec![0; word_count(width)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for i in 0..width {
            s.insert(i);
        }
        s
    }

    pub fn singleton(width: usize, index: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(index);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut s = Self::empty(width);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, index: usize) {
        debug_assert!(index < self.width);
        self.words[index / WORD_BITS] |= 1u64 << (index % WORD_BITS);
    }

    pub fn remove(&mut self, index: usize) {
        debug_assert!(index < self.width);
        self.words[index / WORD_BITS] &= !(1u64 << (index % WORD_BITS));
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.width && self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &SentenceSet) -> SentenceSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &SentenceSet) {
        debug_assert_eq!(self.width, other.width);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersection(&self, other: &SentenceSet) -> SentenceSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn intersect_with(&mut self, other: &SentenceSet) {
        debug_assert_eq!(self.width, other.width);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &SentenceSet) -> SentenceSet {
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        out
    }

    pub fn is_subset_of(&self, other: &SentenceSet) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    pub fn is_disjoint_from(&self, other: &SentenceSet) -> bool {
        self.words.iter().zip(&other.words).all(|(w, o)| w & o == 0)
    }

    /// Relative complement `within \ self`; errors unless `self ⊆ within`.
    pub fn complement_in(&self, within: &SentenceSet) -> Result<SentenceSet, Error> {
        if !self.is_subset_of(within) {
            return Err(Error::NotASubset);
        }
        Ok(within.difference(self))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    /// Single-word view for widths up to 64.
    pub fn to_bits(&self) -> Option<u64> {
        if self.width <= WORD_BITS {
            Some(self.words[0])
        } else {
            None
        }
    }

    pub fn from_bits(width: usize, bits: u64) -> Self {
        debug_assert!(width <= WORD_BITS);
        SentenceSet {
            width,
            words: vec![bits],
        }
    }

    pub fn min_element(&self) -> Option<usize> {
        self.iter().next()
    }
}

/// Lectic order: subsets compare as integers where element `i` carries
/// weight `2^i`, so families enumerate in a canonical, reproducible order.
impl Ord for SentenceSet {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.width, other.width);
        for (w, o) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match w.cmp(o) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for SentenceSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SentenceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All subsets of `within`, in lectic order. Intended for exhaustive
/// scans of small carriers; panics past 25 elements.
pub fn subsets_of(within: &SentenceSet) -> impl Iterator<Item = SentenceSet> + '_ {
    let elems: Vec<usize> = within.iter().collect();
    assert!(elems.len() <= 25, "subset enumeration over {} elements", elems.len());
    let total = 1u64 << elems.len();
    let width = within.width();
    (0..total).map(move |mask| {
        SentenceSet::from_indices(
            width,
            elems
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complement_identities() {
        let within = SentenceSet::from_indices(4, [0, 1, 2]);
        let a = SentenceSet::singleton(4, 1);
        let c = a.complement_in(&within).unwrap();
        assert_eq!(c, SentenceSet::from_indices(4, [0, 2]));
        assert_eq!(c.union(&a), within);
        assert!(c.intersection(&a).is_empty());

        let empty = SentenceSet::empty(4);
        assert_eq!(empty.complement_in(&within).unwrap(), within);
        assert_eq!(within.complement_in(&within).unwrap(), empty);
    }

    #[test]
    fn complement_requires_subset() {
        let within = SentenceSet::from_indices(4, [0, 1]);
        let a = SentenceSet::singleton(4, 3);
        assert!(matches!(a.complement_in(&within), Err(Error::NotASubset)));
    }

    #[test]
    fn lectic_order_is_integer_order() {
        let mut all: Vec<SentenceSet> = subsets_of(&SentenceSet::full(4)).collect();
        all.sort();
        let keys: Vec<u64> = all.iter().map(|s| s.to_bits().unwrap()).collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn multiword_sets() {
        let mut s = SentenceSet::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert!(s.contains(64));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(s.to_bits().is_none());
    }

    fn model_of(s: &SentenceSet) -> Vec<usize> {
        s.iter().collect()
    }

    proptest! {
        // Set algebra against a naive element-list model, |carrier| <= 12.
        #[test]
        fn algebra_matches_element_list_model(
            a in prop::collection::btree_set(0usize..12, 0..12),
            b in prop::collection::btree_set(0usize..12, 0..12),
        ) {
            let sa = SentenceSet::from_indices(12, a.iter().copied());
            let sb = SentenceSet::from_indices(12, b.iter().copied());
            let union: Vec<usize> = a.union(&b).copied().collect();
            let inter: Vec<usize> = a.intersection(&b).copied().collect();
            let diff: Vec<usize> = a.difference(&b).copied().collect();
            prop_assert_eq!(model_of(&sa.union(&sb)), union);
            prop_assert_eq!(model_of(&sa.intersection(&sb)), inter);
            prop_assert_eq!(model_of(&sa.difference(&sb)), diff);
            prop_assert_eq!(sa.is_subset_of(&sb), a.is_subset(&b));
        }

        #[test]
        fn complement_is_involutive(
            within in prop::collection::btree_set(0usize..12, 0..12),
            picks in prop::collection::vec(any::<bool>(), 12),
        ) {
            let w = SentenceSet::from_indices(12, within.iter().copied());
            let a = SentenceSet::from_indices(
                12,
                within.iter().enumerate().filter(|(k, _)| picks[*k]).map(|(_, &e)| e),
            );
            let back = a.complement_in(&w).unwrap().complement_in(&w).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
