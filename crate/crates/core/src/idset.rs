// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Fixed-capacity bitsets over the id range `[1, universe]`.
//!
//! [`IdSet`] is tagged with a zero-sized kind so that element sets and item
//! sets cannot be mixed up. Iteration is always in ascending id order and
//! the [`Ord`] implementation is the subset order `≺`: `J ≺ K` iff the
//! minimum of the symmetric difference belongs to `J`. Under this order a
//! superset always precedes its subsets.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use crate::error::{Error, Result};

const WORD_BITS: usize = u64::BITS as usize;

/// Marker for sets of elements of the ground set `V = [1, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {}

/// Marker for sets of items `I = [1, q]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ItemKind {}

pub type ElementSet = IdSet<ElementKind>;
pub type ItemSet = IdSet<ItemKind>;

pub struct IdSet<K> {
    universe: usize,
    words: Vec<u64>,
    _kind: PhantomData<fn() -> K>,
}

#[inline]
fn slot(id: usize) -> (usize, u64) {
    let bit = id - 1;
    (bit / WORD_BITS, 1u64 << (bit % WORD_BITS))
}

impl<K> IdSet<K> {
    pub fn new(universe: usize) -> Self {
        IdSet {
            universe,
            words: vec![0; universe.div_ceil(WORD_BITS)],
            _kind: PhantomData,
        }
    }

    /// The set `[1, universe]`.
    pub fn full(universe: usize) -> Self {
        let mut set = Self::new(universe);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn singleton(universe: usize, id: usize) -> Result<Self> {
        Self::from_ids(universe, [id])
    }

    /// Builds a set, rejecting ids outside `[1, universe]`. Repeated ids collapse.
    pub fn from_ids<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Result<Self> {
        let mut set = Self::new(universe);
        for id in ids {
            if id == 0 || id > universe {
                return Err(Error::OutOfRange { id, universe });
            }
            set.insert(id);
        }
        Ok(set)
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, id: usize) -> bool {
        if id == 0 || id > self.universe {
            return false;
        }
        let (i, mask) = slot(id);
        self.words[i] & mask != 0
    }

    /// Inserts `id`, returning whether it was absent.
    ///
    /// Panics if `id` is outside `[1, universe]`.
    pub fn insert(&mut self, id: usize) -> bool {
        assert!(
            id >= 1 && id <= self.universe,
            "id {id} out of range [1, {}]",
            self.universe
        );
        let (i, mask) = slot(id);
        let was = self.words[i] & mask != 0;
        self.words[i] |= mask;
        !was
    }

    pub fn remove(&mut self, id: usize) -> bool {
        if !self.contains(id) {
            return false;
        }
        let (i, mask) = slot(id);
        self.words[i] &= !mask;
        true
    }

    /// Copy of `self` with `id` added.
    pub fn with(&self, id: usize) -> Self {
        let mut out = self.clone();
        out.insert(id);
        out
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize + 1)
    }

    pub fn last(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + (WORD_BITS - w.leading_zeros() as usize))
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "set operation across different universes"
        );
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        self.check_universe(other);
        IdSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            _kind: PhantomData,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `[1, universe] ∖ self`.
    pub fn complement(&self) -> Self {
        let mut out = IdSet {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
            _kind: PhantomData,
        };
        out.trim();
        out
    }

    /// Reinterprets the same ids under another kind tag.
    pub(crate) fn retag<K2>(self) -> IdSet<K2> {
        IdSet {
            universe: self.universe,
            words: self.words,
            _kind: PhantomData,
        }
    }

    /// `self ≺ other`.
    pub fn lex_less(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Less
    }

    /// `self ⪯ other`.
    pub fn lex_le(&self, other: &Self) -> bool {
        self.cmp(other) != Ordering::Greater
    }
}

/// `J ≺ K` on the shared universe of `j` and `k`.
pub fn subset_lex_less<K>(j: &IdSet<K>, k: &IdSet<K>) -> bool {
    j.lex_less(k)
}

/// `J ⪯ K`.
pub fn subset_lex_le<K>(j: &IdSet<K>, k: &IdSet<K>) -> bool {
    j.lex_le(k)
}

impl<K> Clone for IdSet<K> {
    fn clone(&self) -> Self {
        IdSet {
            universe: self.universe,
            words: self.words.clone(),
            _kind: PhantomData,
        }
    }
}

impl<K> PartialEq for IdSet<K> {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.words == other.words
    }
}

impl<K> Eq for IdSet<K> {}

impl<K> Hash for IdSet<K> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.universe.hash(state);
        self.words.hash(state);
    }
}

impl<K> Ord for IdSet<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.words.len().max(other.words.len());
        for i in 0..len {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            let diff = a ^ b;
            if diff != 0 {
                let lowest = diff & diff.wrapping_neg();
                return if a & lowest != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.universe.cmp(&other.universe)
    }
}

impl<K> PartialOrd for IdSet<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> fmt::Debug for IdSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<K> fmt::Display for IdSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, id) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

impl<'a, K> IntoIterator for &'a IdSet<K> {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Ascending iterator over the ids of an [`IdSet`].
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
                return Some(self.index * WORD_BITS + bit + 1);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}
