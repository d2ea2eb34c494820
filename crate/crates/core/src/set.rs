use std::fmt;
use std::sync::Arc;

use crate::bits::{self, Ones};
use crate::error::{Error, Result};
use crate::group::{Element, Group};

/// A subset of a finite group stored as a bitmask over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSet {
    group: Arc<Group>,
    words: Vec<u64>,
}

impl fmt::Debug for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.group.spec(), self)
    }
}

impl fmt::Display for GroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl GroupSet {
    pub fn empty(group: &Arc<Group>) -> Self {
        GroupSet {
            group: Arc::clone(group),
            words: vec![0; bits::words_for(group.order())],
        }
    }

    pub fn full(group: &Arc<Group>) -> Self {
        let mut s = Self::empty(group);
        let n = group.order();
        for (i, w) in s.words.iter_mut().enumerate() {
            let len = n.saturating_sub(i * bits::WORD).min(bits::WORD);
            *w = bits::low_mask(len);
        }
        s
    }

    pub fn singleton(group: &Arc<Group>, x: Element) -> Result<Self> {
        Self::from_elements(group, [x])
    }

    pub fn from_elements(group: &Arc<Group>, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut s = Self::empty(group);
        for x in elements {
            group.check(x)?;
            s.insert(x);
        }
        Ok(s)
    }

    /// Builds a set from raw little-endian words; bits past the group order must be clear.
    pub fn from_words(group: &Arc<Group>, mut words: Vec<u64>) -> Result<Self> {
        let need = bits::words_for(group.order());
        if words.len() > need && words[need..].iter().any(|&w| w != 0) {
            return Err(Error::ElementOutOfRange {
                index: need * bits::WORD,
                order: group.order(),
            });
        }
        words.resize(need, 0);
        let s = GroupSet {
            group: Arc::clone(group),
            words,
        };
        let n = group.order();
        if !n.is_multiple_of(bits::WORD) {
            if let Some(&last) = s.words.last() {
                if last & !bits::low_mask(n % bits::WORD) != 0 {
                    let high = bits::WORD - (last.leading_zeros() as usize) - 1;
                    return Err(Error::ElementOutOfRange {
                        index: (need - 1) * bits::WORD + high,
                        order: n,
                    });
                }
            }
        }
        Ok(s)
    }

    /// Single-word constructor for groups of order at most 64.
    pub(crate) fn from_word(group: &Arc<Group>, word: u64) -> Self {
        debug_assert!(group.order() <= bits::WORD);
        GroupSet {
            group: Arc::clone(group),
            words: vec![word & bits::low_mask(group.order())],
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// The mask as one word; only valid for groups of order at most 64.
    pub(crate) fn word(&self) -> u64 {
        debug_assert!(self.group.order() <= bits::WORD);
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn contains(&self, x: Element) -> bool {
        x < self.group.order() && (self.words[x / bits::WORD] >> (x % bits::WORD)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: Element) {
        self.words[x / bits::WORD] |= 1 << (x % bits::WORD);
    }

    #[inline]
    pub fn remove(&mut self, x: Element) {
        self.words[x / bits::WORD] &= !(1 << (x % bits::WORD));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.group.order()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        Ones::new(&self.words)
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Element> {
        self.iter().next()
    }

    pub fn same_group(&self, other: &GroupSet) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                left: self.group.spec(),
                right: other.group.spec(),
            })
        }
    }

    pub fn is_subset(&self, other: &GroupSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &GroupSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &GroupSet) -> GroupSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &GroupSet) -> GroupSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &GroupSet) -> GroupSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> GroupSet {
        GroupSet::full(&self.group).difference(self)
    }

    fn zip_with(&self, other: &GroupSet, f: impl Fn(u64, u64) -> u64) -> GroupSet {
        debug_assert_eq!(self.words.len(), other.words.len());
        GroupSet {
            group: Arc::clone(&self.group),
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// `{-a : a in A}`.
    pub fn negated(&self) -> GroupSet {
        let mut out = GroupSet::empty(&self.group);
        for x in self.iter() {
            out.insert(self.group.neg(x));
        }
        out
    }

    /// `{u * a : a in A}` for an integer multiplier.
    pub fn scaled(&self, u: usize) -> GroupSet {
        let mut out = GroupSet::empty(&self.group);
        for x in self.iter() {
            out.insert(self.group.mul(u, x));
        }
        out
    }

    /// Hex bitmask, bit `i` of the integer standing for element `i`.
    pub fn to_hex(&self) -> String {
        let top = self.words.iter().rposition(|&w| w != 0);
        match top {
            None => "0x0".to_string(),
            Some(t) => {
                let mut s = format!("0x{:x}", self.words[t]);
                for w in self.words[..t].iter().rev() {
                    s.push_str(&format!("{w:016x}"));
                }
                s
            }
        }
    }
}
