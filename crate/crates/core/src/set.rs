//! Membership masks over the elements of a finite group.

use std::cmp::Ordering;
use std::fmt;

/// A fixed-length bit mask; bit `i` stands for element id `i`.
///
/// Masks order as unsigned integers (bit `i` has weight `2^i`), which is the
/// "canonical mask order" used for every tie-break in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mask {
    len: usize,
    words: Vec<u64>,
}

impl Mask {
    pub fn empty(len: usize) -> Self {
        Mask {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut m = Mask::empty(len);
        for i in 0..len {
            m.insert(i);
        }
        m
    }

    pub fn from_ids(len: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Mask::empty(len);
        for i in ids {
            m.insert(i);
        }
        m
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns `true` if `i` was not already present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "element {i} out of range {}", self.len);
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Mask) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Mask) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Mask) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Hex rendering of the mask as an integer, e.g. `0x7` for `{0,1,2}`.
    pub fn to_hex(&self) -> String {
        let mut s = String::new();
        for w in self.words.iter().rev() {
            if s.is_empty() {
                if *w != 0 {
                    s = format!("{w:x}");
                }
            } else {
                s.push_str(&format!("{w:016x}"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        format!("0x{s}")
    }
}

impl Ord for Mask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Mask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// What is known about an [`ElementSet`] beyond membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetKind {
    Subset,
    Subgroup,
    Normal,
}

/// A subset of a group's elements, flagged when known to be a (normal) subgroup.
///
/// The parent group is implicit; `len` of the mask equals the parent's order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    members: Mask,
    kind: SetKind,
}

impl ElementSet {
    pub(crate) fn new(members: Mask, kind: SetKind) -> Self {
        ElementSet { members, kind }
    }

    pub fn subset(members: Mask) -> Self {
        ElementSet::new(members, SetKind::Subset)
    }

    pub fn mask(&self) -> &Mask {
        &self.members
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn is_subgroup(&self) -> bool {
        self.kind >= SetKind::Subgroup
    }

    pub fn is_normal(&self) -> bool {
        self.kind == SetKind::Normal
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn size(&self) -> usize {
        self.members.count()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// True if this is the whole parent group.
    pub fn is_everything(&self) -> bool {
        self.members.count() == self.members.len()
    }

    pub fn to_hex(&self) -> String {
        self.members.to_hex()
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .cmp(&other.members)
            .then(self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
