//! Finite subsets of a ground set, stored as a 64-bit mask.
//!
//! Every matroid in this crate has at most [`MAX_ELEMENTS`] elements, so a
//! subset is a single machine word. The total order on [`ElementSet`] is the
//! canonical one used for all listed output: by size first, then
//! lexicographically on the ascending member sequence.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};
use std::str::FromStr;

use crate::error::MatroidError;

/// Element ids are dense and 0-based within one matroid.
pub type Element = usize;

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set of {n} elements exceeds {MAX_ELEMENTS}");
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: Element) -> Self {
        assert!(x < MAX_ELEMENTS);
        ElementSet(1u64 << x)
    }

    pub fn contains(self, x: Element) -> bool {
        x < MAX_ELEMENTS && self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: Element) {
        *self = self.with(x);
    }

    pub fn remove(&mut self, x: Element) {
        *self = self.without(x);
    }

    #[must_use]
    pub fn with(self, x: Element) -> Self {
        ElementSet(self.0 | Self::singleton(x).0)
    }

    #[must_use]
    pub fn without(self, x: Element) -> Self {
        if x >= MAX_ELEMENTS {
            return self;
        }
        ElementSet(self.0 & !(1u64 << x))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<Element> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as Element)
    }

    pub fn max(self) -> Option<Element> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as Element)
    }

    /// Smallest id not below any member; `0` for the empty set.
    pub fn bound(self) -> usize {
        self.max().map_or(0, |m| m + 1)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self`, including `∅` and `self`, in increasing mask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }

    /// All subsets of `{0, .., n-1}` in increasing mask order.
    pub fn all(n: usize) -> Subsets {
        Self::full(n).subsets()
    }

    /// All subsets of `{0, .., n-1}` sorted canonically (size, then lex).
    pub fn all_canonical(n: usize) -> Vec<ElementSet> {
        let mut v: Vec<_> = Self::all(n).collect();
        v.sort();
        v
    }

    /// All `k`-element subsets of `self`, in canonical order.
    pub fn subsets_of_size(self, k: usize) -> Vec<ElementSet> {
        let mut out: Vec<_> = self.subsets().filter(|s| s.len() == k).collect();
        out.sort();
        out
    }

    /// Re-indexes the members through `map`, where member `i` becomes `map[i]`.
    pub fn map_through(self, map: &[Element]) -> ElementSet {
        self.iter().map(|i| map[i]).collect()
    }

    pub fn to_vec(self) -> Vec<Element> {
        self.iter().collect()
    }

    /// Fails with the first member not below `n`.
    pub fn check_within(self, n: usize) -> Result<(), MatroidError> {
        match self.max() {
            Some(m) if m >= n => Err(MatroidError::ElementOutOfRange { element: m, n }),
            _ => Ok(()),
        }
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        ElementSet(self.0 | rhs.0)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        ElementSet(self.0 & rhs.0)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        ElementSet(self.0 & !rhs.0)
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl<const N: usize> From<[Element; N]> for ElementSet {
    fn from(xs: [Element; N]) -> Self {
        xs.into_iter().collect()
    }
}

impl IntoIterator for ElementSet {
    type Item = Element;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as Element;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Submask enumeration of a fixed universe.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            // next submask in increasing order
            Some((cur | !self.universe).wrapping_add(1) & self.universe)
        };
        Some(ElementSet(cur))
    }
}

impl fmt::Display for ElementSet {
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

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `{a,b,c}` with strictly ascending ids; `{}` is the empty set.
impl FromStr for ElementSet {
    type Err = MatroidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| MatroidError::Input(format!("bad subset literal `{s}`: {why}"));
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| bad("expected `{...}`"))?;
        let mut set = ElementSet::EMPTY;
        let mut last: Option<Element> = None;
        if inner.trim().is_empty() {
            return Ok(set);
        }
        for tok in inner.split(',') {
            let x: Element = tok
                .trim()
                .parse()
                .map_err(|_| bad(&format!("`{}` is not an element id", tok.trim())))?;
            if x >= MAX_ELEMENTS {
                return Err(bad(&format!("id {x} exceeds the {MAX_ELEMENTS}-element limit")));
            }
            if last.is_some_and(|l| x <= l) {
                return Err(bad("ids must be strictly ascending"));
            }
            last = Some(x);
            set.insert(x);
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut v = vec![
            ElementSet::from([1, 2, 3]),
            ElementSet::from([0, 2, 3]),
            ElementSet::from([5]),
            ElementSet::from([0, 1, 3]),
            ElementSet::EMPTY,
            ElementSet::from([0, 1, 2]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{}", "{5}", "{0,1,2}", "{0,1,3}", "{0,2,3}", "{1,2,3}"]);
    }

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let u = ElementSet::from([1, 4, 6]);
        let subs: Vec<_> = u.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(u)));
        assert_eq!(ElementSet::all(0).count(), 1);
        assert_eq!(ElementSet::full(64).subsets().take(3).count(), 3);
    }

    #[test]
    fn parse_literal() {
        assert_eq!("{}".parse::<ElementSet>().unwrap(), ElementSet::EMPTY);
        assert_eq!(
            "{0, 2,5}".parse::<ElementSet>().unwrap(),
            ElementSet::from([0, 2, 5])
        );
        assert!("{2,1}".parse::<ElementSet>().is_err());
        assert!("{1,1}".parse::<ElementSet>().is_err());
        assert!("0,1".parse::<ElementSet>().is_err());
        assert!("{a}".parse::<ElementSet>().is_err());
        assert!("{64}".parse::<ElementSet>().is_err());
    }

    #[test]
    fn range_check() {
        assert!(ElementSet::from([0, 3]).check_within(4).is_ok());
        assert_eq!(
            ElementSet::from([0, 4]).check_within(4),
            Err(MatroidError::ElementOutOfRange { element: 4, n: 4 })
        );
    }
}
