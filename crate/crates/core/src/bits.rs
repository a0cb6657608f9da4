//! Fixed-width bit sets over dense element indices.
//!
//! Every carrier in the workbench (filters, ideals, closed sets, opens,
//! sublocale carriers) is a subset of at most [`MAX_ELEMENTS`] indices, so a
//! single `u64` word is enough and keeps the exhaustive sweeps allocation-free.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest carrier any structure in this crate may have.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Bits(pub u64);

impl Bits {
    pub const EMPTY: Bits = Bits(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Bits {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == 64 {
            Bits(u64::MAX)
        } else {
            Bits((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Bits {
        Bits(1u64 << i)
    }

    /// All indices strictly below `i`.
    pub fn below(i: usize) -> Bits {
        Bits::full(i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Bits {
        it.into_iter().fold(Bits::EMPTY, |acc, i| acc.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Bits {
        Bits(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Bits {
        Bits(self.0 & !(1u64 << i))
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Bits) -> Bits {
        Bits(self.0 | other.0)
    }

    #[inline]
    pub fn intersect(self, other: Bits) -> Bits {
        Bits(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Bits) -> Bits {
        Bits(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Bits) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn meets(self, other: Bits) -> bool {
        self.0 & other.0 != 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> BitsIter {
        BitsIter(self.0)
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl IntoIterator for Bits {
    type Item = usize;
    type IntoIter = BitsIter;
    fn into_iter(self) -> BitsIter {
        self.iter()
    }
}

impl FromIterator<usize> for Bits {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Bits::from_indices(iter)
    }
}

/// Ascending iterator over the members of a [`Bits`].
pub struct BitsIter(u64);

impl Iterator for BitsIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for BitsIter {}

/// Every subset of `{0, .., n-1}` in increasing integer order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Bits> {
    assert!(n < 64, "subset sweep over {n} elements");
    (0..1u64 << n).map(Bits)
}

/// Every subset of `universe` with between 1 and `k` members, ordered by
/// size and then lexicographically.
pub fn small_subsets(universe: Bits, k: usize) -> Vec<Bits> {
    let members: Vec<usize> = universe.iter().collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for size in 1..=k.min(members.len()) {
        combinations(&members, size, 0, &mut stack, &mut out);
    }
    out
}

fn combinations(
    members: &[usize],
    size: usize,
    start: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Bits>,
) {
    if stack.len() == size {
        out.push(Bits::from_indices(stack.iter().copied()));
        return;
    }
    for idx in start..members.len() {
        stack.push(members[idx]);
        combinations(members, size, idx + 1, stack, out);
        stack.pop();
    }
}

/// All closed sets of a closure operator on `{0, .., n-1}` in lectic order,
/// generated by Ganter's NextClosure. Index 0 is the most significant
/// position, so the first set returned is `close(∅)`.
pub fn next_closure_all<F>(n: usize, mut close: F) -> Vec<Bits>
where
    F: FnMut(Bits) -> Bits,
{
    let mut out = vec![close(Bits::EMPTY)];
    while let Some(next) = next_closure(n, *out.last().unwrap(), &mut close) {
        out.push(next);
    }
    out
}

fn next_closure<F>(n: usize, current: Bits, close: &mut F) -> Option<Bits>
where
    F: FnMut(Bits) -> Bits,
{
    for i in (0..n).rev() {
        if current.contains(i) {
            continue;
        }
        let prefix = current.intersect(Bits::below(i));
        let candidate = close(prefix.with(i));
        if candidate.intersect(Bits::below(i)) == prefix {
            return Some(candidate);
        }
    }
    None
}

/// Subsets `D` of `{0, .., n-1}` that are directed for the preorder `le`
/// (non-empty, every pair has an upper bound inside `D`).
///
/// When `n <= exhaustive_bound` every subset is examined; otherwise only
/// subsets of at most three members are. The second component reports
/// whether the sweep was exhaustive.
pub fn directed_families<F>(n: usize, exhaustive_bound: usize, le: F) -> (Vec<Bits>, bool)
where
    F: Fn(usize, usize) -> bool,
{
    let is_directed = |d: Bits| {
        let members: Vec<usize> = d.iter().collect();
        members.iter().enumerate().all(|(k, &x)| {
            members[k..]
                .iter()
                .all(|&y| members.iter().any(|&z| le(x, z) && le(y, z)))
        })
    };
    if n <= exhaustive_bound {
        let out = all_subsets(n)
            .filter(|d| !d.is_empty() && is_directed(*d))
            .collect();
        (out, true)
    } else {
        let out = small_subsets(Bits::full(n), 3)
            .into_iter()
            .filter(|d| is_directed(*d))
            .collect();
        (out, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_is_ascending() {
        let b = Bits::from_indices([5, 1, 63, 0]);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 1, 5, 63]);
        assert_eq!(b.len(), 4);
        assert_eq!(format!("{b}"), "{0,1,5,63}");
    }

    #[test]
    fn full_handles_word_width() {
        assert_eq!(Bits::full(64).len(), 64);
        assert_eq!(Bits::full(0), Bits::EMPTY);
        assert_eq!(Bits::full(3), Bits(0b111));
    }

    #[test]
    fn small_subsets_counts() {
        let subsets = small_subsets(Bits::full(5), 3);
        assert_eq!(subsets.len(), 5 + 10 + 10);
        assert!(subsets.windows(2).all(|w| w[0].len() <= w[1].len()));
    }

    #[test]
    fn next_closure_of_identity_closure_is_powerset() {
        let sets = next_closure_all(4, |s| s);
        assert_eq!(sets.len(), 16);
        let mut sorted = sets.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 16);
        assert_eq!(sets[0], Bits::EMPTY);
    }

    #[test]
    fn next_closure_matches_brute_force_fixpoints() {
        // closure: add 1 whenever 0 is present, add 2 whenever 1 and 3 are
        let close = |mut s: Bits| loop {
            let mut t = s;
            if t.contains(0) {
                t = t.with(1);
            }
            if t.contains(1) && t.contains(3) {
                t = t.with(2);
            }
            if t == s {
                return s;
            }
            s = t;
        };
        let mut generated = next_closure_all(4, close);
        let mut brute: Vec<Bits> = all_subsets(4).filter(|s| close(*s) == *s).collect();
        generated.sort();
        brute.sort();
        assert_eq!(generated, brute);
    }

    #[test]
    fn directed_families_on_a_chain_are_all_nonempty_subsets() {
        let (fams, exhaustive) = directed_families(4, 12, |a, b| a <= b);
        assert!(exhaustive);
        assert_eq!(fams.len(), 15);
    }

    #[test]
    fn directed_families_on_an_antichain_are_singletons() {
        let (fams, _) = directed_families(3, 12, |a, b| a == b);
        assert_eq!(fams.len(), 3);
    }
}
