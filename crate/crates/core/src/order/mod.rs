//! Finite posets and lattices.
//!
//! A [`FiniteLattice`] stores its elements as dense indices `0..n` together
//! with the full order relation (as one up-set and one down-set bit vector
//! per element) and the meet, join and relative pseudocomplement tables,
//! all computed once at construction.

mod iso;
mod predicates;
mod way_below;

use std::sync::OnceLock;

use crate::bits::{directed_families, Bits, MAX_ELEMENTS};
use crate::error::{Error, Result};

pub use iso::{find_isomorphism, is_order_isomorphism};
pub use predicates::{FrameLawViolation, EXHAUSTIVE_BOUND};
pub use way_below::WayBelowRelation;

/// How the relation pairs handed to [`build_lattice`] are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationMode {
    /// Pairs are (lower, upper) covers of a Hasse diagram.
    Cover,
    /// Pairs are any relation whose reflexive-transitive closure is the order.
    Leq,
}

#[derive(Debug, Clone)]
pub struct FiniteLattice {
    n: usize,
    up: Vec<Bits>,
    down: Vec<Bits>,
    names: Option<Vec<String>>,
    meet: Vec<u8>,
    join: Vec<u8>,
    heyting: Vec<Option<u8>>,
    bottom: usize,
    top: usize,
    directed: OnceLock<(Vec<Bits>, bool)>,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.up == other.up && self.names == other.names
    }
}

impl Eq for FiniteLattice {}

/// Builds a lattice on `0..n` from relation pairs; see [`RelationMode`].
pub fn build_lattice(
    n: usize,
    pairs: &[(usize, usize)],
    mode: RelationMode,
) -> Result<FiniteLattice> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > MAX_ELEMENTS {
        return Err(Error::SizeBound {
            what: "lattice",
            size: n,
            bound: MAX_ELEMENTS,
        });
    }
    let mut up: Vec<Bits> = (0..n).map(Bits::singleton).collect();
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(Error::IndexOutOfRange(a, b, n));
        }
        // a cover is strict
        if mode == RelationMode::Cover && a == b {
            return Err(Error::NotAPartialOrder(a, b));
        }
        up[a].insert(b);
    }
    // Warshall on bit rows.
    for k in 0..n {
        for i in 0..n {
            if up[i].contains(k) {
                up[i] = up[i].union(up[k]);
            }
        }
    }
    FiniteLattice::from_up_sets(up)
}

impl FiniteLattice {
    /// Builds from the principal up-sets `up[x] = {y : x ≤ y}`, which must
    /// already be reflexive and transitive.
    pub fn from_up_sets(up: Vec<Bits>) -> Result<FiniteLattice> {
        let n = up.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::SizeBound {
                what: "lattice",
                size: n,
                bound: MAX_ELEMENTS,
            });
        }
        let mut down = vec![Bits::EMPTY; n];
        for (x, row) in up.iter().enumerate() {
            debug_assert!(row.contains(x));
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotAPartialOrder(x, y));
                }
            }
        }
        let mut meet = vec![0u8; n * n];
        let mut join = vec![0u8; n * n];
        for x in 0..n {
            for y in x..n {
                let lower = down[x].intersect(down[y]);
                let m = lower
                    .iter()
                    .find(|&m| lower.is_subset(down[m]))
                    .ok_or(Error::NotALattice(x, y, "meet"))?;
                let upper = up[x].intersect(up[y]);
                let j = upper
                    .iter()
                    .find(|&j| upper.is_subset(up[j]))
                    .ok_or(Error::NotALattice(x, y, "join"))?;
                meet[x * n + y] = m as u8;
                meet[y * n + x] = m as u8;
                join[x * n + y] = j as u8;
                join[y * n + x] = j as u8;
            }
        }
        let bottom = (0..n).find(|&b| up[b] == Bits::full(n)).unwrap();
        let top = (0..n).find(|&t| down[t] == Bits::full(n)).unwrap();
        let mut heyting = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                let candidates: Bits = (0..n)
                    .filter(|&z| down[y].contains(meet[z * n + x] as usize))
                    .collect();
                heyting[x * n + y] = candidates
                    .iter()
                    .find(|&z| candidates.is_subset(down[z]))
                    .map(|z| z as u8);
            }
        }
        Ok(FiniteLattice {
            n,
            up,
            down,
            names: None,
            meet,
            join,
            heyting,
            bottom,
            top,
            directed: OnceLock::new(),
        })
    }

    /// The family of sets ordered by inclusion. Sets must be distinct.
    pub fn from_family(sets: &[Bits]) -> Result<FiniteLattice> {
        let up = sets
            .iter()
            .map(|s| {
                sets.iter()
                    .enumerate()
                    .filter(|(_, t)| s.is_subset(**t))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        FiniteLattice::from_up_sets(up)
    }

    /// The family of sets ordered by reverse inclusion. Sets must be distinct.
    pub fn from_family_reversed(sets: &[Bits]) -> Result<FiniteLattice> {
        let up = sets
            .iter()
            .map(|s| {
                sets.iter()
                    .enumerate()
                    .filter(|(_, t)| t.is_subset(*s))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        FiniteLattice::from_up_sets(up)
    }

    pub fn with_names(mut self, names: Vec<String>) -> FiniteLattice {
        assert_eq!(names.len(), self.n);
        self.names = Some(names);
        self
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of an element: its name when present, else its index.
    pub fn label(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Same carrier and order, names ignored.
    pub fn same_order(&self, other: &FiniteLattice) -> bool {
        self.n == other.n && self.up == other.up
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn all(&self) -> Bits {
        Bits::full(self.n)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y] as usize
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y] as usize
    }

    /// `x → y`, the largest `z` with `z ∧ x ≤ y`, when it exists.
    pub fn implies(&self, x: usize, y: usize) -> Option<usize> {
        self.heyting[x * self.n + y].map(usize::from)
    }

    /// Whether every `x → y` exists (always the case for distributive
    /// lattices). Sublocale machinery refuses lattices where this fails.
    pub fn heyting_is_total(&self) -> bool {
        self.heyting.iter().all(Option::is_some)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `↑x`
    pub fn up(&self, x: usize) -> Bits {
        self.up[x]
    }

    /// `↓x`
    pub fn down(&self, x: usize) -> Bits {
        self.down[x]
    }

    pub fn join_all(&self, s: Bits) -> usize {
        s.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, s: Bits) -> usize {
        s.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn up_closure(&self, s: Bits) -> Bits {
        s.iter().fold(Bits::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    pub fn down_closure(&self, s: Bits) -> Bits {
        s.iter().fold(Bits::EMPTY, |acc, x| acc.union(self.down[x]))
    }

    pub fn is_upset(&self, s: Bits) -> bool {
        self.up_closure(s) == s
    }

    pub fn is_downset(&self, s: Bits) -> bool {
        self.down_closure(s) == s
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> Bits {
        let strict = self.down[x].without(x);
        strict
            .iter()
            .filter(|&y| self.up[y].intersect(strict).len() == 1)
            .collect()
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> Bits {
        let strict = self.up[x].without(x);
        strict
            .iter()
            .filter(|&y| self.down[y].intersect(strict).len() == 1)
            .collect()
    }

    /// The cover relation as (lower, upper) pairs in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.elements()
            .flat_map(|x| self.upper_covers(x).iter().map(move |y| (x, y)))
            .collect()
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&x| self.down[x].len());
        let mut h = vec![0usize; self.n];
        for &x in &order {
            h[x] = self
                .lower_covers(x)
                .iter()
                .map(|y| h[y] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Elements sorted so that every element comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&x| (self.down[x].len(), x));
        order
    }

    /// The same carrier with the order reversed.
    pub fn opposite(&self) -> FiniteLattice {
        let lattice = FiniteLattice::from_up_sets(self.down.clone())
            .expect("opposite of a lattice is a lattice");
        match &self.names {
            Some(names) => lattice.with_names(names.clone()),
            None => lattice,
        }
    }

    pub fn complement(&self, a: usize) -> Option<usize> {
        self.elements()
            .find(|&c| self.meet(a, c) == self.bottom && self.join(a, c) == self.top)
    }

    /// Directed subsets used by the Scott-style definitions. All subsets are
    /// examined up to [`EXHAUSTIVE_BOUND`] elements, subsets with at most three
    /// members above; the flag reports which.
    pub fn directed_subsets(&self) -> &(Vec<Bits>, bool) {
        self.directed
            .get_or_init(|| directed_families(self.n, EXHAUSTIVE_BOUND, |x, y| self.leq(x, y)))
    }

    pub fn is_directed(&self, d: Bits) -> bool {
        !d.is_empty()
            && d.iter().all(|x| {
                d.iter()
                    .all(|y| d.iter().any(|z| self.leq(x, z) && self.leq(y, z)))
            })
    }

    /// Order-preserving check for a table `f: self → target`.
    pub fn is_monotone_into(&self, target: &FiniteLattice, table: &[usize]) -> bool {
        self.elements()
            .all(|x| self.up[x].iter().all(|y| target.leq(table[x], table[y])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> FiniteLattice {
        build_lattice(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            RelationMode::Cover,
        )
        .unwrap()
    }

    #[test]
    fn two_element_frame() {
        let two = build_lattice(2, &[(0, 1)], RelationMode::Cover).unwrap();
        assert_eq!(two.bottom(), 0);
        assert_eq!(two.top(), 1);
        assert_eq!(two.size(), 2);
    }

    #[test]
    fn chain_meet_is_min_join_is_max() {
        let c3 = build_lattice(3, &[(0, 1), (1, 2)], RelationMode::Cover).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(c3.meet(x, y), x.min(y));
                assert_eq!(c3.join(x, y), x.max(y));
            }
        }
    }

    #[test]
    fn m3_builds() {
        let m = m3();
        assert_eq!(m.meet(1, 2), 0);
        assert_eq!(m.join(1, 2), 4);
        assert!(!m.heyting_is_total());
    }

    #[test]
    fn leq_mode_takes_closure() {
        let l = build_lattice(3, &[(0, 2), (0, 1), (1, 2)], RelationMode::Leq).unwrap();
        assert!(l.leq(0, 2));
        assert_eq!(l.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn cycle_is_rejected() {
        let err = build_lattice(3, &[(0, 1), (1, 2), (2, 1)], RelationMode::Leq).unwrap_err();
        assert!(matches!(err, Error::NotAPartialOrder(1, 2)));
    }

    #[test]
    fn missing_join_is_rejected_with_pair() {
        // two maximal elements
        let err = build_lattice(3, &[(0, 1), (0, 2)], RelationMode::Cover).unwrap_err();
        assert_eq!(err, Error::NotALattice(1, 2, "join"));
    }

    #[test]
    fn out_of_range_pair_is_named() {
        let err = build_lattice(2, &[(0, 5)], RelationMode::Cover).unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange(0, 5, 2));
    }

    #[test]
    fn heyting_on_chain() {
        let c3 = build_lattice(3, &[(0, 1), (1, 2)], RelationMode::Cover).unwrap();
        assert_eq!(c3.implies(1, 0), Some(0));
        assert_eq!(c3.implies(1, 1), Some(2));
        assert_eq!(c3.implies(2, 1), Some(1));
        assert!(c3.heyting_is_total());
    }

    #[test]
    fn heights_and_covers_of_b4() {
        let b4 = build_lattice(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], RelationMode::Cover).unwrap();
        assert_eq!(b4.heights(), vec![0, 1, 1, 2]);
        assert_eq!(b4.lower_covers(3), Bits::from_indices([1, 2]));
        assert_eq!(b4.complement(1), Some(2));
    }
}
