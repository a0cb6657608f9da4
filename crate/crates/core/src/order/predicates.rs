use crate::bits::{all_subsets, Bits};

use super::FiniteLattice;

/// Subset sweeps (frame law, complete distributivity, directed sets) are
/// exhaustive up to this many elements.
pub const EXHAUSTIVE_BOUND: usize = 12;

/// A failure of `(⋁A) ∧ b = ⋁{a ∧ b : a ∈ A}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameLawViolation {
    pub family: Bits,
    pub b: usize,
}

impl FiniteLattice {
    /// First triple `(a, b, c)` with `a∧(b∨c) ≠ (a∧b)∨(a∧c)`.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in b..self.size() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// The infinite frame law checked over every subset when the lattice
    /// has at most [`EXHAUSTIVE_BOUND`] elements; above that the binary
    /// (triple) form, which is equivalent for finite lattices.
    pub fn frame_law_witness(&self) -> Option<FrameLawViolation> {
        if self.size() > EXHAUSTIVE_BOUND {
            return self
                .distributivity_witness()
                .map(|(a, b, c)| FrameLawViolation {
                    family: Bits::from_indices([b, c]),
                    b: a,
                });
        }
        for family in all_subsets(self.size()) {
            let sup = self.join_all(family);
            for b in self.elements() {
                let lhs = self.meet(sup, b);
                let rhs = family
                    .iter()
                    .fold(self.bottom(), |acc, a| self.join(acc, self.meet(a, b)));
                if lhs != rhs {
                    return Some(FrameLawViolation { family, b });
                }
            }
        }
        None
    }

    pub fn is_frame(&self) -> bool {
        self.frame_law_witness().is_none()
    }

    /// Whether [`FiniteLattice::is_frame`] ran the full subset sweep.
    pub fn frame_check_is_exhaustive(&self) -> bool {
        self.size() <= EXHAUSTIVE_BOUND
    }

    pub fn is_coframe(&self) -> bool {
        self.opposite().is_frame()
    }

    /// First element without a complement.
    pub fn boolean_witness(&self) -> Option<usize> {
        self.elements().find(|&a| self.complement(a).is_none())
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean_witness().is_none()
    }

    /// Whether `p ≤ ⋁S` forces `p ≤ s` for some `s ∈ S`. All subsets `S`
    /// are tried up to [`EXHAUSTIVE_BOUND`]; above that the empty family and
    /// all pairs are, which is equivalent for finite lattices.
    pub fn is_completely_join_prime(&self, p: usize) -> bool {
        if self.size() <= EXHAUSTIVE_BOUND {
            all_subsets(self.size())
                .all(|s| !self.leq(p, self.join_all(s)) || s.iter().any(|x| self.leq(p, x)))
        } else {
            p != self.bottom()
                && self.elements().all(|a| {
                    self.elements()
                        .all(|b| !self.leq(p, self.join(a, b)) || self.leq(p, a) || self.leq(p, b))
                })
        }
    }

    pub fn completely_join_primes(&self) -> Bits {
        self.elements()
            .filter(|&p| self.is_completely_join_prime(p))
            .collect()
    }

    /// First element that is not the join of the completely join-prime
    /// elements below it.
    pub fn complete_distributivity_witness(&self) -> Option<usize> {
        let primes = self.completely_join_primes();
        self.elements()
            .find(|&a| self.join_all(primes.intersect(self.down(a))) != a)
    }

    pub fn is_completely_distributive(&self) -> bool {
        self.complete_distributivity_witness().is_none()
    }

    /// First pair `(a, b)` with `a ≰ b` such that no `c` has `a∨c = 1` and
    /// `b∨c ≠ 1`.
    pub fn subfitness_witness(&self) -> Option<(usize, usize)> {
        let top = self.top();
        for a in self.elements() {
            for b in self.elements() {
                if self.leq(a, b) {
                    continue;
                }
                let separated = self
                    .elements()
                    .any(|c| self.join(a, c) == top && self.join(b, c) != top);
                if !separated {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use crate::order::{build_lattice, RelationMode};

    use super::*;

    fn lat(n: usize, covers: &[(usize, usize)]) -> FiniteLattice {
        build_lattice(n, covers, RelationMode::Cover).unwrap()
    }

    fn two() -> FiniteLattice {
        lat(2, &[(0, 1)])
    }

    fn c3() -> FiniteLattice {
        lat(3, &[(0, 1), (1, 2)])
    }

    fn b4() -> FiniteLattice {
        lat(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
    }

    fn m3() -> FiniteLattice {
        lat(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    }

    fn n5() -> FiniteLattice {
        lat(5, &[(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)])
    }

    /// Independent brute force over all triples, both orders of the join.
    fn brute_distributive(l: &FiniteLattice) -> bool {
        l.elements().all(|a| {
            l.elements().all(|b| {
                l.elements()
                    .all(|c| l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c)))
            })
        })
    }

    #[test]
    fn distributivity_examples() {
        assert!(two().is_frame());
        assert!(b4().is_frame());
        assert!(!m3().is_distributive());
        assert!(!brute_distributive(&m3()));
        let (a, b, c) = m3().distributivity_witness().unwrap();
        let m = m3();
        assert_ne!(m.meet(a, m.join(b, c)), m.join(m.meet(a, b), m.meet(a, c)));
        assert!(!m3().is_frame());
        assert!(!n5().is_frame());
    }

    #[test]
    fn boolean_and_complete_distributivity() {
        assert!(b4().is_boolean());
        assert!(b4().is_completely_distributive());
        assert!(!c3().is_boolean());
        assert_eq!(c3().boolean_witness(), Some(1));
        assert!(c3().is_completely_distributive());
        assert_eq!(c3().completely_join_primes(), Bits::from_indices([1, 2]));
        assert!(!m3().is_completely_distributive());
    }

    #[test]
    fn subfitness_examples() {
        assert_eq!(b4().subfitness_witness(), None);
        assert_eq!(c3().subfitness_witness(), Some((1, 0)));
        assert_eq!(two().subfitness_witness(), None);
    }

    #[test]
    fn coframe_of_distributive_lattice() {
        assert!(c3().is_coframe());
        assert!(!m3().is_coframe());
    }
}
