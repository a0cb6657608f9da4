use crate::bits::Bits;
use crate::error::{Error, Result};

use super::FiniteLattice;

/// `c ≪ a` for every pair, stored as `below[a] = {c : c ≪ a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WayBelowRelation {
    below: Vec<Bits>,
    exhaustive: bool,
}

impl WayBelowRelation {
    /// `c ≪ a`
    pub fn holds(&self, c: usize, a: usize) -> bool {
        self.below[a].contains(c)
    }

    /// `{c : c ≪ a}`
    pub fn way_below_set(&self, a: usize) -> Bits {
        self.below[a]
    }

    pub fn exhaustive(&self) -> bool {
        self.exhaustive
    }
}

impl FiniteLattice {
    fn require_frame(&self) -> Result<()> {
        match self.frame_law_witness() {
            None => Ok(()),
            Some(v) => Err(Error::NotAFrame(format!(
                "frame law fails for family {} and b={}",
                v.family, v.b
            ))),
        }
    }

    /// The way-below relation from its definition: `c ≪ a` iff every
    /// directed `D` with `a ≤ ⋁D` has a member above `c`.
    pub fn way_below(&self) -> Result<WayBelowRelation> {
        self.require_frame()?;
        let (directed, exhaustive) = self.directed_subsets();
        let mut below = vec![self.all(); self.size()];
        for &d in directed {
            let sup = self.join_all(d);
            let covered = self.down_closure(d);
            for a in self.down(sup).iter() {
                below[a] = below[a].intersect(covered);
            }
        }
        Ok(WayBelowRelation {
            below,
            exhaustive: *exhaustive,
        })
    }

    /// Every element is the join of the elements way below it.
    pub fn is_locally_compact(&self) -> Result<bool> {
        let wb = self.way_below()?;
        Ok(self
            .elements()
            .all(|a| self.join_all(wb.way_below_set(a)) == a))
    }

    /// Locally compact, and `a ≪ b`, `a ≪ c` imply `a ≪ b∧c`.
    pub fn is_stably_locally_compact(&self) -> Result<bool> {
        if !self.is_locally_compact()? {
            return Ok(false);
        }
        let wb = self.way_below()?;
        Ok(self.elements().all(|a| {
            self.elements().all(|b| {
                self.elements()
                    .all(|c| !(wb.holds(a, b) && wb.holds(a, c)) || wb.holds(a, self.meet(b, c)))
            })
        }))
    }
}

#[cfg(test)]
mod tests {
    use crate::order::{build_lattice, RelationMode};

    use super::*;

    #[test]
    fn chain_way_below_is_order() {
        let c3 = build_lattice(3, &[(0, 1), (1, 2)], RelationMode::Cover).unwrap();
        let wb = c3.way_below().unwrap();
        for c in 0..3 {
            for a in 0..3 {
                assert_eq!(wb.holds(c, a), c3.leq(c, a));
            }
        }
        assert!(c3.is_locally_compact().unwrap());
        assert!(c3.is_stably_locally_compact().unwrap());
    }

    #[test]
    fn b4_way_below_is_order() {
        let b4 = build_lattice(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], RelationMode::Cover).unwrap();
        let wb = b4.way_below().unwrap();
        for c in 0..4 {
            for a in 0..4 {
                assert_eq!(wb.holds(c, a), b4.leq(c, a));
            }
        }
        assert!(b4.is_stably_locally_compact().unwrap());
    }

    #[test]
    fn non_frame_is_rejected() {
        let m3 = build_lattice(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
            RelationMode::Cover,
        )
        .unwrap();
        assert!(matches!(m3.way_below(), Err(Error::NotAFrame(_))));
    }
}
