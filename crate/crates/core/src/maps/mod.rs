//! Maps between finite frames: classification, σ- and π-extensions,
//! adjoints, and the checks that tie them to canonical extensions.

mod enumerate;
mod lemmas;
mod spectra;

use std::fmt;
use std::sync::OnceLock;

use crate::bits::{all_subsets, Bits};
use crate::canext::CanExtBundle;
use crate::error::{Error, Result};
use crate::filters::{filter_closure, scott_open_poset, ScottOpenFilterPoset};
use crate::order::FiniteLattice;

pub use enumerate::{frame_homs, join_irreducibles, monotone_maps, random_monotone_map};
pub use lemmas::{
    adjoint_lift_check, complete_hom_check, functor_check, lift_perfect_hom, perfect_equivalences,
    perfect_equivalences_with, verify_extension_lemmas, PerfectCheckers, COMPLETE_HOM_BOUND,
};
pub use spectra::{
    monotone_correspondence, omega_pt_actions, point_lift, pt_c_homeomorphism,
    MonotoneCorrespondence,
};

/// Classification of a map, all computed by exhaustion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MapFlags {
    pub monotone: bool,
    /// `f(1) = 1` and `f(a ∧ b) = f(a) ∧ f(b)`.
    pub finite_meets: bool,
    pub directed_joins: bool,
    pub all_joins: bool,
    pub perfect: bool,
}

impl MapFlags {
    pub fn preframe_hom(&self) -> bool {
        self.finite_meets && self.directed_joins
    }

    pub fn frame_hom(&self) -> bool {
        self.finite_meets && self.all_joins
    }
}

impl fmt::Display for MapFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "monotone={} finite-meets={} directed-joins={} all-joins={} perfect={}",
            self.monotone, self.finite_meets, self.directed_joins, self.all_joins, self.perfect
        )
    }
}

/// A total map between finite lattices given by its table.
#[derive(Debug, Clone)]
pub struct LatticeMap<'a> {
    pub source: &'a FiniteLattice,
    pub target: &'a FiniteLattice,
    pub table: Vec<usize>,
    flags: OnceLock<MapFlags>,
}

impl<'a> LatticeMap<'a> {
    pub fn new(
        source: &'a FiniteLattice,
        target: &'a FiniteLattice,
        table: Vec<usize>,
    ) -> Result<LatticeMap<'a>> {
        if table.len() != source.size() {
            return Err(Error::SourceTargetMismatch(format!(
                "table has {} entries for a source of size {}",
                table.len(),
                source.size()
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= target.size()) {
            return Err(Error::SourceTargetMismatch(format!(
                "value {v} outside a target of size {}",
                target.size()
            )));
        }
        Ok(LatticeMap {
            source,
            target,
            table,
            flags: OnceLock::new(),
        })
    }

    pub fn identity(l: &'a FiniteLattice) -> LatticeMap<'a> {
        LatticeMap::new(l, l, l.elements().collect()).unwrap()
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// `g ∘ self`.
    pub fn then<'b>(&self, g: &LatticeMap<'b>) -> Result<LatticeMap<'b>>
    where
        'a: 'b,
    {
        if !self.target.same_order(g.source) {
            return Err(Error::SourceTargetMismatch(
                "maps are not composable".into(),
            ));
        }
        LatticeMap::new(
            self.source,
            g.target,
            self.table.iter().map(|&b| g.table[b]).collect(),
        )
    }

    pub fn image(&self, s: Bits) -> Bits {
        s.iter().map(|a| self.table[a]).collect()
    }

    pub fn preimage(&self, s: Bits) -> Bits {
        self.source
            .elements()
            .filter(|&a| s.contains(self.table[a]))
            .collect()
    }

    pub fn monotone_witness(&self) -> Option<(usize, usize)> {
        let (s, t) = (self.source, self.target);
        s.elements().find_map(|x| {
            s.up(x)
                .iter()
                .find(|&y| !t.leq(self.table[x], self.table[y]))
                .map(|y| (x, y))
        })
    }

    /// A pair whose meet is not preserved, or `None`; the top counts as the
    /// empty meet and is reported as `(top, top)`.
    pub fn meet_witness(&self) -> Option<(usize, usize)> {
        let (s, t) = (self.source, self.target);
        if self.table[s.top()] != t.top() {
            return Some((s.top(), s.top()));
        }
        s.elements().find_map(|x| {
            (x..s.size())
                .find(|&y| self.table[s.meet(x, y)] != t.meet(self.table[x], self.table[y]))
                .map(|y| (x, y))
        })
    }

    /// A directed set whose join is not preserved.
    pub fn directed_join_witness(&self) -> Option<Bits> {
        let (s, t) = (self.source, self.target);
        let (dirs, _) = s.directed_subsets();
        dirs.iter()
            .copied()
            .find(|&d| self.table[s.join_all(d)] != t.join_all(self.image(d)))
    }

    /// A family whose join is not preserved. Exhaustive over subsets up to
    /// [`COMPLETE_HOM_BOUND`] elements; above that the empty and binary
    /// joins, which suffice in a finite lattice.
    pub fn join_witness(&self) -> Option<Bits> {
        let (s, t) = (self.source, self.target);
        let bad = |d: Bits| self.table[s.join_all(d)] != t.join_all(self.image(d));
        if s.size() <= COMPLETE_HOM_BOUND {
            return all_subsets(s.size()).find(|&d| bad(d));
        }
        if bad(Bits::EMPTY) {
            return Some(Bits::EMPTY);
        }
        s.elements().find_map(|x| {
            (x + 1..s.size())
                .map(|y| Bits::from_iter([x, y]))
                .find(|&d| bad(d))
        })
    }

    /// Classification, computing the Scott-open filter posets on first use.
    pub fn classify(&self) -> MapFlags {
        *self.flags.get_or_init(|| {
            let so = scott_open_poset(self.source)
                .and_then(|a| scott_open_poset(self.target).map(|b| (a, b)));
            self.compute_flags(so.as_ref().ok().map(|(a, b)| (a, b)))
        })
    }

    /// Classification using already-computed Scott-open filter posets.
    pub fn classify_with(
        &self,
        so_source: &ScottOpenFilterPoset,
        so_target: &ScottOpenFilterPoset,
    ) -> MapFlags {
        *self
            .flags
            .get_or_init(|| self.compute_flags(Some((so_source, so_target))))
    }

    fn compute_flags(
        &self,
        so: Option<(&ScottOpenFilterPoset, &ScottOpenFilterPoset)>,
    ) -> MapFlags {
        let monotone = self.monotone_witness().is_none();
        let perfect = monotone && so.is_some_and(|(s, t)| self.perfect_image(s, t).is_some());
        MapFlags {
            monotone,
            finite_meets: self.meet_witness().is_none(),
            directed_joins: monotone && self.directed_join_witness().is_none(),
            all_joins: self.join_witness().is_none(),
            perfect,
        }
    }

    /// `f_SO`: for each Scott-open `F` of the source, the index of the
    /// smallest filter containing `f[F]` among the target's Scott-open
    /// filters; `None` when one of those filters is not Scott-open.
    pub fn perfect_image(
        &self,
        so_source: &ScottOpenFilterPoset,
        so_target: &ScottOpenFilterPoset,
    ) -> Option<Vec<usize>> {
        so_source
            .filters
            .iter()
            .map(|&f| so_target.index_of(filter_closure(self.target, self.image(f))))
            .collect()
    }

    /// The first Scott-open filter whose generated image is not Scott-open.
    pub fn perfect_witness(
        &self,
        so_source: &ScottOpenFilterPoset,
        so_target: &ScottOpenFilterPoset,
    ) -> Option<Bits> {
        so_source.filters.iter().copied().find(|&f| {
            so_target
                .index_of(filter_closure(self.target, self.image(f)))
                .is_none()
        })
    }
}

impl PartialEq for LatticeMap<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_order(other.source)
            && self.target.same_order(other.target)
            && self.table == other.table
    }
}

fn check_bundles(f: &LatticeMap, bs: &CanExtBundle, bt: &CanExtBundle) -> Result<()> {
    if !bs.source.same_order(f.source) || !bt.source.same_order(f.target) {
        return Err(Error::SourceTargetMismatch(
            "bundles are not over the map's source and target".into(),
        ));
    }
    Ok(())
}

fn require_monotone(f: &LatticeMap) -> Result<()> {
    match f.monotone_witness() {
        Some((x, y)) => Err(Error::NotMonotone(x, y)),
        None => Ok(()),
    }
}

/// `f^σ(u) = ⋁{⋀ e_T f[F] : F Scott-open, e_SO(F) ≤ u}`, as a table on
/// `bs.extension` with values in `bt.extension`.
pub fn sigma_extension(f: &LatticeMap, bs: &CanExtBundle, bt: &CanExtBundle) -> Result<Vec<usize>> {
    check_bundles(f, bs, bt)?;
    require_monotone(f)?;
    let (xs, xt) = (&bs.extension, &bt.extension);
    let meets: Vec<usize> = bs
        .scott_open
        .filters
        .iter()
        .map(|&fl| xt.meet_all(fl.iter().map(|a| bt.e[f.table[a]]).collect()))
        .collect();
    Ok(xs
        .elements()
        .map(|u| {
            xt.join_all(
                (0..meets.len())
                    .filter(|&i| xs.leq(bs.e_so[i], u))
                    .map(|i| meets[i])
                    .collect(),
            )
        })
        .collect())
}

/// `f^π(u) = ⋀{e_T f(a) : u ≤ e_S(a)}`.
pub fn pi_extension(f: &LatticeMap, bs: &CanExtBundle, bt: &CanExtBundle) -> Result<Vec<usize>> {
    check_bundles(f, bs, bt)?;
    require_monotone(f)?;
    let (xs, xt) = (&bs.extension, &bt.extension);
    Ok(xs
        .elements()
        .map(|u| {
            xt.meet_all(
                f.source
                    .elements()
                    .filter(|&a| xs.leq(u, bs.e[a]))
                    .map(|a| bt.e[f.table[a]])
                    .collect(),
            )
        })
        .collect())
}

/// `g(b) = ⋁{a : f(a) ≤ b}` when that is a right adjoint; otherwise the
/// family whose join `f` fails to preserve.
pub fn right_adjoint(f: &LatticeMap) -> std::result::Result<Vec<usize>, Bits> {
    let (s, t) = (f.source, f.target);
    if let Some(w) = f.join_witness() {
        return Err(w);
    }
    let g: Vec<usize> = t
        .elements()
        .map(|b| s.join_all(s.elements().filter(|&a| t.leq(f.table[a], b)).collect()))
        .collect();
    let ok = s
        .elements()
        .all(|a| t.elements().all(|b| t.leq(f.table[a], b) == s.leq(a, g[b])));
    debug_assert!(ok);
    if !ok || !adjunction_laws(&f.table, &g) {
        return Err(Bits::EMPTY);
    }
    Ok(g)
}

/// `g(b) = ⋀{a : b ≤ f(a)}` when that is a left adjoint; otherwise the
/// family whose meet `f` fails to preserve.
pub fn left_adjoint(f: &LatticeMap) -> std::result::Result<Vec<usize>, Bits> {
    let (s, t) = (f.source, f.target);
    let bad = |d: Bits| f.table[s.meet_all(d)] != t.meet_all(f.image(d));
    let witness = if s.size() <= COMPLETE_HOM_BOUND {
        all_subsets(s.size()).find(|&d| bad(d))
    } else {
        f.meet_witness().map(|(x, y)| Bits::from_iter([x, y]))
    };
    if let Some(w) = witness {
        return Err(w);
    }
    let g: Vec<usize> = t
        .elements()
        .map(|b| s.meet_all(s.elements().filter(|&a| t.leq(b, f.table[a])).collect()))
        .collect();
    let ok = s
        .elements()
        .all(|a| t.elements().all(|b| s.leq(g[b], a) == t.leq(b, f.table[a])));
    if !ok || !adjunction_laws(&f.table, &g) {
        return Err(Bits::EMPTY);
    }
    Ok(g)
}

// f g f = f and g f g = g
fn adjunction_laws(f: &[usize], g: &[usize]) -> bool {
    f.iter().all(|&b| f[g[b]] == b) && g.iter().all(|&a| g[f[a]] == a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canext::canonical_extension;
    use crate::corpus::{b4, c3};

    // C3 is 0 < m < 1 with indices 0, 1, 2; B4 is 0, a, b, 1.

    #[test]
    fn identity_has_every_flag() {
        let l = c3();
        let f = LatticeMap::identity(&l);
        let fl = f.classify();
        assert!(fl.monotone && fl.frame_hom() && fl.preframe_hom() && fl.perfect);
    }

    #[test]
    fn collapse_of_atoms_is_monotone_only() {
        let (s, t) = (b4(), c3());
        let f = LatticeMap::new(&s, &t, vec![0, 1, 1, 2]).unwrap();
        let fl = f.classify();
        assert!(fl.monotone);
        assert!(!fl.finite_meets);
        assert_eq!(f.meet_witness(), Some((1, 2)));
    }

    #[test]
    fn middle_to_top_is_perfect_frame_hom() {
        let l = c3();
        let f = LatticeMap::new(&l, &l, vec![0, 2, 2]).unwrap();
        let fl = f.classify();
        assert!(fl.frame_hom() && fl.perfect);
        assert_eq!(right_adjoint(&f), Ok(vec![0, 0, 2]));
    }

    #[test]
    fn bad_table_rejected() {
        let l = c3();
        assert!(matches!(
            LatticeMap::new(&l, &l, vec![0, 1]),
            Err(Error::SourceTargetMismatch(_))
        ));
        assert!(LatticeMap::new(&l, &l, vec![0, 1, 3]).is_err());
    }

    #[test]
    fn non_join_preserving_has_no_right_adjoint() {
        let l = c3();
        // sends everything to the top, so the empty join is lost
        let f = LatticeMap::new(&l, &l, vec![2, 2, 2]).unwrap();
        assert_eq!(right_adjoint(&f), Err(Bits::EMPTY));
        let id = LatticeMap::identity(&l);
        assert_eq!(right_adjoint(&id), Ok(vec![0, 1, 2]));
        assert_eq!(left_adjoint(&id), Ok(vec![0, 1, 2]));
    }

    #[test]
    fn extensions_of_identity_and_collapse() {
        let l = c3();
        let b = canonical_extension(&l).unwrap();
        let id = LatticeMap::identity(&l);
        let ext: Vec<usize> = b.extension.elements().collect();
        assert_eq!(sigma_extension(&id, &b, &b).unwrap(), ext);
        assert_eq!(pi_extension(&id, &b, &b).unwrap(), ext);

        let s = b4();
        let bs = canonical_extension(&s).unwrap();
        let g = LatticeMap::new(&s, &l, vec![0, 1, 1, 2]).unwrap();
        let sg = sigma_extension(&g, &bs, &b).unwrap();
        let pg = pi_extension(&g, &bs, &b).unwrap();
        assert!(sg.iter().zip(&pg).all(|(&x, &y)| b.extension.leq(x, y)));
    }

    #[test]
    fn non_monotone_rejected() {
        let l = c3();
        let b = canonical_extension(&l).unwrap();
        let f = LatticeMap::new(&l, &l, vec![2, 0, 2]).unwrap();
        assert!(matches!(
            sigma_extension(&f, &b, &b),
            Err(Error::NotMonotone(0, 1))
        ));
    }
}
