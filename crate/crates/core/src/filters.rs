//! Filters, ideals, `Filt(L)`, `Idl(L)` and the poset `L_SO` of Scott-open
//! filters.
//!
//! Filters are kept as explicit element sets and every definition is run as
//! stated; that all filters of a finite lattice are principal and
//! Scott-open is checked, never assumed.

use crate::bits::{next_closure_all, Bits};
use crate::error::{Error, Result};
use crate::order::FiniteLattice;
use crate::report::Report;

/// Smallest filter containing `s`: close under binary meets, add the top,
/// take the up-closure.
pub fn filter_closure(l: &FiniteLattice, s: Bits) -> Bits {
    let mut acc = s.with(l.top());
    loop {
        let mut next = acc;
        for x in acc.iter() {
            for y in acc.iter() {
                next.insert(l.meet(x, y));
            }
        }
        if next == acc {
            return l.up_closure(acc);
        }
        acc = next;
    }
}

/// Smallest ideal containing `s`.
pub fn ideal_closure(l: &FiniteLattice, s: Bits) -> Bits {
    let mut acc = s.with(l.bottom());
    loop {
        let mut next = acc;
        for x in acc.iter() {
            for y in acc.iter() {
                next.insert(l.join(x, y));
            }
        }
        if next == acc {
            return l.down_closure(acc);
        }
        acc = next;
    }
}

/// Why `s` is not a filter, if it is not.
pub fn filter_violation(l: &FiniteLattice, s: Bits) -> Option<String> {
    if !s.contains(l.top()) {
        return Some(format!("{s} does not contain the top"));
    }
    for x in s.iter() {
        if let Some(y) = l.up(x).minus(s).first() {
            return Some(format!("{s} contains {x} but not {y} ≥ {x}"));
        }
        for y in s.iter() {
            if !s.contains(l.meet(x, y)) {
                return Some(format!(
                    "{s} contains {x} and {y} but not their meet {}",
                    l.meet(x, y)
                ));
            }
        }
    }
    None
}

pub fn is_filter(l: &FiniteLattice, s: Bits) -> bool {
    filter_violation(l, s).is_none()
}

pub fn ideal_violation(l: &FiniteLattice, s: Bits) -> Option<String> {
    filter_violation(&l.opposite(), s)
}

pub fn is_ideal(l: &FiniteLattice, s: Bits) -> bool {
    s.contains(l.bottom())
        && s.iter()
            .all(|x| l.down(x).is_subset(s) && s.iter().all(|y| s.contains(l.join(x, y))))
}

/// All filters in lectic order. Panics if the count differs from the
/// lattice size, which would contradict principality.
pub fn all_filters(l: &FiniteLattice) -> Vec<Bits> {
    let out = next_closure_all(l.size(), |s| filter_closure(l, s));
    assert_eq!(
        out.len(),
        l.size(),
        "a finite lattice has one filter per element"
    );
    out
}

/// All ideals in lectic order.
pub fn all_ideals(l: &FiniteLattice) -> Vec<Bits> {
    let out = next_closure_all(l.size(), |s| ideal_closure(l, s));
    assert_eq!(
        out.len(),
        l.size(),
        "a finite lattice has one ideal per element"
    );
    out
}

/// Scott-openness from the definition: every directed `D` with `⋁D ∈ F`
/// meets `F`. Exhaustive over directed subsets up to the lattice's subset
/// bound; see [`FiniteLattice::directed_subsets`].
pub fn is_scott_open(l: &FiniteLattice, f: Bits) -> Result<bool> {
    if let Some(why) = filter_violation(l, f) {
        return Err(Error::NotAFilter(why));
    }
    let (directed, _) = l.directed_subsets();
    Ok(directed
        .iter()
        .all(|&d| !f.contains(l.join_all(d)) || d.meets(f)))
}

/// `Filt(L)` under reverse inclusion, elements in lectic order.
pub fn filter_lattice(l: &FiniteLattice) -> (Vec<Bits>, FiniteLattice) {
    let filters = all_filters(l);
    let lattice = FiniteLattice::from_family_reversed(&filters)
        .expect("filters of a finite lattice form a lattice");
    (filters, lattice)
}

/// `Idl(L)` under inclusion, elements in lectic order.
pub fn ideal_lattice(l: &FiniteLattice) -> (Vec<Bits>, FiniteLattice) {
    let ideals = all_ideals(l);
    let lattice =
        FiniteLattice::from_family(&ideals).expect("ideals of a finite lattice form a lattice");
    (ideals, lattice)
}

/// `{f ∧ g : f ∈ F, g ∈ G}`
pub fn pointwise_meet(l: &FiniteLattice, f: Bits, g: Bits) -> Bits {
    f.iter()
        .flat_map(|x| g.iter().map(move |y| l.meet(x, y)))
        .collect()
}

/// Checks the description of the operations of `Filt(L)`: directed unions
/// for filtered meets, intersections for binary joins, pointwise meets for
/// binary meets; and that `Filt(L)` is a coframe and `Idl(L)` a frame.
pub fn filter_lattice_ops(l: &FiniteLattice) -> Report {
    let mut r = Report::new("filter and ideal lattices");
    let (filters, filt) = filter_lattice(l);
    let (ideals, idl) = ideal_lattice(l);
    let index = |s: Bits| filters.iter().position(|&f| f == s);

    r.check_bool(
        "filters are principal",
        filters.iter().all(|&f| f == l.up(l.meet_all(f))),
        || "some filter is not ↑ of its meet".into(),
    );
    r.check_bool(
        "ideals are principal",
        ideals.iter().all(|&i| i == l.down(l.join_all(i))),
        || "some ideal is not ↓ of its join".into(),
    );

    let mut join_witness = None;
    let mut meet_witness = None;
    'pairs: for i in filt.elements() {
        for j in filt.elements() {
            let cap = filters[i].intersect(filters[j]);
            if index(cap) != Some(filt.join(i, j)) {
                join_witness = Some(format!("F={} G={}", filters[i], filters[j]));
                break 'pairs;
            }
            let pm = pointwise_meet(l, filters[i], filters[j]);
            if index(pm) != Some(filt.meet(i, j)) {
                meet_witness = Some(format!(
                    "F={} G={}: {{f∧g}} = {pm} is not the meet",
                    filters[i], filters[j]
                ));
                break 'pairs;
            }
        }
    }
    r.check("F∨G = F∩G", join_witness);
    r.check("F∧G = {f∧g}", meet_witness);

    // families directed under inclusion are the filtered ones in Filt(L)
    let by_inclusion = filt.opposite();
    let (families, exhaustive) = by_inclusion.directed_subsets();
    let bad = families.iter().find(|&&fam| {
        let union = fam.iter().fold(Bits::EMPTY, |acc, k| acc.union(filters[k]));
        index(union) != Some(filt.meet_all(fam))
    });
    let entry = r.check(
        "filtered meet = directed union",
        bad.map(|fam| format!("family {fam}")),
    );
    if !exhaustive {
        entry.bound_note =
            Some("families of at most 3 filters (Filt(L) exceeds subset bound)".into());
    }

    r.check_bool("Filt(L) is a coframe", filt.opposite().is_frame(), || {
        "opposite of Filt(L) fails the frame law".into()
    });
    r.check_bool("Idl(L) is a frame", idl.is_frame(), || {
        "Idl(L) fails the frame law".into()
    });
    r
}

/// The Scott-open filters of a frame ordered by reverse inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScottOpenFilterPoset {
    /// In lectic order; element `i` of `order` is `filters[i]`.
    pub filters: Vec<Bits>,
    pub order: FiniteLattice,
    /// Whether Scott-openness was decided over all directed subsets.
    pub exhaustive: bool,
    /// Whether every filter turned out to be Scott-open.
    pub all_filters_scott_open: bool,
}

impl ScottOpenFilterPoset {
    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn index_of(&self, f: Bits) -> Option<usize> {
        self.filters.iter().position(|&g| g == f)
    }
}

pub fn scott_open_poset(l: &FiniteLattice) -> Result<ScottOpenFilterPoset> {
    if !l.is_frame() {
        return Err(Error::NotAFrame(
            "Scott-open filters are taken in a frame".into(),
        ));
    }
    let candidates = all_filters(l);
    let mut filters = Vec::with_capacity(candidates.len());
    for f in &candidates {
        if is_scott_open(l, *f)? {
            filters.push(*f);
        }
    }
    let order = FiniteLattice::from_family_reversed(&filters)?;
    Ok(ScottOpenFilterPoset {
        all_filters_scott_open: filters.len() == candidates.len(),
        filters,
        order,
        exhaustive: l.directed_subsets().1,
    })
}

/// `c ≪ a` iff some Scott-open `U` has `a ∈ U ⊆ ↑c`; returned as
/// `below[a] = {c : c ≪ a}`.
pub fn way_below_from_filters(l: &FiniteLattice, so: &ScottOpenFilterPoset) -> Vec<Bits> {
    l.elements()
        .map(|a| {
            l.elements()
                .filter(|&c| {
                    so.filters
                        .iter()
                        .any(|&u| u.contains(a) && u.is_subset(l.up(c)))
                })
                .collect()
        })
        .collect()
}

/// Whether the filter characterisation of `≪` agrees with the definition.
pub fn way_below_characterisation_agrees(l: &FiniteLattice) -> Result<bool> {
    let wb = l.way_below()?;
    let so = scott_open_poset(l)?;
    let via = way_below_from_filters(l, &so);
    Ok(l.elements().all(|a| via[a] == wb.way_below_set(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::all_subsets;
    use crate::corpus::{b4, c3, downset_corpus, m3, two};
    use crate::order::find_isomorphism;

    /// Brute force: every subset checked against the filter axioms.
    fn brute_filters(l: &FiniteLattice) -> Vec<Bits> {
        all_subsets(l.size())
            .filter(|&s| {
                s.contains(l.top())
                    && s.iter().all(|x| {
                        l.elements().all(|y| !l.leq(x, y) || s.contains(y))
                            && s.iter().all(|y| s.contains(l.meet(x, y)))
                    })
            })
            .collect()
    }

    #[test]
    fn c3_filters() {
        let l = c3();
        let mut fs = all_filters(&l);
        fs.sort();
        let mut expected = vec![l.up(2), l.up(1), l.up(0)];
        expected.sort();
        assert_eq!(fs, expected);
        assert_eq!(all_filters(&two()).len(), 2);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for l in [two(), c3(), b4(), m3()] {
            let mut fs = all_filters(&l);
            fs.sort();
            assert_eq!(fs, brute_filters(&l));
            assert_eq!(all_ideals(&l).len(), l.size());
        }
    }

    #[test]
    fn scott_openness_examples() {
        let l = b4();
        for f in all_filters(&l) {
            assert!(is_scott_open(&l, f).unwrap());
        }
        // {a, b, 1}: a∧b = 0 missing
        let bad = Bits::from_indices([1, 2, 3]);
        assert!(matches!(is_scott_open(&l, bad), Err(Error::NotAFilter(_))));
    }

    #[test]
    fn filter_lattice_shapes() {
        let (_, filt) = filter_lattice(&c3());
        assert!(find_isomorphism(&filt, &c3()).is_some());
        let (_, idl) = ideal_lattice(&b4());
        assert!(find_isomorphism(&idl, &b4()).is_some());
        let l = b4();
        assert_eq!(pointwise_meet(&l, l.up(1), l.up(2)), l.up(0));
    }

    #[test]
    fn filter_ops_report_passes() {
        for l in [two(), c3(), b4()] {
            let r = filter_lattice_ops(&l);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn scott_open_poset_examples() {
        let so = scott_open_poset(&c3()).unwrap();
        assert_eq!(so.len(), 3);
        assert!(find_isomorphism(&so.order, &c3()).is_some());
        assert_eq!(scott_open_poset(&two()).unwrap().len(), 2);
        assert_eq!(scott_open_poset(&b4()).unwrap().len(), 4);
        assert!(matches!(scott_open_poset(&m3()), Err(Error::NotAFrame(_))));
    }

    #[test]
    fn corpus_scott_open_filters_are_all_filters() {
        for e in downset_corpus().iter().filter(|e| e.lattice.size() <= 12) {
            let so = scott_open_poset(&e.lattice).unwrap();
            assert!(so.all_filters_scott_open, "{}", e.id);
            assert!(way_below_characterisation_agrees(&e.lattice).unwrap());
        }
    }
}
