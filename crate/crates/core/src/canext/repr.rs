//! Comparing bundles, and `L^δ` as intersections of Scott-open filters.

use std::collections::BTreeSet;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::filters::scott_open_poset;
use crate::order::{is_order_isomorphism, FiniteLattice};

use super::{canonical_extension, require_frame, CanExtBundle, Provenance};

/// The isomorphism `ι: b1.extension → b2.extension` commuting with both
/// `e` and `e_SO`, derived as `ι(u) = ⋁{e2_SO(F) : e1_SO(F) ≤ u}` and then
/// checked. Both bundles must share the source and its filter indexing.
pub fn bundle_isomorphism(b1: &CanExtBundle, b2: &CanExtBundle) -> Result<Vec<usize>> {
    if !b1.source.same_order(&b2.source) || b1.scott_open.filters != b2.scott_open.filters {
        return Err(Error::SourceTargetMismatch(
            "bundles are over different sources or filter indexings".into(),
        ));
    }
    let (x1, x2) = (&b1.extension, &b2.extension);
    if x1.size() != x2.size() {
        return Err(Error::NotIsomorphic(format!(
            "extensions have {} and {} elements",
            x1.size(),
            x2.size()
        )));
    }
    let iota: Vec<usize> = x1
        .elements()
        .map(|u| {
            x2.join_all(
                (0..b1.e_so.len())
                    .filter(|&i| x1.leq(b1.e_so[i], u))
                    .map(|i| b2.e_so[i])
                    .collect(),
            )
        })
        .collect();
    if !is_order_isomorphism(x1, x2, &iota) {
        return Err(Error::NotIsomorphic(
            "derived map is not an order isomorphism".into(),
        ));
    }
    if let Some(a) = b1.source.elements().find(|&a| iota[b1.e[a]] != b2.e[a]) {
        return Err(Error::NotIsomorphic(format!(
            "ι∘e differs at {}",
            b1.source.label(a)
        )));
    }
    if let Some(i) = (0..b1.e_so.len()).find(|&i| iota[b1.e_so[i]] != b2.e_so[i]) {
        return Err(Error::NotIsomorphic(format!(
            "ι∘e_SO differs at {}",
            b1.scott_open.filters[i]
        )));
    }
    Ok(iota)
}

/// Transports a bundle over `M` to one over `L` along an isomorphism
/// `phi: L → M` given as an element table; Scott-open filters are matched
/// by their images.
pub fn reindex_space_bundle(
    b: &CanExtBundle,
    l: &FiniteLattice,
    phi: &[usize],
) -> Result<CanExtBundle> {
    if !is_order_isomorphism(l, &b.source, phi) {
        return Err(Error::NotIsomorphic(
            "point-set map is not an isomorphism onto the opens".into(),
        ));
    }
    let so = scott_open_poset(l)?;
    let mut e_so = Vec::with_capacity(so.len());
    for &f in &so.filters {
        let image: Bits = f.iter().map(|a| phi[a]).collect();
        let idx = b.scott_open.index_of(image).ok_or_else(|| {
            Error::NotIsomorphic(format!("image of filter {f} is not Scott-open"))
        })?;
        e_so.push(b.e_so[idx]);
    }
    Ok(CanExtBundle {
        source: l.clone(),
        extension: b.extension.clone(),
        scott_open: so,
        e: phi.iter().map(|&m| b.e[m]).collect(),
        e_so,
        provenance: b.provenance,
    })
}

/// Filters that are intersections of Scott-open filters (the empty
/// intersection being `L`), ordered by reverse inclusion, with
/// `e(a) = ⋂{F : a ∈ F}` and `e_SO(F) = F`; returned with the isomorphism
/// to the polarity-built extension.
pub fn intersection_filter_representation(l: &FiniteLattice) -> Result<(CanExtBundle, Vec<usize>)> {
    require_frame(l)?;
    let so = scott_open_poset(l)?;
    let mut family: BTreeSet<Bits> = so.filters.iter().copied().collect();
    family.insert(l.all());
    loop {
        let current: Vec<Bits> = family.iter().copied().collect();
        let before = family.len();
        for (i, &f) in current.iter().enumerate() {
            for &g in &current[i + 1..] {
                family.insert(f.intersect(g));
            }
        }
        if family.len() == before {
            break;
        }
    }
    let sets: Vec<Bits> = family.into_iter().collect();
    let index = |s: Bits| sets.iter().position(|&t| t == s).unwrap();
    let extension = FiniteLattice::from_family_reversed(&sets)?
        .with_names(sets.iter().map(|s| s.to_string()).collect());
    let e = l
        .elements()
        .map(|a| {
            index(
                so.filters
                    .iter()
                    .filter(|f| f.contains(a))
                    .fold(l.all(), |acc, &f| acc.intersect(f)),
            )
        })
        .collect();
    let e_so = so.filters.iter().map(|&f| index(f)).collect();
    let bundle = CanExtBundle {
        source: l.clone(),
        extension,
        scott_open: so,
        e,
        e_so,
        provenance: Provenance::FilterRepresentation,
    };
    let iso = bundle_isomorphism(&bundle, &canonical_extension(l)?)?;
    Ok((bundle, iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canext::identity_bundle;
    use crate::corpus::{b4, c3, two};

    #[test]
    fn representation_sizes() {
        assert_eq!(
            intersection_filter_representation(&c3())
                .unwrap()
                .0
                .extension
                .size(),
            3
        );
        assert_eq!(
            intersection_filter_representation(&b4())
                .unwrap()
                .0
                .extension
                .size(),
            4
        );
        assert_eq!(
            intersection_filter_representation(&two())
                .unwrap()
                .0
                .extension
                .size(),
            2
        );
    }

    #[test]
    fn identity_bundle_matches_polarity_bundle() {
        for l in [two(), c3(), b4()] {
            let iso = bundle_isomorphism(
                &identity_bundle(&l).unwrap(),
                &canonical_extension(&l).unwrap(),
            );
            assert!(iso.is_ok());
        }
    }

    #[test]
    fn shifted_e_is_not_commuting() {
        let l = b4();
        let b = canonical_extension(&l).unwrap();
        let mut bad = b.clone();
        bad.e.swap(1, 2);
        assert!(bundle_isomorphism(&b, &bad).is_err());
    }
}
