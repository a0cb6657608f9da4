//! The distributive-lattice case: `i: A → Idl(A) → Idl(A)^δ`.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::filters::{all_filters, ideal_lattice};
use crate::order::{is_order_isomorphism, FiniteLattice};
use crate::report::Report;

use super::{canonical_extension, CanExtBundle};

#[derive(Debug, Clone)]
pub struct DlatExtension {
    /// The frame bundle for `Idl(A)`.
    pub bundle: CanExtBundle,
    /// The ideals of `A`, indexed as elements of `bundle.source`.
    pub ideals: Vec<Bits>,
    /// `i(a) = e(↓a)`.
    pub i: Vec<usize>,
    pub report: Report,
}

/// Builds `i: A → Idl(A)^δ` and checks the lattice Dense and Compact
/// axioms for it over all filters and ideals of `A`, the correspondence
/// `F ↦ {I : I ∩ F ≠ ∅}` between `Filt(A)` and `Idl(A)_SO`, and that `i` is
/// an injective lattice homomorphism.
pub fn dlat_canonical_extension(a: &FiniteLattice) -> Result<DlatExtension> {
    if let Some((x, y, z)) = a.distributivity_witness() {
        return Err(Error::NotDistributive(x, y, z));
    }
    let (ideals, idl) = ideal_lattice(a);
    let bundle = canonical_extension(&idl)?;
    let ext = &bundle.extension;
    let down_idx: Vec<usize> = a
        .elements()
        .map(|x| ideals.iter().position(|&i| i == a.down(x)).unwrap())
        .collect();
    let i: Vec<usize> = down_idx.iter().map(|&k| bundle.e[k]).collect();
    let filters = all_filters(a);
    let meet_f: Vec<usize> = filters
        .iter()
        .map(|f| ext.meet_all(f.iter().map(|x| i[x]).collect()))
        .collect();
    let join_i: Vec<usize> = ideals
        .iter()
        .map(|id| ext.join_all(id.iter().map(|x| i[x]).collect()))
        .collect();

    let mut r = Report::new("distributive lattice extension");

    let hom_bad = a.elements().find_map(|x| {
        a.elements()
            .find(|&y| {
                i[a.meet(x, y)] != ext.meet(i[x], i[y]) || i[a.join(x, y)] != ext.join(i[x], i[y])
            })
            .map(|y| (x, y))
    });
    let bounds_ok = i[a.bottom()] == ext.bottom() && i[a.top()] == ext.top();
    r.check(
        "i is a lattice homomorphism",
        match (hom_bad, bounds_ok) {
            (Some((x, y)), _) => Some(format!("a={}, b={}", a.label(x), a.label(y))),
            (None, false) => Some("bounds not preserved".into()),
            (None, true) => None,
        },
    );
    r.check_bool(
        "i is injective",
        a.elements()
            .all(|x| a.elements().all(|y| x == y || i[x] != i[y])),
        || "two elements share an image".into(),
    );

    let dense_bad = ext.elements().find_map(|u| {
        ext.elements()
            .filter(|&v| !ext.leq(u, v))
            .find(|&v| {
                !meet_f.iter().any(|&m| {
                    ext.leq(m, u) && join_i.iter().any(|&j| ext.leq(v, j) && !ext.leq(m, j))
                })
            })
            .map(|v| (u, v))
    });
    r.check(
        "Dense (filters and ideals)",
        dense_bad.map(|(u, v)| format!("u={} ≰ v={}", ext.label(u), ext.label(v))),
    );
    let compact_bad = filters.iter().enumerate().find_map(|(fi, &f)| {
        ideals
            .iter()
            .enumerate()
            .find(|&(ii, &id)| ext.leq(meet_f[fi], join_i[ii]) && !f.meets(id))
            .map(|(_, &id)| (f, id))
    });
    r.check(
        "Compact (filters and ideals)",
        compact_bad.map(|(f, id)| format!("F={f}, I={id}")),
    );

    // F ↦ {I : I ∩ F ≠ ∅}
    let so = &bundle.scott_open;
    let mut image = Vec::with_capacity(filters.len());
    let mut corr_witness = None;
    for &f in &filters {
        let fam: Bits = (0..ideals.len()).filter(|&k| ideals[k].meets(f)).collect();
        match so.index_of(fam) {
            Some(k) => image.push(k),
            None => {
                corr_witness = Some(format!("{{I : I∩{f} ≠ ∅}} is not a Scott-open filter"));
                break;
            }
        }
    }
    if corr_witness.is_none() {
        let filt = FiniteLattice::from_family_reversed(&filters)?;
        if !is_order_isomorphism(&filt, &so.order, &image) {
            corr_witness = Some("F ↦ {I : I∩F ≠ ∅} is not an order isomorphism".into());
        } else if let Some(k) = (0..filters.len()).find(|&k| meet_f[k] != bundle.e_so[image[k]]) {
            corr_witness = Some(format!("⋀i[F] ≠ e_SO(F') for F={}", filters[k]));
        }
    }
    r.check("Filt(A) ≅ Idl(A)_SO", corr_witness);

    Ok(DlatExtension {
        bundle,
        ideals,
        i,
        report: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{b4, c3, m3, two};
    use crate::order::find_isomorphism;

    #[test]
    fn small_distributive_lattices() {
        for a in [two(), c3(), b4()] {
            let d = dlat_canonical_extension(&a).unwrap();
            assert!(d.report.passed(), "{}", d.report);
            assert!(find_isomorphism(&d.bundle.extension, &a).is_some());
        }
    }

    #[test]
    fn diamond_rejected() {
        assert!(matches!(
            dlat_canonical_extension(&m3()),
            Err(Error::NotDistributive(..))
        ));
    }
}
