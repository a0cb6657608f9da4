//! Every check this crate knows, run against one frame.

use crate::canext::{
    bundle_isomorphism, canonical_extension, dlat_canonical_extension, frame_coframe_check,
    intersection_filter_representation, reindex_space_bundle, verify_basic_properties,
    verify_compact, verify_compact_plus, verify_dense, DEFAULT_SEED,
};
use crate::error::{Error, Result};
use crate::filters::filter_lattice_ops;
use crate::maps::{
    frame_homs, functor_check, lift_perfect_hom, monotone_correspondence, omega_pt_actions,
    perfect_equivalences, pt_c_homeomorphism, verify_extension_lemmas, LatticeMap,
};
use crate::order::FiniteLattice;
use crate::proximity::matches_distributive_pipeline;
use crate::report::Report;
use crate::spaces::{hofmann_mislove_check, points, saturated_polarity_check, space_canext_oracle};
use crate::sublocales::{
    fitted_and_compact, injectivity_criterion, sublocale_coframe, sublocale_report, SUBLOCALE_BOUND,
};

/// Endomorphism checks run only on frames up to this size.
pub const ENDO_MAP_BOUND: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Size ceiling for the exhaustive sweeps (sublocales, spectra maps).
    pub bound: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            bound: SUBLOCALE_BOUND,
            seed: DEFAULT_SEED,
        }
    }
}

/// Absorbs a fallible sub-report; size-bound errors become skipped entries.
pub fn absorb_result(r: &mut Report, prefix: &str, res: Result<Report>) {
    match res {
        Ok(sub) => r.absorb(prefix, sub),
        Err(Error::SizeBound { what, size, bound }) => {
            r.skip(prefix, format!("{what} of size {size} above bound {bound}"));
        }
        Err(e) => {
            r.check(prefix, Some(e.to_string()));
        }
    }
}

fn bounded(
    r: &mut Report,
    prefix: &str,
    size: usize,
    bound: usize,
    f: impl FnOnce() -> Result<Report>,
) {
    if size > bound {
        r.skip(prefix, format!("size {size} above bound {bound}"));
    } else {
        absorb_result(r, prefix, f());
    }
}

/// Runs the whole suite on `l`. Non-frames get a single failing entry.
pub fn verify_frame(subject: &str, l: &FiniteLattice, opts: SuiteOptions) -> Report {
    let mut r = Report::new(subject);
    if let Some(v) = l.frame_law_witness() {
        r.check(
            "order/is a frame",
            Some(format!("family {} and b={}", v.family, v.b)),
        );
        return r;
    }
    r.check("order/is a frame", None);
    r.check_bool("order/distributive", l.is_distributive(), || {
        "not distributive".into()
    });
    r.check_result(
        "order/stably locally compact",
        &l.is_stably_locally_compact().and_then(|ok| {
            ok.then_some(())
                .ok_or_else(|| Error::NotAFrame("not stably locally compact".into()))
        }),
    );
    r.absorb("filters", filter_lattice_ops(l));

    let b = match canonical_extension(l) {
        Ok(b) => b,
        Err(e) => {
            r.check("canext/build", Some(e.to_string()));
            return r;
        }
    };
    r.push(crate::report::CheckEntry::pass("canext/build"))
        .bound_note = Some(format!(
        "{} Scott-open filters, extension of size {}",
        b.scott_open.len(),
        b.extension.size()
    ));
    r.absorb("canext", verify_dense(&b));
    r.absorb("canext", verify_compact(&b));
    r.absorb("canext", verify_compact_plus(&b));
    r.absorb("canext", verify_basic_properties(&b, opts.seed));
    r.absorb("canext", frame_coframe_check(&b));

    absorb_result(
        &mut r,
        "repr/space oracle",
        (|| {
            let spectrum = points(l)?;
            let (ob, or) = space_canext_oracle(&spectrum.space)?;
            let ob = reindex_space_bundle(&ob, l, &spectrum.open_of)?;
            bundle_isomorphism(&ob, &b)?;
            let mut sub = or;
            sub.check("isomorphic with commuting e, e_SO", None);
            sub.absorb("hofmann-mislove", hofmann_mislove_check(&spectrum.space)?);
            sub.absorb(
                "saturated polarity",
                saturated_polarity_check(&spectrum.space)?,
            );
            Ok(sub)
        })(),
    );
    absorb_result(
        &mut r,
        "repr/intersections",
        (|| {
            intersection_filter_representation(l)?;
            let mut sub = Report::new("intersections");
            sub.check("isomorphic with commuting e, e_SO", None);
            Ok(sub)
        })(),
    );
    bounded(&mut r, "points", l.size(), opts.bound, || {
        pt_c_homeomorphism(l, &b)
    });

    bounded(&mut r, "sublocales", l.size(), opts.bound, || {
        let sl = sublocale_coframe(l)?;
        let mut sub = sublocale_report(l, &sl);
        sub.absorb("compact fitted", fitted_and_compact(l)?.report);
        sub.absorb("injectivity", injectivity_criterion(l)?);
        Ok(sub)
    });

    if l.is_distributive() {
        absorb_result(
            &mut r,
            "distributive",
            dlat_canonical_extension(l).map(|d| d.report),
        );
        absorb_result(&mut r, "proximity", matches_distributive_pipeline(l));
    }

    bounded(&mut r, "spectra maps", l.size(), opts.bound, || {
        Ok(monotone_correspondence(l, l)?.report)
    });
    bounded(
        &mut r,
        "endomorphisms",
        l.size(),
        opts.bound.min(ENDO_MAP_BOUND),
        || endomorphism_report(l, &b),
    );
    r
}

/// Extension lemmas, lifting, functoriality and the perfect-map
/// characterisations over every frame endomorphism pair.
fn endomorphism_report(l: &FiniteLattice, b: &crate::canext::CanExtBundle) -> Result<Report> {
    let homs = frame_homs(l, l)?;
    let maps: Vec<LatticeMap> = homs
        .into_iter()
        .map(|t| LatticeMap::new(l, l, t))
        .collect::<Result<_>>()?;
    let mut sub = Report::new("endomorphisms");
    let mut first_fail: Option<String> = None;
    let mut note = |name: &str, rep: &Report| {
        if first_fail.is_none() {
            if let Some(f) = rep.failures().next() {
                first_fail = Some(format!(
                    "{name}: {} ({})",
                    f.name,
                    f.witness.as_deref().unwrap_or("")
                ));
            }
        }
    };
    for (i, h) in maps.iter().enumerate() {
        note(&format!("hom {i}"), &lift_perfect_hom(h, b, b)?.1);
        note(&format!("hom {i}"), &perfect_equivalences(h)?);
        note(&format!("hom {i}"), &omega_pt_actions(h)?);
        for (j, g) in maps.iter().enumerate() {
            note(
                &format!("pair {i},{j}"),
                &verify_extension_lemmas(h, g, b, b, b)?,
            );
            note(&format!("pair {i},{j}"), &functor_check(h, g, b, b, b)?);
        }
    }
    sub.check("all endomorphism checks", first_fail).bound_note =
        Some(format!("{} frame endomorphisms", maps.len()));
    Ok(sub)
}
