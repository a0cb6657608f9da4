//! Points, monotone maps of spectra, and their lifts through `L^δ`.

use std::collections::HashMap;

use crate::bits::Bits;
use crate::canext::{bundle_isomorphism, canonical_extension, reindex_space_bundle, CanExtBundle};
use crate::corpus::two;
use crate::error::{Error, Result};
use crate::order::FiniteLattice;
use crate::report::Report;
use crate::spaces::{points, saturated_sets, space_canext_oracle, specialization, Spectrum};

use super::lemmas::complete_hom_check;
use super::{frame_homs, monotone_maps, LatticeMap};

/// `Mon(pt L, pt M)` against `Frm(M, L^δ)`.
#[derive(Debug, Clone)]
pub struct MonotoneCorrespondence {
    /// Monotone maps of points, as tables `pt L → pt M`.
    pub mon: Vec<Vec<usize>>,
    /// Frame homomorphisms `M → L^δ`, as tables.
    pub frm: Vec<Vec<usize>>,
    /// `bijection[i]` indexes in `frm` the hom built from `mon[i]`.
    pub bijection: Vec<usize>,
    pub report: Report,
}

/// `L^δ` together with the isomorphism `ι: Up(pt L) → L^δ` obtained by
/// comparing the space-side bundle with the polarity bundle.
struct UpModel {
    bundle: CanExtBundle,
    spectrum: Spectrum,
    up_sets: Vec<Bits>,
    iota: Vec<usize>,
    iota_inv: Vec<usize>,
}

fn up_model(l: &FiniteLattice) -> Result<UpModel> {
    let bundle = canonical_extension(l)?;
    let spectrum = points(l)?;
    let (oracle, _) = space_canext_oracle(&spectrum.space)?;
    let oracle = reindex_space_bundle(&oracle, l, &spectrum.open_of)?;
    let iota = bundle_isomorphism(&oracle, &bundle)?;
    let mut iota_inv = vec![0; iota.len()];
    for (u, &v) in iota.iter().enumerate() {
        iota_inv[v] = u;
    }
    let (up_sets, _) = saturated_sets(&spectrum.space);
    Ok(UpModel {
        bundle,
        spectrum,
        up_sets,
        iota,
        iota_inv,
    })
}

/// Builds `φ ↦ (b ↦ ι(φ⁻¹{q : b ∈ q}))` from monotone point maps to frame
/// homs `M → L^δ`, checks it against an independent enumeration of those
/// homs, and checks the inverse `h ↦ (p ↦ the point {b : p ∈ ι⁻¹h(b)})`.
pub fn monotone_correspondence(
    l: &FiniteLattice,
    m: &FiniteLattice,
) -> Result<MonotoneCorrespondence> {
    let model = up_model(l)?;
    let spec_m = points(m)?;
    let order_l = specialization(&model.spectrum.space);
    let order_m = specialization(&spec_m.space);
    let (np, nq) = (
        model.spectrum.point_filters.len(),
        spec_m.point_filters.len(),
    );
    let mon = monotone_maps(np, |x, y| order_l.leq(x, y), nq, |x, y| order_m.leq(x, y));
    let frm = frame_homs(m, &model.bundle.extension)?;
    let frm_index: HashMap<&[usize], usize> = frm
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let up_index: HashMap<Bits, usize> = model
        .up_sets
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();
    // O_b = {q : b ∈ F_q}
    let opens_m: Vec<Bits> = m
        .elements()
        .map(|b| {
            (0..nq)
                .filter(|&q| spec_m.point_filters[q].contains(b))
                .collect()
        })
        .collect();

    let mut r = Report::new("monotone maps of spectra");
    r.check_bool(
        "|Mon(pt L, pt M)| = |Frm(M, L^δ)|",
        mon.len() == frm.len(),
        || format!("{} monotone maps, {} frame homs", mon.len(), frm.len()),
    )
    .bound_note = Some(format!("{} each side", mon.len()));

    let mut bijection = Vec::with_capacity(mon.len());
    let mut missing = None;
    for phi in &mon {
        let h: Vec<usize> = opens_m
            .iter()
            .map(|&o| {
                let pre: Bits = (0..np).filter(|&p| o.contains(phi[p])).collect();
                model.iota[up_index[&pre]]
            })
            .collect();
        match frm_index.get(h.as_slice()) {
            Some(&i) => bijection.push(i),
            None => {
                missing.get_or_insert_with(|| format!("φ = {phi:?} gives {h:?}"));
            }
        }
    }
    r.check("φ ↦ h_φ lands in Frm(M, L^δ)", missing);
    let mut seen = bijection.clone();
    seen.sort_unstable();
    seen.dedup();
    r.check_bool(
        "φ ↦ h_φ is injective",
        seen.len() == bijection.len(),
        || "two monotone maps give the same hom".into(),
    );

    // inverse direction, from each enumerated hom
    let mut inverse_bad = None;
    for (i, h) in frm.iter().enumerate() {
        let phi: Option<Vec<usize>> = (0..np)
            .map(|p| {
                let filt: Bits = m
                    .elements()
                    .filter(|&b| model.up_sets[model.iota_inv[h[b]]].contains(p))
                    .collect();
                spec_m.point_filters.iter().position(|&f| f == filt)
            })
            .collect();
        let back = phi
            .as_ref()
            .and_then(|phi| mon.iter().position(|t| t == phi))
            .and_then(|k| bijection.get(k).copied());
        if back != Some(i) {
            inverse_bad.get_or_insert_with(|| format!("hom {h:?} does not round-trip"));
        }
    }
    r.check("h ↦ φ_h inverts φ ↦ h_φ", inverse_bad);

    Ok(MonotoneCorrespondence {
        mon,
        frm,
        bijection,
        report: r,
    })
}

fn require_point(p: &LatticeMap) -> Result<()> {
    if p.target.size() != 2 || !p.target.same_order(&two()) {
        return Err(Error::NotAPoint("target is not 2".into()));
    }
    if !p.classify().frame_hom() {
        return Err(Error::NotAPoint(format!("{}", p.classify())));
    }
    Ok(())
}

/// `p^δ(u) = ⋀ p[{a : u ≤ e(a)}]` for a point `p: L → 2`, with the report
/// that `p^δ∘e = p` and that `p^δ` is a complete lattice homomorphism.
pub fn point_lift(p: &LatticeMap, b: &CanExtBundle) -> Result<(Vec<usize>, Report)> {
    require_point(p)?;
    if !b.source.same_order(p.source) {
        return Err(Error::SourceTargetMismatch(
            "bundle is not over the point's frame".into(),
        ));
    }
    let (l, x, t) = (p.source, &b.extension, p.target);
    let lifted: Vec<usize> = x
        .elements()
        .map(|u| {
            t.meet_all(
                l.elements()
                    .filter(|&a| x.leq(u, b.e[a]))
                    .map(|a| p.table[a])
                    .collect(),
            )
        })
        .collect();
    let mut r = Report::new("point lift");
    r.check(
        "p^δ∘e = p",
        l.elements()
            .find(|&a| lifted[b.e[a]] != p.table[a])
            .map(|a| format!("at {}", l.label(a))),
    );
    r.absorb("lift", complete_hom_check("p^δ", x, t, &lifted));
    Ok((lifted, r))
}

/// `pt(L)` against the complete points `r: L^δ → 2`: lifting and
/// restriction are mutually inverse, and the opens `{p : p^δ(u) = 1}` are
/// exactly the upsets of the specialization order.
pub fn pt_c_homeomorphism(l: &FiniteLattice, b: &CanExtBundle) -> Result<Report> {
    let spectrum = points(l)?;
    let t = two();
    let x = &b.extension;
    let mut r = Report::new("complete points of the extension");

    let mut lifts = Vec::new();
    let mut lift_fail = None;
    for q in 0..spectrum.point_filters.len() {
        let p = LatticeMap::new(l, &t, spectrum.point_table(q))?;
        let (lifted, rep) = point_lift(&p, b)?;
        if !rep.passed() && lift_fail.is_none() {
            lift_fail = Some(format!(
                "point {q}: {}",
                rep.failures().next().unwrap().name
            ));
        }
        lifts.push(lifted);
    }
    r.check("every point lifts to a complete point", lift_fail);

    // Complete points of L^δ are u ↦ [u₀ ≤ u] for u₀ completely join-prime;
    // candidates are all principal upsets, kept when they preserve joins.
    let complete: Vec<Vec<usize>> = x
        .elements()
        .map(|u0| {
            x.elements()
                .map(|u| usize::from(x.leq(u0, u)))
                .collect::<Vec<_>>()
        })
        .filter(|table| complete_hom_check("r", x, &t, table).passed())
        .collect();
    let mut restrict_bad = None;
    let mut restricted = Vec::new();
    for rt in &complete {
        let back: Vec<usize> = l.elements().map(|a| rt[b.e[a]]).collect();
        match (0..spectrum.point_filters.len()).find(|&q| spectrum.point_table(q) == back) {
            Some(q) => restricted.push(q),
            None => {
                restrict_bad.get_or_insert_with(|| format!("r∘e = {back:?} is not a point"));
            }
        }
    }
    r.check("r ↦ r∘e lands in pt(L)", restrict_bad);
    let round_trip = restricted.len() == complete.len()
        && complete.len() == lifts.len()
        && restricted
            .iter()
            .zip(&complete)
            .all(|(&q, rt)| &lifts[q] == rt);
    r.check_bool(
        "p ↦ p^δ and r ↦ r∘e are mutually inverse",
        round_trip,
        || format!("{} points, {} complete points", lifts.len(), complete.len()),
    );

    let (up_sets, _) = saturated_sets(&spectrum.space);
    let mut opens: Vec<Bits> = x
        .elements()
        .map(|u| (0..lifts.len()).filter(|&q| lifts[q][u] == 1).collect())
        .collect();
    let injective = {
        let mut o = opens.clone();
        o.sort();
        o.dedup();
        o.len() == opens.len()
    };
    opens.sort();
    let mut ups = up_sets.clone();
    ups.sort();
    r.check_bool(
        "opens {p : p^δ(u) = 1} are Up(pt L)",
        injective && opens == ups,
        || format!("{} distinct opens, {} upsets", opens.len(), ups.len()),
    );
    Ok(r)
}

/// `pt(h)` by precomposition and `Ω(pt h)` by preimage for a frame hom
/// `h: L → M`, checked against the spatial reflection of `h`.
pub fn omega_pt_actions(h: &LatticeMap) -> Result<Report> {
    if !h.classify().frame_hom() {
        return Err(Error::NotAFrameHom(format!("{}", h.classify())));
    }
    let sl = points(h.source)?;
    let sm = points(h.target)?;
    let mut r = Report::new("pt and Ω on morphisms");
    // pt(h)(q) = q ∘ h
    let mut pt_h = Vec::with_capacity(sm.point_filters.len());
    let mut bad = None;
    for &fq in &sm.point_filters {
        let pulled: Bits = h.preimage(fq);
        match sl.point_filters.iter().position(|&f| f == pulled) {
            Some(p) => pt_h.push(p),
            None => {
                bad.get_or_insert_with(|| format!("q∘h for q = {fq} is not a point"));
            }
        }
    }
    r.check("pt(h) lands in pt(L)", bad);
    if pt_h.len() == sm.point_filters.len() {
        let ol = sl.space.opens();
        let om = sm.space.opens();
        let w = h.source.elements().find(|&a| {
            let pre: Bits = (0..pt_h.len())
                .filter(|&q| ol[sl.open_of[a]].contains(pt_h[q]))
                .collect();
            pre != om[sm.open_of[h.table[a]]]
        });
        r.check(
            "Ω(pt h) ∘ spatial = spatial ∘ h",
            w.map(|a| format!("at {}", h.source.label(a))),
        );
        let order_l = specialization(&sl.space);
        let order_m = specialization(&sm.space);
        let mono = (0..pt_h.len())
            .all(|x| (0..pt_h.len()).all(|y| !order_m.leq(x, y) || order_l.leq(pt_h[x], pt_h[y])));
        r.check_bool("pt(h) is monotone", mono, || {
            "specialization not preserved".into()
        });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{b4, c3};

    #[test]
    fn chain_counts() {
        let c = monotone_correspondence(&c3(), &c3()).unwrap();
        assert_eq!((c.mon.len(), c.frm.len()), (3, 3));
        assert!(c.report.passed(), "{}", c.report);
        let c = monotone_correspondence(&two(), &two()).unwrap();
        assert_eq!((c.mon.len(), c.frm.len()), (1, 1));
    }

    #[test]
    fn b4_to_c3_counts_match() {
        let c = monotone_correspondence(&b4(), &c3()).unwrap();
        assert!(c.report.passed(), "{}", c.report);
        // two discrete points into a 2-chain
        assert_eq!(c.mon.len(), 4);
    }

    #[test]
    fn point_lifts() {
        let t = two();
        let id = LatticeMap::identity(&t);
        let b = canonical_extension(&t).unwrap();
        let (lifted, r) = point_lift(&id, &b).unwrap();
        assert!(r.passed());
        assert_eq!(lifted, b.e);

        let l = c3();
        let b = canonical_extension(&l).unwrap();
        let p = LatticeMap::new(&l, &t, vec![0, 1, 1]).unwrap();
        let (_, r) = point_lift(&p, &b).unwrap();
        assert!(r.passed(), "{r}");
        let not_point = LatticeMap::new(&l, &t, vec![0, 0, 0]).unwrap();
        assert!(matches!(
            point_lift(&not_point, &b),
            Err(Error::NotAPoint(_))
        ));

        for l in [b4(), c3()] {
            let b = canonical_extension(&l).unwrap();
            let r = pt_c_homeomorphism(&l, &b).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn morphism_actions() {
        let l = c3();
        let h = LatticeMap::new(&l, &l, vec![0, 2, 2]).unwrap();
        assert!(omega_pt_actions(&h).unwrap().passed());
    }
}
