//! Join-strong proximity lattices `(A, R)`, round ideals and filters, and
//! the extension `A → RIdl(A) → RIdl(A)^δ`.

use crate::bits::Bits;
use crate::canext::{
    bundle_isomorphism, canonical_extension, dlat_canonical_extension, verify_compact,
    verify_dense, CanExtBundle,
};
use crate::corpus::{b4, b8};
use crate::error::{Error, Result};
use crate::filters::{all_filters, all_ideals, scott_open_poset};
use crate::order::{is_order_isomorphism, FiniteLattice};
use crate::report::Report;

/// A distributive lattice with a relation, `r[a] = {b : a R b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximityLattice {
    pub base: FiniteLattice,
    pub r: Vec<Bits>,
}

impl ProximityLattice {
    /// Validates the axioms; `AxiomsFail` names the failing ones.
    pub fn new(base: FiniteLattice, r: Vec<Bits>) -> Result<ProximityLattice> {
        let report = check_axioms(&base, &r)?;
        if !report.passed() {
            let failed: Vec<String> = report
                .failures()
                .map(|e| format!("{} ({})", e.name, e.witness.as_deref().unwrap_or("")))
                .collect();
            return Err(Error::AxiomsFail(failed.join("; ")));
        }
        Ok(ProximityLattice { base, r })
    }

    /// `R = ≤`
    pub fn from_order(base: FiniteLattice) -> Result<ProximityLattice> {
        let r = base.elements().map(|a| base.up(a)).collect();
        ProximityLattice::new(base, r)
    }

    pub fn from_pairs(base: FiniteLattice, pairs: &[(usize, usize)]) -> Result<ProximityLattice> {
        let r = relation_from_pairs(&base, pairs)?;
        ProximityLattice::new(base, r)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.r[a].contains(b)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.base
            .elements()
            .flat_map(|a| self.r[a].iter().map(move |b| (a, b)))
            .collect()
    }

    /// `I_a = {b : b R a}`
    pub fn ideal_below(&self, a: usize) -> Bits {
        self.base
            .elements()
            .filter(|&b| self.r[b].contains(a))
            .collect()
    }
}

pub fn relation_from_pairs(base: &FiniteLattice, pairs: &[(usize, usize)]) -> Result<Vec<Bits>> {
    let mut r = vec![Bits::EMPTY; base.size()];
    for &(a, b) in pairs {
        if a >= base.size() || b >= base.size() {
            return Err(Error::IndexOutOfRange(a, b, base.size()));
        }
        r[a].insert(b);
    }
    Ok(r)
}

/// Each of the five axioms by exhaustion, with the first witness of each
/// failure.
pub fn check_axioms(a: &FiniteLattice, r: &[Bits]) -> Result<Report> {
    if let Some((x, y, z)) = a.distributivity_witness() {
        return Err(Error::NotDistributive(x, y, z));
    }
    let rel = |x: usize, y: usize| r[x].contains(y);
    let l = |x: usize| a.label(x);
    let els: Vec<usize> = a.elements().collect();
    let mut rep = Report::new("proximity axioms");

    // R ∘ R = R and R ⊆ ≤
    let w = els.iter().find_map(|&x| {
        els.iter().find_map(|&y| {
            let composed = els.iter().any(|&z| rel(x, z) && rel(z, y));
            if rel(x, y) && !a.leq(x, y) {
                Some(format!("{} R {} but not ≤", l(x), l(y)))
            } else if rel(x, y) != composed {
                Some(format!("R∘R and R differ at ({}, {})", l(x), l(y)))
            } else {
                None
            }
        })
    });
    rep.check("R∘R = R and R ⊆ ≤", w);

    let w = els.iter().find_map(|&x| {
        if !rel(a.bottom(), x) {
            Some(format!("not 0 R {}", l(x)))
        } else if !rel(x, a.top()) {
            Some(format!("not {} R 1", l(x)))
        } else {
            None
        }
    });
    rep.check("0 R a and a R 1", w);

    let w = els.iter().find_map(|&x| {
        els.iter().find_map(|&x2| {
            els.iter()
                .find(|&&y| (rel(x, y) && rel(x2, y)) != rel(a.join(x, x2), y))
                .map(|&y| format!("a={}, a'={}, b={}", l(x), l(x2), l(y)))
        })
    });
    rep.check("a R b and a' R b iff (a∨a') R b", w);

    let w = els.iter().find_map(|&x| {
        els.iter().find_map(|&y| {
            els.iter()
                .find(|&&y2| (rel(x, y) && rel(x, y2)) != rel(x, a.meet(y, y2)))
                .map(|&y2| format!("a={}, b={}, b'={}", l(x), l(y), l(y2)))
        })
    });
    rep.check("a R b and a R b' iff a R (b∧b')", w);

    let w = els.iter().find_map(|&x| {
        els.iter().find_map(|&b| {
            els.iter()
                .filter(|&&c| rel(x, a.join(b, c)))
                .find(|&&c| {
                    !els.iter().any(|&b2| {
                        rel(b2, b) && els.iter().any(|&c2| rel(c2, c) && rel(x, a.join(b2, c2)))
                    })
                })
                .map(|&c| format!("a={}, b={}, c={}", l(x), l(b), l(c)))
        })
    });
    rep.check("a R (b∨c) interpolates through b' R b, c' R c", w);
    Ok(rep)
}

/// `RIdl(A)` and the round filters.
#[derive(Debug, Clone)]
pub struct RoundIdeals {
    pub ideals: Vec<Bits>,
    /// `RIdl(A)` under inclusion.
    pub lattice: FiniteLattice,
    pub filters: Vec<Bits>,
    /// Round filters under reverse inclusion.
    pub filter_order: FiniteLattice,
    pub report: Report,
}

/// Ideals `I` with `a ∈ I ⇒ a R a'` for some `a' ∈ I`, and dually filters
/// with `a ∈ F ⇒ a' R a` for some `a' ∈ F`.
pub fn round_ideals(p: &ProximityLattice) -> Result<RoundIdeals> {
    let a = &p.base;
    let ideals: Vec<Bits> = all_ideals(a)
        .into_iter()
        .filter(|&i| i.iter().all(|x| p.r[x].meets(i)))
        .collect();
    let filters: Vec<Bits> = all_filters(a)
        .into_iter()
        .filter(|&f| f.iter().all(|x| f.iter().any(|y| p.r[y].contains(x))))
        .collect();
    let lattice = FiniteLattice::from_family(&ideals)?
        .with_names(ideals.iter().map(|i| i.to_string()).collect());
    let filter_order = FiniteLattice::from_family_reversed(&filters)?;

    let mut r = Report::new("round ideals");
    r.check_bool("RIdl(A) is a frame", lattice.is_frame(), || {
        "frame law fails".into()
    });
    r.check_result(
        "RIdl(A) is locally compact",
        &lattice.is_locally_compact().and_then(|ok| {
            if ok {
                Ok(())
            } else {
                Err(Error::NotAFrame("not locally compact".into()))
            }
        }),
    );
    // F ↦ {I : I ∩ F ≠ ∅}
    let so = scott_open_poset(&lattice)?;
    let image: Option<Vec<usize>> = filters
        .iter()
        .map(|&f| {
            let fam: Bits = (0..ideals.len()).filter(|&k| ideals[k].meets(f)).collect();
            so.index_of(fam)
        })
        .collect();
    let w = match image {
        None => Some("some {I : I∩F ≠ ∅} is not Scott-open".into()),
        Some(img) if !is_order_isomorphism(&filter_order, &so.order, &img) => {
            Some("F ↦ {I : I∩F ≠ ∅} is not an order isomorphism".into())
        }
        Some(_) => None,
    };
    r.check("round filters ≅ Scott-open filters of RIdl(A)", w);
    Ok(RoundIdeals {
        ideals,
        lattice,
        filters,
        filter_order,
        report: r,
    })
}

#[derive(Debug, Clone)]
pub struct ProximityExtension {
    /// The canonical extension of `RIdl(A)`.
    pub bundle: CanExtBundle,
    pub round: RoundIdeals,
    /// `i(a) = e(I_a)`.
    pub i: Vec<usize>,
    pub report: Report,
}

/// `i: A → RIdl(A) → RIdl(A)^δ`, `a ↦ e(I_a)`, with density and
/// compactness of `i` stated through round filters and round ideals.
pub fn proximity_canonical_extension(p: &ProximityLattice) -> Result<ProximityExtension> {
    let a = &p.base;
    let round = round_ideals(p)?;
    let bundle = canonical_extension(&round.lattice)?;
    let ext = &bundle.extension;
    let mut r = Report::new("proximity extension");
    r.absorb("round", round.report.clone());

    let ia: Vec<Bits> = a.elements().map(|x| p.ideal_below(x)).collect();
    let idx: Vec<Option<usize>> = ia
        .iter()
        .map(|&s| round.ideals.iter().position(|&t| t == s))
        .collect();
    r.check(
        "I_a is a round ideal",
        a.elements()
            .find(|&x| idx[x].is_none())
            .map(|x| format!("I_{} = {}", a.label(x), ia[x])),
    );
    if idx.iter().any(Option::is_none) {
        return Err(Error::AxiomsFail("I_a is not a round ideal".into()));
    }
    let w = a.elements().find_map(|x| {
        a.up(x)
            .iter()
            .find(|&y| !ia[x].is_subset(ia[y]))
            .map(|y| format!("{} ≤ {}", a.label(x), a.label(y)))
    });
    r.check("a ≤ b ⇒ I_a ⊆ I_b", w);

    let i: Vec<usize> = idx.iter().map(|k| bundle.e[k.unwrap()]).collect();
    let w = a.elements().find_map(|x| {
        a.elements()
            .find(|&y| {
                i[a.meet(x, y)] != ext.meet(i[x], i[y]) || i[a.join(x, y)] != ext.join(i[x], i[y])
            })
            .map(|y| format!("a={}, b={}", a.label(x), a.label(y)))
    });
    let bounds = i[a.bottom()] == ext.bottom() && i[a.top()] == ext.top();
    r.check(
        "i is a lattice homomorphism",
        w.or_else(|| (!bounds).then(|| "bounds not preserved".into())),
    );
    let mut distinct = i.clone();
    distinct.sort_unstable();
    distinct.dedup();
    r.push(crate::report::CheckEntry::pass("i injectivity (observed)"))
        .bound_note = Some(format!("injective={}", distinct.len() == i.len()));

    r.absorb("extension", verify_dense(&bundle));
    r.absorb("extension", verify_compact(&bundle));

    let meet_f: Vec<usize> = round
        .filters
        .iter()
        .map(|f| ext.meet_all(f.iter().map(|x| i[x]).collect()))
        .collect();
    let join_i: Vec<usize> = round
        .ideals
        .iter()
        .map(|id| ext.join_all(id.iter().map(|x| i[x]).collect()))
        .collect();
    let w = ext.elements().find_map(|u| {
        let from_filters =
            ext.join_all(meet_f.iter().copied().filter(|&m| ext.leq(m, u)).collect());
        let from_ideals = ext.meet_all(join_i.iter().copied().filter(|&j| ext.leq(u, j)).collect());
        (from_filters != u || from_ideals != u).then(|| format!("u={}", ext.label(u)))
    });
    r.check("Dense (round filters and round ideals)", w);
    let w = round.filters.iter().enumerate().find_map(|(fi, &f)| {
        round
            .ideals
            .iter()
            .enumerate()
            .find(|&(ii, &id)| ext.leq(meet_f[fi], join_i[ii]) && !f.meets(id))
            .map(|(_, &id)| format!("F={f}, I={id}"))
    });
    r.check("Compact (round filters and round ideals)", w);

    Ok(ProximityExtension {
        bundle,
        round,
        i,
        report: r,
    })
}

/// With `R = ≤` the proximity pipeline must reproduce the distributive
/// one: same ideal frame, isomorphic bundles, and `i` carried to `i`.
pub fn matches_distributive_pipeline(a: &FiniteLattice) -> Result<Report> {
    let p = ProximityLattice::from_order(a.clone())?;
    let px = proximity_canonical_extension(&p)?;
    let dx = dlat_canonical_extension(a)?;
    let mut r = Report::new("proximity with R = ≤ against distributive pipeline");
    r.check_bool("RIdl(A) = Idl(A)", px.round.ideals == dx.ideals, || {
        format!(
            "{} round ideals, {} ideals",
            px.round.ideals.len(),
            dx.ideals.len()
        )
    });
    match bundle_isomorphism(&px.bundle, &dx.bundle) {
        Ok(iota) => {
            r.check(
                "ι∘i_R = i",
                a.elements()
                    .find(|&x| iota[px.i[x]] != dx.i[x])
                    .map(|x| format!("at {}", a.label(x))),
            );
        }
        Err(e) => {
            r.check("ι∘i_R = i", Some(e.to_string()));
        }
    }
    r.check_bool(
        "both reports pass",
        px.report.passed() && dx.report.passed(),
        || "one pipeline reports a failure".into(),
    );
    Ok(r)
}

/// `R_K = {(a, b) : a ≤ ι_K(b)}` where `ι_K(b)` is the largest element of
/// `K` below `b`, for a `{0,1}`-sublattice `K`.
pub fn interior_relation(a: &FiniteLattice, k: Bits) -> Vec<Bits> {
    let interior: Vec<usize> = a
        .elements()
        .map(|b| a.join_all(k.intersect(a.down(b))))
        .collect();
    a.elements()
        .map(|x| a.elements().filter(|&b| a.leq(x, interior[b])).collect())
        .collect()
}

/// `{0,1}`-sublattices of `a`, in increasing bit order.
pub fn bounded_sublattices(a: &FiniteLattice) -> Vec<Bits> {
    let fixed = Bits::from_iter([a.bottom(), a.top()]);
    let rest: Vec<usize> = a.elements().filter(|&x| !fixed.contains(x)).collect();
    (0u64..1 << rest.len())
        .map(|code| {
            rest.iter()
                .enumerate()
                .filter(|&(k, _)| code >> k & 1 == 1)
                .fold(fixed, |s, (_, &x)| s.with(x))
        })
        .filter(|&s| {
            s.iter().all(|x| {
                s.iter()
                    .all(|y| s.contains(a.meet(x, y)) && s.contains(a.join(x, y)))
            })
        })
        .collect()
}

/// A named proximity structure, or the reason it was dropped.
pub type ProximityCandidate = (String, std::result::Result<ProximityLattice, String>);

/// Interior candidates are generated on lattices up to this size.
pub const INTERIOR_CANDIDATE_BOUND: usize = 8;

/// `R = ≤` on the given lattices, plus `R_K` for every proper
/// `{0,1}`-sublattice `K` of `B4`, `B8` and each given lattice with at most
/// [`INTERIOR_CANDIDATE_BOUND`] elements; candidates failing the axioms
/// carry the reason.
pub fn proximity_corpus(distributive: &[(String, FiniteLattice)]) -> Vec<ProximityCandidate> {
    let mut out: Vec<ProximityCandidate> = distributive
        .iter()
        .map(|(id, l)| {
            (
                format!("{id}/le"),
                ProximityLattice::from_order(l.clone()).map_err(|e| e.to_string()),
            )
        })
        .collect();
    let mut bases = vec![("b4".to_string(), b4()), ("b8".to_string(), b8())];
    bases.extend(
        distributive
            .iter()
            .filter(|(_, l)| l.size() <= INTERIOR_CANDIDATE_BOUND)
            .cloned(),
    );
    for (name, b) in bases {
        for k in bounded_sublattices(&b) {
            if k == b.all() {
                continue;
            }
            let r = interior_relation(&b, k);
            out.push((
                format!("{name}/interior-{k}"),
                ProximityLattice::new(b.clone(), r).map_err(|e| e.to_string()),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{c3, two};
    use crate::order::find_isomorphism;

    #[test]
    fn order_relations_pass() {
        for l in [two(), c3(), b4()] {
            let rep = check_axioms(&l, &l.elements().map(|a| l.up(a)).collect::<Vec<_>>()).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn dropping_a_reflexive_pair_fails() {
        let l = b4();
        let mut r: Vec<Bits> = l.elements().map(|a| l.up(a)).collect();
        r[1] = r[1].without(1);
        let rep = check_axioms(&l, &r).unwrap();
        assert!(!rep.passed());
        assert!(matches!(
            ProximityLattice::new(l, r),
            Err(Error::AxiomsFail(_))
        ));
    }

    #[test]
    fn round_ideals_under_order() {
        for l in [two(), c3(), b4()] {
            let p = ProximityLattice::from_order(l.clone()).unwrap();
            let ri = round_ideals(&p).unwrap();
            assert!(ri.report.passed(), "{}", ri.report);
            assert!(find_isomorphism(&ri.lattice, &l).is_some());
        }
    }

    #[test]
    fn extension_under_order() {
        let l = c3();
        let p = ProximityLattice::from_order(l.clone()).unwrap();
        assert_eq!(p.ideal_below(1), Bits::from_iter([0, 1]));
        for l in [two(), c3(), b4()] {
            let p = ProximityLattice::from_order(l.clone()).unwrap();
            let x = proximity_canonical_extension(&p).unwrap();
            assert!(x.report.passed(), "{}", x.report);
            assert!(find_isomorphism(&x.bundle.extension, &l).is_some());
            assert!(matches_distributive_pipeline(&l).unwrap().passed());
        }
    }

    #[test]
    fn interior_relations_filtered() {
        let corpus = proximity_corpus(&[("c3".to_string(), c3())]);
        let kept: Vec<_> = corpus.iter().filter(|(_, p)| p.is_ok()).collect();
        assert!(!kept.is_empty());
        assert!(kept.len() < corpus.len());
        // Boolean interiors never interpolate; chains do
        assert!(kept.iter().all(|(name, _)| name.starts_with("c3")));
        for (name, p) in kept {
            let x = proximity_canonical_extension(p.as_ref().unwrap()).unwrap();
            assert!(x.report.passed(), "{name}: {}", x.report);
        }
    }
}
