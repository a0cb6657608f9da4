//! The Dense and Compact axioms, their strengthening, and the properties
//! every canonical extension has.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{small_subsets, Bits};
use crate::report::Report;

use super::CanExtBundle;

/// Seed used by sampled checks unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Random families of more than three filters tried by [`sup_lemma_check`].
pub const SUP_LEMMA_TRIALS: usize = 200;

/// Exhaustion bound (source size) for the filtered/directed sweep.
const COMPACT_PLUS_BOUND: usize = 10;

fn filter_label(b: &CanExtBundle, f: Bits) -> String {
    let l = &b.source;
    let m = l.meet_all(f);
    if l.up(m) == f {
        format!("↑{}", l.label(m))
    } else {
        f.to_string()
    }
}

/// First `u ≰ v` for which no `F`, `a` has `e_SO(F) ≤ u`, `v ≤ e(a)` and
/// `e_SO(F) ≰ e(a)`; `None` when the bundle is dense.
pub fn dense_witness(b: &CanExtBundle) -> Option<(usize, usize)> {
    let ext = &b.extension;
    let below: Vec<Vec<usize>> = ext
        .elements()
        .map(|u| b.e_so.iter().copied().filter(|&w| ext.leq(w, u)).collect())
        .collect();
    let above: Vec<Vec<usize>> = ext
        .elements()
        .map(|v| b.e.iter().copied().filter(|&w| ext.leq(v, w)).collect())
        .collect();
    for u in ext.elements() {
        for v in ext.elements() {
            if ext.leq(u, v) {
                continue;
            }
            let separated = below[u]
                .iter()
                .any(|&s| above[v].iter().any(|&t| !ext.leq(s, t)));
            if !separated {
                return Some((u, v));
            }
        }
    }
    None
}

/// First `(F, a)` with `e_SO(F) ≤ e(a)` but `a ∉ F`. Filters are scanned
/// largest first, then elements in index order.
pub fn compact_witness(b: &CanExtBundle) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..b.scott_open.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(b.scott_open.filters[i].len()), i));
    for i in order {
        let f = b.scott_open.filters[i];
        for a in b.source.elements() {
            if b.extension.leq(b.e_so[i], b.e[a]) && !f.contains(a) {
                return Some((i, a));
            }
        }
    }
    None
}

/// Families of Scott-open filters that are filtered (directed under
/// inclusion) and directed subsets of the source, exhaustively when the
/// source has at most 10 elements and generated by at most three members
/// otherwise.
fn compact_plus_domains(b: &CanExtBundle) -> (Vec<Bits>, Vec<Bits>, bool) {
    let l = &b.source;
    let incl = b.scott_open.order.opposite();
    if l.size() <= COMPACT_PLUS_BOUND {
        let fams = incl.directed_subsets().0.clone();
        let dirs = l.directed_subsets().0.clone();
        (fams, dirs, true)
    } else {
        let fams = small_subsets(incl.all(), 3)
            .into_iter()
            .filter(|&s| incl.is_directed(s))
            .collect();
        let dirs = small_subsets(l.all(), 3)
            .into_iter()
            .filter(|&d| l.is_directed(d))
            .collect();
        (fams, dirs, false)
    }
}

/// First filtered family `𝓕` and directed `D` with
/// `⋀ e_SO[𝓕] ≤ ⋁ e[D]` but no `d ∈ D` in any member of `𝓕`.
/// The flag reports whether the sweep was exhaustive.
pub fn compact_plus_witness(b: &CanExtBundle) -> (Option<(Bits, Bits)>, bool) {
    let ext = &b.extension;
    let (fams, dirs, exhaustive) = compact_plus_domains(b);
    let dir_data: Vec<(usize, Bits)> = dirs
        .iter()
        .map(|&d| (ext.join_all(d.iter().map(|a| b.e[a]).collect()), d))
        .collect();
    let mut seen = std::collections::HashSet::new();
    for fam in fams {
        let meet = ext.meet_all(fam.iter().map(|i| b.e_so[i]).collect());
        let union = fam
            .iter()
            .fold(Bits::EMPTY, |acc, i| acc.union(b.scott_open.filters[i]));
        if !seen.insert((meet, union)) {
            continue;
        }
        if let Some(&(_, d)) = dir_data
            .iter()
            .find(|&&(j, d)| ext.leq(meet, j) && !d.meets(union))
        {
            return (Some((fam, d)), exhaustive);
        }
    }
    (None, exhaustive)
}

pub fn verify_dense(b: &CanExtBundle) -> Report {
    let mut r = Report::new("dense");
    let ext = &b.extension;
    r.check(
        "dense",
        dense_witness(b).map(|(u, v)| {
            format!(
                "u={} ≰ v={} but no F, a separate them",
                ext.label(u),
                ext.label(v)
            )
        }),
    );
    r
}

pub fn verify_compact(b: &CanExtBundle) -> Report {
    let mut r = Report::new("compact");
    r.check(
        "compact",
        compact_witness(b).map(|(i, a)| {
            format!(
                "({}, {})",
                filter_label(b, b.scott_open.filters[i]),
                b.source.label(a)
            )
        }),
    );
    r
}

pub fn verify_compact_plus(b: &CanExtBundle) -> Report {
    let mut r = Report::new("compact+");
    let (w, exhaustive) = compact_plus_witness(b);
    let entry = r.check(
        "compact+",
        w.map(|(fam, d)| {
            let fs: Vec<String> = fam
                .iter()
                .map(|i| filter_label(b, b.scott_open.filters[i]))
                .collect();
            format!("family [{}], directed {}", fs.join(", "), d)
        }),
    );
    if !exhaustive {
        entry.bound_note = Some(format!(
            "families and directed sets generated by at most 3 members (source size {} > {COMPACT_PLUS_BOUND})",
            b.source.size()
        ));
    }
    r
}

/// `⋁ᵢ e_SO(Fᵢ) = ⋀ e[⋂ᵢ Fᵢ]`: every family of at most three filters, plus
/// [`SUP_LEMMA_TRIALS`] random larger families drawn with `seed`.
pub fn sup_lemma_check(b: &CanExtBundle, seed: u64) -> Report {
    let mut r = Report::new("join of e_SO");
    let ext = &b.extension;
    let so = &b.scott_open;
    let holds = |fam: Bits| {
        let lhs = ext.join_all(fam.iter().map(|i| b.e_so[i]).collect());
        let cap = fam
            .iter()
            .fold(b.source.all(), |acc, i| acc.intersect(so.filters[i]));
        lhs == b.meet_of_image(cap)
    };
    let mut families = vec![Bits::EMPTY];
    families.extend(small_subsets(Bits::full(so.len()), 3));
    let mut note = "all families of at most 3 filters".to_string();
    if so.len() > 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SUP_LEMMA_TRIALS {
            let k = rng.gen_range(4..=so.len());
            families.push(sample(&mut rng, so.len(), k).into_iter().collect());
        }
        note.push_str(&format!(
            "; {SUP_LEMMA_TRIALS} random larger families, seed {seed}"
        ));
    }
    let bad = families.into_iter().find(|&fam| !holds(fam));
    r.check(
        "⋁ e_SO(Fᵢ) = ⋀ e[⋂ Fᵢ]",
        bad.map(|fam| format!("family of filter indices {fam}")),
    )
    .bound_note = Some(note);
    r
}

/// The five basic properties of a canonical extension, each checked on the
/// finite carriers independently of the axioms, plus the join lemma for
/// `e_SO`.
pub fn verify_basic_properties(b: &CanExtBundle, seed: u64) -> Report {
    let mut r = Report::new("basic properties");
    let l = &b.source;
    let ext = &b.extension;
    let so = &b.scott_open;
    let e = &b.e;

    r.check_bool("e_SO(F) = ⋀ e[F]", b.e_so_consistent(), || {
        "some e_SO value differs from the meet of the image".into()
    });

    // e
    r.check_bool("e: e(0) = 0", e[l.bottom()] == ext.bottom(), || {
        format!("e(0) = {}", ext.label(e[l.bottom()]))
    });
    r.check_bool("e: e(1) = 1", e[l.top()] == ext.top(), || {
        format!("e(1) = {}", ext.label(e[l.top()]))
    });
    let meet_bad = l.elements().find_map(|x| {
        l.elements()
            .find(|&y| e[l.meet(x, y)] != ext.meet(e[x], e[y]))
            .map(|y| (x, y))
    });
    r.check(
        "e: e preserves binary meets",
        meet_bad.map(|(x, y)| format!("a={}, b={}", l.label(x), l.label(y))),
    );
    let (directed, exhaustive) = l.directed_subsets();
    let dir_bad = directed
        .iter()
        .find(|&&d| e[l.join_all(d)] != ext.join_all(d.iter().map(|a| e[a]).collect()));
    let entry = r.check(
        "e: e preserves directed joins",
        dir_bad.map(|d| format!("D={d}")),
    );
    if !exhaustive {
        entry.bound_note = Some("directed sets of at most 3 elements".into());
    }

    // e_SO
    let mut seen = vec![usize::MAX; ext.size()];
    let mut inj_bad = None;
    for (i, &v) in b.e_so.iter().enumerate() {
        if seen[v] != usize::MAX {
            inj_bad = Some((seen[v], i));
            break;
        }
        seen[v] = i;
    }
    r.check(
        "e_SO: e_SO injective",
        inj_bad.map(|(i, j)| {
            format!(
                "{} and {} have the same image",
                so.filters[i], so.filters[j]
            )
        }),
    );
    let bottom_ok = so
        .index_of(l.all())
        .is_some_and(|i| b.e_so[i] == ext.bottom());
    r.check_bool("e_SO: e_SO preserves bottom", bottom_ok, || {
        "e_SO(L) is not the bottom".into()
    });
    let mut join_bad = None;
    'pairs: for i in 0..so.len() {
        for j in 0..so.len() {
            let cap = so.filters[i].intersect(so.filters[j]);
            let ok = so
                .index_of(cap)
                .is_some_and(|k| b.e_so[k] == ext.join(b.e_so[i], b.e_so[j]));
            if !ok {
                join_bad = Some((i, j));
                break 'pairs;
            }
        }
    }
    r.check(
        "e_SO: e_SO preserves binary joins",
        join_bad.map(|(i, j)| format!("F={} G={}", so.filters[i], so.filters[j])),
    );
    let incl = so.order.opposite();
    let (fams, fam_exhaustive) = incl.directed_subsets();
    let filtered_bad = fams.iter().find(|&&fam| {
        let union = fam
            .iter()
            .fold(Bits::EMPTY, |acc, i| acc.union(so.filters[i]));
        let lhs = so.index_of(union).map(|k| b.e_so[k]);
        lhs != Some(ext.meet_all(fam.iter().map(|i| b.e_so[i]).collect()))
    });
    let entry = r.check(
        "e_SO: e_SO preserves filtered meets",
        filtered_bad.map(|fam| format!("family of filter indices {fam}")),
    );
    if !fam_exhaustive {
        entry.bound_note = Some("families of at most 3 filters".into());
    }

    // both representations
    let meet_rep_bad = ext
        .elements()
        .find(|&u| ext.meet_all(e.iter().copied().filter(|&w| ext.leq(u, w)).collect()) != u);
    r.check(
        "representation: u = ⋀{e(a) : u ≤ e(a)}",
        meet_rep_bad.map(|u| format!("u={}", ext.label(u))),
    );
    let join_rep_bad = ext
        .elements()
        .find(|&u| ext.join_all(b.e_so.iter().copied().filter(|&w| ext.leq(w, u)).collect()) != u);
    r.check(
        "representation: u = ⋁{e_SO(F) : e_SO(F) ≤ u}",
        join_rep_bad.map(|u| format!("u={}", ext.label(u))),
    );

    // conditional items
    let injective = l
        .elements()
        .all(|x| l.elements().all(|y| x == y || e[x] != e[y]));
    if injective {
        let bin_join_bad = l.elements().find_map(|x| {
            l.elements()
                .find(|&y| e[l.join(x, y)] != ext.join(e[x], e[y]))
                .map(|y| (x, y))
        });
        r.check(
            "injective e preserves binary joins",
            bin_join_bad.map(|(x, y)| format!("a={}, b={}", l.label(x), l.label(y))),
        );
    } else {
        r.check("injective e preserves binary joins", None)
            .bound_note = Some("hypothesis not met: e is not injective".into());
    }
    match l.is_locally_compact() {
        Ok(true) => {
            r.check_bool("locally compact ⇒ e injective", injective, || {
                "source is locally compact but e identifies two elements".into()
            });
        }
        Ok(false) => {
            r.check("locally compact ⇒ e injective", None).bound_note =
                Some("hypothesis not met: source not locally compact".into());
        }
        Err(err) => {
            r.check("locally compact ⇒ e injective", Some(err.to_string()));
        }
    }

    r.absorb("lemma", sup_lemma_check(b, seed));
    r
}

/// `L^δ` is a frame, a coframe and completely distributive; when the
/// source is stably locally compact the frame-and-coframe outcome is also
/// recorded as an instance of that implication.
pub fn frame_coframe_check(b: &CanExtBundle) -> Report {
    let mut r = Report::new("frame and coframe");
    let ext = &b.extension;
    let note = (!ext.frame_check_is_exhaustive()).then(|| {
        format!(
            "binary form of the law (extension size {} > 12)",
            ext.size()
        )
    });
    let is_frame = ext.is_frame();
    let is_coframe = ext.is_coframe();
    let entry = r.check_bool("extension is a frame", is_frame, || {
        let v = ext.frame_law_witness().unwrap();
        format!("family {} and b={}", v.family, ext.label(v.b))
    });
    entry.bound_note = note.clone();
    let entry = r.check_bool("extension is a coframe", is_coframe, || {
        "opposite fails the frame law".into()
    });
    entry.bound_note = note.clone();
    let entry = r.check_bool(
        "extension is completely distributive",
        ext.is_completely_distributive(),
        || {
            format!(
                "{} is not a join of completely join-prime elements",
                ext.label(ext.complete_distributivity_witness().unwrap())
            )
        },
    );
    entry.bound_note = note;
    if matches!(b.source.is_stably_locally_compact(), Ok(true)) {
        r.check_bool(
            "stably locally compact source ⇒ frame and coframe",
            is_frame && is_coframe,
            || "extension is not both a frame and a coframe".into(),
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canext::{canonical_extension, fault_injected, identity_bundle};
    use crate::corpus::{b4, c3, two};
    use crate::order::{build_lattice, RelationMode};

    #[test]
    fn honest_bundles_pass() {
        for l in [two(), c3(), b4()] {
            for b in [
                canonical_extension(&l).unwrap(),
                identity_bundle(&l).unwrap(),
            ] {
                assert!(verify_dense(&b).passed());
                assert!(verify_compact(&b).passed());
                assert!(verify_compact_plus(&b).passed());
                let r = verify_basic_properties(&b, DEFAULT_SEED);
                assert!(r.passed(), "{r}");
                assert!(frame_coframe_check(&b).passed());
            }
        }
    }

    #[test]
    fn constant_top_fails_compact_with_minimal_witness() {
        let b = canonical_extension(&c3()).unwrap();
        let [(_, top), ..] = fault_injected(&b);
        let r = verify_compact(&top);
        assert!(!r.passed());
        assert_eq!(r.entries[0].witness.as_deref(), Some("(↑m, 0)"));
    }

    #[test]
    fn every_fault_trips_every_verifier() {
        for l in [two(), c3(), b4()] {
            let b = canonical_extension(&l).unwrap();
            for (name, bad) in fault_injected(&b) {
                assert!(!verify_dense(&bad).passed(), "{name}");
                assert!(!verify_compact(&bad).passed(), "{name}");
                assert!(!verify_compact_plus(&bad).passed(), "{name}");
            }
        }
    }

    #[test]
    fn enlarged_extension_fails_only_density() {
        // C3 placed inside C4 by skipping the new top
        let l = c3();
        let mut b = identity_bundle(&l).unwrap();
        b.extension = build_lattice(4, &[(0, 1), (1, 2), (2, 3)], RelationMode::Cover).unwrap();
        assert!(!verify_dense(&b).passed());
        assert!(verify_compact(&b).passed());
    }

    #[test]
    fn sup_lemma_on_b4_atoms() {
        let b = canonical_extension(&b4()).unwrap();
        let so = &b.scott_open;
        let fa = so.index_of(b4().up(1)).unwrap();
        let fb = so.index_of(b4().up(2)).unwrap();
        let f_top = so.index_of(b4().up(3)).unwrap();
        let lhs = b.extension.join(b.e_so[fa], b.e_so[fb]);
        assert_eq!(lhs, b.e_so[f_top]);
        assert_eq!(lhs, b.meet_of_image(b4().up(1).intersect(b4().up(2))));
    }
}
