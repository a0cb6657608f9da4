//! Executable forms of the extension lemmas, the lifting of perfect frame
//! homomorphisms, functoriality, and the three characterisations of
//! perfect maps.

use crate::bits::{all_subsets, Bits};
use crate::canext::CanExtBundle;
use crate::error::{Error, Result};
use crate::order::FiniteLattice;
use crate::report::Report;

use super::{pi_extension, right_adjoint, sigma_extension, LatticeMap, MapFlags};

/// Complete-homomorphism checks run over every subset of the source up to
/// this size, and over element-indexed families (empty, singletons,
/// pairs) above it.
pub const COMPLETE_HOM_BOUND: usize = 12;

fn leq_pointwise(l: &FiniteLattice, a: &[usize], b: &[usize]) -> Option<usize> {
    (0..a.len()).find(|&u| !l.leq(a[u], b[u]))
}

fn compose(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&x| second[x]).collect()
}

fn flags(f: &LatticeMap, bs: &CanExtBundle, bt: &CanExtBundle) -> MapFlags {
    f.classify_with(&bs.scott_open, &bt.scott_open)
}

/// Whether `table: src → tgt` preserves all joins and all meets.
/// Entries are named `"<prefix> preserves all joins"` and `"... meets"`.
pub fn complete_hom_check(
    prefix: &str,
    src: &FiniteLattice,
    tgt: &FiniteLattice,
    table: &[usize],
) -> Report {
    let mut r = Report::new(format!("{prefix} complete homomorphism"));
    let image = |d: Bits| -> Bits { d.iter().map(|x| table[x]).collect() };
    let exhaustive = src.size() <= COMPLETE_HOM_BOUND;
    let families: Vec<Bits> = if exhaustive {
        all_subsets(src.size()).collect()
    } else {
        let mut fams = vec![Bits::EMPTY];
        for x in src.elements() {
            fams.push(Bits::singleton(x));
            for y in x + 1..src.size() {
                fams.push(Bits::from_iter([x, y]));
            }
        }
        fams
    };
    let note = if exhaustive {
        format!("all {} subsets", families.len())
    } else {
        format!(
            "source has {} elements, above {COMPLETE_HOM_BOUND}: {} element-indexed families",
            src.size(),
            families.len()
        )
    };
    let join_bad = families
        .iter()
        .find(|&&d| table[src.join_all(d)] != tgt.join_all(image(d)));
    r.check(
        format!("{prefix} preserves all joins"),
        join_bad.map(|d| format!("family {d}")),
    )
    .bound_note = Some(note.clone());
    let meet_bad = families
        .iter()
        .find(|&&d| table[src.meet_all(d)] != tgt.meet_all(image(d)));
    r.check(
        format!("{prefix} preserves all meets"),
        meet_bad.map(|d| format!("family {d}")),
    )
    .bound_note = Some(note);
    r
}

/// The extension lemmas for a composable pair `f: L → M`, `g: M → N`.
/// Conditional statements whose hypothesis fails pass with a note saying
/// so; observed equalities in the `π` composition inequality are noted.
pub fn verify_extension_lemmas(
    f: &LatticeMap,
    g: &LatticeMap,
    bl: &CanExtBundle,
    bm: &CanExtBundle,
    bn: &CanExtBundle,
) -> Result<Report> {
    let gf = f.then(g)?;
    let (xl, xm, xn) = (&bl.extension, &bm.extension, &bn.extension);
    let sf = sigma_extension(f, bl, bm)?;
    let pf = pi_extension(f, bl, bm)?;
    let sg = sigma_extension(g, bm, bn)?;
    let pg = pi_extension(g, bm, bn)?;
    let sgf = sigma_extension(&gf, bl, bn)?;
    let pgf = pi_extension(&gf, bl, bn)?;
    let ff = flags(f, bl, bm);
    let fg = flags(g, bm, bn);
    let fgf = flags(&gf, bl, bn);

    let mut r = Report::new("extension lemmas");

    let sp = [
        ("f", &sf, &pf, xm),
        ("g", &sg, &pg, xn),
        ("gf", &sgf, &pgf, xn),
    ];
    let w = sp.iter().find_map(|(n, s, p, x)| {
        leq_pointwise(x, s, p).map(|u| format!("{n} at extension element {u}"))
    });
    r.check("σ ≤ π", w);

    let pre = [ff.preframe_hom(), fg.preframe_hom(), fgf.preframe_hom()];
    let w = sp
        .iter()
        .zip(pre)
        .filter(|(_, p)| *p)
        .find_map(|((n, s, p, _), _)| {
            (0..s.len())
                .find(|&u| s[u] != p[u])
                .map(|u| format!("{n}: σ ≠ π at {u}"))
        });
    let e = r.check("preframe hom: σ = π", w);
    if !pre.iter().any(|&p| p) {
        e.bound_note = Some("hypothesis not met: no preframe hom in the pair".into());
    }

    let gp_fp = compose(&pf, &pg);
    let w = leq_pointwise(xn, &gp_fp, &pgf).map(|u| format!("at {}", xl.label(u)));
    let e = r.check("g^π f^π ≤ (gf)^π", w);
    e.bound_note = Some(match (0..gp_fp.len()).find(|&u| gp_fp[u] != pgf[u]) {
        None => "observed equality".into(),
        Some(u) => format!("observed strict at {}", xl.label(u)),
    });

    let gs_fs = compose(&sf, &sg);
    let hyp = ff.perfect && fg.finite_meets;
    let w = if hyp {
        leq_pointwise(xn, &sgf, &gs_fs).map(|u| format!("at {}", xl.label(u)))
    } else {
        None
    };
    let e = r.check("f perfect, g meet-preserving: (gf)^σ ≤ g^σ f^σ", w);
    if !hyp {
        e.bound_note = Some("hypothesis not met".into());
    }

    // e_M ∘ h = h^σ ∘ e_L for preframe homs, e_M ∘ h = h^π ∘ e_L always
    let squares = [
        ("f", f, &sf, &pf, bl, bm, ff),
        ("g", g, &sg, &pg, bm, bn, fg),
    ];
    let w = squares
        .iter()
        .filter(|s| s.6.preframe_hom())
        .find_map(|(n, h, s, _, b1, b2, _)| {
            h.source
                .elements()
                .find(|&a| s[b1.e[a]] != b2.e[h.table[a]])
                .map(|a| format!("{n} at {}", h.source.label(a)))
        });
    let e = r.check("preframe hom: e∘h = h^σ∘e", w);
    if !ff.preframe_hom() && !fg.preframe_hom() {
        e.bound_note = Some("hypothesis not met: no preframe hom in the pair".into());
    }
    let w = squares.iter().find_map(|(n, h, _, p, b1, b2, _)| {
        h.source
            .elements()
            .find(|&a| p[b1.e[a]] != b2.e[h.table[a]])
            .map(|a| format!("{n} at {}", h.source.label(a)))
    });
    r.check("monotone: e∘f = f^π∘e", w);

    // Scott-open squares for perfect maps
    let mut w_sigma = None;
    let mut w_pi = None;
    for (n, h, s, p, b1, b2, fl) in &squares {
        if !fl.perfect {
            continue;
        }
        let f_so = h
            .perfect_image(&b1.scott_open, &b2.scott_open)
            .expect("perfect maps have f_SO");
        for (i, &fil) in b1.scott_open.filters.iter().enumerate() {
            let want = b2.e_so[f_so[i]];
            if w_sigma.is_none() && s[b1.e_so[i]] != want {
                w_sigma = Some(format!("{n} at filter {fil}"));
            }
            if w_pi.is_none() && p[b1.e_so[i]] != want {
                w_pi = Some(format!("{n} at filter {fil}"));
            }
        }
    }
    let none_perfect = !ff.perfect && !fg.perfect;
    for (name, w) in [
        ("perfect: f^σ∘e_SO = e_SO∘f_SO", w_sigma),
        ("perfect: f^π∘e_SO = e_SO∘f_SO", w_pi),
    ] {
        let e = r.check(name, w);
        if none_perfect {
            e.bound_note = Some("hypothesis not met: no perfect map in the pair".into());
        }
    }

    // preimages of Scott-open filters under preframe homs
    let mut w = None;
    for (n, h, _, _, b1, b2, fl) in &squares {
        if !fl.preframe_hom() {
            continue;
        }
        for &fil in &b2.scott_open.filters {
            let pre = h.preimage(fil);
            if b1.scott_open.index_of(pre).is_none() && w.is_none() {
                w = Some(format!("{n}: preimage of {fil} is {pre}"));
            }
        }
    }
    r.check(
        "preframe hom: preimage of Scott-open filter is Scott-open",
        w,
    );

    r.absorb("f", adjoint_lift_check(f, bl, bm)?);
    r.absorb("g", adjoint_lift_check(g, bm, bn)?);
    Ok(r)
}

/// For `f ⊣ g` with `f` perfect: `f^σ ⊣ g^π`.
pub fn adjoint_lift_check(f: &LatticeMap, bl: &CanExtBundle, bm: &CanExtBundle) -> Result<Report> {
    let mut r = Report::new("adjoint lift");
    let name = "f ⊣ g, f perfect: f^σ ⊣ g^π";
    let fl = flags(f, bl, bm);
    let adj = right_adjoint(f);
    let g_table = match (&adj, fl.perfect) {
        (Ok(g), true) => g.clone(),
        _ => {
            r.check(name, None).bound_note = Some(
                if adj.is_err() {
                    "hypothesis not met: no right adjoint"
                } else {
                    "hypothesis not met: not perfect"
                }
                .into(),
            );
            return Ok(r);
        }
    };
    let g = LatticeMap::new(f.target, f.source, g_table)?;
    let sf = sigma_extension(f, bl, bm)?;
    let pg = pi_extension(&g, bm, bl)?;
    let (xl, xm) = (&bl.extension, &bm.extension);
    let w = xl.elements().find_map(|u| {
        xm.elements()
            .find(|&v| xm.leq(sf[u], v) != xl.leq(u, pg[v]))
            .map(|v| format!("u={}, v={}", xl.label(u), xm.label(v)))
    });
    r.check(name, w);
    Ok(r)
}

fn require_perfect_frame_hom(h: &LatticeMap, bl: &CanExtBundle, bm: &CanExtBundle) -> Result<()> {
    let fl = flags(h, bl, bm);
    if !fl.frame_hom() || !fl.perfect {
        return Err(Error::NotPerfectFrameHom(format!("{fl}")));
    }
    Ok(())
}

/// `h^δ` for a perfect frame homomorphism, with the report that it is the
/// common value of `σ` and `π`, commutes with `e`, and is a complete
/// lattice homomorphism.
pub fn lift_perfect_hom(
    h: &LatticeMap,
    bl: &CanExtBundle,
    bm: &CanExtBundle,
) -> Result<(Vec<usize>, Report)> {
    require_perfect_frame_hom(h, bl, bm)?;
    let s = sigma_extension(h, bl, bm)?;
    let p = pi_extension(h, bl, bm)?;
    let mut r = Report::new("perfect hom lift");
    r.check(
        "h^σ = h^π",
        (0..s.len())
            .find(|&u| s[u] != p[u])
            .map(|u| format!("at {}", bl.extension.label(u))),
    );
    r.check(
        "h^δ∘e = e∘h",
        h.source
            .elements()
            .find(|&a| s[bl.e[a]] != bm.e[h.table[a]])
            .map(|a| format!("at {}", h.source.label(a))),
    );
    r.absorb(
        "lift",
        complete_hom_check("h^δ", &bl.extension, &bm.extension, &s),
    );
    Ok((s, r))
}

/// `id^δ = id` on both ends and `(gh)^δ = g^δ h^δ` for perfect frame homs
/// `h: L → M`, `g: M → N`.
pub fn functor_check(
    h: &LatticeMap,
    g: &LatticeMap,
    bl: &CanExtBundle,
    bm: &CanExtBundle,
    bn: &CanExtBundle,
) -> Result<Report> {
    let gh = h.then(g)?;
    let (hd, _) = lift_perfect_hom(h, bl, bm)?;
    let (gd, _) = lift_perfect_hom(g, bm, bn)?;
    let (ghd, _) = lift_perfect_hom(&gh, bl, bn)?;
    let mut r = Report::new("functor laws");
    for (name, b) in [("L", bl), ("M", bm)] {
        let id = LatticeMap::identity(&b.source);
        let (idd, _) = lift_perfect_hom(&id, b, b)?;
        r.check(
            format!("id^δ = id on {name}^δ"),
            (0..idd.len())
                .find(|&u| idd[u] != u)
                .map(|u| format!("moves {u}")),
        );
    }
    let comp = compose(&hd, &gd);
    r.check(
        "(gh)^δ = g^δ h^δ",
        (0..comp.len())
            .find(|&u| comp[u] != ghd[u])
            .map(|u| format!("at {}", bl.extension.label(u))),
    );
    Ok(r)
}

/// The three evaluators behind [`perfect_equivalences_with`], swappable so
/// that a deliberately wrong one can be shown to be caught.
#[derive(Clone, Copy)]
pub struct PerfectCheckers {
    /// `c ≪ a ⇒ h(c) ≪ h(a)`
    pub way_below_preserved: fn(&LatticeMap) -> Result<bool>,
    /// The smallest filter containing the image of a Scott-open filter is
    /// Scott-open.
    pub perfect: fn(&LatticeMap) -> Result<bool>,
    /// The right adjoint preserves directed joins.
    pub adjoint_directed: fn(&LatticeMap) -> Result<bool>,
}

impl Default for PerfectCheckers {
    fn default() -> Self {
        PerfectCheckers {
            way_below_preserved,
            perfect: |h| Ok(h.classify().perfect),
            adjoint_directed,
        }
    }
}

fn way_below_preserved(h: &LatticeMap) -> Result<bool> {
    let ws = h.source.way_below()?;
    let wt = h.target.way_below()?;
    Ok(h.source.elements().all(|a| {
        ws.way_below_set(a)
            .iter()
            .all(|c| wt.holds(h.table[c], h.table[a]))
    }))
}

fn adjoint_directed(h: &LatticeMap) -> Result<bool> {
    let g =
        right_adjoint(h).map_err(|w| Error::NotAFrameHom(format!("join of {w} not preserved")))?;
    let (s, t) = (h.source, h.target);
    let (dirs, _) = t.directed_subsets();
    Ok(dirs
        .iter()
        .all(|&d| g[t.join_all(d)] == s.join_all(d.iter().map(|b| g[b]).collect())))
}

/// Evaluates the three characterisations of perfect frame homs
/// independently and asserts they agree.
pub fn perfect_equivalences(h: &LatticeMap) -> Result<Report> {
    perfect_equivalences_with(h, &PerfectCheckers::default())
}

pub fn perfect_equivalences_with(h: &LatticeMap, checkers: &PerfectCheckers) -> Result<Report> {
    if !h.classify().frame_hom() {
        return Err(Error::NotAFrameHom(format!("{}", h.classify())));
    }
    if !h.source.is_locally_compact()? {
        return Err(Error::NotAFrame("source is not locally compact".into()));
    }
    let vals = [
        (checkers.way_below_preserved)(h)?,
        (checkers.perfect)(h)?,
        (checkers.adjoint_directed)(h)?,
    ];
    let mut r = Report::new("perfect map characterisations");
    let agree = vals.iter().all(|&v| v == vals[0]);
    let e = r.check(
        "≪-preserving, perfect, adjoint preserves directed joins agree",
        (!agree).then(|| format!("values {vals:?}")),
    );
    e.bound_note = Some(format!("values {vals:?}"));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canext::canonical_extension;
    use crate::corpus::{b4, c3};

    #[test]
    fn frame_hom_pair_on_c3() {
        let l = c3();
        let b = canonical_extension(&l).unwrap();
        let f = LatticeMap::new(&l, &l, vec![0, 2, 2]).unwrap();
        let g = LatticeMap::identity(&l);
        let r = verify_extension_lemmas(&f, &g, &b, &b, &b).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(
            r.entry("g^π f^π ≤ (gf)^π").unwrap().bound_note.as_deref(),
            Some("observed equality")
        );
        let (hd, lr) = lift_perfect_hom(&f, &b, &b).unwrap();
        assert!(lr.passed(), "{lr}");
        assert_eq!(hd.len(), 3);
    }

    #[test]
    fn perfect_then_monotone_non_hom() {
        let (s, t) = (b4(), c3());
        let (bs, bt) = (
            canonical_extension(&s).unwrap(),
            canonical_extension(&t).unwrap(),
        );
        let f = LatticeMap::identity(&s);
        let g = LatticeMap::new(&s, &t, vec![0, 1, 1, 2]).unwrap();
        let r = verify_extension_lemmas(&f, &g, &bs, &bs, &bt).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn non_hom_is_not_lifted() {
        let (s, t) = (b4(), c3());
        let (bs, bt) = (
            canonical_extension(&s).unwrap(),
            canonical_extension(&t).unwrap(),
        );
        let g = LatticeMap::new(&s, &t, vec![0, 1, 1, 2]).unwrap();
        assert!(matches!(
            lift_perfect_hom(&g, &bs, &bt),
            Err(Error::NotPerfectFrameHom(_))
        ));
    }

    #[test]
    fn functor_on_b4() {
        let l = b4();
        let b = canonical_extension(&l).unwrap();
        // swap the atoms, then swap back
        let h = LatticeMap::new(&l, &l, vec![0, 2, 1, 3]).unwrap();
        let r = functor_check(&h, &h, &b, &b, &b).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn equivalences_agree_and_fault_is_caught() {
        let l = c3();
        let f = LatticeMap::new(&l, &l, vec![0, 2, 2]).unwrap();
        assert!(perfect_equivalences(&f).unwrap().passed());
        let broken = PerfectCheckers {
            perfect: |_| Ok(false),
            ..PerfectCheckers::default()
        };
        assert!(!perfect_equivalences_with(&f, &broken).unwrap().passed());
    }
}
