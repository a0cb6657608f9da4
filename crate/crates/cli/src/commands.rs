//! One function per subcommand, each turning documents into reports.

use std::collections::BTreeMap;

use rayon::prelude::*;

use frame_canext::canext::{
    bundle_isomorphism, canonical_extension, frame_coframe_check, verify_basic_properties,
    verify_compact, verify_compact_plus, verify_dense, CanExtBundle,
};
use frame_canext::corpus::named_lattices;
use frame_canext::maps::{
    lift_perfect_hom, omega_pt_actions, perfect_equivalences, verify_extension_lemmas, LatticeMap,
};
use frame_canext::polarity::{check_fact_properties, verify_uniqueness, y_side_lattice, Polarity};
use frame_canext::proximity::{check_axioms, proximity_canonical_extension, ProximityLattice};
use frame_canext::report::{CheckEntry, Report};
use frame_canext::spaces::{
    hofmann_mislove_check, is_spatial, points, saturated_polarity_check, saturated_sets,
    saturation_report, sober_witness, space_canext_oracle, specialization, FiniteSpace,
};
use frame_canext::sublocales::{all_nuclei, sc_lattice, sublocale_coframe, sublocale_report};
use frame_canext::suite::{absorb_result, verify_frame, SuiteOptions};
use frame_canext::{find_isomorphism, Error, FiniteLattice};

use crate::doc::{Document, MapDoc, PolarityDoc, ProximityDoc, SpaceDoc};
use crate::error::CliError;

fn note(r: &mut Report, name: &str, value: impl Into<String>) {
    r.push(CheckEntry::pass(name).with_note(value));
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Order-theoretic predicates of a lattice, or topological ones of a space.
/// Every entry is informational; only malformed input fails.
pub fn check(subject: &str, doc: &Document) -> Result<Report, CliError> {
    let mut r = Report::new(subject);
    match doc {
        Document::Lattice(d) => {
            let l = d.to_lattice()?;
            note(&mut r, "size", l.size().to_string());
            let dist = match l.distributivity_witness() {
                None => "yes".to_string(),
                Some((a, b, c)) => format!("no: a={a}, b={b}, c={c}"),
            };
            note(&mut r, "distributive", dist);
            let frame = match l.frame_law_witness() {
                None => "yes".to_string(),
                Some(v) => format!("no: family {} and b={}", v.family, v.b),
            };
            note(&mut r, "frame", frame);
            note(&mut r, "coframe", yes_no(l.is_coframe()));
            note(&mut r, "boolean", yes_no(l.is_boolean()));
            note(
                &mut r,
                "completely distributive",
                yes_no(l.is_completely_distributive()),
            );
            if l.is_frame() {
                note(&mut r, "locally compact", yes_no(l.is_locally_compact()?));
                note(
                    &mut r,
                    "stably locally compact",
                    yes_no(l.is_stably_locally_compact()?),
                );
                note(&mut r, "spatial", yes_no(is_spatial(&l)?));
                let subfit = match l.subfitness_witness() {
                    None => "yes".to_string(),
                    Some((a, b)) => format!("no: a={a}, b={b}"),
                };
                note(&mut r, "subfit", subfit);
            }
        }
        Document::Space(d) => {
            let x = d.to_space()?;
            note(&mut r, "points", x.point_count().to_string());
            note(&mut r, "opens", x.opens().len().to_string());
            note(&mut r, "T0", yes_no(specialization(&x).is_t0()));
            note(
                &mut r,
                "sober",
                sober_witness(&x).map_or("yes".to_string(), |w| format!("no: {w}")),
            );
        }
        other => {
            return Err(CliError::Usage(format!(
                "check takes a lattice or space document, not {}",
                other.kind()
            )))
        }
    }
    Ok(r)
}

fn lattice_of(doc: &Document, command: &str) -> Result<FiniteLattice, CliError> {
    match doc {
        Document::Lattice(d) => d.to_lattice(),
        other => Err(CliError::Usage(format!(
            "{command} takes a lattice document, not {}",
            other.kind()
        ))),
    }
}

/// The canonical extension with the three defining checks.
pub fn canext(subject: &str, doc: &Document) -> Result<(Report, Option<CanExtBundle>), CliError> {
    let l = lattice_of(doc, "canext")?;
    let mut r = Report::new(subject);
    let b = match canonical_extension(&l) {
        Ok(b) => b,
        Err(e) => {
            r.check("build", Some(e.to_string()));
            return Ok((r, None));
        }
    };
    note(&mut r, "extension size", b.extension.size().to_string());
    note(&mut r, "Scott-open filters", b.scott_open.len().to_string());
    r.absorb("canext", verify_dense(&b));
    r.absorb("canext", verify_compact(&b));
    r.absorb("canext", verify_compact_plus(&b));
    Ok((r, Some(b)))
}

/// `pt(L)` and the up-sets of its specialisation order.
pub fn spectrum(subject: &str, doc: &Document) -> Result<Report, CliError> {
    let l = lattice_of(doc, "spectrum")?;
    let mut r = Report::new(subject);
    let sp = match points(&l) {
        Ok(s) => s,
        Err(e) => {
            r.check("pt(L)", Some(e.to_string()));
            return Ok(r);
        }
    };
    note(
        &mut r,
        "pt(L)",
        format!("{} points", sp.space.point_count()),
    );
    for (p, f) in sp.point_filters.iter().enumerate() {
        let members: Vec<String> = f.iter().map(|a| l.label(a)).collect();
        note(
            &mut r,
            &format!("point {p}"),
            format!("{{{}}}", members.join(", ")),
        );
    }
    let (_, up) = saturated_sets(&sp.space);
    note(&mut r, "Up(pt L)", format!("{} up-sets", up.size()));
    note(&mut r, "spatial", yes_no(is_spatial(&l)?));
    match canonical_extension(&l) {
        Ok(b) => {
            r.check_bool(
                "Up(pt L) ≅ L^δ",
                find_isomorphism(&up, &b.extension).is_some(),
                || format!("sizes {} and {}", up.size(), b.extension.size()),
            );
        }
        Err(e) => {
            r.check("Up(pt L) ≅ L^δ", Some(e.to_string()));
        }
    }
    r.check_bool(
        "Up(pt L) ≅ L",
        find_isomorphism(&up, &l).is_some(),
        || format!("sizes {} and {}", up.size(), l.size()),
    );
    Ok(r)
}

fn polarity_report(subject: &str, d: &PolarityDoc) -> Result<Report, CliError> {
    let p = d.to_polarity()?;
    let mut r = Report::new(subject);
    let c = match p.concept_lattice() {
        Ok(c) => c,
        Err(e) => {
            r.check("concept lattice", Some(e.to_string()));
            return Ok(r);
        }
    };
    note(
        &mut r,
        "concept lattice",
        format!("{} concepts", c.lattice.size()),
    );
    r.check_result(
        "f[X] join-dense, g[Y] meet-dense, f(x) ≤ g(y) iff xZy",
        &check_fact_properties(&p, &c.lattice, &c.f_map, &c.g_map),
    );
    r.check_result("Y-side construction is isomorphic", &uniqueness(&p));
    Ok(r)
}

fn uniqueness(p: &Polarity) -> frame_canext::Result<Vec<usize>> {
    let (c2, f2, g2) = y_side_lattice(p)?;
    verify_uniqueness(p, &c2, &f2, &g2)
}

/// The concept lattice of a polarity.
pub fn fca(subject: &str, doc: &Document) -> Result<Report, CliError> {
    match doc {
        Document::Polarity(d) => polarity_report(subject, d),
        other => Err(CliError::Usage(format!(
            "fca takes a polarity document, not {}",
            other.kind()
        ))),
    }
}

/// `Sl(L)`, `Sc(L)` and the nuclei.
pub fn subloc(subject: &str, doc: &Document, opts: SuiteOptions) -> Result<Report, CliError> {
    let l = lattice_of(doc, "subloc")?;
    let mut r = Report::new(subject);
    if l.size() > opts.bound {
        r.skip(
            "sublocales",
            format!("size {} above bound {}", l.size(), opts.bound),
        );
        return Ok(r);
    }
    absorb_result(
        &mut r,
        "sublocales",
        (|| {
            let sl = sublocale_coframe(&l)?;
            let nuclei = all_nuclei(&l)?;
            let (sc, _) = sc_lattice(&l)?;
            let mut sub = Report::new("sublocales");
            sub.push(CheckEntry::pass("Sl(L)").with_note(format!("{} sublocales", sl.len())));
            sub.push(CheckEntry::pass("nuclei").with_note(format!("{} nuclei", nuclei.len())));
            sub.push(CheckEntry::pass("Sc(L)").with_note(format!("{} elements", sc.len())));
            sub.absorb("coframe", sublocale_report(&l, &sl));
            Ok(sub)
        })(),
    );
    Ok(r)
}

/// Lattices a map document may refer to, by name.
pub type LatticeTable = BTreeMap<String, FiniteLattice>;

pub fn named_table() -> LatticeTable {
    named_lattices()
        .into_iter()
        .map(|(n, l)| (n.to_string(), l))
        .collect()
}

fn map_report(subject: &str, d: &MapDoc, lattices: &LatticeTable) -> Result<Report, CliError> {
    let find = |n: &str| {
        lattices
            .get(n)
            .ok_or_else(|| CliError::Semantic(format!("map refers to unknown lattice {n:?}")))
    };
    let (ls, lt) = (find(&d.source)?, find(&d.target)?);
    let f = LatticeMap::new(ls, lt, d.table.clone())?;
    let mut r = Report::new(subject);
    let flags = f.classify();
    note(&mut r, "classification", flags.to_string());
    r.check_bool("monotone (σ and π need it)", flags.monotone, || {
        let (x, y) = f
            .monotone_witness()
            .expect("non-monotone map has a witness");
        format!("{x} ≤ {y} but f({x}) ≰ f({y})")
    });
    if !flags.monotone {
        return Ok(r);
    }
    absorb_result(
        &mut r,
        "extensions",
        (|| {
            let bs = canonical_extension(ls)?;
            let bt = canonical_extension(lt)?;
            let id = LatticeMap::identity(lt);
            let mut sub = verify_extension_lemmas(&f, &id, &bs, &bt, &bt)?;
            if flags.frame_hom() {
                sub.absorb("equivalences", perfect_equivalences(&f)?);
                sub.absorb("points", omega_pt_actions(&f)?);
                if flags.perfect {
                    sub.absorb("lift", lift_perfect_hom(&f, &bs, &bt)?.1);
                }
            }
            Ok(sub)
        })(),
    );
    Ok(r)
}

fn space_report(subject: &str, d: &SpaceDoc) -> Result<Report, CliError> {
    let x: FiniteSpace = d.to_space()?;
    let mut r = Report::new(subject);
    r.absorb("saturation", saturation_report(&x));
    if let Some(w) = sober_witness(&x) {
        r.skip("sober-space checks", format!("space is not sober: {w}"));
        return Ok(r);
    }
    absorb_result(
        &mut r,
        "oracle",
        space_canext_oracle(&x).map(|(_, rep)| rep),
    );
    absorb_result(&mut r, "hofmann-mislove", hofmann_mislove_check(&x));
    absorb_result(&mut r, "saturated polarity", saturated_polarity_check(&x));
    Ok(r)
}

fn proximity_report(subject: &str, d: &ProximityDoc) -> Result<Report, CliError> {
    let (base, rel) = d.to_parts()?;
    let mut r = Report::new(subject);
    let axioms = match check_axioms(&base, &rel) {
        Ok(a) => a,
        Err(e) => {
            r.check("axioms", Some(e.to_string()));
            return Ok(r);
        }
    };
    let ok = axioms.passed();
    r.absorb("axioms", axioms);
    if ok {
        absorb_result(
            &mut r,
            "extension",
            (|| {
                let p = ProximityLattice::new(base, rel)?;
                Ok(proximity_canonical_extension(&p)?.report)
            })(),
        );
    }
    Ok(r)
}

fn bundle_report(subject: &str, b: &CanExtBundle, opts: SuiteOptions) -> Report {
    let mut r = Report::new(subject);
    r.absorb("canext", verify_dense(b));
    r.absorb("canext", verify_compact(b));
    r.absorb("canext", verify_compact_plus(b));
    r.absorb("canext", verify_basic_properties(b, opts.seed));
    r.absorb("canext", frame_coframe_check(b));
    let agree = canonical_extension(&b.source).and_then(|c| bundle_isomorphism(b, &c));
    r.check_result("isomorphic to the constructed extension", &agree);
    r
}

/// One parsed input to `verify`.
pub struct Input {
    pub subject: String,
    pub doc: Document,
}

/// Runs the full suite over every input. Lattice documents are also made
/// available, by name, to map documents in the same run.
pub fn verify(inputs: &[Input], opts: SuiteOptions) -> Result<Vec<Report>, CliError> {
    let mut table = named_table();
    for i in inputs {
        if let Document::Lattice(d) = &i.doc {
            let l = d.to_lattice().map_err(|e| e.in_file(&i.subject))?;
            table.insert(d.name.clone().unwrap_or_else(|| i.subject.clone()), l);
        }
    }
    inputs
        .par_iter()
        .map(|i| verify_one(i, &table, opts).map_err(|e| e.in_file(&i.subject)))
        .collect()
}

fn verify_one(i: &Input, table: &LatticeTable, opts: SuiteOptions) -> Result<Report, CliError> {
    let s = i.subject.as_str();
    match &i.doc {
        Document::Lattice(d) => Ok(verify_frame(s, &d.to_lattice()?, opts)),
        Document::Space(d) => space_report(s, d),
        Document::Map(d) => map_report(s, d, table),
        Document::Polarity(d) => polarity_report(s, d),
        Document::Proximity(d) => proximity_report(s, d),
        Document::Canext(d) => match d.to_bundle() {
            Ok(b) => Ok(bundle_report(s, &b, opts)),
            Err(CliError::Structure(e @ Error::NotAFrame(_))) => {
                let mut r = Report::new(s);
                r.check("bundle", Some(e.to_string()));
                Ok(r)
            }
            Err(e) => Err(e),
        },
    }
}
