//! Nuclei and sublocales of finite frames: `Sl(L)`, open and closed
//! sublocales, compact fitted sublocales, the injectivity criterion, `Sc(L)`
//! and the Boolean case.

use crate::bits::Bits;
use crate::canext::{canonical_extension, dlat_canonical_extension, CanExtBundle};
use crate::error::{Error, Result};
use crate::filters::{ideal_lattice, scott_open_poset};
use crate::maps::{lift_perfect_hom, right_adjoint, LatticeMap};
use crate::order::{find_isomorphism, FiniteLattice};
use crate::report::Report;

/// Largest host for which carriers are swept.
pub const SUBLOCALE_BOUND: usize = 16;

/// A nucleus, stored as its table on the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nucleus {
    pub table: Vec<usize>,
}

impl Nucleus {
    /// Checks inflationary, idempotent, monotone and binary meets.
    pub fn new(l: &FiniteLattice, table: Vec<usize>) -> Result<Nucleus> {
        match nucleus_violation(l, &table) {
            Some(w) => Err(Error::NotASublocale(w)),
            None => Ok(Nucleus { table }),
        }
    }

    pub fn fixpoints(&self) -> Bits {
        (0..self.table.len())
            .filter(|&x| self.table[x] == x)
            .collect()
    }
}

pub fn nucleus_violation(l: &FiniteLattice, t: &[usize]) -> Option<String> {
    if t.len() != l.size() || t.iter().any(|&v| v >= l.size()) {
        return Some("table does not fit the host".into());
    }
    for x in l.elements() {
        if !l.leq(x, t[x]) {
            return Some(format!("not inflationary at {}", l.label(x)));
        }
        if t[t[x]] != t[x] {
            return Some(format!("not idempotent at {}", l.label(x)));
        }
        for y in l.elements() {
            if t[l.meet(x, y)] != l.meet(t[x], t[y]) {
                return Some(format!(
                    "meet of {} and {} not preserved",
                    l.label(x),
                    l.label(y)
                ));
            }
        }
    }
    // monotonicity follows from meet preservation; checked anyway
    l.elements().find_map(|x| {
        l.up(x)
            .iter()
            .find(|&y| !l.leq(t[x], t[y]))
            .map(|y| format!("not monotone at {} ≤ {}", l.label(x), l.label(y)))
    })
}

/// Why `s` is not a sublocale of `l`, if it is not: it must contain the
/// top, be closed under binary meets and under `x → s` for every `x`.
pub fn sublocale_violation(l: &FiniteLattice, s: Bits) -> Option<String> {
    if !s.contains(l.top()) {
        return Some("top missing".into());
    }
    for a in s.iter() {
        for b in s.iter() {
            if !s.contains(l.meet(a, b)) {
                return Some(format!("{} ∧ {} missing", l.label(a), l.label(b)));
            }
        }
        for x in l.elements() {
            match l.implies(x, a) {
                Some(i) if s.contains(i) => {}
                Some(_) => return Some(format!("{} → {} missing", l.label(x), l.label(a))),
                None => return Some(format!("{} → {} undefined", l.label(x), l.label(a))),
            }
        }
    }
    None
}

pub fn is_sublocale(l: &FiniteLattice, s: Bits) -> bool {
    sublocale_violation(l, s).is_none()
}

/// `ν(x) = ⋀{s ∈ S : x ≤ s}`
pub fn nucleus_of(l: &FiniteLattice, s: Bits) -> Nucleus {
    Nucleus {
        table: l
            .elements()
            .map(|x| l.meet_all(s.intersect(l.up(x))))
            .collect(),
    }
}

/// `Sl(L)`: every sublocale, its nucleus, and the inclusion order.
#[derive(Debug, Clone)]
pub struct SublocaleCoframe {
    /// Carriers, in increasing numeric order of their bit patterns.
    pub carriers: Vec<Bits>,
    pub nuclei: Vec<Nucleus>,
    pub lattice: FiniteLattice,
}

impl SublocaleCoframe {
    pub fn len(&self) -> usize {
        self.carriers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carriers.is_empty()
    }

    pub fn index_of(&self, s: Bits) -> Option<usize> {
        self.carriers.binary_search_by_key(&s.0, |c| c.0).ok()
    }

    /// The join in `Sl(L)`, as a carrier.
    pub fn join(&self, a: Bits, b: Bits) -> Bits {
        let (i, j) = (self.index_of(a).unwrap(), self.index_of(b).unwrap());
        self.carriers[self.lattice.join(i, j)]
    }
}

fn require_host(l: &FiniteLattice) -> Result<()> {
    if l.size() > SUBLOCALE_BOUND {
        return Err(Error::SizeBound {
            what: "sublocale host",
            size: l.size(),
            bound: SUBLOCALE_BOUND,
        });
    }
    if let Some(v) = l.frame_law_witness() {
        return Err(Error::NotAFrame(format!(
            "frame law fails for family {} and b={}",
            v.family, v.b
        )));
    }
    Ok(())
}

/// Sweeps all `2^(n-1)` subsets containing the top.
pub fn sublocale_coframe(l: &FiniteLattice) -> Result<SublocaleCoframe> {
    require_host(l)?;
    let top = l.top();
    let rest: Vec<usize> = l.elements().filter(|&x| x != top).collect();
    let mut carriers: Vec<Bits> = (0u64..1 << rest.len())
        .map(|code| {
            let mut s = Bits::singleton(top);
            for (k, &x) in rest.iter().enumerate() {
                if code >> k & 1 == 1 {
                    s.insert(x);
                }
            }
            s
        })
        .filter(|&s| is_sublocale(l, s))
        .collect();
    carriers.sort_by_key(|c| c.0);
    let nuclei = carriers.iter().map(|&s| nucleus_of(l, s)).collect();
    let lattice = FiniteLattice::from_family(&carriers)?;
    Ok(SublocaleCoframe {
        carriers,
        nuclei,
        lattice,
    })
}

pub fn all_nuclei(l: &FiniteLattice) -> Result<Vec<Nucleus>> {
    Ok(sublocale_coframe(l)?.nuclei)
}

/// Structural checks on `Sl(L)`: nuclei valid with the right fixpoints,
/// meets are intersections, coframe, open/closed complements, and
/// `a ↦ U_a` injective and monotone.
pub fn sublocale_report(l: &FiniteLattice, sl: &SublocaleCoframe) -> Report {
    let mut r = Report::new("sublocales");
    let w = sl.nuclei.iter().zip(&sl.carriers).find_map(|(n, &c)| {
        nucleus_violation(l, &n.table)
            .or_else(|| (n.fixpoints() != c).then(|| "fixpoints differ from carrier".into()))
            .map(|v| format!("carrier {c}: {v}"))
    });
    r.check("derived nuclei are nuclei with the carrier as fixpoints", w);
    let x = &sl.lattice;
    let w = x.elements().find_map(|i| {
        x.elements()
            .find(|&j| sl.carriers[x.meet(i, j)] != sl.carriers[i].intersect(sl.carriers[j]))
            .map(|j| format!("{} and {}", sl.carriers[i], sl.carriers[j]))
    });
    r.check("Sl(L) meets are intersections", w);
    r.check_bool("Sl(L) is a coframe", x.is_coframe(), || {
        "Sl(L)^op fails the frame law".into()
    });
    let w = l.elements().find(|&a| {
        let (o, c) = (open_sublocale(l, a), closed_sublocale(l, a));
        match (sl.index_of(o), sl.index_of(c)) {
            (Some(i), Some(j)) => x.meet(i, j) != x.bottom() || x.join(i, j) != x.top(),
            _ => true,
        }
    });
    r.check(
        "open and closed sublocales are complements",
        w.map(|a| format!("at {}", l.label(a))),
    );
    let opens: Vec<Bits> = l.elements().map(|a| open_sublocale(l, a)).collect();
    let w = l.elements().find_map(|a| {
        l.elements()
            .find(|&b| {
                (a != b && opens[a] == opens[b]) || (l.leq(a, b) && !opens[a].is_subset(opens[b]))
            })
            .map(|b| format!("{} and {}", l.label(a), l.label(b)))
    });
    r.check("a ↦ U_a is injective and monotone", w);
    r
}

/// `U_a = {x : a → x = x}`
pub fn open_sublocale(l: &FiniteLattice, a: usize) -> Bits {
    l.elements()
        .filter(|&x| l.implies(a, x) == Some(x))
        .collect()
}

/// `{x : a ∨ x = x} = ↑a`
pub fn closed_sublocale(l: &FiniteLattice, a: usize) -> Bits {
    l.elements().filter(|&x| l.join(a, x) == x).collect()
}

/// The sublocale as a lattice in the inherited order, if it is one.
fn inherited(l: &FiniteLattice, s: Bits) -> Option<FiniteLattice> {
    let members: Vec<usize> = s.iter().collect();
    let up = members
        .iter()
        .map(|&x| {
            (0..members.len())
                .filter(|&j| l.leq(x, members[j]))
                .collect()
        })
        .collect();
    FiniteLattice::from_up_sets(up).ok()
}

/// Compactness by definition in the inherited order: every directed
/// family whose join is the top contains the top.
pub fn is_compact_sublocale(l: &FiniteLattice, s: Bits) -> bool {
    let Some(sub) = inherited(l, s) else {
        return false;
    };
    let (dirs, _) = sub.directed_subsets();
    dirs.iter()
        .all(|&d| sub.join_all(d) != sub.top() || d.contains(sub.top()))
}

#[derive(Debug, Clone)]
pub struct FittedCompact {
    /// Intersections of open sublocales, sorted.
    pub fitted: Vec<Bits>,
    /// The compact ones among them.
    pub compact_fitted: Vec<Bits>,
    /// `K_F = ⋂{U_a : a ∈ F}` for each Scott-open filter `F`, in the
    /// indexing of `scott_open_poset`.
    pub of_filter: Vec<Bits>,
    pub report: Report,
}

/// Compact fitted sublocales and their correspondence
/// `F ↦ ⋂{U_a : a ∈ F}`, `K ↦ {a : K ⊆ U_a}` with Scott-open filters.
pub fn fitted_and_compact(l: &FiniteLattice) -> Result<FittedCompact> {
    require_host(l)?;
    let opens: Vec<Bits> = l.elements().map(|a| open_sublocale(l, a)).collect();
    let mut fitted = vec![l.all()];
    loop {
        let before = fitted.len();
        for i in 0..fitted.len() {
            for &u in &opens {
                let k = fitted[i].intersect(u);
                if !fitted.contains(&k) {
                    fitted.push(k);
                }
            }
        }
        if fitted.len() == before {
            break;
        }
    }
    fitted.sort_by_key(|c| c.0);
    let compact_fitted: Vec<Bits> = fitted
        .iter()
        .copied()
        .filter(|&k| is_sublocale(l, k) && is_compact_sublocale(l, k))
        .collect();
    let so = scott_open_poset(l)?;
    let k_of = |f: Bits| f.iter().fold(l.all(), |acc, a| acc.intersect(opens[a]));
    let f_of = |k: Bits| -> Bits { l.elements().filter(|&a| k.is_subset(opens[a])).collect() };
    let of_filter: Vec<Bits> = so.filters.iter().map(|&f| k_of(f)).collect();

    let mut r = Report::new("compact fitted sublocales");
    r.check_bool(
        "fitted sets are sublocales",
        fitted.iter().all(|&k| is_sublocale(l, k)),
        || "an intersection of opens is not a sublocale".into(),
    );
    r.check_bool(
        "as many compact fitted sublocales as Scott-open filters",
        compact_fitted.len() == so.len(),
        || {
            format!(
                "{} compact fitted, {} filters",
                compact_fitted.len(),
                so.len()
            )
        },
    );
    let w = so.filters.iter().zip(&of_filter).find_map(|(&f, &k)| {
        if !compact_fitted.contains(&k) {
            Some(format!("K_F for F={f} is {k}, not compact fitted"))
        } else if f_of(k) != f {
            Some(format!("F={f} comes back as {}", f_of(k)))
        } else {
            None
        }
    });
    r.check("F ↦ K_F ↦ F is the identity", w);
    let w = compact_fitted.iter().find_map(|&k| {
        let f = f_of(k);
        if so.index_of(f).is_none() {
            Some(format!("filter of K={k} is {f}, not Scott-open"))
        } else if k_of(f) != k {
            Some(format!("K={k} comes back as {}", k_of(f)))
        } else {
            None
        }
    });
    r.check("K ↦ F_K ↦ K is the identity", w);
    Ok(FittedCompact {
        fitted,
        compact_fitted,
        of_filter,
        report: r,
    })
}

/// The two sides of the injectivity criterion, swappable for fault
/// injection.
#[derive(Clone, Copy)]
pub struct InjectivityCheckers {
    /// `U_a ⊆ U_b` iff every compact fitted `K ⊆ U_a` has `K ⊆ U_b`.
    pub separation: fn(&FiniteLattice, &[Bits]) -> bool,
    pub e_injective: fn(&CanExtBundle) -> bool,
}

impl Default for InjectivityCheckers {
    fn default() -> Self {
        InjectivityCheckers {
            separation: separation_holds,
            e_injective: |b| {
                let mut v = b.e.clone();
                v.sort_unstable();
                v.dedup();
                v.len() == b.e.len()
            },
        }
    }
}

fn separation_holds(l: &FiniteLattice, compact_fitted: &[Bits]) -> bool {
    let opens: Vec<Bits> = l.elements().map(|a| open_sublocale(l, a)).collect();
    opens.iter().all(|&u| {
        opens.iter().all(|&v| {
            let by_k = compact_fitted
                .iter()
                .all(|&k| !k.is_subset(u) || k.is_subset(v));
            u.is_subset(v) == by_k
        })
    })
}

pub fn injectivity_criterion(l: &FiniteLattice) -> Result<Report> {
    injectivity_criterion_with(l, &InjectivityCheckers::default())
}

/// Evaluates the separation condition and injectivity of `e` and reports
/// whether they agree.
pub fn injectivity_criterion_with(
    l: &FiniteLattice,
    checkers: &InjectivityCheckers,
) -> Result<Report> {
    let fc = fitted_and_compact(l)?;
    let b = canonical_extension(l)?;
    let sep = (checkers.separation)(l, &fc.compact_fitted);
    let inj = (checkers.e_injective)(&b);
    let mut r = Report::new("injectivity criterion");
    r.check(
        "separation by compact fitted sublocales ⇔ e injective",
        (sep != inj).then(|| format!("separation={sep}, injective={inj}")),
    )
    .bound_note = Some(format!("separation={sep}, injective={inj}"));
    Ok(r)
}

/// `Sc(L)`: joins in `Sl(L)` of closed sublocales, as carriers sorted by
/// bit pattern, with the inclusion order.
pub fn sc_lattice(l: &FiniteLattice) -> Result<(Vec<Bits>, FiniteLattice)> {
    let sl = sublocale_coframe(l)?;
    sc_from(l, &sl)
}

fn sc_from(l: &FiniteLattice, sl: &SublocaleCoframe) -> Result<(Vec<Bits>, FiniteLattice)> {
    // the empty join is {1} = ↑1
    let mut sc: Vec<Bits> = l.elements().map(|a| closed_sublocale(l, a)).collect();
    sc.sort_by_key(|c| c.0);
    sc.dedup();
    loop {
        let before = sc.len();
        for i in 0..sc.len() {
            for j in i + 1..sc.len() {
                let k = sl.join(sc[i], sc[j]);
                if !sc.contains(&k) {
                    sc.push(k);
                }
            }
        }
        if sc.len() == before {
            break;
        }
    }
    sc.sort_by_key(|c| c.0);
    let lattice = FiniteLattice::from_family(&sc)?;
    Ok((sc, lattice))
}

/// `Sc(Idl(B)) ≅ B^δ` for a finite Boolean algebra `B`, and the embedding
/// condition (for `x < y` in the extension there are `a < b` with
/// `x ∧ b ≤ a` and `y ∨ a ≥ b`) for `e: Idl(B) → Idl(B)^δ`. The condition's
/// hypotheses (subfit source, Boolean target, injective `e`) are recorded
/// as their own entries.
pub fn boolean_theorem_check(b: &FiniteLattice) -> Result<Report> {
    if let Some(a) = b.boolean_witness() {
        return Err(Error::NotBoolean(a));
    }
    let d = dlat_canonical_extension(b)?;
    let (_, idl) = ideal_lattice(b);
    let (_, sc) = sc_lattice(&idl)?;
    let m = &d.bundle.extension;
    let e = &d.bundle.e;
    let mut r = Report::new("Boolean case");
    r.check_bool(
        "Sc(Idl(B)) ≅ B^δ",
        find_isomorphism(&sc, m).is_some(),
        || format!("{} and {} elements, no isomorphism", sc.size(), m.size()),
    );
    r.check_bool(
        "B^δ ≅ B for finite B",
        find_isomorphism(m, b).is_some(),
        || format!("{} and {} elements", m.size(), b.size()),
    );

    r.check(
        "hypothesis: Idl(B) is subfit",
        idl.subfitness_witness()
            .map(|(a, c)| format!("a={}, b={}", idl.label(a), idl.label(c))),
    );
    r.check_bool("hypothesis: extension is Boolean", m.is_boolean(), || {
        "some element has no complement".into()
    });
    let mut sorted = e.clone();
    sorted.sort_unstable();
    sorted.dedup();
    r.check_bool(
        "hypothesis: e is an embedding",
        sorted.len() == e.len(),
        || "e is not injective".into(),
    );
    let w = m.elements().find_map(|x| {
        m.elements()
            .filter(|&y| m.lt(x, y))
            .find(|&y| {
                !idl.elements().any(|a| {
                    idl.elements().any(|bb| {
                        idl.lt(a, bb)
                            && m.leq(m.meet(x, e[bb]), e[a])
                            && m.leq(e[bb], m.join(y, e[a]))
                    })
                })
            })
            .map(|y| format!("x={}, y={}", m.label(x), m.label(y)))
    });
    r.check("embedding condition: x ∧ b ≤ a and y ∨ a ≥ b", w);
    Ok(r)
}

/// For a perfect onto frame hom `h: L ↠ S`: `h^δ` is onto, so the image of
/// its right adjoint is a sublocale of `L^δ` isomorphic to `S^δ`; also
/// `h^δ(e_SO(h⁻¹F)) = e_SO(F)`. Returns that carrier.
pub fn perfect_sublocale_lift(
    h: &LatticeMap,
    bl: &CanExtBundle,
    bs: &CanExtBundle,
) -> Result<(Bits, Report)> {
    let fl = h.classify_with(&bl.scott_open, &bs.scott_open);
    let onto = h.image(h.source.all()) == h.target.all();
    if !fl.frame_hom() || !fl.perfect || !onto {
        return Err(Error::NotPerfectOnto(format!("{fl}, onto={onto}")));
    }
    let (hd, mut r) = lift_perfect_hom(h, bl, bs)?;
    let (xl, xs) = (&bl.extension, &bs.extension);
    let mut image = vec![false; xs.size()];
    for &v in &hd {
        image[v] = true;
    }
    r.check_bool("h^δ is onto", image.iter().all(|&v| v), || {
        "some extension element is missed".into()
    });
    let lifted = LatticeMap::new(xl, xs, hd.clone())?;
    let carrier = match right_adjoint(&lifted) {
        Ok(g) => g.iter().copied().collect(),
        Err(w) => {
            r.check("h^δ has a right adjoint", Some(format!("join of {w} lost")));
            Bits::EMPTY
        }
    };
    r.check(
        "image of the right adjoint is a sublocale",
        sublocale_violation(xl, carrier),
    );
    let w = (0..bs.scott_open.len()).find_map(|i| {
        let f = bs.scott_open.filters[i];
        let pre = h.preimage(f);
        match bl.scott_open.index_of(pre) {
            Some(j) if hd[bl.e_so[j]] == bs.e_so[i] => None,
            Some(_) => Some(format!("h^δ(e_SO(h⁻¹{f})) ≠ e_SO({f})")),
            None => Some(format!("h⁻¹{f} = {pre} is not Scott-open")),
        }
    });
    r.check("h^δ(e_SO(h⁻¹F)) = e_SO(F)", w);
    Ok((carrier, r))
}

/// Every table on `l` satisfying the nucleus laws, by brute force; only
/// for very small hosts.
pub fn nuclei_brute_force(l: &FiniteLattice) -> Vec<Vec<usize>> {
    let n = l.size();
    assert!(n <= 6, "brute force over n^n tables");
    let mut out = Vec::new();
    for code in 0..n.pow(n as u32) {
        let mut c = code;
        let t: Vec<usize> = (0..n)
            .map(|_| {
                let v = c % n;
                c /= n;
                v
            })
            .collect();
        if nucleus_violation(l, &t).is_none() {
            out.push(t);
        }
    }
    out
}
