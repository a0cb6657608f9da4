//! Finite spaces, the open-set frame `O(X)`, points `pt(L)`, the
//! specialisation order and saturated sets.

use crate::bits::{all_subsets, next_closure_all, Bits, MAX_ELEMENTS};
use crate::canext::{verify_compact, verify_dense, CanExtBundle, Provenance};
use crate::error::{Error, Result};
use crate::filters::{all_filters, scott_open_poset};
use crate::order::{find_isomorphism, FiniteLattice, EXHAUSTIVE_BOUND};
use crate::polarity::{check_fact_properties, verify_uniqueness, Polarity};
use crate::report::Report;

/// A point set with an explicit family of open sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    point_count: usize,
    opens: Vec<Bits>,
}

impl FiniteSpace {
    /// Validates that `opens` is a topology: contains `∅` and the whole
    /// set, no repeats, closed under pairwise unions and intersections.
    pub fn new(point_count: usize, opens: Vec<Bits>) -> Result<FiniteSpace> {
        if point_count > MAX_ELEMENTS {
            return Err(Error::SizeBound {
                what: "space",
                size: point_count,
                bound: MAX_ELEMENTS,
            });
        }
        let full = Bits::full(point_count);
        if let Some(u) = opens.iter().find(|u| !u.is_subset(full)) {
            return Err(Error::NotATopology(format!(
                "open {u} mentions a point outside 0..{point_count}"
            )));
        }
        for (what, s) in [("empty set", Bits::EMPTY), ("whole space", full)] {
            if !opens.contains(&s) {
                return Err(Error::NotATopology(format!("the {what} is not open")));
            }
        }
        for (i, u) in opens.iter().enumerate() {
            for (j, v) in opens.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(Error::NotATopology(format!(
                        "opens {i} and {j} are both {u}"
                    )));
                }
                if !opens.contains(&u.union(*v)) {
                    return Err(Error::NotATopology(format!(
                        "union of opens {i} = {u} and {j} = {v} is not open"
                    )));
                }
                if !opens.contains(&u.intersect(*v)) {
                    return Err(Error::NotATopology(format!(
                        "intersection of opens {i} = {u} and {j} = {v} is not open"
                    )));
                }
            }
        }
        Ok(FiniteSpace { point_count, opens })
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn opens(&self) -> &[Bits] {
        &self.opens
    }

    pub fn points(&self) -> Bits {
        Bits::full(self.point_count)
    }

    pub fn open_index(&self, u: Bits) -> Option<usize> {
        self.opens.iter().position(|&v| v == u)
    }

    /// `{U : x ∈ U}` as open indices.
    pub fn neighbourhoods(&self, x: usize) -> Bits {
        (0..self.opens.len())
            .filter(|&i| self.opens[i].contains(x))
            .collect()
    }
}

/// `O(X)`: the opens under inclusion, element `i` being `opens[i]`.
pub fn open_set_frame(x: &FiniteSpace) -> FiniteLattice {
    FiniteLattice::from_family(&x.opens)
        .expect("a topology is a lattice under inclusion")
        .with_names(x.opens.iter().map(|u| u.to_string()).collect())
}

/// `pt(L)` with the data tying it back to `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub space: FiniteSpace,
    /// The completely prime filter of each point.
    pub point_filters: Vec<Bits>,
    /// `open_of[a]` indexes `{p : p(a) = 1}` in `space.opens()`.
    pub open_of: Vec<usize>,
}

impl Spectrum {
    /// The point `p: L → 2` as a table of 0/1 values.
    pub fn point_table(&self, p: usize) -> Vec<usize> {
        let f = self.point_filters[p];
        (0..self.open_of.len())
            .map(|a| usize::from(f.contains(a)))
            .collect()
    }
}

/// Whether the filter `f` is completely prime: `⋁S ∈ F` forces
/// `S ∩ F ≠ ∅`. All `S` are tried up to the exhaustion bound; above it the
/// empty family and pairs.
pub fn is_completely_prime(l: &FiniteLattice, f: Bits) -> bool {
    if l.size() <= EXHAUSTIVE_BOUND {
        all_subsets(l.size()).all(|s| !f.contains(l.join_all(s)) || s.meets(f))
    } else {
        !f.contains(l.bottom())
            && l.elements().all(|a| {
                l.elements()
                    .all(|b| !f.contains(l.join(a, b)) || f.contains(a) || f.contains(b))
            })
    }
}

/// The frame homomorphisms `L → 2`, found as completely prime filters, with
/// the topology `{p : p(a) = 1}` for `a ∈ L`.
pub fn points(l: &FiniteLattice) -> Result<Spectrum> {
    if !l.is_frame() {
        return Err(Error::NotAFrame("points are taken of a frame".into()));
    }
    let point_filters: Vec<Bits> = all_filters(l)
        .into_iter()
        .filter(|&f| is_completely_prime(l, f))
        .collect();
    let mut opens: Vec<Bits> = Vec::new();
    let mut open_of = Vec::with_capacity(l.size());
    for a in l.elements() {
        let u: Bits = (0..point_filters.len())
            .filter(|&p| point_filters[p].contains(a))
            .collect();
        match opens.iter().position(|&v| v == u) {
            Some(k) => open_of.push(k),
            None => {
                open_of.push(opens.len());
                opens.push(u);
            }
        }
    }
    let space = FiniteSpace::new(point_filters.len(), opens)?;
    assert!(specialization(&space).is_t0(), "spectra are T0");
    Ok(Spectrum {
        space,
        point_filters,
        open_of,
    })
}

/// `x ≤ y` iff every open containing `x` contains `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationOrder {
    up: Vec<Bits>,
}

impl SpecializationOrder {
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `↑x`
    pub fn up(&self, x: usize) -> Bits {
        self.up[x]
    }

    pub fn up_closure(&self, s: Bits) -> Bits {
        s.iter().fold(Bits::EMPTY, |acc, x| acc.union(self.up[x]))
    }

    pub fn is_upset(&self, s: Bits) -> bool {
        self.up_closure(s) == s
    }

    pub fn is_t0(&self) -> bool {
        (0..self.up.len()).all(|x| self.up[x].iter().all(|y| x == y || !self.leq(y, x)))
    }
}

pub fn specialization(x: &FiniteSpace) -> SpecializationOrder {
    let up = (0..x.point_count)
        .map(|p| {
            x.opens
                .iter()
                .filter(|u| u.contains(p))
                .fold(x.points(), |acc, &u| acc.intersect(u))
        })
        .collect();
    SpecializationOrder { up }
}

/// `Up(X, ≤)` in lectic order, and the lattice it forms under inclusion.
pub fn saturated_sets(x: &FiniteSpace) -> (Vec<Bits>, FiniteLattice) {
    let order = specialization(x);
    let sets = next_closure_all(x.point_count, |s| order.up_closure(s));
    let lattice = FiniteLattice::from_family(&sets)
        .expect("upsets form a lattice")
        .with_names(sets.iter().map(|s| s.to_string()).collect());
    (sets, lattice)
}

/// `⋂{U open : s ⊆ U}`
pub fn saturation(x: &FiniteSpace, s: Bits) -> Bits {
    x.opens
        .iter()
        .filter(|u| s.is_subset(**u))
        .fold(x.points(), |acc, &u| acc.intersect(u))
}

/// Saturated sets are the intersections of opens, opens are saturated,
/// and (finite spaces being Alexandrov) every saturated set is open.
pub fn saturation_report(x: &FiniteSpace) -> Report {
    let mut r = Report::new("saturated sets");
    let (sets, _) = saturated_sets(x);
    let order = specialization(x);
    r.check(
        "saturated = intersection of its open neighbourhoods",
        sets.iter()
            .find(|&&s| saturation(x, s) != s)
            .map(|s| format!("{s}")),
    );
    r.check(
        "opens are saturated",
        x.opens
            .iter()
            .find(|&&u| !order.is_upset(u))
            .map(|u| u.to_string()),
    );
    r.check(
        "Up(X) = τ",
        sets.iter()
            .find(|s| x.open_index(**s).is_none())
            .map(|s| format!("{s} is saturated but not open")),
    );
    r
}

/// Why `x` fails to be sober: the map `x ↦ {U : x ∈ U}` into the points of
/// `O(X)` must be a bijection.
pub fn sober_witness(x: &FiniteSpace) -> Option<String> {
    let l = open_set_frame(x);
    let spectrum = points(&l).expect("O(X) is a frame");
    let mut hit = vec![false; spectrum.point_filters.len()];
    for p in 0..x.point_count {
        let nbhd = x.neighbourhoods(p);
        match spectrum.point_filters.iter().position(|&f| f == nbhd) {
            None => {
                return Some(format!(
                    "neighbourhood filter of point {p} is not completely prime"
                ))
            }
            Some(k) if hit[k] => {
                return Some(format!(
                    "point {p} has the same neighbourhoods as another point"
                ))
            }
            Some(k) => hit[k] = true,
        }
    }
    hit.iter().position(|h| !h).map(|k| {
        format!(
            "completely prime filter {} is no point's neighbourhoods",
            spectrum.point_filters[k]
        )
    })
}

pub fn is_sober(x: &FiniteSpace) -> bool {
    sober_witness(x).is_none()
}

/// `L ≅ O(pt(L))`.
pub fn is_spatial(l: &FiniteLattice) -> Result<bool> {
    let spectrum = points(l)?;
    Ok(find_isomorphism(l, &open_set_frame(&spectrum.space)).is_some())
}

fn require_sober(x: &FiniteSpace) -> Result<()> {
    match sober_witness(x) {
        None => Ok(()),
        Some(w) => Err(Error::NotSober(w)),
    }
}

/// `K` is compact: every directed family of opens covering `K` has a
/// member containing `K`.
pub fn is_compact_subset(x: &FiniteSpace, o: &FiniteLattice, k: Bits) -> bool {
    o.directed_subsets().0.iter().all(|&d| {
        let cover = d.iter().fold(Bits::EMPTY, |acc, i| acc.union(x.opens[i]));
        !k.is_subset(cover) || d.iter().any(|i| k.is_subset(x.opens[i]))
    })
}

/// The compact saturated subsets in lectic order.
pub fn compact_saturated_sets(x: &FiniteSpace) -> Vec<Bits> {
    let o = open_set_frame(x);
    saturated_sets(x)
        .0
        .into_iter()
        .filter(|&k| is_compact_subset(x, &o, k))
        .collect()
}

/// `F ↦ ⋂F` and `K ↦ {U : K ⊆ U}` between Scott-open filters of `O(X)` and
/// compact saturated sets are well defined and mutually inverse.
pub fn hofmann_mislove_check(x: &FiniteSpace) -> Result<Report> {
    require_sober(x)?;
    let o = open_set_frame(x);
    let so = scott_open_poset(&o)?;
    let compact = compact_saturated_sets(x);
    let mut r = Report::new("Hofmann–Mislove");
    let order = specialization(x);
    let cap = |f: Bits| {
        f.iter()
            .fold(x.points(), |acc, i| acc.intersect(x.opens[i]))
    };
    let nbhd = |k: Bits| -> Bits {
        (0..x.opens.len())
            .filter(|&i| k.is_subset(x.opens[i]))
            .collect()
    };
    r.check(
        "⋂F is compact saturated",
        so.filters
            .iter()
            .find(|&&f| {
                let k = cap(f);
                !order.is_upset(k) || !is_compact_subset(x, &o, k)
            })
            .map(|f| format!("F={f}")),
    );
    r.check(
        "{U : K ⊆ U} is Scott-open",
        compact
            .iter()
            .find(|&&k| so.index_of(nbhd(k)).is_none())
            .map(|k| format!("K={k}")),
    );
    r.check(
        "K ↦ {U ⊇ K} ↦ ⋂ is the identity",
        compact
            .iter()
            .find(|&&k| cap(nbhd(k)) != k)
            .map(|k| format!("K={k}")),
    );
    r.check(
        "F ↦ ⋂F ↦ {U ⊇ ⋂F} is the identity",
        so.filters
            .iter()
            .find(|&&f| nbhd(cap(f)) != f)
            .map(|f| format!("F={f}")),
    );
    r.check_bool("counts agree", compact.len() == so.len(), || {
        format!(
            "{} compact saturated sets, {} Scott-open filters",
            compact.len(),
            so.len()
        )
    });
    Ok(r)
}

/// The concept lattice of (compact saturated sets, opens, ⊆) is `Up(X)`:
/// the inclusions into `Up(X)` satisfy both polarity properties, and the
/// derived isomorphism exists.
pub fn saturated_polarity_check(x: &FiniteSpace) -> Result<Report> {
    let compact = compact_saturated_sets(x);
    let rows = compact
        .iter()
        .map(|&k| {
            (0..x.opens.len())
                .filter(|&i| k.is_subset(x.opens[i]))
                .collect()
        })
        .collect();
    let polarity = Polarity::from_rows(x.opens.len(), rows)?;
    let concept = polarity.concept_lattice()?;
    let (up_sets, up) = saturated_sets(x);
    let index = |s: Bits| up_sets.iter().position(|&t| t == s).unwrap();
    let f: Vec<usize> = compact.iter().map(|&k| index(k)).collect();
    let g: Vec<usize> = x.opens.iter().map(|&u| index(u)).collect();
    let mut r = Report::new("concept lattice of compact saturated sets and opens");
    r.check_result(
        "inclusions satisfy (1) and (2)",
        &check_fact_properties(&polarity, &up, &f, &g),
    );
    r.check_result(
        "isomorphism to Up(X)",
        &verify_uniqueness(&polarity, &up, &f, &g),
    );
    r.check_bool("sizes agree", concept.lattice.size() == up.size(), || {
        format!(
            "{} closed sets, {} upsets",
            concept.lattice.size(),
            up.size()
        )
    });
    Ok(r)
}

/// `τ ↪ Up(X, ≤)` as a bundle over `O(X)`, with `e_SO(F) = ⋂F`, together
/// with the Dense and Compact verdicts for it.
pub fn space_canext_oracle(x: &FiniteSpace) -> Result<(CanExtBundle, Report)> {
    require_sober(x)?;
    let o = open_set_frame(x);
    let so = scott_open_poset(&o)?;
    let (up_sets, up) = saturated_sets(x);
    let index = |s: Bits| up_sets.iter().position(|&t| t == s).unwrap();
    let e = x.opens.iter().map(|&u| index(u)).collect();
    let e_so = so
        .filters
        .iter()
        .map(|f| {
            index(
                f.iter()
                    .fold(x.points(), |acc, i| acc.intersect(x.opens[i])),
            )
        })
        .collect();
    let bundle = CanExtBundle {
        source: o,
        extension: up,
        scott_open: so,
        e,
        e_so,
        provenance: Provenance::SpaceOracle,
    };
    let mut r = Report::new("space oracle");
    r.absorb("oracle", verify_dense(&bundle));
    r.absorb("oracle", verify_compact(&bundle));
    Ok((bundle, r))
}
