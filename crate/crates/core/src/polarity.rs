//! Polarities `(X, Y, Z)` and their concept lattices.
//!
//! A relation `Z ⊆ X × Y` induces the antitone pair
//! `p(M) = {y : ∀x∈M. xZy}` and `q(N) = {x : ∀y∈N. xZy}`. The fixpoints of
//! `q∘p` form a complete lattice `C` with structure maps
//! `f(x) = qp({x})` and `g(y) = q({y})`, characterised up to unique
//! isomorphism by
//!
//! 1. every `u` is the join of the `f(x) ≤ u` and the meet of the `g(y) ≥ u`;
//! 2. `f(x) ≤ g(y)` iff `xZy`.

use crate::bits::{next_closure_all, Bits, MAX_ELEMENTS};
use crate::error::{Error, Result};
use crate::order::{is_order_isomorphism, FiniteLattice};

/// Largest side a polarity may have (the bit-set width).
pub const SIDE_BOUND: usize = MAX_ELEMENTS;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polarity {
    x_size: usize,
    y_size: usize,
    rows: Vec<Bits>,
    cols: Vec<Bits>,
}

impl Polarity {
    pub fn new(x_size: usize, y_size: usize, pairs: &[(usize, usize)]) -> Result<Polarity> {
        let mut rows = vec![Bits::EMPTY; x_size];
        for &(x, y) in pairs {
            if x >= x_size || y >= y_size {
                return Err(Error::IndexOutOfRange(x, y, x_size.max(y_size)));
            }
            rows[x].insert(y);
        }
        Polarity::from_rows(y_size, rows)
    }

    /// `rows[x]` is the set of `y` with `xZy`.
    pub fn from_rows(y_size: usize, rows: Vec<Bits>) -> Result<Polarity> {
        let x_size = rows.len();
        for (what, size) in [("polarity X side", x_size), ("polarity Y side", y_size)] {
            if size > SIDE_BOUND {
                return Err(Error::SizeBound {
                    what,
                    size,
                    bound: SIDE_BOUND,
                });
            }
        }
        let mut cols = vec![Bits::EMPTY; y_size];
        for (x, row) in rows.iter().enumerate() {
            if !row.is_subset(Bits::full(y_size)) {
                let y = row.minus(Bits::full(y_size)).first().unwrap();
                return Err(Error::IndexOutOfRange(x, y, y_size));
            }
            for y in row.iter() {
                cols[y].insert(x);
            }
        }
        Ok(Polarity {
            x_size,
            y_size,
            rows,
            cols,
        })
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    /// The related pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.x_size)
            .flat_map(|x| self.rows[x].iter().map(move |y| (x, y)))
            .collect()
    }

    /// The same relation read from `Y` to `X`.
    pub fn transpose(&self) -> Polarity {
        Polarity {
            x_size: self.y_size,
            y_size: self.x_size,
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// `p(M) = {y : ∀x∈M. xZy}`
    pub fn polar_right(&self, m: Bits) -> Bits {
        m.iter().fold(Bits::full(self.y_size), |acc, x| {
            acc.intersect(self.rows[x])
        })
    }

    /// `q(N) = {x : ∀y∈N. xZy}`
    pub fn polar_left(&self, n: Bits) -> Bits {
        n.iter().fold(Bits::full(self.x_size), |acc, y| {
            acc.intersect(self.cols[y])
        })
    }

    /// `q(p(M))`
    pub fn closure(&self, m: Bits) -> Bits {
        self.polar_left(self.polar_right(m))
    }

    /// All fixpoints of `q∘p` in lectic order. The count is cross-checked
    /// against the fixpoints of `p∘q` on the `Y` side.
    pub fn galois_closed_sets(&self) -> Vec<Bits> {
        let closed = next_closure_all(self.x_size, |m| self.closure(m));
        let dual = self.transpose();
        let y_closed = next_closure_all(self.y_size, |n| dual.closure(n));
        assert_eq!(
            closed.len(),
            y_closed.len(),
            "closed sets on the two sides of a polarity must correspond"
        );
        closed
    }

    /// The concept lattice `C = 𝒢(X, Y, Z)` with its maps `f` and `g`.
    pub fn concept_lattice(&self) -> Result<ConceptLattice> {
        let closed_sets = self.galois_closed_sets();
        if closed_sets.len() > MAX_ELEMENTS {
            return Err(Error::SizeBound {
                what: "concept lattice",
                size: closed_sets.len(),
                bound: MAX_ELEMENTS,
            });
        }
        let lattice = FiniteLattice::from_family(&closed_sets)?;
        let index_of = |s: Bits| {
            closed_sets
                .iter()
                .position(|&c| c == s)
                .expect("closure lands on an enumerated closed set")
        };
        let f_map = (0..self.x_size)
            .map(|x| index_of(self.closure(Bits::singleton(x))))
            .collect();
        let g_map = (0..self.y_size)
            .map(|y| index_of(self.polar_left(Bits::singleton(y))))
            .collect();
        Ok(ConceptLattice {
            closed_sets,
            lattice,
            f_map,
            g_map,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptLattice {
    /// Galois-closed subsets of `X` in lectic order; element `i` of the
    /// lattice is `closed_sets[i]`.
    pub closed_sets: Vec<Bits>,
    pub lattice: FiniteLattice,
    pub f_map: Vec<usize>,
    pub g_map: Vec<usize>,
}

/// Checks properties (1) and (2) for `(c, f, g)` against the polarity.
pub fn check_fact_properties(
    polarity: &Polarity,
    c: &FiniteLattice,
    f: &[usize],
    g: &[usize],
) -> Result<()> {
    if f.len() != polarity.x_size() || g.len() != polarity.y_size() {
        return Err(Error::SourceTargetMismatch(format!(
            "maps of length {}/{} for a {}×{} polarity",
            f.len(),
            g.len(),
            polarity.x_size(),
            polarity.y_size()
        )));
    }
    if let Some(&bad) = f.iter().chain(g).find(|&&v| v >= c.size()) {
        return Err(Error::SourceTargetMismatch(format!(
            "map value {bad} outside lattice of size {}",
            c.size()
        )));
    }
    for u in c.elements() {
        let below: Bits = f.iter().filter(|&&fx| c.leq(fx, u)).copied().collect();
        if c.join_all(below) != u {
            return Err(Error::PropertyFails {
                which: 1,
                witness: format!("element {u} is not the join of the f(x) below it"),
            });
        }
        let above: Bits = g.iter().filter(|&&gy| c.leq(u, gy)).copied().collect();
        if c.meet_all(above) != u {
            return Err(Error::PropertyFails {
                which: 1,
                witness: format!("element {u} is not the meet of the g(y) above it"),
            });
        }
    }
    for (x, &fx) in f.iter().enumerate() {
        for (y, &gy) in g.iter().enumerate() {
            if c.leq(fx, gy) != polarity.related(x, y) {
                return Err(Error::PropertyFails {
                    which: 2,
                    witness: format!(
                        "f({x}) ≤ g({y}) is {} but xZy is {}",
                        c.leq(fx, gy),
                        polarity.related(x, y)
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Given another lattice `c2` with maps satisfying (1) and (2), derives
/// the isomorphism `ι: c2 → C` with `ι∘f2 = f` and `ι∘g2 = g`.
///
/// `ι` is computed twice, once from the join side of (1) and once from the
/// meet side; the two must agree, which is the uniqueness claim.
pub fn verify_uniqueness(
    polarity: &Polarity,
    c2: &FiniteLattice,
    f2: &[usize],
    g2: &[usize],
) -> Result<Vec<usize>> {
    check_fact_properties(polarity, c2, f2, g2)?;
    let concept = polarity.concept_lattice()?;
    let c = &concept.lattice;
    let from_joins: Vec<usize> = c2
        .elements()
        .map(|u| {
            c.join_all(
                (0..polarity.x_size())
                    .filter(|&x| c2.leq(f2[x], u))
                    .map(|x| concept.f_map[x])
                    .collect(),
            )
        })
        .collect();
    let from_meets: Vec<usize> = c2
        .elements()
        .map(|u| {
            c.meet_all(
                (0..polarity.y_size())
                    .filter(|&y| c2.leq(u, g2[y]))
                    .map(|y| concept.g_map[y])
                    .collect(),
            )
        })
        .collect();
    if from_joins != from_meets {
        let u = (0..c2.size())
            .find(|&u| from_joins[u] != from_meets[u])
            .unwrap();
        return Err(Error::PropertyFails {
            which: 3,
            witness: format!("join- and meet-derived images of {u} differ"),
        });
    }
    let iota = from_joins;
    if !is_order_isomorphism(c2, c, &iota) {
        return Err(Error::PropertyFails {
            which: 3,
            witness: "derived map is not an order isomorphism".into(),
        });
    }
    let commutes_f = (0..polarity.x_size()).all(|x| iota[f2[x]] == concept.f_map[x]);
    let commutes_g = (0..polarity.y_size()).all(|y| iota[g2[y]] == concept.g_map[y]);
    if !(commutes_f && commutes_g) {
        return Err(Error::PropertyFails {
            which: 3,
            witness: "derived isomorphism does not commute with f and g".into(),
        });
    }
    Ok(iota)
}

/// The closed sets on the `Y` side (fixpoints of `p∘q`), ordered by reverse
/// inclusion, with the induced `f2(x) = p({x})` and `g2(y) = pq({y})`.
pub fn y_side_lattice(polarity: &Polarity) -> Result<(FiniteLattice, Vec<usize>, Vec<usize>)> {
    let dual = polarity.transpose();
    let closed = next_closure_all(polarity.y_size(), |n| dual.closure(n));
    if closed.len() > MAX_ELEMENTS {
        return Err(Error::SizeBound {
            what: "Y-side closed sets",
            size: closed.len(),
            bound: MAX_ELEMENTS,
        });
    }
    let lattice = FiniteLattice::from_family_reversed(&closed)?;
    let index_of = |s: Bits| closed.iter().position(|&c| c == s).unwrap();
    let f2 = (0..polarity.x_size())
        .map(|x| index_of(polarity.polar_right(Bits::singleton(x))))
        .collect();
    let g2 = (0..polarity.y_size())
        .map(|y| index_of(dual.closure(Bits::singleton(y))))
        .collect();
    Ok((lattice, f2, g2))
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::bits::all_subsets;
    use crate::corpus;
    use crate::order::find_isomorphism;

    fn identity(n: usize) -> Polarity {
        Polarity::new(n, n, &(0..n).map(|i| (i, i)).collect::<Vec<_>>()).unwrap()
    }

    fn full(n: usize) -> Polarity {
        Polarity::from_rows(n, vec![Bits::full(n); n]).unwrap()
    }

    fn empty(n: usize) -> Polarity {
        Polarity::from_rows(n, vec![Bits::EMPTY; n]).unwrap()
    }

    #[test]
    fn polar_maps_on_extreme_relations() {
        let f = full(3);
        assert_eq!(f.polar_right(Bits::from_indices([0, 2])), Bits::full(3));
        let e = empty(3);
        assert_eq!(e.polar_right(Bits::singleton(1)), Bits::EMPTY);
        assert_eq!(e.polar_right(Bits::EMPTY), Bits::full(3));
        let id = identity(2);
        assert_eq!(id.polar_right(Bits::singleton(0)), Bits::singleton(0));
    }

    #[test]
    fn closed_set_examples() {
        assert_eq!(full(3).galois_closed_sets(), vec![Bits::full(3)]);
        let mut e = empty(3).galois_closed_sets();
        e.sort();
        assert_eq!(e, vec![Bits::EMPTY, Bits::full(3)]);
        assert_eq!(identity(2).galois_closed_sets().len(), 4);
    }

    #[test]
    fn identity_concept_lattice_is_b4() {
        let c = identity(2).concept_lattice().unwrap();
        assert!(find_isomorphism(&c.lattice, &corpus::b4()).is_some());
        assert_eq!(full(3).concept_lattice().unwrap().lattice.size(), 1);
    }

    #[test]
    fn random_relation_satisfies_fact() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rows = (0..5).map(|_| Bits(rng.gen_range(0..32))).collect();
        let p = Polarity::from_rows(5, rows).unwrap();
        let c = p.concept_lattice().unwrap();
        check_fact_properties(&p, &c.lattice, &c.f_map, &c.g_map).unwrap();
    }

    #[test]
    fn uniqueness_against_self_is_identity() {
        let p = identity(3);
        let c = p.concept_lattice().unwrap();
        let iota = verify_uniqueness(&p, &c.lattice, &c.f_map, &c.g_map).unwrap();
        assert_eq!(iota, (0..c.lattice.size()).collect::<Vec<_>>());
    }

    #[test]
    fn uniqueness_against_y_side() {
        let p = Polarity::new(3, 4, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 3), (2, 0)]).unwrap();
        let (c2, f2, g2) = y_side_lattice(&p).unwrap();
        assert!(verify_uniqueness(&p, &c2, &f2, &g2).is_ok());
    }

    #[test]
    fn corrupted_g_is_reported() {
        let p = identity(2);
        let c = p.concept_lattice().unwrap();
        let bottom = c.lattice.bottom();
        let g2 = vec![bottom; 2];
        let err = verify_uniqueness(&p, &c.lattice, &c.f_map, &g2).unwrap_err();
        assert!(matches!(err, Error::PropertyFails { which: 1 | 2, .. }));
    }

    #[test]
    fn closure_operator_laws_on_small_relation() {
        let p = Polarity::new(4, 3, &[(0, 0), (1, 0), (1, 1), (2, 2), (3, 1)]).unwrap();
        for m in all_subsets(4) {
            let c = p.closure(m);
            assert!(m.is_subset(c));
            assert_eq!(p.closure(c), c);
            for m2 in all_subsets(4) {
                if m.is_subset(m2) {
                    assert!(c.is_subset(p.closure(m2)));
                }
            }
        }
    }

    #[test]
    fn out_of_range_pair_rejected() {
        assert!(matches!(
            Polarity::new(2, 2, &[(0, 3)]),
            Err(Error::IndexOutOfRange(0, 3, _))
        ));
    }
}
