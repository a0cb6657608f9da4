//! Structural invariants as properties over generated lattices, frames,
//! relations and maps.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frame_canext::canext::canonical_extension;
use frame_canext::corpus::{downset_corpus, Poset};
use frame_canext::filters::{
    all_filters, all_ideals, filter_lattice, ideal_lattice, is_filter, is_ideal, scott_open_poset,
};
use frame_canext::maps::{pi_extension, random_monotone_map, sigma_extension, LatticeMap};
use frame_canext::polarity::Polarity;
use frame_canext::proximity::{
    bounded_sublattices, check_axioms, interior_relation, ProximityLattice,
};
use frame_canext::spaces::{open_set_frame, points, sober_witness, specialization};
use frame_canext::sublocales::{nuclei_brute_force, nucleus_violation, sublocale_coframe};
use frame_canext::{find_isomorphism, Bits, FiniteLattice};

/// A closure system on `k` points: the given sets closed under
/// intersection, plus the whole set. Always a lattice, often not
/// distributive.
fn closure_system(k: usize, gens: &[u64]) -> FiniteLattice {
    let full = Bits::full(k);
    let mut sets: Vec<Bits> = vec![full];
    for &g in gens {
        let s = Bits(g & full.0);
        let mut fresh = vec![s];
        for &t in &sets {
            fresh.push(s.intersect(t));
        }
        for f in fresh {
            if !sets.contains(&f) {
                sets.push(f);
            }
        }
    }
    // Close again until stable.
    loop {
        let mut grew = false;
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                let m = sets[i].intersect(sets[j]);
                if !sets.contains(&m) {
                    sets.push(m);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    sets.sort();
    FiniteLattice::from_family(&sets).expect("closure systems are lattices")
}

fn lattices() -> impl Strategy<Value = FiniteLattice> {
    (1usize..=4, prop::collection::vec(any::<u64>(), 0..5))
        .prop_map(|(k, gens)| closure_system(k, &gens))
        .prop_filter("at most 12 elements", |l| l.size() <= 12)
}

/// Downset frames of random posets (not reduced up to isomorphism).
fn frames(max_points: usize) -> impl Strategy<Value = FiniteLattice> {
    (1..=max_points)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(n, bits)| {
            // Keep only i < j so the relation is acyclic, then close transitively.
            let mut up: Vec<Bits> = (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| j == i || (i < j && bits[i * n + j]))
                        .collect()
                })
                .collect();
            for k in 0..n {
                for i in 0..n {
                    if up[i].contains(k) {
                        up[i] = up[i].union(up[k]);
                    }
                }
            }
            Poset { up }.downset_frame()
        })
}

fn relations() -> impl Strategy<Value = Polarity> {
    (1usize..=8, 1usize..=8)
        .prop_flat_map(|(x, y)| (Just(y), prop::collection::vec(0u64..(1 << y), x)))
        .prop_map(|(y, rows)| Polarity::from_rows(y, rows.into_iter().map(Bits).collect()).unwrap())
}

/// Brute-force greatest lower bound from `leq` alone.
fn glb(l: &FiniteLattice, x: usize, y: usize) -> usize {
    let lower: Vec<usize> = l
        .elements()
        .filter(|&z| l.leq(z, x) && l.leq(z, y))
        .collect();
    *lower
        .iter()
        .find(|&&z| lower.iter().all(|&w| l.leq(w, z)))
        .expect("meet exists")
}

fn lub(l: &FiniteLattice, x: usize, y: usize) -> usize {
    let upper: Vec<usize> = l
        .elements()
        .filter(|&z| l.leq(x, z) && l.leq(y, z))
        .collect();
    *upper
        .iter()
        .find(|&&z| upper.iter().all(|&w| l.leq(z, w)))
        .expect("join exists")
}

fn permuted(l: &FiniteLattice, perm: &[usize]) -> FiniteLattice {
    let mut up = vec![Bits::EMPTY; l.size()];
    for x in l.elements() {
        up[perm[x]] = l.up(x).iter().map(|y| perm[y]).collect();
    }
    FiniteLattice::from_up_sets(up).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_and_operation_laws(l in lattices()) {
        for x in l.elements() {
            prop_assert!(l.leq(x, x));
            for y in l.elements() {
                prop_assert!(!(l.leq(x, y) && l.leq(y, x)) || x == y);
                prop_assert_eq!(l.meet(x, y), glb(&l, x, y));
                prop_assert_eq!(l.join(x, y), lub(&l, x, y));
                prop_assert_eq!(l.meet(x, y), l.meet(y, x));
                prop_assert_eq!(l.meet(x, l.join(x, y)), x);
                prop_assert_eq!(l.join(x, l.meet(x, y)), x);
                for z in l.elements() {
                    prop_assert!(!(l.leq(x, y) && l.leq(y, z)) || l.leq(x, z));
                    prop_assert_eq!(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)));
                    prop_assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)));
                }
            }
        }
    }

    #[test]
    fn frame_law_agrees_with_distributivity(l in lattices()) {
        prop_assert_eq!(l.is_frame(), l.is_distributive());
    }

    #[test]
    fn isomorphism_search_is_an_equivalence(l in lattices(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = l.elements().collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let p = permuted(&l, &perm);
        let id = find_isomorphism(&l, &l).expect("reflexive");
        prop_assert!(frame_canext::order::is_order_isomorphism(&l, &l, &id));
        let there = find_isomorphism(&l, &p).expect("found");
        let back = find_isomorphism(&p, &l).expect("symmetric");
        prop_assert!(frame_canext::order::is_order_isomorphism(&l, &p, &there));
        let round: Vec<usize> = l.elements().map(|x| back[there[x]]).collect();
        prop_assert!(frame_canext::order::is_order_isomorphism(&l, &l, &round));
    }

    #[test]
    fn way_below_is_order_in_finite_frames(l in frames(4)) {
        let wb = l.way_below().unwrap();
        for a in l.elements() {
            for c in l.elements() {
                prop_assert_eq!(wb.holds(c, a), l.leq(c, a));
            }
        }
        prop_assert!(frame_canext::filters::way_below_characterisation_agrees(&l).unwrap());
    }

    #[test]
    fn polars_form_an_antitone_adjunction(p in relations(), m in any::<u64>(), n in any::<u64>()) {
        let m = Bits(m & Bits::full(p.x_size()).0);
        let n = Bits(n & Bits::full(p.y_size()).0);
        prop_assert_eq!(n.is_subset(p.polar_right(m)), m.is_subset(p.polar_left(n)));
        let c = p.closure(m);
        prop_assert!(m.is_subset(c));
        prop_assert_eq!(p.closure(c), c);
        let bigger = m.union(Bits(n.0 & Bits::full(p.x_size()).0));
        prop_assert!(c.is_subset(p.closure(bigger)));
    }

    #[test]
    fn closed_sets_on_both_sides_match(p in relations()) {
        prop_assert_eq!(p.galois_closed_sets().len(), p.transpose().galois_closed_sets().len());
    }

    #[test]
    fn filters_and_ideals(l in frames(4)) {
        let fs = all_filters(&l);
        prop_assert!(fs.iter().all(|&f| is_filter(&l, f)));
        prop_assert!(all_ideals(&l).iter().all(|&i| is_ideal(&l, i)));
        prop_assert_eq!(scott_open_poset(&l).unwrap().filters.len(), fs.len());
        prop_assert!(filter_lattice(&l).1.opposite().is_frame());
        prop_assert!(ideal_lattice(&l).1.is_frame());
    }

    #[test]
    fn spectra_are_sober_and_spatial(l in frames(4)) {
        let s = points(&l).unwrap();
        prop_assert!(specialization(&s.space).is_t0());
        prop_assert!(sober_witness(&s.space).is_none());
        prop_assert!(find_isomorphism(&open_set_frame(&s.space), &l).is_some());
    }

    #[test]
    fn extensions_are_consistent(l in frames(4)) {
        let b = canonical_extension(&l).unwrap();
        prop_assert!(b.e_so_consistent());
        prop_assert!(b.validate_shape().is_ok());
    }

    #[test]
    fn sigma_and_pi_are_monotone_in_the_map(
        i in 0usize..28, j in 0usize..28, seed in any::<u64>()
    ) {
        let small: Vec<FiniteLattice> = downset_corpus()
            .into_iter()
            .map(|e| e.lattice)
            .filter(|l| l.size() <= 8)
            .collect();
        let (s, t) = (&small[i % small.len()], &small[j % small.len()]);
        let (bs, bt) = (canonical_extension(s).unwrap(), canonical_extension(t).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lo = random_monotone_map(s, t, &mut rng);
        let other = random_monotone_map(s, t, &mut rng);
        let hi: Vec<usize> = lo.iter().zip(&other).map(|(&a, &b)| t.join(a, b)).collect();
        let (f, g) = (LatticeMap::new(s, t, lo).unwrap(), LatticeMap::new(s, t, hi).unwrap());
        let x = &bt.extension;
        for (a, b) in sigma_extension(&f, &bs, &bt).unwrap().iter().zip(sigma_extension(&g, &bs, &bt).unwrap()) {
            prop_assert!(x.leq(*a, b));
        }
        for (a, b) in pi_extension(&f, &bs, &bt).unwrap().iter().zip(pi_extension(&g, &bs, &bt).unwrap()) {
            prop_assert!(x.leq(*a, b));
        }
    }

    #[test]
    fn nuclei_match_brute_force(l in frames(3)) {
        prop_assume!(l.size() <= 6);
        let sl = sublocale_coframe(&l).unwrap();
        for n in &sl.nuclei {
            prop_assert!(nucleus_violation(&l, &n.table).is_none());
        }
        let mut derived: Vec<Vec<usize>> = sl.nuclei.iter().map(|n| n.table.clone()).collect();
        let mut brute = nuclei_brute_force(&l);
        derived.sort();
        brute.sort();
        prop_assert_eq!(derived, brute);
        prop_assert!(sl.lattice.opposite().is_frame());
    }

    #[test]
    fn proximity_ideals_are_round_and_monotone(l in frames(3), pick in any::<prop::sample::Index>()) {
        let ks = bounded_sublattices(&l);
        let k = ks[pick.index(ks.len())];
        let r = interior_relation(&l, k);
        prop_assume!(check_axioms(&l, &r).unwrap().passed());
        let p = ProximityLattice::new(l.clone(), r).unwrap();
        for a in l.elements() {
            let i = p.ideal_below(a);
            // Round: every member lies R-below another member.
            for b in i.iter() {
                prop_assert!(i.iter().any(|c| p.related(b, c)));
            }
            for b in l.elements() {
                prop_assert!(!l.leq(a, b) || i.is_subset(p.ideal_below(b)));
            }
        }
    }
}
