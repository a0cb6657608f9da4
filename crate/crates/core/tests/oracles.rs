//! Small worked values, each checked against a direct brute-force
//! computation that shares no code with the library beyond the order
//! itself.

use frame_canext::bits::all_subsets;
use frame_canext::canext::canonical_extension;
use frame_canext::corpus::{b4, c3, downset_corpus, m3, n5, posets_of_size, two};
use frame_canext::filters::{all_filters, all_ideals, scott_open_poset};
use frame_canext::maps::{
    frame_homs, monotone_correspondence, pi_extension, right_adjoint, sigma_extension, LatticeMap,
};
use frame_canext::polarity::Polarity;
use frame_canext::spaces::{open_set_frame, points, specialization, FiniteSpace};
use frame_canext::sublocales::{open_sublocale, sublocale_coframe};
use frame_canext::{find_isomorphism, Bits, FiniteLattice};

fn all_tables(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let v = code % k;
                code /= k;
                v
            })
            .collect()
    })
}

fn glb_of(l: &FiniteLattice, s: &[usize]) -> usize {
    let lower: Vec<usize> = l
        .elements()
        .filter(|&z| s.iter().all(|&x| l.leq(z, x)))
        .collect();
    *lower
        .iter()
        .find(|&&z| lower.iter().all(|&w| l.leq(w, z)))
        .unwrap()
}

fn lub_of(l: &FiniteLattice, s: &[usize]) -> usize {
    let upper: Vec<usize> = l
        .elements()
        .filter(|&z| s.iter().all(|&x| l.leq(x, z)))
        .collect();
    *upper
        .iter()
        .find(|&&z| upper.iter().all(|&w| l.leq(z, w)))
        .unwrap()
}

fn brute_distributive(l: &FiniteLattice) -> bool {
    l.elements().all(|x| {
        l.elements().all(|y| {
            l.elements().all(|z| {
                glb_of(l, &[x, lub_of(l, &[y, z])])
                    == lub_of(l, &[glb_of(l, &[x, y]), glb_of(l, &[x, z])])
            })
        })
    })
}

fn brute_frame_hom(m: &FiniteLattice, k: &FiniteLattice, t: &[usize]) -> bool {
    let joins = all_subsets(m.size()).all(|s| {
        let members: Vec<usize> = s.iter().collect();
        let image: Vec<usize> = members.iter().map(|&x| t[x]).collect();
        t[lub_of(m, &members)] == lub_of(k, &image)
    });
    let meets = m.elements().all(|x| {
        m.elements()
            .all(|y| t[glb_of(m, &[x, y])] == glb_of(k, &[t[x], t[y]]))
    });
    joins && meets && t[m.top()] == k.top()
}

#[test]
fn poset_counts() {
    let counts: Vec<usize> = (1..=5).map(|n| posets_of_size(n).len()).collect();
    assert_eq!(counts, [1, 2, 5, 16, 63]);
}

#[test]
fn distributivity_by_all_triples() {
    for l in [two(), c3(), b4(), m3(), n5()] {
        assert_eq!(l.is_distributive(), brute_distributive(&l));
    }
    assert!(!m3().is_distributive());
    for e in downset_corpus()
        .iter()
        .filter(|e| e.poset.as_ref().unwrap().size() == 4)
    {
        assert!(e.lattice.is_distributive() && e.lattice.is_frame());
    }
}

#[test]
fn chain_and_diamond_predicates() {
    // C3 has no complement for its middle element; M3 is not even distributive.
    let l = c3();
    let complemented = l.elements().all(|a| {
        l.elements()
            .any(|c| l.meet(a, c) == l.bottom() && l.join(a, c) == l.top())
    });
    assert!(!complemented);
    assert!(!l.is_boolean());
    assert!(l.is_completely_distributive());
    assert!(!m3().is_completely_distributive());
}

#[test]
fn subfitness_by_search() {
    // a ≰ b must be witnessed by some c with a ∨ c = 1 and b ∨ c ≠ 1.
    let subfit = |l: &FiniteLattice| {
        l.elements().all(|a| {
            l.elements().all(|b| {
                l.leq(a, b)
                    || l.elements()
                        .any(|c| l.join(a, c) == l.top() && l.join(b, c) != l.top())
            })
        })
    };
    assert!(subfit(&b4()) && b4().subfitness_witness().is_none());
    assert!(!subfit(&c3()));
    assert_eq!(c3().subfitness_witness(), Some((1, 0)));
}

#[test]
fn polarity_closed_sets() {
    let id2 = Polarity::new(2, 2, &[(0, 0), (1, 1)]).unwrap();
    assert_eq!(id2.galois_closed_sets().len(), 4);
    assert!(find_isomorphism(&id2.concept_lattice().unwrap().lattice, &b4()).is_some());
    assert_eq!(id2.closure(Bits::singleton(0)), Bits::singleton(0));

    let full: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    assert_eq!(
        Polarity::new(3, 3, &full).unwrap().galois_closed_sets(),
        vec![Bits::full(3)]
    );
    let empty = Polarity::new(3, 3, &[]).unwrap().galois_closed_sets();
    assert_eq!(empty.len(), 2);
    assert!(empty.contains(&Bits::EMPTY) && empty.contains(&Bits::full(3)));
}

#[test]
fn filters_by_subset_sweep() {
    let brute = |l: &FiniteLattice| {
        all_subsets(l.size())
            .filter(|s| {
                !s.is_empty()
                    && s.iter()
                        .all(|a| l.elements().all(|b| !l.leq(a, b) || s.contains(b)))
                    && s.iter().all(|a| s.iter().all(|b| s.contains(l.meet(a, b))))
            })
            .count()
    };
    for l in [c3(), b4()] {
        assert_eq!(all_filters(&l).len(), brute(&l));
        assert_eq!(scott_open_poset(&l).unwrap().len(), brute(&l));
    }
    assert_eq!(all_filters(&c3()).len(), 3);
    assert_eq!((all_filters(&b4()).len(), all_ideals(&b4()).len()), (4, 4));
}

#[test]
fn small_spectra() {
    let sierpinski =
        FiniteSpace::new(2, vec![Bits::EMPTY, Bits::singleton(1), Bits::full(2)]).unwrap();
    assert!(find_isomorphism(&open_set_frame(&sierpinski), &c3()).is_some());
    let sc3 = points(&c3()).unwrap();
    assert_eq!((sc3.space.point_count(), sc3.space.opens().len()), (2, 3));
    let sb4 = points(&b4()).unwrap();
    assert_eq!((sb4.space.point_count(), sb4.space.opens().len()), (2, 4));
    let order = specialization(&sb4.space);
    assert!(!order.leq(0, 1) && !order.leq(1, 0));
}

#[test]
fn two_is_its_own_extension() {
    let b = canonical_extension(&two()).unwrap();
    assert_eq!(b.extension.size(), 2);
    for l in [c3(), b4()] {
        let b = canonical_extension(&l).unwrap();
        assert!(find_isomorphism(&b.extension, &l).is_some());
        let mut image = b.e.clone();
        image.sort_unstable();
        image.dedup();
        assert_eq!(image.len(), l.size());
    }
}

#[test]
fn identity_extends_to_identity() {
    for l in [two(), c3(), b4()] {
        let b = canonical_extension(&l).unwrap();
        let id = LatticeMap::identity(&l);
        let all: Vec<usize> = b.extension.elements().collect();
        assert_eq!(sigma_extension(&id, &b, &b).unwrap(), all);
        assert_eq!(pi_extension(&id, &b, &b).unwrap(), all);
    }
}

#[test]
fn frame_homs_match_table_sweep() {
    let small: Vec<FiniteLattice> = downset_corpus()
        .into_iter()
        .map(|e| e.lattice)
        .filter(|l| l.size() <= 5)
        .collect();
    for m in &small {
        for k in &small {
            let mut expected: Vec<Vec<usize>> = all_tables(m.size(), k.size())
                .filter(|t| brute_frame_hom(m, k, t))
                .collect();
            let mut found = frame_homs(m, k).unwrap();
            expected.sort();
            found.sort();
            assert_eq!(found, expected);
        }
    }
    assert_eq!(frame_homs(&c3(), &c3()).unwrap().len(), 3);
}

#[test]
fn monotone_point_maps_match_table_sweep() {
    let small: Vec<FiniteLattice> = downset_corpus()
        .into_iter()
        .map(|e| e.lattice)
        .filter(|l| l.size() <= 8)
        .collect();
    for l in &small {
        for m in &small {
            let (pl, pm) = (points(l).unwrap(), points(m).unwrap());
            let (ol, om) = (specialization(&pl.space), specialization(&pm.space));
            let (nl, nm) = (pl.space.point_count(), pm.space.point_count());
            let count = all_tables(nl, nm)
                .filter(|t| (0..nl).all(|x| (0..nl).all(|y| !ol.leq(x, y) || om.leq(t[x], t[y]))))
                .count();
            let mc = monotone_correspondence(l, m).unwrap();
            assert_eq!(mc.mon.len(), count);
            assert_eq!(mc.frm.len(), count);
        }
    }
}

#[test]
fn sublocale_counts_by_subset_sweep() {
    let brute = |l: &FiniteLattice| {
        all_subsets(l.size())
            .filter(|s| {
                s.contains(l.top())
                    && s.iter().all(|a| s.iter().all(|b| s.contains(l.meet(a, b))))
                    && l.elements()
                        .all(|x| s.iter().all(|a| s.contains(l.implies(x, a).unwrap())))
            })
            .count()
    };
    for (l, n) in [(two(), 2), (c3(), 4), (b4(), 4)] {
        assert_eq!(brute(&l), n);
        assert_eq!(sublocale_coframe(&l).unwrap().len(), n);
    }
}

#[test]
fn open_sublocale_from_heyting_table() {
    let l = c3();
    let by_table: Bits = l
        .elements()
        .filter(|&x| l.implies(1, x) == Some(x))
        .collect();
    assert_eq!(by_table, Bits::from_indices([0, 2]));
    assert_eq!(open_sublocale(&l, 1), by_table);
}

#[test]
fn right_adjoint_by_maximum() {
    let l = c3();
    let f = LatticeMap::new(&l, &l, vec![0, 2, 2]).unwrap();
    let brute: Vec<usize> = l
        .elements()
        .map(|b| {
            let below: Vec<usize> = l.elements().filter(|&a| l.leq(f.apply(a), b)).collect();
            *below
                .iter()
                .find(|&&a| below.iter().all(|&c| l.leq(c, a)))
                .unwrap()
        })
        .collect();
    assert_eq!(brute, vec![0, 0, 2]);
    assert_eq!(right_adjoint(&f).unwrap(), brute);
}
