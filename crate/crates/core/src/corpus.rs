//! The test corpus: downset frames of all small posets, plus named lattices.

use std::collections::BTreeSet;

use crate::bits::{all_subsets, Bits};
use crate::order::{build_lattice, FiniteLattice, RelationMode};

/// A finite poset on `0..n`, stored as principal up-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    pub up: Vec<Bits>,
}

impl Poset {
    pub fn size(&self) -> usize {
        self.up.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn is_downset(&self, s: Bits) -> bool {
        s.iter()
            .all(|y| (0..self.size()).all(|x| !self.leq(x, y) || s.contains(x)))
    }

    /// The frame `O(P)` of downsets ordered by inclusion, elements listed
    /// in increasing bitmask order and named by their members.
    pub fn downset_frame(&self) -> FiniteLattice {
        let sets: Vec<Bits> = all_subsets(self.size())
            .filter(|&s| self.is_downset(s))
            .collect();
        let names = sets.iter().map(|s| s.to_string()).collect();
        FiniteLattice::from_family(&sets)
            .expect("downsets form a lattice")
            .with_names(names)
    }
}

/// Strict order bits `(i, j)` packed as `i * n + j`.
fn relation_code(n: usize, up: &[Bits], perm: &[usize]) -> u32 {
    let mut code = 0u32;
    for i in 0..n {
        for j in up[i].iter() {
            if i != j {
                code |= 1 << (perm[i] * n + perm[j]);
            }
        }
    }
    code
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..left.len() {
            let x = left.remove(k);
            prefix.push(x);
            go(prefix, left, out);
            prefix.pop();
            left.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// All posets with exactly `n` elements up to isomorphism (`n ≤ 5`),
/// in increasing order of their canonical code.
pub fn posets_of_size(n: usize) -> Vec<Poset> {
    assert!(
        (1..=5).contains(&n),
        "poset enumeration is limited to 1..=5 points"
    );
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    // every poset has a natural labelling, so i < j pairs suffice
    for mask in 0u32..1 << pairs.len() {
        let mut up: Vec<Bits> = (0..n).map(Bits::singleton).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                up[i].insert(j);
            }
        }
        let transitive = (0..n).all(|i| up[i].iter().all(|j| up[j].is_subset(up[i])));
        if !transitive {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|p| relation_code(n, &up, p))
            .min()
            .unwrap();
        seen.insert(canonical);
    }
    seen.into_iter()
        .map(|code| {
            let up = (0..n)
                .map(|i| {
                    Bits::singleton(i)
                        .union((0..n).filter(|&j| code >> (i * n + j) & 1 == 1).collect())
                })
                .collect();
            Poset { up }
        })
        .collect()
}

/// One corpus frame with a stable identifier.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub poset: Option<Poset>,
    pub lattice: FiniteLattice,
}

/// Downset frames `O(P)` for every poset with 1 to 5 points (87 frames).
pub fn downset_corpus() -> Vec<CorpusEntry> {
    (1..=5)
        .flat_map(|n| {
            posets_of_size(n)
                .into_iter()
                .enumerate()
                .map(move |(k, poset)| CorpusEntry {
                    id: format!("o-p{n}-{k:02}"),
                    lattice: poset.downset_frame(),
                    poset: Some(poset),
                })
        })
        .collect()
}

fn named(n: usize, covers: &[(usize, usize)], names: &[&str]) -> FiniteLattice {
    build_lattice(n, covers, RelationMode::Cover)
        .expect("named lattice")
        .with_names(names.iter().map(|s| s.to_string()).collect())
}

/// The two-element frame.
pub fn two() -> FiniteLattice {
    named(2, &[(0, 1)], &["0", "1"])
}

/// The three-element chain `0 < m < 1`.
pub fn c3() -> FiniteLattice {
    named(3, &[(0, 1), (1, 2)], &["0", "m", "1"])
}

pub fn c4() -> FiniteLattice {
    named(4, &[(0, 1), (1, 2), (2, 3)], &["0", "p", "q", "1"])
}

/// The four-element Boolean algebra `2 × 2` with atoms `a`, `b`.
pub fn b4() -> FiniteLattice {
    named(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], &["0", "a", "b", "1"])
}

/// The Boolean algebra with `k` atoms, as downsets of a `k`-antichain.
pub fn boolean(k: usize) -> FiniteLattice {
    Poset {
        up: (0..k).map(Bits::singleton).collect(),
    }
    .downset_frame()
}

pub fn b8() -> FiniteLattice {
    boolean(3)
}

pub fn b16() -> FiniteLattice {
    boolean(4)
}

/// The diamond: three atoms, not distributive.
pub fn m3() -> FiniteLattice {
    named(
        5,
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        &["0", "a", "b", "c", "1"],
    )
}

/// The pentagon, not distributive.
pub fn n5() -> FiniteLattice {
    named(
        5,
        &[(0, 1), (1, 2), (0, 3), (2, 4), (3, 4)],
        &["0", "a", "b", "c", "1"],
    )
}

/// The named small lattices, frames first.
pub fn named_lattices() -> Vec<(&'static str, FiniteLattice)> {
    vec![
        ("two", two()),
        ("c3", c3()),
        ("c4", c4()),
        ("b4", b4()),
        ("b8", b8()),
        ("b16", b16()),
        ("m3", m3()),
        ("n5", n5()),
    ]
}
