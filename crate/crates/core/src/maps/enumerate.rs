//! Enumerating frame homomorphisms and monotone maps, and drawing random
//! monotone maps.

use rand::Rng;

use crate::error::{Error, Result};
use crate::order::FiniteLattice;

use super::LatticeMap;

/// Join-irreducible elements (exactly one lower cover), lowest first.
pub fn join_irreducibles(l: &FiniteLattice) -> Vec<usize> {
    let heights = l.heights();
    let mut js: Vec<usize> = l
        .elements()
        .filter(|&x| l.lower_covers(x).len() == 1)
        .collect();
    js.sort_by_key(|&x| (heights[x], x));
    js
}

/// All frame homomorphisms `m → k`, in lexicographic order of their
/// values on the join-irreducibles of `m`.
///
/// A frame hom is fixed by its values on join-irreducibles, since every
/// element of a finite distributive lattice is the join of those below it.
/// Branches are cut by monotonicity and by `h(j) ∧ h(j') = ⋁ h[↓(j ∧ j')]`,
/// both necessary; survivors are extended by joins and checked in full.
pub fn frame_homs(m: &FiniteLattice, k: &FiniteLattice) -> Result<Vec<Vec<usize>>> {
    if let Some(v) = m.frame_law_witness() {
        return Err(Error::NotAFrame(format!(
            "frame law fails for family {} and b={}",
            v.family, v.b
        )));
    }
    let js = join_irreducibles(m);
    // ji_below[x] = positions in `js` of the join-irreducibles below x
    let ji_below: Vec<Vec<usize>> = m
        .elements()
        .map(|x| (0..js.len()).filter(|&i| m.leq(js[i], x)).collect())
        .collect();
    let mut out = Vec::new();
    let mut vals = Vec::with_capacity(js.len());
    extend_homs(m, k, &js, &ji_below, &mut vals, &mut out);
    Ok(out)
}

fn extend_homs(
    m: &FiniteLattice,
    k: &FiniteLattice,
    js: &[usize],
    ji_below: &[Vec<usize>],
    vals: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let i = vals.len();
    if i == js.len() {
        let table: Vec<usize> = m
            .elements()
            .map(|x| k.join_all(ji_below[x].iter().map(|&p| vals[p]).collect()))
            .collect();
        let f = LatticeMap::new(m, k, table).expect("values lie in the target");
        if f.meet_witness().is_none() && f.join_witness().is_none() {
            out.push(f.table);
        }
        return;
    }
    let j = js[i];
    for v in k.elements() {
        let fits = (0..i).all(|p| {
            let jp = js[p];
            if m.leq(jp, j) && !k.leq(vals[p], v) {
                return false;
            }
            let below = &ji_below[m.meet(j, jp)];
            let joined = k.join_all(below.iter().map(|&r| vals[r]).collect());
            k.meet(v, vals[p]) == joined
        });
        if fits {
            vals.push(v);
            extend_homs(m, k, js, ji_below, vals, out);
            vals.pop();
        }
    }
}

/// All monotone maps between two finite posets given by their orders,
/// in lexicographic order of tables.
pub fn monotone_maps<S, T>(
    n_source: usize,
    source_le: S,
    n_target: usize,
    target_le: T,
) -> Vec<Vec<usize>>
where
    S: Fn(usize, usize) -> bool,
    T: Fn(usize, usize) -> bool,
{
    let mut out = Vec::new();
    let mut table = Vec::with_capacity(n_source);
    fn go<S: Fn(usize, usize) -> bool, T: Fn(usize, usize) -> bool>(
        n: usize,
        m: usize,
        sle: &S,
        tle: &T,
        table: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let x = table.len();
        if x == n {
            out.push(table.clone());
            return;
        }
        for v in 0..m {
            let ok = (0..x)
                .all(|y| (!sle(y, x) || tle(table[y], v)) && (!sle(x, y) || tle(v, table[y])));
            if ok {
                table.push(v);
                go(n, m, sle, tle, table, out);
                table.pop();
            }
        }
    }
    go(
        n_source, n_target, &source_le, &target_le, &mut table, &mut out,
    );
    out
}

/// A uniformly chosen value at each element, taken in a linear extension,
/// among those above the images of everything below it.
pub fn random_monotone_map<R: Rng + ?Sized>(
    source: &FiniteLattice,
    target: &FiniteLattice,
    rng: &mut R,
) -> Vec<usize> {
    let mut table = vec![usize::MAX; source.size()];
    for x in source.linear_extension() {
        let floor = target.join_all(source.down(x).without(x).iter().map(|y| table[y]).collect());
        let choices: Vec<usize> = target.up(floor).iter().collect();
        table[x] = choices[rng.gen_range(0..choices.len())];
    }
    table
}
