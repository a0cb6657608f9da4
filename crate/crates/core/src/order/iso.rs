use super::FiniteLattice;

/// Per-element invariant preserved by every order isomorphism.
fn signature(
    l: &FiniteLattice,
    heights: &[usize],
    x: usize,
) -> (usize, usize, usize, usize, usize) {
    (
        heights[x],
        l.lower_covers(x).len(),
        l.upper_covers(x).len(),
        l.down(x).len(),
        l.up(x).len(),
    )
}

/// Whether `map` is a bijection with `x ≤ y ⟺ map[x] ≤ map[y]`.
pub fn is_order_isomorphism(a: &FiniteLattice, b: &FiniteLattice, map: &[usize]) -> bool {
    if a.size() != b.size() || map.len() != a.size() {
        return false;
    }
    let mut seen = vec![false; b.size()];
    for &y in map {
        if y >= b.size() || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    a.elements()
        .all(|x| a.elements().all(|y| a.leq(x, y) == b.leq(map[x], map[y])))
}

/// Searches for an order isomorphism `a → b`, returned as an element table.
///
/// Candidates are pruned by (height, lower covers, upper covers, |↓x|, |↑x|)
/// and then assigned by backtracking in a bottom-up order, checking the
/// order relation against everything assigned so far.
pub fn find_isomorphism(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let ha = a.heights();
    let hb = b.heights();
    let sig_a: Vec<_> = a.elements().map(|x| signature(a, &ha, x)).collect();
    let sig_b: Vec<_> = b.elements().map(|x| signature(b, &hb, x)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }
    let order = a.linear_extension();
    let candidates: Vec<Vec<usize>> = a
        .elements()
        .map(|x| b.elements().filter(|&y| sig_b[y] == sig_a[x]).collect())
        .collect();
    let mut map = vec![usize::MAX; a.size()];
    let mut used = vec![false; b.size()];
    if assign(a, b, &order, &candidates, 0, &mut map, &mut used) {
        debug_assert!(is_order_isomorphism(a, b, &map));
        Some(map)
    } else {
        None
    }
}

fn assign(
    a: &FiniteLattice,
    b: &FiniteLattice,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| a.leq(w, x) == b.leq(map[w], y) && a.leq(x, w) == b.leq(y, map[w]));
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if assign(a, b, order, candidates, depth + 1, map, used) {
            return true;
        }
        used[y] = false;
    }
    map[x] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use crate::order::{build_lattice, RelationMode};

    use super::*;

    fn b4() -> FiniteLattice {
        build_lattice(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], RelationMode::Cover).unwrap()
    }

    #[test]
    fn chain_to_itself_is_identity() {
        let c3 = build_lattice(3, &[(0, 1), (1, 2)], RelationMode::Cover).unwrap();
        assert_eq!(find_isomorphism(&c3, &c3), Some(vec![0, 1, 2]));
    }

    #[test]
    fn boolean_square_is_not_a_chain() {
        let c4 = build_lattice(4, &[(0, 1), (1, 2), (2, 3)], RelationMode::Cover).unwrap();
        assert_eq!(find_isomorphism(&b4(), &c4), None);
    }

    #[test]
    fn relabelled_square_is_found() {
        // bottom = 3, top = 0
        let other =
            build_lattice(4, &[(3, 1), (3, 2), (1, 0), (2, 0)], RelationMode::Cover).unwrap();
        let map = find_isomorphism(&b4(), &other).unwrap();
        assert!(is_order_isomorphism(&b4(), &other, &map));
        assert_eq!(map[0], 3);
        assert_eq!(map[3], 0);
    }
}
