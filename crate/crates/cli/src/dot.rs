//! Hasse diagrams as DOT digraphs: one node per element, one edge per
//! cover, bottom at the bottom.

use std::fmt::Write;

use frame_canext::FiniteLattice;

pub fn hasse_dot(name: &str, l: &FiniteLattice) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
    s.push_str("  rankdir=BT;\n  node [shape=circle];\n");
    for x in l.elements() {
        let _ = writeln!(s, "  n{x} [label=\"{}\"];", escape(&l.label(x)));
    }
    let heights = l.heights();
    let top = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let row: Vec<String> = l
            .elements()
            .filter(|&x| heights[x] == h)
            .map(|x| format!("n{x}"))
            .collect();
        let _ = writeln!(s, "  {{ rank=same; {}; }}", row.join("; "));
    }
    for (a, b) in l.covers() {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    s.push_str("}\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use frame_canext::corpus::{b4, two};

    #[test]
    fn two_has_two_nodes_one_edge() {
        let d = hasse_dot("2", &two());
        assert_eq!(d.matches("label=").count(), 2);
        assert_eq!(d.matches("->").count(), 1);
    }

    #[test]
    fn square_ranks() {
        let d = hasse_dot("b4", &b4());
        assert_eq!(d.matches("->").count(), 4);
        assert_eq!(d.matches("rank=same").count(), 3);
    }
}
