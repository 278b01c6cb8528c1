//! Weak separation and noncrossing predicates, plus small labeled graphs.

use crate::subsets::KSubset;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Weak separation with respect to the cyclic order (1..n): the difference
/// e_I - e_J must not alternate +,-,+,- cyclically. One pass over the sign
/// sequence counting cyclic sign blocks: weakly separated iff at most two.
pub fn is_weakly_separated(i: &KSubset, j: &KSubset, n: u32) -> bool {
    let mut signs: Vec<i8> = Vec::new();
    for x in 1..=n {
        let s = i.contains(x) as i8 - j.contains(x) as i8;
        if s != 0 {
            signs.push(s);
        }
    }
    if signs.is_empty() {
        return true;
    }
    let mut blocks = 0usize;
    let m = signs.len();
    for t in 0..m {
        if signs[t] != signs[(t + 1) % m] {
            blocks += 1;
        }
    }
    // `blocks` counts sign changes around the cycle; all-equal gives 0
    blocks <= 2
}

/// Noncrossing with respect to the linear order 1 < ... < n, implemented
/// literally: for each index window a..b, the windowed pair is weakly
/// separated or the window interiors differ as sets.
pub fn is_noncrossing(i: &KSubset, j: &KSubset, n: u32) -> bool {
    let k = i.elems.len();
    assert_eq!(k, j.elems.len());
    for a in 0..k {
        for b in (a + 1)..k {
            let iw = KSubset { elems: i.elems[a..=b].to_vec() };
            let jw = KSubset { elems: j.elems[a..=b].to_vec() };
            if is_weakly_separated(&iw, &jw, n) {
                continue;
            }
            let ii: &[u32] = if b > a + 1 { &i.elems[a + 1..b] } else { &[] };
            let ji: &[u32] = if b > a + 1 { &j.elems[a + 1..b] } else { &[] };
            if ii == ji {
                return false;
            }
        }
    }
    true
}

/// Undirected graph on labeled nodes with deterministic ordering.
#[derive(Clone, Debug)]
pub struct Graph {
    pub labels: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(labels: Vec<String>) -> Self {
        Graph { labels, edges: BTreeSet::new() }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b && a < self.labels.len() && b < self.labels.len());
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn is_complete(&self) -> bool {
        let m = self.labels.len();
        self.edges.len() == m * (m - 1) / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|(a, b)| *a == v || *b == v).count()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {name} {{");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{l}\"];");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -- n{b};");
        }
        let _ = writeln!(out, "}}");
        out
    }
}

/// Nodes are the given subsets; edges join pairs that are NOT weakly
/// separated.
pub fn incompatibility_graph(collection: &[KSubset], n: u32) -> Graph {
    let mut g = Graph::new(collection.iter().map(|s| s.to_string()).collect());
    for a in 0..collection.len() {
        for b in (a + 1)..collection.len() {
            if !is_weakly_separated(&collection[a], &collection[b], n) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(n: u32, e: &[u32]) -> KSubset {
        KSubset::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn weak_separation_examples() {
        assert!(is_weakly_separated(&ks(4, &[1, 2, 4]), &ks(4, &[1, 3, 4]), 4));
        assert!(!is_weakly_separated(&ks(6, &[1, 3, 5]), &ks(6, &[2, 4, 6]), 6));
        assert!(!is_weakly_separated(&ks(12, &[1, 6, 9]), &ks(12, &[2, 5, 10]), 12));
    }

    #[test]
    fn weak_separation_symmetric_reflexive() {
        let subs = crate::subsets::enumerate_nonfrozen(3, 7);
        for a in &subs {
            assert!(is_weakly_separated(a, a, 7));
            for b in &subs {
                assert_eq!(
                    is_weakly_separated(a, b, 7),
                    is_weakly_separated(b, a, 7)
                );
            }
        }
    }

    #[test]
    fn noncrossing_examples() {
        // weakly separated pairs are always noncrossing
        let subs = crate::subsets::enumerate_nonfrozen(3, 6);
        for a in &subs {
            for b in &subs {
                if is_weakly_separated(a, b, 6) {
                    assert!(is_noncrossing(a, b, 6));
                }
            }
        }
        assert!(is_noncrossing(&ks(12, &[1, 6, 9]), &ks(12, &[2, 5, 10]), 12));
        assert!(is_noncrossing(&ks(8, &[1, 4, 6, 7]), &ks(8, &[2, 3, 6, 8]), 8));
    }

    #[test]
    fn incompatibility_graphs() {
        let g = incompatibility_graph(&[ks(12, &[1, 6, 9]), ks(12, &[2, 5, 10])], 12);
        assert_eq!(g.edges.len(), 1);
        assert!(g.is_complete());

        // Example 3.2 / Fig. 7: complete K4
        let g = incompatibility_graph(
            &[
                ks(12, &[1, 8, 9]),
                ks(12, &[2, 7, 10]),
                ks(12, &[3, 6, 11]),
                ks(12, &[4, 5, 12]),
            ],
            12,
        );
        assert!(g.is_complete());
        assert_eq!(g.edges.len(), 6);

        // pairwise weakly separated collection -> empty graph
        let g = incompatibility_graph(&[ks(6, &[1, 3, 5]), ks(6, &[1, 3, 6])], 6);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn dot_output_is_deterministic() {
        let g = incompatibility_graph(&[ks(6, &[1, 3, 5]), ks(6, &[2, 4, 6])], 6);
        let d1 = g.to_dot("incompat");
        let d2 = g.to_dot("incompat");
        assert_eq!(d1, d2);
        assert!(d1.contains("n0 -- n1"));
    }
}
