//! Finite simple graphs on {1, …, n}: families, connectivity, induced
//! subgraphs, and the special-subgraph statistics that govern the last
//! nonzero strip Betti number of a graph-associahedron.

use crate::complex::SimplicialComplex;
use crate::error::{invalid, Result};
use crate::subset::{card_lex, Subset, MAX_GROUND};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Subset>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(invalid(format!("vertex count {n} exceeds {MAX_GROUND}")));
        }
        let mut adj = vec![Subset::EMPTY; n];
        for &(a, b) in edges {
            if a < 1 || a > n || b < 1 || b > n {
                return Err(invalid(format!("edge ({a},{b}) outside 1..={n}")));
            }
            if a == b {
                return Err(invalid(format!("loop at vertex {a}")));
            }
            adj[a - 1] = adj[a - 1].insert(b);
            adj[b - 1] = adj[b - 1].insert(a);
        }
        Ok(Graph { n, adj })
    }

    pub fn from_edge_lists(n: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(edges.len());
        for e in edges {
            match e[..] {
                [a, b] => pairs.push((a, b)),
                _ => return Err(invalid("edges must have exactly two endpoints")),
            }
        }
        Self::new(n, &pairs)
    }

    /// Path 1-2-…-n.
    pub fn chain(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
        Graph::new(n, &edges).expect("valid family")
    }

    /// Cycle 1-2-…-n-1.
    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
        if n >= 3 {
            edges.push((n, 1));
        }
        Graph::new(n, &edges).expect("valid family")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                edges.push((a, b));
            }
        }
        Graph::new(n, &edges).expect("valid family")
    }

    /// Star with center 1 and leaves 2..n.
    pub fn star(n: usize) -> Graph {
        let edges: Vec<_> = (2..=n).map(|v| (1, v)).collect();
        Graph::new(n, &edges).expect("valid family")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> Subset {
        self.adj[v - 1]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a - 1].contains(b)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in self.adj[a - 1].iter() {
                if b > a {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Whether the induced subgraph on nonempty `s` is connected.
    pub fn is_connected_subset(&self, s: Subset) -> bool {
        let Some(start) = s.min_elem() else { return false };
        let mut seen = Subset::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = Subset::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adj[v - 1].inter(s).minus(seen));
            }
            seen = seen.union(next);
            frontier = next;
        }
        seen == s
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.is_connected_subset(Subset::full(self.n))
    }

    /// All nonempty connected vertex sets, sorted by (cardinality, lex).
    pub fn connected_subsets(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = Subset::all(self.n)
            .filter(|&s| !s.is_empty() && self.is_connected_subset(s))
            .collect();
        out.sort_by_key(card_lex);
        out
    }

    /// Connected components of the induced subgraph on `s`.
    pub fn components_within(&self, s: Subset) -> Vec<Subset> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(start) = rest.min_elem() {
            let mut seen = Subset::singleton(start);
            let mut frontier = seen;
            while !frontier.is_empty() {
                let mut next = Subset::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adj[v - 1].inter(s).minus(seen));
                }
                seen = seen.union(next);
                frontier = next;
            }
            out.push(seen);
            rest = rest.minus(seen);
        }
        out
    }

    /// Induced subgraph on `s`, vertices relabeled 1..|s| ascending.
    pub fn induced(&self, s: Subset) -> Graph {
        let mut edges = Vec::new();
        for a in s.iter() {
            for b in self.adj[a - 1].inter(s).iter() {
                if b > a {
                    edges.push((s.rank_below(a) + 1, s.rank_below(b) + 1));
                }
            }
        }
        Graph::new(s.len(), &edges).expect("relabel stays in range")
    }

    /// The graph as a 1-dimensional complex: isolated vertices become
    /// singleton facets.
    pub fn to_complex(&self) -> SimplicialComplex {
        let mut faces: Vec<Subset> = (1..=self.n).map(Subset::singleton).collect();
        for (a, b) in self.edges() {
            faces.push(Subset::from_iter([a, b]));
        }
        SimplicialComplex::from_faces(self.n, faces).expect("edges stay in range")
    }

    /// Number of interactions of a connected set γ: connected sets γ̃ that
    /// either meet γ without containment in either direction, or are disjoint
    /// from γ with connected union.
    pub fn interaction_count(&self, gamma: Subset) -> usize {
        let mut count = 0;
        for cand in Subset::all(self.n) {
            if cand.is_empty() || cand == gamma || !self.is_connected_subset(cand) {
                continue;
            }
            let meet = gamma.inter(cand);
            let interacts = if meet.is_empty() {
                self.is_connected_subset(gamma.union(cand))
            } else {
                meet != gamma && meet != cand
            };
            if interacts {
                count += 1;
            }
        }
        count
    }

    pub fn special_subgraph_stats(&self) -> SpecialStats {
        let mut i_max = 0;
        let mut specials: Vec<Subset> = Vec::new();
        for gamma in self.connected_subsets() {
            let i = self.interaction_count(gamma);
            if i > i_max {
                i_max = i;
                specials.clear();
            }
            if i == i_max {
                specials.push(gamma);
            }
        }
        specials.sort_by_key(card_lex);
        let count = specials.len();
        SpecialStats { i_max, specials, count }
    }
}

/// Maximal interaction number, the sets attaining it, and how many there are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecialStats {
    pub i_max: usize,
    pub specials: Vec<Subset>,
    pub count: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_have_expected_edge_counts() {
        assert_eq!(Graph::chain(4).edge_count(), 3);
        assert_eq!(Graph::cycle(5).edge_count(), 5);
        assert_eq!(Graph::complete(5).edge_count(), 10);
        assert_eq!(Graph::star(6).edge_count(), 5);
        assert_eq!(Graph::cycle(2).edge_count(), 1);
    }

    #[test]
    fn connectivity_of_subsets() {
        let g = Graph::chain(5);
        assert!(g.is_connected_subset(Subset::from_iter([2, 3, 4])));
        assert!(!g.is_connected_subset(Subset::from_iter([1, 3])));
        assert!(g.is_connected());
        assert_eq!(g.connected_subsets().len(), 5 + 4 + 3 + 2 + 1);
        let parts = g.components_within(Subset::from_iter([1, 2, 4, 5]));
        assert_eq!(parts, vec![Subset::from_iter([1, 2]), Subset::from_iter([4, 5])]);
    }

    #[test]
    fn chain_on_four_vertices_special_stats() {
        let stats = Graph::chain(4).special_subgraph_stats();
        assert_eq!(stats.i_max, 4);
        assert_eq!(stats.count, 3);
        assert_eq!(
            stats.specials,
            vec![
                Subset::from_iter([1, 2]),
                Subset::from_iter([2, 3]),
                Subset::from_iter([3, 4]),
            ]
        );
        // same statistics in a different labeling of the same path
        let relabeled = Graph::new(4, &[(4, 1), (1, 2), (2, 3)]).unwrap();
        let stats2 = relabeled.special_subgraph_stats();
        assert_eq!(stats2.i_max, 4);
        assert_eq!(stats2.count, 3);
        assert_eq!(
            stats2.specials,
            vec![
                Subset::from_iter([1, 2]),
                Subset::from_iter([1, 4]),
                Subset::from_iter([2, 3]),
            ]
        );
    }

    #[test]
    fn chain_on_five_vertices_special_stats() {
        let stats = Graph::chain(5).special_subgraph_stats();
        assert_eq!(stats.i_max, 6);
        assert_eq!(stats.count, 7);
        // the 4 edges and the 3 sub-paths on 3 vertices
        assert!(stats.specials.contains(&Subset::from_iter([1, 2])));
        assert!(stats.specials.contains(&Subset::from_iter([2, 3, 4])));
    }

    #[test]
    fn complete_graph_has_no_partial_overlaps_of_size_two() {
        // on K3 every pair of connected sets either nests or unions to a
        // connected set, so every singleton interacts with everything disjoint
        let stats = Graph::complete(3).special_subgraph_stats();
        assert_eq!(stats.i_max, 3);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::cycle(5);
        let sub = g.induced(Subset::from_iter([1, 2, 4]));
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edges(), vec![(1, 2)]);
    }
}
