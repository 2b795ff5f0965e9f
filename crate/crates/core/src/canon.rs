//! Canonical labeling of simplicial complexes up to vertex relabeling.
//!
//! Color refinement on the vertex/facet incidence structure, followed by
//! individualization with backtracking; the canonical form is the relabeling
//! whose sorted facet list is (cardinality, lex)-least. Cells of mutually
//! indistinguishable vertices (identical facet membership) are ordered without
//! branching.

use crate::complex::SimplicialComplex;
use crate::subset::{card_lex, Subset};
use std::collections::BTreeMap;

/// Canonical representative together with the relabeling that produces it:
/// `perm[v-1]` is the canonical label of original vertex `v`.
pub fn canonical_form(k: &SimplicialComplex) -> (SimplicialComplex, Vec<usize>) {
    let m = k.m();
    if m == 0 {
        return (k.clone(), Vec::new());
    }
    let facets: Vec<Subset> = k.facets().to_vec();
    let mut search = Search { m, facets: &facets, best: None };
    let colors = vec![0u32; m];
    search.descend(colors);
    let (perm, best_facets) = search.best.expect("at least one leaf");
    let canon = SimplicialComplex::from_faces(m, best_facets).expect("relabel stays in range");
    (canon, perm)
}

/// Stable fingerprint of the isomorphism class: ground size plus the
/// canonical facet bit patterns.
pub fn canonical_key(k: &SimplicialComplex) -> (usize, Vec<u64>) {
    let (canon, _) = canonical_form(k);
    (k.m(), canon.facets().iter().map(|f| f.bits()).collect())
}

pub fn are_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    a.m() == b.m() && canonical_key(a) == canonical_key(b)
}

struct Search<'a> {
    m: usize,
    facets: &'a [Subset],
    best: Option<(Vec<usize>, Vec<Subset>)>,
}

impl Search<'_> {
    fn refine(&self, colors: &mut [u32]) {
        loop {
            let before = distinct(colors);
            let fprofiles: Vec<Vec<u32>> = self
                .facets
                .iter()
                .map(|f| {
                    let mut p: Vec<u32> = f.iter().map(|v| colors[v - 1]).collect();
                    p.sort_unstable();
                    p
                })
                .collect();
            let mut keys: Vec<(u32, Vec<&Vec<u32>>)> = Vec::with_capacity(self.m);
            for v in 1..=self.m {
                let mut incident: Vec<&Vec<u32>> = self
                    .facets
                    .iter()
                    .zip(&fprofiles)
                    .filter(|(f, _)| f.contains(v))
                    .map(|(_, p)| p)
                    .collect();
                incident.sort();
                keys.push((colors[v - 1], incident));
            }
            renumber(&keys, colors);
            if distinct(colors) == before {
                return;
            }
        }
    }

    fn descend(&mut self, mut colors: Vec<u32>) {
        self.refine(&mut colors);
        let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for v in 1..=self.m {
            cells.entry(colors[v - 1]).or_default().push(v);
        }
        let target = cells.values().find(|c| c.len() > 1).cloned();
        let Some(cell) = target else {
            self.leaf(&colors);
            return;
        };
        // vertices with identical facet membership are interchangeable: fix
        // the ascending order instead of branching
        let membership = |v: usize| -> Vec<usize> {
            self.facets.iter().enumerate().filter(|(_, f)| f.contains(v)).map(|(i, _)| i).collect()
        };
        let twins = cell.windows(2).all(|w| membership(w[0]) == membership(w[1]));
        let branches: &[usize] = if twins { &cell[..1] } else { &cell };
        for &v in branches {
            let keys: Vec<(u32, u8)> =
                (1..=self.m).map(|w| (colors[w - 1], u8::from(w != v))).collect();
            let mut next = colors.clone();
            renumber(&keys, &mut next);
            self.descend(next);
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let mut perm = vec![0usize; self.m];
        let mut order: Vec<usize> = (1..=self.m).collect();
        order.sort_by_key(|&v| colors[v - 1]);
        for (rank, &v) in order.iter().enumerate() {
            perm[v - 1] = rank + 1;
        }
        let mut relabeled: Vec<Subset> = self
            .facets
            .iter()
            .map(|f| Subset::from_iter(f.iter().map(|v| perm[v - 1])))
            .collect();
        relabeled.sort_by_key(card_lex);
        let better = match &self.best {
            None => true,
            Some((_, best)) => {
                let a = relabeled.iter().map(card_lex);
                let b = best.iter().map(card_lex);
                a.lt(b)
            }
        };
        if better {
            self.best = Some((perm, relabeled));
        }
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn renumber<K: Ord>(keys: &[K], colors: &mut [u32]) {
    let mut rank: BTreeMap<&K, u32> = BTreeMap::new();
    for k in keys {
        rank.entry(k).or_insert(0);
    }
    let mut next = 0;
    for v in rank.values_mut() {
        *v = next;
        next += 1;
    }
    for (c, k) in colors.iter_mut().zip(keys) {
        *c = rank[k];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn k(m: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facet_lists(
            m,
            &facets.iter().map(|f| f.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn relabelings_share_a_canonical_form() {
        let a = k(5, &[&[1, 2, 3], &[3, 4], &[4, 5], &[2, 5]]);
        let perms: &[[usize; 5]] = &[
            [1, 2, 3, 4, 5],
            [5, 4, 3, 2, 1],
            [2, 3, 4, 5, 1],
            [3, 1, 4, 5, 2],
        ];
        let keys: Vec<_> = perms
            .iter()
            .map(|p| canonical_key(&a.relabel(p).unwrap()))
            .collect();
        assert!(keys.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn perm_actually_produces_the_canonical_form() {
        let a = k(4, &[&[2, 4], &[1, 3], &[1, 4]]);
        let (canon, perm) = canonical_form(&a);
        assert_eq!(a.relabel(&perm).unwrap(), canon);
    }

    #[test]
    fn non_isomorphic_complexes_are_separated() {
        let path = k(4, &[&[1, 2], &[2, 3], &[3, 4]]);
        let star = k(4, &[&[1, 2], &[1, 3], &[1, 4]]);
        let cycle = k(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        assert!(!are_isomorphic(&path, &star));
        assert!(!are_isomorphic(&path, &cycle));
        assert!(are_isomorphic(&path, &path.relabel(&[4, 3, 2, 1]).unwrap()));
    }

    #[test]
    fn ghosts_do_not_blow_up_the_search() {
        let a = k(10, &[&[1, 2]]);
        let b = k(10, &[&[9, 10]]);
        assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn cross_polytope_has_symmetric_canonical_form() {
        // octahedron: facets choose one of {1,4}, one of {2,5}, one of {3,6}
        let mut facets = Vec::new();
        for a in [1, 4] {
            for b in [2, 5] {
                for c in [3, 6] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        let oct = SimplicialComplex::from_facet_lists(6, &facets).unwrap();
        let (canon, _) = canonical_form(&oct);
        assert_eq!(canon.f_vector(), vec![6, 12, 8]);
        let relabeled = oct.relabel(&[3, 5, 1, 6, 2, 4]).unwrap();
        assert!(are_isomorphic(&oct, &relabeled));
    }
}
