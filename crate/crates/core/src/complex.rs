//! Finite abstract simplicial complexes on ground set {1, …, m}.
//!
//! A complex is stored by its inclusion-maximal faces. Two degenerate cases
//! are kept distinct: the void complex (no faces at all) and the empty complex
//! (single face ∅). Ground-set vertices that lie in no facet are "ghosts":
//! they count toward `m` but are not faces.

use crate::error::{invalid, Result};
use crate::subset::{card_lex, Subset, MAX_GROUND};
use std::collections::BTreeSet;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    m: usize,
    /// Sorted, inclusion-maximal. Empty vec = void complex; `[∅]` = empty complex.
    facets: Vec<Subset>,
}

impl SimplicialComplex {
    /// The void complex: no faces, not even ∅.
    pub fn void(m: usize) -> Self {
        SimplicialComplex { m, facets: Vec::new() }
    }

    /// The empty complex: the single face ∅.
    pub fn empty(m: usize) -> Self {
        SimplicialComplex { m, facets: vec![Subset::EMPTY] }
    }

    /// Build from an arbitrary list of faces; non-maximal entries are dropped
    /// and the rest sorted. An empty list yields the void complex.
    pub fn from_faces(m: usize, faces: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if m > MAX_GROUND {
            return Err(invalid(format!("ground set size {m} exceeds {MAX_GROUND}")));
        }
        let ground = Subset::full(m);
        let mut list: Vec<Subset> = Vec::new();
        for f in faces {
            if !f.is_subset_of(ground) {
                return Err(invalid(format!("face {f} is not contained in {{1,…,{m}}}")));
            }
            list.push(f);
        }
        list.sort_by_key(card_lex);
        list.dedup();
        let mut facets: Vec<Subset> = Vec::new();
        for (idx, &f) in list.iter().enumerate() {
            if !list[idx + 1..].iter().any(|g| f.is_strict_subset_of(*g)) {
                facets.push(f);
            }
        }
        if facets.len() > 1 {
            facets.retain(|f| !f.is_empty());
        }
        facets.sort_by_key(card_lex);
        Ok(SimplicialComplex { m, facets })
    }

    pub fn from_facet_lists(m: usize, lists: &[Vec<usize>]) -> Result<Self> {
        for f in lists {
            for &v in f {
                if v < 1 || v > m {
                    return Err(invalid(format!("vertex {v} outside 1..={m}")));
                }
            }
            let dedup: BTreeSet<usize> = f.iter().copied().collect();
            if dedup.len() != f.len() {
                return Err(invalid("facet with repeated vertex".to_string()));
            }
        }
        Self::from_faces(m, lists.iter().map(|f| Subset::from_iter(f.iter().copied())))
    }

    /// Full simplex on {1, …, m}.
    pub fn simplex(m: usize) -> Self {
        if m == 0 {
            Self::empty(0)
        } else {
            SimplicialComplex { m, facets: vec![Subset::full(m)] }
        }
    }

    /// Boundary of the simplex on {1, …, m}.
    pub fn simplex_boundary(m: usize) -> Self {
        if m == 0 {
            Self::void(0)
        } else {
            let full = Subset::full(m);
            let facets = (1..=m).rev().map(|v| full.remove(v)).collect();
            SimplicialComplex { m, facets }
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[Subset] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets == [Subset::EMPTY]
    }

    /// Dimension: `None` for void, `-1` for the empty complex.
    pub fn dim(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.len() as i64 - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Union of all facets: the vertices that are actually faces.
    pub fn support(&self) -> Subset {
        self.facets.iter().fold(Subset::EMPTY, |a, &f| a.union(f))
    }

    /// Ground-set vertices that are not faces.
    pub fn ghost_vertices(&self) -> Subset {
        Subset::full(self.m).minus(self.support())
    }

    pub fn has_face(&self, f: Subset) -> bool {
        self.facets.iter().any(|&g| f.is_subset_of(g))
    }

    /// All faces of the given cardinality, ascending. Size 0 gives `[∅]` for
    /// any non-void complex.
    pub fn faces_of_size(&self, k: usize) -> Vec<Subset> {
        let mut out = BTreeSet::new();
        for &f in &self.facets {
            if f.len() >= k {
                collect_size_subsets(f, k, &mut out);
            }
        }
        out.into_iter().collect()
    }

    /// Faces grouped by cardinality: entry `k` lists the faces of size `k`.
    pub fn faces_by_size(&self) -> Vec<Vec<Subset>> {
        let d = match self.dim() {
            None => return Vec::new(),
            Some(d) => d,
        };
        (0..=(d + 1) as usize).map(|k| self.faces_of_size(k)).collect()
    }

    /// All nonempty faces, sorted by (cardinality, lex).
    pub fn all_faces(&self) -> Vec<Subset> {
        let mut out = Vec::new();
        for sizes in self.faces_by_size().iter().skip(1) {
            out.extend_from_slice(sizes);
        }
        out
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces_of_size(2)
            .into_iter()
            .map(|e| {
                let mut it = e.iter();
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect()
    }

    /// Number of connected components of the support (edges from 2-element
    /// faces). The void and empty complexes have 0 components.
    pub fn connected_component_count(&self) -> usize {
        let support = self.support();
        if support.is_empty() {
            return 0;
        }
        let mut parent: Vec<usize> = (0..=self.m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for &f in &self.facets {
            if let Some(first) = f.min_elem() {
                for v in f.iter() {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, v));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut roots = BTreeSet::new();
        for v in support.iter() {
            roots.insert(find(&mut parent, v));
        }
        roots.len()
    }

    /// Restriction to the vertex set `j`, relabeled 1..|j| in ascending
    /// original order.
    pub fn induced_subcomplex(&self, j: Subset) -> SimplicialComplex {
        let mut faces: Vec<Subset> = self.facets.iter().map(|&f| f.inter(j)).collect();
        faces.sort_by_key(card_lex);
        faces.dedup();
        let relabeled = faces
            .iter()
            .map(|&f| Subset::from_iter(f.iter().map(|v| j.rank_below(v) + 1)))
            .collect::<Vec<_>>();
        SimplicialComplex::from_faces(j.len(), relabeled).expect("relabel stays in range")
    }

    /// Facet traces on `j` without relabeling; used by the Hochster sweep.
    pub(crate) fn traces_on(&self, j: Subset) -> Vec<Subset> {
        let mut faces: Vec<Subset> = self.facets.iter().map(|&f| f.inter(j)).collect();
        faces.sort_by_key(card_lex);
        faces.dedup();
        faces
    }

    /// Apply a relabeling; `perm[v-1]` is the new label of old vertex `v`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SimplicialComplex> {
        if perm.len() != self.m {
            return Err(invalid("relabeling length must equal m"));
        }
        let mut seen = vec![false; self.m + 1];
        for &w in perm {
            if w < 1 || w > self.m || seen[w] {
                return Err(invalid("relabeling is not a permutation"));
            }
            seen[w] = true;
        }
        let facets = self
            .facets
            .iter()
            .map(|&f| Subset::from_iter(f.iter().map(|v| perm[v - 1])))
            .collect::<Vec<_>>();
        SimplicialComplex::from_faces(self.m, facets)
    }

    /// Join K * L, with L's vertices shifted past K's ground set.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let m = self.m + other.m;
        if m > MAX_GROUND {
            return Err(invalid("join exceeds the 64-vertex ground limit"));
        }
        if self.is_void() || other.is_void() {
            return Ok(SimplicialComplex::void(m));
        }
        let shift = |f: Subset| Subset::from_iter(f.iter().map(|v| v + self.m));
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for &a in &self.facets {
            for &b in &other.facets {
                facets.push(a.union(shift(b)));
            }
        }
        SimplicialComplex::from_faces(m, facets)
    }

    /// Stellar subdivision at a nonempty face: the new vertex m+1 replaces the
    /// interior of the star of `sigma`.
    pub fn stellar_subdivision(&self, sigma: Subset) -> Result<SimplicialComplex> {
        if sigma.is_empty() || !self.has_face(sigma) {
            return Err(invalid(format!("{sigma} is not a nonempty face")));
        }
        if self.m + 1 > MAX_GROUND {
            return Err(invalid("subdivision exceeds the 64-vertex ground limit"));
        }
        let w = self.m + 1;
        let mut facets = Vec::new();
        for &f in &self.facets {
            if sigma.is_subset_of(f) {
                // replace f by (f \ {x}) ∪ {w} for x ∈ sigma
                for x in sigma.iter() {
                    facets.push(f.remove(x).insert(w));
                }
            } else {
                facets.push(f);
            }
        }
        SimplicialComplex::from_faces(w, facets)
    }

    /// Barycentric subdivision. Vertex `i` of the result is the i-th nonempty
    /// face in (cardinality, lex) order; faces are chains.
    pub fn barycentric_subdivision(&self) -> Result<(SimplicialComplex, Vec<Subset>)> {
        let faces = self.all_faces();
        if faces.len() > MAX_GROUND {
            return Err(invalid("barycentric subdivision exceeds the 64-vertex ground limit"));
        }
        if faces.is_empty() {
            let k = if self.is_void() {
                SimplicialComplex::void(0)
            } else {
                SimplicialComplex::empty(0)
            };
            return Ok((k, faces));
        }
        let index_of = |f: Subset| faces.binary_search_by_key(&card_lex(&f), card_lex).unwrap() + 1;
        let mut chains: Vec<Subset> = Vec::new();
        // depth-first extension of strictly increasing chains of faces
        let mut stack: Vec<(Subset, Subset)> = faces.iter().map(|&f| (f, Subset::singleton(index_of(f)))).collect();
        while let Some((top, chain)) = stack.pop() {
            let mut maximal = true;
            for &g in &faces {
                if top.is_strict_subset_of(g) {
                    maximal = false;
                    stack.push((g, chain.insert(index_of(g))));
                }
            }
            if maximal {
                chains.push(chain);
            }
        }
        let sd = SimplicialComplex::from_faces(faces.len(), chains)?;
        Ok((sd, faces))
    }

    /// Flag test: `None` when every minimal non-face has ≤ 2 vertices,
    /// otherwise the (cardinality, lex)-least minimal non-face of size ≥ 3.
    pub fn flag_witness(&self) -> Option<Subset> {
        let support = self.support();
        let mut witness: Option<Subset> = None;
        for f in self.all_faces() {
            if f.len() < 2 {
                continue;
            }
            for v in support.minus(f).iter() {
                let cand = f.insert(v);
                if self.has_face(cand) {
                    continue;
                }
                if cand.iter().all(|x| self.has_face(cand.remove(x))) {
                    let better = witness.is_none_or(|w| card_lex(&cand) < card_lex(&w));
                    if better {
                        witness = Some(cand);
                    }
                }
            }
        }
        witness
    }

    pub fn is_flag(&self) -> bool {
        self.flag_witness().is_none()
    }

    /// Number of faces per dimension: `f[k]` counts k-element faces, k ≥ 1.
    pub fn f_vector(&self) -> Vec<u64> {
        self.faces_by_size().iter().skip(1).map(|v| v.len() as u64).collect()
    }
}

fn collect_size_subsets(f: Subset, k: usize, out: &mut BTreeSet<Subset>) {
    use itertools::Itertools;
    for combo in f.to_vec().into_iter().combinations(k) {
        out.insert(Subset::from_iter(combo));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(m: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facet_lists(
            m,
            &facets.iter().map(|f| f.to_vec()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn void_and_empty_are_distinct() {
        let void = SimplicialComplex::void(0);
        let empty = SimplicialComplex::empty(0);
        assert!(void.is_void());
        assert!(!empty.is_void());
        assert_eq!(void.dim(), None);
        assert_eq!(empty.dim(), Some(-1));
        assert!(!void.has_face(Subset::EMPTY));
        assert!(empty.has_face(Subset::EMPTY));
    }

    #[test]
    fn facet_normalization_drops_non_maximal() {
        let c = k(3, &[&[1], &[1, 2], &[2, 3], &[3]]);
        assert_eq!(c.facets().len(), 2);
        assert!(c.has_face(Subset::singleton(1)));
        assert!(!c.has_face(Subset::from_iter([1, 3])));
    }

    #[test]
    fn ghosts_are_not_faces() {
        let c = k(4, &[&[1, 2]]);
        assert_eq!(c.ghost_vertices(), Subset::from_iter([3, 4]));
        assert!(!c.has_face(Subset::singleton(3)));
        assert_eq!(c.connected_component_count(), 1);
    }

    #[test]
    fn face_enumeration_matches_hand_counts() {
        let boundary = SimplicialComplex::simplex_boundary(4);
        assert_eq!(boundary.f_vector(), vec![4, 6, 4]);
        assert_eq!(boundary.faces_of_size(0), vec![Subset::EMPTY]);
        let square = k(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        assert_eq!(square.f_vector(), vec![4, 4]);
        assert_eq!(square.connected_component_count(), 1);
        assert!(square.is_flag());
    }

    #[test]
    fn flag_witness_on_simplex_boundary() {
        let boundary = SimplicialComplex::simplex_boundary(3);
        assert_eq!(boundary.flag_witness(), Some(Subset::full(3)));
        assert!(!boundary.is_flag());
    }

    #[test]
    fn stellar_subdivision_of_triangle_edge() {
        let tri = SimplicialComplex::simplex_boundary(3);
        let sub = tri.stellar_subdivision(Subset::from_iter([1, 2])).unwrap();
        // square on 4 vertices: edges 13, 23 kept; 12 replaced by 14, 24
        assert_eq!(sub.f_vector(), vec![4, 4]);
        assert!(sub.has_face(Subset::from_iter([1, 4])));
        assert!(!sub.has_face(Subset::from_iter([1, 2])));
    }

    #[test]
    fn barycentric_subdivision_counts() {
        let tri = SimplicialComplex::simplex_boundary(3);
        let (sd, labels) = tri.barycentric_subdivision().unwrap();
        assert_eq!(labels.len(), 6);
        assert_eq!(sd.f_vector(), vec![6, 6]);
        let full = SimplicialComplex::simplex(3);
        let (sd2, labels2) = full.barycentric_subdivision().unwrap();
        assert_eq!(labels2.len(), 7);
        assert_eq!(sd2.f_vector(), vec![7, 12, 6]);
    }

    #[test]
    fn induced_subcomplex_relabels() {
        let c = k(4, &[&[1, 2, 3], &[3, 4]]);
        let sub = c.induced_subcomplex(Subset::from_iter([2, 3, 4]));
        // vertices 2,3,4 -> 1,2,3; faces {2,3} -> {1,2}, {3,4} -> {2,3}
        assert_eq!(sub.m(), 3);
        assert!(sub.has_face(Subset::from_iter([1, 2])));
        assert!(sub.has_face(Subset::from_iter([2, 3])));
        assert!(!sub.has_face(Subset::from_iter([1, 3])));
    }

    #[test]
    fn join_of_point_pairs_is_a_square() {
        let edge = k(2, &[&[1], &[2]]);
        let j = edge.join(&edge).unwrap();
        // two-point complex joined with itself: the 4-cycle 1-3-2-4
        assert_eq!(j.m(), 4);
        assert_eq!(j.f_vector(), vec![4, 4]);
        assert!(j.has_face(Subset::from_iter([1, 3])));
        assert!(!j.has_face(Subset::from_iter([1, 2])));
    }
}
