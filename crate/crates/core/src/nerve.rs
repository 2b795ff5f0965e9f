//! Nested-set complexes: boundaries of dual nestohedra, built either directly
//! from the nested-set condition or by replaying a truncation sequence as
//! stellar subdivisions.

use std::collections::HashMap;

use crate::building::{decompose_within, BuildingSet};
use crate::complex::SimplicialComplex;
use crate::error::{internal, invalid, Error, Result};
use crate::graph::Graph;
use crate::subset::{card_lex, Subset, MAX_GROUND};

/// A simplicial complex whose vertices carry building-set members as labels.
/// Vertex `i` (1-based) is labeled `labels[i - 1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledComplex {
    pub complex: SimplicialComplex,
    pub labels: Vec<Subset>,
}

impl LabeledComplex {
    pub fn new(complex: SimplicialComplex, labels: Vec<Subset>) -> Result<Self> {
        if labels.len() != complex.m() {
            return Err(internal(format!(
                "{} labels for a complex on {} vertices",
                labels.len(),
                complex.m()
            )));
        }
        let mut seen = labels.clone();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(internal("duplicate vertex labels"));
        }
        Ok(LabeledComplex { complex, labels })
    }

    /// 1-based vertex carrying `label`, if present.
    pub fn index_of(&self, label: Subset) -> Option<usize> {
        self.labels.iter().position(|&l| l == label).map(|i| i + 1)
    }

    /// The same complex with vertices renumbered so labels appear in
    /// (cardinality, lexicographic) order.
    pub fn sorted_by_labels(&self) -> Result<LabeledComplex> {
        let mut order: Vec<usize> = (0..self.labels.len()).collect();
        order.sort_by_key(|&i| card_lex(&self.labels[i]));
        let mut perm = vec![0usize; self.labels.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new + 1;
        }
        let complex = self.complex.relabel(&perm)?;
        let labels = order.iter().map(|&i| self.labels[i]).collect();
        LabeledComplex::new(complex, labels)
    }
}

/// Whether two members can share a nested set: nested or disjoint.
fn compatible(a: Subset, b: Subset) -> bool {
    !a.intersects(b) || a.is_subset_of(b) || b.is_subset_of(a)
}

/// Checks that `sigma ∪ {x}` (vertex indices into `labels`, 0-based) is a
/// nested set, assuming `sigma` already is one.
fn extends_nested(b: &BuildingSet, labels: &[Subset], sigma: &[usize], x: usize) -> bool {
    let lx = labels[x];
    for &y in sigma {
        if !compatible(labels[y], lx) {
            return false;
        }
    }
    // Every antichain of ≥ 2 pairwise-disjoint members must have union ∉ B.
    // New antichains all contain x; the rest ranges over members of sigma
    // disjoint from x.
    let disjoint: Vec<Subset> =
        sigma.iter().map(|&y| labels[y]).filter(|&l| !l.intersects(lx)).collect();
    let mut stack: Vec<(usize, Subset)> = vec![(0, lx)];
    while let Some((from, union)) = stack.pop() {
        for (i, &l) in disjoint.iter().enumerate().skip(from) {
            if union.intersects(l) {
                continue;
            }
            let bigger = union.union(l);
            if b.contains(bigger) {
                return false;
            }
            stack.push((i + 1, bigger));
        }
    }
    true
}

/// The boundary complex of the simplicial polytope dual to the nestohedron of
/// `b`: vertices are proper members in (cardinality, lexicographic) order,
/// faces are the nested sets.
pub fn nerve_of_nestohedron(b: &BuildingSet) -> Result<LabeledComplex> {
    if !b.is_connected() {
        return Err(invalid("nerve requires a connected building set"));
    }
    let labels: Vec<Subset> = b.proper_members();
    let mv = labels.len();
    if mv > MAX_GROUND {
        return Err(Error::ResourceLimit(format!(
            "nerve has {mv} vertices, more than the supported {MAX_GROUND}"
        )));
    }
    if mv == 0 {
        // A single-point ground set: the nestohedron is a point.
        return LabeledComplex::new(SimplicialComplex::empty(0), labels);
    }

    let mut facets: Vec<Subset> = Vec::new();
    let mut sigma: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    while let Some((next, depth)) = stack.pop() {
        sigma.truncate(depth);
        if next == mv {
            let maximal = (0..mv)
                .all(|x| sigma.contains(&x) || !extends_nested(b, &labels, &sigma, x));
            if maximal && !sigma.is_empty() {
                facets.push(Subset::from_iter(sigma.iter().map(|&i| i + 1)));
            }
            continue;
        }
        stack.push((next + 1, depth));
        if extends_nested(b, &labels, &sigma, next) {
            sigma.push(next);
            stack.push((next + 1, depth + 1));
        }
    }

    let complex = SimplicialComplex::from_faces(mv, facets)?;
    let dim = b.ground() as i64 - 2;
    if complex.dim() != Some(dim) || !complex.is_pure() {
        return Err(internal(format!(
            "nested-set complex is not a pure {dim}-dimensional complex"
        )));
    }
    LabeledComplex::new(complex, labels)
}

/// The base shapes from which truncation sequences may start.
enum Base {
    Simplex,
    /// The inclusion chain of non-singleton proper members, smallest first.
    Cube(Vec<Subset>),
}

fn classify_base(b: &BuildingSet) -> Result<Base> {
    let mut chain: Vec<Subset> =
        b.proper_members().iter().copied().filter(|s| s.len() > 1).collect();
    if chain.is_empty() {
        return Ok(Base::Simplex);
    }
    chain.sort_by_key(card_lex);
    let sizes_ok = chain.iter().enumerate().all(|(i, s)| s.len() == i + 2);
    let nested_ok = chain.windows(2).all(|w| w[0].is_strict_subset_of(w[1]));
    if sizes_ok && nested_ok && chain.len() == b.ground() - 2 {
        Ok(Base::Cube(chain))
    } else {
        Err(invalid("base building set is neither a simplex nor a cube"))
    }
}

/// The nerve of a cube building set: a cross-polytope boundary. `pairs` lists
/// the antipodal label pairs; vertices are numbered `order`-wise.
fn cross_polytope(order: &[Subset], pairs: &[(Subset, Subset)]) -> Result<LabeledComplex> {
    let index: HashMap<Subset, usize> =
        order.iter().enumerate().map(|(i, &l)| (l, i + 1)).collect();
    let mut facets = Vec::with_capacity(1 << pairs.len());
    for choice in 0..1u64 << pairs.len() {
        let mut facet = Subset::EMPTY;
        for (k, &(a, b)) in pairs.iter().enumerate() {
            let label = if choice >> k & 1 == 0 { a } else { b };
            facet = facet.insert(index[&label]);
        }
        facets.push(facet);
    }
    let complex = SimplicialComplex::from_faces(order.len(), facets)?;
    LabeledComplex::new(complex, order.to_vec())
}

fn base_nerve(b: &BuildingSet) -> Result<LabeledComplex> {
    let labels = b.proper_members();
    match classify_base(b)? {
        Base::Simplex => {
            let complex = SimplicialComplex::simplex_boundary(labels.len());
            LabeledComplex::new(complex, labels)
        }
        Base::Cube(chain) => {
            let mut pairs = Vec::with_capacity(b.ground() - 1);
            let first = &chain[0];
            let t1 = first.min_elem().expect("nonempty chain member");
            let t2 = first.minus(Subset::singleton(t1)).min_elem().expect("size-2 member");
            pairs.push((Subset::singleton(t1), Subset::singleton(t2)));
            for (k, &tk) in chain.iter().enumerate() {
                let above = if k + 1 < chain.len() { chain[k + 1] } else { Subset::full(b.ground()) };
                let fresh = above.minus(tk).min_elem().expect("strictly growing chain");
                pairs.push((tk, Subset::singleton(fresh)));
            }
            cross_polytope(&labels, &pairs)
        }
    }
}

/// Builds the nerve of `b1` by stellar subdivisions starting from the nerve of
/// `b0`, which must be a simplex or cube building set contained in `b1`.
/// Members of `b1 ∖ b0` are processed in inclusion-decreasing order; each is
/// subdivided at the face spanned by its decomposition over the members added
/// so far.
pub fn nerve_via_truncations(b0: &BuildingSet, b1: &BuildingSet) -> Result<LabeledComplex> {
    if b0.ground() != b1.ground() {
        return Err(invalid("building sets live on different ground sets"));
    }
    if !b0.is_connected() || !b1.is_connected() {
        return Err(invalid("truncation construction requires connected building sets"));
    }
    for &s in b0.sets() {
        if !b1.contains(s) {
            return Err(invalid(format!("{s} is in the base but not the target")));
        }
    }
    let remaining_count = b1.sets().len() - b0.sets().len();
    if b0.proper_members().len() + remaining_count > MAX_GROUND {
        return Err(Error::ResourceLimit(format!(
            "nerve would have more than {MAX_GROUND} vertices"
        )));
    }

    let LabeledComplex { mut complex, mut labels } = base_nerve(b0)?;
    let mut family: Vec<Subset> = b0.sets().to_vec();
    let mut index: HashMap<Subset, usize> =
        labels.iter().enumerate().map(|(i, &l)| (l, i + 1)).collect();

    let mut remaining: Vec<Subset> =
        b1.sets().iter().copied().filter(|s| !b0.contains(*s)).collect();
    remaining.sort_by_key(|s| (std::cmp::Reverse(s.len()), *s));

    for s in remaining {
        let parts = decompose_within(&family, s);
        let mut face = Subset::EMPTY;
        for part in &parts {
            let &v = index
                .get(part)
                .ok_or_else(|| internal(format!("decomposition part {part} is not a vertex")))?;
            face = face.insert(v);
        }
        if parts.len() < 2 || !complex.has_face(face) {
            return Err(internal(format!(
                "truncation at {s}: decomposition face {face} is absent"
            )));
        }
        complex = complex.stellar_subdivision(face)?;
        labels.push(s);
        index.insert(s, labels.len());
        family.push(s);
        family.sort_by_key(card_lex);
    }

    if labels.len() != b1.proper_members().len() {
        return Err(internal("truncation sequence did not reach the target member count"));
    }
    LabeledComplex::new(complex, labels)
}

/// The nerve of the 2-truncated cube carrying a nontrivial n-fold Massey
/// product, built by stellar subdivisions of the cross-polytope at the cut
/// edges. Vertex numbering follows the facet numbering the canonical Massey
/// classes refer to: vertex k ≤ n is the prefix {1..k}, vertex n+j is {j+1},
/// and vertex 2n+t is the t-th cut.
pub fn pcube_nerve(n: usize) -> Result<LabeledComplex> {
    if n < 2 {
        return Err(invalid("the 2-truncated cube family starts at dimension 2"));
    }
    let cuts = BuildingSet::pcube_cuts(n);
    let m = 2 * n + cuts.len();
    if m > MAX_GROUND {
        return Err(Error::ResourceLimit(format!(
            "dimension {n} needs {m} vertices, more than the supported {MAX_GROUND}"
        )));
    }

    let mut labels: Vec<Subset> = Vec::with_capacity(m);
    for k in 1..=n {
        labels.push(Subset::from_iter(1..=k));
    }
    for j in 1..=n {
        labels.push(Subset::singleton(j + 1));
    }
    let pairs: Vec<(Subset, Subset)> =
        (0..n).map(|k| (labels[k], labels[n + k])).collect();
    let LabeledComplex { mut complex, mut labels } = cross_polytope(&labels, &pairs)?;

    for (t, &cut) in cuts.iter().enumerate() {
        let k = cut.len() - 1;
        let g = cut.max_elem().expect("nonempty cut") - k;
        let edge = Subset::singleton(k).insert(n + k + g - 1);
        if !complex.has_face(edge) {
            return Err(internal(format!("cut {cut}: edge {edge} is absent")));
        }
        complex = complex.stellar_subdivision(edge)?;
        labels.push(cut);
        debug_assert_eq!(labels.len(), 2 * n + t + 1);
    }

    for i in 0..=n - 2 {
        for k in 1..=n - i {
            let pair = Subset::singleton(k).insert(n + k + i);
            if complex.has_face(pair) {
                return Err(internal(format!(
                    "expected quadratic non-face {pair} is a face"
                )));
            }
        }
    }
    LabeledComplex::new(complex, labels)
}

/// Nerve of the graph-associahedron of `g` (the nestohedron of its graphical
/// building set). The graph must be connected.
pub fn graph_associahedron_nerve(g: &Graph) -> Result<LabeledComplex> {
    nerve_of_nestohedron(&BuildingSet::graphical(g))
}

fn family_ground(n: usize, least_dim: usize) -> Result<usize> {
    if n < least_dim {
        return Err(invalid(format!("this polytope family starts at dimension {least_dim}")));
    }
    if n + 1 > MAX_GROUND {
        return Err(Error::ResourceLimit(format!(
            "dimension {n} exceeds the supported ground size {MAX_GROUND}"
        )));
    }
    Ok(n + 1)
}

pub fn associahedron_nerve(n: usize) -> Result<LabeledComplex> {
    graph_associahedron_nerve(&Graph::chain(family_ground(n, 1)?))
}

pub fn cyclohedron_nerve(n: usize) -> Result<LabeledComplex> {
    graph_associahedron_nerve(&Graph::cycle(family_ground(n, 2)?))
}

pub fn permutohedron_nerve(n: usize) -> Result<LabeledComplex> {
    graph_associahedron_nerve(&Graph::complete(family_ground(n, 1)?))
}

pub fn stellahedron_nerve(n: usize) -> Result<LabeledComplex> {
    graph_associahedron_nerve(&Graph::star(family_ground(n, 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    fn s(vs: &[usize]) -> Subset {
        Subset::from_iter(vs.iter().copied())
    }

    #[test]
    fn simplex_building_set_gives_simplex_boundary() {
        let b = BuildingSet::simplex(4).unwrap();
        let nerve = nerve_of_nestohedron(&b).unwrap();
        assert_eq!(nerve.complex, SimplicialComplex::simplex_boundary(4));
        assert_eq!(nerve.labels, vec![s(&[1]), s(&[2]), s(&[3]), s(&[4])]);
    }

    #[test]
    fn cube_building_set_gives_cross_polytope() {
        let b = BuildingSet::cube(3).unwrap();
        let direct = nerve_of_nestohedron(&b).unwrap();
        assert_eq!(direct.complex.f_vector(), vec![6, 12, 8]);
        let via = nerve_via_truncations(&b, &b).unwrap();
        assert_eq!(via.sorted_by_labels().unwrap(), direct);
        // Octahedron: antipodal pairs are exactly the complements of facets.
        for &(a, b2) in
            &[(s(&[1]), s(&[2])), (s(&[1, 2]), s(&[3])), (s(&[1, 2, 3]), s(&[4]))]
        {
            let va = direct.index_of(a).unwrap();
            let vb = direct.index_of(b2).unwrap();
            assert!(!direct.complex.has_face(s(&[va, vb])));
        }
    }

    #[test]
    fn nested_set_condition_blocks_partitions() {
        // In B(chain on 3 vertices), {1} and {2} are disjoint but their union
        // {1,2} is a member, so they cannot span an edge; likewise {1} and
        // {2,3} partition the ground set. {1} and {3} are genuinely apart.
        let b = BuildingSet::graphical(&Graph::chain(3));
        let nerve = nerve_of_nestohedron(&b).unwrap();
        let v1 = nerve.index_of(s(&[1])).unwrap();
        let v2 = nerve.index_of(s(&[2])).unwrap();
        let v3 = nerve.index_of(s(&[3])).unwrap();
        let v23 = nerve.index_of(s(&[2, 3])).unwrap();
        assert!(!nerve.complex.has_face(s(&[v1, v2])));
        assert!(!nerve.complex.has_face(s(&[v1, v23])));
        assert!(nerve.complex.has_face(s(&[v1, v3])));
        // The boundary of the pentagon: 5 vertices, 5 edges.
        assert_eq!(nerve.complex.f_vector(), vec![5, 5]);
    }

    #[test]
    fn permutohedron_nerve_is_barycentric_subdivision() {
        let nerve = permutohedron_nerve(3).unwrap();
        assert_eq!(nerve.complex.m(), 14);
        let (sd, _) = SimplicialComplex::simplex_boundary(4).barycentric_subdivision().unwrap();
        assert!(are_isomorphic(&nerve.complex, &sd));
    }

    #[test]
    fn associahedron_vertex_counts() {
        for n in 1..=4 {
            let nerve = associahedron_nerve(n).unwrap();
            assert_eq!(nerve.complex.m(), n * (n + 3) / 2);
        }
    }

    #[test]
    fn truncation_route_matches_nested_sets_on_graphical_sets() {
        let base = BuildingSet::simplex(4).unwrap();
        for graph in [Graph::chain(4), Graph::complete(4)] {
            let b = BuildingSet::graphical(&graph);
            let direct = nerve_of_nestohedron(&b).unwrap();
            let via = nerve_via_truncations(&base, &b).unwrap().sorted_by_labels().unwrap();
            assert_eq!(via, direct);
        }
    }

    #[test]
    fn truncation_route_rejects_non_cube_base() {
        let b = BuildingSet::graphical(&Graph::chain(4));
        assert!(nerve_via_truncations(&b, &b).is_err());
    }

    #[test]
    fn pcube_2_is_a_square() {
        let nerve = pcube_nerve(2).unwrap();
        assert_eq!(nerve.complex.f_vector(), vec![4, 4]);
        assert!(!nerve.complex.has_face(s(&[1, 3])));
        assert!(!nerve.complex.has_face(s(&[2, 4])));
    }

    #[test]
    fn pcube_3_matches_published_ideal() {
        let nerve = pcube_nerve(3).unwrap();
        let k = &nerve.complex;
        assert_eq!(k.f_vector(), vec![8, 18, 12]);
        assert!(k.is_flag());
        let mut non_edges = Vec::new();
        for a in 1..=8 {
            for b in a + 1..=8 {
                if !k.has_face(s(&[a, b])) {
                    non_edges.push((a, b));
                }
            }
        }
        assert_eq!(
            non_edges,
            vec![
                (1, 4),
                (1, 5),
                (2, 5),
                (2, 6),
                (2, 7),
                (3, 6),
                (3, 8),
                (4, 7),
                (5, 8),
                (7, 8)
            ]
        );
    }

    #[test]
    fn pcube_3_agrees_with_nested_set_route() {
        let b = BuildingSet::pcube_closed(3).unwrap();
        let direct = nerve_of_nestohedron(&b).unwrap();
        let stellar = pcube_nerve(3).unwrap().sorted_by_labels().unwrap();
        assert_eq!(stellar, direct);
        let via = nerve_via_truncations(&BuildingSet::cube(3).unwrap(), &b)
            .unwrap()
            .sorted_by_labels()
            .unwrap();
        assert_eq!(via, direct);
    }

    #[test]
    fn pcube_4_vertex_count_and_non_faces() {
        let nerve = pcube_nerve(4).unwrap();
        assert_eq!(nerve.complex.m(), 13);
        assert_eq!(nerve.labels.len(), 13);
        // The closed building set is strictly bigger: the stellar route is the
        // only one producing this sphere.
        let closed = BuildingSet::pcube_closed(4).unwrap();
        assert_eq!(closed.proper_members().len(), 15);
    }

    #[test]
    fn sorted_by_labels_is_stable_for_sorted_input() {
        let b = BuildingSet::graphical(&Graph::chain(4));
        let nerve = nerve_of_nestohedron(&b).unwrap();
        assert_eq!(nerve.sorted_by_labels().unwrap(), nerve);
    }
}
