//! Isomorph-free censuses of small combinatorial objects: triangulated
//! 2-spheres on up to 8 vertices and simple graphs on up to 6 vertices.

use crate::canon::{canonical_form, canonical_key};
use crate::complex::SimplicialComplex;
use crate::error::{internal, invalid, Result};
use crate::graph::Graph;
use crate::linalg::FieldSpec;
use crate::obstruction::{detect_obstruction, direct_triple_search, ObstructionCatalog};
use crate::subset::Subset;
use itertools::Itertools;
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet};

pub const MAX_SPHERE_VERTICES: usize = 8;
pub const MAX_GRAPH_VERTICES: usize = 6;

/// All isomorphism classes of simple graphs on exactly `v` labeled-then-
/// canonicalized vertices.
#[derive(Clone, Debug)]
pub struct GraphCensus {
    pub vertex_count: usize,
    /// Canonical representatives, ascending in the canonical edge encoding.
    pub graphs: Vec<Graph>,
}

impl GraphCensus {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn connected_count(&self) -> usize {
        self.graphs.iter().filter(|g| g.is_connected()).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let objects: Vec<_> = self
            .graphs
            .iter()
            .map(|g| {
                json!({
                    "edges": g.edges().iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
                    "connected": g.is_connected(),
                })
            })
            .collect();
        json!({
            "kind": "graphs",
            "vertex_count": self.vertex_count,
            "count": self.graphs.len(),
            "objects": objects,
        })
    }
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            pairs.push((a, b));
        }
    }
    pairs
}

fn mask_of(g: &Graph, pairs: &[(usize, usize)]) -> u64 {
    let mut mask = 0u64;
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if g.has_edge(a, b) {
            mask |= 1 << i;
        }
    }
    mask
}

fn graph_of(n: usize, mask: u64, pairs: &[(usize, usize)]) -> Graph {
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::new(n, &edges).expect("pairs stay in range")
}

/// Lexicographically least edge encoding over all vertex relabelings; equal
/// exactly for isomorphic graphs.
pub fn graph_canonical_bits(g: &Graph) -> u64 {
    let n = g.n();
    let pairs = pair_list(n);
    let index: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mask = mask_of(g, &pairs);
    let mut best = u64::MAX;
    for perm in (1..=n).permutations(n) {
        let mut image = 0u64;
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (x, y) = (perm[a - 1], perm[b - 1]);
                let key = if x < y { (x, y) } else { (y, x) };
                image |= 1 << index[&key];
            }
        }
        best = best.min(image);
    }
    best
}

/// Enumerates graphs by keeping exactly the masks that equal their own
/// canonical encoding.
pub fn enumerate_graphs(v: usize) -> Result<GraphCensus> {
    if !(1..=MAX_GRAPH_VERTICES).contains(&v) {
        return Err(invalid(format!(
            "graph census supports 1..={MAX_GRAPH_VERTICES} vertices, got {v}"
        )));
    }
    let pairs = pair_list(v);
    let mut graphs = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let g = graph_of(v, mask, &pairs);
        if graph_canonical_bits(&g) == mask {
            graphs.push(g);
        }
    }
    Ok(GraphCensus { vertex_count: v, graphs })
}

/// Per-sphere facts attached by the Massey scan.
#[derive(Clone, Debug)]
pub struct SphereAnnotation {
    pub flag: bool,
    /// Catalog detector verdict, with the witness 6-set when positive.
    pub detected: bool,
    pub witness: Option<Subset>,
    /// Direct search over degree-3 class triples.
    pub direct: bool,
}

/// All isomorphism classes of triangulated 2-spheres on exactly `vertex_count`
/// vertices, optionally annotated by `scan_spheres_for_massey`.
#[derive(Clone, Debug)]
pub struct SphereCensus {
    pub vertex_count: usize,
    /// Canonical representatives, ascending in the canonical key.
    pub spheres: Vec<SimplicialComplex>,
    /// Parallel to `spheres` once the scan has run; empty before.
    pub annotations: Vec<SphereAnnotation>,
}

impl SphereCensus {
    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let objects: Vec<_> = self
            .spheres
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let facets: Vec<Vec<usize>> =
                    k.facets().iter().map(|f| f.to_vec()).collect();
                let mut obj = json!({ "facets": facets });
                if let Some(a) = self.annotations.get(i) {
                    obj["flag"] = json!(a.flag);
                    obj["massey_detected"] = json!(a.detected);
                    obj["massey_direct"] = json!(a.direct);
                    obj["witness"] = json!(a.witness.map(|w| w.to_vec()));
                }
                obj
            })
            .collect();
        json!({
            "kind": "2-spheres",
            "vertex_count": self.vertex_count,
            "count": self.spheres.len(),
            "objects": objects,
        })
    }
}

struct SphereSearch {
    v: usize,
    target: usize,
    triangles: Vec<Subset>,
    triangle_set: BTreeSet<Subset>,
    edge_count: Vec<Vec<u8>>,
    used_max: usize,
    reverse: bool,
    found: BTreeMap<(usize, Vec<u64>), SimplicialComplex>,
}

impl SphereSearch {
    fn open_edge(&self) -> Option<(usize, usize)> {
        for a in 1..=self.v {
            for b in a + 1..=self.v {
                if self.edge_count[a][b] == 1 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn place(&mut self, t: [usize; 3]) {
        self.triangles.push(Subset::from_iter(t));
        self.triangle_set.insert(Subset::from_iter(t));
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            self.edge_count[a.min(b)][a.max(b)] += 1;
        }
    }

    fn unplace(&mut self, t: [usize; 3], prev_used_max: usize) {
        let s = Subset::from_iter(t);
        self.triangles.pop();
        self.triangle_set.remove(&s);
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            self.edge_count[a.min(b)][a.max(b)] -= 1;
        }
        self.used_max = prev_used_max;
    }

    fn descend(&mut self) {
        let Some((a, b)) = self.open_edge() else {
            self.finalize();
            return;
        };
        if self.triangles.len() >= self.target {
            return;
        }
        // unused vertices are interchangeable: only the least one may enter
        let limit = (self.used_max + 1).min(self.v);
        let candidates: Vec<usize> = if self.reverse {
            (1..=limit).rev().collect()
        } else {
            (1..=limit).collect()
        };
        for c in candidates {
            if c == a || c == b {
                continue;
            }
            if self.triangle_set.contains(&Subset::from_iter([a, b, c])) {
                continue;
            }
            if self.edge_count[a.min(c)][a.max(c)] >= 2
                || self.edge_count[b.min(c)][b.max(c)] >= 2
            {
                continue;
            }
            let prev = self.used_max;
            self.used_max = self.used_max.max(c);
            self.place([a, b, c]);
            self.descend();
            self.unplace([a, b, c], prev);
        }
    }

    fn finalize(&mut self) {
        if self.used_max != self.v || self.triangles.len() != self.target {
            return;
        }
        let mut edge_total = 0usize;
        for a in 1..=self.v {
            for b in a + 1..=self.v {
                match self.edge_count[a][b] {
                    0 => {}
                    2 => edge_total += 1,
                    _ => return,
                }
            }
        }
        if self.v + self.triangles.len() != edge_total + 2 {
            return;
        }
        for x in 1..=self.v {
            if !self.link_is_single_cycle(x) {
                return;
            }
        }
        let k = SimplicialComplex::from_faces(self.v, self.triangles.clone())
            .expect("triangles stay in range");
        if k.connected_component_count() != 1 {
            return;
        }
        let key = canonical_key(&k);
        self.found.entry(key).or_insert_with(|| canonical_form(&k).0);
    }

    fn link_is_single_cycle(&self, x: usize) -> bool {
        let neighbors: Vec<usize> = (1..=self.v)
            .filter(|&y| y != x && self.edge_count[x.min(y)][x.max(y)] == 2)
            .collect();
        if neighbors.len() < 3 {
            return false;
        }
        let link_adj = |y: usize, z: usize| {
            self.triangle_set.contains(&Subset::from_iter([x, y, z]))
        };
        let mut seen = vec![neighbors[0]];
        let mut frontier = vec![neighbors[0]];
        while let Some(cur) = frontier.pop() {
            for &next in &neighbors {
                if next != cur && link_adj(cur, next) && !seen.contains(&next) {
                    seen.push(next);
                    frontier.push(next);
                }
            }
        }
        let link_edges = neighbors
            .iter()
            .flat_map(|&y| neighbors.iter().filter(move |&&z| z > y && link_adj(y, z)))
            .count();
        seen.len() == neighbors.len() && link_edges == neighbors.len()
    }
}

fn enumerate_2spheres_ordered(v: usize, reverse: bool) -> Result<SphereCensus> {
    if !(4..=MAX_SPHERE_VERTICES).contains(&v) {
        return Err(invalid(format!(
            "sphere census supports 4..={MAX_SPHERE_VERTICES} vertices, got {v}"
        )));
    }
    let mut search = SphereSearch {
        v,
        target: 2 * v - 4,
        triangles: Vec::new(),
        triangle_set: BTreeSet::new(),
        edge_count: vec![vec![0u8; v + 1]; v + 1],
        used_max: 3,
        reverse,
        found: BTreeMap::new(),
    };
    search.place([1, 2, 3]);
    search.descend();
    Ok(SphereCensus {
        vertex_count: v,
        spheres: search.found.into_values().collect(),
        annotations: Vec::new(),
    })
}

/// All triangulated 2-spheres on exactly `v` vertices: backtracking over the
/// least edge still missing its second triangle, starting from the triangle
/// {1,2,3} and letting only the least unused vertex enter, with canonical-form
/// rejection of isomorphic leaves.
pub fn enumerate_2spheres(v: usize) -> Result<SphereCensus> {
    enumerate_2spheres_ordered(v, false)
}

/// Runs the catalog detector and the direct triple search on every sphere;
/// any disagreement between the two is a hard failure.
pub fn scan_spheres_for_massey(
    census: SphereCensus,
    catalog: &ObstructionCatalog,
) -> Result<SphereCensus> {
    let mut annotations = Vec::with_capacity(census.spheres.len());
    for k in &census.spheres {
        let witness = detect_obstruction(k, catalog);
        let direct = direct_triple_search(k, FieldSpec::Rational)?;
        if witness.is_some() != direct {
            return Err(internal(format!(
                "obstruction detector ({}) and direct triple search ({}) disagree on {}",
                witness.is_some(),
                direct,
                crate::io::fingerprint(k)
            )));
        }
        annotations.push(SphereAnnotation {
            flag: k.flag_witness().is_none(),
            detected: witness.is_some(),
            witness,
            direct,
        });
    }
    Ok(SphereCensus { annotations, ..census })
}
