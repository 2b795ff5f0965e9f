//! JSON schemas for the exchanged objects, canonical fingerprints, and
//! deterministic writers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::building::BuildingSet;
use crate::canon::canonical_form;
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::graph::Graph;
use crate::nerve::LabeledComplex;
use crate::subset::Subset;

/// Complex file: `{"m": 5, "facets": [[1,2],[3]]}`. `facets: []` is the void
/// complex; `facets: [[]]` is the empty complex (the one whose only face is ∅).
#[derive(Serialize, Deserialize, Debug)]
pub struct ComplexFile {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn from_complex(k: &SimplicialComplex) -> ComplexFile {
        ComplexFile {
            m: k.m(),
            facets: k.facets().iter().map(|f| f.to_vec()).collect(),
        }
    }

    pub fn into_complex(self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facet_lists(self.m, &self.facets)
    }
}

/// Graph file: `{"n": 4, "edges": [[1,2],[2,3]]}`.
#[derive(Serialize, Deserialize, Debug)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> GraphFile {
        GraphFile { n: g.n(), edges: g.edges() }
    }

    pub fn into_graph(self) -> Result<Graph> {
        Graph::new(self.n, &self.edges)
    }
}

/// Building set file: `{"ground": 4, "sets": [[1,2],[1,2,3]]}`; singletons are
/// implied and need not be listed, but the listed family together with the
/// singletons must already be a building set.
#[derive(Serialize, Deserialize, Debug)]
pub struct BuildingSetFile {
    pub ground: usize,
    pub sets: Vec<Vec<usize>>,
}

impl BuildingSetFile {
    pub fn from_building_set(b: &BuildingSet) -> BuildingSetFile {
        BuildingSetFile {
            ground: b.ground(),
            sets: b
                .sets()
                .iter()
                .filter(|s| s.len() > 1)
                .map(|s| s.to_vec())
                .collect(),
        }
    }

    pub fn into_building_set(self) -> Result<BuildingSet> {
        let mut sets: Vec<Subset> =
            (1..=self.ground).map(Subset::singleton).collect();
        for s in &self.sets {
            sets.push(Subset::try_from_vertices(s, self.ground)?);
        }
        BuildingSet::new(self.ground, sets)
    }
}

/// Labeled nerve file: the complex plus `{"labels": {"1": [1,2], ...}}`.
#[derive(Serialize, Deserialize, Debug)]
pub struct LabeledComplexFile {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
    pub labels: BTreeMap<String, Vec<usize>>,
}

impl LabeledComplexFile {
    pub fn from_labeled(lc: &LabeledComplex) -> LabeledComplexFile {
        let labels = lc
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| ((i + 1).to_string(), l.to_vec()))
            .collect();
        LabeledComplexFile {
            m: lc.complex.m(),
            facets: lc.complex.facets().iter().map(|f| f.to_vec()).collect(),
            labels,
        }
    }
}

/// SHA-256 of the canonical form, hex encoded: equal for isomorphic complexes,
/// stable across runs.
pub fn fingerprint(k: &SimplicialComplex) -> String {
    let (canon, _) = canonical_form(k);
    let mut hasher = Sha256::new();
    hasher.update(canon.m().to_string().as_bytes());
    for f in canon.facets() {
        hasher.update(b";");
        hasher.update(format!("{:?}", f.to_vec()).as_bytes());
    }
    hex(&hasher.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Standard header embedded in every CLI output.
#[derive(Serialize, Deserialize, Debug)]
pub struct OutputMeta {
    pub tool_version: String,
    pub input_fingerprint: String,
}

impl OutputMeta {
    pub fn new(k: &SimplicialComplex) -> OutputMeta {
        OutputMeta {
            tool_version: crate::VERSION.to_string(),
            input_fingerprint: fingerprint(k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_file_round_trip_and_void_empty() {
        let k = SimplicialComplex::from_facet_lists(4, &[vec![1, 2], vec![3]]).unwrap();
        let file = ComplexFile::from_complex(&k);
        let text = serde_json::to_string(&file).unwrap();
        let back: ComplexFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_complex().unwrap(), k);

        let void: ComplexFile = serde_json::from_str(r#"{"m":0,"facets":[]}"#).unwrap();
        assert!(void.into_complex().unwrap().is_void());
        let empty: ComplexFile = serde_json::from_str(r#"{"m":0,"facets":[[]]}"#).unwrap();
        assert!(empty.into_complex().unwrap().is_empty_complex());
    }

    #[test]
    fn building_set_file_implies_singletons() {
        let file: BuildingSetFile =
            serde_json::from_str(r#"{"ground":3,"sets":[[1,2],[1,2,3]]}"#).unwrap();
        let b = file.into_building_set().unwrap();
        assert_eq!(b.sets().len(), 5);
        let missing_union: BuildingSetFile =
            serde_json::from_str(r#"{"ground":3,"sets":[[1,2],[2,3]]}"#).unwrap();
        assert!(missing_union.into_building_set().is_err());
    }

    #[test]
    fn fingerprint_is_isomorphism_invariant() {
        let k = SimplicialComplex::from_facet_lists(4, &[vec![1, 2], vec![2, 3], vec![3, 4]])
            .unwrap();
        let relabeled = k.relabel(&[3, 1, 4, 2]).unwrap();
        assert_eq!(fingerprint(&k), fingerprint(&relabeled));
        let other =
            SimplicialComplex::from_facet_lists(4, &[vec![1, 2], vec![2, 3], vec![2, 4]]).unwrap();
        assert_ne!(fingerprint(&k), fingerprint(&other));
    }
}
