//! Reduced simplicial cohomology with exact coefficients.
//!
//! Ranks are computed over ℚ or a prime field; integer coefficients add
//! torsion via Smith normal form of the boundary matrices. The empty face is
//! part of the chain complex, so the empty complex has H̃^{-1} = k and the
//! void complex has no cohomology at all.

use crate::complex::SimplicialComplex;
use crate::error::{invalid, Result};
use crate::linalg::{self, FieldSpec};
use crate::subset::Subset;
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoefficientChoice {
    Rational,
    PrimeField(u64),
    Integer,
}

impl CoefficientChoice {
    /// Accepts `rational`, `q`, `f2`, `fp:<p>`, `int`, `z`.
    pub fn parse(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "rational" | "q" => Ok(CoefficientChoice::Rational),
            "int" | "z" | "integer" => Ok(CoefficientChoice::Integer),
            "f2" => Ok(CoefficientChoice::PrimeField(2)),
            _ => {
                if let Some(p) = lower.strip_prefix("fp:") {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| invalid(format!("bad prime in coefficient choice '{s}'")))?;
                    FieldSpec::Fp(p).validate()?;
                    Ok(CoefficientChoice::PrimeField(p))
                } else {
                    Err(invalid(format!("unknown coefficient choice '{s}'")))
                }
            }
        }
    }

    /// The underlying field for rank computations (ℚ for integer coefficients).
    pub fn field(self) -> FieldSpec {
        match self {
            CoefficientChoice::Rational | CoefficientChoice::Integer => FieldSpec::Rational,
            CoefficientChoice::PrimeField(p) => FieldSpec::Fp(p),
        }
    }

    pub fn label(self) -> String {
        match self {
            CoefficientChoice::Rational => "rational".to_string(),
            CoefficientChoice::Integer => "int".to_string(),
            CoefficientChoice::PrimeField(p) => format!("fp:{p}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DegreeSummary {
    pub rank: usize,
    /// Torsion coefficients > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

/// Reduced cohomology per degree, from -1 through dim.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CohomologySummary {
    pub by_degree: BTreeMap<i64, DegreeSummary>,
}

impl CohomologySummary {
    pub fn rank(&self, d: i64) -> usize {
        self.by_degree.get(&d).map_or(0, |s| s.rank)
    }

    pub fn torsion(&self, d: i64) -> &[BigInt] {
        self.by_degree.get(&d).map_or(&[], |s| &s.torsion)
    }

    pub fn total_rank(&self) -> usize {
        self.by_degree.values().map(|s| s.rank).sum()
    }
}

/// Signed boundary matrix from faces of size k+1 (columns) to faces of size k
/// (rows); both lists must be sorted.
fn boundary_matrix(lower: &[Subset], upper: &[Subset]) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0i64; upper.len()]; lower.len()];
    for (c, &g) in upper.iter().enumerate() {
        for (t, v) in g.iter().enumerate() {
            let f = g.remove(v);
            let r = lower.binary_search(&f).expect("boundary face present");
            rows[r][c] = if t % 2 == 0 { 1 } else { -1 };
        }
    }
    rows
}

/// Cohomology of an explicit filtration by face size: `by_size[k]` lists the
/// faces with k vertices, each list sorted ascending. An empty slice means the
/// void complex.
pub(crate) fn cohomology_of_faces(
    by_size: &[Vec<Subset>],
    coeff: CoefficientChoice,
) -> CohomologySummary {
    let mut out = CohomologySummary::default();
    if by_size.is_empty() {
        return out;
    }
    let top = by_size.len() - 1; // top face size
    // boundary ranks: ranks[k] = rank of ∂ from size-k faces to size-(k-1) faces
    let mut ranks = vec![0usize; top + 2];
    let mut torsion: Vec<Vec<BigInt>> = vec![Vec::new(); top + 2];
    for k in 1..=top {
        let d = boundary_matrix(&by_size[k - 1], &by_size[k]);
        if d.is_empty() || d[0].is_empty() {
            continue;
        }
        match coeff {
            CoefficientChoice::Rational => ranks[k] = linalg::rank_over_q(&d),
            CoefficientChoice::PrimeField(p) => ranks[k] = linalg::rank_mod_p(&d, p),
            CoefficientChoice::Integer => {
                let factors = linalg::smith_invariant_factors(&d);
                ranks[k] = factors.len();
                torsion[k] = factors.into_iter().filter(|f| !f.is_one()).collect();
            }
        }
    }
    for k in 0..=top {
        // degree d = k - 1 cohomology has chain dimension |by_size[k]|
        let dim = by_size[k].len();
        let summary = DegreeSummary {
            rank: dim - ranks[k] - ranks[k + 1],
            torsion: torsion[k].clone(),
        };
        out.by_degree.insert(k as i64 - 1, summary);
    }
    out
}

/// Face lists of the restriction of `k` to the vertex set `j`, by size,
/// without relabeling.
pub(crate) fn faces_by_size_under(k: &SimplicialComplex, j: Subset) -> Vec<Vec<Subset>> {
    let traces = k.traces_on(j);
    if traces.is_empty() {
        return Vec::new();
    }
    let top = traces.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut by_size: Vec<std::collections::BTreeSet<Subset>> = vec![Default::default(); top + 1];
    for &f in &traces {
        for s in f.subsets() {
            by_size[s.len()].insert(s);
        }
    }
    by_size.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Reduced cohomology of a complex.
pub fn reduced_cohomology(k: &SimplicialComplex, coeff: CoefficientChoice) -> CohomologySummary {
    cohomology_of_faces(&k.faces_by_size(), coeff)
}

/// Reduced cohomology of the restriction to `j`, without relabeling.
pub fn reduced_cohomology_under(
    k: &SimplicialComplex,
    j: Subset,
    coeff: CoefficientChoice,
) -> CohomologySummary {
    cohomology_of_faces(&faces_by_size_under(k, j), coeff)
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

    /// Minimal 6-vertex triangulation of the real projective plane.
    fn rp2_facets() -> Vec<Vec<usize>> {
        [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
            [2, 3, 5], [4, 5, 2], [5, 6, 3], [6, 2, 4], [3, 4, 6],
        ]
        .iter()
        .map(|f| f.to_vec())
        .collect()
    }

    #[test]
    fn spheres_have_one_generator_at_the_top() {
        for m in 2..=5 {
            let s = SimplicialComplex::simplex_boundary(m);
            let h = reduced_cohomology(&s, CoefficientChoice::Rational);
            for d in -1..=(m as i64 - 2) {
                assert_eq!(h.rank(d), usize::from(d == m as i64 - 2), "m={m} d={d}");
            }
        }
    }

    #[test]
    fn empty_and_void_are_distinguished() {
        let empty = reduced_cohomology(&SimplicialComplex::empty(0), CoefficientChoice::Rational);
        assert_eq!(empty.rank(-1), 1);
        assert_eq!(empty.total_rank(), 1);
        let void = reduced_cohomology(&SimplicialComplex::void(0), CoefficientChoice::Rational);
        assert_eq!(void.total_rank(), 0);
    }

    #[test]
    fn disjoint_points_have_h0() {
        let pts = k(3, &[&[1], &[2], &[3]]);
        let h = reduced_cohomology(&pts, CoefficientChoice::Rational);
        assert_eq!(h.rank(0), 2);
        assert_eq!(h.rank(-1), 0);
    }

    #[test]
    fn circle_has_h1() {
        let square = k(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        let h = reduced_cohomology(&square, CoefficientChoice::Rational);
        assert_eq!(h.rank(0), 0);
        assert_eq!(h.rank(1), 1);
    }

    #[test]
    fn projective_plane_over_three_coefficient_rings() {
        let rp2 = SimplicialComplex::from_facet_lists(6, &rp2_facets()).unwrap();
        let q = reduced_cohomology(&rp2, CoefficientChoice::Rational);
        assert_eq!(q.rank(1), 0);
        assert_eq!(q.rank(2), 0);
        let f2 = reduced_cohomology(&rp2, CoefficientChoice::PrimeField(2));
        assert_eq!(f2.rank(1), 1);
        assert_eq!(f2.rank(2), 1);
        let z = reduced_cohomology(&rp2, CoefficientChoice::Integer);
        assert_eq!(z.rank(2), 0);
        assert_eq!(z.torsion(2), &[BigInt::from(2)]);
        assert!(z.torsion(1).is_empty());
    }

    #[test]
    fn torsion_survives_barycentric_subdivision() {
        let rp2 = SimplicialComplex::from_facet_lists(6, &rp2_facets()).unwrap();
        let (sd, labels) = rp2.barycentric_subdivision().unwrap();
        assert_eq!(labels.len(), 31);
        assert_eq!(sd.f_vector(), vec![31, 90, 60]);
        let z = reduced_cohomology(&sd, CoefficientChoice::Integer);
        assert_eq!(z.torsion(2), &[BigInt::from(2)]);
    }

    #[test]
    fn restriction_cohomology_agrees_with_relabeled_subcomplex() {
        let c = k(5, &[&[1, 2, 3], &[3, 4], &[4, 5], &[2, 5]]);
        for j_bits in 0..(1u64 << 5) {
            let j = Subset::from_bits(j_bits);
            let fast = reduced_cohomology_under(&c, j, CoefficientChoice::Rational);
            let slow = reduced_cohomology(&c.induced_subcomplex(j), CoefficientChoice::Rational);
            assert_eq!(fast, slow, "J = {j}");
        }
    }
}
