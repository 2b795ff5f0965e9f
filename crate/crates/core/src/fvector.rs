//! f-, h-, and γ-vectors of pure simplicial complexes.
//!
//! `f[k]` counts the faces with k+1 vertices. The h-vector comes from the
//! usual change of basis; the γ-vector exists only when h is palindromic and
//! is reported as `None` (with a note) otherwise.

use crate::complex::SimplicialComplex;
use crate::error::{invalid, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceVectors {
    pub f: Vec<u64>,
    pub h: Vec<i64>,
    pub gamma: Option<Vec<i64>>,
    pub note: Option<String>,
}

pub fn face_vectors(k: &SimplicialComplex) -> Result<FaceVectors> {
    if k.is_void() {
        return Err(invalid("face vectors of the void complex are undefined"));
    }
    if !k.is_pure() {
        return Err(invalid("face vectors require a pure complex"));
    }
    let f = k.f_vector();
    let n = f.len(); // dim + 1
    // h_j = Σ_i (-1)^(j-i) C(n-i, j-i) f_{i-1}, with f_{-1} = 1
    let mut h = vec![0i64; n + 1];
    for (j, hj) in h.iter_mut().enumerate() {
        let mut acc: i64 = 0;
        for i in 0..=j {
            let fi = if i == 0 { 1 } else { f[i - 1] as i64 };
            let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
            acc += sign * binom(n - i, j - i) * fi;
        }
        *hj = acc;
    }
    let palindromic = (0..=n).all(|j| h[j] == h[n - j]);
    let (gamma, note) = if palindromic {
        (Some(gamma_from_h(&h)), None)
    } else {
        (None, Some("h-vector is not palindromic; no γ-vector".to_string()))
    };
    Ok(FaceVectors { f, h, gamma, note })
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// Solve Σ h_j t^j = Σ_i γ_i t^i (1+t)^(n-2i) for a palindromic h of length n+1.
fn gamma_from_h(h: &[i64]) -> Vec<i64> {
    let n = h.len() - 1;
    let mut rem = h.to_vec();
    let mut gamma = Vec::with_capacity(n / 2 + 1);
    for i in 0..=n / 2 {
        let g = rem[i];
        gamma.push(g);
        for (j, r) in rem.iter_mut().enumerate() {
            if j >= i && j <= n - i {
                *r -= g * binom(n - 2 * i, j - i);
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "palindromic h must resolve exactly");
    gamma
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
    fn simplex_boundary_vectors() {
        let v = face_vectors(&SimplicialComplex::simplex_boundary(4)).unwrap();
        assert_eq!(v.f, vec![4, 6, 4]);
        assert_eq!(v.h, vec![1, 1, 1, 1]);
        assert_eq!(v.gamma, Some(vec![1, -2]));
    }

    #[test]
    fn octahedron_is_gal_nonnegative() {
        let mut facets = Vec::new();
        for a in [1, 4] {
            for b in [2, 5] {
                for c in [3, 6] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        let oct = SimplicialComplex::from_facet_lists(6, &facets).unwrap();
        let v = face_vectors(&oct).unwrap();
        assert_eq!(v.f, vec![6, 12, 8]);
        assert_eq!(v.h, vec![1, 3, 3, 1]);
        assert_eq!(v.gamma, Some(vec![1, 0]));
    }

    #[test]
    fn pentagon_vectors() {
        let pent = k(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[1, 5]]);
        let v = face_vectors(&pent).unwrap();
        assert_eq!(v.h, vec![1, 3, 1]);
        assert_eq!(v.gamma, Some(vec![1, 1]));
    }

    #[test]
    fn cone_has_no_gamma() {
        let point = k(1, &[&[1]]);
        let v = face_vectors(&point).unwrap();
        assert_eq!(v.h, vec![1, 0]);
        assert!(v.gamma.is_none());
        assert!(v.note.is_some());
    }

    #[test]
    fn impure_complex_is_rejected() {
        let c = k(3, &[&[1, 2], &[3]]);
        assert!(face_vectors(&c).is_err());
    }
}
