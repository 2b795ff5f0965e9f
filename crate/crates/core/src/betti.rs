//! Bigraded Betti numbers of the moment-angle complex Z_K.
//!
//! Hochster's formula expresses β^{−i,2j}(k[K]) as the sum over j-element
//! vertex subsets J of the rank of H̃^{j−i−1}(K_J). The full table sums exact
//! reduced cohomology over every subset; strip mode restricts to the entries
//! β^{−i,2(i+1)}, which only need connected-component counts.

use crate::complex::SimplicialComplex;
use crate::error::{internal, invalid, Error, Result};
use crate::homology::{reduced_cohomology_under, CoefficientChoice};
use crate::io;
use crate::subset::Subset;
use itertools::Itertools;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Default vertex cap for the full table (2^m subsets, full cohomology each).
pub const FULL_TABLE_CAP: usize = 24;
/// Default vertex cap for strip mode (component counting only).
pub const STRIP_TABLE_CAP: usize = 32;

#[derive(Clone, Copy, Debug, Default)]
pub struct BettiOptions {
    /// Compute only the strip β^{−i,2(i+1)} by counting components of K_J.
    pub strip_only: bool,
    /// Overrides the default vertex cap.
    pub cap: Option<usize>,
    /// Also record the multigraded refinement β^{−i,2J} per subset J.
    pub multigraded: bool,
}

/// Bigraded (and optionally multigraded) Betti numbers of one complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    coeff: CoefficientChoice,
    fingerprint: String,
    m: usize,
    strip_only: bool,
    /// (i, 2j) → β^{−i,2j}; zero ranks are not stored.
    entries: BTreeMap<(i64, i64), u64>,
    /// Elementary divisors per (i, 2j); populated only over the integers.
    torsion: BTreeMap<(i64, i64), Vec<BigInt>>,
    /// (i, J) → β^{−i,2J} when requested.
    multigraded: Option<BTreeMap<(i64, Subset), u64>>,
}

impl BettiTable {
    pub fn rank(&self, i: i64, j2: i64) -> u64 {
        self.entries.get(&(i, j2)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), u64> {
        &self.entries
    }

    pub fn torsion(&self) -> &BTreeMap<(i64, i64), Vec<BigInt>> {
        &self.torsion
    }

    pub fn multigraded(&self) -> Option<&BTreeMap<(i64, Subset), u64>> {
        self.multigraded.as_ref()
    }

    pub fn coefficients(&self) -> CoefficientChoice {
        self.coeff
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn strip_only(&self) -> bool {
        self.strip_only
    }

    /// Total Betti numbers of Z_K: β^p = Σ_{2j−i=p} β^{−i,2j}.
    pub fn total_betti(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for (&(i, j2), &r) in &self.entries {
            *out.entry(j2 - i).or_insert(0) += r;
        }
        out
    }

    /// Total Betti numbers as a dense vector β^0..β^{p_max}.
    pub fn total_betti_vec(&self) -> Vec<u64> {
        let totals = self.total_betti();
        let pmax = totals.keys().max().copied().unwrap_or(0);
        (0..=pmax)
            .map(|p| totals.get(&p).copied().unwrap_or(0))
            .collect()
    }

    /// Rows i, columns 2j, then a `total` row of β^p(Z_K); torsion entries
    /// (integer coefficients) follow as `torsion <i> <2j> <divisors>` lines.
    pub fn to_tsv(&self) -> String {
        let imax = self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let jmax = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut out = String::from("i\\2j");
        for j2 in (0..=jmax).step_by(2) {
            let _ = write!(out, "\t{j2}");
        }
        out.push('\n');
        for i in 0..=imax {
            let _ = write!(out, "{i}");
            for j2 in (0..=jmax).step_by(2) {
                let _ = write!(out, "\t{}", self.rank(i, j2));
            }
            out.push('\n');
        }
        out.push_str("total");
        for b in self.total_betti_vec() {
            let _ = write!(out, "\t{b}");
        }
        out.push('\n');
        for ((i, j2), divs) in &self.torsion {
            let _ = writeln!(out, "torsion\t{i}\t{j2}\t{}", divs.iter().join(","));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|(&(i, j2), &rank)| {
                let torsion: Vec<String> = self
                    .torsion
                    .get(&(i, j2))
                    .map(|d| d.iter().map(|t| t.to_string()).collect())
                    .unwrap_or_default();
                if torsion.is_empty() {
                    json!({"i": i, "2j": j2, "rank": rank})
                } else {
                    json!({"i": i, "2j": j2, "rank": rank, "torsion": torsion})
                }
            })
            .collect();
        let mut value = json!({
            "coefficients": self.coeff.label(),
            "fingerprint": self.fingerprint,
            "m": self.m,
            "strip_only": self.strip_only,
            "entries": entries,
            "total": self.total_betti_vec(),
        });
        if let Some(mg) = &self.multigraded {
            let rows: Vec<_> = mg
                .iter()
                .map(|(&(i, j), &rank)| json!({"i": i, "subset": j.to_vec(), "rank": rank}))
                .collect();
            value["multigraded"] = json!(rows);
        }
        value
    }
}

/// The bigraded Betti table of Z_K by Hochster's formula.
pub fn hochster_betti_table(
    k: &SimplicialComplex,
    coeff: CoefficientChoice,
    options: BettiOptions,
) -> Result<BettiTable> {
    if k.is_void() {
        return Err(invalid("the void complex has no Stanley-Reisner ring"));
    }
    let m = k.m();
    let default_cap = if options.strip_only { STRIP_TABLE_CAP } else { FULL_TABLE_CAP };
    let cap = options.cap.unwrap_or(default_cap);
    if m > cap {
        let hint = if options.strip_only {
            String::new()
        } else {
            format!("; strip mode caps at {STRIP_TABLE_CAP}")
        };
        return Err(Error::ResourceLimit(format!(
            "{m} vertices exceed the Betti table cap {cap}{hint}"
        )));
    }

    let mut entries: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    let mut torsion: BTreeMap<(i64, i64), Vec<BigInt>> = BTreeMap::new();
    let mut multigraded: BTreeMap<(i64, Subset), u64> = BTreeMap::new();

    if options.strip_only {
        entries.insert((0, 0), 1);
        if options.multigraded {
            multigraded.insert((0, Subset::EMPTY), 1);
        }
        for size in 2..=m {
            let i = size as i64 - 1;
            for combo in (1..=m).combinations(size) {
                let j = Subset::from_iter(combo);
                let cc = k.induced_subcomplex(j).connected_component_count() as u64;
                if cc > 1 {
                    *entries.entry((i, 2 * size as i64)).or_insert(0) += cc - 1;
                    if options.multigraded {
                        multigraded.insert((i, j), cc - 1);
                    }
                }
            }
        }
    } else {
        for size in 0..=m {
            for combo in (1..=m).combinations(size) {
                let j = Subset::from_iter(combo);
                let summary = reduced_cohomology_under(k, j, coeff);
                for (&d, s) in &summary.by_degree {
                    if s.rank == 0 && s.torsion.is_empty() {
                        continue;
                    }
                    let key = (size as i64 - d - 1, 2 * size as i64);
                    if s.rank > 0 {
                        *entries.entry(key).or_insert(0) += s.rank as u64;
                        if options.multigraded {
                            *multigraded.entry((key.0, j)).or_insert(0) += s.rank as u64;
                        }
                    }
                    if !s.torsion.is_empty() {
                        torsion.entry(key).or_default().extend(s.torsion.iter().cloned());
                    }
                }
            }
        }
        if entries.get(&(0, 0)) != Some(&1) {
            return Err(internal("Hochster sweep lost the unit entry at (0, 0)"));
        }
    }
    for divs in torsion.values_mut() {
        divs.sort();
    }
    if options.multigraded {
        let mut sums: BTreeMap<(i64, i64), u64> = BTreeMap::new();
        for (&(i, j), &r) in &multigraded {
            *sums.entry((i, 2 * j.len() as i64)).or_insert(0) += r;
        }
        if sums != entries {
            return Err(internal("multigraded ranks do not sum to the bigraded table"));
        }
    }

    Ok(BettiTable {
        coeff,
        fingerprint: io::fingerprint(k),
        m,
        strip_only: options.strip_only,
        entries,
        torsion,
        multigraded: options.multigraded.then_some(multigraded),
    })
}

/// Minimal generator count for the loop homology of Z_K when K is flag:
/// Σ_{i≥1} β^{−i,2(i+1)}.
pub fn pontryagin_generator_lower_bound(
    k: &SimplicialComplex,
    coeff: CoefficientChoice,
) -> Result<u64> {
    if let Some(w) = k.flag_witness() {
        return Err(invalid(format!(
            "the bound needs a flag complex; minimal non-face {w} has {} vertices",
            w.len()
        )));
    }
    let options = BettiOptions { strip_only: true, ..Default::default() };
    let table = hochster_betti_table(k, coeff, options)?;
    Ok(table
        .entries
        .iter()
        .filter(|&(&(i, _), _)| i >= 1)
        .map(|(_, &r)| r)
        .sum())
}

/// Outcome of the Poincaré duality symmetry check on total Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    /// m + n for the polytopal sphere nerve (n = dim K + 1).
    pub manifold_dim: i64,
    pub symmetric: bool,
    /// Least p with β^p ≠ β^{m+n−p}, with the two ranks.
    pub first_violation: Option<(i64, u64, u64)>,
    /// β^0..β^{m+n}.
    pub total: Vec<u64>,
}

/// Checks β^p(Z_K) = β^{m+n−p}(Z_K) for a polytopal sphere nerve K.
pub fn poincare_duality_check(
    k: &SimplicialComplex,
    coeff: CoefficientChoice,
) -> Result<DualityReport> {
    if coeff == CoefficientChoice::Integer {
        return Err(invalid("the duality check needs field coefficients"));
    }
    let table = hochster_betti_table(k, coeff, BettiOptions::default())?;
    let n = k.dim().ok_or_else(|| invalid("void complex"))? + 1;
    let d = k.m() as i64 + n;
    let totals = table.total_betti();
    let mut first_violation = None;
    if let Some((&p, &r)) = totals.iter().find(|&(&p, _)| p < 0 || p > d) {
        first_violation = Some((p, r, 0));
    }
    let total: Vec<u64> = (0..=d)
        .map(|p| totals.get(&p).copied().unwrap_or(0))
        .collect();
    if first_violation.is_none() {
        for p in 0..=d {
            let (a, b) = (total[p as usize], total[(d - p) as usize]);
            if a != b {
                first_violation = Some((p, a, b));
                break;
            }
        }
    }
    Ok(DualityReport {
        manifold_dim: d,
        symmetric: first_violation.is_none(),
        first_violation,
        total,
    })
}
