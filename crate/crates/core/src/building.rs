//! Building sets on {1, …, n+1}: closures, graphical building sets, minimal
//! decompositions, index-set extension, and the 2-truncated-cube certificate.

use crate::error::{internal, invalid, Error, Result};
use crate::graph::Graph;
use crate::subset::{card_lex, Subset, MAX_GROUND};
use std::collections::{BTreeSet, HashSet};

/// A family of nonempty subsets of the ground set that contains all
/// singletons and is closed under unions of intersecting members.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BuildingSet {
    ground: usize,
    /// Sorted by (cardinality, lex); includes singletons and, when connected,
    /// the full ground set.
    sets: Vec<Subset>,
}

impl BuildingSet {
    /// Validate an explicit family as a building set.
    pub fn new(ground: usize, sets: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if ground == 0 || ground > MAX_GROUND {
            return Err(invalid(format!("ground size {ground} outside 1..={MAX_GROUND}")));
        }
        let full = Subset::full(ground);
        let mut family: BTreeSet<Subset> = BTreeSet::new();
        for s in sets {
            if s.is_empty() {
                return Err(invalid("building set members must be nonempty"));
            }
            if !s.is_subset_of(full) {
                return Err(invalid(format!("member {s} is not contained in the ground set")));
            }
            family.insert(s);
        }
        for v in 1..=ground {
            if !family.contains(&Subset::singleton(v)) {
                return Err(invalid(format!("missing singleton {{{v}}}")));
            }
        }
        let list: Vec<Subset> = family.iter().copied().collect();
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                if a.intersects(b) && !family.contains(&a.union(b)) {
                    return Err(invalid(format!(
                        "not union-closed: {a} and {b} meet but {} is missing",
                        a.union(b)
                    )));
                }
            }
        }
        let mut sets: Vec<Subset> = family.into_iter().collect();
        sets.sort_by_key(card_lex);
        Ok(BuildingSet { ground, sets })
    }

    /// Smallest building set containing the seeds and all singletons.
    pub fn closure(ground: usize, seeds: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if ground == 0 || ground > MAX_GROUND {
            return Err(invalid(format!("ground size {ground} outside 1..={MAX_GROUND}")));
        }
        let full = Subset::full(ground);
        let mut family: BTreeSet<Subset> = (1..=ground).map(Subset::singleton).collect();
        for s in seeds {
            if s.is_empty() {
                return Err(invalid("building set seeds must be nonempty"));
            }
            if !s.is_subset_of(full) {
                return Err(invalid(format!("seed {s} is not contained in the ground set")));
            }
            family.insert(s);
        }
        loop {
            let list: Vec<Subset> = family.iter().copied().collect();
            let mut added = false;
            for (i, &a) in list.iter().enumerate() {
                for &b in &list[i + 1..] {
                    if a.intersects(b) && family.insert(a.union(b)) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut sets: Vec<Subset> = family.into_iter().collect();
        sets.sort_by_key(card_lex);
        Ok(BuildingSet { ground, sets })
    }

    /// All vertex sets inducing connected subgraphs of `g`.
    pub fn graphical(g: &Graph) -> BuildingSet {
        BuildingSet { ground: g.n(), sets: g.connected_subsets() }
    }

    /// Singletons plus the full ground set.
    pub fn simplex(ground: usize) -> Result<BuildingSet> {
        Self::closure(ground, [Subset::full(ground)])
    }

    /// Cube building set on [n+1]: singletons and the prefixes
    /// {1,2}, {1,2,3}, …, [n+1].
    pub fn cube(n: usize) -> Result<BuildingSet> {
        Self::closure(n + 1, (2..=n + 1).map(Subset::full))
    }

    /// Cut sets of the 2-truncated cube 𝒫ⁿ, in the row order
    /// g = 2..n-1, k = 1..n+1-g: {1,…,k} ∪ {k+g}.
    pub fn pcube_cuts(n: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        for g in 2..n {
            for k in 1..=n + 1 - g {
                out.push(Subset::full(k).insert(k + g));
            }
        }
        out
    }

    /// Union closure of the cube building set and the 𝒫ⁿ cut list. For
    /// n ≤ 3 this is exactly cube ∪ cuts; for n ≥ 4 the closure is strictly
    /// larger.
    pub fn pcube_closed(n: usize) -> Result<BuildingSet> {
        let mut seeds: Vec<Subset> = (2..=n + 1).map(Subset::full).collect();
        seeds.extend(Self::pcube_cuts(n));
        Self::closure(n + 1, seeds)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.sets.binary_search_by_key(&card_lex(&s), card_lex).is_ok()
    }

    /// Whether the full ground set is a member.
    pub fn is_connected(&self) -> bool {
        self.contains(Subset::full(self.ground))
    }

    /// Members other than the full ground set, sorted by (cardinality, lex).
    pub fn proper_members(&self) -> Vec<Subset> {
        let full = Subset::full(self.ground);
        self.sets.iter().copied().filter(|&s| s != full).collect()
    }

    /// The unique minimal disjoint decomposition of `s` into members:
    /// connected components of the members inside `s` under intersection.
    pub fn decompose(&self, s: Subset) -> Result<Vec<Subset>> {
        if s.is_empty() || !s.is_subset_of(Subset::full(self.ground)) {
            return Err(invalid(format!("{s} is not a nonempty subset of the ground set")));
        }
        Ok(decompose_within(&self.sets, s))
    }

    /// J̄ = J ∪ {S ∈ B2∖B1 : some S₁ ∈ J is strictly contained in S}.
    pub fn extend_index_set(&self, b2: &BuildingSet, j: &[Subset]) -> Result<Vec<Subset>> {
        if self.ground != b2.ground {
            return Err(invalid("building sets live on different ground sets"));
        }
        if !self.sets.iter().all(|&s| b2.contains(s)) {
            return Err(invalid("first building set is not contained in the second"));
        }
        let full = Subset::full(self.ground);
        for &s in j {
            if s == full {
                return Err(invalid("index set may not contain the full ground set"));
            }
            if !self.contains(s) {
                return Err(invalid(format!("{s} is not a member of the first building set")));
            }
        }
        let mut out: BTreeSet<Subset> = j.iter().copied().collect();
        for &s in &b2.sets {
            if self.contains(s) {
                continue;
            }
            if j.iter().any(|&s1| s1.is_strict_subset_of(s)) {
                out.insert(s);
            }
        }
        let mut out: Vec<Subset> = out.into_iter().collect();
        out.sort_by_key(card_lex);
        Ok(out)
    }
}

/// Largest ground size `enumerate_building_sets` accepts.
pub const MAX_ENUMERATED_GROUND: usize = 5;

/// Every building set on `ground`, in a deterministic order.
///
/// Candidates (subsets of size ≥ 2) are decided in (cardinality, lex) order.
/// A nontrivial union of two incomparable intersecting members is strictly
/// larger than either, so by the time a candidate is reached every pair that
/// could force it is already decided: the candidate is either forced in or
/// genuinely free, and each leaf of the search is a valid family.
pub fn enumerate_building_sets(ground: usize) -> Result<Vec<BuildingSet>> {
    if ground == 0 || ground > MAX_ENUMERATED_GROUND {
        return Err(invalid(format!(
            "building set enumeration supports ground 1..={MAX_ENUMERATED_GROUND}"
        )));
    }
    let full = Subset::full(ground);
    let mut candidates: Vec<Subset> =
        full.subsets().filter(|s| s.len() >= 2).collect();
    candidates.sort_by_key(card_lex);

    let singletons: Vec<Subset> = (1..=ground).map(Subset::singleton).collect();
    let mut out: Vec<BuildingSet> = Vec::new();
    let mut chosen: Vec<Subset> = Vec::new();
    descend(ground, &singletons, &candidates, 0, &mut chosen, &mut out);
    Ok(out)
}

fn descend(
    ground: usize,
    singletons: &[Subset],
    candidates: &[Subset],
    next: usize,
    chosen: &mut Vec<Subset>,
    out: &mut Vec<BuildingSet>,
) {
    let Some(&c) = candidates.get(next) else {
        let mut sets: Vec<Subset> = singletons.to_vec();
        sets.extend(chosen.iter().copied());
        sets.sort_by_key(card_lex);
        out.push(BuildingSet { ground, sets });
        return;
    };
    let forced = chosen.iter().enumerate().any(|(i, &a)| {
        chosen[i + 1..]
            .iter()
            .any(|&b| a.intersects(b) && a.union(b) == c)
    });
    if !forced {
        descend(ground, singletons, candidates, next + 1, chosen, out);
    }
    chosen.push(c);
    descend(ground, singletons, candidates, next + 1, chosen, out);
    chosen.pop();
}

/// Components of the members of `family` contained in `s`, merged under
/// intersection and returned in increasing order. With all singletons present
/// this is a partition of `s`.
pub(crate) fn decompose_within(family: &[Subset], s: Subset) -> Vec<Subset> {
    let mut parts: Vec<Subset> = Vec::new();
    for &member in family {
        if !member.is_subset_of(s) {
            continue;
        }
        let mut merged = member;
        parts.retain(|&p| {
            if p.intersects(merged) {
                merged = merged.union(p);
                false
            } else {
                true
            }
        });
        parts.push(merged);
    }
    parts.sort();
    parts
}

/// One 2-truncation step: `added = part1 ⊔ part2`, both parts already present.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TruncationStep {
    pub added: Subset,
    pub part1: Subset,
    pub part2: Subset,
}

/// Result of the 2-truncated-cube search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CubeCertificate {
    /// A cube building set inside `B` and a chain of valid 2-truncations
    /// reaching `B`.
    Chain { base: Vec<Subset>, steps: Vec<TruncationStep> },
    /// The nerve is not flag; a minimal non-face with at least 3 vertices.
    NotFlag { witness: Subset },
}

/// Search for a presentation of `B` as a 2-truncated cube: a sub-building-set
/// B₀ ⊆ B whose nestohedron is a combinatorial cube, and an order of the
/// remaining members so that each is the disjoint union of two earlier members
/// and each intermediate family stays a building set. By the flagness
/// criterion this succeeds exactly when the nerve of `B` is flag; a non-flag
/// nerve is reported via a minimal non-face of size ≥ 3 instead.
///
/// A cube base is any subfamily of the right size (all singletons, g − 2
/// larger proper members, and the full set) that is itself a building set and
/// whose nested-set complex is the boundary of a cross-polytope. Chains
/// T₂ ⊂ … ⊂ T_{g−1} are one such shape, but not the only one: two disjoint
/// proper members plus the full set also bound a cube, with no chain in sight.
pub fn two_truncated_cube_certificate(
    b: &BuildingSet,
    state_cap: usize,
) -> Result<CubeCertificate> {
    if !b.is_connected() {
        return Err(invalid("certificate requires a connected building set"));
    }
    let nerve = crate::nerve::nerve_of_nestohedron(b)?;
    if let Some(witness) = nerve.complex.flag_witness() {
        return Ok(CubeCertificate::NotFlag { witness });
    }
    let g = b.ground;
    let candidates: Vec<Subset> =
        b.sets.iter().copied().filter(|s| s.len() >= 2 && s.len() < g).collect();
    let need = g.saturating_sub(2);
    let mut pick: Vec<Subset> = Vec::new();
    let mut states = 0usize;
    match search_bases(b, &candidates, 0, need, &mut pick, &mut states, state_cap)? {
        Some(cert) => Ok(cert),
        None => Err(internal(
            "no 2-truncation presentation found although the nerve is flag".to_string(),
        )),
    }
}

/// Walk (g − 2)-subsets of the candidate members in card-lex order, handing
/// each completed pick to `try_base`; the first pick that is a cube base and
/// extends to all of `b` wins.
fn search_bases(
    b: &BuildingSet,
    candidates: &[Subset],
    start: usize,
    need: usize,
    pick: &mut Vec<Subset>,
    states: &mut usize,
    state_cap: usize,
) -> Result<Option<CubeCertificate>> {
    if need == 0 {
        return try_base(b, pick, states, state_cap);
    }
    for i in start..candidates.len() {
        if candidates.len() - i < need {
            break;
        }
        pick.push(candidates[i]);
        let found = search_bases(b, candidates, i + 1, need - 1, pick, states, state_cap)?;
        pick.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn try_base(
    b: &BuildingSet,
    pick: &[Subset],
    states: &mut usize,
    state_cap: usize,
) -> Result<Option<CubeCertificate>> {
    *states += 1;
    if *states > state_cap {
        return Err(Error::ResourceLimit(format!(
            "2-truncation search exceeded {state_cap} states"
        )));
    }
    let g = b.ground;
    let mut members: Vec<Subset> = (1..=g).map(Subset::singleton).collect();
    members.extend(pick.iter().copied());
    members.push(Subset::full(g));
    members.sort_by_key(card_lex);
    members.dedup();
    let Ok(base) = BuildingSet::new(g, members.iter().copied()) else {
        return Ok(None);
    };
    if !is_cube_base(&base)? {
        return Ok(None);
    }
    let present: HashSet<Subset> = base.sets.iter().copied().collect();
    let remaining: Vec<Subset> =
        b.sets.iter().copied().filter(|s| !present.contains(s)).collect();
    if remaining.len() > 63 {
        return Err(Error::ResourceLimit(
            "too many members beyond the cube base".to_string(),
        ));
    }
    let mut dead: HashSet<u64> = HashSet::new();
    let mut steps: Vec<TruncationStep> = Vec::new();
    if extend_chain(&remaining, present, 0, &mut steps, &mut dead, states, state_cap)? {
        return Ok(Some(CubeCertificate::Chain { base: members, steps }));
    }
    Ok(None)
}

/// Whether the nestohedron of `base` is a combinatorial cube: the nested-set
/// complex must be flag with its non-edges a perfect matching, which pins it
/// as the boundary of a cross-polytope.
fn is_cube_base(base: &BuildingSet) -> Result<bool> {
    let nerve = crate::nerve::nerve_of_nestohedron(base)?;
    let c = &nerve.complex;
    let m = c.m();
    if m != 2 * base.ground.saturating_sub(1) || c.flag_witness().is_some() {
        return Ok(false);
    }
    for i in 1..=m {
        let missing = (1..=m)
            .filter(|&j| j != i && !c.has_face(Subset::singleton(i).insert(j)))
            .count();
        if missing != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn extend_chain(
    remaining: &[Subset],
    present: HashSet<Subset>,
    mask: u64,
    steps: &mut Vec<TruncationStep>,
    dead: &mut HashSet<u64>,
    states: &mut usize,
    state_cap: usize,
) -> Result<bool> {
    if steps.len() == remaining.len() {
        return Ok(true);
    }
    if dead.contains(&mask) {
        return Ok(false);
    }
    *states += 1;
    if *states > state_cap {
        return Err(Error::ResourceLimit(format!(
            "2-truncation search exceeded {state_cap} states"
        )));
    }
    for (idx, &s) in remaining.iter().enumerate() {
        if mask & (1 << idx) != 0 {
            continue;
        }
        // s must split as a disjoint union of two present members
        let split = s
            .subsets()
            .find(|&p| {
                !p.is_empty() && p != s && present.contains(&p) && present.contains(&s.minus(p))
            })
            .map(|p| (p, s.minus(p)));
        let Some((p1, p2)) = split else { continue };
        // adding s must preserve union-closure
        let closed = present.iter().all(|&t| {
            !t.intersects(s) || t.union(s) == s || present.contains(&t.union(s)) || t.union(s) == t
        });
        if !closed {
            continue;
        }
        let mut next = present.clone();
        next.insert(s);
        steps.push(TruncationStep { added: s, part1: p1.min(p2), part2: p1.max(p2) });
        if extend_chain(remaining, next, mask | (1 << idx), steps, dead, states, state_cap)? {
            return Ok(true);
        }
        steps.pop();
    }
    dead.insert(mask);
    Ok(false)
}
