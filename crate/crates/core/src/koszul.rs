//! The differential graded algebra Λ[u₁..u_m] ⊗ k[K] / (v_i² = u_i v_i = 0)
//! with du_i = v_i, and exact cohomology of its multidegree components.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::SimplicialComplex;
use crate::error::{internal, invalid, Result};
use crate::linalg::{kernel_basis, solve, Coef, FieldSpec, RowSpan};
use crate::subset::Subset;

/// A basis monomial u_J v_I. Zero unless J and I are disjoint and I is a face
/// of the ambient complex; operations drop illegal products. Ordered by
/// (exterior part, polynomial part).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub u: Subset,
    pub v: Subset,
}

impl Monomial {
    pub fn new(u: Subset, v: Subset) -> Monomial {
        Monomial { u, v }
    }

    /// (−|J|, 2(|J| + |I|)).
    pub fn bidegree(self) -> (i64, i64) {
        let j = self.u.len() as i64;
        let i = self.v.len() as i64;
        (-j, 2 * (j + i))
    }

    /// |J| + 2|I|.
    pub fn total_degree(self) -> i64 {
        self.u.len() as i64 + 2 * self.v.len() as i64
    }

    /// Support J ∪ I of the squarefree multidegree.
    pub fn multidegree(self) -> Subset {
        self.u.union(self.v)
    }

    fn is_legal(self, k: &SimplicialComplex) -> bool {
        !self.u.intersects(self.v) && k.has_face(self.v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in self.v.iter() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "v{x}")?;
            first = false;
        }
        for x in self.u.iter() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "u{x}")?;
            first = false;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A homogeneous element: finitely many monomials with nonzero coefficients,
/// all sharing one bidegree and one multidegree (enforced where elements
/// enter from outside; algebra operations preserve it).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    field: FieldSpec,
    terms: BTreeMap<Monomial, Coef>,
}

impl Cochain {
    pub fn zero(field: FieldSpec) -> Cochain {
        Cochain { field, terms: BTreeMap::new() }
    }

    pub fn monomial(field: FieldSpec, m: Monomial) -> Cochain {
        let mut c = Cochain::zero(field);
        c.add_term(m, field.one());
        c
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Coef)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn add_term(&mut self, m: Monomial, c: Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, o: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (m, c) in o.terms() {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Cochain) -> Cochain {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Cochain {
        let terms = self.terms.iter().map(|(&m, c)| (m, c.neg())).collect();
        Cochain { field: self.field, terms }
    }

    pub fn scale(&self, c: &Coef) -> Cochain {
        let mut out = Cochain::zero(self.field);
        for (m, x) in self.terms() {
            out.add_term(m, x.mul(c));
        }
        out
    }

    /// (−1)^{deg} · self, the sign twist entering defining systems.
    pub fn bar(&self) -> Cochain {
        match self.total_degree() {
            Some(d) if d % 2 != 0 => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn bidegree(&self) -> Option<(i64, i64)> {
        self.terms.keys().next().map(|m| m.bidegree())
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().next().map(|m| m.total_degree())
    }

    pub fn multidegree(&self) -> Option<Subset> {
        self.terms.keys().next().map(|m| m.multidegree())
    }

    /// Coordinates in `basis`; monomials outside the basis are an internal
    /// error (component mismatch).
    pub fn to_vec(&self, basis: &[Monomial]) -> Result<Vec<Coef>> {
        let mut out = vec![self.field.zero(); basis.len()];
        for (m, c) in self.terms() {
            let i = basis
                .binary_search(&m)
                .map_err(|_| internal(format!("monomial {m} outside its component basis")))?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn from_vec(field: FieldSpec, basis: &[Monomial], v: &[Coef]) -> Cochain {
        let mut out = Cochain::zero(field);
        for (&m, c) in basis.iter().zip(v) {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let (neg, mag) = c.display_parts();
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{} ", if neg { "-" } else { "+" })?;
            if mag != "1" {
                write!(f, "{mag} ")?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        Ok(())
    }
}

/// The algebra R(K) over a fixed coefficient field.
pub struct Koszul {
    complex: SimplicialComplex,
    field: FieldSpec,
}

impl Koszul {
    pub fn new(complex: SimplicialComplex, field: FieldSpec) -> Koszul {
        Koszul { complex, field }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Basis of the component with multidegree support `s` and bidegree
    /// (−i, 2|s|): monomials u_J v_I with J ⊔ I = s, |J| = i, I a face.
    pub fn component_basis(&self, s: Subset, i: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        for u in s.subsets() {
            if u.len() != i {
                continue;
            }
            let m = Monomial::new(u, s.minus(u));
            if self.complex.has_face(m.v) {
                out.push(m);
            }
        }
        out.sort();
        out
    }

    /// Product of basis monomials with the shuffle sign, or None when zero
    /// in R(K).
    pub fn mul_mono(&self, a: Monomial, b: Monomial) -> Option<(Monomial, i64)> {
        if a.u.intersects(b.u) || a.v.intersects(b.v) {
            return None;
        }
        let m = Monomial::new(a.u.union(b.u), a.v.union(b.v));
        if m.u.intersects(m.v) || !self.complex.has_face(m.v) {
            return None;
        }
        let mut inversions = 0usize;
        for y in b.u.iter() {
            inversions += a.u.len() - a.u.rank_below(y);
        }
        Some((m, if inversions % 2 == 0 { 1 } else { -1 }))
    }

    pub fn multiply(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        if a.field != self.field || b.field != self.field {
            return Err(invalid("cochain field does not match the algebra"));
        }
        let mut out = Cochain::zero(self.field);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((m, sign)) = self.mul_mono(ma, mb) {
                    out.add_term(m, ca.mul(cb).scale_i64(sign));
                }
            }
        }
        Ok(out)
    }

    /// d(u_{j₁<…<j_k} v_I) = Σ_t (−1)^{t−1} u_{J∖j_t} v_{I∪j_t}, dropping
    /// terms whose polynomial part is not a face.
    pub fn differential(&self, a: &Cochain) -> Cochain {
        let mut out = Cochain::zero(self.field);
        for (m, c) in a.terms() {
            for (t, j) in m.u.iter().enumerate() {
                let v = m.v.insert(j);
                if !self.complex.has_face(v) {
                    continue;
                }
                let sign = if t % 2 == 0 { 1 } else { -1 };
                out.add_term(Monomial::new(m.u.remove(j), v), c.scale_i64(sign));
            }
        }
        out
    }

    pub fn is_cocycle(&self, a: &Cochain) -> bool {
        self.differential(a).is_zero()
    }

    /// Rejects elements that are not legal homogeneous cochains of this
    /// algebra.
    pub fn validate(&self, a: &Cochain) -> Result<()> {
        if a.field != self.field {
            return Err(invalid("cochain field does not match the algebra"));
        }
        let mut shape: Option<((i64, i64), Subset)> = None;
        for (m, _) in a.terms() {
            if let Some(x) = m.multidegree().max_elem() {
                if x > self.complex.m() {
                    return Err(invalid(format!("monomial {m} uses a vertex beyond m")));
                }
            }
            if !m.is_legal(&self.complex) {
                return Err(invalid(format!("monomial {m} is zero in this algebra")));
            }
            let this = (m.bidegree(), m.multidegree());
            match shape {
                None => shape = Some(this),
                Some(ref s) if *s != this => {
                    return Err(invalid("cochain is not homogeneous in bidegree and multidegree"))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Matrix of d restricted to the (s, i) component, as rows indexed by the
    /// codomain basis (s, i−1); columns follow `component_basis(s, i)`.
    fn differential_rows(&self, s: Subset, i: usize) -> (Vec<Monomial>, Vec<Monomial>, Vec<Vec<Coef>>) {
        let domain = self.component_basis(s, i);
        let codomain = if i == 0 { Vec::new() } else { self.component_basis(s, i - 1) };
        let mut rows = vec![vec![self.field.zero(); domain.len()]; codomain.len()];
        for (col, &m) in domain.iter().enumerate() {
            let dm = self.differential(&Cochain::monomial(self.field, m));
            for (mono, c) in dm.terms() {
                let row = codomain.binary_search(&mono).expect("differential stays in component");
                rows[row][col] = c.clone();
            }
        }
        (domain, codomain, rows)
    }

    /// Basis of the cocycles in the (s, i) component.
    pub fn cocycle_basis(&self, s: Subset, i: usize) -> Vec<Cochain> {
        let (domain, _, rows) = self.differential_rows(s, i);
        kernel_basis(&rows, domain.len(), self.field)
            .into_iter()
            .map(|v| Cochain::from_vec(self.field, &domain, &v))
            .collect()
    }

    /// Row span of the coboundaries inside the (s, i) component.
    pub fn coboundary_span(&self, s: Subset, i: usize) -> (Vec<Monomial>, RowSpan) {
        let basis = self.component_basis(s, i);
        let mut span = RowSpan::new(self.field, basis.len());
        for &m in &self.component_basis(s, i + 1) {
            let dm = self.differential(&Cochain::monomial(self.field, m));
            let v = dm.to_vec(&basis).expect("differential stays in component");
            span.insert(v);
        }
        (basis, span)
    }

    /// Solves d(x) = rhs for x in the component one exterior degree up;
    /// None when rhs is not a coboundary.
    pub fn solve_differential(&self, rhs: &Cochain) -> Result<Option<Cochain>> {
        self.validate(rhs)?;
        let Some(s) = rhs.multidegree() else {
            return Ok(Some(Cochain::zero(self.field)));
        };
        let i_up = rhs.terms.keys().next().expect("nonzero").u.len() + 1;
        let (domain, codomain, rows) = self.differential_rows(s, i_up);
        let b = rhs.to_vec(&codomain)?;
        Ok(solve(&rows, &b, domain.len(), self.field)
            .map(|v| Cochain::from_vec(self.field, &domain, &v)))
    }

    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool> {
        Ok(c.is_zero() || self.solve_differential(c)?.is_some())
    }

    /// Rank and representative cocycles of H^{−i, 2|s|} in multidegree `s`.
    pub fn component_cohomology(&self, s: Subset, i: usize) -> ComponentCohomology {
        let (basis, mut span) = self.coboundary_span(s, i);
        let mut representatives = Vec::new();
        for z in self.cocycle_basis(s, i) {
            let v = z.to_vec(&basis).expect("cocycle in component");
            if span.insert(v) {
                representatives.push(z);
            }
        }
        ComponentCohomology { rank: representatives.len(), representatives }
    }
}

pub struct ComponentCohomology {
    pub rank: usize,
    pub representatives: Vec<Cochain>,
}

/// Parses the signed monomial list syntax, e.g. "+ v1 u14 - v6 u1 u14 u10".
/// Exterior indices may come in any order; the parser sorts them and folds the
/// permutation sign into the coefficient. Monomials that vanish in R(K)
/// (repeated factors, u∩v overlap, non-face polynomial part) are rejected, as
/// are inhomogeneous sums.
pub fn parse_cochain(text: &str, k: &SimplicialComplex, field: FieldSpec) -> Result<Cochain> {
    struct Term {
        sign: i64,
        coef: Option<(i64, i64)>,
        us: Vec<usize>,
        vs: Vec<usize>,
    }

    let mut terms: Vec<Term> = Vec::new();
    for tok in text.split_whitespace() {
        match tok {
            "+" | "-" => {
                terms.push(Term {
                    sign: if tok == "+" { 1 } else { -1 },
                    coef: None,
                    us: Vec::new(),
                    vs: Vec::new(),
                });
            }
            _ => {
                let term = match terms.last_mut() {
                    Some(t) => t,
                    None => {
                        terms.push(Term { sign: 1, coef: None, us: Vec::new(), vs: Vec::new() });
                        terms.last_mut().expect("just pushed")
                    }
                };
                if let Some(rest) = tok.strip_prefix('u') {
                    term.us.push(parse_index(rest, k.m())?);
                } else if let Some(rest) = tok.strip_prefix('v') {
                    term.vs.push(parse_index(rest, k.m())?);
                } else if term.us.is_empty() && term.vs.is_empty() && term.coef.is_none() {
                    term.coef = Some(parse_ratio(tok)?);
                } else {
                    return Err(invalid(format!("unexpected token `{tok}` in cochain")));
                }
            }
        }
    }

    let mut out = Cochain::zero(field);
    for term in terms {
        if term.us.is_empty() && term.vs.is_empty() {
            return Err(invalid("cochain term has no generators"));
        }
        let mut v = Subset::EMPTY;
        for &x in &term.vs {
            if v.contains(x) {
                return Err(invalid(format!("repeated factor v{x} makes the monomial zero")));
            }
            v = v.insert(x);
        }
        let mut inversions = 0usize;
        let mut u = Subset::EMPTY;
        for &x in &term.us {
            if u.contains(x) {
                return Err(invalid(format!("repeated factor u{x} makes the monomial zero")));
            }
            inversions += u.len() - u.rank_below(x);
            u = u.insert(x);
        }
        let m = Monomial::new(u, v);
        if !m.is_legal(k) {
            return Err(invalid(format!("monomial {m} is zero in this complex")));
        }
        let mut c = match term.coef {
            None => field.one(),
            Some((num, den)) => {
                let d = field.from_i64(den);
                let inv = d
                    .inv()
                    .ok_or_else(|| invalid(format!("denominator {den} is zero in {field}")))?;
                field.from_i64(num).mul(&inv)
            }
        };
        c = c.scale_i64(term.sign * if inversions % 2 == 0 { 1 } else { -1 });
        out.add_term(m, c);
    }

    let mut shape: Option<((i64, i64), Subset)> = None;
    for (m, _) in out.terms() {
        let this = (m.bidegree(), m.multidegree());
        match shape {
            None => shape = Some(this),
            Some(ref s) if *s != this => {
                return Err(invalid("cochain is not homogeneous in bidegree and multidegree"))
            }
            _ => {}
        }
    }
    Ok(out)
}

fn parse_index(text: &str, m: usize) -> Result<usize> {
    let i: usize = text
        .parse()
        .map_err(|_| invalid(format!("bad generator index `{text}`")))?;
    if i == 0 || i > m {
        return Err(invalid(format!("generator index {i} outside 1..={m}")));
    }
    Ok(i)
}

fn parse_ratio(text: &str) -> Result<(i64, i64)> {
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a, b),
        None => (text, "1"),
    };
    let n: i64 = num.parse().map_err(|_| invalid(format!("bad coefficient `{text}`")))?;
    let d: i64 = den.parse().map_err(|_| invalid(format!("bad coefficient `{text}`")))?;
    if d == 0 {
        return Err(invalid("zero denominator"));
    }
    Ok((n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::CoefficientChoice;
    use crate::nerve::pcube_nerve;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(vs: &[usize]) -> Subset {
        Subset::from_iter(vs.iter().copied())
    }

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_facet_lists(4, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]])
            .unwrap()
    }

    fn parse(k: &SimplicialComplex, text: &str) -> Cochain {
        parse_cochain(text, k, FieldSpec::Rational).unwrap()
    }

    fn random_complex(rng: &mut ChaCha8Rng, m: usize) -> SimplicialComplex {
        let mut faces = vec![Subset::full(1)];
        for _ in 0..2 * m {
            let size = rng.gen_range(1..=3.min(m));
            let mut f = Subset::EMPTY;
            while f.len() < size {
                f = f.insert(rng.gen_range(1..=m));
            }
            faces.push(f);
        }
        SimplicialComplex::from_faces(m, faces).unwrap()
    }

    #[test]
    fn differential_of_u1_is_v1() {
        let k = square();
        let alg = Koszul::new(k.clone(), FieldSpec::Rational);
        let d = alg.differential(&parse(&k, "+ u1"));
        assert_eq!(d, parse(&k, "+ v1"));
    }

    #[test]
    fn vpart_collision_kills_products() {
        let k = SimplicialComplex::simplex(6);
        let alg = Koszul::new(k.clone(), FieldSpec::Rational);
        let p = alg.multiply(&parse(&k, "+ v1 u5"), &parse(&k, "+ v1 u6")).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn shuffle_signs_anticommute() {
        let k = SimplicialComplex::simplex(3);
        let alg = Koszul::new(k.clone(), FieldSpec::Rational);
        let u1 = parse(&k, "+ u1");
        let u2 = parse(&k, "+ u2");
        let a = alg.multiply(&u1, &u2).unwrap();
        let b = alg.multiply(&u2, &u1).unwrap();
        assert_eq!(a, parse(&k, "+ u1 u2"));
        assert_eq!(b, parse(&k, "- u1 u2"));
    }

    #[test]
    fn parser_sorts_exterior_indices_with_sign() {
        let k = SimplicialComplex::simplex(14);
        assert_eq!(parse(&k, "+ u14 u1"), parse(&k, "- u1 u14"));
        assert_eq!(parse(&k, "+ v6 u1 u14 u10"), parse(&k, "- v6 u1 u10 u14"));
    }

    #[test]
    fn parser_rejects_zero_monomials_and_mixed_degrees() {
        let k = square();
        assert!(parse_cochain("+ u1 u1", &k, FieldSpec::Rational).is_err());
        assert!(parse_cochain("+ v1 u1", &k, FieldSpec::Rational).is_err());
        assert!(parse_cochain("+ v1 v3", &k, FieldSpec::Rational).is_err());
        assert!(parse_cochain("+ v1 u2 + v1", &k, FieldSpec::Rational).is_err());
        assert!(parse_cochain("+ v1 u2 + v1 u3", &k, FieldSpec::Rational).is_err());
    }

    #[test]
    fn cochain_text_round_trips() {
        let k = SimplicialComplex::simplex(14);
        let c = parse(&k, "+ 2 v1 u2 u3 - 1/3 v2 u1 u3");
        assert_eq!(format!("{c}"), "- 1/3 v2 u1 u3 + 2 v1 u2 u3");
        assert_eq!(parse(&k, &format!("{c}")), c);
    }

    #[test]
    fn pcube4_three_fold_differential_relation() {
        let k = pcube_nerve(4).unwrap().complex;
        let alg = Koszul::new(k.clone(), FieldSpec::Rational);
        let c14 = parse(&k, "+ v1 u2 u3 u5 u6 u7");
        let a1 = parse(&k, "+ v1 u5");
        let c24 = parse(&k, "+ v2 u3 u6 u7");
        let c13 = parse(&k, "+ v1 u2 u5 u6");
        let c34 = parse(&k, "+ v3 u7");
        let rhs = alg
            .multiply(&a1.bar(), &c24)
            .unwrap()
            .add(&alg.multiply(&c13.bar(), &c34).unwrap());
        assert_eq!(alg.differential(&c14), rhs);
    }

    #[test]
    fn d_squared_vanishes_on_random_monomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let m = rng.gen_range(3..=8);
            let k = random_complex(&mut rng, m);
            let alg = Koszul::new(k.clone(), FieldSpec::Rational);
            let s_all = Subset::full(m);
            let mut u = Subset::EMPTY;
            let mut v = Subset::EMPTY;
            for x in s_all.iter() {
                match rng.gen_range(0..3) {
                    0 => u = u.insert(x),
                    1 => v = v.insert(x),
                    _ => {}
                }
            }
            let mono = Monomial::new(u, v);
            if !mono.is_legal(&k) {
                continue;
            }
            let c = Cochain::monomial(FieldSpec::Rational, mono);
            assert!(alg.differential(&alg.differential(&c)).is_zero());
        }
    }

    #[test]
    fn leibniz_rule_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut checked = 0;
        while checked < 100 {
            let m = rng.gen_range(4..=8);
            let k = random_complex(&mut rng, m);
            let alg = Koszul::new(k.clone(), FieldSpec::Rational);
            let pick = |rng: &mut ChaCha8Rng| {
                let mut u = Subset::EMPTY;
                let mut v = Subset::EMPTY;
                for x in 1..=m {
                    match rng.gen_range(0..4) {
                        0 => u = u.insert(x),
                        1 => v = v.insert(x),
                        _ => {}
                    }
                }
                Monomial::new(u, v)
            };
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            if !a.is_legal(&k) || !b.is_legal(&k) {
                continue;
            }
            checked += 1;
            let ca = Cochain::monomial(FieldSpec::Rational, a);
            let cb = Cochain::monomial(FieldSpec::Rational, b);
            let lhs = alg.differential(&alg.multiply(&ca, &cb).unwrap());
            let sign = if a.total_degree() % 2 == 0 { 1 } else { -1 };
            let rhs = alg
                .multiply(&alg.differential(&ca), &cb)
                .unwrap()
                .add(&alg.multiply(&ca, &alg.differential(&cb)).unwrap().scale(
                    &FieldSpec::Rational.from_i64(sign),
                ));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn non_face_pair_component_has_rank_one() {
        let k = square();
        let alg = Koszul::new(k.clone(), FieldSpec::Rational);
        let comp = alg.component_cohomology(s(&[1, 3]), 1);
        assert_eq!(comp.rank, 1);
        let rep = &comp.representatives[0];
        assert!(rep == &parse(&k, "+ v1 u3") || rep == &parse(&k, "+ v3 u1"));
    }

    #[test]
    fn full_simplex_components_are_acyclic() {
        let k = SimplicialComplex::simplex(4);
        let alg = Koszul::new(k, FieldSpec::Rational);
        for i in 1..=4 {
            assert_eq!(alg.component_cohomology(Subset::full(4), i).rank, 0);
        }
    }

    #[test]
    fn component_ranks_match_subcomplex_cohomology() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for case in 0..40 {
            let m = rng.gen_range(3..=6);
            let k = random_complex(&mut rng, m);
            let alg = Koszul::new(k.clone(), FieldSpec::Rational);
            for j in Subset::all(m) {
                if j.is_empty() {
                    continue;
                }
                for i in 0..=j.len() {
                    let koszul_rank = alg.component_cohomology(j, i).rank;
                    let simplicial = crate::homology::reduced_cohomology_under(
                        &k,
                        j,
                        CoefficientChoice::Rational,
                    );
                    let degree = j.len() as i64 - i as i64 - 1;
                    assert_eq!(
                        koszul_rank,
                        simplicial.rank(degree),
                        "case {case}: mismatch at J={j}, i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn solve_differential_finds_primitives() {
        let k = square();
        let alg = Koszul::new(k.clone(), FieldSpec::Rational);
        // d(u1 u3) = v1 u3 - v3 u1 is a coboundary; v1 u3 itself is not.
        let c = alg.differential(&parse(&k, "+ u1 u3"));
        let x = alg.solve_differential(&c).unwrap().expect("has primitive");
        assert_eq!(alg.differential(&x), c);
        assert!(!alg.is_coboundary(&parse(&k, "+ v1 u3")).unwrap());
    }

    #[test]
    fn pcube4_top_component_rank_one() {
        let k = pcube_nerve(4).unwrap().complex;
        let alg = Koszul::new(k.clone(), FieldSpec::Rational);
        let j = s(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let comp = alg.component_cohomology(j, 6);
        assert_eq!(comp.rank, 1);
    }
}
