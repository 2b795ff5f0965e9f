//! Exact linear algebra: rationals, prime fields, and integer Smith normal form.
//!
//! Ranks of integer matrices over ℚ use fraction-free Bareiss elimination with
//! an `i128` fast path and a big-integer fallback; prime-field ranks use plain
//! Gaussian elimination on `u64` residues. Row spans, kernels, and linear
//! solving over an arbitrary coefficient field go through [`Coef`].

use crate::error::{invalid, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Coefficient field selector for field-valued computations.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FieldSpec {
    Rational,
    Fp(u64),
}

impl FieldSpec {
    pub fn validate(self) -> Result<Self> {
        if let FieldSpec::Fp(p) = self {
            if !is_prime_u64(p) {
                return Err(invalid(format!("{p} is not prime")));
            }
        }
        Ok(self)
    }

    pub fn zero(self) -> Coef {
        match self {
            FieldSpec::Rational => Coef::Q(BigRational::zero()),
            FieldSpec::Fp(p) => Coef::Fp { v: 0, p },
        }
    }

    pub fn one(self) -> Coef {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Coef {
        match self {
            FieldSpec::Rational => Coef::Q(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Fp(p) => Coef::Fp { v: n.rem_euclid(p as i64) as u64, p },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

/// A scalar in the selected coefficient field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Coef {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Coef {
    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Q(r) => r.is_zero(),
            Coef::Fp { v, .. } => *v == 0,
        }
    }

    pub fn add(&self, o: &Coef) -> Coef {
        match (self, o) {
            (Coef::Q(a), Coef::Q(b)) => Coef::Q(a + b),
            (Coef::Fp { v: a, p }, Coef::Fp { v: b, .. }) => Coef::Fp { v: addmod(*a, *b, *p), p: *p },
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, o: &Coef) -> Coef {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Coef) -> Coef {
        match (self, o) {
            (Coef::Q(a), Coef::Q(b)) => Coef::Q(a * b),
            (Coef::Fp { v: a, p }, Coef::Fp { v: b, .. }) => Coef::Fp { v: mulmod(*a, *b, *p), p: *p },
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> Coef {
        match self {
            Coef::Q(a) => Coef::Q(-a),
            Coef::Fp { v, p } => Coef::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Coef> {
        match self {
            Coef::Q(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Coef::Q(a.recip()))
                }
            }
            Coef::Fp { v, p } => {
                if *v == 0 {
                    None
                } else {
                    Some(Coef::Fp { v: powmod(*v, p - 2, *p), p: *p })
                }
            }
        }
    }

    pub fn scale_i64(&self, n: i64) -> Coef {
        let f = match self {
            Coef::Q(_) => FieldSpec::Rational,
            Coef::Fp { p, .. } => FieldSpec::Fp(*p),
        };
        self.mul(&f.from_i64(n))
    }

    /// Sign and magnitude for formatting: rationals split off a leading minus,
    /// prime-field residues print as-is.
    pub fn display_parts(&self) -> (bool, String) {
        match self {
            Coef::Q(r) => {
                if r.is_negative() {
                    (true, (-r).to_string())
                } else {
                    (false, r.to_string())
                }
            }
            Coef::Fp { v, .. } => (false, v.to_string()),
        }
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Q(r) => write!(f, "{r}"),
            Coef::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// Integer matrices: rank over ℚ and over F_p, Smith normal form over ℤ.

/// Rank over ℚ of an integer matrix, exact.
pub fn rank_over_q(a: &[Vec<i64>]) -> usize {
    if a.is_empty() || a[0].is_empty() {
        return 0;
    }
    let small: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match bareiss_rank_i128(small) {
        Some(r) => r,
        None => {
            let big: Vec<Vec<BigInt>> =
                a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            bareiss_rank_big(big)
        }
    }
}

fn bareiss_rank_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    let cols = a[0].len();
    let mut prev: i128 = 1;
    let mut row = 0;
    for col in 0..cols {
        let piv = (row..rows).find(|&r| a[r][col] != 0);
        let Some(piv) = piv else { continue };
        a.swap(row, piv);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let t = a[r][c].checked_mul(a[row][col])?.checked_sub(a[r][col].checked_mul(a[row][c])?)?;
                a[r][c] = t / prev;
            }
            a[r][col] = 0;
        }
        prev = a[row][col];
        row += 1;
        if row == rows {
            break;
        }
    }
    Some(row)
}

fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        let piv = (row..rows).find(|&r| !a[r][col].is_zero());
        let Some(piv) = piv else { continue };
        a.swap(row, piv);
        for r in row + 1..rows {
            for c in col + 1..cols {
                let t = &a[r][c] * &a[row][col] - &a[r][col] * &a[row][c];
                a[r][c] = t / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        row += 1;
        if row == rows {
            break;
        }
    }
    row
}

/// Rank of an integer matrix reduced mod a prime `p`.
pub fn rank_mod_p(a: &[Vec<i64>], p: u64) -> usize {
    if a.is_empty() || a[0].is_empty() {
        return 0;
    }
    let rows = a.len();
    let cols = a[0].len();
    let mut m: Vec<Vec<u64>> =
        a.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        let inv = powmod(m[rank][col], p - 2, p);
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let f = mulmod(m[r][col], inv, p);
                for c in col..cols {
                    let sub = mulmod(f, m[rank][c], p);
                    m[r][c] = (m[r][c] + p - sub % p) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Invariant factors d_1 | d_2 | … (absolute values, zeros omitted) of an
/// integer matrix.
pub fn smith_invariant_factors(a: &[Vec<i64>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> =
        a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut res = Vec::new();
    let mut t = 0usize;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut restart = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = &m[i][t] / &m[t][t];
                if !q.is_zero() {
                    for j in t..cols {
                        let s = &q * &m[t][j];
                        m[i][j] -= s;
                    }
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    restart = true;
                    break;
                }
            }
            if restart {
                continue;
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = &m[t][j] / &m[t][t];
                if !q.is_zero() {
                    for i in t..rows {
                        let s = &q * &m[i][t];
                        m[i][j] -= s;
                    }
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    restart = true;
                    break;
                }
            }
            if restart {
                continue;
            }
            let mut chained = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&m[i][j] % &m[t][t]).is_zero() {
                        for jj in t..cols {
                            let add = m[i][jj].clone();
                            m[t][jj] += add;
                        }
                        chained = false;
                        break 'scan;
                    }
                }
            }
            if chained {
                break;
            }
        }
        res.push(m[t][t].abs());
        t += 1;
    }
    res
}

// ---------------------------------------------------------------------------
// Field-valued matrices.

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut [Vec<Coef>]) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(piv) = (row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, piv);
        let inv = a[row][col].inv().expect("nonzero pivot");
        for c in col..cols {
            a[row][c] = a[row][c].mul(&inv);
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let s = f.mul(&a[row][c]);
                    a[r][c] = a[r][c].sub(&s);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

/// Basis of the right kernel {x : A x = 0}; one vector per free column, in
/// ascending column order, with a 1 in the free coordinate.
pub fn kernel_basis(a: &[Vec<Coef>], cols: usize, field: FieldSpec) -> Vec<Vec<Coef>> {
    let mut m: Vec<Vec<Coef>> = a.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solve A x = b; free variables are set to zero. `None` if inconsistent.
pub fn solve(a: &[Vec<Coef>], b: &[Coef], cols: usize, field: FieldSpec) -> Option<Vec<Coef>> {
    let rows = a.len();
    debug_assert_eq!(rows, b.len());
    let mut aug: Vec<Vec<Coef>> = (0..rows)
        .map(|r| {
            let mut row = a[r].clone();
            row.push(b[r].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

/// Incrementally maintained row space in echelon form, used for image and
/// span membership tests.
pub struct RowSpan {
    field: FieldSpec,
    dim: usize,
    rows: Vec<Vec<Coef>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        RowSpan { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminate `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [Coef]) {
        debug_assert_eq!(v.len(), self.dim);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for c in pc..self.dim {
                    let s = f.mul(&row[c]);
                    v[c] = v[c].sub(&s);
                }
            }
        }
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<Coef>) -> bool {
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|c| !c.is_zero()) else { return false };
        let inv = v[pc].inv().expect("nonzero leading entry");
        for c in pc..self.dim {
            v[c] = v[c].mul(&inv);
        }
        let at = self.pivots.iter().position(|&q| q > pc).unwrap_or(self.pivots.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, pc);
        let _ = self.field;
        true
    }

    pub fn contains(&self, v: &[Coef]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Coef {
        FieldSpec::Rational.from_i64(n)
    }

    #[test]
    fn bareiss_matches_known_ranks() {
        assert_eq!(rank_over_q(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_over_q(&[vec![1, 2], vec![3, 4]]), 2);
        assert_eq!(rank_over_q(&[vec![0, 0], vec![0, 0]]), 0);
        // 3x4 with rank 2
        assert_eq!(rank_over_q(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 0, 1]]), 2);
    }

    #[test]
    fn modular_rank_detects_characteristic() {
        // determinant 2: rank drops mod 2 only
        let m = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank_over_q(&m), 2);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 2);
    }

    #[test]
    fn smith_form_small_cases() {
        let f = smith_invariant_factors(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(f, vec![BigInt::from(1), BigInt::from(6)]);
        let f = smith_invariant_factors(&[vec![2, 4], vec![4, 2]]);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(6)]);
        let f = smith_invariant_factors(&[vec![1, 0], vec![0, 0]]);
        assert_eq!(f, vec![BigInt::from(1)]);
        assert!(smith_invariant_factors(&[vec![0, 0], vec![0, 0]]).is_empty());
    }

    #[test]
    fn solve_and_kernel_are_consistent() {
        let field = FieldSpec::Rational;
        // x + y = 3, 2x + 2y = 6: solvable with free y = 0
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let x = solve(&a, &[q(3), q(6)], 2, field).unwrap();
        assert_eq!(x, vec![q(3), q(0)]);
        assert!(solve(&a, &[q(3), q(7)], 2, field).is_none());
        let k = kernel_basis(&a, 2, field);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![q(-1), q(1)]);
    }

    #[test]
    fn row_span_membership() {
        let mut s = RowSpan::new(FieldSpec::Fp(5), 3);
        let f = FieldSpec::Fp(5);
        assert!(s.insert(vec![f.from_i64(1), f.from_i64(2), f.from_i64(0)]));
        assert!(s.insert(vec![f.from_i64(0), f.from_i64(1), f.from_i64(1)]));
        assert!(!s.insert(vec![f.from_i64(1), f.from_i64(3), f.from_i64(1)]));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[f.from_i64(2), f.from_i64(4), f.from_i64(0)]));
        assert!(!s.contains(&[f.from_i64(0), f.from_i64(0), f.from_i64(1)]));
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
        assert!(!is_prime_u64(6_700_417u64 * 97));
    }
}
