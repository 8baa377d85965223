//! Exact linear algebra over a prime field F_q: reduced row echelon form,
//! rank, kernel and row-space bases, subspace intersection dimension, and a
//! canonical enumeration of all s-dimensional subspaces of F_q^n.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::modp;

/// Dense row-major matrix over F_q, q = p prime. Entries are always reduced
/// mod p.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FqMatrix {
    pub fn new(p: u64, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::BadParameters(format!(
                "matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|e| e % p).collect();
        Ok(FqMatrix {
            p,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FqMatrix {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch(r.len(), cols));
            }
            entries.extend(r.iter().map(|&e| e % p));
        }
        Ok(FqMatrix {
            p,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> {
        self.entries.chunks(self.cols.max(1)).take(self.rows)
    }

    /// Matrix product over F_q.
    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch(self.cols, other.rows));
        }
        let p = self.p;
        let mut out = FqMatrix::zero(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = modp::mul(a, other.get(k, j), p);
                    let e = &mut out.entries[i * other.cols + j];
                    *e = modp::add(*e, t, p);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product M·v.
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch(v.len(), self.cols));
        }
        let p = self.p;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| modp::add(acc, modp::mul(a, b % p, p), p))
            })
            .collect())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch(self.cols, other.cols));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(FqMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// In-place Gauss-Jordan elimination; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.entries.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = modp::inv(self.get(r, c), p);
            for j in 0..self.cols {
                let v = modp::mul(self.get(r, j), inv, p);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = modp::sub(self.get(i, j), modp::mul(f, self.get(r, j), p), p);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form. Idempotent; preserves the row space.
    pub fn rref(&self) -> FqMatrix {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Right kernel: the subspace { v : M·v = 0 } of F_q^cols.
    pub fn kernel_basis(&self) -> Subspace {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        // one basis vector per free column: unit there, back-substituted on pivots
        let mut basis = FqMatrix::zero(p, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            basis.set(k, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(k, pc, modp::neg(m.get(i, fc), p));
            }
        }
        Subspace::from_generators(&basis)
    }

    /// Span of the rows, as a canonical subspace of F_q^cols.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_generators(self)
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix {}x{} mod {} [", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// A subspace of F_q^n, stored as its unique basis in reduced row echelon
/// form with no zero rows. Equality of values is equality of subspaces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    basis: FqMatrix,
}

impl Subspace {
    /// Canonical subspace spanned by the rows of `gens`.
    pub fn from_generators(gens: &FqMatrix) -> Subspace {
        let mut m = gens.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        let entries = m.entries[..rank * m.cols].to_vec();
        Subspace {
            basis: FqMatrix {
                p: m.p,
                rows: rank,
                cols: m.cols,
                entries,
            },
        }
    }

    pub fn zero(p: u64, ambient: usize) -> Subspace {
        Subspace {
            basis: FqMatrix::zero(p, 0, ambient),
        }
    }

    pub fn full(p: u64, ambient: usize) -> Subspace {
        Subspace {
            basis: FqMatrix::identity(p, ambient),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn p(&self) -> u64 {
        self.basis.p
    }

    /// RREF basis matrix, one row per dimension.
    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        if v.len() != self.ambient() {
            return false;
        }
        let p = self.p();
        let mut rem: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for row in self.basis.row_iter() {
            let pivot = row.iter().position(|&x| x != 0).expect("no zero basis rows");
            let c = rem[pivot];
            if c != 0 {
                for (x, &b) in rem.iter_mut().zip(row) {
                    *x = modp::sub(*x, modp::mul(c, b, p), p);
                }
            }
        }
        rem.iter().all(|&x| x == 0)
    }

    /// dim(U ∩ V) via dim U + dim V − dim(U + V).
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.ambient(), other.ambient()));
        }
        let sum_rank = self.basis.vstack(&other.basis)?.rank();
        Ok(self.dim() + other.dim() - sum_rank)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of F_{}^{})", self.dim(), self.p(), self.ambient())
    }
}

/// All s-dimensional subspaces of F_q^n, each exactly once, in a fixed
/// deterministic order: pivot-column patterns ascend lexicographically, and
/// within a pattern the free entries count up in base q (last free position
/// in row-major order varies fastest).
pub fn enumerate_subspaces(q: u64, n: usize, s: usize) -> Result<SubspaceEnumerator> {
    if !modp::is_prime(q) {
        return Err(Error::BadParameters(format!("q = {q} is not prime")));
    }
    if s > n {
        return Err(Error::BadParameters(format!(
            "subspace dimension {s} exceeds ambient dimension {n}"
        )));
    }
    Ok(SubspaceEnumerator {
        q,
        n,
        patterns: (0..n).combinations(s),
        current: None,
    })
}

pub struct SubspaceEnumerator {
    q: u64,
    n: usize,
    patterns: itertools::Combinations<std::ops::Range<usize>>,
    current: Option<PatternState>,
}

struct PatternState {
    pivots: Vec<usize>,
    free_pos: Vec<(usize, usize)>,
    counter: Vec<u64>,
    exhausted: bool,
}

impl PatternState {
    fn new(pivots: Vec<usize>, n: usize) -> Self {
        // free entries of the canonical RREF shape: right of the row's pivot,
        // not in a pivot column
        let mut free_pos = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    free_pos.push((i, c));
                }
            }
        }
        let counter = vec![0; free_pos.len()];
        PatternState {
            pivots,
            free_pos,
            counter,
            exhausted: false,
        }
    }

    fn build(&self, q: u64, n: usize) -> Subspace {
        let s = self.pivots.len();
        let mut basis = FqMatrix::zero(q, s, n);
        for (i, &pc) in self.pivots.iter().enumerate() {
            basis.set(i, pc, 1);
        }
        for (&(r, c), &v) in self.free_pos.iter().zip(&self.counter) {
            basis.set(r, c, v);
        }
        debug_assert_eq!(basis.rref(), basis, "pattern fill must already be canonical");
        Subspace { basis }
    }

    fn advance(&mut self, q: u64) {
        for d in self.counter.iter_mut().rev() {
            if *d + 1 < q {
                *d += 1;
                return;
            }
            *d = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            match &mut self.current {
                Some(st) if !st.exhausted => {
                    let sub = st.build(self.q, self.n);
                    st.advance(self.q);
                    return Some(sub);
                }
                _ => {
                    let pivots = self.patterns.next()?;
                    self.current = Some(PatternState::new(pivots, self.n));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigUint;
    use proptest::prelude::*;

    fn mat(p: u64, rows: &[&[u64]]) -> FqMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        FqMatrix::from_rows(p, cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap()
    }

    /// Independent count of s-dimensional subspaces of F_q^n.
    fn gauss_count(n: usize, s: usize, q: u64) -> BigUint {
        let q = BigUint::from(q);
        let mut num = BigUint::from(1u32);
        let mut den = BigUint::from(1u32);
        for i in 0..s {
            num *= q.pow(n as u32) - q.pow(i as u32);
            den *= q.pow(s as u32) - q.pow(i as u32);
        }
        num / den
    }

    #[test]
    fn rref_fixed_points_and_elimination() {
        let id = FqMatrix::identity(2, 3);
        assert_eq!(id.rref(), id);
        let z = FqMatrix::zero(3, 2, 4);
        assert_eq!(z.rref(), z);
        let m = mat(2, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.rref(), mat(2, &[&[1, 1], &[0, 0]]));
    }

    #[test]
    fn rank_and_kernel_hand_cases() {
        let z = FqMatrix::zero(2, 3, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().dim(), 4);
        let id = FqMatrix::identity(5, 4);
        assert_eq!(id.rank(), 4);
        assert_eq!(id.kernel_basis().dim(), 0);
        let m = mat(2, &[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.dim(), 1);
        assert!(ker.contains(&[1, 1, 1]));
    }

    #[test]
    fn intersection_dim_hand_cases() {
        let u = mat(2, &[&[1, 0]]).row_space();
        let v = mat(2, &[&[0, 1]]).row_space();
        let w = mat(2, &[&[1, 1]]).row_space();
        assert_eq!(u.intersection_dim(&u).unwrap(), 1);
        assert_eq!(u.intersection_dim(&v).unwrap(), 0);
        assert_eq!(u.intersection_dim(&w).unwrap(), 0);
        assert_eq!(v.intersection_dim(&w).unwrap(), 0);
        let plane = mat(2, &[&[1, 0, 0], &[0, 1, 0]]).row_space();
        let line = mat(2, &[&[1, 1, 0]]).row_space();
        assert_eq!(line.intersection_dim(&plane).unwrap(), line.dim());
        let other = mat(2, &[&[1, 0]]).row_space();
        assert!(matches!(
            plane.intersection_dim(&other),
            Err(Error::AmbientMismatch(3, 2))
        ));
    }

    #[test]
    fn subspace_enumeration_small_cases() {
        let zero_dim: Vec<_> = enumerate_subspaces(2, 3, 0).unwrap().collect();
        assert_eq!(zero_dim.len(), 1);
        assert_eq!(zero_dim[0], Subspace::zero(2, 3));

        let lines: Vec<_> = enumerate_subspaces(2, 2, 1).unwrap().collect();
        let expected: Vec<_> = [[1u64, 0], [1, 1], [0, 1]]
            .iter()
            .map(|r| mat(2, &[&r[..]]).row_space())
            .collect();
        assert_eq!(lines, expected);
    }

    #[test]
    fn subspace_enumeration_matches_brute_force() {
        // Oracle: all distinct row spaces of 2x4 matrices over F_2.
        let mut brute = std::collections::BTreeSet::new();
        for bits in 0u32..(1 << 8) {
            let entries: Vec<u64> = (0..8).map(|i| ((bits >> i) & 1) as u64).collect();
            let m = FqMatrix::new(2, 2, 4, entries).unwrap();
            if m.rank() == 2 {
                brute.insert(m.row_space());
            }
        }
        assert_eq!(brute.len(), 35);
        let enumerated: std::collections::BTreeSet<_> =
            enumerate_subspaces(2, 4, 2).unwrap().collect();
        assert_eq!(enumerated, brute);
    }

    #[test]
    fn subspace_counts_match_gaussian_binomial() {
        for q in [2u64, 3] {
            for n in 0..=6usize {
                // keep q = 3 cases within a quick test budget
                if q == 3 && n > 5 {
                    continue;
                }
                for s in 0..=n {
                    let count = enumerate_subspaces(q, n, s).unwrap().count();
                    assert_eq!(
                        BigUint::from(count),
                        gauss_count(n, s, q),
                        "count mismatch at q={q} n={n} s={s}"
                    );
                }
            }
        }
    }

    #[test]
    fn subspace_enumeration_yields_distinct_canonical_values() {
        let all: Vec<_> = enumerate_subspaces(3, 4, 2).unwrap().collect();
        let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            assert_eq!(s.dim(), 2);
            assert_eq!(s.ambient(), 4);
            assert_eq!(&s.basis().rref(), s.basis());
        }
    }

    #[test]
    fn enumerate_rejects_bad_dims() {
        assert!(enumerate_subspaces(2, 2, 3).is_err());
        assert!(enumerate_subspaces(4, 2, 1).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = FqMatrix> {
        (prop_oneof![Just(2u64), Just(3u64)], 1..=6usize, 1..=6usize).prop_flat_map(
            |(q, r, c)| {
                proptest::collection::vec(0..q, r * c)
                    .prop_map(move |e| FqMatrix::new(q, r, c, e).unwrap())
            },
        )
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
        }

        #[test]
        fn kernel_vectors_annihilate(m in arb_matrix()) {
            let ker = m.kernel_basis();
            for v in ker.basis().row_iter() {
                let out = m.mul_vec(v).unwrap();
                prop_assert!(out.iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rref_idempotent_and_row_space_preserving(m in arb_matrix()) {
            let r = m.rref();
            prop_assert_eq!(r.rref(), r.clone());
            prop_assert_eq!(m.row_space(), r.row_space());
        }

        #[test]
        fn row_space_invariant_under_invertible_left_factor(
            m in arb_matrix(),
            seed in proptest::collection::vec(0u64..3, 36)
        ) {
            let q = m.p();
            let r = m.rows();
            let e = FqMatrix::new(q, r, r, seed[..r * r].iter().map(|&x| x % q).collect())
                .unwrap();
            prop_assume!(e.rank() == r);
            prop_assert_eq!(e.mul(&m).unwrap().row_space(), m.row_space());
        }

        #[test]
        fn intersection_dim_matches_vector_count(
            a in arb_matrix(),
            b_entries in proptest::collection::vec(0u64..3, 36)
        ) {
            let q = a.p();
            let n = a.cols();
            prop_assume!(n <= 4 || q == 2);
            let b = FqMatrix::new(q, n.min(6), n, b_entries[..n.min(6) * n]
                .iter().map(|&x| x % q).collect()).unwrap();
            let u = a.row_space();
            let v = b.row_space();
            let d = u.intersection_dim(&v).unwrap();
            // brute force: count common vectors, must be q^d
            let total = (q as u128).pow(n as u32);
            let mut common = 0u128;
            for idx in 0..total {
                let mut vec_ = Vec::with_capacity(n);
                let mut rest = idx;
                for _ in 0..n {
                    vec_.push((rest % q as u128) as u64);
                    rest /= q as u128;
                }
                if u.contains(&vec_) && v.contains(&vec_) {
                    common += 1;
                }
            }
            prop_assert_eq!(common, (q as u128).pow(d as u32));
        }
    }
}
