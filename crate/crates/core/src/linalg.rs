//! Vectors, matrices, and canonical subspaces over `F_q`, plus exhaustive
//! enumeration of all k-dimensional subspaces of `F_q^n`.
//!
//! A subspace is represented by its reduced row echelon basis, which is
//! unique, so subspaces can be hashed and compared for equality directly.
//! The enumerator walks RREF shapes: pivot column sets in lexicographic
//! order, then the free entries in row-major odometer order, which yields
//! every subspace exactly once in a deterministic order.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use thiserror::Error;

use crate::census;
use crate::gf::{FieldElement, FieldRef};

/// Default cap on the number of subspaces an enumeration may visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(
        "enumeration of {count} subspaces (q={q}, n={n}, k={k}) exceeds the budget of {budget}"
    )]
    BudgetExceeded {
        q: u64,
        n: usize,
        k: usize,
        count: BigInt,
        budget: u64,
    },
}

/// A dense row-major matrix over a fixed `F_q`.
#[derive(Clone)]
pub struct Matrix {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over F_{} [",
            self.rows,
            self.cols,
            self.field.order()
        )?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.at(r, c).0)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: FieldRef, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: FieldRef, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(field: FieldRef, rows: Vec<Vec<FieldElement>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            field,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Test helper: build from integer indices.
    pub fn from_u64_rows(field: FieldRef, rows: &[&[u64]]) -> Matrix {
        let built = rows
            .iter()
            .map(|row| row.iter().map(|&v| field.el(v)).collect())
            .collect();
        Matrix::from_rows(field, built)
    }

    #[inline]
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = &self.field;
        let mut out = Matrix::zeros(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.at(r, i);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let t = f.mul(a, other.at(i, c));
                    out.set(r, c, f.add(out.at(r, c), t));
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column counts must agree");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// In-place Gauss-Jordan reduction; returns the pivot columns.
    fn reduce(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for col in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(sel) = (pr..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(pr, sel);
            let inv = f.inv(self.at(pr, col)).expect("pivot is nonzero");
            self.scale_row(pr, inv);
            for r in 0..self.rows {
                if r != pr {
                    let factor = self.at(r, col);
                    if !factor.is_zero() {
                        self.row_sub_scaled(r, pr, factor);
                    }
                }
            }
            pivots.push(col);
            pr += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: FieldElement) {
        let f = self.field.clone();
        for c in 0..self.cols {
            let v = self.at(r, c);
            self.set(r, c, f.mul(v, s));
        }
    }

    /// row_r -= s * row_src
    fn row_sub_scaled(&mut self, r: usize, src: usize, s: FieldElement) {
        let f = self.field.clone();
        for c in 0..self.cols {
            let t = f.mul(s, self.at(src, c));
            let v = self.field.sub(self.at(r, c), t);
            self.set(r, c, v);
        }
    }

    /// The unique reduced row echelon form of `self`, with zero rows dropped.
    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.reduce();
        m.rows = pivots.len();
        m.data.truncate(m.rows * m.cols);
        m
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = self.field.clone();
        let mut m = self.clone();
        let n = m.rows;
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(sel) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return FieldElement::ZERO;
            };
            if sel != col {
                m.swap_rows(col, sel);
                det = f.neg(det);
            }
            let pivot = m.at(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            for r in (col + 1)..n {
                let factor = f.mul(m.at(r, col), inv);
                if !factor.is_zero() {
                    m.row_sub_scaled(r, col, factor);
                }
            }
        }
        det
    }

    /// Right kernel `{v : M v = 0}` as a canonical subspace of `F_q^cols`.
    pub fn kernel(&self) -> Subspace {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.reduce();
        let rank = pivots.len();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![FieldElement::ZERO; self.cols];
            v[free] = FieldElement::ONE;
            for (i, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = f.neg(m.at(i, free));
            }
            basis.push(v);
        }
        Subspace::from_generators(Matrix::from_rows(f, basis).with_cols(self.cols))
    }

    /// Ensures a row-free matrix still knows its column count.
    fn with_cols(mut self, cols: usize) -> Matrix {
        if self.rows == 0 {
            self.cols = cols;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

/// A subspace of `F_q^n`, held as its reduced row echelon basis with no zero
/// rows. Two values are equal iff they are the same subspace.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of F_{}^{}) {:?}",
            self.dim(),
            self.field().order(),
            self.ambient_dim(),
            self.basis
        )
    }
}

impl Subspace {
    pub fn from_generators(m: Matrix) -> Subspace {
        Subspace { basis: m.rref() }
    }

    /// Wraps a matrix already known to be in RREF with no zero rows.
    pub fn from_rref_unchecked(m: Matrix) -> Subspace {
        debug_assert!(is_rref(&m), "basis is not in reduced row echelon form");
        Subspace { basis: m }
    }

    pub fn zero(field: FieldRef, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, n),
        }
    }

    pub fn full(field: FieldRef, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, n),
        }
    }

    pub fn line(field: FieldRef, v: &[FieldElement]) -> Subspace {
        Subspace::from_generators(Matrix::from_rows(field, vec![v.to_vec()]))
    }

    #[inline]
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn field(&self) -> &FieldRef {
        self.basis.field()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Reduces `v` against the basis; returns the residue.
    fn reduce_vector(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field();
        let mut v = v.to_vec();
        for r in 0..self.dim() {
            let pivot = self
                .basis
                .row(r)
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis has no zero rows");
            let c = v[pivot];
            if !c.is_zero() {
                for (x, &b) in v.iter_mut().zip(self.basis.row(r)) {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.ambient_dim(), "vector length mismatch");
        self.reduce_vector(v).iter().all(|x| x.is_zero())
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other
            .basis
            .data
            .chunks(other.ambient_dim().max(1))
            .take(other.dim())
            .all(|row| self.contains_vector(row))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.field().order() != other.field().order()
            || self.ambient_dim() != other.ambient_dim()
        {
            return Err(LinalgError::DimensionMismatch(format!(
                "subspaces live in F_{}^{} and F_{}^{}",
                self.field().order(),
                self.ambient_dim(),
                other.field().order(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        Ok(Subspace::from_generators(self.basis.vstack(&other.basis)))
    }

    /// Intersection via double annihilators: the annihilator (with respect to
    /// the standard dot product) of a row space is the kernel of its basis,
    /// and `A ∩ B` is the annihilator of `ann(A) + ann(B)`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let ann_a = self.basis.kernel();
        let ann_b = other.basis.kernel();
        Ok(ann_a.basis.vstack(&ann_b.basis).kernel())
    }
}

fn is_rref(m: &Matrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    for r in 0..m.rows() {
        let Some(p) = (0..m.cols()).find(|&c| !m.at(r, c).is_zero()) else {
            return false; // zero row
        };
        if m.at(r, p) != FieldElement::ONE {
            return false;
        }
        if let Some(lp) = last_pivot {
            if p <= lp {
                return false;
            }
        }
        for other in 0..m.rows() {
            if other != r && !m.at(other, p).is_zero() {
                return false;
            }
        }
        last_pivot = Some(p);
    }
    true
}

/// All k-element subsets of `0..n` in lexicographic order.
pub fn pivot_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        if !next_combination(&mut cur, n) {
            break;
        }
    }
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in (i + 1)..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Positions of the free entries of an RREF shape with the given pivots,
/// in row-major order.
fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; n];
        for &p in pivots {
            v[p] = true;
        }
        v
    };
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in (p + 1)..n {
            if !is_pivot[c] {
                out.push((r, c));
            }
        }
    }
    out
}

/// Visits the RREF basis of every k-dimensional subspace of `F_q^n` for a
/// fixed pivot set, in free-entry odometer order. The scratch matrix handed
/// to the callback is reused between calls.
pub fn for_each_subspace_with_pivots<F: FnMut(&Matrix)>(
    field: &FieldRef,
    n: usize,
    pivots: &[usize],
    mut f: F,
) {
    let q = field.order();
    let k = pivots.len();
    let mut m = Matrix::zeros(field.clone(), k, n);
    for (r, &p) in pivots.iter().enumerate() {
        m.set(r, p, FieldElement::ONE);
    }
    let free = free_positions(n, pivots);
    loop {
        f(&m);
        // Odometer increment over the free entries, last position fastest.
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            let (r, c) = free[pos];
            let next = m.at(r, c).0 as u64 + 1;
            if next < q {
                m.set(r, c, FieldElement(next as u16));
                break;
            }
            m.set(r, c, FieldElement::ZERO);
        }
    }
}

/// Visits every k-dimensional subspace of `F_q^n` exactly once, in a
/// deterministic order (pivot sets lexicographic, then free entries).
pub fn for_each_subspace<F: FnMut(&Matrix)>(
    field: &FieldRef,
    n: usize,
    k: usize,
    budget: u64,
    mut f: F,
) -> Result<(), LinalgError> {
    let count = census::gaussian_binomial(n as i64, k as i64, field.order());
    if count > BigInt::from(budget) {
        return Err(LinalgError::BudgetExceeded {
            q: field.order(),
            n,
            k,
            count,
            budget,
        });
    }
    for pivots in pivot_sets(n, k) {
        for_each_subspace_with_pivots(field, n, &pivots, &mut f);
    }
    Ok(())
}

/// Owned-iterator form of [`for_each_subspace`].
pub fn subspace_iter(
    field: &FieldRef,
    n: usize,
    k: usize,
    budget: u64,
) -> Result<impl Iterator<Item = Subspace>, LinalgError> {
    let mut all = Vec::new();
    for_each_subspace(field, n, k, budget, |m| {
        all.push(Subspace::from_rref_unchecked(m.clone()));
    })?;
    Ok(all.into_iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use proptest::prelude::*;

    fn f(q: u64) -> FieldRef {
        Field::new(q).unwrap()
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let m = Matrix::identity(f(5), 3);
        assert_eq!(m.rref(), m);
    }

    #[test]
    fn rref_two_step_elimination_over_f2() {
        let field = f(2);
        let m = Matrix::from_u64_rows(field.clone(), &[&[1, 1, 1, 1], &[1, 1, 0, 0]]);
        let expected = Matrix::from_u64_rows(field, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert_eq!(m.rref(), expected);
    }

    #[test]
    fn rref_drops_zero_rows() {
        let m = Matrix::zeros(f(3), 4, 3);
        let r = m.rref();
        assert_eq!(r.rows(), 0);
        assert_eq!(r.cols(), 3);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let k = Matrix::identity(f(3), 3).kernel();
        assert!(k.is_zero());
        assert_eq!(k.ambient_dim(), 3);
    }

    #[test]
    fn kernel_of_single_equations() {
        let field = f(2);
        let k = Matrix::from_u64_rows(field.clone(), &[&[1, 1]]).kernel();
        assert_eq!(
            k,
            Subspace::line(field, &[FieldElement::ONE, FieldElement::ONE])
        );

        let f5 = f(5);
        let k = Matrix::from_u64_rows(f5.clone(), &[&[1, 2]]).kernel();
        // 1 + 2*2 = 5 = 0 in F_5
        assert!(k.contains_vector(&[f5.el(1), f5.el(2)]));
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn intersection_examples_over_f2() {
        let field = f(2);
        let a = Subspace::from_generators(Matrix::from_u64_rows(field.clone(), &[&[1, 1, 0, 0]]));
        let b = Subspace::from_generators(Matrix::from_u64_rows(field.clone(), &[&[0, 0, 1, 1]]));
        assert!(a.intersect(&a).unwrap() == a);
        assert!(a.intersect(&b).unwrap().is_zero());

        let ab = a.sum(&b).unwrap();
        let ones = Subspace::from_generators(Matrix::from_u64_rows(field, &[&[1, 1, 1, 1]]));
        assert_eq!(ab.intersect(&ones).unwrap(), ones);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = Subspace::zero(f(2), 3);
        let b = Subspace::zero(f(2), 4);
        assert!(matches!(a.sum(&b), Err(LinalgError::DimensionMismatch(_))));
    }

    #[test]
    fn enumeration_counts_and_canonicity() {
        let field = f(2);
        let mut seen = std::collections::HashSet::new();
        for_each_subspace(&field, 4, 2, DEFAULT_ENUM_BUDGET, |m| {
            assert!(is_rref(m));
            assert!(seen.insert(Subspace::from_rref_unchecked(m.clone())));
        })
        .unwrap();
        assert_eq!(seen.len(), 35);

        assert_eq!(subspace_iter(&f(3), 3, 1, 1 << 20).unwrap().count(), 13);
        assert_eq!(subspace_iter(&f(7), 5, 0, 1 << 20).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_matches_gaussian_binomial() {
        for q in [2u64, 3] {
            let field = f(q);
            for n in 0..=5usize {
                for k in 0..=n {
                    let mut count = 0u64;
                    for_each_subspace(&field, n, k, DEFAULT_ENUM_BUDGET, |_| count += 1).unwrap();
                    let expected = census::gaussian_binomial(n as i64, k as i64, q);
                    assert_eq!(BigInt::from(count), expected, "q={} n={} k={}", q, n, k);
                }
            }
        }
        for q in [4u64, 5] {
            let field = f(q);
            for n in 0..=4usize {
                for k in 0..=n {
                    let mut count = 0u64;
                    for_each_subspace(&field, n, k, DEFAULT_ENUM_BUDGET, |_| count += 1).unwrap();
                    let expected = census::gaussian_binomial(n as i64, k as i64, q);
                    assert_eq!(BigInt::from(count), expected, "q={} n={} k={}", q, n, k);
                }
            }
        }
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let err = for_each_subspace(&f(2), 4, 2, 34, |_| {}).unwrap_err();
        match err {
            LinalgError::BudgetExceeded {
                q,
                n,
                k,
                count,
                budget,
            } => {
                assert_eq!((q, n, k, budget), (2, 4, 2, 34));
                assert_eq!(count, BigInt::from(35));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn pivot_partitions_recombine_to_the_sequential_stream() {
        let field = f(3);
        let mut sequential = Vec::new();
        for_each_subspace(&field, 4, 2, DEFAULT_ENUM_BUDGET, |m| {
            sequential.push(Subspace::from_rref_unchecked(m.clone()));
        })
        .unwrap();

        let mut merged = Vec::new();
        for pivots in pivot_sets(4, 2) {
            for_each_subspace_with_pivots(&field, 4, &pivots, |m| {
                merged.push(Subspace::from_rref_unchecked(m.clone()));
            });
        }
        assert_eq!(sequential, merged);
    }

    #[test]
    fn containment_antisymmetry_gives_equality() {
        let field = f(2);
        let mut subs = Vec::new();
        for_each_subspace(&field, 4, 2, DEFAULT_ENUM_BUDGET, |m| {
            subs.push(Subspace::from_rref_unchecked(m.clone()));
        })
        .unwrap();
        for a in &subs {
            for b in &subs {
                if a.contains(b) && b.contains(a) {
                    assert_eq!(a, b);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn prop_rref_is_idempotent_and_preserves_row_space(
            q in prop::sample::select(vec![2u64, 3, 4, 5]),
            rows in 1usize..4,
            cols in 1usize..5,
            seed in any::<u64>(),
        ) {
            let field = f(q);
            let mut state = seed;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) % q
            };
            let data: Vec<Vec<FieldElement>> = (0..rows)
                .map(|_| (0..cols).map(|_| field.el(next())).collect())
                .collect();
            let m = Matrix::from_rows(field.clone(), data);
            let r = m.rref();
            prop_assert_eq!(r.rref(), r.clone());
            // Same row space: mutual containment of the spanned subspaces.
            let a = Subspace::from_generators(m);
            let b = Subspace::from_rref_unchecked(r);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn prop_dim_formula_for_sum_and_intersection(
            q in prop::sample::select(vec![2u64, 3]),
            seed in any::<u64>(),
        ) {
            let field = f(q);
            let n = 4usize;
            let mut state = seed;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) % q
            };
            let mut rand_sub = |k: usize| {
                let data: Vec<Vec<FieldElement>> = (0..k)
                    .map(|_| (0..n).map(|_| field.el(next())).collect())
                    .collect();
                Subspace::from_generators(Matrix::from_rows(field.clone(), data))
            };
            let a = rand_sub(2);
            let b = rand_sub(2);
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            prop_assert!(s.contains(&a) && s.contains(&b));
            prop_assert!(a.contains(&i) && b.contains(&i));
        }
    }
}
