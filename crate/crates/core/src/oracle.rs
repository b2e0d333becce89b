//! Brute-force ground truth by exhaustive enumeration.
//!
//! Every count and distribution the closed formulas produce can be recomputed
//! here by scanning all subspaces (or all vectors) of a small space. The
//! oracle never consults the formulas, so agreement between the two is a
//! meaningful check. Budgets abort enumeration with a structured error
//! instead of silently truncating.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::bilinear::BilinearSpace;
use crate::census;
use crate::gf::{FieldElement, FieldRef};
use crate::linalg::{self, Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("enumeration budget exceeded for q={q}, n={n}, k={k}: {need} needed, cap {cap}")]
    BudgetExceeded {
        q: u64,
        n: usize,
        k: usize,
        need: BigInt,
        cap: u64,
    },
    #[error("the zero code has no minimum distance")]
    ZeroCode,
}

/// Caps on how much the oracle is willing to enumerate.
#[derive(Debug, Clone)]
pub struct OracleBudget {
    /// Cap on the number of subspaces visited per enumeration.
    pub max_subspaces: u64,
    /// Cap on the number of codewords (or vectors) visited per scan.
    pub max_codewords: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_subspaces: 100_000_000,
            max_codewords: 10_000_000,
        }
    }
}

impl OracleBudget {
    fn check_subspaces(&self, q: u64, n: usize, k: usize) -> Result<(), OracleError> {
        let need = census::gaussian_binomial(n as i64, k as i64, q);
        if need > BigInt::from(self.max_subspaces) {
            return Err(OracleError::BudgetExceeded {
                q,
                n,
                k,
                need,
                cap: self.max_subspaces,
            });
        }
        Ok(())
    }

    fn check_words(&self, q: u64, n: usize, k: usize) -> Result<(), OracleError> {
        let need = BigInt::from(q).pow(k as u32);
        if need > BigInt::from(self.max_codewords) {
            return Err(OracleError::BudgetExceeded {
                q,
                n,
                k,
                need,
                cap: self.max_codewords,
            });
        }
        Ok(())
    }
}

fn enumerate(
    space: &BilinearSpace,
    k: usize,
    budget: &OracleBudget,
    f: impl FnMut(&Matrix),
) -> Result<(), OracleError> {
    let q = space.field().order();
    let n = space.dim();
    budget.check_subspaces(q, n, k)?;
    linalg::for_each_subspace(space.field(), n, k, budget.max_subspaces, f)
        .expect("budget was checked");
    Ok(())
}

/// Reusable scratch for hull-dimension computations in enumeration loops.
struct HullScratch {
    mg: Vec<FieldElement>,
    rg: Vec<FieldElement>,
}

impl HullScratch {
    fn new() -> Self {
        HullScratch {
            mg: Vec::new(),
            rg: Vec::new(),
        }
    }

    /// `dim(C ∩ C^perp)` = k - rank of the restricted Gram matrix.
    fn hull_dim(&mut self, space: &BilinearSpace, basis: &Matrix) -> usize {
        let f = space.field();
        let k = basis.rows();
        let n = basis.cols();
        let gram = space.gram();
        self.mg.clear();
        self.mg.resize(k * n, FieldElement::ZERO);
        for r in 0..k {
            for i in 0..n {
                let a = basis.at(r, i);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let g = gram.at(i, c);
                    if !g.is_zero() {
                        self.mg[r * n + c] = f.add(self.mg[r * n + c], f.mul(a, g));
                    }
                }
            }
        }
        self.rg.clear();
        self.rg.resize(k * k, FieldElement::ZERO);
        for r in 0..k {
            for c in 0..k {
                let mut acc = FieldElement::ZERO;
                for i in 0..n {
                    let a = self.mg[r * n + i];
                    if !a.is_zero() {
                        acc = f.add(acc, f.mul(a, basis.at(c, i)));
                    }
                }
                self.rg[r * k + c] = acc;
            }
        }
        // Rank of the k-by-k restricted Gram by in-place elimination.
        let mut rank = 0;
        for col in 0..k {
            let Some(sel) = (rank..k).find(|&r| !self.rg[r * k + col].is_zero()) else {
                continue;
            };
            if sel != rank {
                for c in 0..k {
                    self.rg.swap(rank * k + c, sel * k + c);
                }
            }
            let inv = f.inv(self.rg[rank * k + col]).expect("nonzero pivot");
            for r in (rank + 1)..k {
                let factor = f.mul(self.rg[r * k + col], inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..k {
                    let t = f.mul(factor, self.rg[rank * k + c]);
                    self.rg[r * k + c] = f.sub(self.rg[r * k + c], t);
                }
            }
            rank += 1;
        }
        k - rank
    }

    /// Self-orthogonality check with early exit: `B(r_i, r_j) = 0` for all
    /// `i <= j`.
    fn is_self_orthogonal(&mut self, space: &BilinearSpace, basis: &Matrix) -> bool {
        let f = space.field();
        let k = basis.rows();
        let n = basis.cols();
        let gram = space.gram();
        for i in 0..k {
            // row_i * G once, then dot against rows j >= i.
            self.mg.clear();
            self.mg.resize(n, FieldElement::ZERO);
            for a_idx in 0..n {
                let a = basis.at(i, a_idx);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let g = gram.at(a_idx, c);
                    if !g.is_zero() {
                        self.mg[c] = f.add(self.mg[c], f.mul(a, g));
                    }
                }
            }
            for j in i..k {
                let mut acc = FieldElement::ZERO;
                for c in 0..n {
                    let a = self.mg[c];
                    if !a.is_zero() {
                        acc = f.add(acc, f.mul(a, basis.at(j, c)));
                    }
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Counts k-dimensional subspaces with hull dimension exactly `l`.
pub fn hull_count(
    space: &BilinearSpace,
    k: usize,
    l: usize,
    budget: &OracleBudget,
) -> Result<BigInt, OracleError> {
    if l > k {
        return Ok(BigInt::zero());
    }
    Ok(hull_counts(space, k, budget)?.swap_remove(l))
}

/// Counts k-dimensional subspaces of every hull dimension `0..=k` in one
/// pass.
pub fn hull_counts(
    space: &BilinearSpace,
    k: usize,
    budget: &OracleBudget,
) -> Result<Vec<BigInt>, OracleError> {
    let mut counts = vec![0u64; k + 1];
    let mut scratch = HullScratch::new();
    enumerate(space, k, budget, |m| {
        counts[scratch.hull_dim(space, m)] += 1;
    })?;
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// Sum of hull dimensions over all k-dimensional subspaces.
pub fn total_hull_dim(
    space: &BilinearSpace,
    k: usize,
    budget: &OracleBudget,
) -> Result<BigInt, OracleError> {
    let counts = hull_counts(space, k, budget)?;
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(l, c)| BigInt::from(l) * c)
        .sum())
}

/// All self-orthogonal k-dimensional subspaces, in enumeration order.
pub fn self_orthogonal_subspaces(
    space: &BilinearSpace,
    k: usize,
    budget: &OracleBudget,
) -> Result<Vec<Subspace>, OracleError> {
    let mut out = Vec::new();
    let mut scratch = HullScratch::new();
    enumerate(space, k, budget, |m| {
        if scratch.is_self_orthogonal(space, m) {
            out.push(Subspace::from_rref_unchecked(m.clone()));
        }
    })?;
    Ok(out)
}

/// The Witt index by exhaustive search: the largest `k` admitting a
/// self-orthogonal k-dimensional subspace. Also asserts the defining
/// guarantee that no self-orthogonal subspace of smaller dimension is
/// maximal, by extending each one found.
pub fn witt_index(space: &BilinearSpace, budget: &OracleBudget) -> Result<usize, OracleError> {
    let n = space.dim();
    let mut w = 0;
    for k in 1..=n / 2 {
        let mut found = false;
        let mut scratch = HullScratch::new();
        enumerate(space, k, budget, |m| {
            found = found || scratch.is_self_orthogonal(space, m);
        })?;
        if found {
            w = k;
        } else {
            break;
        }
    }
    // Every self-orthogonal subspace of dimension below w must extend.
    for k in 0..w {
        for c in self_orthogonal_subspaces(space, k, budget)? {
            assert!(
                extends_to_larger_isotropic(space, &c),
                "found a maximal self-orthogonal subspace of dimension {k} < {w}"
            );
        }
    }
    Ok(w)
}

/// Whether some isotropic vector of `C^perp` outside `C` extends `C`.
fn extends_to_larger_isotropic(space: &BilinearSpace, c: &Subspace) -> bool {
    let perp = space.orthogonal(c).expect("same ambient");
    let f = space.field();
    let q = f.order();
    let rows = perp.dim();
    let n = space.dim();
    // Scan combinations of the basis of C^perp.
    let mut digits = vec![0u64; rows];
    let mut v = vec![FieldElement::ZERO; n];
    loop {
        // Advance the odometer.
        let mut pos = 0;
        loop {
            if pos == rows {
                return false;
            }
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        for slot in v.iter_mut() {
            *slot = FieldElement::ZERO;
        }
        for (r, &d) in digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let coeff = f.el(d);
            for (slot, &b) in v.iter_mut().zip(perp.basis().row(r)) {
                *slot = f.add(*slot, f.mul(coeff, b));
            }
        }
        if space.bilinear(&v, &v).is_zero() && !c.contains_vector(&v) {
            return true;
        }
    }
}

/// Iterates the words of a code via generator-row updates, visiting each of
/// the `q^k` codewords exactly once and reporting its Hamming weight.
fn for_each_codeword_weight(field: &FieldRef, basis: &Matrix, mut f: impl FnMut(usize)) -> u64 {
    let q = field.order();
    let k = basis.rows();
    let n = basis.cols();
    if k == 0 {
        f(0);
        return 1;
    }
    // delta[r][c] = (c+1 mod q) * row_r - c * row_r, so each odometer step
    // updates the current word in O(n).
    let mut delta = vec![FieldElement::ZERO; k * (q as usize) * n];
    for r in 0..k {
        for c in 0..q as usize {
            let cur = field.el(c as u64);
            let next = field.el(((c + 1) as u64) % q);
            let step = field.sub(next, cur);
            for i in 0..n {
                delta[(r * q as usize + c) * n + i] = field.mul(step, basis.at(r, i));
            }
        }
    }
    let mut digits = vec![0usize; k];
    let mut word = vec![FieldElement::ZERO; n];
    let mut visited = 0u64;
    loop {
        f(word.iter().filter(|x| !x.is_zero()).count());
        visited += 1;
        let mut pos = 0;
        loop {
            if pos == k {
                return visited;
            }
            let d = digits[pos];
            let base = (pos * q as usize + d) * n;
            for i in 0..n {
                let dv = delta[base + i];
                if !dv.is_zero() {
                    word[i] = field.add(word[i], dv);
                }
            }
            digits[pos] = (d + 1) % q as usize;
            if digits[pos] != 0 {
                break;
            }
            pos += 1;
        }
    }
}

/// Exact weight distribution of a code by codeword enumeration.
pub fn weight_distribution(
    code: &Subspace,
    budget: &OracleBudget,
) -> Result<Vec<BigInt>, OracleError> {
    let field = code.field().clone();
    budget.check_words(field.order(), code.ambient_dim(), code.dim())?;
    let mut counts = vec![0u64; code.ambient_dim() + 1];
    for_each_codeword_weight(&field, code.basis(), |w| counts[w] += 1);
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// Minimum Hamming distance of a nonzero code.
pub fn min_distance(code: &Subspace, budget: &OracleBudget) -> Result<usize, OracleError> {
    if code.dim() == 0 {
        return Err(OracleError::ZeroCode);
    }
    let field = code.field().clone();
    budget.check_words(field.order(), code.ambient_dim(), code.dim())?;
    let mut best = usize::MAX;
    for_each_codeword_weight(&field, code.basis(), |w| {
        if w != 0 && w < best {
            best = w;
        }
    });
    Ok(best)
}

/// Aggregate weight distribution over all k-dimensional subspaces with hull
/// dimension exactly `l`.
pub fn aggregate_weights(
    space: &BilinearSpace,
    k: usize,
    l: usize,
    budget: &OracleBudget,
) -> Result<Vec<BigInt>, OracleError> {
    let q = space.field().order();
    let n = space.dim();
    budget.check_words(q, n, k)?;
    let field = space.field().clone();
    let mut counts = vec![0u64; n + 1];
    let mut scratch = HullScratch::new();
    enumerate(space, k, budget, |m| {
        if scratch.hull_dim(space, m) == l {
            for_each_codeword_weight(&field, m, |w| counts[w] += 1);
        }
    })?;
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// Aggregate weight distributions of every hull stratum `l = 0..=k` in a
/// single enumeration pass. Row `l` matches `aggregate_weights(.., l, ..)`.
pub fn aggregate_weights_all(
    space: &BilinearSpace,
    k: usize,
    budget: &OracleBudget,
) -> Result<Vec<Vec<BigInt>>, OracleError> {
    let q = space.field().order();
    let n = space.dim();
    budget.check_words(q, n, k)?;
    let field = space.field().clone();
    let mut counts = vec![vec![0u64; n + 1]; k + 1];
    let mut scratch = HullScratch::new();
    enumerate(space, k, budget, |m| {
        let l = scratch.hull_dim(space, m);
        let row = &mut counts[l];
        for_each_codeword_weight(&field, m, |w| row[w] += 1);
    })?;
    Ok(counts
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect())
}

/// Census of low-distance self-orthogonal codes in the dot space.
#[derive(Debug, Clone)]
pub struct LowDistanceCensus {
    /// Self-orthogonal codes with minimum distance at most `d - 1`.
    pub below: BigInt,
    /// All self-orthogonal codes of the given dimension.
    pub total: BigInt,
    /// Self-orthogonal codes missing the Singleton bound, `d(C) <= n - k`.
    pub non_mds: BigInt,
}

/// Scans all self-orthogonal `[n, k]` codes over `F_q` and counts those of
/// minimum distance at most `d - 1`, plus the non-MDS ones.
pub fn low_distance_so_census(
    field: &FieldRef,
    n: usize,
    k: usize,
    d: usize,
    budget: &OracleBudget,
) -> Result<LowDistanceCensus, OracleError> {
    let space = BilinearSpace::standard_dot(field.clone(), n);
    let q = field.order();
    budget.check_words(q, n, k)?;
    let mut below = 0u64;
    let mut total = 0u64;
    let mut non_mds = 0u64;
    let mut scratch = HullScratch::new();
    enumerate(&space, k, budget, |m| {
        if !scratch.is_self_orthogonal(&space, m) {
            return;
        }
        total += 1;
        let mut dmin = usize::MAX;
        for_each_codeword_weight(field, m, |w| {
            if w != 0 && w < dmin {
                dmin = w;
            }
        });
        if dmin < d {
            below += 1;
        }
        if dmin <= n - k {
            non_mds += 1;
        }
    })?;
    Ok(LowDistanceCensus {
        below: BigInt::from(below),
        total: BigInt::from(total),
        non_mds: BigInt::from(non_mds),
    })
}

/// Counts all `[n, k]` codes over `F_q` (no orthogonality restriction)
/// with minimum distance at most `d - 1`.
pub fn low_distance_count(
    field: &FieldRef,
    n: usize,
    k: usize,
    d: usize,
    budget: &OracleBudget,
) -> Result<BigInt, OracleError> {
    let space = BilinearSpace::standard_dot(field.clone(), n);
    budget.check_words(field.order(), n, k)?;
    let mut below = 0u64;
    enumerate(&space, k, budget, |m| {
        let mut dmin = usize::MAX;
        for_each_codeword_weight(field, m, |w| {
            if w != 0 && w < dmin {
                dmin = w;
            }
        });
        if dmin < d {
            below += 1;
        }
    })?;
    Ok(BigInt::from(below))
}

/// Counts self-orthogonal vectors of each Hamming weight in the dot space.
pub fn so_vector_counts(
    field: &FieldRef,
    n: usize,
    budget: &OracleBudget,
) -> Result<Vec<BigInt>, OracleError> {
    budget.check_words(field.order(), n, n)?;
    let mut counts = vec![0u64; n + 1];
    let q = field.order();
    // Walk all vectors of F_q^n, testing v . v = 0.
    let mut v = vec![FieldElement::ZERO; n];
    loop {
        let mut acc = FieldElement::ZERO;
        let mut wt = 0usize;
        for &x in &v {
            if !x.is_zero() {
                wt += 1;
                acc = field.add(acc, field.mul(x, x));
            }
        }
        if acc.is_zero() {
            counts[wt] += 1;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(counts.into_iter().map(BigInt::from).collect());
            }
            let next = v[pos].0 as u64 + 1;
            if next < q {
                v[pos] = field.el(next);
                break;
            }
            v[pos] = FieldElement::ZERO;
            pos += 1;
        }
    }
}

/// Counts self-orthogonal weight-`i` vectors in the dot space.
pub fn so_vector_count(
    field: &FieldRef,
    n: usize,
    i: usize,
    budget: &OracleBudget,
) -> Result<BigInt, OracleError> {
    if i > n {
        return Ok(BigInt::zero());
    }
    Ok(so_vector_counts(field, n, budget)?.swap_remove(i))
}

/// Counts self-orthogonal k-dimensional codes meeting the coordinate
/// subspace supported on `support` nontrivially. `C` meets it iff the basis
/// columns outside the support drop rank.
pub fn coordinate_meeting_count(
    field: &FieldRef,
    n: usize,
    k: usize,
    support: &[usize],
    budget: &OracleBudget,
) -> Result<BigInt, OracleError> {
    let space = BilinearSpace::standard_dot(field.clone(), n);
    let in_support = {
        let mut v = vec![false; n];
        for &s in support {
            v[s] = true;
        }
        v
    };
    let outside: Vec<usize> = (0..n).filter(|&c| !in_support[c]).collect();
    let mut count = 0u64;
    let mut scratch = HullScratch::new();
    enumerate(&space, k, budget, |m| {
        if !scratch.is_self_orthogonal(&space, m) {
            return;
        }
        let restricted = Matrix::from_rows(
            field.clone(),
            (0..k)
                .map(|r| outside.iter().map(|&c| m.at(r, c)).collect())
                .collect(),
        )
        .with_cols_hint(outside.len());
        if restricted.rank() < k {
            count += 1;
        }
    })?;
    Ok(BigInt::from(count))
}

/// Counts self-orthogonal k-dimensional subspaces containing `u`.
pub fn so_containing_count(
    space: &BilinearSpace,
    k: usize,
    u: &Subspace,
    budget: &OracleBudget,
) -> Result<BigInt, OracleError> {
    let mut count = BigInt::zero();
    for c in self_orthogonal_subspaces(space, k, budget)? {
        if c.contains(u) {
            count += 1;
        }
    }
    Ok(count)
}
