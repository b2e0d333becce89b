//! Exact counts of subspaces of finite bilinear spaces stratified by hull
//! dimension, over arbitrary-precision integers.
//!
//! Everything here is keyed by `(type tag, n, q)` rather than by a concrete
//! Gram matrix, so censuses can be queried without materializing a space.
//! All divisions in the closed forms are exact and asserted; alternating
//! sums are computed in signed integers and asserted nonnegative at the end.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bilinear::{BilinearSpace, TypeTag};
use crate::util::{assert_nonnegative, exact_div, qpow, sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("type {0} is not supported by this formula")]
    UnsupportedType(TypeTag),
    #[error("product did not evaluate to an integer: {0}")]
    NonIntegralResult(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Gaussian binomial: the number of k-dimensional subspaces of `F_q^n`.
/// Zero when `k < 0`, `n < 0`, or `k > n`.
pub fn gaussian_binomial(n: i64, k: i64, q: u64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 1..=k {
        out *= qpow(q, n - k + i) - 1;
        out = exact_div(out, &(qpow(q, i) - 1));
    }
    out
}

/// `a_k = prod_{i=1..k} (q^i - 1)`.
pub fn a_factor(k: usize, q: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * (qpow(q, i) - 1))
}

/// `b_{n,k} = prod_{i=1..k-1} (q^{n-2i} - 1)`.
pub fn b_factor(n: usize, k: usize, q: u64) -> BigInt {
    (1..k).fold(BigInt::one(), |acc, i| acc * (qpow(q, n - 2 * i) - 1))
}

/// The number of isotropic lines (one-dimensional self-orthogonal
/// subspaces) of an n-dimensional space of the given type.
pub fn isotropic_line_count(tag: TypeTag, n: usize, q: u64) -> BigInt {
    assert!(n >= 1);
    let qm1 = BigInt::from(q - 1);
    match tag {
        TypeTag::P | TypeTag::H | TypeTag::E => {
            let w = tag.witt_index(n);
            exact_div((qpow(q, w) - 1) * (qpow(q, n - w - 1) + 1), &qm1)
        }
        TypeTag::N0a => exact_div(qpow(q, n) - 1, &qm1),
        TypeTag::N1 | TypeTag::N0na => exact_div(qpow(q, n - 1) - 1, &qm1),
    }
}

/// The number of k-dimensional self-orthogonal subspaces of an
/// n-dimensional space of the given type, by the closed product formulas.
pub fn self_orthogonal_count(tag: TypeTag, n: usize, k: usize, q: u64) -> BigInt {
    assert!(n >= 1);
    if k == 0 {
        return BigInt::one();
    }
    let w = tag.witt_index(n);
    if k > w {
        return BigInt::zero();
    }
    let ak = a_factor(k, q);
    match tag {
        TypeTag::P | TypeTag::N1 => {
            let num = (1..=k).fold(BigInt::one(), |acc, i| acc * (qpow(q, n + 1 - 2 * i) - 1));
            exact_div(num, &ak)
        }
        TypeTag::H => {
            let head = qpow(q, n - k) + qpow(q, n / 2) - qpow(q, n / 2 - k) - 1;
            exact_div(head * b_factor(n, k, q), &ak)
        }
        TypeTag::E => {
            let head = qpow(q, n - k) - qpow(q, n / 2) + qpow(q, n / 2 - k) - 1;
            exact_div(head * b_factor(n, k, q), &ak)
        }
        TypeTag::N0a => {
            let num = (1..=k).fold(BigInt::one(), |acc, i| acc * (qpow(q, n - 2 * i + 2) - 1));
            exact_div(num, &ak)
        }
        TypeTag::N0na => {
            let head = qpow(q, n - k) - 1;
            exact_div(head * b_factor(n, k, q), &ak)
        }
    }
}

/// Self-orthogonal count for the dot space `F_q^n`; handles `n = 0` (where
/// only the zero subspace exists) so callers can shrink dimensions freely.
pub fn so_count_dot(n: usize, k: usize, q: u64) -> BigInt {
    if n == 0 {
        return if k == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    self_orthogonal_count(TypeTag::of_dot_space(q, n), n, k, q)
}

/// Independent recursive evaluation of the self-orthogonal count, one
/// isotropic-line layer at a time. Not defined for type `N0na`, where the
/// induced form's type depends on the subspace.
pub fn self_orthogonal_count_recursive(
    tag: TypeTag,
    n: usize,
    k: usize,
    q: u64,
) -> Result<BigInt, CensusError> {
    if tag == TypeTag::N0na {
        return Err(CensusError::UnsupportedType(tag));
    }
    if k == 0 {
        return Ok(BigInt::one());
    }
    let w = tag.witt_index(n);
    let mut acc = BigInt::one();
    for kk in 1..=k.min(w) {
        let num: BigInt = match tag {
            TypeTag::P | TypeTag::H | TypeTag::E => {
                (qpow(q, w - kk + 1) - 1) * (qpow(q, n - kk - w) + 1)
            }
            TypeTag::N0a => qpow(q, n - 2 * kk + 2) - 1,
            TypeTag::N1 => qpow(q, n - 2 * kk + 1) - 1,
            TypeTag::N0na => unreachable!(),
        };
        acc = exact_div(acc * num, &(qpow(q, kk) - 1));
    }
    if k > w {
        return Ok(BigInt::zero());
    }
    Ok(acc)
}

/// The count of k-dimensional self-orthogonal subspaces of a space of
/// dimension `n` and Witt index `w` of type `P`, `H`, `E`, or `N1`, with
/// `w` passed independently: quotient constructions shrink `n` and `w` in
/// lockstep and may leave a combination no dot space attains.
pub fn so_count_with_witt(n: usize, k: usize, w: usize, q: u64) -> Result<BigInt, CensusError> {
    if k == 0 {
        return Ok(BigInt::one());
    }
    if k > w || 2 * w > n {
        return Err(CensusError::PreconditionViolated(format!(
            "need 1 <= k <= w <= n/2, got n={n}, k={k}, w={w}"
        )));
    }
    let mut acc = BigRational::one();
    for i in 1..=k {
        let num = BigRational::from_integer((qpow(q, n - w - i) + 1) * (qpow(q, w - i + 1) - 1));
        acc *= num / BigRational::from_integer(qpow(q, i) - 1);
    }
    if !acc.is_integer() {
        return Err(CensusError::NonIntegralResult(format!(
            "so_count_with_witt(n={n}, k={k}, w={w}, q={q}) = {acc}"
        )));
    }
    Ok(acc.to_integer())
}

/// The number of k-dimensional subspaces with hull dimension exactly `l`,
/// by Moebius inversion over the self-orthogonal strata.
pub fn hull_count(tag: TypeTag, n: usize, k: usize, l: usize, q: u64) -> BigInt {
    if l > k || k > n {
        return BigInt::zero();
    }
    let w = tag.witt_index(n);
    let mut acc = BigInt::zero();
    for s in l..=w {
        let term = self_orthogonal_count(tag, n, s, q)
            * gaussian_binomial(s as i64, l as i64, q)
            * gaussian_binomial(n as i64 - 2 * s as i64, k as i64 - s as i64, q)
            * sign(s - l)
            * qpow(q, (s - l) * (s - l).saturating_sub(1) / 2);
        acc += term;
    }
    assert_nonnegative(acc, "hull stratum count")
}

/// Hull count for the dot space.
pub fn hull_count_dot(n: usize, k: usize, l: usize, q: u64) -> BigInt {
    hull_count(TypeTag::of_dot_space(q, n), n, k, l, q)
}

/// The sum of hull dimensions over all k-dimensional subspaces. Dividing by
/// the Gaussian binomial gives the average hull dimension.
pub fn total_hull_dim(tag: TypeTag, n: usize, k: usize, q: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for l in 1..=k {
        acc += BigInt::from(l) * hull_count(tag, n, k, l, q);
    }
    acc
}

/// For a non-alternating space of even characteristic: the number of
/// k-dimensional self-orthogonal subspaces on which the induced quotient
/// form becomes alternating.
pub fn alternating_induced_count(n: usize, k: usize, q: u64) -> Result<BigInt, CensusError> {
    if q % 2 != 0 || n % 2 != 0 {
        return Err(CensusError::UnsupportedType(TypeTag::of_dot_space(
            q,
            n.max(1),
        )));
    }
    if k < 1 || k > n / 2 {
        return Err(CensusError::PreconditionViolated(format!(
            "need 1 <= k <= n/2, got n={n}, k={k}"
        )));
    }
    let mut acc = BigInt::one();
    for i in 1..k {
        acc = exact_div(acc * (qpow(q, n - 2 * i) - 1), &(qpow(q, i) - 1));
    }
    Ok(acc)
}

/// The number of k-dimensional self-orthogonal codes of `F_q^n` containing
/// a fixed t-dimensional self-orthogonal subspace `U`. For the
/// non-alternating even-characteristic type the answer also depends on
/// whether the all-one vector lies in `U`.
pub fn so_containing_count(
    tag: TypeTag,
    n: usize,
    k: usize,
    t: usize,
    contains_all_one: bool,
    q: u64,
) -> Result<BigInt, CensusError> {
    let w = tag.witt_index(n);
    if t > k || k > w {
        return Err(CensusError::PreconditionViolated(format!(
            "need 0 <= t <= k <= w, got t={t}, k={k}, w={w}"
        )));
    }
    match tag {
        TypeTag::P | TypeTag::H | TypeTag::E | TypeTag::N1 => {
            so_count_with_witt(n - 2 * t, k - t, w - t, q)
        }
        TypeTag::N0na => {
            if contains_all_one {
                Ok(so_count_dot(n - 2 * t + 1, k - t, q))
            } else {
                Ok(so_count_dot(n - 2 * t, k - t, q))
            }
        }
        TypeTag::N0a => Err(CensusError::UnsupportedType(tag)),
    }
}

/// The number of k-dimensional self-orthogonal codes of `F_q^n` meeting the
/// coordinate subspace of a support set of size `t` nontrivially. The count
/// depends on `t` only, not on which coordinates are chosen.
pub fn coordinate_meeting_count(
    n: usize,
    k: usize,
    t: usize,
    q: u64,
) -> Result<BigInt, CensusError> {
    let tag = TypeTag::of_dot_space(q, n);
    let w = tag.witt_index(n);
    if t == 0 || t >= n || k == 0 || k > w {
        return Err(CensusError::PreconditionViolated(format!(
            "need 1 <= t < n and 1 <= k <= w, got n={n}, k={k}, t={t}, w={w}"
        )));
    }
    let w_hat = crate::bilinear::dot_witt_index(q, t);
    let mut acc = BigInt::zero();
    for i in 1..=k.min(w_hat) {
        // Codes containing an i-dimensional self-orthogonal subspace of the
        // coordinate block; the all-one vector never lies in one since t < n.
        let completions = so_containing_count(tag, n, k, i, false, q)?;
        acc += so_count_dot(t, i, q) * completions * sign(i - 1) * qpow(q, i * (i - 1) / 2);
    }
    Ok(assert_nonnegative(acc, "coordinate meeting count"))
}

/// One row of a census: an exact count keyed by its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    pub q: u64,
    pub type_tag: TypeTag,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub count: BigInt,
}

#[derive(Serialize, Deserialize)]
struct CensusEntryWire {
    q: u64,
    #[serde(rename = "type")]
    type_tag: TypeTag,
    n: usize,
    k: usize,
    l: usize,
    count: String,
}

impl Serialize for CensusEntry {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CensusEntryWire {
            q: self.q,
            type_tag: self.type_tag,
            n: self.n,
            k: self.k,
            l: self.l,
            count: self.count.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CensusEntry {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = CensusEntryWire::deserialize(deserializer)?;
        let count = wire
            .count
            .parse::<BigInt>()
            .map_err(|e| serde::de::Error::custom(format!("bad count: {e}")))?;
        Ok(CensusEntry {
            q: wire.q,
            type_tag: wire.type_tag,
            n: wire.n,
            k: wire.k,
            l: wire.l,
            count,
        })
    }
}

impl CensusEntry {
    /// Computes the entry for the given key.
    pub fn compute(q: u64, type_tag: TypeTag, n: usize, k: usize, l: usize) -> CensusEntry {
        CensusEntry {
            q,
            type_tag,
            n,
            k,
            l,
            count: hull_count(type_tag, n, k, l, q),
        }
    }
}

type CacheKey = (u64, TypeTag, usize, usize, usize);

/// A content-addressed memo of census entries backed by a JSON-lines file.
/// Purely an accelerator: deleting the file or running without one never
/// changes results. Inserts of identical values are idempotent, so
/// concurrent use is safe.
pub struct CensusCache {
    path: Option<PathBuf>,
    map: Mutex<HashMap<CacheKey, BigInt>>,
}

impl CensusCache {
    pub fn in_memory() -> CensusCache {
        CensusCache {
            path: None,
            map: Mutex::new(HashMap::new()),
        }
    }

    /// Opens (or prepares to create) a cache file.
    pub fn open(path: &Path) -> std::io::Result<CensusCache> {
        let mut map = HashMap::new();
        if path.exists() {
            let file = std::fs::File::open(path)?;
            for line in std::io::BufReader::new(file).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let entry: CensusEntry = serde_json::from_str(&line).map_err(|e| {
                    std::io::Error::new(
                        std::io::ErrorKind::InvalidData,
                        format!("corrupt census cache line: {e}"),
                    )
                })?;
                map.insert(
                    (entry.q, entry.type_tag, entry.n, entry.k, entry.l),
                    entry.count,
                );
            }
        }
        Ok(CensusCache {
            path: Some(path.to_path_buf()),
            map: Mutex::new(map),
        })
    }

    /// The hull count for the key, from the cache or computed and memoized.
    pub fn hull_count(&self, q: u64, tag: TypeTag, n: usize, k: usize, l: usize) -> BigInt {
        let key = (q, tag, n, k, l);
        if let Some(v) = self.map.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = hull_count(tag, n, k, l, q);
        self.map.lock().unwrap().insert(key, v.clone());
        v
    }

    /// Writes all entries back to the file, sorted by key for determinism.
    pub fn save(&self) -> std::io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let map = self.map.lock().unwrap();
        let mut keys: Vec<_> = map.keys().cloned().collect();
        keys.sort_by_key(|&(q, tag, n, k, l)| (q, tag.as_str(), n, k, l));
        let mut out = String::new();
        for key in keys {
            let (q, type_tag, n, k, l) = key;
            let entry = CensusEntry {
                q,
                type_tag,
                n,
                k,
                l,
                count: map[&key].clone(),
            };
            out.push_str(&serde_json::to_string(&entry).expect("census entry serializes"));
            out.push('\n');
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(out.as_bytes())
    }
}

/// Convenience: census of every hull dimension for a concrete space.
pub fn hull_counts_for_space(space: &BilinearSpace, k: usize) -> Vec<BigInt> {
    (0..=k)
        .map(|l| hull_count(space.type_tag(), space.dim(), k, l, space.field().order()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 2, 2), BigInt::from(35));
        assert_eq!(gaussian_binomial(7, 0, 5), BigInt::from(1));
        assert_eq!(gaussian_binomial(3, 1, 3), BigInt::from(13));
        assert_eq!(gaussian_binomial(3, 5, 2), BigInt::from(0));
        assert_eq!(gaussian_binomial(-1, 0, 2), BigInt::from(0));
        assert_eq!(gaussian_binomial(4, -1, 2), BigInt::from(0));
        // Symmetry.
        assert_eq!(gaussian_binomial(6, 2, 3), gaussian_binomial(6, 4, 3));
    }

    #[test]
    fn product_factors() {
        assert_eq!(a_factor(2, 2), BigInt::from(3));
        assert_eq!(a_factor(0, 7), BigInt::from(1));
        assert_eq!(b_factor(4, 2, 2), BigInt::from(3));
        assert_eq!(b_factor(4, 1, 2), BigInt::from(1));
    }

    #[test]
    fn isotropic_line_counts() {
        assert_eq!(isotropic_line_count(TypeTag::N0na, 4, 2), BigInt::from(7));
        assert_eq!(isotropic_line_count(TypeTag::N0a, 2, 2), BigInt::from(3));
        assert_eq!(isotropic_line_count(TypeTag::H, 2, 5), BigInt::from(2));
        assert_eq!(isotropic_line_count(TypeTag::P, 3, 3), BigInt::from(4));
    }

    #[test]
    fn self_orthogonal_counts() {
        assert_eq!(
            self_orthogonal_count(TypeTag::N0na, 4, 2, 2),
            BigInt::from(3)
        );
        assert_eq!(self_orthogonal_count(TypeTag::N1, 3, 1, 2), BigInt::from(3));
        assert_eq!(self_orthogonal_count(TypeTag::P, 3, 2, 3), BigInt::from(0));
        assert_eq!(
            self_orthogonal_count(TypeTag::E, 6, 2, 3),
            BigInt::from(280)
        );
        assert_eq!(
            self_orthogonal_count(TypeTag::H, 6, 2, 5),
            BigInt::from(4836)
        );
        // k = 1 closed forms agree with the line counts.
        for (tag, n, q) in [
            (TypeTag::P, 5, 3u64),
            (TypeTag::H, 4, 3),
            (TypeTag::E, 6, 3),
            (TypeTag::N1, 5, 2),
            (TypeTag::N0a, 4, 2),
            (TypeTag::N0na, 6, 2),
        ] {
            assert_eq!(
                self_orthogonal_count(tag, n, 1, q),
                isotropic_line_count(tag, n, q),
                "tag={tag:?} n={n} q={q}"
            );
        }
    }

    #[test]
    fn recursion_matches_closed_forms() {
        for q in [2u64, 3, 5] {
            for n in 2..=8usize {
                let tags: &[TypeTag] = if q % 2 == 0 {
                    if n % 2 == 0 {
                        &[TypeTag::N0a]
                    } else {
                        &[TypeTag::N1]
                    }
                } else if n % 2 == 0 {
                    &[TypeTag::H, TypeTag::E]
                } else {
                    &[TypeTag::P]
                };
                for &tag in tags {
                    for k in 0..=tag.witt_index(n) {
                        assert_eq!(
                            self_orthogonal_count_recursive(tag, n, k, q).unwrap(),
                            self_orthogonal_count(tag, n, k, q),
                            "tag={tag:?} n={n} k={k} q={q}"
                        );
                    }
                }
            }
        }
        assert_eq!(
            self_orthogonal_count_recursive(TypeTag::N0na, 4, 2, 2).unwrap_err(),
            CensusError::UnsupportedType(TypeTag::N0na)
        );
    }

    #[test]
    fn witt_parameterized_count() {
        assert_eq!(so_count_with_witt(4, 2, 2, 2).unwrap(), BigInt::from(6));
        assert_eq!(so_count_with_witt(9, 0, 4, 3).unwrap(), BigInt::from(1));
        assert_eq!(so_count_with_witt(3, 1, 1, 3).unwrap(), BigInt::from(4));
        assert_eq!(
            so_count_with_witt(3, 1, 1, 3).unwrap(),
            self_orthogonal_count(TypeTag::P, 3, 1, 3)
        );
        // Equals the self-orthogonal count whenever w is the true Witt index.
        for (tag, n, q) in [
            (TypeTag::P, 7, 3u64),
            (TypeTag::H, 6, 5),
            (TypeTag::E, 6, 3),
            (TypeTag::N1, 7, 4),
        ] {
            let w = tag.witt_index(n);
            for k in 0..=w {
                assert_eq!(
                    so_count_with_witt(n, k, w, q).unwrap(),
                    self_orthogonal_count(tag, n, k, q),
                    "tag={tag:?} n={n} k={k}"
                );
            }
        }
        assert!(so_count_with_witt(4, 3, 2, 2).is_err());
    }

    #[test]
    fn hull_counts_over_f2_dim4() {
        assert_eq!(hull_count(TypeTag::N0na, 4, 2, 0, 2), BigInt::from(20));
        assert_eq!(hull_count(TypeTag::N0na, 4, 2, 1, 2), BigInt::from(12));
        assert_eq!(hull_count(TypeTag::N0na, 4, 2, 2, 2), BigInt::from(3));
        assert_eq!(
            hull_count(TypeTag::N0na, 4, 2, 2, 2),
            self_orthogonal_count(TypeTag::N0na, 4, 2, 2)
        );
    }

    #[test]
    fn hull_count_vanishes_past_the_feasible_range() {
        for q in [2u64, 3, 4, 5, 7] {
            for n in 1..=6usize {
                let tag = TypeTag::of_dot_space(q, n);
                let w = tag.witt_index(n);
                for k in 0..=n {
                    for l in 0..=k {
                        if l > k.min(n - k) || l > w {
                            assert_eq!(
                                hull_count(tag, n, k, l, q),
                                BigInt::zero(),
                                "q={q} n={n} k={k} l={l}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hull_counts_partition_the_grassmannian() {
        for q in [2u64, 3, 4, 5, 7] {
            for n in 1..=6usize {
                let tag = TypeTag::of_dot_space(q, n);
                for k in 0..=n {
                    let total: BigInt = (0..=k).map(|l| hull_count(tag, n, k, l, q)).sum();
                    assert_eq!(
                        total,
                        gaussian_binomial(n as i64, k as i64, q),
                        "q={q} n={n} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn total_hull_dim_example() {
        assert_eq!(total_hull_dim(TypeTag::N0na, 4, 2, 2), BigInt::from(18));
        assert_eq!(total_hull_dim(TypeTag::N0na, 4, 0, 2), BigInt::from(0));
    }

    #[test]
    fn alternating_induced_counts() {
        assert_eq!(alternating_induced_count(4, 2, 2).unwrap(), BigInt::from(3));
        assert_eq!(alternating_induced_count(6, 1, 2).unwrap(), BigInt::from(1));
        assert_eq!(
            alternating_induced_count(6, 2, 2).unwrap(),
            BigInt::from(15)
        );
        assert!(alternating_induced_count(5, 1, 2).is_err());
        assert!(alternating_induced_count(4, 1, 3).is_err());
    }

    #[test]
    fn containment_counts() {
        assert_eq!(
            so_containing_count(TypeTag::N0na, 4, 2, 1, true, 2).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            so_containing_count(TypeTag::N0na, 4, 2, 1, false, 2).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            so_containing_count(TypeTag::N0na, 4, 2, 0, false, 2).unwrap(),
            self_orthogonal_count(TypeTag::N0na, 4, 2, 2)
        );
        // The all-one count at t=1 is the alternating-induced count.
        for (n, q) in [(4usize, 2u64), (6, 2), (4, 4), (6, 4)] {
            let k = n / 2;
            assert_eq!(
                so_containing_count(TypeTag::N0na, n, k, 1, true, q).unwrap(),
                alternating_induced_count(n, k, q).unwrap(),
                "n={n} q={q}"
            );
        }
        // delta coefficients: containment counts that avoid the all-one
        // vector, including the odd-characteristic branch.
        assert_eq!(
            so_containing_count(TypeTag::H, 6, 2, 1, false, 5).unwrap(),
            BigInt::from(36)
        );
    }

    #[test]
    fn coordinate_meeting_examples() {
        assert_eq!(
            coordinate_meeting_count(4, 2, 2, 2).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            coordinate_meeting_count(4, 2, 1, 2).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            coordinate_meeting_count(6, 1, 3, 2).unwrap(),
            BigInt::from(3)
        );
        assert!(coordinate_meeting_count(4, 2, 4, 2).is_err());
        assert!(coordinate_meeting_count(4, 3, 2, 2).is_err());
    }

    #[test]
    fn census_entry_round_trips_as_json() {
        let entry = CensusEntry::compute(2, TypeTag::N0na, 4, 2, 0);
        let json = serde_json::to_string(&entry).unwrap();
        assert!(json.contains("\"count\":\"20\""));
        assert!(json.contains("\"type\":\"N0na\""));
        let back: CensusEntry = serde_json::from_str(&json).unwrap();
        assert_eq!(back, entry);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("census-cache-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.jsonl");
        let _ = std::fs::remove_file(&path);

        let cache = CensusCache::open(&path).unwrap();
        let v = cache.hull_count(2, TypeTag::N0na, 4, 2, 0);
        assert_eq!(v, BigInt::from(20));
        cache.save().unwrap();

        let cache2 = CensusCache::open(&path).unwrap();
        assert_eq!(
            cache2.hull_count(2, TypeTag::N0na, 4, 2, 0),
            BigInt::from(20)
        );
        std::fs::remove_file(&path).unwrap();
    }
}
