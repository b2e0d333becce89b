//! Exact Hamming weight statistics: self-orthogonal vector counts,
//! Krawtchouk coefficients, the MacWilliams transform, and aggregate /
//! average weight distributions of code families stratified by hull
//! dimension.
//!
//! Averages are exact rationals throughout; their sum over all weights must
//! equal `q^k` exactly, and the tests hold them to that.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bilinear::{BilinearSpace, TypeTag};
use crate::census;
use crate::gf::Field;
use crate::oracle::{self, OracleBudget};
use crate::util::{assert_nonnegative, binom, qpow, sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightsError {
    #[error("transform did not produce integers: {0}")]
    NonIntegralResult(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// The weight distribution of a code: `counts[i]` words of weight `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    counts: Vec<BigInt>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigInt>) -> WeightDistribution {
        assert!(!counts.is_empty(), "distribution needs length n + 1");
        WeightDistribution {
            n: counts.len() - 1,
            counts,
        }
    }

    pub fn of_code(
        code: &crate::linalg::Subspace,
        budget: &OracleBudget,
    ) -> Result<WeightDistribution, crate::oracle::OracleError> {
        Ok(WeightDistribution::new(oracle::weight_distribution(
            code, budget,
        )?))
    }

    #[inline]
    pub fn len_n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().cloned().sum()
    }
}

/// Counts self-orthogonal vectors of weight `i` in `F_q^n`, by inclusion /
/// exclusion over supports. Weight 1 always gives zero.
pub fn so_vector_count(q: u64, n: usize, i: usize) -> BigInt {
    if i > n {
        return BigInt::zero();
    }
    if i == 0 {
        return BigInt::one();
    }
    let mut inner = sign(i);
    for j in 1..=i {
        let lines = census::so_count_dot(j, 1, q);
        inner += binom(i, j) * sign(i - j) * (BigInt::from(q - 1) * lines + 1);
    }
    assert_nonnegative(binom(n, i) * inner, "self-orthogonal vector count")
}

/// Krawtchouk coefficient
/// `K_q(n, i, j) = sum_r (-1)^r (q-1)^(i-r) C(j, r) C(n-j, i-r)`.
pub fn krawtchouk(q: u64, n: usize, i: usize, j: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for r in 0..=i {
        let term = sign(r)
            * BigInt::from(q - 1).pow((i - r) as u32)
            * binom(j, r)
            * binom(n.saturating_sub(j), i - r);
        acc += term;
    }
    acc
}

/// MacWilliams transform: the weight distribution of the dual of a
/// k-dimensional code with distribution `w`.
pub fn macwilliams_transform(
    w: &WeightDistribution,
    k: usize,
    q: u64,
) -> Result<WeightDistribution, WeightsError> {
    let n = w.len_n();
    let qk = qpow(q, k);
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = BigInt::zero();
        for (j, aj) in w.counts().iter().enumerate() {
            if !aj.is_zero() {
                acc += aj * krawtchouk(q, n, i, j);
            }
        }
        let (quot, rem) = (&acc / &qk, &acc % &qk);
        if !rem.is_zero() || quot.is_negative() {
            return Err(WeightsError::NonIntegralResult(format!(
                "dual weight {i} evaluated to {acc}/{qk}"
            )));
        }
        out.push(quot);
    }
    Ok(WeightDistribution::new(out))
}

/// Aggregate weight distribution of all self-orthogonal `[n, k]_q` codes:
/// entry `j` counts weight-`j` words summed over the family.
pub fn aggregate_so_weights(q: u64, n: usize, k: usize) -> Result<Vec<BigInt>, WeightsError> {
    let tag = TypeTag::of_dot_space(q, n);
    let w = tag.witt_index(n);
    if k == 0 || k > w {
        return Err(WeightsError::PreconditionViolated(format!(
            "need 1 <= k <= w(q={q}, n={n}) = {w}, got k={k}"
        )));
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(census::self_orthogonal_count(tag, n, k, q));
    for j in 1..=n {
        let val = match tag {
            TypeTag::P | TypeTag::N1 | TypeTag::H | TypeTag::E => {
                let completions = census::so_count_with_witt(n - 2, k - 1, w - 1, q)
                    .expect("valid shrunken parameters");
                so_vector_count(q, n, j) * completions
            }
            TypeTag::N0na => {
                let inner = census::so_count_dot(n - 2, k - 1, q);
                if j < n {
                    so_vector_count(q, n, j) * inner
                } else {
                    // Weight-n words split into multiples of the all-one
                    // vector and the rest, which sit in different strata.
                    so_vector_count(q, n, n) * &inner
                        + BigInt::from(q - 1) * (census::so_count_dot(n - 1, k - 1, q) - inner)
                }
            }
            TypeTag::N0a => unreachable!("dot space is never alternating"),
        };
        out.push(assert_nonnegative(val, "aggregate weight entry"));
    }
    Ok(out)
}

/// Aggregate and exact-average weight distribution of the `[n, k]_q` codes
/// with hull dimension exactly `l`.
#[derive(Debug, Clone)]
pub struct AggregateWeightTable {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub aggregate: Vec<BigInt>,
    /// `aggregate / (number of codes in the stratum)`; `None` when the
    /// stratum is empty.
    pub average: Option<Vec<BigRational>>,
}

impl AggregateWeightTable {
    /// CSV rows `i,aggregate,average_num,average_den`, one per weight.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,aggregate,average_num,average_den\n");
        for i in 0..=self.n {
            let (num, den) = match &self.average {
                Some(avg) => (avg[i].numer().to_string(), avg[i].denom().to_string()),
                None => ("0".into(), "1".into()),
            };
            out.push_str(&format!("{},{},{},{}\n", i, self.aggregate[i], num, den));
        }
        out
    }
}

/// Computes the aggregate weight distribution of the hull-dimension-`l`
/// stratum by Moebius inversion over self-orthogonal strata combined with
/// the MacWilliams transform. Lengths below 3 are delegated to direct
/// enumeration, which is instantaneous there.
pub fn aggregate_hull_weights(
    q: u64,
    n: usize,
    k: usize,
    l: usize,
) -> Result<AggregateWeightTable, WeightsError> {
    if k == 0 || k > n || l > k {
        return Err(WeightsError::PreconditionViolated(format!(
            "need 1 <= k <= n and l <= k, got n={n}, k={k}, l={l}"
        )));
    }
    let sigma = census::hull_count_dot(n, k, l, q);
    let aggregate = if n < 3 {
        let field = Field::new(q).expect("valid order");
        let space = BilinearSpace::standard_dot(field, n);
        oracle::aggregate_weights(&space, k, l, &OracleBudget::default())
            .map_err(|e| WeightsError::PreconditionViolated(e.to_string()))?
    } else {
        aggregate_hull_weights_formula(q, n, k, l)?
    };
    if aggregate[0] != sigma {
        return Err(WeightsError::InternalInconsistency(format!(
            "aggregate[0] = {} but the census counts {} codes",
            aggregate[0], sigma
        )));
    }
    let average = if sigma.is_zero() {
        None
    } else {
        Some(
            aggregate
                .iter()
                .map(|a| BigRational::new(a.clone(), sigma.clone()))
                .collect(),
        )
    };
    Ok(AggregateWeightTable {
        q,
        n,
        k,
        l,
        aggregate,
        average,
    })
}

fn aggregate_hull_weights_formula(
    q: u64,
    n: usize,
    k: usize,
    l: usize,
) -> Result<Vec<BigInt>, WeightsError> {
    let tag = TypeTag::of_dot_space(q, n);
    let w = tag.witt_index(n);

    // Aggregate distributions of the self-orthogonal strata s = 0..=w; the
    // zero-dimensional stratum holds the zero code alone.
    let mut so_tables: Vec<Vec<BigInt>> = Vec::with_capacity(w + 1);
    let mut zero_row = vec![BigInt::zero(); n + 1];
    zero_row[0] = BigInt::one();
    so_tables.push(zero_row);
    for s in 1..=w {
        so_tables.push(aggregate_so_weights(q, n, s)?);
    }

    // Dual-side contributions via MacWilliams, exact after division by q^s.
    let mut dual_tables: Vec<Vec<BigInt>> = Vec::with_capacity(w + 1);
    for (s, table) in so_tables.iter().enumerate() {
        let qs = qpow(q, s);
        let mut row = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = BigInt::zero();
            for (j, aj) in table.iter().enumerate() {
                if !aj.is_zero() {
                    acc += aj * krawtchouk(q, n, i, j);
                }
            }
            let (quot, rem) = (&acc / &qs, &acc % &qs);
            if !rem.is_zero() {
                return Err(WeightsError::NonIntegralResult(format!(
                    "dual aggregate at s={s}, i={i} evaluated to {acc}/{qs}"
                )));
            }
            row.push(quot);
        }
        dual_tables.push(row);
    }

    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut acc = BigInt::zero();
        for s in l..=w {
            let nn = n as i64 - 2 * s as i64;
            let kk = k as i64 - s as i64;
            let inside = census::gaussian_binomial(nn, kk, q);
            let across = census::gaussian_binomial(nn - 1, kk - 1, q);
            let bracket = &inside - &across;
            // The bracket telescopes to a single Gaussian binomial; keep the
            // direct difference and assert the collapsed form agrees.
            let collapsed = if s == k && 2 * k == n {
                BigInt::one()
            } else {
                qpow(q, k.saturating_sub(s)) * census::gaussian_binomial(nn - 1, kk, q)
            };
            debug_assert_eq!(bracket, collapsed, "bracket identity at s={s}, i={i}");

            let b_term = bracket * &so_tables[s][i] + across * &dual_tables[s][i];
            acc += census::gaussian_binomial(s as i64, l as i64, q)
                * sign(s - l)
                * qpow(q, (s - l) * (s - l).saturating_sub(1) / 2)
                * b_term;
        }
        out.push(assert_nonnegative(acc, "aggregate hull weight entry"));
    }
    Ok(out)
}

/// Aggregate count of weight-`j` words over all `[n, k]_q` codes, with no
/// hull restriction.
pub fn aggregate_unrestricted_weight(q: u64, n: usize, k: usize, j: usize) -> BigInt {
    if j == 0 {
        return census::gaussian_binomial(n as i64, k as i64, q);
    }
    binom(n, j)
        * BigInt::from(q - 1).pow(j as u32)
        * census::gaussian_binomial(n as i64 - 1, k as i64 - 1, q)
}

/// Exact average of `aggregate_unrestricted_weight` over the Grassmannian.
pub fn average_unrestricted_weight(q: u64, n: usize, k: usize, j: usize) -> BigRational {
    BigRational::new(
        aggregate_unrestricted_weight(q, n, k, j),
        census::gaussian_binomial(n as i64, k as i64, q),
    )
}
