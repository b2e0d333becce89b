//! Leading-order predictions in the field size `q` for the census and
//! weight quantities, plus convergence diagnostics comparing a prediction
//! against exact values along a ladder of admissible field orders.
//!
//! Predictions are `(coefficient, exponent, residue class)` triples handled
//! in exact rational arithmetic, never floating point, so the diagnostics
//! have no tolerance knobs to tune. A few predictions are exact rather than
//! asymptotic (notably weight-2 counts) and are flagged as such.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::bilinear::TypeTag;
use crate::util::binom;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsympError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("q = {q} is not admissible for residue class {class:?}")]
    ResidueMismatch { q: u64, class: QResidue },
}

/// Residue classes of the field order along which a limit is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QResidue {
    Any,
    Even,
    Odd,
    OneMod4,
    ThreeMod4,
}

impl QResidue {
    pub fn admits(self, q: u64) -> bool {
        match self {
            QResidue::Any => true,
            QResidue::Even => q % 2 == 0,
            QResidue::Odd => q % 2 == 1,
            QResidue::OneMod4 => q % 4 == 1,
            QResidue::ThreeMod4 => q % 4 == 3,
        }
    }

    /// The default prime-power ladder used by convergence diagnostics.
    pub fn default_ladder(self) -> Vec<u64> {
        match self {
            QResidue::Even => vec![2, 4, 8, 16, 32],
            QResidue::OneMod4 => vec![5, 9, 13, 17, 25],
            QResidue::ThreeMod4 => vec![3, 7, 11, 19, 23],
            QResidue::Odd => vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25],
            QResidue::Any => vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25],
        }
    }

    pub fn parse(s: &str) -> Option<QResidue> {
        match s {
            "any" => Some(QResidue::Any),
            "even" => Some(QResidue::Even),
            "odd" => Some(QResidue::Odd),
            "1mod4" => Some(QResidue::OneMod4),
            "3mod4" => Some(QResidue::ThreeMod4),
            _ => None,
        }
    }
}

/// How a prediction should be evaluated at a concrete q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictionKind {
    /// `coefficient * q^exponent`, correct to leading order as q grows.
    Asymptotic,
    /// Exactly zero for every admissible q, not just in the limit.
    ExactZero,
    /// Exactly `coefficient * (q - 1)`: weight-2 vector counts.
    ExactScaledQMinus1,
}

/// A leading-order prediction for a quantity depending on q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticPrediction {
    pub coefficient: BigRational,
    pub q_exponent: i64,
    pub residue: QResidue,
    pub kind: PredictionKind,
}

impl AsymptoticPrediction {
    fn asymptotic(coefficient: BigRational, q_exponent: i64, residue: QResidue) -> Self {
        AsymptoticPrediction {
            coefficient,
            q_exponent,
            residue,
            kind: PredictionKind::Asymptotic,
        }
    }

    fn exact_zero(residue: QResidue) -> Self {
        AsymptoticPrediction {
            coefficient: BigRational::zero(),
            q_exponent: 0,
            residue,
            kind: PredictionKind::ExactZero,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind != PredictionKind::Asymptotic
    }

    /// The predicted value at a concrete field order.
    pub fn evaluate(&self, q: u64) -> BigRational {
        match self.kind {
            PredictionKind::ExactZero => BigRational::zero(),
            PredictionKind::ExactScaledQMinus1 => {
                &self.coefficient * BigRational::from_integer(BigInt::from(q - 1))
            }
            PredictionKind::Asymptotic => {
                let e = self.q_exponent;
                let power = if e >= 0 {
                    BigRational::from_integer(BigInt::from(q).pow(e as u32))
                } else {
                    BigRational::new(BigInt::one(), BigInt::from(q).pow((-e) as u32))
                };
                &self.coefficient * power
            }
        }
    }
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn residue_for_type(tag: TypeTag, n: usize) -> QResidue {
    match tag {
        TypeTag::N1 | TypeTag::N0a | TypeTag::N0na => QResidue::Even,
        TypeTag::P => QResidue::Odd,
        // Hyperbolic needs q = 1 mod 4 when n = 2 mod 4; elliptic needs
        // q = 3 mod 4 (and n = 2 mod 4).
        TypeTag::H => {
            if n % 4 == 0 {
                QResidue::Odd
            } else {
                QResidue::OneMod4
            }
        }
        TypeTag::E => QResidue::ThreeMod4,
    }
}

fn binom2(k: usize) -> i64 {
    (k * (k + 1) / 2) as i64
}

/// Leading order of the proportion of self-orthogonal k-dimensional
/// subspaces among all k-dimensional subspaces.
pub fn so_density_prediction(
    tag: TypeTag,
    n: usize,
    k: usize,
) -> Result<AsymptoticPrediction, AsympError> {
    let w = tag.witt_index(n);
    if k == 0 || k > w {
        return Err(AsympError::PreconditionViolated(format!(
            "need 1 <= k <= w = {w}, got k={k}"
        )));
    }
    let residue = residue_for_type(tag, n);
    let pred = match tag {
        TypeTag::N0a => {
            AsymptoticPrediction::asymptotic(BigRational::one(), k as i64 - binom2(k), residue)
        }
        TypeTag::H if 2 * k == n => {
            AsymptoticPrediction::asymptotic(rat(BigInt::from(2)), -binom2(k), residue)
        }
        _ => AsymptoticPrediction::asymptotic(BigRational::one(), -binom2(k), residue),
    };
    Ok(pred)
}

fn dot_type_for_residue(residue: QResidue, n: usize) -> Result<TypeTag, AsympError> {
    let tag = match residue {
        QResidue::Even => {
            if n % 2 == 1 {
                TypeTag::N1
            } else {
                TypeTag::N0na
            }
        }
        QResidue::Odd | QResidue::OneMod4 | QResidue::ThreeMod4 => {
            if n % 2 == 1 {
                TypeTag::P
            } else if n % 4 == 0 {
                TypeTag::H
            } else {
                match residue {
                    QResidue::OneMod4 => TypeTag::H,
                    QResidue::ThreeMod4 => TypeTag::E,
                    _ => {
                        return Err(AsympError::PreconditionViolated(format!(
                            "residue class Odd does not determine the type for n = {n} = 2 mod 4"
                        )))
                    }
                }
            }
        }
        QResidue::Any => {
            return Err(AsympError::PreconditionViolated(
                "residue class Any does not determine the dot-space type".into(),
            ))
        }
    };
    Ok(tag)
}

/// Leading order of the number of self-orthogonal `[n, k]_q` codes.
pub fn so_count_prediction(
    residue: QResidue,
    n: usize,
    k: usize,
) -> Result<AsymptoticPrediction, AsympError> {
    let tag = dot_type_for_residue(residue, n)?;
    let w = tag.witt_index(n);
    if k == 0 || k > w {
        return Err(AsympError::PreconditionViolated(format!(
            "need 1 <= k <= w = {w} for residue {residue:?}, got k={k}"
        )));
    }
    let coeff = if tag == TypeTag::H && 2 * k == n {
        rat(BigInt::from(2))
    } else {
        BigRational::one()
    };
    Ok(AsymptoticPrediction::asymptotic(
        coeff,
        (k * (n - k)) as i64 - binom2(k),
        residue,
    ))
}

/// Prediction for the count of weight-`i` self-orthogonal vectors. Weight 1
/// is exactly zero; weight 2 is exact in every residue class.
pub fn so_vector_count_prediction(residue: QResidue, n: usize, i: usize) -> AsymptoticPrediction {
    assert!(i >= 1 && i <= n, "need 1 <= i <= n, got i={i}, n={n}");
    match i {
        1 => AsymptoticPrediction::exact_zero(residue),
        2 => match residue {
            QResidue::Even => AsymptoticPrediction {
                coefficient: rat(binom(n, 2)),
                q_exponent: 1,
                residue,
                kind: PredictionKind::ExactScaledQMinus1,
            },
            QResidue::OneMod4 => AsymptoticPrediction {
                coefficient: rat(BigInt::from(2) * binom(n, 2)),
                q_exponent: 1,
                residue,
                kind: PredictionKind::ExactScaledQMinus1,
            },
            QResidue::ThreeMod4 => AsymptoticPrediction::exact_zero(residue),
            _ => panic!("weight-2 count needs residue even, 1mod4 or 3mod4"),
        },
        _ => AsymptoticPrediction::asymptotic(rat(binom(n, i)), i as i64 - 1, residue),
    }
}

/// Prediction for the average number of weight-`j` words in a
/// self-orthogonal `[n, k]_q` code.
pub fn avg_so_weight_prediction(
    residue: QResidue,
    n: usize,
    k: usize,
    j: usize,
) -> Result<AsymptoticPrediction, AsympError> {
    let tag = dot_type_for_residue(residue, n)?;
    let w = tag.witt_index(n);
    if !(2..=n).contains(&j) || k == 0 || k > w {
        return Err(AsympError::PreconditionViolated(format!(
            "need 2 <= j <= n and 1 <= k <= w = {w}, got j={j}, k={k}"
        )));
    }
    let pred = if j == 2 {
        match residue {
            QResidue::ThreeMod4 => AsymptoticPrediction::exact_zero(residue),
            QResidue::OneMod4 => AsymptoticPrediction::asymptotic(
                rat(BigInt::from(2) * binom(n, 2)),
                2 + k as i64 - n as i64,
                residue,
            ),
            _ => {
                AsymptoticPrediction::asymptotic(rat(binom(n, 2)), 2 + k as i64 - n as i64, residue)
            }
        }
    } else {
        AsymptoticPrediction::asymptotic(rat(binom(n, j)), j as i64 + k as i64 - n as i64, residue)
    };
    Ok(pred)
}

/// Prediction for the average number of weight-`j` words in an unrestricted
/// `[n, k]_q` code.
pub fn avg_weight_prediction(n: usize, k: usize, j: usize) -> AsymptoticPrediction {
    assert!(j <= n && k >= 1 && k <= n, "need 0 <= j <= n, 1 <= k <= n");
    AsymptoticPrediction::asymptotic(
        rat(binom(n, j)),
        j as i64 + k as i64 - n as i64,
        QResidue::Any,
    )
}

/// Prediction for the Witt-parameterized self-orthogonal count of dimension
/// n with Witt index w.
pub fn so_count_with_witt_prediction(
    n: usize,
    k: usize,
    w: usize,
) -> Result<AsymptoticPrediction, AsympError> {
    if k == 0 || k > w || 2 * w > n {
        return Err(AsympError::PreconditionViolated(format!(
            "need 1 <= k <= w <= n/2, got n={n}, k={k}, w={w}"
        )));
    }
    let coeff = if k == w && 2 * w == n {
        rat(BigInt::from(2))
    } else {
        BigRational::one()
    };
    Ok(AsymptoticPrediction::asymptotic(
        coeff,
        (k * (n - k)) as i64 - binom2(k),
        QResidue::Any,
    ))
}

/// Either a single leading-order prediction or a pair of bounds when only
/// the limsup is bounded.
#[derive(Debug, Clone)]
pub enum DensityPrediction {
    Single(AsymptoticPrediction),
    Bounds {
        lower: AsymptoticPrediction,
        upper: AsymptoticPrediction,
    },
}

/// Prediction for the proportion of self-orthogonal `[n, k]_q` codes with
/// minimum distance at most `d - 1`.
pub fn non_mds_so_density_prediction(
    n: usize,
    k: usize,
    d: usize,
    residue: QResidue,
) -> Result<DensityPrediction, AsympError> {
    let tag = dot_type_for_residue(residue, n)?;
    let w = tag.witt_index(n);
    if !(4..n).contains(&d) || k == 0 || k > (n - d + 1).min(w) {
        return Err(AsympError::PreconditionViolated(format!(
            "need 4 <= d < n and 1 <= k <= min(n-d+1, w={w}), got d={d}, k={k}"
        )));
    }
    if k <= n - d {
        return Ok(DensityPrediction::Single(AsymptoticPrediction::asymptotic(
            rat(binom(n, d - 1)),
            d as i64 + k as i64 - n as i64 - 2,
            residue,
        )));
    }
    // k = n - d + 1: the maximum-distance-separable threshold.
    if 2 * k < n {
        Ok(DensityPrediction::Single(AsymptoticPrediction::asymptotic(
            rat(binom(n, k)),
            -1,
            residue,
        )))
    } else {
        Ok(DensityPrediction::Bounds {
            lower: AsymptoticPrediction::asymptotic(rat(binom(n, d - 2)), -2, residue),
            upper: AsymptoticPrediction::asymptotic(rat(binom(n, d - 1)), -1, residue),
        })
    }
}

/// Prediction for the proportion of unrestricted `[n, k]_q` codes with
/// minimum distance at most `d - 1`.
pub fn non_mds_density_prediction(
    n: usize,
    k: usize,
    d: usize,
) -> Result<AsymptoticPrediction, AsympError> {
    if !(2..=n).contains(&d) || k == 0 || k > n - d + 1 {
        return Err(AsympError::PreconditionViolated(format!(
            "need 2 <= d <= n and 1 <= k <= n-d+1, got n={n}, k={k}, d={d}"
        )));
    }
    Ok(AsymptoticPrediction::asymptotic(
        rat(binom(n, d - 1)),
        d as i64 + k as i64 - n as i64 - 2,
        QResidue::Any,
    ))
}

/// One ladder point of a convergence diagnostic.
#[derive(Debug, Clone)]
pub struct ConvergenceSample {
    pub q: u64,
    pub exact: BigRational,
    pub predicted: BigRational,
    /// `exact / predicted`; absent where the prediction is zero.
    pub ratio: Option<BigRational>,
}

/// Exact-versus-predicted table along a q-ladder with a trend verdict.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub parameter: String,
    pub samples: Vec<ConvergenceSample>,
    pub verdict: bool,
}

fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl ConvergenceReport {
    /// `|exact/predicted - 1|` per sample, where defined.
    pub fn deviations(&self) -> Vec<Option<BigRational>> {
        self.samples
            .iter()
            .map(|s| s.ratio.as_ref().map(|r| (r - BigRational::one()).abs()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "parameter": self.parameter,
            "samples": self.samples.iter().map(|s| {
                serde_json::json!({
                    "q": s.q,
                    "exact": rational_to_string(&s.exact),
                    "predicted": rational_to_string(&s.predicted),
                    "ratio": s.ratio.as_ref().map(rational_to_string),
                })
            }).collect::<Vec<_>>(),
            "verdict": self.verdict,
        })
    }
}

/// Default deviation threshold under which a trend verdict passes outright.
pub fn default_threshold() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(20))
}

/// Tabulates exact values against a prediction along a q-ladder.
///
/// The verdict is true when the final deviation `|exact/predicted - 1|` is
/// already below the threshold, or the deviations are non-increasing over
/// the last three samples. Exact-zero predictions instead demand that every
/// exact value is zero.
pub fn convergence_report(
    parameter: &str,
    exact: impl Fn(u64) -> BigRational,
    prediction: &AsymptoticPrediction,
    q_ladder: &[u64],
    threshold: &BigRational,
) -> Result<ConvergenceReport, AsympError> {
    let mut qs: Vec<u64> = q_ladder.to_vec();
    qs.sort_unstable();
    qs.dedup();
    for &q in &qs {
        if !prediction.residue.admits(q) {
            return Err(AsympError::ResidueMismatch {
                q,
                class: prediction.residue,
            });
        }
    }
    let mut samples = Vec::with_capacity(qs.len());
    for &q in &qs {
        let predicted = prediction.evaluate(q);
        let exact_v = exact(q);
        let ratio = if predicted.is_zero() {
            None
        } else {
            Some(&exact_v / &predicted)
        };
        samples.push(ConvergenceSample {
            q,
            exact: exact_v,
            predicted,
            ratio,
        });
    }

    let verdict = if prediction.kind == PredictionKind::ExactZero {
        samples.iter().all(|s| s.exact.is_zero())
    } else if prediction.is_exact() {
        samples.iter().all(|s| s.exact == s.predicted)
    } else {
        let devs: Vec<BigRational> = samples
            .iter()
            .filter_map(|s| s.ratio.as_ref().map(|r| (r - BigRational::one()).abs()))
            .collect();
        if devs.is_empty() {
            false
        } else if devs.last().unwrap() <= threshold {
            true
        } else {
            let tail = if devs.len() >= 3 {
                &devs[devs.len() - 3..]
            } else {
                &devs[..]
            };
            tail.windows(2).all(|w| w[0] >= w[1])
        }
    };

    Ok(ConvergenceReport {
        parameter: parameter.to_string(),
        samples,
        verdict,
    })
}
