//! Uniform random generation of subspaces, self-orthogonal codes, and codes
//! with a prescribed hull dimension.
//!
//! Self-orthogonal codes are drawn by growing a chain of self-orthogonal
//! subspaces one isotropic line at a time inside successive quotients. For
//! the non-alternating even-characteristic type the induced form changes
//! type exactly when the all-one vector enters the chain, so the two line
//! classes are weighted by their completion counts; for every other type all
//! lines extend in equally many ways and a uniform line suffices. Every
//! k-dimensional target then contains the same number of full chains, which
//! makes the draw exactly uniform. Each emitted subspace is re-checked
//! against its defining predicate before being returned.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::bilinear::{BilinearSpace, TypeTag};
use crate::census;
use crate::gf::{FieldElement, FieldRef};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SamplerError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no subspace has the requested parameters (q={q}, n={n}, k={k}, l={l})")]
    EmptyStratum {
        q: u64,
        n: usize,
        k: usize,
        l: usize,
    },
    #[error("gave up after {trials} rejections (acceptance rate so far {accepted}/{trials})")]
    MaxRejectionsExceeded { trials: u64, accepted: u64 },
}

/// Sampling configuration; identical seeds reproduce identical draws.
#[derive(Debug, Clone, Copy)]
pub struct SamplerConfig {
    pub seed: u64,
    pub max_rejections: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0,
            max_rejections: 1_000_000,
        }
    }
}

/// A seeded sampler over a fixed dot-product ambient space.
pub struct Sampler {
    space: BilinearSpace,
    rng: ChaCha12Rng,
    max_rejections: u64,
}

impl Sampler {
    pub fn new(field: FieldRef, n: usize, config: SamplerConfig) -> Sampler {
        Sampler {
            space: BilinearSpace::standard_dot(field, n),
            rng: ChaCha12Rng::seed_from_u64(config.seed),
            max_rejections: config.max_rejections,
        }
    }

    pub fn space(&self) -> &BilinearSpace {
        &self.space
    }

    pub fn uniform_subspace(&mut self, k: usize) -> Result<Subspace, SamplerError> {
        uniform_subspace(
            self.space.field(),
            self.space.dim(),
            k,
            &mut self.rng,
            self.max_rejections,
        )
    }

    pub fn uniform_self_orthogonal(&mut self, k: usize) -> Result<Subspace, SamplerError> {
        uniform_self_orthogonal(&self.space, k, &mut self.rng, self.max_rejections)
    }

    pub fn uniform_with_hull_dim(&mut self, k: usize, l: usize) -> Result<Subspace, SamplerError> {
        uniform_with_hull_dim(&self.space, k, l, &mut self.rng, self.max_rejections)
    }
}

/// Draws a uniformly random k-dimensional subspace of `F_q^n` by drawing
/// k-by-n matrices until one has full rank; every subspace has the same
/// number of full-rank generator matrices.
pub fn uniform_subspace<R: Rng>(
    field: &FieldRef,
    n: usize,
    k: usize,
    rng: &mut R,
    max_rejections: u64,
) -> Result<Subspace, SamplerError> {
    if k > n {
        return Err(SamplerError::PreconditionViolated(format!(
            "k={k} exceeds the ambient dimension {n}"
        )));
    }
    if k == 0 {
        return Ok(Subspace::zero(field.clone(), n));
    }
    let q = field.order();
    let mut trials = 0;
    loop {
        trials += 1;
        if trials > max_rejections {
            return Err(SamplerError::MaxRejectionsExceeded {
                trials: trials - 1,
                accepted: 0,
            });
        }
        let rows: Vec<Vec<FieldElement>> = (0..k)
            .map(|_| (0..n).map(|_| field.el(rng.gen_range(0..q))).collect())
            .collect();
        let m = Matrix::from_rows(field.clone(), rows);
        let s = Subspace::from_generators(m);
        if s.dim() == k {
            return Ok(s);
        }
    }
}

/// Draws a uniform value below `bound` (which must be positive).
fn uniform_below<R: Rng>(bound: &BigUint, rng: &mut R) -> BigUint {
    debug_assert!(!bound.is_zero());
    if let Some(b) = bound.to_u64() {
        return BigUint::from(rng.gen_range(0..b));
    }
    let bits = bound.bits();
    loop {
        let mut bytes = vec![0u8; bits.div_ceil(8) as usize];
        rng.fill_bytes(&mut bytes);
        let excess = (bytes.len() as u64) * 8 - bits;
        if excess > 0 {
            bytes[0] >>= excess;
        }
        let candidate = BigUint::from_bytes_be(&bytes);
        if &candidate < bound {
            return candidate;
        }
    }
}

fn to_uint(v: BigInt) -> BigUint {
    v.to_biguint().expect("count is nonnegative")
}

/// Draws a uniformly random self-orthogonal k-dimensional code of the given
/// dot-product space.
pub fn uniform_self_orthogonal<R: Rng>(
    space: &BilinearSpace,
    k: usize,
    rng: &mut R,
    max_rejections: u64,
) -> Result<Subspace, SamplerError> {
    let field = space.field().clone();
    let n = space.dim();
    let q = field.order();
    let tag = space.type_tag();
    let w = space.witt_index();
    if k > w {
        return Err(SamplerError::PreconditionViolated(format!(
            "k={k} exceeds the Witt index {w}"
        )));
    }
    // The class split below detects alternating-inducing subspaces through
    // the all-one vector, which characterizes them for the standard dot
    // product only.
    if tag == TypeTag::N0na && *space.gram() != Matrix::identity(field.clone(), n) {
        return Err(SamplerError::PreconditionViolated(
            "non-alternating even-characteristic sampling is supported for the standard dot product only".into(),
        ));
    }
    if k == 0 {
        return Ok(Subspace::zero(field, n));
    }

    let ones = vec![FieldElement::ONE; n];
    let mut chain = Subspace::zero(field.clone(), n);
    let mut contains_ones = false;

    for t in 0..k {
        let quotient = space.quotient(&chain).expect("chain is self-orthogonal");
        let qspace = quotient.space();
        let m = quotient.dim();

        let direction = if tag == TypeTag::N0na && !contains_ones {
            // Two line classes: the unique line through the image of the
            // all-one vector, and everything else. Weight each class by
            // (class size) x (completions to dimension k per member).
            let pi_ones = quotient
                .project_vector(&ones)
                .expect("the all-one vector is orthogonal to every isotropic vector");
            debug_assert!(pi_ones.iter().any(|x| !x.is_zero()));
            let total_lines = to_uint(census::isotropic_line_count(TypeTag::N0na, m, q));
            let with_ones =
                to_uint(census::so_containing_count(tag, n, k, t + 1, true, q).unwrap());
            let without_ones =
                to_uint(census::so_containing_count(tag, n, k, t + 1, false, q).unwrap());
            let w1 = with_ones;
            let w0 = (&total_lines - BigUint::one()) * without_ones;
            let total = &w0 + &w1;
            assert!(
                !total.is_zero(),
                "no completion exists below the Witt index"
            );
            if uniform_below(&total, rng) < w0 {
                // Uniform isotropic line distinct from <pi(ones)>.
                let v = sample_isotropic_vector(qspace, rng, max_rejections, |v| {
                    !is_scalar_multiple(qspace.field(), v, &pi_ones)
                })?;
                v
            } else {
                contains_ones = true;
                pi_ones
            }
        } else if tag == TypeTag::N0na && contains_ones {
            // The induced form is alternating: every nonzero vector is
            // isotropic, so any uniform nonzero vector picks a uniform line.
            debug_assert_eq!(qspace.type_tag(), TypeTag::N0a);
            sample_isotropic_vector(qspace, rng, max_rejections, |_| true)?
        } else {
            // Quotients preserve the type, so all isotropic lines extend in
            // equally many ways; a uniform isotropic line is exact.
            sample_isotropic_vector(qspace, rng, max_rejections, |_| true)?
        };

        let lifted = quotient.lift_vector(&direction);
        chain = chain
            .sum(&Subspace::line(field.clone(), &lifted))
            .expect("same ambient");
        debug_assert_eq!(chain.dim(), t + 1);
    }

    // Post-hoc check of the defining predicate.
    assert_eq!(chain.dim(), k);
    assert!(
        space.is_self_orthogonal(&chain).expect("same ambient"),
        "sampled subspace is not self-orthogonal"
    );
    Ok(chain)
}

/// Rejection-samples a uniform nonzero isotropic vector of the space that
/// satisfies `keep`. Uniform nonzero isotropic vectors induce uniform
/// isotropic lines, since every line carries q - 1 of them.
fn sample_isotropic_vector<R: Rng>(
    space: &BilinearSpace,
    rng: &mut R,
    max_rejections: u64,
    keep: impl Fn(&[FieldElement]) -> bool,
) -> Result<Vec<FieldElement>, SamplerError> {
    let field = space.field();
    let q = field.order();
    let m = space.dim();
    let mut trials = 0;
    loop {
        trials += 1;
        if trials > max_rejections {
            return Err(SamplerError::MaxRejectionsExceeded {
                trials: trials - 1,
                accepted: 0,
            });
        }
        let v: Vec<FieldElement> = (0..m).map(|_| field.el(rng.gen_range(0..q))).collect();
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        if space.bilinear(&v, &v).is_zero() && keep(&v) {
            return Ok(v);
        }
    }
}

fn is_scalar_multiple(field: &FieldRef, a: &[FieldElement], b: &[FieldElement]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut scale: Option<FieldElement> = None;
    for (&x, &y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return false,
            (false, false) => {
                let s = field.mul(x, field.inv(y).expect("nonzero"));
                match scale {
                    None => scale = Some(s),
                    Some(prev) if prev == s => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// Draws a uniformly random k-dimensional code with hull dimension exactly
/// `l`, by rejection from the uniform Grassmannian draw. The self-orthogonal
/// stratum `l = k` routes to the exact chain sampler instead.
pub fn uniform_with_hull_dim<R: Rng>(
    space: &BilinearSpace,
    k: usize,
    l: usize,
    rng: &mut R,
    max_rejections: u64,
) -> Result<Subspace, SamplerError> {
    let q = space.field().order();
    let n = space.dim();
    let stratum = census::hull_count(space.type_tag(), n, k, l, q);
    if stratum.is_zero() {
        return Err(SamplerError::EmptyStratum { q, n, k, l });
    }
    if l == k {
        return uniform_self_orthogonal(space, k, rng, max_rejections);
    }
    let mut trials = 0;
    loop {
        trials += 1;
        if trials > max_rejections {
            return Err(SamplerError::MaxRejectionsExceeded {
                trials: trials - 1,
                accepted: 0,
            });
        }
        let c = uniform_subspace(space.field(), n, k, rng, max_rejections)?;
        if space.hull_dim(&c).expect("same ambient") == l {
            return Ok(c);
        }
    }
}
