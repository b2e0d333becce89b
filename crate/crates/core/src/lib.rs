//! Exact combinatorics of finite bilinear spaces: counts of subspaces by
//! hull dimension (self-orthogonal, LCD, and everything between), their
//! aggregate Hamming weight distributions, uniform samplers, leading-order
//! predictions in the field size, and a brute-force enumeration oracle that
//! independently recomputes every quantity on small instances.
//!
//! Modules:
//! - [`gf`]: arithmetic in `F_q` for prime powers `q <= 2^16`.
//! - [`linalg`]: matrices, canonical (RREF) subspaces, subspace enumeration.
//! - [`bilinear`]: bilinear spaces, types, Witt index, hulls, quotients.
//! - [`census`]: exact counting formulas over big integers.
//! - [`weights`]: weight distributions, Krawtchouk / MacWilliams machinery.
//! - [`asymptotics`]: leading-order predictors and convergence reports.
//! - [`oracle`]: exhaustive enumeration ground truth.
//! - [`sampler`]: seeded uniform samplers.

pub mod asymptotics;
pub mod bilinear;
pub mod census;
pub mod gf;
pub mod linalg;
pub mod oracle;
pub mod sampler;
mod util;
pub mod weights;

pub use bilinear::{BilinearSpace, TypeTag};
pub use gf::{Field, FieldElement, FieldRef};
pub use linalg::{Matrix, Subspace};
