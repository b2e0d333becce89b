//! Finite bilinear spaces `(V, B)`: validation, discriminant, type
//! classification, Witt index, orthogonals, hulls, and the induced form on
//! `U^perp / U` for a self-orthogonal subspace `U`.
//!
//! A bilinear space here is always symmetric and non-degenerate. Spaces are
//! classified into six types: parabolic / hyperbolic / elliptic over odd
//! characteristic, and odd-dimension / alternating / non-alternating over
//! even characteristic. The type together with the dimension determines the
//! Witt index and every subspace count this crate computes.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::gf::{Field, FieldElement, FieldError, FieldRef};
use crate::linalg::{LinalgError, Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BilinearError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is singular; the form must be non-degenerate")]
    Degenerate,
    #[error("subspace is not self-orthogonal")]
    NotSelfOrthogonal,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid Gram document: {0}")]
    BadDocument(String),
}

impl From<LinalgError> for BilinearError {
    fn from(e: LinalgError) -> Self {
        BilinearError::DimensionMismatch(e.to_string())
    }
}

/// Isometry type of a bilinear space.
///
/// `P`/`H`/`E` (parabolic, hyperbolic, elliptic) require odd field order;
/// `N1` (odd dimension), `N0a` (alternating) and `N0na` (non-alternating)
/// require even field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    P,
    H,
    E,
    #[serde(rename = "N1")]
    N1,
    #[serde(rename = "N0a")]
    N0a,
    #[serde(rename = "N0na")]
    N0na,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl TypeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeTag::P => "P",
            TypeTag::H => "H",
            TypeTag::E => "E",
            TypeTag::N1 => "N1",
            TypeTag::N0a => "N0a",
            TypeTag::N0na => "N0na",
        }
    }

    pub fn parse(s: &str) -> Option<TypeTag> {
        match s {
            "P" => Some(TypeTag::P),
            "H" => Some(TypeTag::H),
            "E" => Some(TypeTag::E),
            "N1" => Some(TypeTag::N1),
            "N0a" => Some(TypeTag::N0a),
            "N0na" => Some(TypeTag::N0na),
            _ => None,
        }
    }

    /// Whether this type occurs with the given dimension parity and field
    /// order parity.
    pub fn is_consistent(self, n: usize, q: u64) -> bool {
        match self {
            TypeTag::P => n % 2 == 1 && q % 2 == 1,
            TypeTag::H | TypeTag::E => n % 2 == 0 && q % 2 == 1,
            TypeTag::N1 => n % 2 == 1 && q % 2 == 0,
            TypeTag::N0a | TypeTag::N0na => n % 2 == 0 && q % 2 == 0,
        }
    }

    /// Witt index of an n-dimensional space of this type: the common
    /// dimension of all maximal self-orthogonal subspaces.
    pub fn witt_index(self, n: usize) -> usize {
        match self {
            TypeTag::P | TypeTag::N1 => (n - 1) / 2,
            TypeTag::H | TypeTag::N0a | TypeTag::N0na => n / 2,
            TypeTag::E => n / 2 - 1,
        }
    }

    /// Type of `F_q^n` with the standard dot product. The dot product is
    /// never alternating, so type `N0a` does not occur here.
    pub fn of_dot_space(q: u64, n: usize) -> TypeTag {
        assert!(n >= 1, "ambient dimension must be positive");
        if q % 2 == 0 {
            if n % 2 == 1 {
                TypeTag::N1
            } else {
                TypeTag::N0na
            }
        } else if n % 2 == 1 {
            TypeTag::P
        } else if n % 4 == 0 || q % 4 == 1 {
            TypeTag::H
        } else {
            TypeTag::E
        }
    }
}

/// Witt index of `F_q^n` with the standard dot product.
pub fn dot_witt_index(q: u64, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    TypeTag::of_dot_space(q, n).witt_index(n)
}

/// A symmetric non-degenerate bilinear space over `F_q`, with its type and
/// Witt index computed once at construction.
#[derive(Clone)]
pub struct BilinearSpace {
    field: FieldRef,
    n: usize,
    gram: Matrix,
    type_tag: TypeTag,
    witt: usize,
}

impl fmt::Debug for BilinearSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BilinearSpace(F_{}^{}, type {}, witt {})",
            self.field.order(),
            self.n,
            self.type_tag,
            self.witt
        )
    }
}

impl BilinearSpace {
    /// Validates the Gram matrix (symmetric, non-singular) and classifies
    /// the space.
    pub fn from_gram(field: FieldRef, gram: Matrix) -> Result<BilinearSpace, BilinearError> {
        let n = gram.rows();
        if gram.cols() != n || n == 0 {
            return Err(BilinearError::BadDocument(format!(
                "Gram matrix must be square and nonempty, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        for r in 0..n {
            for c in (r + 1)..n {
                if gram.at(r, c) != gram.at(c, r) {
                    return Err(BilinearError::NotSymmetric);
                }
            }
        }
        let det = gram.det();
        if det.is_zero() {
            return Err(BilinearError::Degenerate);
        }

        let q = field.order();
        let type_tag = if q % 2 == 0 {
            if n % 2 == 1 {
                TypeTag::N1
            } else if (0..n).all(|i| gram.at(i, i).is_zero()) {
                TypeTag::N0a
            } else {
                TypeTag::N0na
            }
        } else if n % 2 == 1 {
            TypeTag::P
        } else {
            // Type H exactly when (-1)^(n/2) * det(G) is a square.
            let signed_det = if (n / 2) % 2 == 1 {
                field.neg(det)
            } else {
                det
            };
            if field.is_square(signed_det)? {
                TypeTag::H
            } else {
                TypeTag::E
            }
        };
        let witt = type_tag.witt_index(n);
        Ok(BilinearSpace {
            field,
            n,
            gram,
            type_tag,
            witt,
        })
    }

    /// `F_q^n` with the standard dot product (identity Gram matrix).
    pub fn standard_dot(field: FieldRef, n: usize) -> BilinearSpace {
        let gram = Matrix::identity(field.clone(), n);
        let space = BilinearSpace::from_gram(field, gram).expect("identity Gram is valid");
        debug_assert_eq!(
            space.type_tag,
            TypeTag::of_dot_space(space.field.order(), n)
        );
        space
    }

    /// Block-diagonal Gram with 2x2 antidiagonal blocks. Alternating (type
    /// `N0a`) for even field order; hyperbolic for odd field order.
    pub fn alternating_block(field: FieldRef, n: usize) -> Result<BilinearSpace, BilinearError> {
        if n == 0 || n % 2 != 0 {
            return Err(BilinearError::PreconditionViolated(format!(
                "antidiagonal block Gram needs even positive dimension, got {n}"
            )));
        }
        let mut gram = Matrix::zeros(field.clone(), n, n);
        for b in 0..(n / 2) {
            gram.set(2 * b, 2 * b + 1, FieldElement::ONE);
            gram.set(2 * b + 1, 2 * b, FieldElement::ONE);
        }
        BilinearSpace::from_gram(field, gram)
    }

    /// Parses `{"q": ..., "gram": [[...], ...]}` where entries are canonical
    /// element indices.
    pub fn from_json(doc: &str) -> Result<BilinearSpace, BilinearError> {
        #[derive(Deserialize)]
        struct GramDoc {
            q: u64,
            gram: Vec<Vec<u64>>,
        }
        let doc: GramDoc =
            serde_json::from_str(doc).map_err(|e| BilinearError::BadDocument(e.to_string()))?;
        let field = Field::new(doc.q)?;
        let n = doc.gram.len();
        if doc.gram.iter().any(|row| row.len() != n) {
            return Err(BilinearError::BadDocument(
                "gram rows must all have the same length as the row count".into(),
            ));
        }
        for row in &doc.gram {
            for &v in row {
                if v >= doc.q {
                    return Err(BilinearError::BadDocument(format!(
                        "entry {v} is not an element index of F_{}",
                        doc.q
                    )));
                }
            }
        }
        let rows = doc
            .gram
            .iter()
            .map(|row| row.iter().map(|&v| field.el(v)).collect())
            .collect();
        BilinearSpace::from_gram(field.clone(), Matrix::from_rows(field, rows))
    }

    #[inline]
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    #[inline]
    pub fn type_tag(&self) -> TypeTag {
        self.type_tag
    }

    /// Witt index, read off the cached type classification.
    #[inline]
    pub fn witt_index(&self) -> usize {
        self.witt
    }

    /// `B(u, v)`.
    pub fn bilinear(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        assert_eq!(u.len(), self.n);
        assert_eq!(v.len(), self.n);
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for (i, &ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let mut row_acc = FieldElement::ZERO;
            for (j, &vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    row_acc = f.add(row_acc, f.mul(self.gram.at(i, j), vj));
                }
            }
            acc = f.add(acc, f.mul(ui, row_acc));
        }
        acc
    }

    /// `B(v, v) = 0` for every `v`; with symmetry this forces even field
    /// order and even dimension.
    pub fn is_alternating(&self) -> bool {
        self.field.order() % 2 == 0 && (0..self.n).all(|i| self.gram.at(i, i).is_zero())
    }

    /// Whether `det(G)` is a nonzero square; invariant under congruence.
    pub fn discriminant_is_square(&self) -> bool {
        self.field
            .is_square(self.gram.det())
            .expect("non-degenerate form has nonzero determinant")
    }

    fn check_ambient(&self, c: &Subspace) -> Result<(), BilinearError> {
        if c.ambient_dim() != self.n || c.field().order() != self.field.order() {
            return Err(BilinearError::DimensionMismatch(format!(
                "subspace of F_{}^{} used in a space of dimension {} over F_{}",
                c.field().order(),
                c.ambient_dim(),
                self.n,
                self.field.order()
            )));
        }
        Ok(())
    }

    /// The orthogonal `C^perp = {v : B(c, v) = 0 for all c in C}`.
    pub fn orthogonal(&self, c: &Subspace) -> Result<Subspace, BilinearError> {
        self.check_ambient(c)?;
        let mg = c.basis().mul(&self.gram);
        Ok(mg.kernel())
    }

    /// Gram matrix of the form restricted to the rows of `basis`.
    pub fn restricted_gram(&self, basis: &Matrix) -> Matrix {
        let mg = basis.mul(&self.gram);
        mg.mul(&basis.transpose())
    }

    /// The hull (radical) `C ∩ C^perp`, computed from the kernel of the
    /// restricted Gram matrix.
    pub fn hull(&self, c: &Subspace) -> Result<Subspace, BilinearError> {
        self.check_ambient(c)?;
        let coeffs = self.restricted_gram(c.basis()).kernel();
        if coeffs.is_zero() {
            return Ok(Subspace::zero(self.field.clone(), self.n));
        }
        Ok(Subspace::from_generators(coeffs.basis().mul(c.basis())))
    }

    /// `dim(C ∩ C^perp)`: 0 for LCD subspaces, `dim C` for self-orthogonal
    /// ones.
    pub fn hull_dim(&self, c: &Subspace) -> Result<usize, BilinearError> {
        self.check_ambient(c)?;
        Ok(c.dim() - self.restricted_gram(c.basis()).rank())
    }

    pub fn is_self_orthogonal(&self, c: &Subspace) -> Result<bool, BilinearError> {
        Ok(self.hull_dim(c)? == c.dim())
    }

    pub fn is_lcd(&self, c: &Subspace) -> Result<bool, BilinearError> {
        Ok(self.hull_dim(c)? == 0)
    }

    /// Builds `(U^perp / U, B_U)` for a self-orthogonal `U`, together with
    /// deterministic coset representatives and the maps between subspaces of
    /// the quotient and subspaces of `V` sandwiched between `U` and
    /// `U^perp`.
    pub fn quotient(&self, u: &Subspace) -> Result<QuotientSpace, BilinearError> {
        self.check_ambient(u)?;
        let t = u.dim();
        if self.hull_dim(u)? != t {
            return Err(BilinearError::NotSelfOrthogonal);
        }
        let up = self.orthogonal(u)?;
        debug_assert!(up.contains(u));
        let m = self.n - 2 * t;

        // Deterministic complement of U inside U^perp: greedily take the
        // rows of the RREF basis of U^perp that grow the span beyond U.
        let mut reps: Vec<Vec<FieldElement>> = Vec::with_capacity(m);
        let mut acc = u.clone();
        for r in 0..up.dim() {
            let row = up.basis().row(r);
            if !acc.contains_vector(row) {
                reps.push(row.to_vec());
                acc = acc
                    .sum(&Subspace::line(self.field.clone(), row))
                    .expect("same ambient");
            }
        }
        assert_eq!(reps.len(), m, "complement has the wrong dimension");
        let reps = Matrix::from_rows(self.field.clone(), reps).with_cols_hint(self.n);

        let mut gram_q = Matrix::zeros(self.field.clone(), m, m);
        for i in 0..m {
            for j in 0..m {
                gram_q.set(i, j, self.bilinear(reps.row(i), reps.row(j)));
            }
        }
        let space = if m == 0 {
            None
        } else {
            Some(
                BilinearSpace::from_gram(self.field.clone(), gram_q)
                    .expect("induced form is symmetric and non-degenerate"),
            )
        };

        // Row-reduce [U; W] while tracking the transform, so vectors of
        // U^perp can be rewritten in the (U, W) coordinates.
        let stacked = u.basis().vstack(&reps);
        let (reduced, transform, pivots) = reduce_with_transform(&stacked);

        Ok(QuotientSpace {
            ambient: self.clone(),
            u: u.clone(),
            reps,
            space,
            reduced,
            transform,
            pivots,
        })
    }
}

/// Whether the form induced on `U^perp / U` by the standard dot product is
/// alternating, decided by membership of the all-one vector in `U`. Only
/// meaningful for even field order and even dimension.
pub fn induced_alternating_dot(u: &Subspace) -> Result<bool, BilinearError> {
    let q = u.field().order();
    let n = u.ambient_dim();
    if q % 2 != 0 || n % 2 != 0 {
        return Err(BilinearError::PreconditionViolated(format!(
            "induced-alternating criterion needs even q and even n, got q={q}, n={n}"
        )));
    }
    let ones = vec![FieldElement::ONE; n];
    Ok(u.contains_vector(&ones))
}

/// Gauss-Jordan reduction of `a` returning `(R, T, pivots)` with `R = T a`
/// in reduced row echelon form (zero rows kept).
fn reduce_with_transform(a: &Matrix) -> (Matrix, Matrix, Vec<usize>) {
    let f = a.field().clone();
    let rows = a.rows();
    let mut r = a.clone();
    let mut t = Matrix::identity(f.clone(), rows);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..a.cols() {
        if pr == rows {
            break;
        }
        let Some(sel) = (pr..rows).find(|&i| !r.at(i, col).is_zero()) else {
            continue;
        };
        for m in [&mut r, &mut t] {
            for c in 0..m.cols() {
                let x = m.at(pr, c);
                let y = m.at(sel, c);
                m.set(pr, c, y);
                m.set(sel, c, x);
            }
        }
        let inv = f.inv(r.at(pr, col)).expect("pivot nonzero");
        for m in [&mut r, &mut t] {
            for c in 0..m.cols() {
                let v = m.at(pr, c);
                m.set(pr, c, f.mul(v, inv));
            }
        }
        for i in 0..rows {
            if i == pr {
                continue;
            }
            let factor = r.at(i, col);
            if factor.is_zero() {
                continue;
            }
            for m in [&mut r, &mut t] {
                for c in 0..m.cols() {
                    let sub = f.mul(factor, m.at(pr, c));
                    let v = f.sub(m.at(i, c), sub);
                    m.set(i, c, v);
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    (r, t, pivots)
}

/// The quotient `U^perp / U` of a bilinear space by a self-orthogonal
/// subspace, with the induced form and coordinate maps.
#[derive(Debug)]
pub struct QuotientSpace {
    ambient: BilinearSpace,
    u: Subspace,
    /// Coset representatives: rows span a complement of `U` in `U^perp`.
    reps: Matrix,
    /// The induced bilinear space; `None` when `dim U = n/2` (zero quotient).
    space: Option<BilinearSpace>,
    reduced: Matrix,
    transform: Matrix,
    pivots: Vec<usize>,
}

impl QuotientSpace {
    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    /// The induced bilinear space; panics if the quotient is zero.
    pub fn space(&self) -> &BilinearSpace {
        self.space
            .as_ref()
            .expect("quotient space is zero-dimensional")
    }

    pub fn space_opt(&self) -> Option<&BilinearSpace> {
        self.space.as_ref()
    }

    pub fn u(&self) -> &Subspace {
        &self.u
    }

    pub fn representatives(&self) -> &Matrix {
        &self.reps
    }

    /// Quotient coordinates of an ambient vector, or `None` if it lies
    /// outside `U^perp`.
    pub fn project_vector(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let f = self.ambient.field();
        assert_eq!(v.len(), self.ambient.dim());
        let t = self.u.dim();
        let m = self.dim();
        // Coefficients against the reduced basis are read off pivot columns.
        let rows = self.pivots.len();
        let mut coeffs = vec![FieldElement::ZERO; self.reduced.rows()];
        for (i, &p) in self.pivots.iter().enumerate() {
            coeffs[i] = v[p];
        }
        // Verify membership in the row space of [U; W] = U^perp.
        for c in 0..v.len() {
            let mut acc = FieldElement::ZERO;
            for i in 0..rows {
                if !coeffs[i].is_zero() {
                    acc = f.add(acc, f.mul(coeffs[i], self.reduced.at(i, c)));
                }
            }
            if acc != v[c] {
                return None;
            }
        }
        // x = coeffs * T expresses v over the stacked (U, W) rows.
        let mut out = vec![FieldElement::ZERO; m];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut acc = FieldElement::ZERO;
            for (i, &ci) in coeffs.iter().enumerate() {
                if !ci.is_zero() {
                    acc = f.add(acc, f.mul(ci, self.transform.at(i, t + j)));
                }
            }
            *slot = acc;
        }
        Some(out)
    }

    /// Ambient representative of a quotient vector.
    pub fn lift_vector(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.dim());
        let f = self.ambient.field();
        let n = self.ambient.dim();
        let mut out = vec![FieldElement::ZERO; n];
        for (i, &vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for c in 0..n {
                out[c] = f.add(out[c], f.mul(vi, self.reps.at(i, c)));
            }
        }
        out
    }

    /// The subspace of `V` containing `U` that corresponds to a subspace of
    /// the quotient.
    pub fn lift_subspace(&self, c: &Subspace) -> Subspace {
        assert_eq!(c.ambient_dim(), self.dim());
        let field = self.ambient.field().clone();
        let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(c.dim() + self.u.dim());
        for r in 0..c.dim() {
            rows.push(self.lift_vector(c.basis().row(r)));
        }
        for r in 0..self.u.dim() {
            rows.push(self.u.basis().row(r).to_vec());
        }
        let m = Matrix::from_rows(field, rows);
        Subspace::from_generators(m.with_cols_hint(self.ambient.dim()))
    }

    /// The quotient image of a subspace `C` with `U <= C <= U^perp`.
    pub fn project_subspace(&self, c: &Subspace) -> Result<Subspace, BilinearError> {
        if !c.contains(&self.u) {
            return Err(BilinearError::PreconditionViolated(
                "subspace does not contain U".into(),
            ));
        }
        let mut rows = Vec::with_capacity(c.dim());
        for r in 0..c.dim() {
            let img = self.project_vector(c.basis().row(r)).ok_or_else(|| {
                BilinearError::PreconditionViolated("subspace is not contained in U^perp".into())
            })?;
            rows.push(img);
        }
        let field = self.ambient.field().clone();
        let m = Matrix::from_rows(field, rows).with_cols_hint(self.dim());
        Ok(Subspace::from_generators(m))
    }
}

impl Matrix {
    /// Keeps the column count meaningful for matrices with no rows.
    pub(crate) fn with_cols_hint(self, cols: usize) -> Matrix {
        if self.rows() == 0 {
            Matrix::zeros(self.field().clone(), 0, cols)
        } else {
            self
        }
    }
}
