//! Exact field arithmetic and small dense linear algebra.
//!
//! Everything downstream (triangles, Morse sequences, trace checks) is
//! phrased in terms of [`Matrix`] and [`Subspace`] over a single [`Field`].

mod matrix;
pub mod random;
mod scalar;
mod subspace;

use alloc::string::String;

pub use matrix::{Matrix, Rref};
pub use scalar::{is_prime, rat, Field, Scalar};
pub use subspace::{Quotient, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("{op}: expected shape {expected:?}, found {found:?}")]
    DimensionMismatch {
        op: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("{op}: matrix is {rows}x{cols}, not square")]
    NotSquare { op: &'static str, rows: usize, cols: usize },
    #[error("subspaces live in different ambient spaces ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("{value} has no image in {field}")]
    NotInField { value: String, field: Field },
    #[error("malformed scalar literal {0:?}")]
    ScalarSyntax(String),
    #[error("subspace is not invariant: {witness} maps to {image}")]
    NotInvariant { witness: Matrix, image: Matrix },
    #[error("subspace is not contained in the larger one: {witness} is missing")]
    NotContained { witness: Matrix },
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Kernel of `m` as a subspace of its domain `K^cols`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    Subspace::span(&m.null_space_columns())
}

/// Column span of `m`.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::span(m)
}

/// `w ⊆ u`.
pub fn subspace_contains(u: &Subspace, w: &Subspace) -> Result<bool, LinalgError> {
    u.contains(w)
}

/// The matrix of `t|u` in `u`'s stored basis.
pub fn restrict_to_invariant(t: &Matrix, u: &Subspace) -> Result<Matrix, LinalgError> {
    t.require_square("restrict_to_invariant")?;
    u.map_into(t, u)
}

/// The map induced by `t` on `w / u` for a `t`-invariant chain `u ⊆ w`.
///
/// The quotient basis is the image of the unit vectors completing `u`
/// inside `w`-coordinates, so `trace(t|w) = trace(t|u) + trace(result)`.
pub fn induced_on_quotient(t: &Matrix, u: &Subspace, w: &Subspace) -> Result<Matrix, LinalgError> {
    t.require_square("induced_on_quotient")?;
    if !w.contains(u)? {
        let missing = (0..u.dim())
            .map(|j| u.basis().column(j))
            .find(|v| !matches!(w.contains_vector(v), Ok(true)))
            .expect("some basis vector is missing");
        return Err(LinalgError::NotContained { witness: missing });
    }
    let t_on_w = restrict_to_invariant(t, w)?;
    // `u` invariance is checked in the ambient space so the witness is
    // reported in ambient coordinates.
    restrict_to_invariant(t, u)?;
    let u_in_w = Subspace::span(&coordinates_of(w, u.basis())?);
    let quotient = u_in_w.quotient();
    quotient.induced(&t_on_w, &quotient)
}

/// Coordinates of each column of `vectors` in `w`'s basis (columns must lie
/// in `w`).
fn coordinates_of(w: &Subspace, vectors: &Matrix) -> Result<Matrix, LinalgError> {
    let mut out = Matrix::zeros(w.field(), w.dim(), vectors.cols());
    for j in 0..vectors.cols() {
        let v = vectors.column(j);
        let c = w.coordinates(&v)?.ok_or(LinalgError::NotContained { witness: v })?;
        for i in 0..w.dim() {
            out.set(i, j, c.get(i, 0).clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(q(), 3)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(q(), 1, 5)), Subspace::full(q(), 5));
        let k = kernel_basis(&Matrix::from_i64(q(), &[&[1, 0], &[0, 0]]));
        assert_eq!(k, Subspace::span(&Matrix::from_i64(q(), &[&[0], &[1]])));
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&Matrix::zeros(q(), 3, 2)).dim(), 0);
        assert_eq!(image_basis(&Matrix::identity(q(), 3)), Subspace::full(q(), 3));
        let col = Matrix::from_i64(q(), &[&[1], &[2], &[0]]);
        let im = image_basis(&col);
        assert_eq!(im.dim(), 1);
        assert!(im.contains_vector(&col).unwrap());
    }

    #[test]
    fn containment_examples() {
        let e = |i| Matrix::unit_vector(q(), 3, i);
        let zero = Subspace::zero(q(), 3);
        let line = Subspace::span(&e(0));
        let plane = Subspace::span(&e(0).hstack(&e(1)).unwrap());
        assert!(subspace_contains(&line, &zero).unwrap());
        assert!(!subspace_contains(&zero, &line).unwrap());
        assert!(subspace_contains(&plane, &line).unwrap());
        assert!(!subspace_contains(&line, &plane).unwrap());
    }

    #[test]
    fn restriction_examples() {
        let t = Matrix::from_i64(q(), &[&[2, 1], &[0, 3]]);
        let e1 = Subspace::span(&Matrix::unit_vector(q(), 2, 0));
        let r = restrict_to_invariant(&t, &e1).unwrap();
        assert_eq!(r, Matrix::from_i64(q(), &[&[2]]));
        assert_eq!(r.trace().unwrap(), Scalar::from_i64(q(), 2));

        let u = Subspace::span(&Matrix::from_i64(q(), &[&[1, 0], &[1, 1], &[0, 2]]));
        assert!(restrict_to_invariant(&Matrix::identity(q(), 3), &u)
            .unwrap()
            .is_identity());

        let swap = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]);
        match restrict_to_invariant(&swap, &e1) {
            Err(LinalgError::NotInvariant { witness, image }) => {
                assert_eq!(witness, Matrix::unit_vector(q(), 2, 0));
                assert_eq!(image, Matrix::unit_vector(q(), 2, 1));
            }
            other => panic!("expected invariance failure, got {other:?}"),
        }
    }

    #[test]
    fn quotient_examples() {
        let t = Matrix::from_i64(q(), &[&[2, 1], &[0, 3]]);
        let e1 = Subspace::span(&Matrix::unit_vector(q(), 2, 0));
        let full = Subspace::full(q(), 2);
        assert_eq!(
            induced_on_quotient(&t, &e1, &full).unwrap(),
            Matrix::from_i64(q(), &[&[3]])
        );

        let same = induced_on_quotient(&t, &full, &full).unwrap();
        assert_eq!(same.shape(), (0, 0));
        assert!(same.trace().unwrap().is_zero());

        let id = Matrix::identity(q(), 4);
        let u = Subspace::span(&Matrix::unit_vector(q(), 4, 1));
        let w = Subspace::full(q(), 4);
        assert!(induced_on_quotient(&id, &u, &w).unwrap().is_identity());

        assert!(matches!(
            induced_on_quotient(&t, &full, &e1),
            Err(LinalgError::NotContained { .. })
        ));
    }
}
