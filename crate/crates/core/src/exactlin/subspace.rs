use alloc::vec::Vec;

use super::{Field, LinalgError, Matrix, Scalar};

/// A linear subspace of `K^n`, stored as a basis in reduced column echelon
/// form.
///
/// The echelon form is unique, so two `Subspace` values compare equal
/// exactly when they are the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    /// Pivot row of each basis column.
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, ambient, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The column span of `generators`.
    pub fn span(generators: &Matrix) -> Self {
        let r = generators.transpose().rref();
        let dim = r.pivots.len();
        let basis = r.matrix.row_block(0..dim).transpose();
        Subspace {
            ambient: generators.rows(),
            basis,
            pivots: r.pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of the column `v` in this subspace's basis, if `v` lies in
    /// it.
    pub fn coordinates(&self, v: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        self.check_vector(v)?;
        let coords = Matrix::from_fn(self.field(), self.dim(), 1, |j, _| v.get(self.pivots[j], 0).clone());
        if self.basis.mul(&coords)? == *v {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    fn check_vector(&self, v: &Matrix) -> Result<(), LinalgError> {
        if v.field() != self.field() {
            return Err(LinalgError::FieldMismatch {
                left: self.field(),
                right: v.field(),
            });
        }
        if v.shape() != (self.ambient, 1) {
            return Err(LinalgError::DimensionMismatch {
                op: "coordinates",
                expected: (self.ambient, 1),
                found: v.shape(),
            });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &Matrix) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_compatible(other)?;
        for j in 0..other.dim() {
            if !self.contains_vector(&other.basis.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch {
                left: self.field(),
                right: other.field(),
            });
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Matrix `C` with `map · B_self = B_target · C`, where `B_*` are the
    /// stored bases. Fails with a witness when `map` does not send `self`
    /// into `target`.
    pub fn map_into(&self, map: &Matrix, target: &Subspace) -> Result<Matrix, LinalgError> {
        if map.cols() != self.ambient || map.rows() != target.ambient {
            return Err(LinalgError::DimensionMismatch {
                op: "map_into",
                expected: (target.ambient, self.ambient),
                found: map.shape(),
            });
        }
        let images = map.mul(&self.basis)?;
        let mut out = Matrix::zeros(self.field(), target.dim(), self.dim());
        for j in 0..self.dim() {
            let image = images.column(j);
            match target.coordinates(&image)? {
                Some(c) => {
                    for i in 0..target.dim() {
                        out.set(i, j, c.get(i, 0).clone());
                    }
                }
                None => {
                    return Err(LinalgError::NotInvariant {
                        witness: self.basis.column(j),
                        image,
                    })
                }
            }
        }
        Ok(out)
    }

    /// Whether `self` is invariant under the square matrix `t`.
    pub fn is_invariant_under(&self, t: &Matrix) -> bool {
        self.map_into(t, self).is_ok()
    }

    /// Extends the basis by standard unit vectors to a basis of `K^n`; the
    /// returned columns span a complement.
    pub fn complement_columns(&self) -> Matrix {
        let field = self.field();
        let mut chosen: Vec<usize> = Vec::new();
        // Unit vectors at non-pivot rows complete a reduced echelon basis.
        for i in 0..self.ambient {
            if !self.pivots.contains(&i) {
                chosen.push(i);
            }
        }
        Matrix::from_fn(field, self.ambient, chosen.len(), |r, c| {
            if r == chosen[c] {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        })
    }

    /// The quotient `K^n / self`: a projection `P` (k × n) with kernel
    /// exactly `self`, and a section `S` (n × k) with `P S = id`.
    pub fn quotient(&self) -> Quotient {
        let section = self.complement_columns();
        let full = self.basis.hstack(&section).expect("same field and rows");
        let inv = full.inverse().expect("basis plus complement is invertible");
        let k = section.cols();
        let projection = inv.row_block(self.dim()..self.dim() + k);
        Quotient { projection, section }
    }
}

/// Projection and section for a quotient space.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub projection: Matrix,
    pub section: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.section.cols()
    }

    /// Matrix of the map induced by `map` between quotients, given that `map`
    /// sends the source subspace into the target subspace.
    pub fn induced(&self, map: &Matrix, target: &Quotient) -> Result<Matrix, LinalgError> {
        target.projection.mul(&map.mul(&self.section)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Matrix::from_i64(q(), &[&[1, 1], &[2, 0], &[0, 3]]);
        let b = Matrix::from_i64(q(), &[&[2, 1], &[2, 4], &[3, -3]]);
        assert_eq!(Subspace::span(&a), Subspace::span(&b));
    }

    #[test]
    fn quotient_projection_kills_subspace() {
        let u = Subspace::span(&Matrix::from_i64(q(), &[&[1], &[1], &[0]]));
        let quo = u.quotient();
        assert_eq!(quo.dim(), 2);
        assert!(quo.projection.mul(u.basis()).unwrap().is_zero());
        assert!(quo.projection.mul(&quo.section).unwrap().is_identity());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let u = Subspace::full(q(), 2);
        let w = Subspace::zero(q(), 3);
        assert!(matches!(u.contains(&w), Err(LinalgError::AmbientMismatch { .. })));
    }
}
