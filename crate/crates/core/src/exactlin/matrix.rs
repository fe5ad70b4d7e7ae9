use alloc::vec::Vec;
use core::fmt;

use super::{Field, LinalgError, Scalar};

/// Dense matrix over a single [`Field`], stored row-major.
///
/// Zero-sized shapes are allowed: a `0 × n` or `n × 0` matrix is the unique
/// linear map to or from the zero space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: (0..rows * cols).map(|_| Scalar::zero(field)).collect(),
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one(field);
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                debug_assert_eq!(s.field(), field);
                data.push(s);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from explicit rows. `cols` must be given so that
    /// `rows.is_empty()` still has a well-defined shape.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    op: "from_rows",
                    expected: (nrows, cols),
                    found: (nrows, row.len()),
                });
            }
            for s in row {
                if s.field() != field {
                    return Err(LinalgError::FieldMismatch {
                        left: field,
                        right: s.field(),
                    });
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Integer literal matrix; every row must have the same length.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(field, rows.len(), cols, |i, j| Scalar::from_i64(field, rows[i][j]))
    }

    /// Single column from entries.
    pub fn column_vector(field: Field, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Matrix {
            field,
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    /// Standard basis column `e_i` of `K^n`.
    pub fn unit_vector(field: Field, n: usize, i: usize) -> Self {
        Self::from_fn(field, n, 1, |r, _| {
            if r == i {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "entry field must match matrix field");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.field, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn columns(&self, range: core::ops::Range<usize>) -> Matrix {
        let start = range.start;
        Matrix::from_fn(self.field, self.rows, range.len(), |i, j| {
            self.get(i, start + j).clone()
        })
    }

    pub fn row_block(&self, range: core::ops::Range<usize>) -> Matrix {
        let start = range.start;
        Matrix::from_fn(self.field, range.len(), self.cols, |i, j| {
            self.get(start + i, j).clone()
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn same_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(LinalgError::FieldMismatch {
                left: self.field,
                right: other.field,
            })
        }
    }

    fn same_shape(&self, other: &Matrix, op: &'static str) -> Result<(), LinalgError> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::DimensionMismatch {
                op,
                expected: self.shape(),
                found: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_shape(other, "add")?;
        Ok(Matrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
            ..self.clone_shape()
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_shape(other, "sub")?;
        Ok(Matrix {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
            ..self.clone_shape()
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| -a).collect(),
            ..self.clone_shape()
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| a * c).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                expected: (self.cols, other.cols),
                found: other.shape(),
            });
        }
        let field = self.field;
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// `id - self`, for square matrices.
    pub fn identity_minus(&self) -> Result<Matrix, LinalgError> {
        self.require_square("identity_minus")?;
        Matrix::identity(self.field, self.rows).sub(self)
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn trace(&self) -> Result<Scalar, LinalgError> {
        self.require_square("trace")?;
        Ok((0..self.rows).fold(Scalar::zero(self.field), |acc, i| &acc + self.get(i, i)))
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.data[row * m.cols + j] = v;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(r, j) - &(&factor * m.get(row, j));
                    m.data[r * m.cols + j] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        // Eliminate along the shorter side.
        if self.rows > self.cols {
            self.transpose().rref().pivots.len()
        } else {
            self.rref().pivots.len()
        }
    }

    /// Columns spanning the null space, one per free variable of the RREF.
    pub(crate) fn null_space_columns(&self) -> Matrix {
        let Rref { matrix: r, pivots } = self.rref();
        let field = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, Scalar::one(field));
            for (prow, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, -r.get(prow, fc));
            }
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n)).ok()?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        Some(matrix.columns(n..2 * n))
    }

    pub fn determinant(&self) -> Result<Scalar, LinalgError> {
        self.require_square("determinant")?;
        let mut m = self.clone();
        let mut det = Scalar::one(self.field);
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Scalar::zero(self.field));
            };
            if p != col {
                m.swap_rows(p, col);
                det = -&det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..m.rows {
                let factor = m.get(r, col) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(r, j) - &(&factor * m.get(col, j));
                    m.data[r * m.cols + j] = v;
                }
            }
        }
        Ok(det)
    }

    /// Some `x` with `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        self.same_field(b)?;
        if b.rows != self.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "solve",
                expected: (self.rows, b.cols),
                found: b.shape(),
            });
        }
        let n = self.cols;
        let aug = self.hstack(b)?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, n, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, matrix.get(r, n + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "hstack",
                expected: (self.rows, other.cols),
                found: other.shape(),
            });
        }
        Ok(Matrix::from_fn(
            self.field,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "vstack",
                expected: (other.rows, self.cols),
                found: other.shape(),
            });
        }
        Ok(Matrix::from_fn(
            self.field,
            self.rows + other.rows,
            self.cols,
            |i, j| {
                if i < self.rows {
                    self.get(i, j).clone()
                } else {
                    other.get(i - self.rows, j).clone()
                }
            },
        ))
    }

    pub fn block_diag(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        let field = self.field;
        Ok(Matrix::from_fn(
            field,
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => Scalar::zero(field),
            },
        ))
    }

    /// Entries rendered through `Display`, row by row.
    pub fn to_string_rows(&self) -> Vec<Vec<alloc::string::String>> {
        use alloc::string::ToString;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, s) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{s}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(q(), 2).rank(), 2);
        assert_eq!(Matrix::zeros(q(), 2, 2).rank(), 0);
        assert_eq!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zeros(q(), 0, 3).rank(), 0);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_i64(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert_eq!(m.determinant().unwrap(), Scalar::one(q()));
        let rot = Matrix::from_i64(q(), &[&[0, 1], &[-1, 0]]);
        assert_eq!(
            rot.identity_minus().unwrap().determinant().unwrap(),
            Scalar::from_i64(q(), 2)
        );
        assert!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());
        assert!(Matrix::identity(q(), 0).inverse().unwrap().is_identity());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_i64(q(), &[&[1, 1], &[0, 2]]);
        let b = Matrix::from_i64(q(), &[&[3], &[1]]);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(*x.get(0, 0), Scalar::Rational(rat(5, 2)));
        assert_eq!(m.mul(&x).unwrap(), b);
        let singular = Matrix::from_i64(q(), &[&[1, 1], &[1, 1]]);
        assert!(singular.solve(&Matrix::from_i64(q(), &[&[1], &[0]])).unwrap().is_none());
    }

    #[test]
    fn mismatched_fields_and_shapes() {
        let a = Matrix::identity(q(), 2);
        let b = Matrix::identity(Field::Prime(7), 2);
        assert!(matches!(a.mul(&b), Err(LinalgError::FieldMismatch { .. })));
        assert!(matches!(
            a.mul(&Matrix::identity(q(), 3)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        let rows = alloc::vec![alloc::vec![Scalar::one(q()), Scalar::one(Field::Prime(7))]];
        assert!(Matrix::from_rows(q(), 2, rows).is_err());
    }
}
