//! Exact-scalar JSON dialect for triangles, Morse sequences and monodromy.
//!
//! Every file carries a field tag (`"q"` or `"fp:<p>"`), its dimensions
//! and matrices as lists of rows of scalar strings (`"3"`, `"-2/5"`). The
//! dimensions fix the shape of matrices with no rows or no columns.

use linesing_core::morse::{MonodromyAction, MorseSes, MorseSesData};
use linesing_core::mvcat::MvTriangle;
use linesing_core::{Field, Matrix, Scalar};
use serde::{Deserialize, Serialize};

/// Bumped on any incompatible change to a file or report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown field tag {0:?} (expected \"q\" or \"fp:<prime>\")")]
    FieldTag(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported schema_version {found} (this build reads {SCHEMA_VERSION})")]
    Schema { found: u32 },
    #[error("expected a {expected} file, found kind {found:?}")]
    Kind { expected: &'static str, found: String },
    #[error("{name}: expected {rows}×{cols}, found {found_rows} rows{detail}")]
    Shape {
        name: String,
        rows: usize,
        cols: usize,
        found_rows: usize,
        detail: String,
    },
    #[error("{name}[{row}][{col}]: {source}")]
    Scalar {
        name: String,
        row: usize,
        col: usize,
        #[source]
        source: linesing_core::LinalgError,
    },
    #[error("file is over {file} but --field {flag} was given")]
    FieldConflict { file: Field, flag: Field },
}

pub fn parse_field(tag: &str) -> Result<Field, FormatError> {
    if tag == "q" {
        return Ok(Field::Rational);
    }
    let p: u64 = tag
        .strip_prefix("fp:")
        .and_then(|p| p.parse().ok())
        .ok_or_else(|| FormatError::FieldTag(tag.to_string()))?;
    Field::prime(p).map_err(|_| FormatError::NotPrime(p))
}

pub fn field_tag(field: Field) -> String {
    field.to_string()
}

/// Reconciles a file's field tag with the `--field` flag; the file wins
/// when the flag is absent.
pub fn resolve_field(file: Option<&str>, flag: Option<Field>) -> Result<Field, FormatError> {
    match (file.map(parse_field).transpose()?, flag) {
        (Some(f), Some(g)) if f != g => Err(FormatError::FieldConflict { file: f, flag: g }),
        (Some(f), _) => Ok(f),
        (None, Some(g)) => Ok(g),
        (None, None) => Ok(Field::Rational),
    }
}

pub type Rows = Vec<Vec<String>>;

pub fn matrix_rows(m: &Matrix) -> Rows {
    m.to_string_rows()
}

pub fn matrix_from_rows(
    field: Field,
    name: &str,
    rows: usize,
    cols: usize,
    data: &Rows,
) -> Result<Matrix, FormatError> {
    let shape_err = |detail: String| FormatError::Shape {
        name: name.to_string(),
        rows,
        cols,
        found_rows: data.len(),
        detail,
    };
    if data.len() != rows {
        return Err(shape_err(String::new()));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(shape_err(format!(", row {i} has {} entries", row.len())));
        }
        for (j, s) in row.iter().enumerate() {
            let v = Scalar::parse(field, s).map_err(|source| FormatError::Scalar {
                name: name.to_string(),
                row: i,
                col: j,
                source,
            })?;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

fn check_header(version: u32, kind: &str, expected: &'static str) -> Result<(), FormatError> {
    if version != SCHEMA_VERSION {
        return Err(FormatError::Schema { found: version });
    }
    if kind != expected {
        return Err(FormatError::Kind {
            expected,
            found: kind.to_string(),
        });
    }
    Ok(())
}

/// `(V, W, ν, γ, δ)` with `ν: V → V`, `γ: V → W`, `δ: W → V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleFile {
    pub schema_version: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub dim_v: usize,
    pub dim_w: usize,
    pub nu: Rows,
    pub gamma: Rows,
    pub delta: Rows,
}

/// Matrices of a triangle file before the axioms are checked.
pub struct RawTriangle {
    pub field: Field,
    pub nu: Matrix,
    pub gamma: Matrix,
    pub delta: Matrix,
}

impl TriangleFile {
    pub const KIND: &'static str = "triangle";

    pub fn from_triangle(t: &MvTriangle) -> Self {
        TriangleFile {
            schema_version: SCHEMA_VERSION,
            kind: Self::KIND.into(),
            field: Some(field_tag(t.field())),
            dim_v: t.dim_v(),
            dim_w: t.dim_w(),
            nu: matrix_rows(t.nu()),
            gamma: matrix_rows(t.gamma()),
            delta: matrix_rows(t.delta()),
        }
    }

    pub fn raw(&self, flag: Option<Field>) -> Result<RawTriangle, FormatError> {
        check_header(self.schema_version, &self.kind, Self::KIND)?;
        let field = resolve_field(self.field.as_deref(), flag)?;
        let (v, w) = (self.dim_v, self.dim_w);
        Ok(RawTriangle {
            field,
            nu: matrix_from_rows(field, "nu", v, v, &self.nu)?,
            gamma: matrix_from_rows(field, "gamma", w, v, &self.gamma)?,
            delta: matrix_from_rows(field, "delta", v, w, &self.delta)?,
        })
    }
}

/// A Morse sequence. `gamma` and `omega` may be omitted, in which case
/// they are derived as `π∘θ` and `δ∘π`; when present they are checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseSesFile {
    pub schema_version: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub mu0: usize,
    pub lambda1: usize,
    pub lambda0: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<usize>,
    pub nu: Rows,
    pub theta: Rows,
    pub beta: Rows,
    pub pi: Rows,
    pub delta: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Rows>,
}

impl MorseSesFile {
    pub const KIND: &'static str = "morse_ses";

    pub fn from_ses(s: &MorseSes) -> Self {
        MorseSesFile {
            schema_version: SCHEMA_VERSION,
            kind: Self::KIND.into(),
            field: Some(field_tag(s.field())),
            mu0: s.mu0(),
            lambda1: s.lambda1(),
            lambda0: s.lambda0(),
            zeta: Some(s.zeta()),
            nu: matrix_rows(s.nu()),
            theta: matrix_rows(s.theta()),
            beta: matrix_rows(s.beta()),
            pi: matrix_rows(s.pi()),
            delta: matrix_rows(s.delta()),
            gamma: Some(matrix_rows(s.gamma())),
            omega: Some(matrix_rows(s.omega())),
        }
    }

    /// Matrices with their declared shapes; validation is left to
    /// [`MorseSes::build`].
    pub fn data(&self, flag: Option<Field>) -> Result<MorseSesData, FormatError> {
        check_header(self.schema_version, &self.kind, Self::KIND)?;
        let field = resolve_field(self.field.as_deref(), flag)?;
        let (m, l1, l0) = (self.mu0, self.lambda1, self.lambda0);
        let zeta = self.zeta.unwrap_or(m + l0);
        let mat = |name: &str, r, c, rows: &Rows| matrix_from_rows(field, name, r, c, rows);
        let nu = mat("nu", l1, l1, &self.nu)?;
        let theta = mat("theta", zeta, l1, &self.theta)?;
        let beta = mat("beta", zeta, m, &self.beta)?;
        let pi = mat("pi", l0, zeta, &self.pi)?;
        let delta = mat("delta", l1, l0, &self.delta)?;
        let gamma = match &self.gamma {
            Some(rows) => mat("gamma", l0, l1, rows)?,
            None => pi.mul(&theta).expect("shapes fixed above"),
        };
        let omega = match &self.omega {
            Some(rows) => mat("omega", l1, zeta, rows)?,
            None => delta.mul(&pi).expect("shapes fixed above"),
        };
        Ok(MorseSesData {
            mu0: m,
            lambda1: l1,
            lambda0: l0,
            zeta,
            nu,
            theta,
            omega,
            beta,
            pi,
            gamma,
            delta,
        })
    }
}

/// Monodromy on the vertices `K^λ¹`, `K^μ₀`, `K^ζ`, `K^λ⁰`, for `f` on
/// `ℂ^{n+1}`. Matrix sizes come from the rows themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyFile {
    pub schema_version: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub n: usize,
    pub t_v: Rows,
    pub t_w1: Rows,
    pub t_w2: Rows,
    pub t_w3: Rows,
}

fn square(field: Field, name: &str, rows: &Rows) -> Result<Matrix, FormatError> {
    matrix_from_rows(field, name, rows.len(), rows.len(), rows)
}

impl MonodromyFile {
    pub const KIND: &'static str = "monodromy";

    pub fn from_action(t: &MonodromyAction) -> Self {
        MonodromyFile {
            schema_version: SCHEMA_VERSION,
            kind: Self::KIND.into(),
            field: Some(field_tag(t.t_v.field())),
            n: t.n,
            t_v: matrix_rows(&t.t_v),
            t_w1: matrix_rows(&t.t_w1),
            t_w2: matrix_rows(&t.t_w2),
            t_w3: matrix_rows(&t.t_w3),
        }
    }

    pub fn action(&self, flag: Option<Field>) -> Result<MonodromyAction, FormatError> {
        check_header(self.schema_version, &self.kind, Self::KIND)?;
        let field = resolve_field(self.field.as_deref(), flag)?;
        Ok(MonodromyAction {
            n: self.n,
            t_v: square(field, "t_v", &self.t_v)?,
            t_w1: square(field, "t_w1", &self.t_w1)?,
            t_w2: square(field, "t_w2", &self.t_w2)?,
            t_w3: square(field, "t_w3", &self.t_w3)?,
        })
    }
}

/// A single square matrix, used for the internal monodromy `ν`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub schema_version: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Rows,
}

impl MatrixFile {
    pub const KIND: &'static str = "matrix";

    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixFile {
            schema_version: SCHEMA_VERSION,
            kind: Self::KIND.into(),
            field: Some(field_tag(m.field())),
            rows: m.rows(),
            cols: m.cols(),
            entries: matrix_rows(m),
        }
    }

    pub fn matrix(&self, flag: Option<Field>) -> Result<Matrix, FormatError> {
        check_header(self.schema_version, &self.kind, Self::KIND)?;
        let field = resolve_field(self.field.as_deref(), flag)?;
        matrix_from_rows(field, "entries", self.rows, self.cols, &self.entries)
    }
}

/// A polar-curve parametrization `u(t)`, `v(t)` valid modulo
/// `t^truncation`, written in the polynomial grammar in the axis variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParametrizationFile {
    pub schema_version: u32,
    pub kind: String,
    pub truncation: u32,
    pub u: String,
    pub v: String,
}

impl ParametrizationFile {
    pub const KIND: &'static str = "parametrization";

    pub fn check(&self) -> Result<(), FormatError> {
        check_header(self.schema_version, &self.kind, Self::KIND)
    }
}

/// Canonical JSON text: two-space pretty printing with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_triangle(field: Field) -> MvTriangle {
        let gamma = Matrix::unit_vector(field, 5, 0);
        let delta = Matrix::unit_vector(field, 5, 1).transpose();
        MvTriangle::new(Matrix::identity(field, 1), gamma, delta).unwrap()
    }

    #[test]
    fn field_tags() {
        assert_eq!(parse_field("q").unwrap(), Field::Rational);
        assert_eq!(parse_field("fp:101").unwrap(), Field::Prime(101));
        assert!(matches!(parse_field("fp:100"), Err(FormatError::NotPrime(100))));
        assert!(matches!(parse_field("r"), Err(FormatError::FieldTag(_))));
        assert_eq!(field_tag(Field::Prime(7)), "fp:7");
    }

    #[test]
    fn triangle_round_trip_is_byte_identical() {
        for field in [Field::Rational, Field::Prime(101)] {
            let t = example_triangle(field);
            let text = to_json(&TriangleFile::from_triangle(&t));
            let back: TriangleFile = serde_json::from_str(&text).unwrap();
            assert_eq!(to_json(&back), text);
            let raw = back.raw(None).unwrap();
            assert_eq!(MvTriangle::new(raw.nu, raw.gamma, raw.delta).unwrap(), t);
        }
    }

    #[test]
    fn empty_dimensions_keep_their_shape() {
        let t = MvTriangle::skyscraper(Field::Rational, 3);
        let file = TriangleFile::from_triangle(&t);
        assert!(file.nu.is_empty());
        let raw = file.raw(None).unwrap();
        assert_eq!(raw.gamma.shape(), (3, 0));
        assert_eq!(raw.delta.shape(), (0, 3));
    }

    #[test]
    fn malformed_files_are_rejected() {
        let mut file = TriangleFile::from_triangle(&example_triangle(Field::Rational));
        file.gamma[2] = vec![];
        assert!(matches!(file.raw(None), Err(FormatError::Shape { .. })));
        let mut file = TriangleFile::from_triangle(&example_triangle(Field::Rational));
        file.nu[0][0] = "1/0".into();
        assert!(matches!(file.raw(None), Err(FormatError::Scalar { .. })));
        let file = TriangleFile::from_triangle(&example_triangle(Field::Rational));
        assert!(matches!(
            file.raw(Some(Field::Prime(5))),
            Err(FormatError::FieldConflict { .. })
        ));
        let mut file = file;
        file.field = None;
        assert_eq!(file.raw(Some(Field::Prime(5))).unwrap().field, Field::Prime(5));
        file.kind = "monodromy".into();
        assert!(matches!(file.raw(None), Err(FormatError::Kind { .. })));
    }
}
