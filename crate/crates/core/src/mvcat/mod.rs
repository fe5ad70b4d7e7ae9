//! Perverse sheaves on a line, stratified by a point, as MacPherson–Vilonen
//! triangles.
//!
//! A triangle is a pair of vector spaces `V`, `W` with maps
//! `γ: V → W`, `δ: W → V` and an automorphism `ν` of `V` satisfying
//! `δ ∘ γ = id − ν`. The stalk cohomology at the special point is
//! `(ker γ, coker γ)`; Verdier duality transposes the triangle.

mod iso;
mod morphism;

use rand::Rng;

use crate::exactlin::random::{random_matrix, random_matrix_of_rank};
use crate::exactlin::{kernel_basis, Field, LinalgError, Matrix, Subspace};

pub use iso::{is_isomorphic, IsoOutcome, NonIsoCertificate, DEFAULT_ISO_TRIALS};
pub use morphism::{MorphismViolation, MvMorphism, MvSes, SesViolation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MvError {
    #[error("invalid triangle: {0}")]
    InvalidTriangle(#[from] TriangleViolation),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(MorphismViolation),
    #[error("invalid short exact sequence: {0}")]
    InvalidSes(#[from] SesViolation),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
}

/// First violated triangle axiom, with the offending data.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TriangleViolation {
    #[error("{map} has shape {found:?}, expected {expected:?}")]
    Shape {
        map: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("maps are defined over different fields ({0} vs {1})")]
    Field(Field, Field),
    #[error("δγ ≠ id − ν; residual δγ − (id − ν) = {residual}")]
    VariationIdentity { residual: Matrix },
    #[error("internal monodromy ν = {nu} is not invertible")]
    MonodromyNotInvertible { nu: Matrix },
    #[error("ker γ ⊄ ker(id − ν): {witness} lies in ker γ only")]
    Cosupport { witness: Matrix },
}

/// Checks every triangle axiom on raw matrices, reporting the first failure.
pub fn validate_triangle(nu: &Matrix, gamma: &Matrix, delta: &Matrix) -> Result<(), TriangleViolation> {
    let field = nu.field();
    for m in [gamma, delta] {
        if m.field() != field {
            return Err(TriangleViolation::Field(field, m.field()));
        }
    }
    let dim_v = nu.rows();
    let dim_w = gamma.rows();
    let expect = |map, m: &Matrix, expected: (usize, usize)| {
        if m.shape() == expected {
            Ok(())
        } else {
            Err(TriangleViolation::Shape {
                map,
                expected,
                found: m.shape(),
            })
        }
    };
    expect("nu", nu, (dim_v, dim_v))?;
    expect("gamma", gamma, (dim_w, dim_v))?;
    expect("delta", delta, (dim_v, dim_w))?;

    let id_minus_nu = nu.identity_minus().expect("square");
    let residual = delta
        .mul(gamma)
        .and_then(|dg| dg.sub(&id_minus_nu))
        .expect("shapes checked");
    if !residual.is_zero() {
        return Err(TriangleViolation::VariationIdentity { residual });
    }
    if !nu.is_invertible() {
        return Err(TriangleViolation::MonodromyNotInvertible { nu: nu.clone() });
    }
    // Implied by δγ = id − ν, checked anyway.
    let ker_gamma = kernel_basis(gamma);
    let ker_var = kernel_basis(&id_minus_nu);
    if !ker_var.contains(&ker_gamma).expect("same ambient") {
        let witness = (0..ker_gamma.dim())
            .map(|j| ker_gamma.basis().column(j))
            .find(|v| !ker_var.contains_vector(v).unwrap_or(false))
            .expect("a basis vector escapes");
        return Err(TriangleViolation::Cosupport { witness });
    }
    Ok(())
}

/// A validated M-V triangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MvTriangle {
    nu: Matrix,
    gamma: Matrix,
    delta: Matrix,
}

/// Dimensions of `H⁻¹` and `H⁰` of the stalk at the special point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StalkCohomology {
    /// `dim ker γ`.
    pub dim_deg_minus1: usize,
    /// `dim coker γ`.
    pub dim_deg0: usize,
}

impl MvTriangle {
    pub fn new(nu: Matrix, gamma: Matrix, delta: Matrix) -> Result<Self, MvError> {
        validate_triangle(&nu, &gamma, &delta)?;
        Ok(MvTriangle { nu, gamma, delta })
    }

    /// The triangle with `V = 0` and `W = K^dim_w`.
    pub fn skyscraper(field: Field, dim_w: usize) -> Self {
        MvTriangle {
            nu: Matrix::identity(field, 0),
            gamma: Matrix::zeros(field, dim_w, 0),
            delta: Matrix::zeros(field, 0, dim_w),
        }
    }

    /// The triangle with `W = 0` and monodromy `id` on `K^dim_v`.
    pub fn trivial_local_system(field: Field, dim_v: usize) -> Self {
        MvTriangle {
            nu: Matrix::identity(field, dim_v),
            gamma: Matrix::zeros(field, 0, dim_v),
            delta: Matrix::zeros(field, dim_v, 0),
        }
    }

    pub fn field(&self) -> Field {
        self.nu.field()
    }
    pub fn dim_v(&self) -> usize {
        self.nu.rows()
    }
    pub fn dim_w(&self) -> usize {
        self.gamma.rows()
    }
    pub fn nu(&self) -> &Matrix {
        &self.nu
    }
    pub fn gamma(&self) -> &Matrix {
        &self.gamma
    }
    pub fn delta(&self) -> &Matrix {
        &self.delta
    }
    pub fn into_parts(self) -> (Matrix, Matrix, Matrix) {
        (self.nu, self.gamma, self.delta)
    }

    pub fn variation(&self) -> Matrix {
        self.nu.identity_minus().expect("square")
    }
}

pub fn stalk_cohomology(t: &MvTriangle) -> StalkCohomology {
    let r = t.gamma.rank();
    StalkCohomology {
        dim_deg_minus1: t.dim_v() - r,
        dim_deg0: t.dim_w() - r,
    }
}

/// `(dim ker(id − ν), dim coker(id − ν))`: the hypercohomology of the local
/// system on the punctured line in degrees −1 and 0.
pub fn punctured_hypercohomology(t: &MvTriangle) -> Result<(usize, usize), MvError> {
    let var = t.variation();
    let r = var.rank();
    let ker_gamma = kernel_basis(&t.gamma);
    if !kernel_basis(&var).contains(&ker_gamma)? {
        return Err(MvError::Internal("cosupport injection ker γ → ker(id − ν) fails"));
    }
    Ok((t.dim_v() - r, t.dim_v() - r))
}

/// The transposed triangle `(νᵗ, δᵗ, γᵗ)`.
pub fn dual_triangle(t: &MvTriangle) -> MvTriangle {
    // (δγ)ᵗ = γᵗδᵗ = id − νᵗ, so the axioms carry over.
    MvTriangle {
        nu: t.nu.transpose(),
        gamma: t.delta.transpose(),
        delta: t.gamma.transpose(),
    }
}

pub fn direct_sum(a: &MvTriangle, b: &MvTriangle) -> Result<MvTriangle, MvError> {
    Ok(MvTriangle {
        nu: a.nu.block_diag(&b.nu)?,
        gamma: a.gamma.block_diag(&b.gamma)?,
        delta: a.delta.block_diag(&b.delta)?,
    })
}

/// The split triangle `(0 → 0 over K^dim_w) ⊕ (K^dim_v with ν = id over 0)`.
pub fn split_sum(field: Field, dim_v: usize, dim_w: usize) -> MvTriangle {
    direct_sum(
        &MvTriangle::skyscraper(field, dim_w),
        &MvTriangle::trivial_local_system(field, dim_v),
    )
    .expect("same field")
}

/// Whether `t` is isomorphic to the split triangle of the same dimensions.
///
/// By inspection this happens exactly when `γ = 0`, `δ = 0` and `ν = id`;
/// the isomorphism search is run as a cross-check.
pub fn siersma_sum_test<R: Rng + ?Sized>(t: &MvTriangle, rng: &mut R) -> Result<bool, MvError> {
    let by_inspection = t.gamma.is_zero() && t.delta.is_zero() && t.nu.is_identity();
    let target = split_sum(t.field(), t.dim_v(), t.dim_w());
    let by_search = match is_isomorphic(t, &target, rng, DEFAULT_ISO_TRIALS)? {
        IsoOutcome::Isomorphic(_) => Some(true),
        IsoOutcome::NotIsomorphic(cert) if cert.is_proof() => Some(false),
        IsoOutcome::NotIsomorphic(_) => None,
    };
    match by_search {
        Some(found) if found != by_inspection => Err(MvError::Internal(
            "split-sum inspection disagrees with isomorphism search",
        )),
        _ => Ok(by_inspection),
    }
}

/// A random valid triangle with the given dimensions.
///
/// `γ` is drawn with a random rank (so nontrivial `ker γ` is common), `δ` is
/// arbitrary and `ν := id − δγ`; draws with singular `ν` are rejected.
pub fn random_valid_triangle<R: Rng + ?Sized>(rng: &mut R, field: Field, dim_v: usize, dim_w: usize) -> MvTriangle {
    loop {
        let max_rank = dim_v.min(dim_w);
        let rank = rng.random_range(0..=max_rank);
        let gamma = random_matrix_of_rank(rng, field, dim_w, dim_v, rank);
        let delta = if rng.random_bool(0.15) {
            Matrix::zeros(field, dim_v, dim_w)
        } else {
            random_matrix(rng, field, dim_v, dim_w)
        };
        let nu = delta
            .mul(&gamma)
            .and_then(|dg| Matrix::identity(field, dim_v).sub(&dg))
            .expect("shapes agree");
        if let Ok(t) = MvTriangle::new(nu, gamma, delta) {
            return t;
        }
    }
}

/// Componentwise kernel data used by [`MvMorphism::kernel`].
pub(crate) fn restrict_triangle(t: &MvTriangle, v_sub: &Subspace, w_sub: &Subspace) -> Result<MvTriangle, MvError> {
    let nu = v_sub.map_into(&t.nu, v_sub)?;
    let gamma = v_sub.map_into(&t.gamma, w_sub)?;
    let delta = w_sub.map_into(&t.delta, v_sub)?;
    MvTriangle::new(nu, gamma, delta)
}
