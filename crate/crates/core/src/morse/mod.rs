//! The Morse short exact sequence of triangles and the monodromy acting on it.
//!
//! The sequence is
//!
//! ```text
//!          0      →   K^λ¹   =   K^λ¹
//!        ↓↑ 0        θ↓↑ω        γ↓↑δ
//!   0 →  K^μ₀  --β→   K^ζ  --π→  K^λ⁰  → 0
//! ```
//!
//! with `ζ = μ₀ + λ⁰` and the same internal monodromy `ν` on both
//! `K^λ¹`. The right-hand triangle is the vanishing-cycle triangle at the
//! origin, so `ker γ` and `coker γ` are the reduced Milnor-fibre cohomology
//! in degrees `n − 1` and `n`.
//!
//! The obstruction: when `μ₀ = 1 + λ¹` and `im θ ⊆ im β`, the Milnor
//! monodromy induces a map on the line `im β / im θ` whose trace is
//! `tr T_W1 − tr T_V = (−1)ⁿ − (−1)ⁿ = 0`. An automorphism of a line has
//! nonzero trace in every field, so such data cannot come from a function.

pub mod sample;

use crate::exactlin::{
    image_basis, induced_on_quotient, kernel_basis, restrict_to_invariant, Field, LinalgError, Matrix, Scalar, Subspace,
};
use crate::mvcat::{MvError, MvMorphism, MvSes, MvTriangle};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MorseError {
    #[error("ζ = {zeta} but μ₀ + λ⁰ = {mu0} + {lambda0}")]
    ZetaMismatch { mu0: usize, lambda0: usize, zeta: usize },
    #[error("{map} has shape {found:?}, expected {expected:?}")]
    Shape {
        map: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("{map} is over {found}, expected {expected}")]
    Field {
        map: &'static str,
        expected: Field,
        found: Field,
    },
    #[error("θ is not injective (rank {rank} < λ¹ = {lambda1})")]
    ThetaNotInjective { rank: usize, lambda1: usize },
    #[error("β is not injective (rank {rank} < μ₀ = {mu0})")]
    BetaNotInjective { rank: usize, mu0: usize },
    #[error("π is not surjective (rank {rank} < λ⁰ = {lambda0})")]
    PiNotSurjective { rank: usize, lambda0: usize },
    #[error("W-row is not exact: im β ≠ ker π")]
    NotExact,
    #[error("{identity} fails; residual {residual}")]
    Commuting { identity: &'static str, residual: Matrix },
    #[error("{which} triangle: {source}")]
    Triangle {
        which: &'static str,
        #[source]
        source: MvError,
    },
    #[error("{map} is not invertible")]
    NotInvertible { map: &'static str },
    #[error("im {subspace} is not T_W2-invariant: {witness} maps to {image}")]
    NotInvariant {
        subspace: &'static str,
        witness: Matrix,
        image: Matrix,
    },
    #[error("n = {0} is out of scope; the trace formula needs n ≥ 2")]
    DimensionOutOfScope(usize),
    #[error(
        "A'Campo trace constraint not met: need tr T_V = tr T_W1 = {expected} for n = {n}, \
         found tr T_V = {trace_v}, tr T_W1 = {trace_w1}"
    )]
    TraceConstraint {
        n: usize,
        expected: Scalar,
        trace_v: Scalar,
        trace_w1: Scalar,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("internal inconsistency: {0}")]
    Internal(&'static str),
}

/// Validated Morse sequence data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseSes {
    mu0: usize,
    lambda1: usize,
    lambda0: usize,
    zeta: usize,
    nu: Matrix,
    theta: Matrix,
    omega: Matrix,
    beta: Matrix,
    pi: Matrix,
    gamma: Matrix,
    delta: Matrix,
}

/// Raw inputs to [`MorseSes::build`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseSesData {
    pub mu0: usize,
    pub lambda1: usize,
    pub lambda0: usize,
    pub zeta: usize,
    pub nu: Matrix,
    pub theta: Matrix,
    pub omega: Matrix,
    pub beta: Matrix,
    pub pi: Matrix,
    pub gamma: Matrix,
    pub delta: Matrix,
}

fn residual_of(lhs: Matrix, rhs: Matrix) -> Result<Matrix, MorseError> {
    Ok(lhs.sub(&rhs)?)
}

fn check_commutes(identity: &'static str, lhs: Matrix, rhs: Matrix) -> Result<(), MorseError> {
    let residual = residual_of(lhs, rhs)?;
    if residual.is_zero() {
        Ok(())
    } else {
        Err(MorseError::Commuting { identity, residual })
    }
}

impl MorseSes {
    /// Validates every invariant, reporting the first that fails.
    pub fn build(d: MorseSesData) -> Result<Self, MorseError> {
        if d.zeta != d.mu0 + d.lambda0 {
            return Err(MorseError::ZetaMismatch {
                mu0: d.mu0,
                lambda0: d.lambda0,
                zeta: d.zeta,
            });
        }
        let field = d.nu.field();
        let shapes: [(&'static str, &Matrix, (usize, usize)); 7] = [
            ("nu", &d.nu, (d.lambda1, d.lambda1)),
            ("theta", &d.theta, (d.zeta, d.lambda1)),
            ("omega", &d.omega, (d.lambda1, d.zeta)),
            ("beta", &d.beta, (d.zeta, d.mu0)),
            ("pi", &d.pi, (d.lambda0, d.zeta)),
            ("gamma", &d.gamma, (d.lambda0, d.lambda1)),
            ("delta", &d.delta, (d.lambda1, d.lambda0)),
        ];
        for (map, m, expected) in shapes {
            if m.field() != field {
                return Err(MorseError::Field {
                    map,
                    expected: field,
                    found: m.field(),
                });
            }
            if m.shape() != expected {
                return Err(MorseError::Shape {
                    map,
                    expected,
                    found: m.shape(),
                });
            }
        }
        let rank = d.theta.rank();
        if rank < d.lambda1 {
            return Err(MorseError::ThetaNotInjective {
                rank,
                lambda1: d.lambda1,
            });
        }
        let rank = d.beta.rank();
        if rank < d.mu0 {
            return Err(MorseError::BetaNotInjective { rank, mu0: d.mu0 });
        }
        let rank = d.pi.rank();
        if rank < d.lambda0 {
            return Err(MorseError::PiNotSurjective {
                rank,
                lambda0: d.lambda0,
            });
        }
        // Ranks already match (μ₀ = ζ − λ⁰), so πβ = 0 is exactness.
        if !d.pi.mul(&d.beta)?.is_zero() {
            return Err(MorseError::NotExact);
        }
        check_commutes("πθ = γ", d.pi.mul(&d.theta)?, d.gamma.clone())?;
        check_commutes("ωβ = 0", d.omega.mul(&d.beta)?, Matrix::zeros(field, d.lambda1, d.mu0))?;
        check_commutes("δπ = ω", d.delta.mul(&d.pi)?, d.omega.clone())?;
        MvTriangle::new(d.nu.clone(), d.gamma.clone(), d.delta.clone())
            .map_err(|source| MorseError::Triangle { which: "right", source })?;
        MvTriangle::new(d.nu.clone(), d.theta.clone(), d.omega.clone()).map_err(|source| MorseError::Triangle {
            which: "middle",
            source,
        })?;
        Ok(MorseSes {
            mu0: d.mu0,
            lambda1: d.lambda1,
            lambda0: d.lambda0,
            zeta: d.zeta,
            nu: d.nu,
            theta: d.theta,
            omega: d.omega,
            beta: d.beta,
            pi: d.pi,
            gamma: d.gamma,
            delta: d.delta,
        })
    }

    /// Builds from `(ν, θ, β, π, δ)`, setting `γ := πθ` and `ω := δπ`.
    pub fn from_core(nu: Matrix, theta: Matrix, beta: Matrix, pi: Matrix, delta: Matrix) -> Result<Self, MorseError> {
        let gamma = pi.mul(&theta)?;
        let omega = delta.mul(&pi)?;
        MorseSes::build(MorseSesData {
            mu0: beta.cols(),
            lambda1: nu.rows(),
            lambda0: pi.rows(),
            zeta: beta.rows(),
            nu,
            theta,
            omega,
            beta,
            pi,
            gamma,
            delta,
        })
    }

    pub fn field(&self) -> Field {
        self.nu.field()
    }
    pub fn mu0(&self) -> usize {
        self.mu0
    }
    pub fn lambda1(&self) -> usize {
        self.lambda1
    }
    pub fn lambda0(&self) -> usize {
        self.lambda0
    }
    pub fn zeta(&self) -> usize {
        self.zeta
    }
    pub fn nu(&self) -> &Matrix {
        &self.nu
    }
    pub fn theta(&self) -> &Matrix {
        &self.theta
    }
    pub fn omega(&self) -> &Matrix {
        &self.omega
    }
    pub fn beta(&self) -> &Matrix {
        &self.beta
    }
    pub fn pi(&self) -> &Matrix {
        &self.pi
    }
    pub fn gamma(&self) -> &Matrix {
        &self.gamma
    }
    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn data(&self) -> MorseSesData {
        MorseSesData {
            mu0: self.mu0,
            lambda1: self.lambda1,
            lambda0: self.lambda0,
            zeta: self.zeta,
            nu: self.nu.clone(),
            theta: self.theta.clone(),
            omega: self.omega.clone(),
            beta: self.beta.clone(),
            pi: self.pi.clone(),
            gamma: self.gamma.clone(),
            delta: self.delta.clone(),
        }
    }

    /// `(ν, θ, ω)`.
    pub fn middle_triangle(&self) -> MvTriangle {
        MvTriangle::new(self.nu.clone(), self.theta.clone(), self.omega.clone()).expect("validated")
    }

    /// `(ν, γ, δ)`.
    pub fn right_triangle(&self) -> MvTriangle {
        MvTriangle::new(self.nu.clone(), self.gamma.clone(), self.delta.clone()).expect("validated")
    }

    /// The sequence as morphisms of triangles, with the left triangle
    /// supported at the point.
    pub fn to_mv_ses(&self) -> Result<MvSes, MvError> {
        let field = self.field();
        let left = MvTriangle::skyscraper(field, self.mu0);
        let middle = self.middle_triangle();
        let right = self.right_triangle();
        let inj = MvMorphism::new(
            left,
            middle.clone(),
            Matrix::zeros(field, self.lambda1, 0),
            self.beta.clone(),
        )?;
        let surj = MvMorphism::new(middle, right, Matrix::identity(field, self.lambda1), self.pi.clone())?;
        MvSes::new(inj, surj)
    }
}

/// `dim ker γ = λ¹`, cross-checked against `γ = 0` and `im θ ⊆ im β`.
pub fn equality_criterion(s: &MorseSes) -> Result<bool, MorseError> {
    let by_dimension = kernel_basis(&s.gamma).dim() == s.lambda1;
    let by_vanishing = s.gamma.is_zero();
    let by_containment = image_basis(&s.beta).contains(&image_basis(&s.theta))?;
    if by_dimension != by_vanishing || by_vanishing != by_containment {
        return Err(MorseError::Internal("dim ker γ = λ¹, γ = 0 and im θ ⊆ im β disagree"));
    }
    Ok(by_dimension)
}

/// `dim coker γ − dim ker γ = λ⁰ − λ¹`.
pub fn euler_relation(s: &MorseSes) -> bool {
    let r = s.gamma.rank();
    let (ker, coker) = (s.lambda1 - r, s.lambda0 - r);
    coker as i64 - ker as i64 == s.lambda0 as i64 - s.lambda1 as i64
}

/// Milnor monodromy on each vertex of the sequence, for `f` on `ℂ^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyAction {
    pub n: usize,
    /// On `K^λ¹`.
    pub t_v: Matrix,
    /// On `K^μ₀`.
    pub t_w1: Matrix,
    /// On `K^ζ`.
    pub t_w2: Matrix,
    /// On `K^λ⁰`.
    pub t_w3: Matrix,
}

impl MonodromyAction {
    pub fn identity(s: &MorseSes, n: usize) -> Self {
        let f = s.field();
        MonodromyAction {
            n,
            t_v: Matrix::identity(f, s.lambda1),
            t_w1: Matrix::identity(f, s.mu0),
            t_w2: Matrix::identity(f, s.zeta),
            t_w3: Matrix::identity(f, s.lambda0),
        }
    }

    fn parts(&self) -> [(&'static str, &Matrix); 4] {
        [
            ("T_V", &self.t_v),
            ("T_W1", &self.t_w1),
            ("T_W2", &self.t_w2),
            ("T_W3", &self.t_w3),
        ]
    }
}

/// Shapes and every commuting identity, without invertibility.
fn check_equivariance(s: &MorseSes, t: &MonodromyAction) -> Result<(), MorseError> {
    let field = s.field();
    let dims = [s.lambda1, s.mu0, s.zeta, s.lambda0];
    for ((map, m), d) in t.parts().into_iter().zip(dims) {
        if m.field() != field {
            return Err(MorseError::Field {
                map,
                expected: field,
                found: m.field(),
            });
        }
        if m.shape() != (d, d) {
            return Err(MorseError::Shape {
                map,
                expected: (d, d),
                found: m.shape(),
            });
        }
    }
    let identities: [(&'static str, &Matrix, &Matrix, &Matrix, &Matrix); 7] = [
        ("T_V ν = ν T_V", &t.t_v, &s.nu, &s.nu, &t.t_v),
        ("T_W2 θ = θ T_V", &t.t_w2, &s.theta, &s.theta, &t.t_v),
        ("ω T_W2 = T_V ω", &s.omega, &t.t_w2, &t.t_v, &s.omega),
        ("T_W2 β = β T_W1", &t.t_w2, &s.beta, &s.beta, &t.t_w1),
        ("π T_W2 = T_W3 π", &s.pi, &t.t_w2, &t.t_w3, &s.pi),
        ("T_W3 γ = γ T_V", &t.t_w3, &s.gamma, &s.gamma, &t.t_v),
        ("T_V δ = δ T_W3", &t.t_v, &s.delta, &s.delta, &t.t_w3),
    ];
    for (identity, a, b, c, d) in identities {
        check_commutes(identity, a.mul(b)?, c.mul(d)?)?;
    }
    Ok(())
}

fn check_invertible(t: &MonodromyAction) -> Result<(), MorseError> {
    for (map, m) in t.parts() {
        if !m.is_invertible() {
            return Err(MorseError::NotInvertible { map });
        }
    }
    Ok(())
}

/// Checks that `t` is an automorphism of the sequence `s`.
pub fn validate_monodromy(s: &MorseSes, t: &MonodromyAction) -> Result<(), MorseError> {
    check_equivariance(s, t)?;
    check_invertible(t)
}

/// `(−1)ⁿ`, the trace of the Milnor monodromy on reduced middle cohomology of
/// an isolated singularity in `n + 1` variables.
pub fn acampo_trace(n: usize, field: Field) -> Result<Scalar, MorseError> {
    if n < 2 {
        return Err(MorseError::DimensionOutOfScope(n));
    }
    Ok(Scalar::from_i64(field, if n.is_multiple_of(2) { 1 } else { -1 }))
}

/// `tr T_W1 = tr T_V = (−1)ⁿ` in the field of `t`.
pub fn check_trace_constraints(t: &MonodromyAction) -> Result<bool, MorseError> {
    let expected = acampo_trace(t.n, t.t_v.field())?;
    Ok(t.t_v.trace()? == expected && t.t_w1.trace()? == expected)
}

/// Data showing a supplied configuration is impossible: the monodromy
/// induces a map of trace zero on the line `im β / im θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContradictionWitness {
    pub im_theta: Subspace,
    pub im_beta: Subspace,
    pub trace_on_theta: Scalar,
    pub trace_on_beta: Scalar,
    /// The induced 1×1 map on `im β / im θ`.
    pub quotient_map: Matrix,
    pub quotient_trace: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionVerdict {
    /// `μ₀ = 1 + λ¹`.
    pub hypothesis_holds: bool,
    /// Upper bound (inclusive) on `dim H̃ⁿ⁻¹ = dim ker γ`.
    pub bound_deg_nminus1: usize,
    /// Upper bound (inclusive) on `dim H̃ⁿ = dim coker γ`.
    pub bound_deg_n: usize,
    /// Whether the bounds are the strict ones (`λ¹ − 1`, `λ⁰ − 1`).
    pub strict: bool,
    pub dim_ker_gamma: usize,
    pub dim_coker_gamma: usize,
    pub contradiction_witness: Option<ContradictionWitness>,
}

fn invariant_image(t_w2: &Matrix, sub: &Subspace, name: &'static str) -> Result<Matrix, MorseError> {
    restrict_to_invariant(t_w2, sub).map_err(|e| match e {
        LinalgError::NotInvariant { witness, image } => MorseError::NotInvariant {
            subspace: name,
            witness,
            image,
        },
        other => other.into(),
    })
}

/// Bounds the Milnor-fibre cohomology at the origin, using the trace
/// obstruction when `μ₀ = 1 + λ¹`.
///
/// Data with `μ₀ = 1 + λ¹`, the trace constraint and `im θ ⊆ im β` is
/// answered with a [`ContradictionWitness`] rather than an error; such data
/// always has a singular `T_W1`, so invertibility is checked only outside
/// that case.
pub fn theorem_3_3(s: &MorseSes, t: &MonodromyAction) -> Result<ObstructionVerdict, MorseError> {
    check_equivariance(s, t)?;
    if !check_trace_constraints(t)? {
        return Err(MorseError::TraceConstraint {
            n: t.n,
            expected: acampo_trace(t.n, s.field())?,
            trace_v: t.t_v.trace()?,
            trace_w1: t.t_w1.trace()?,
        });
    }
    let im_theta = image_basis(&s.theta);
    let im_beta = image_basis(&s.beta);
    let on_theta = invariant_image(&t.t_w2, &im_theta, "θ")?;
    let on_beta = invariant_image(&t.t_w2, &im_beta, "β")?;

    let r = s.gamma.rank();
    let (dim_ker_gamma, dim_coker_gamma) = (s.lambda1 - r, s.lambda0 - r);
    let hypothesis_holds = s.mu0 == 1 + s.lambda1;

    if hypothesis_holds && im_beta.contains(&im_theta)? {
        let quotient_map = induced_on_quotient(&t.t_w2, &im_theta, &im_beta)?;
        let trace_on_theta = on_theta.trace()?;
        let trace_on_beta = on_beta.trace()?;
        let quotient_trace = quotient_map.trace()?;
        if quotient_trace != &trace_on_beta - &trace_on_theta {
            return Err(MorseError::Internal("trace is not additive on im θ ⊆ im β"));
        }
        if !quotient_trace.is_zero() {
            return Err(MorseError::Internal(
                "equal traces on im θ and im β leave a nonzero quotient trace",
            ));
        }
        return Ok(ObstructionVerdict {
            hypothesis_holds,
            bound_deg_nminus1: s.lambda1.saturating_sub(1),
            bound_deg_n: s.lambda0.saturating_sub(1),
            strict: true,
            dim_ker_gamma,
            dim_coker_gamma,
            contradiction_witness: Some(ContradictionWitness {
                im_theta,
                im_beta,
                trace_on_theta,
                trace_on_beta,
                quotient_map,
                quotient_trace,
            }),
        });
    }
    check_invertible(t)?;

    let (bound_deg_nminus1, bound_deg_n) = if hypothesis_holds {
        (s.lambda1 - 1, s.lambda0.saturating_sub(1))
    } else {
        (s.lambda1, s.lambda0)
    };
    if dim_ker_gamma > bound_deg_nminus1 || dim_coker_gamma > bound_deg_n {
        return Err(MorseError::Internal("observed stalk cohomology exceeds the bound"));
    }
    Ok(ObstructionVerdict {
        hypothesis_holds,
        bound_deg_nminus1,
        bound_deg_n,
        strict: hypothesis_holds,
        dim_ker_gamma,
        dim_coker_gamma,
        contradiction_witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;

    fn q() -> Field {
        Field::Rational
    }

    /// μ₀ = 2, λ¹ = 1, λ⁰ = 5 in the standard basis: β = first two unit
    /// vectors, π = projection onto the last five, θ = e1 + e3 so that
    /// γ = πθ = e1 is injective.
    pub(crate) fn example_ses(field: Field) -> MorseSes {
        let beta = Matrix::identity(field, 7).columns(0..2);
        let pi = Matrix::identity(field, 7).row_block(2..7);
        let theta = Matrix::unit_vector(field, 7, 0)
            .add(&Matrix::unit_vector(field, 7, 2))
            .unwrap();
        let delta = Matrix::unit_vector(field, 5, 1).transpose();
        MorseSes::from_core(Matrix::identity(field, 1), theta, beta, pi, delta).unwrap()
    }

    #[test]
    fn example_sequence_validates() {
        let s = example_ses(q());
        assert_eq!((s.mu0(), s.lambda1(), s.lambda0(), s.zeta()), (2, 1, 5, 7));
        assert_eq!(*s.gamma(), Matrix::unit_vector(q(), 5, 0));
        assert!(s.to_mv_ses().is_ok());
        assert!(!equality_criterion(&s).unwrap());
        assert!(euler_relation(&s));
    }

    #[test]
    fn rejections_are_distinct() {
        let s = example_ses(q());
        let mut d = s.data();
        d.theta = Matrix::zeros(q(), 7, 1);
        d.gamma = Matrix::zeros(q(), 5, 1);
        assert!(matches!(MorseSes::build(d), Err(MorseError::ThetaNotInjective { .. })));

        let mut d = s.data();
        d.zeta = 8;
        assert!(matches!(MorseSes::build(d), Err(MorseError::ZetaMismatch { .. })));

        let mut d = s.data();
        d.gamma = Matrix::unit_vector(q(), 5, 3);
        assert!(matches!(
            MorseSes::build(d),
            Err(MorseError::Commuting {
                identity: "πθ = γ", ..
            })
        ));

        let mut d = s.data();
        d.beta = Matrix::identity(q(), 7).columns(1..3);
        assert!(matches!(MorseSes::build(d), Err(MorseError::NotExact)));
    }

    #[test]
    fn equality_case() {
        let f = q();
        let beta = Matrix::identity(f, 7).columns(0..2);
        let pi = Matrix::identity(f, 7).row_block(2..7);
        let theta = Matrix::unit_vector(f, 7, 1);
        let delta = Matrix::unit_vector(f, 5, 4).transpose();
        let s = MorseSes::from_core(Matrix::identity(f, 1), theta, beta, pi, delta).unwrap();
        assert!(s.gamma().is_zero());
        assert!(equality_criterion(&s).unwrap());

        let empty = MorseSes::from_core(
            Matrix::identity(f, 0),
            Matrix::zeros(f, 3, 0),
            Matrix::identity(f, 3).columns(0..1),
            Matrix::identity(f, 3).row_block(1..3),
            Matrix::zeros(f, 0, 2),
        )
        .unwrap();
        assert!(equality_criterion(&empty).unwrap());
    }

    #[test]
    fn monodromy_validation() {
        let s = example_ses(q());
        let id = MonodromyAction::identity(&s, 2);
        assert!(validate_monodromy(&s, &id).is_ok());

        let mut bad = id.clone();
        bad.t_w2.set(2, 0, Scalar::from_i64(q(), 1));
        assert!(matches!(
            validate_monodromy(&s, &bad),
            Err(MorseError::Commuting {
                identity: "T_W2 θ = θ T_V",
                ..
            })
        ));

        // Block-diagonal T_W2 = diag(T_W1, T_W3) with canonical β, π.
        let f = q();
        let t_w1 = Matrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        let t_w3 = Matrix::identity(f, 5);
        let blocky = MonodromyAction {
            n: 2,
            t_v: Matrix::identity(f, 1),
            t_w2: t_w1.block_diag(&t_w3).unwrap(),
            t_w1,
            t_w3,
        };
        // θ = e1 + e3 is fixed by diag(T_W1, id) only if T_W1 e1 = e1.
        assert!(validate_monodromy(&s, &blocky).is_ok());
    }

    #[test]
    fn acampo_values() {
        assert_eq!(acampo_trace(2, q()).unwrap(), Scalar::from_i64(q(), 1));
        assert_eq!(acampo_trace(3, q()).unwrap(), Scalar::from_i64(q(), -1));
        assert_eq!(acampo_trace(4, q()).unwrap(), Scalar::from_i64(q(), 1));
        assert!(matches!(acampo_trace(1, q()), Err(MorseError::DimensionOutOfScope(1))));
    }

    #[test]
    fn trace_constraint_examples() {
        let f = q();
        let trivial = MorseSes::from_core(
            Matrix::identity(f, 1),
            Matrix::unit_vector(f, 2, 0),
            Matrix::unit_vector(f, 2, 0),
            Matrix::unit_vector(f, 2, 1).transpose(),
            Matrix::zeros(f, 1, 1),
        )
        .unwrap();
        assert!(check_trace_constraints(&MonodromyAction::identity(&trivial, 2)).unwrap());
        assert!(!check_trace_constraints(&MonodromyAction::identity(&example_ses(f), 2)).unwrap());

        let minus = |k: usize| Matrix::identity(f, k).scale(&Scalar::from_i64(f, -1));
        let t = MonodromyAction {
            n: 3,
            t_v: minus(1),
            t_w1: Matrix::from_i64(f, &[&[-1, 0], &[0, 0]]),
            t_w2: minus(7),
            t_w3: minus(5),
        };
        assert!(check_trace_constraints(&t).unwrap());
    }

    /// Monodromy on the example with both traces 1. `T_W2` is block upper
    /// triangular; its corner `X` is chosen so that `θ = e1 + e3` is fixed.
    pub(crate) fn example_monodromy(field: Field) -> MonodromyAction {
        let t_w1 = Matrix::from_i64(field, &[&[2, 1], &[-1, -1]]);
        let mut t_w2 = t_w1.block_diag(&Matrix::identity(field, 5)).unwrap();
        t_w2.set(0, 2, Scalar::from_i64(field, -1));
        t_w2.set(1, 2, Scalar::from_i64(field, 1));
        MonodromyAction {
            n: 2,
            t_v: Matrix::identity(field, 1),
            t_w1,
            t_w2,
            t_w3: Matrix::identity(field, 5),
        }
    }

    #[test]
    fn example_bounds() {
        for field in [q(), Field::Prime(101)] {
            let s = example_ses(field);
            let t = example_monodromy(field);
            validate_monodromy(&s, &t).unwrap();
            let v = theorem_3_3(&s, &t).unwrap();
            assert!(v.hypothesis_holds && v.strict);
            assert_eq!((v.bound_deg_nminus1, v.bound_deg_n), (0, 4));
            assert_eq!((v.dim_ker_gamma, v.dim_coker_gamma), (0, 4));
            assert!(v.contradiction_witness.is_none());
        }
    }

    #[test]
    fn hypothesis_gate() {
        // μ₀ = λ¹ = 1, λ⁰ = 1.
        let f = q();
        let s = MorseSes::from_core(
            Matrix::identity(f, 1),
            Matrix::unit_vector(f, 2, 0),
            Matrix::unit_vector(f, 2, 0),
            Matrix::unit_vector(f, 2, 1).transpose(),
            Matrix::zeros(f, 1, 1),
        )
        .unwrap();
        let v = theorem_3_3(&s, &MonodromyAction::identity(&s, 2)).unwrap();
        assert!(!v.hypothesis_holds && !v.strict);
        assert_eq!((v.bound_deg_nminus1, v.bound_deg_n), (1, 1));
    }

    #[test]
    fn fabricated_containment_yields_witness() {
        // λ¹ = 1, μ₀ = 2, λ⁰ = 1: θ = e1 ∈ im β = span{e1, e2}, so γ = 0.
        let f = q();
        let s = MorseSes::from_core(
            Matrix::identity(f, 1),
            Matrix::unit_vector(f, 3, 0),
            Matrix::identity(f, 3).columns(0..2),
            Matrix::unit_vector(f, 3, 2).transpose(),
            Matrix::zeros(f, 1, 1),
        )
        .unwrap();
        // Traces 1 on im θ and on im β force the quotient map to be 0.
        let t_w1 = Matrix::from_i64(f, &[&[1, 5], &[0, 0]]);
        let t = MonodromyAction {
            n: 2,
            t_v: Matrix::identity(f, 1),
            t_w2: t_w1.block_diag(&Matrix::identity(f, 1)).unwrap(),
            t_w1,
            t_w3: Matrix::identity(f, 1),
        };
        let v = theorem_3_3(&s, &t).unwrap();
        let w = v.contradiction_witness.expect("witness");
        assert_eq!(w.trace_on_theta, Scalar::one(f));
        assert_eq!(w.trace_on_beta, Scalar::one(f));
        assert!(w.quotient_trace.is_zero());
        assert_eq!(w.quotient_map.shape(), (1, 1));
        assert!(matches!(
            validate_monodromy(&s, &t),
            Err(MorseError::NotInvertible { map: "T_W1" })
        ));
    }

    #[test]
    fn trace_violation_is_refused() {
        let s = example_ses(q());
        assert!(matches!(
            theorem_3_3(&s, &MonodromyAction::identity(&s, 2)),
            Err(MorseError::TraceConstraint { .. })
        ));
    }
}
