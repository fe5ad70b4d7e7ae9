use crate::exactlin::{image_basis, kernel_basis, Matrix};

use super::{restrict_triangle, MvError, MvTriangle};

/// First failing square of a would-be morphism.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MorphismViolation {
    #[error("{map} has shape {found:?}, expected {expected:?}")]
    Shape {
        map: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("γ′τ ≠ ηγ; residual {residual}")]
    GammaSquare { residual: Matrix },
    #[error("δ′η ≠ τδ; residual {residual}")]
    DeltaSquare { residual: Matrix },
}

impl From<MorphismViolation> for MvError {
    fn from(v: MorphismViolation) -> Self {
        MvError::InvalidMorphism(v)
    }
}

/// A morphism of triangles: `τ: V → V′`, `η: W → W′` with both squares
/// commuting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvMorphism {
    source: MvTriangle,
    target: MvTriangle,
    tau: Matrix,
    eta: Matrix,
}

impl MvMorphism {
    pub fn new(source: MvTriangle, target: MvTriangle, tau: Matrix, eta: Matrix) -> Result<Self, MvError> {
        check_squares(&source, &target, &tau, &eta)?;
        Ok(MvMorphism {
            source,
            target,
            tau,
            eta,
        })
    }

    pub fn identity(t: &MvTriangle) -> Self {
        MvMorphism {
            source: t.clone(),
            target: t.clone(),
            tau: Matrix::identity(t.field(), t.dim_v()),
            eta: Matrix::identity(t.field(), t.dim_w()),
        }
    }

    pub fn source(&self) -> &MvTriangle {
        &self.source
    }
    pub fn target(&self) -> &MvTriangle {
        &self.target
    }
    pub fn tau(&self) -> &Matrix {
        &self.tau
    }
    pub fn eta(&self) -> &Matrix {
        &self.eta
    }

    pub fn is_isomorphism(&self) -> bool {
        self.tau.is_invertible() && self.eta.is_invertible()
    }

    pub fn is_zero(&self) -> bool {
        self.tau.is_zero() && self.eta.is_zero()
    }

    pub fn compose(&self, then: &MvMorphism) -> Result<MvMorphism, MvError> {
        if then.source != self.target {
            return Err(MvError::Internal("composition of non-composable morphisms"));
        }
        MvMorphism::new(
            self.source.clone(),
            then.target.clone(),
            then.tau.mul(&self.tau)?,
            then.eta.mul(&self.eta)?,
        )
    }

    /// Kernel object with its inclusion, computed componentwise.
    pub fn kernel(&self) -> Result<(MvTriangle, MvMorphism), MvError> {
        let kv = kernel_basis(&self.tau);
        let kw = kernel_basis(&self.eta);
        let obj = restrict_triangle(&self.source, &kv, &kw)?;
        let inc = MvMorphism::new(obj.clone(), self.source.clone(), kv.basis().clone(), kw.basis().clone())?;
        Ok((obj, inc))
    }

    /// Cokernel object with its projection, computed componentwise.
    pub fn cokernel(&self) -> Result<(MvTriangle, MvMorphism), MvError> {
        let qv = image_basis(&self.tau).quotient();
        let qw = image_basis(&self.eta).quotient();
        let t = &self.target;
        let nu = qv.induced(t.nu(), &qv)?;
        let gamma = qv.induced(t.gamma(), &qw)?;
        let delta = qw.induced(t.delta(), &qv)?;
        let obj = MvTriangle::new(nu, gamma, delta)?;
        let proj = MvMorphism::new(t.clone(), obj.clone(), qv.projection, qw.projection)?;
        Ok((obj, proj))
    }
}

fn check_squares(source: &MvTriangle, target: &MvTriangle, tau: &Matrix, eta: &Matrix) -> Result<(), MvError> {
    let expect = |map, m: &Matrix, expected: (usize, usize)| {
        if m.shape() == expected {
            Ok(())
        } else {
            Err(MorphismViolation::Shape {
                map,
                expected,
                found: m.shape(),
            })
        }
    };
    expect("tau", tau, (target.dim_v(), source.dim_v()))?;
    expect("eta", eta, (target.dim_w(), source.dim_w()))?;
    let residual = target.gamma().mul(tau)?.sub(&eta.mul(source.gamma())?)?;
    if !residual.is_zero() {
        return Err(MorphismViolation::GammaSquare { residual }.into());
    }
    let residual = target.delta().mul(eta)?.sub(&tau.mul(source.delta())?)?;
    if !residual.is_zero() {
        return Err(MorphismViolation::DeltaSquare { residual }.into());
    }
    Ok(())
}

/// Which exactness condition a sequence of triangles fails.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SesViolation {
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("composite of the two morphisms is not zero")]
    CompositeNonzero,
    #[error("{0}-component of the first morphism is not injective")]
    NotInjective(&'static str),
    #[error("{0}-component of the second morphism is not surjective")]
    NotSurjective(&'static str),
    #[error("image ≠ kernel in the middle on the {0}-component")]
    NotExact(&'static str),
}

/// A short exact sequence `0 → left → middle → right → 0` of triangles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvSes {
    inj: MvMorphism,
    surj: MvMorphism,
}

impl MvSes {
    pub fn new(inj: MvMorphism, surj: MvMorphism) -> Result<Self, MvError> {
        if inj.target != surj.source {
            return Err(SesViolation::NotComposable.into());
        }
        if !inj.compose(&surj)?.is_zero() {
            return Err(SesViolation::CompositeNonzero.into());
        }
        for (part, a, b) in [("V", &inj.tau, &surj.tau), ("W", &inj.eta, &surj.eta)] {
            if a.rank() != a.cols() {
                return Err(SesViolation::NotInjective(part).into());
            }
            if b.rank() != b.rows() {
                return Err(SesViolation::NotSurjective(part).into());
            }
            // im a ⊆ ker b already holds; compare dimensions.
            if image_basis(a) != kernel_basis(b) {
                return Err(SesViolation::NotExact(part).into());
            }
        }
        Ok(MvSes { inj, surj })
    }

    pub fn left(&self) -> &MvTriangle {
        &self.inj.source
    }
    pub fn middle(&self) -> &MvTriangle {
        &self.inj.target
    }
    pub fn right(&self) -> &MvTriangle {
        &self.surj.target
    }
    pub fn inj(&self) -> &MvMorphism {
        &self.inj
    }
    pub fn surj(&self) -> &MvMorphism {
        &self.surj
    }
}
