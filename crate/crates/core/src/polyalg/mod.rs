//! Sparse polynomials over ℚ in at most three variables, with the tools
//! needed for local intersection numbers: derivatives, substitution,
//! Sylvester resultants, gcds and a truncated-staircase oracle.

mod gcd;
mod poly;
mod resultant;
mod staircase;

use alloc::string::String;
use alloc::vec::Vec;

pub use gcd::gcd;
pub use poly::{MPoly, Monomial, MAX_VARS};
pub use resultant::{bareiss_determinant, intersection_by_resultant, resultant};
pub use staircase::{
    local_quotient_dim, local_quotient_dim_auto, LocalDim, DEFAULT_TRUNCATION, MONOMIAL_BUDGET, TRUNCATION_SCHEDULE,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("at most {max} variables are supported, got {0}", max = MAX_VARS)]
    TooManyVariables(usize),
    #[error("invalid variable name {0:?}")]
    BadVariableName(String),
    #[error("variable {0:?} declared twice")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("polynomials over different variables: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    NotDivisible,
    #[error("the zero polynomial has infinite order")]
    InfiniteOrder,
    #[error("{0} is not a polynomial in one variable")]
    NotUnivariate(String),
    #[error("both polynomials are free of {0}; the resultant is undefined")]
    BothFree(String),
    #[error("determinant of an empty matrix")]
    EmptyDeterminant,
    #[error("the curves share a component")]
    CommonComponent,
    #[error("intersection at the origin is not isolated: common factor {common_factor}")]
    NonIsolated { common_factor: MPoly },
    #[error(
        "local quotient did not stabilize by truncation degree {truncation} (d_k = {dims:?}); raise the truncation"
    )]
    NotStabilized { truncation: usize, dims: Vec<usize> },
    #[error("no generators")]
    NoGenerators,
    #[error("genericity check failed: {0}")]
    GenericityFailure(&'static str),
}

/// Generators of an ideal defining a curve, over one variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurveIdeal {
    generators: Vec<MPoly>,
}

impl PlaneCurveIdeal {
    /// The empty list stands for the empty curve.
    pub fn new(generators: Vec<MPoly>) -> Result<Self, PolyError> {
        if let Some(first) = generators.first() {
            let vars = first.vars();
            for g in &generators {
                if g.vars() != vars {
                    return Err(PolyError::VariableMismatch {
                        left: vars.iter().map(|s| (*s).into()).collect(),
                        right: g.vars().iter().map(|s| (*s).into()).collect(),
                    });
                }
            }
        }
        Ok(PlaneCurveIdeal { generators })
    }

    pub fn empty() -> Self {
        PlaneCurveIdeal { generators: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }
}
