//! Milnor and Lê numbers of a polynomial in three variables whose critical
//! locus is a coordinate axis.
//!
//! Variables are reordered as `(t, u, v)` with `t` the axis coordinate,
//! so `Σf = {u = v = 0}` and the slicing form is `L = t`. Every
//! multiplicity is computed by two independent routes and a disagreement is
//! an error, never a silent choice. Passing the checks is evidence of
//! genericity at the truncation scale used, not a proof of it.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::exactlin::{kernel_basis, Matrix};
use crate::morse::{theorem_3_3, MonodromyAction, MorseError, MorseSes, ObstructionVerdict};
use crate::polyalg::{
    gcd, intersection_by_resultant, local_quotient_dim, local_quotient_dim_auto, LocalDim, MPoly, Monomial,
    PlaneCurveIdeal, PolyError,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LeError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected a polynomial in exactly three variables, got {0:?}")]
    NotThreeVariables(Vec<String>),
    #[error("the linear form must be the axis variable {axis:?}; got {form:?}")]
    UnsupportedLinearForm { axis: String, form: String },
    #[error("f does not vanish on the axis: f restricted to it is {0}")]
    NotOnAxis(String),
    #[error("the axis is not critical: ∂f/∂{var} restricted to it is {restriction}")]
    AxisNotCritical { var: String, restriction: String },
    #[error("the slice {slice} has a non-isolated singularity at the axis point: {source}")]
    NonIsolatedSlice {
        slice: String,
        #[source]
        source: PolyError,
    },
    #[error("{quantity}: {first_method} gives {first} but {second_method} gives {second}")]
    MethodDisagreement {
        quantity: &'static str,
        first_method: &'static str,
        first: u32,
        second_method: &'static str,
        second: u32,
    },
    #[error("generic slice Milnor numbers disagree across samples: {samples:?}")]
    SampleInstability { samples: Vec<(String, u32)> },
    #[error("polar curve not computable at desk scale ({reason}); supply a parametrization")]
    PolarNotComputable { reason: String },
    #[error("{quantity} not computable ({reason}); supply a parametrization")]
    NoMethodApplies { quantity: &'static str, reason: String },
    #[error(
        "the polar curve has a component along which ∂f/∂{axis} vanishes, so Σf has a component off the axis: {source}"
    )]
    ExtraComponent {
        axis: String,
        #[source]
        source: PolyError,
    },
    #[error("parametrization does not lie on the polar curve: generator {index} has order {order} < truncation {truncation}")]
    ParametrizationOffCurve { index: usize, order: u32, truncation: u32 },
    #[error("{quantity} along the parametrization has order ≥ its truncation {truncation}; raise the truncation")]
    ParametrizationTooShort { quantity: &'static str, truncation: u32 },
    #[error("chain rule fails: attaching rank {attaching} ≠ λ⁰ {lambda0} + (Γ¹·V(L)) {polar_degree}")]
    ChainRule {
        attaching: u32,
        lambda0: u32,
        polar_degree: u32,
    },
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Morse(#[from] MorseError),
}

impl LeError {
    /// Whether the failure is about genericity or a method running out of
    /// reach, as opposed to malformed input.
    pub fn is_degradation(&self) -> bool {
        matches!(
            self,
            LeError::MethodDisagreement { .. }
                | LeError::SampleInstability { .. }
                | LeError::PolarNotComputable { .. }
                | LeError::NoMethodApplies { .. }
                | LeError::ParametrizationTooShort { .. }
                | LeError::ChainRule { .. }
                | LeError::Poly(PolyError::NotStabilized { .. })
                | LeError::Poly(PolyError::GenericityFailure(_))
        )
    }
}

/// `f` in variables `(t, u, v)` with `t` the axis coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSingularityInput {
    f: MPoly,
    /// Names in the order `(axis, u, v)`.
    names: [String; 3],
}

/// A polynomial parametrization `τ ↦ (t, u, v) = (τ, u(τ), v(τ))` of the
/// polar curve, valid modulo `τ^truncation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    /// `u(τ)`, `v(τ)` as polynomials in the axis variable.
    pub u: MPoly,
    pub v: MPoly,
    pub truncation: u32,
}

/// Settings shared by the analysis steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    /// Fixed staircase truncation degree; `None` uses the 16, 32, 64
    /// schedule.
    pub truncation: Option<usize>,
    /// Number of generic slices sampled for `λ¹` (at least 3).
    pub slice_samples: usize,
    /// Rounds of fresh samples before giving up on `λ¹`.
    pub slice_retries: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            truncation: None,
            slice_samples: 3,
            slice_retries: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl Diagnostic {
    fn pass(check: &str, detail: impl Into<String>) -> Self {
        Diagnostic {
            check: check.to_string(),
            passed: true,
            detail: detail.into(),
        }
    }
    fn warn(check: &str, detail: impl Into<String>) -> Self {
        Diagnostic {
            check: check.to_string(),
            passed: false,
            detail: detail.into(),
        }
    }
}

impl LineSingularityInput {
    /// `axis` names the critical line; `linear_form` must equal it.
    pub fn new(f: MPoly, axis: &str, linear_form: &str) -> Result<Self, LeError> {
        let vars = f.vars();
        if vars.len() != 3 {
            return Err(LeError::NotThreeVariables(vars.iter().map(|s| s.to_string()).collect()));
        }
        f.var_index(axis)?;
        if linear_form != axis {
            return Err(LeError::UnsupportedLinearForm {
                axis: axis.to_string(),
                form: linear_form.to_string(),
            });
        }
        let rest: Vec<&str> = vars.iter().copied().filter(|v| *v != axis).collect();
        let order = [axis, rest[0], rest[1]];
        let f = f.with_vars(&order)?;
        Ok(LineSingularityInput {
            f,
            names: order.map(String::from),
        })
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn axis(&self) -> &str {
        &self.names[0]
    }

    /// The transverse variables `(u, v)`.
    pub fn transverse(&self) -> (&str, &str) {
        (&self.names[1], &self.names[2])
    }

    fn vars(&self) -> [&str; 3] {
        [&self.names[0], &self.names[1], &self.names[2]]
    }

    fn constant(&self, c: BigRational) -> MPoly {
        MPoly::constant(&self.vars(), c).expect("valid vars")
    }

    fn zero(&self) -> MPoly {
        MPoly::zero(&self.vars()).expect("valid vars")
    }

    fn var(&self, i: usize) -> MPoly {
        MPoly::var(&self.vars(), &self.names[i]).expect("valid vars")
    }

    fn partial(&self, i: usize) -> MPoly {
        self.f.partial_derivative(&self.names[i]).expect("known var")
    }

    /// `p(t, 0, 0)`.
    fn on_axis(&self, p: &MPoly) -> MPoly {
        let (u, v) = self.transverse();
        p.substitute(&[(u, self.zero()), (v, self.zero())]).expect("same vars")
    }

    /// `f(c, u, v)` and its two partials, over `(u, v)`.
    fn slice_jacobian(&self, c: &BigRational) -> (MPoly, [MPoly; 2]) {
        let (u, v) = self.transverse();
        let slice = self
            .f
            .substitute(&[(self.axis(), self.constant(c.clone()))])
            .and_then(|p| p.with_vars(&[u, v]))
            .expect("axis substituted away");
        let du = slice.partial_derivative(u).expect("known var");
        let dv = slice.partial_derivative(v).expect("known var");
        (slice, [du, dv])
    }

    fn staircase(&self, cfg: &AnalysisConfig, gens: &[MPoly]) -> Result<LocalDim, PolyError> {
        match cfg.truncation {
            Some(d) => local_quotient_dim(gens, d),
            None => local_quotient_dim_auto(gens),
        }
    }
}

fn describe_slice(axis: &str, c: &BigRational) -> String {
    format!("{axis} = {c}")
}

/// Checks that `f` vanishes on the axis, that the axis is critical, and
/// that the slice through the origin has an isolated singularity.
///
/// Components of `Σf` off the axis are detected later, as a polar
/// component inside `V(∂f/∂t)` (see [`lambda_zero`]).
pub fn verify_line_critical_locus(
    inp: &LineSingularityInput,
    cfg: &AnalysisConfig,
) -> Result<Vec<Diagnostic>, LeError> {
    let mut out = Vec::new();
    let on_axis = inp.on_axis(&inp.f);
    if !on_axis.is_zero() {
        return Err(LeError::NotOnAxis(on_axis.to_string()));
    }
    out.push(Diagnostic::pass("f vanishes on the axis", "f(t, 0, 0) ≡ 0"));
    for i in 0..3 {
        let r = inp.on_axis(&inp.partial(i));
        if !r.is_zero() {
            return Err(LeError::AxisNotCritical {
                var: inp.names[i].clone(),
                restriction: r.to_string(),
            });
        }
    }
    out.push(Diagnostic::pass(
        "axis is critical",
        "all three partials vanish on the axis",
    ));
    let (_, jac) = inp.slice_jacobian(&BigRational::zero());
    let d = inp
        .staircase(cfg, &jac)
        .map_err(|source| slice_error(describe_slice(inp.axis(), &BigRational::zero()), source))?;
    out.push(Diagnostic::pass(
        "slice through the origin is isolated",
        format!(
            "local Jacobian length {} (stable from truncation {})",
            d.dim, d.stabilized_at
        ),
    ));
    Ok(out)
}

/// Only a certificate of non-isolation is reported as such; a staircase that
/// did not stabilize stays a degradation.
fn slice_error(slice: String, source: PolyError) -> LeError {
    match source {
        PolyError::NotStabilized { .. } => LeError::Poly(source),
        source => LeError::NonIsolatedSlice { slice, source },
    }
}

/// A multiplicity together with what each route produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicity {
    pub value: u32,
    pub routes: Vec<(&'static str, u32)>,
}

/// Milnor number at the origin of `f|_{t = 0}`, by staircase and by sheared
/// resultant.
pub fn mu_zero<R: Rng + ?Sized>(
    inp: &LineSingularityInput,
    cfg: &AnalysisConfig,
    rng: &mut R,
) -> Result<Multiplicity, LeError> {
    slice_milnor_number(inp, cfg, &BigRational::zero(), rng, "μ₀")
}

fn slice_milnor_number<R: Rng + ?Sized>(
    inp: &LineSingularityInput,
    cfg: &AnalysisConfig,
    c: &BigRational,
    rng: &mut R,
    quantity: &'static str,
) -> Result<Multiplicity, LeError> {
    let (_, [du, dv]) = inp.slice_jacobian(c);
    let slice = describe_slice(inp.axis(), c);
    let by_staircase = inp
        .staircase(cfg, &[du.clone(), dv.clone()])
        .map_err(|source| slice_error(slice.clone(), source))?
        .dim as u32;
    let (u, v) = inp.transverse();
    let by_resultant = match intersection_by_resultant(&du, &dv, u, v, rng) {
        Ok(n) => n,
        Err(PolyError::CommonComponent) => {
            return Err(LeError::NonIsolatedSlice {
                slice,
                source: PolyError::CommonComponent,
            })
        }
        Err(e) => return Err(e.into()),
    };
    if by_staircase != by_resultant {
        return Err(LeError::MethodDisagreement {
            quantity,
            first_method: "staircase",
            first: by_staircase,
            second_method: "sheared resultant",
            second: by_resultant,
        });
    }
    Ok(Multiplicity {
        value: by_staircase,
        routes: vec![("staircase", by_staircase), ("sheared resultant", by_resultant)],
    })
}

/// `λ¹`: the Milnor number at the axis point of the slice `t = c`, for
/// several random nonzero `c` that must all agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaOne {
    pub value: u32,
    /// `(c, μ at (c, 0, 0))` for the accepted samples.
    pub samples: Vec<(BigRational, u32)>,
    pub rounds: usize,
}

pub fn lambda_one<R: Rng + ?Sized>(
    inp: &LineSingularityInput,
    cfg: &AnalysisConfig,
    rng: &mut R,
) -> Result<LambdaOne, LeError> {
    let count = cfg.slice_samples.max(3);
    let mut last = Vec::new();
    for round in 1..=cfg.slice_retries.max(1) {
        let mut samples = Vec::with_capacity(count);
        for _ in 0..count {
            let c = random_slice_parameter(rng);
            // The axis point (c, 0, 0) is already the origin of the slice.
            let mu = slice_milnor_number(inp, cfg, &c, rng, "λ¹")?.value;
            samples.push((c, mu));
        }
        if samples.iter().all(|(_, m)| *m == samples[0].1) {
            return Ok(LambdaOne {
                value: samples[0].1,
                samples,
                rounds: round,
            });
        }
        last = samples;
    }
    Err(LeError::SampleInstability {
        samples: last.into_iter().map(|(c, m)| (c.to_string(), m)).collect(),
    })
}

/// Nonzero `a/b` with `|a| ≤ 9`, `1 ≤ b ≤ 5`.
fn random_slice_parameter<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    loop {
        let a: i64 = rng.random_range(-9..=9);
        if a != 0 {
            let b: i64 = rng.random_range(1..=5);
            return BigRational::new(BigInt::from(a), BigInt::from(b));
        }
    }
}

/// Whether `V(m, g)` lies in the axis near the origin, for a monomial `m`
/// in the transverse variables.
fn discard_is_inside_axis(inp: &LineSingularityInput, m: &Monomial, g: &MPoly) -> bool {
    for (i, other) in [(1usize, 2usize), (2, 1)] {
        if m.exp(i) == 0 {
            continue;
        }
        // On {x_i = 0}, g must be x_other^k times a local unit.
        let r = g.substitute(&[(&inp.names[i], inp.zero())]).expect("same vars");
        if r.is_zero() {
            return false;
        }
        let k = r.terms().map(|(mono, _)| mono.exp(other)).min().expect("nonzero");
        let mut shift = Monomial::ONE;
        shift.0[other] = k;
        let unit = r.div_monomial(&shift).expect("common power divides");
        if unit.at_origin().is_zero() {
            return false;
        }
    }
    true
}

/// The relative polar curve: `V(∂f/∂u, ∂f/∂v)` with the axis removed by
/// stripping monomial factors in `u`, `v`.
///
/// A factor `m` is stripped from one generator only when `V(m, other)` lies
/// in the axis, so no polar component is lost; otherwise it is kept. An empty ideal means the
/// polar curve does not pass through the origin.
pub fn polar_curve(inp: &LineSingularityInput) -> Result<PlaneCurveIdeal, LeError> {
    let mut gens = [inp.partial(1), inp.partial(2)];
    for idx in 0..2 {
        let m = gens[idx].monomial_content();
        let m = Monomial([0, m.exp(1), m.exp(2)]);
        if m == Monomial::ONE {
            continue;
        }
        let other = &gens[1 - idx];
        if !discard_is_inside_axis(inp, &m, other) {
            // V(m, other) has a component off the axis; keep the factor.
            continue;
        }
        gens[idx] = gens[idx].div_monomial(&m).expect("monomial content divides");
    }
    if gens.iter().any(|g| !g.at_origin().is_zero()) {
        return Ok(PlaneCurveIdeal::empty());
    }
    if gens.iter().all(|g| inp.on_axis(g).is_zero()) {
        return Err(LeError::PolarNotComputable {
            reason: "after monomial factors are removed the generators still vanish on the axis".into(),
        });
    }
    Ok(PlaneCurveIdeal::new(
        gens.iter().map(MPoly::primitive_integer).collect(),
    )?)
}

/// Solves the generators for `u(t)`, `v(t)` when each can be made linear
/// with constant coefficient in one transverse variable.
pub fn solve_linear_polar(inp: &LineSingularityInput, polar: &PlaneCurveIdeal) -> Option<Parametrization> {
    let gens = polar.generators();
    if gens.len() != 2 {
        return None;
    }
    for (first, second) in [(0usize, 1usize), (1, 0)] {
        for var in [1usize, 2] {
            let other_var = 3 - var;
            let Some(a) = solve_for(&gens[first], var) else {
                continue;
            };
            let reduced = gens[second].substitute(&[(&inp.names[var], a.clone())]).ok()?;
            let Some(b) = solve_for(&reduced, other_var) else {
                continue;
            };
            // `a` may still involve the other variable; finish the back-substitution.
            let a = a.substitute(&[(&inp.names[other_var], b.clone())]).ok()?;
            if !a.support_vars().iter().all(|&i| i == 0) || !b.support_vars().iter().all(|&i| i == 0) {
                continue;
            }
            let (u, v) = if var == 1 { (a, b) } else { (b, a) };
            return Some(Parametrization {
                u,
                v,
                truncation: u32::MAX,
            });
        }
    }
    None
}

/// `var = −r / c` if `g = c·var + r` with `c` a nonzero constant and `r`
/// free of `var`.
fn solve_for(g: &MPoly, var: usize) -> Option<MPoly> {
    if g.degree_in(var) != Some(1) {
        return None;
    }
    let coeffs = g.coefficients_in(var);
    if !coeffs[1].is_constant() {
        return None;
    }
    let c = coeffs[1].constant_term();
    Some(coeffs[0].scale(&(-BigRational::one() / c)))
}

/// `ord_τ p(τ, u(τ), v(τ))`, capped by the parametrization's truncation.
fn order_along(inp: &LineSingularityInput, p: &MPoly, param: &Parametrization) -> Result<Option<u32>, LeError> {
    let (u, v) = inp.transverse();
    let along = p.substitute(&[(u, param.u.clone()), (v, param.v.clone())])?;
    if along.is_zero() {
        return Ok(None);
    }
    let ord = along.vanishing_order()?;
    Ok((ord < param.truncation).then_some(ord))
}

fn check_on_curve(inp: &LineSingularityInput, polar: &PlaneCurveIdeal, param: &Parametrization) -> Result<(), LeError> {
    for (index, g) in polar.generators().iter().enumerate() {
        if let Some(order) = order_along(inp, g, param)? {
            return Err(LeError::ParametrizationOffCurve {
                index,
                order,
                truncation: param.truncation,
            });
        }
    }
    Ok(())
}

/// `(Γ¹ · V(p))₀` by the parametrization route (when available) and the
/// three-variable staircase on `(Γ¹ generators, p)`.
fn polar_intersection(
    inp: &LineSingularityInput,
    cfg: &AnalysisConfig,
    polar: &PlaneCurveIdeal,
    param: Option<&Parametrization>,
    p: &MPoly,
    quantity: &'static str,
) -> Result<Multiplicity, LeError> {
    if polar.is_empty() {
        return Ok(Multiplicity {
            value: 0,
            routes: vec![("empty polar curve", 0)],
        });
    }
    let mut routes: Vec<(&'static str, u32)> = Vec::new();
    let mut stair_error = None;
    let mut gens = polar.generators().to_vec();
    gens.push(p.clone());
    match inp.staircase(cfg, &gens) {
        Ok(d) => routes.push(("staircase", d.dim as u32)),
        Err(e) => stair_error = Some(e),
    }
    let solved;
    let param = match param {
        Some(p) => {
            check_on_curve(inp, polar, p)?;
            Some(p)
        }
        None => {
            solved = solve_linear_polar(inp, polar);
            solved.as_ref()
        }
    };
    if let Some(param) = param {
        match order_along(inp, p, param)? {
            Some(ord) => routes.push(("parametrization", ord)),
            None if param.truncation == u32::MAX => {
                // p vanishes on the whole polar curve.
                return Err(LeError::ExtraComponent {
                    axis: inp.axis().to_string(),
                    source: stair_error.unwrap_or(PolyError::InfiniteOrder),
                });
            }
            None => {
                return Err(LeError::ParametrizationTooShort {
                    quantity,
                    truncation: param.truncation,
                })
            }
        }
    }
    match (routes.as_slice(), stair_error) {
        ([], Some(e)) => Err(LeError::NoMethodApplies {
            quantity,
            reason: e.to_string(),
        }),
        ([(_, a), (_, b)], _) if a != b => Err(LeError::MethodDisagreement {
            quantity,
            first_method: routes[0].0,
            first: *a,
            second_method: routes[1].0,
            second: *b,
        }),
        ([(_, a), ..], _) => Ok(Multiplicity {
            value: *a,
            routes: routes.clone(),
        }),
        ([], None) => unreachable!("staircase either succeeds or errors"),
    }
}

/// `λ⁰ = (Γ¹ · V(∂f/∂t))₀`.
pub fn lambda_zero(
    inp: &LineSingularityInput,
    cfg: &AnalysisConfig,
    polar: &PlaneCurveIdeal,
    param: Option<&Parametrization>,
) -> Result<Multiplicity, LeError> {
    polar_intersection(inp, cfg, polar, param, &inp.partial(0), "λ⁰")
}

/// The attaching rank `(Γ¹ · V(f))₀`, with `(Γ¹ · V(t))₀` for the
/// chain-rule check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachingRank {
    pub value: u32,
    pub routes: Vec<(&'static str, u32)>,
    /// `(Γ¹ · V(L))₀`.
    pub polar_degree: u32,
}

pub fn attaching_rank(
    inp: &LineSingularityInput,
    cfg: &AnalysisConfig,
    polar: &PlaneCurveIdeal,
    param: Option<&Parametrization>,
    lambda0: u32,
) -> Result<AttachingRank, LeError> {
    let rank = polar_intersection(inp, cfg, polar, param, &inp.f, "attaching rank")?;
    let degree = polar_intersection(inp, cfg, polar, param, &inp.var(0), "(Γ¹·V(L))₀")?;
    if rank.value != lambda0 + degree.value {
        return Err(LeError::ChainRule {
            attaching: rank.value,
            lambda0,
            polar_degree: degree.value,
        });
    }
    Ok(AttachingRank {
        value: rank.value,
        routes: rank.routes,
        polar_degree: degree.value,
    })
}

/// Extra data for [`analyze`].
#[derive(Clone, Debug, Default)]
pub struct AnalysisExtras {
    /// Internal monodromy on `K^λ¹`.
    pub nu: Option<Matrix>,
    /// Full Morse sequence and monodromy, checked by [`theorem_3_3`].
    pub morse: Option<(MorseSes, MonodromyAction)>,
    /// Parametrization of the polar curve, used when it cannot be computed.
    pub parametrization: Option<Parametrization>,
}

/// Upper bounds (inclusive) on reduced Milnor-fibre cohomology at the
/// origin, with `n = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyBounds {
    pub deg_nminus1: u32,
    pub deg_n: u32,
    pub strict: bool,
    /// `dim ker(id − ν)`, when `ν` was supplied.
    pub from_nu: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub f: String,
    pub vars: [String; 3],
    pub mu0: u32,
    pub lambda1: u32,
    pub lambda0: u32,
    pub zeta: u32,
    pub attaching_rank: u32,
    pub polar_degree: u32,
    pub polar_curve: Vec<String>,
    pub hypothesis_3_3: bool,
    pub bounds: CohomologyBounds,
    pub obstruction: Option<ObstructionVerdict>,
    pub diagnostics: Vec<Diagnostic>,
}

fn routes_detail(routes: &[(&'static str, u32)]) -> String {
    routes
        .iter()
        .map(|(name, v)| format!("{name} {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs the full pipeline for a line singularity.
pub fn analyze<R: Rng + ?Sized>(
    inp: &LineSingularityInput,
    cfg: &AnalysisConfig,
    extras: &AnalysisExtras,
    rng: &mut R,
) -> Result<SingularityReport, LeError> {
    let mut diagnostics = verify_line_critical_locus(inp, cfg)?;
    diagnostics.push(reducedness_heuristic(inp));

    let mu0 = mu_zero(inp, cfg, rng)?;
    diagnostics.push(Diagnostic::pass("μ₀ routes agree", routes_detail(&mu0.routes)));

    let l1 = lambda_one(inp, cfg, rng)?;
    diagnostics.push(Diagnostic::pass(
        "λ¹ stable across slices",
        l1.samples
            .iter()
            .map(|(c, m)| format!("{} = {c}: {m}", inp.axis()))
            .collect::<Vec<_>>()
            .join("; "),
    ));

    let polar = match polar_curve(inp) {
        Ok(p) => p,
        Err(e @ LeError::PolarNotComputable { .. }) => match &extras.parametrization {
            Some(_) => {
                diagnostics.push(Diagnostic::warn(
                    "polar curve",
                    format!("{e}; using the supplied parametrization"),
                ));
                PlaneCurveIdeal::empty()
            }
            None => return Err(e),
        },
        Err(e) => return Err(e),
    };
    let (lambda0, attaching) = if let (true, Some(p)) = (polar.is_empty(), extras.parametrization.as_ref()) {
        param_only(inp, p)?
    } else {
        let l0 = lambda_zero(inp, cfg, &polar, extras.parametrization.as_ref())?;
        let ar = attaching_rank(inp, cfg, &polar, extras.parametrization.as_ref(), l0.value)?;
        diagnostics.push(Diagnostic::pass(
            "polar curve",
            if polar.is_empty() {
                "empty at the origin".to_string()
            } else {
                polar
                    .generators()
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            },
        ));
        diagnostics.push(Diagnostic::pass("λ⁰ routes agree", routes_detail(&l0.routes)));
        diagnostics.push(Diagnostic::pass(
            "attaching rank routes agree",
            routes_detail(&ar.routes),
        ));
        (l0.value, (ar.value, ar.polar_degree))
    };
    diagnostics.push(Diagnostic::pass(
        "chain rule",
        format!("{} = {} + {}", attaching.0, lambda0, attaching.1),
    ));
    diagnostics.push(Diagnostic::pass(
        "genericity",
        "checks above are sufficient conditions at the truncation scale used, not a proof that L is generic",
    ));

    let zeta = mu0.value + lambda0;
    let hypothesis_3_3 = mu0.value == 1 + l1.value;
    let (deg_nminus1, deg_n) = if hypothesis_3_3 {
        (l1.value - 1, lambda0.saturating_sub(1))
    } else {
        (l1.value, lambda0)
    };
    let from_nu = match &extras.nu {
        None => None,
        Some(nu) => {
            let l = l1.value as usize;
            if nu.shape() != (l, l) {
                return Err(LeError::Shape(format!(
                    "ν must be {l}×{l} (λ¹ = {l}), got {}×{}",
                    nu.rows(),
                    nu.cols()
                )));
            }
            let var = nu.identity_minus().map_err(MorseError::from)?;
            Some(kernel_basis(&var).dim() as u32)
        }
    };
    let obstruction = match &extras.morse {
        None => None,
        Some((s, t)) => {
            let dims = (s.mu0() as u32, s.lambda1() as u32, s.lambda0() as u32);
            if dims != (mu0.value, l1.value, lambda0) {
                return Err(LeError::Shape(format!(
                    "Morse data has (μ₀, λ¹, λ⁰) = {dims:?} but the polynomial gives ({}, {}, {})",
                    mu0.value, l1.value, lambda0
                )));
            }
            Some(theorem_3_3(s, t)?)
        }
    };
    Ok(SingularityReport {
        f: inp.f.to_string(),
        vars: inp.names.clone(),
        mu0: mu0.value,
        lambda1: l1.value,
        lambda0,
        zeta,
        attaching_rank: attaching.0,
        polar_degree: attaching.1,
        polar_curve: polar.generators().iter().map(|g| g.to_string()).collect(),
        hypothesis_3_3,
        bounds: CohomologyBounds {
            deg_nminus1,
            deg_n,
            strict: hypothesis_3_3,
            from_nu,
        },
        obstruction,
        diagnostics,
    })
}

/// `λ⁰` and `(attaching rank, polar degree)` from a supplied
/// parametrization alone.
fn param_only(inp: &LineSingularityInput, param: &Parametrization) -> Result<(u32, (u32, u32)), LeError> {
    let order = |p: &MPoly, quantity| {
        order_along(inp, p, param)?.ok_or(LeError::ParametrizationTooShort {
            quantity,
            truncation: param.truncation,
        })
    };
    let l0 = order(&inp.partial(0), "λ⁰")?;
    let ar = order(&inp.f, "attaching rank")?;
    let deg = order(&inp.var(0), "(Γ¹·V(L))₀")?;
    if ar != l0 + deg {
        return Err(LeError::ChainRule {
            attaching: ar,
            lambda0: l0,
            polar_degree: deg,
        });
    }
    Ok((l0, (ar, deg)))
}

/// Flags a repeated factor of a generic slice, detected as a nonconstant
/// `gcd(f_c, ∂f_c/∂u, ∂f_c/∂v)`. Reported, not enforced.
fn reducedness_heuristic(inp: &LineSingularityInput) -> Diagnostic {
    let c = BigRational::new(BigInt::from(7), BigInt::from(3));
    let (slice, [du, dv]) = inp.slice_jacobian(&c);
    let g = gcd(&slice, &du).and_then(|g| gcd(&g, &dv));
    match g {
        Ok(g) if g.is_constant() => Diagnostic::pass("reducedness heuristic", "no repeated factor on a generic slice"),
        Ok(g) => Diagnostic::warn(
            "reducedness heuristic",
            format!("slice {} = 7/3 has repeated factor {g}", inp.axis()),
        ),
        Err(e) => Diagnostic::warn("reducedness heuristic", e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::Monomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly(terms: &[(i64, [u32; 3])]) -> MPoly {
        MPoly::from_terms(&["t", "x", "y"], terms.iter().map(|(c, e)| (Monomial(*e), r(*c, 1)))).unwrap()
    }

    /// `y² − x³ − t²x²`.
    fn example() -> LineSingularityInput {
        LineSingularityInput::new(poly(&[(1, [0, 0, 2]), (-1, [0, 3, 0]), (-1, [2, 2, 0])]), "t", "t").unwrap()
    }

    /// `y² − x³`, constant in `t`.
    fn suspended() -> LineSingularityInput {
        LineSingularityInput::new(poly(&[(1, [0, 0, 2]), (-1, [0, 3, 0])]), "t", "t").unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(42)
    }

    #[test]
    fn verification() {
        let cfg = AnalysisConfig::default();
        assert!(verify_line_critical_locus(&example(), &cfg).is_ok());
        assert!(verify_line_critical_locus(&suspended(), &cfg).is_ok());
        let morse =
            LineSingularityInput::new(poly(&[(1, [2, 0, 0]), (1, [0, 2, 0]), (1, [0, 0, 2])]), "t", "t").unwrap();
        assert!(matches!(
            verify_line_critical_locus(&morse, &cfg),
            Err(LeError::NotOnAxis(_))
        ));
    }

    #[test]
    fn milnor_numbers() {
        let cfg = AnalysisConfig::default();
        assert_eq!(mu_zero(&example(), &cfg, &mut rng()).unwrap().value, 2);
        assert_eq!(lambda_one(&example(), &cfg, &mut rng()).unwrap().value, 1);
        assert_eq!(lambda_one(&suspended(), &cfg, &mut rng()).unwrap().value, 2);
        // y² − t·x²: each generic slice is a node.
        let umbrella = LineSingularityInput::new(poly(&[(1, [0, 0, 2]), (-1, [1, 2, 0])]), "t", "t").unwrap();
        assert_eq!(lambda_one(&umbrella, &cfg, &mut rng()).unwrap().value, 1);
    }

    #[test]
    fn polar_curves() {
        let p = polar_curve(&example()).unwrap();
        let shown: Vec<String> = p.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["2*t^2 + 3*x", "y"]);
        assert!(polar_curve(&suspended()).unwrap().is_empty());
        let param = solve_linear_polar(&example(), &p).unwrap();
        assert_eq!(param.u.to_string(), "-2/3*t^2");
        assert!(param.v.is_zero());
    }

    #[test]
    fn lambda_zero_and_attaching_rank() {
        let cfg = AnalysisConfig::default();
        let inp = example();
        let p = polar_curve(&inp).unwrap();
        let l0 = lambda_zero(&inp, &cfg, &p, None).unwrap();
        assert_eq!(l0.value, 5);
        assert_eq!(l0.routes.len(), 2);
        let ar = attaching_rank(&inp, &cfg, &p, None, l0.value).unwrap();
        assert_eq!((ar.value, ar.polar_degree), (6, 1));
        let empty = PlaneCurveIdeal::empty();
        assert_eq!(lambda_zero(&suspended(), &cfg, &empty, None).unwrap().value, 0);
    }

    #[test]
    fn full_reports() {
        let cfg = AnalysisConfig::default();
        let rep = analyze(&example(), &cfg, &AnalysisExtras::default(), &mut rng()).unwrap();
        assert_eq!(
            (rep.mu0, rep.lambda1, rep.lambda0, rep.zeta, rep.attaching_rank),
            (2, 1, 5, 7, 6)
        );
        assert!(rep.hypothesis_3_3);
        assert_eq!((rep.bounds.deg_nminus1, rep.bounds.deg_n), (0, 4));

        let rep = analyze(&suspended(), &cfg, &AnalysisExtras::default(), &mut rng()).unwrap();
        assert_eq!((rep.mu0, rep.lambda1, rep.lambda0), (2, 2, 0));
        assert!(!rep.hypothesis_3_3);
        assert_eq!(rep.bounds.deg_nminus1, 2);
    }

    #[test]
    fn supplied_parametrization_is_checked() {
        let inp = example();
        let vars = ["t", "x", "y"];
        let t2 = MPoly::var(&vars, "t").unwrap().pow(2);
        let good = Parametrization {
            u: t2.scale(&r(-2, 3)),
            v: MPoly::zero(&vars).unwrap(),
            truncation: 12,
        };
        let (l0, (ar, deg)) = param_only(&inp, &good).unwrap();
        assert_eq!((l0, ar, deg), (5, 6, 1));
        let p = polar_curve(&inp).unwrap();
        let bad = Parametrization { u: t2, ..good };
        assert!(matches!(
            lambda_zero(&inp, &AnalysisConfig::default(), &p, Some(&bad)),
            Err(LeError::ParametrizationOffCurve { .. })
        ));
    }
}
