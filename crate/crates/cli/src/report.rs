//! Report layouts. Every report starts with `schema_version` and
//! `command`, and re-serializes byte-identically after a parse.

use std::fmt::Write as _;

use linesing_core::lenumbers::{Diagnostic, SingularityReport};
use linesing_core::morse::{ContradictionWitness, ObstructionVerdict};
use linesing_core::mvcat::{MvMorphism, NonIsoCertificate, StalkCohomology};
use serde::{Deserialize, Serialize};

use crate::format::{matrix_rows, Rows, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stalk {
    pub dim_ker_gamma: usize,
    pub dim_coker_gamma: usize,
}

impl From<StalkCohomology> for Stalk {
    fn from(s: StalkCohomology) -> Self {
        Stalk {
            dim_ker_gamma: s.dim_deg_minus1,
            dim_coker_gamma: s.dim_deg0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Basis of `im θ` as columns.
    pub im_theta: Rows,
    pub im_beta: Rows,
    pub trace_on_theta: String,
    pub trace_on_beta: String,
    pub quotient_map: Rows,
    pub quotient_trace: String,
}

impl From<&ContradictionWitness> for Witness {
    fn from(w: &ContradictionWitness) -> Self {
        Witness {
            im_theta: matrix_rows(w.im_theta.basis()),
            im_beta: matrix_rows(w.im_beta.basis()),
            trace_on_theta: w.trace_on_theta.to_string(),
            trace_on_beta: w.trace_on_beta.to_string(),
            quotient_map: matrix_rows(&w.quotient_map),
            quotient_trace: w.quotient_trace.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub hypothesis_holds: bool,
    pub strict: bool,
    pub bound_deg_nminus1: usize,
    pub bound_deg_n: usize,
    pub dim_ker_gamma: usize,
    pub dim_coker_gamma: usize,
    pub contradiction_witness: Option<Witness>,
}

impl From<&ObstructionVerdict> for Obstruction {
    fn from(v: &ObstructionVerdict) -> Self {
        Obstruction {
            hypothesis_holds: v.hypothesis_holds,
            strict: v.strict,
            bound_deg_nminus1: v.bound_deg_nminus1,
            bound_deg_n: v.bound_deg_n,
            dim_ker_gamma: v.dim_ker_gamma,
            dim_coker_gamma: v.dim_coker_gamma,
            contradiction_witness: v.contradiction_witness.as_ref().map(Witness::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Inclusive upper bound on `dim H̃ⁿ⁻¹` of the Milnor fibre, `n = 2`.
    pub deg_nminus1: u32,
    pub deg_n: u32,
    pub strict: bool,
    pub from_nu: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl From<&Diagnostic> for Check {
    fn from(d: &Diagnostic) -> Self {
        Check {
            check: d.check.clone(),
            passed: d.passed,
            detail: d.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub command: String,
    pub polynomial: String,
    pub vars: Vec<String>,
    pub axis: String,
    pub linear_form: String,
    pub seed: u64,
    pub truncation: Option<usize>,
    pub mu0: u32,
    pub lambda1: u32,
    pub lambda0: u32,
    pub zeta: u32,
    pub attaching_rank: u32,
    pub polar_degree: u32,
    pub polar_curve: Vec<String>,
    pub hypothesis_3_3: bool,
    pub bounds: Bounds,
    pub obstruction: Option<Obstruction>,
    pub genericity_diagnostics: Vec<Check>,
}

impl AnalyzeReport {
    pub fn new(r: &SingularityReport, linear_form: &str, seed: u64, truncation: Option<usize>) -> Self {
        AnalyzeReport {
            schema_version: SCHEMA_VERSION,
            command: "analyze".into(),
            polynomial: r.f.clone(),
            vars: r.vars.to_vec(),
            axis: r.vars[0].clone(),
            linear_form: linear_form.to_string(),
            seed,
            truncation,
            mu0: r.mu0,
            lambda1: r.lambda1,
            lambda0: r.lambda0,
            zeta: r.zeta,
            attaching_rank: r.attaching_rank,
            polar_degree: r.polar_degree,
            polar_curve: r.polar_curve.clone(),
            hypothesis_3_3: r.hypothesis_3_3,
            bounds: Bounds {
                deg_nminus1: r.bounds.deg_nminus1,
                deg_n: r.bounds.deg_n,
                strict: r.bounds.strict,
                from_nu: r.bounds.from_nu,
            },
            obstruction: r.obstruction.as_ref().map(Obstruction::from),
            genericity_diagnostics: r.diagnostics.iter().map(Check::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub schema_version: u32,
    pub command: String,
    pub field: String,
    pub dim_v: usize,
    pub dim_w: usize,
    pub valid: bool,
    pub stalk: Stalk,
    /// `(dim ker(id − ν), dim coker(id − ν))`.
    pub punctured: (usize, usize),
    /// Whether the triangle is the split sum of a skyscraper and a trivial
    /// local system.
    pub split_sum: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub proof: bool,
    pub detail: String,
}

impl From<&NonIsoCertificate> for Certificate {
    fn from(c: &NonIsoCertificate) -> Self {
        let (kind, detail) = match c {
            NonIsoCertificate::Dimensions { left, right } => {
                ("dimensions", format!("(dim V, dim W) = {left:?} vs {right:?}"))
            }
            NonIsoCertificate::Stalks { left, right } => {
                ("stalks", format!("(dim ker γ, dim coker γ) = {left:?} vs {right:?}"))
            }
            NonIsoCertificate::Rank { invariant, left, right } => ("rank", format!("{invariant}: {left} vs {right}")),
            NonIsoCertificate::NoNonzeroMorphism => ("no_nonzero_morphism", "every morphism is zero".to_string()),
            NonIsoCertificate::SearchExhausted { hom_dim, trials } => (
                "search_exhausted",
                format!("no invertible morphism in {trials} samples of a {hom_dim}-dimensional space"),
            ),
        };
        Certificate {
            kind: kind.into(),
            proof: c.is_proof(),
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub tau: Rows,
    pub eta: Rows,
}

impl From<&MvMorphism> for Morphism {
    fn from(m: &MvMorphism) -> Self {
        Morphism {
            tau: matrix_rows(m.tau()),
            eta: matrix_rows(m.eta()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub schema_version: u32,
    pub command: String,
    pub field: String,
    pub isomorphic: bool,
    pub witness: Option<Morphism>,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyCheck {
    pub n: usize,
    pub equivariant_and_invertible: bool,
    pub trace_constraints: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseReport {
    pub schema_version: u32,
    pub command: String,
    pub field: String,
    pub mu0: usize,
    pub lambda1: usize,
    pub lambda0: usize,
    pub zeta: usize,
    pub gamma: Rows,
    pub stalk: Stalk,
    pub equality_criterion: bool,
    pub euler_relation: bool,
    pub monodromy: Option<MonodromyCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub schema_version: u32,
    pub command: String,
    pub field: String,
    pub n: usize,
    pub mu0: usize,
    pub lambda1: usize,
    pub lambda0: usize,
    pub verdict: Obstruction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub command: String,
    pub status: u8,
    pub error: String,
    pub residual: Option<Rows>,
}

fn rows_text(rows: &Rows) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", inner.join(", "))
}

fn obstruction_text(out: &mut String, v: &Obstruction) {
    let _ = writeln!(out, "  hypothesis μ₀ = 1 + λ¹: {}", v.hypothesis_holds);
    let _ = writeln!(
        out,
        "  dim ker γ = {}, dim coker γ = {}",
        v.dim_ker_gamma, v.dim_coker_gamma
    );
    let _ = writeln!(
        out,
        "  bounds: dim H̃ⁿ⁻¹ ≤ {}, dim H̃ⁿ ≤ {}{}",
        v.bound_deg_nminus1,
        v.bound_deg_n,
        if v.strict { " (strict)" } else { "" }
    );
    if let Some(w) = &v.contradiction_witness {
        let _ = writeln!(
            out,
            "  contradiction: im θ ⊆ im β with traces {} and {}",
            w.trace_on_theta, w.trace_on_beta
        );
        let _ = writeln!(
            out,
            "    induced map on im β / im θ: {} (trace {})",
            rows_text(&w.quotient_map),
            w.quotient_trace
        );
    }
}

/// Human-readable rendering.
pub trait TextReport {
    fn text(&self) -> String;
}

impl TextReport for AnalyzeReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "f = {}  (vars {}, axis {})",
            self.polynomial,
            self.vars.join(", "),
            self.axis
        );
        let _ = writeln!(out, "μ₀ = {}", self.mu0);
        let _ = writeln!(out, "λ¹ = {}", self.lambda1);
        let _ = writeln!(out, "λ⁰ = {}", self.lambda0);
        let _ = writeln!(out, "ζ = μ₀ + λ⁰ = {}", self.zeta);
        let _ = writeln!(
            out,
            "attaching rank = {} = λ⁰ + (Γ¹·V({})) = {} + {}",
            self.attaching_rank, self.linear_form, self.lambda0, self.polar_degree
        );
        let polar = if self.polar_curve.is_empty() {
            "empty at the origin".to_string()
        } else {
            format!("V({})", self.polar_curve.join(", "))
        };
        let _ = writeln!(out, "polar curve: {polar}");
        let _ = writeln!(out, "hypothesis μ₀ = 1 + λ¹: {}", self.hypothesis_3_3);
        let _ = writeln!(
            out,
            "bounds: dim H̃¹ ≤ {}, dim H̃² ≤ {}{}",
            self.bounds.deg_nminus1,
            self.bounds.deg_n,
            if self.bounds.strict { " (strict)" } else { "" }
        );
        if let Some(k) = self.bounds.from_nu {
            let _ = writeln!(out, "        dim H̃¹ ≤ dim ker(id − ν) = {k}");
        }
        if let Some(v) = &self.obstruction {
            let _ = writeln!(out, "Morse data:");
            obstruction_text(&mut out, v);
        }
        let _ = writeln!(out, "diagnostics:");
        for c in &self.genericity_diagnostics {
            let mark = if c.passed { "ok  " } else { "warn" };
            let _ = writeln!(out, "  [{mark}] {}: {}", c.check, c.detail);
        }
        out
    }
}

impl TextReport for TriangleReport {
    fn text(&self) -> String {
        format!(
            "valid triangle over {} with dim V = {}, dim W = {}\n\
             stalk: dim ker γ = {}, dim coker γ = {}\n\
             punctured: dim ker(id − ν) = {}, dim coker(id − ν) = {}\n\
             split sum: {}\n",
            self.field,
            self.dim_v,
            self.dim_w,
            self.stalk.dim_ker_gamma,
            self.stalk.dim_coker_gamma,
            self.punctured.0,
            self.punctured.1,
            self.split_sum
        )
    }
}

impl TextReport for IsoReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "isomorphic: {}", self.isomorphic);
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "  τ = {}", rows_text(&w.tau));
            let _ = writeln!(out, "  η = {}", rows_text(&w.eta));
        }
        if let Some(c) = &self.certificate {
            let kind = if c.proof { "proof" } else { "inconclusive" };
            let _ = writeln!(out, "  {kind} ({}): {}", c.kind, c.detail);
        }
        out
    }
}

impl TextReport for MorseReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "valid Morse sequence over {}: μ₀ = {}, λ¹ = {}, λ⁰ = {}, ζ = {}",
            self.field, self.mu0, self.lambda1, self.lambda0, self.zeta
        );
        let _ = writeln!(out, "γ = πθ = {}", rows_text(&self.gamma));
        let _ = writeln!(
            out,
            "stalk: dim ker γ = {}, dim coker γ = {}",
            self.stalk.dim_ker_gamma, self.stalk.dim_coker_gamma
        );
        let _ = writeln!(out, "equality criterion: {}", self.equality_criterion);
        let _ = writeln!(out, "euler relation: {}", self.euler_relation);
        if let Some(m) = &self.monodromy {
            let _ = writeln!(
                out,
                "monodromy (n = {}): equivariant and invertible, trace constraints {}",
                m.n,
                if m.trace_constraints { "met" } else { "not met" }
            );
        }
        out
    }
}

impl TextReport for ObstructionReport {
    fn text(&self) -> String {
        let mut out = format!(
            "obstruction over {} (n = {}): μ₀ = {}, λ¹ = {}, λ⁰ = {}\n",
            self.field, self.n, self.mu0, self.lambda1, self.lambda0
        );
        obstruction_text(&mut out, &self.verdict);
        out
    }
}

impl TextReport for ErrorReport {
    fn text(&self) -> String {
        match &self.residual {
            Some(r) => format!("error: {}\nresidual: {}\n", self.error, rows_text(r)),
            None => format!("error: {}\n", self.error),
        }
    }
}
