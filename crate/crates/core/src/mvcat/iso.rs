//! Isomorphism search between triangles.
//!
//! Morphisms `(τ, η)` between two fixed triangles form a linear space cut
//! out by the two commuting squares. We compute a basis of that space and
//! look for an invertible point: first the basis elements themselves, then
//! seeded random combinations. A generic combination is invertible whenever
//! any point is, except with probability at most `(dim V + dim W) / |S|`
//! for the sample set `S`, so exhausting the search is evidence rather than
//! proof and is reported as such.

use alloc::vec::Vec;

use rand::Rng;

use crate::exactlin::random::random_small;
use crate::exactlin::{Field, Matrix, Scalar};

use super::{stalk_cohomology, MvError, MvMorphism, MvTriangle};

pub const DEFAULT_ISO_TRIALS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum IsoOutcome {
    Isomorphic(MvMorphism),
    NotIsomorphic(NonIsoCertificate),
}

/// Why two triangles were judged non-isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonIsoCertificate {
    Dimensions {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// `(dim ker γ, dim coker γ)` differ.
    Stalks {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// Some other conjugation-invariant rank differs.
    Rank {
        invariant: &'static str,
        left: usize,
        right: usize,
    },
    /// The only morphism between the two is zero.
    NoNonzeroMorphism,
    /// No invertible morphism found among the sampled points of a
    /// `hom_dim`-dimensional morphism space. Not a proof.
    SearchExhausted { hom_dim: usize, trials: usize },
}

impl NonIsoCertificate {
    /// Whether the certificate proves non-isomorphism.
    pub fn is_proof(&self) -> bool {
        !matches!(self, NonIsoCertificate::SearchExhausted { .. })
    }
}

fn rank_invariants(t: &MvTriangle) -> Vec<(&'static str, usize)> {
    let mut out = Vec::new();
    out.push(("rank δ", t.delta().rank()));
    out.push(("rank γδ", t.gamma().mul(t.delta()).expect("shapes").rank()));
    let var = t.variation();
    let mut power = Matrix::identity(t.field(), t.dim_v());
    for _ in 0..t.dim_v() {
        power = power.mul(&var).expect("square");
        out.push(("rank (id − ν)^k", power.rank()));
    }
    out
}

/// Searches for an isomorphism `a → b`.
pub fn is_isomorphic<R: Rng + ?Sized>(
    a: &MvTriangle,
    b: &MvTriangle,
    rng: &mut R,
    trials: usize,
) -> Result<IsoOutcome, MvError> {
    if a.field() != b.field() {
        return Err(crate::exactlin::LinalgError::FieldMismatch {
            left: a.field(),
            right: b.field(),
        }
        .into());
    }
    let dims = |t: &MvTriangle| (t.dim_v(), t.dim_w());
    if dims(a) != dims(b) {
        return Ok(IsoOutcome::NotIsomorphic(NonIsoCertificate::Dimensions {
            left: dims(a),
            right: dims(b),
        }));
    }
    let stalk = |t: &MvTriangle| {
        let s = stalk_cohomology(t);
        (s.dim_deg_minus1, s.dim_deg0)
    };
    if stalk(a) != stalk(b) {
        return Ok(IsoOutcome::NotIsomorphic(NonIsoCertificate::Stalks {
            left: stalk(a),
            right: stalk(b),
        }));
    }
    for ((name, ra), (_, rb)) in rank_invariants(a).into_iter().zip(rank_invariants(b)) {
        if ra != rb {
            return Ok(IsoOutcome::NotIsomorphic(NonIsoCertificate::Rank {
                invariant: name,
                left: ra,
                right: rb,
            }));
        }
    }
    if a == b {
        return Ok(IsoOutcome::Isomorphic(MvMorphism::identity(a)));
    }

    let basis = morphism_space(a, b);
    if basis.is_empty() {
        // dims match and a ≠ b, so the spaces are nonzero.
        return Ok(IsoOutcome::NotIsomorphic(NonIsoCertificate::NoNonzeroMorphism));
    }
    let field = a.field();
    let try_point = |tau: Matrix, eta: Matrix| -> Result<Option<MvMorphism>, MvError> {
        if tau.is_invertible() && eta.is_invertible() {
            Ok(Some(MvMorphism::new(a.clone(), b.clone(), tau, eta)?))
        } else {
            Ok(None)
        }
    };
    for (tau, eta) in &basis {
        if let Some(m) = try_point(tau.clone(), eta.clone())? {
            return Ok(IsoOutcome::Isomorphic(m));
        }
    }
    let bound = match field {
        Field::Rational => 50,
        Field::Prime(_) => 0,
    };
    for _ in 0..trials {
        let coeffs: Vec<Scalar> = basis.iter().map(|_| random_small(rng, field, bound)).collect();
        let mut tau = Matrix::zeros(field, a.dim_v(), a.dim_v());
        let mut eta = Matrix::zeros(field, a.dim_w(), a.dim_w());
        for (c, (t, e)) in coeffs.iter().zip(&basis) {
            tau = tau.add(&t.scale(c))?;
            eta = eta.add(&e.scale(c))?;
        }
        if let Some(m) = try_point(tau, eta)? {
            return Ok(IsoOutcome::Isomorphic(m));
        }
    }
    Ok(IsoOutcome::NotIsomorphic(NonIsoCertificate::SearchExhausted {
        hom_dim: basis.len(),
        trials,
    }))
}

/// Basis of `{(τ, η) : γ_b τ = η γ_a, δ_b η = τ δ_a}`.
fn morphism_space(a: &MvTriangle, b: &MvTriangle) -> Vec<(Matrix, Matrix)> {
    let field = a.field();
    let (v, w) = (a.dim_v(), a.dim_w());
    let unknowns = v * v + w * w;
    let tau_idx = |i: usize, j: usize| i * v + j;
    let eta_idx = |i: usize, j: usize| v * v + i * w + j;
    let mut system = Matrix::zeros(field, 2 * v * w, unknowns);
    let mut row = 0;
    // (γ_b τ − η γ_a)[r][c] = 0, r ∈ W, c ∈ V
    for r in 0..w {
        for c in 0..v {
            for k in 0..v {
                let coeff = b.gamma().get(r, k);
                add_to(&mut system, row, tau_idx(k, c), coeff);
            }
            for k in 0..w {
                let coeff = -a.gamma().get(k, c);
                add_to(&mut system, row, eta_idx(r, k), &coeff);
            }
            row += 1;
        }
    }
    // (δ_b η − τ δ_a)[r][c] = 0, r ∈ V, c ∈ W
    for r in 0..v {
        for c in 0..w {
            for k in 0..w {
                let coeff = b.delta().get(r, k);
                add_to(&mut system, row, eta_idx(k, c), coeff);
            }
            for k in 0..v {
                let coeff = -a.delta().get(k, c);
                add_to(&mut system, row, tau_idx(r, k), &coeff);
            }
            row += 1;
        }
    }
    let kernel = crate::exactlin::kernel_basis(&system);
    let basis = kernel.basis();
    (0..basis.cols())
        .map(|col| {
            let tau = Matrix::from_fn(field, v, v, |i, j| basis.get(tau_idx(i, j), col).clone());
            let eta = Matrix::from_fn(field, w, w, |i, j| basis.get(eta_idx(i, j), col).clone());
            (tau, eta)
        })
        .collect()
}

fn add_to(m: &mut Matrix, i: usize, j: usize, value: &Scalar) {
    if value.is_zero() {
        return;
    }
    let v = m.get(i, j) + value;
    m.set(i, j, v);
}
