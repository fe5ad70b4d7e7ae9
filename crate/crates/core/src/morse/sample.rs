//! Seeded generators of Morse sequence data.
//!
//! Everything is built in a random basis `P` of `K^ζ` whose first `μ₀`
//! columns are `β`; then `π` is the last `λ⁰` rows of `P⁻¹`, so the W-row is
//! exact by construction, and `θ = P·[A; γ]` satisfies `πθ = γ`.

use alloc::boxed::Box;

use rand::Rng;

use super::{theorem_3_3, MonodromyAction, MorseError, MorseSes, ObstructionVerdict};
use crate::exactlin::random::{random_invertible, random_matrix, random_small};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::mvcat::random_valid_triangle;

struct Frame {
    p: Matrix,
    beta: Matrix,
    pi: Matrix,
}

fn frame<R: Rng + ?Sized>(rng: &mut R, field: Field, mu0: usize, lambda0: usize) -> Frame {
    let zeta = mu0 + lambda0;
    let p = random_invertible(rng, field, zeta);
    let inv = p.inverse().expect("invertible");
    Frame {
        beta: p.columns(0..mu0),
        pi: inv.row_block(mu0..zeta),
        p,
    }
}

/// `P·[top; bottom]`.
fn in_frame(fr: &Frame, top: &Matrix, bottom: &Matrix) -> Matrix {
    fr.p.mul(&top.vstack(bottom).expect("same width")).expect("shapes")
}

/// A random valid sequence with the given dimensions.
///
/// # Panics
///
/// If `λ¹ > μ₀ + λ⁰`, since then no injective `θ` exists.
pub fn random_morse_ses<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    mu0: usize,
    lambda1: usize,
    lambda0: usize,
) -> MorseSes {
    assert!(lambda1 <= mu0 + lambda0, "θ: K^λ¹ → K^ζ cannot be injective");
    loop {
        let right = random_valid_triangle(rng, field, lambda1, lambda0);
        let fr = frame(rng, field, mu0, lambda0);
        let a = random_matrix(rng, field, mu0, lambda1);
        let theta = in_frame(&fr, &a, right.gamma());
        let (nu, _, delta) = right.into_parts();
        if let Ok(s) = MorseSes::from_core(nu, theta, fr.beta, fr.pi, delta) {
            return s;
        }
    }
}

/// One attempt at data the trace obstruction forbids.
#[derive(Clone, Debug)]
pub enum ForbiddenAttempt {
    /// The sequence itself did not validate.
    SequenceRejected(MorseError),
    /// The monodromy was rejected (commuting, trace, invariance or
    /// invertibility).
    MonodromyRejected(MorseError),
    /// Accepted; the verdict must carry a contradiction witness.
    Verdict(Box<(MorseSes, MonodromyAction, ObstructionVerdict)>),
}

/// Tries to build a sequence with `μ₀ = 1 + λ¹` and `im θ ⊆ im β`, plus a
/// monodromy with `tr T_V = tr T_W1 = (−1)ⁿ`, and runs the obstruction on it.
///
/// In the frame, `T_W2 = P [[T_W1, X], [0, T_W3]] P⁻¹` with
/// `T_W1 A = A T_V` forced by `θ`-equivariance. Writing `T_W1` in the basis
/// `[A | a′]` as `[[T_V, x], [0, q]]`, the trace constraint fixes
/// `q = (−1)ⁿ − tr T_V`. Half of the attempts use scalar `T_V`, `T_W3` so
/// every commuting identity holds; the rest draw them freely.
pub fn attempt_forbidden<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize, lambda1: usize) -> ForbiddenAttempt {
    let mu0 = 1 + lambda1;
    let lambda0 = rng.random_range(0..=3);
    let sign = Scalar::from_i64(field, if n.is_multiple_of(2) { 1 } else { -1 });
    let fr = frame(rng, field, mu0, lambda0);
    let a_full = random_invertible(rng, field, mu0);
    let a = a_full.columns(0..lambda1);
    let theta = in_frame(&fr, &a, &Matrix::zeros(field, lambda0, lambda1));
    let delta = if rng.random_bool(0.5) {
        Matrix::zeros(field, lambda1, lambda0)
    } else {
        random_matrix(rng, field, lambda1, lambda0)
    };
    let s = match MorseSes::from_core(
        Matrix::identity(field, lambda1),
        theta,
        fr.beta.clone(),
        fr.pi.clone(),
        delta,
    ) {
        Ok(s) => s,
        Err(e) => return ForbiddenAttempt::SequenceRejected(e),
    };

    let scalar_case = rng.random_bool(0.5);
    let (t_v, t_w3) = if scalar_case && lambda1 > 0 {
        let Some(inv) = Scalar::from_i64(field, lambda1 as i64).inv() else {
            return ForbiddenAttempt::MonodromyRejected(MorseError::Internal("λ¹ vanishes in the field"));
        };
        let c = &sign * &inv;
        (
            Matrix::identity(field, lambda1).scale(&c),
            Matrix::identity(field, lambda0).scale(&c),
        )
    } else {
        let mut t_v = random_matrix(rng, field, lambda1, lambda1);
        if lambda1 > 0 {
            // Adjust one diagonal entry to hit the trace.
            let fix = t_v.get(0, 0) + &(&sign - &t_v.trace().expect("square"));
            t_v.set(0, 0, fix);
        }
        (t_v, random_matrix(rng, field, lambda0, lambda0))
    };
    let q = &sign - &t_v.trace().expect("square");
    let x = random_matrix(rng, field, lambda1, 1);
    let in_a = t_v
        .hstack(&x)
        .and_then(|top| {
            let mut bottom = Matrix::zeros(field, 1, lambda1 + 1);
            bottom.set(0, lambda1, q);
            top.vstack(&bottom)
        })
        .expect("shapes");
    let a_inv = a_full.inverse().expect("invertible");
    let t_w1 = a_full.mul(&in_a).and_then(|m| m.mul(&a_inv)).expect("shapes");
    let corner = Matrix::from_fn(field, mu0, lambda0, |_, _| random_small(rng, field, 2));
    let block = t_w1
        .hstack(&corner)
        .and_then(|top| {
            Matrix::zeros(field, lambda0, mu0)
                .hstack(&t_w3)
                .and_then(|b| top.vstack(&b))
        })
        .expect("shapes");
    let p_inv = fr.p.inverse().expect("invertible");
    let t_w2 = fr.p.mul(&block).and_then(|m| m.mul(&p_inv)).expect("shapes");
    let t = MonodromyAction {
        n,
        t_v,
        t_w1,
        t_w2,
        t_w3,
    };
    match theorem_3_3(&s, &t) {
        Ok(v) => ForbiddenAttempt::Verdict(Box::new((s, t, v))),
        Err(e) => ForbiddenAttempt::MonodromyRejected(e),
    }
}
