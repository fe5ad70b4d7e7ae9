//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use linesing::format::{to_json, MonodromyFile, MorseSesFile, TriangleFile};
use linesing_core::morse::{MonodromyAction, MorseSes};
use linesing_core::mvcat::MvTriangle;
use linesing_core::{Field, Matrix, Scalar};

/// V = K, W = K⁵, ν = id, γ = e₁, δ = e₂ᵗ: the right-hand triangle of the
/// cusp-to-node family at k = 2.
pub fn model_triangle(field: Field) -> MvTriangle {
    let gamma = Matrix::unit_vector(field, 5, 0);
    let delta = Matrix::unit_vector(field, 5, 1).transpose();
    MvTriangle::new(Matrix::identity(field, 1), gamma, delta).unwrap()
}

/// μ₀ = 2, λ¹ = 1, λ⁰ = 5 with θ = e₁ + e₃, β the first two unit vectors.
pub fn model_ses(field: Field) -> MorseSes {
    let beta = Matrix::identity(field, 7).columns(0..2);
    let pi = Matrix::identity(field, 7).row_block(2..7);
    let theta = Matrix::unit_vector(field, 7, 0)
        .add(&Matrix::unit_vector(field, 7, 2))
        .unwrap();
    let delta = Matrix::unit_vector(field, 5, 1).transpose();
    MorseSes::from_core(Matrix::identity(field, 1), theta, beta, pi, delta).unwrap()
}

/// A monodromy on [`model_ses`] meeting the trace constraint for n = 2.
pub fn model_monodromy(field: Field) -> MonodromyAction {
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

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

pub fn write_triangle(dir: &Path, name: &str, t: &MvTriangle) -> PathBuf {
    write(dir, name, &to_json(&TriangleFile::from_triangle(t)))
}

pub fn write_ses(dir: &Path, name: &str, s: &MorseSes) -> PathBuf {
    write(dir, name, &to_json(&MorseSesFile::from_ses(s)))
}

pub fn write_monodromy(dir: &Path, name: &str, t: &MonodromyAction) -> PathBuf {
    write(dir, name, &to_json(&MonodromyFile::from_action(t)))
}

pub struct Run {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the built binary.
pub fn linesing(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_linesing"))
        .args(args)
        .output()
        .unwrap();
    Run {
        status: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}
