//! Seeded sampling of scalars and matrices, for search and test generators.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::{Field, Matrix, Scalar};

/// Uniform over 𝔽_p, or a small-height rational `a/b` with `|a| ≤ height`,
/// `1 ≤ b ≤ height` over ℚ.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field, height: i64) -> Scalar {
    match field {
        Field::Rational => {
            let a = rng.random_range(-height..=height);
            let b = rng.random_range(1..=height.max(1));
            Scalar::Rational(BigRational::new(BigInt::from(a), BigInt::from(b)))
        }
        Field::Prime(p) => Scalar::Prime {
            p,
            value: rng.random_range(0..p),
        },
    }
}

/// Small integer over ℚ, uniform over 𝔽_p.
pub fn random_small<R: Rng + ?Sized>(rng: &mut R, field: Field, bound: i64) -> Scalar {
    match field {
        Field::Rational => Scalar::from_i64(field, rng.random_range(-bound..=bound)),
        Field::Prime(_) => random_scalar(rng, field, bound),
    }
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| random_small(rng, field, 3))
}

/// Random matrix of rank at most `rank`, built as a product through `K^rank`.
pub fn random_matrix_of_rank<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    rows: usize,
    cols: usize,
    rank: usize,
) -> Matrix {
    let a = random_matrix(rng, field, rows, rank);
    let b = random_matrix(rng, field, rank, cols);
    a.mul(&b).expect("compatible shapes")
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}
