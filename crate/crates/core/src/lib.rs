//! Exact computations for line singularities and perverse sheaves on a line.
//!
//! The crate is `no_std` (with `alloc`) and purely algorithmic:
//!
//! - [`exactlin`]: exact scalars over ℚ or 𝔽_p, dense matrices, subspaces,
//!   traces of restricted and induced maps.
//! - [`mvcat`]: MacPherson–Vilonen triangles `(V, W, ν, γ, δ)` with
//!   `δγ = id − ν`, their morphisms, duality, stalk cohomology and
//!   isomorphism search.
//! - [`morse`]: the Morse short exact sequence of triangles, the Milnor
//!   monodromy acting on it, and the invariant-subspace trace obstruction.
//! - [`polyalg`]: sparse polynomials over ℚ in up to three variables,
//!   resultants, gcds and a staircase oracle for local multiplicities.
//! - [`lenumbers`]: Milnor and Lê numbers of a polynomial with a smooth
//!   line of singularities.
//!
//! Parsing, file formats and the command line live in the `linesing` crate.

#![cfg_attr(not(feature = "std"), no_std)]
// Errors carry exact residual matrices and scalars; they are cold paths.
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod exactlin;
pub mod lenumbers;
pub mod morse;
pub mod mvcat;
pub mod polyalg;

pub use exactlin::{Field, LinalgError, Matrix, Scalar, Subspace};
