//! Exact-arithmetic kernel for the three-term recurrence
//!
//! ```text
//! ũ_{n+1} = ((4n+2)(n(n+1) − λ) ũ_n + 4n·x·ũ_{n−1}) / (n+1),   ũ_0 = 1, ũ_1 = −2λ,
//! ```
//!
//! whose terms are integral polynomials in `ℤ[x, λ]`, together with the
//! determinant identities linking it to scaled Legendre polynomials, its
//! tridiagonal truncations, a branch-eigenvalue solver and the map into the
//! coefficient ring `ℤ[π², C, L]`.
//!
//! Everything is exact: integers are `num_bigint::BigInt`, rationals are
//! `num_rational::BigRational`. Floating point appears only in diagnostic
//! columns of [`spectral::DecayTable`].

pub mod algebra;
pub mod cli;
pub mod coeffring;
pub mod error;
pub mod legendre;
pub mod recurrence;
pub mod sampling;
pub mod spectral;
pub mod tridiag;
pub mod verify;

pub use error::{Error, Result};
