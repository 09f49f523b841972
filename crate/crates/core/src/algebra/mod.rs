//! Exact integers, rationals and sparse multivariate polynomials.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; the
//! polynomial type and the determinant backends are local.

pub mod matrix;
pub mod poly;
pub mod rational;

pub use matrix::{det_rational, PolyMatrix};
pub use num_bigint::BigInt;
pub use poly::{Monomial, SparsePoly};
pub use rational::{format_rational, parse_rational, round_dyadic, Rational};

/// A rational evaluation point; its length must match the arity of the
/// polynomial it is applied to.
pub type RatPoint = Vec<Rational>;

/// Variable labels used across the crate.
pub mod vars {
    pub const X_LAMBDA: [&str; 2] = ["x", "lambda"];
    pub const BETA_LAMBDA: [&str; 2] = ["beta", "lambda"];
    pub const T: [&str; 1] = ["t"];
    pub const PI2_C_L: [&str; 3] = ["pi2", "C", "L"];
}
