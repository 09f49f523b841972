//! Depth-`N` truncations `T_N(a, λ)` of the tridiagonal spectral problem.
//!
//! Everything is parameterized by `a²`, never by `a`: each determinant and
//! minor involves `a` only through products of an upper and a lower
//! off-diagonal entry. This allows negative `a²` (e.g. the degenerate point
//! `a² = −280`) without complex arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::rational::{rat_int, serde_rational};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::recurrence::{central_binomial, u_hat_eval};

/// `β_n = a²(n+1)² / ((2n+1)(2n+3))`.
pub fn beta_coeff(n: usize, a2: &Rational) -> Rational {
    Rational::new(BigInt::from((n + 1) * (n + 1)), BigInt::from((2 * n + 1) * (2 * n + 3))) * a2
}

fn diag(n: usize, lambda: &Rational) -> Rational {
    rat_int((n * (n + 1)) as i64) - lambda
}

/// Backward truncants `K_n^{(N)}` at a point, with `det T_N` and, off the
/// degenerate locus `K_2 = 0`, `q_1^{(N)} = K_1 / K_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationState {
    pub depth: usize,
    #[serde(with = "serde_rational")]
    pub a2: Rational,
    #[serde(with = "serde_rational")]
    pub lambda: Rational,
    /// `k[n − 1] = K_n` for `1 ≤ n ≤ N + 1`.
    #[serde(serialize_with = "ser_vec")]
    pub k: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub det_t: Rational,
    #[serde(serialize_with = "ser_opt")]
    pub q1: Option<Rational>,
}

fn ser_vec<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&crate::algebra::format_rational(q))?;
    }
    seq.end()
}

fn ser_opt<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_some(&crate::algebra::format_rational(q)),
        None => s.serialize_none(),
    }
}

impl TruncationState {
    /// `K_n^{(N)}`, `1 ≤ n ≤ N + 1`.
    pub fn k(&self, n: usize) -> &Rational {
        &self.k[n - 1]
    }

    pub fn is_degenerate(&self) -> bool {
        self.q1.is_none()
    }
}

/// `K_{N+1} = 1`, `K_N = N(N+1) − λ`, `K_n = (n(n+1) − λ) K_{n+1} + β_n K_{n+2}`.
pub fn trunc_k(depth: usize, a2: &Rational, lambda: &Rational) -> Result<TruncationState> {
    if depth == 0 {
        return Err(Error::InvalidInput("truncants need depth N >= 1".into()));
    }
    let mut k = vec![Rational::zero(); depth + 1];
    k[depth] = Rational::one();
    k[depth - 1] = diag(depth, lambda);
    for n in (1..depth).rev() {
        k[n - 1] = diag(n, lambda) * &k[n] + beta_coeff(n, a2) * &k[n + 1];
    }
    let k1 = &k[0];
    let k2 = &k[1];
    let det_t = -(lambda * k1) + a2 * k2 / rat_int(3);
    let q1 = if k2.is_zero() { None } else { Some(k1 / k2) };
    Ok(TruncationState {
        depth,
        a2: a2.clone(),
        lambda: lambda.clone(),
        k,
        det_t,
        q1,
    })
}

/// `E_{−1}, E_0, …, E_N` with `E_M = det T_M`, from the forward continuant
/// `E_M = (M(M+1) − λ) E_{M−1} + M² a² / ((2M−1)(2M+1)) E_{M−2}`.
/// Index `i` of the result holds `E_{i−1}`.
pub fn det_t_prefix(depth: usize, a2: &Rational, lambda: &Rational) -> Vec<Rational> {
    let mut e = Vec::with_capacity(depth + 2);
    e.push(Rational::one());
    e.push(-lambda.clone());
    for m in 1..=depth {
        let w = Rational::new(BigInt::from(m * m), BigInt::from((2 * m - 1) * (2 * m + 1)));
        let next = diag(m, lambda) * &e[m] + w * a2 * &e[m - 1];
        e.push(next);
    }
    e
}

/// `det T_N(a, λ)` via the forward continuant.
pub fn det_t(depth: usize, a2: &Rational, lambda: &Rational) -> Rational {
    det_t_prefix(depth, a2, lambda).swap_remove(depth + 1)
}

/// `T_N` stored entry by entry. Off-diagonal entries are `coefficient · a`;
/// only the coefficients are kept, and products of an upper and a lower entry
/// become `coefficient product · a²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationMatrix {
    pub diag: Vec<Rational>,
    /// Row `j`, column `j+1`: `(j+1)/(2j+3)` times `a`.
    pub upper_coeff: Vec<Rational>,
    /// Row `j+1`, column `j`: `−(j+1)/(2j+1)` times `a`.
    pub lower_coeff: Vec<Rational>,
    pub a2: Rational,
}

impl TruncationMatrix {
    pub fn new(depth: usize, a2: &Rational, lambda: &Rational) -> Self {
        TruncationMatrix {
            diag: (0..=depth).map(|j| diag(j, lambda)).collect(),
            upper_coeff: (0..depth)
                .map(|j| Rational::new(BigInt::from(j + 1), BigInt::from(2 * j + 3)))
                .collect(),
            lower_coeff: (0..depth)
                .map(|j| Rational::new(-BigInt::from(j + 1), BigInt::from(2 * j + 1)))
                .collect(),
            a2: a2.clone(),
        }
    }

    pub fn depth(&self) -> usize {
        self.diag.len() - 1
    }

    /// `Δ_0, …, Δ_{N+1}`: determinants of the trailing principal submatrices
    /// obtained by deleting the first `n` rows and columns, by first-row
    /// expansion from the bottom up.
    pub fn trailing_minors(&self) -> Vec<Rational> {
        let size = self.diag.len();
        let mut delta = vec![Rational::zero(); size + 1];
        delta[size] = Rational::one();
        delta[size - 1] = self.diag[size - 1].clone();
        for n in (0..size - 1).rev() {
            let coupling = &self.upper_coeff[n] * &self.lower_coeff[n] * &self.a2;
            delta[n] = &self.diag[n] * &delta[n + 1] - coupling * &delta[n + 2];
        }
        delta
    }

    /// A rational matrix with the same principal minors as `T_N`: the factor
    /// `a²` is moved onto the upper entries and removed from the lower ones.
    pub fn dense_scaled(&self) -> Vec<Vec<Rational>> {
        let size = self.diag.len();
        let mut m = vec![vec![Rational::zero(); size]; size];
        for j in 0..size {
            m[j][j] = self.diag[j].clone();
        }
        for j in 0..size - 1 {
            m[j][j + 1] = &self.upper_coeff[j] * &self.a2;
            m[j + 1][j] = self.lower_coeff[j].clone();
        }
        m
    }
}

/// `û_{N+1}(a, λ) = C(2N+2, N+1) · det T_N(a, λ)`.
pub fn verify_compression(depth: usize, a2: &Rational, lambda: &Rational) -> bool {
    let u = u_hat_eval(a2, lambda, depth + 1);
    let c = Rational::from_integer(central_binomial(depth + 1));
    u[depth + 1] == c * det_t(depth, a2, lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorCheck {
    /// `Δ_n = K_n` for `1 ≤ n ≤ N + 1`.
    pub minors_match: bool,
    /// First `n` where the minors disagree.
    pub first_mismatch: Option<usize>,
    /// `det T_N = −λ K_1 + (a²/3) K_2`, with `det T_N` from the trailing minors.
    pub det_formula: bool,
    /// `λ q_1 − a²/3 = −det T_N / K_2`; `None` on the degenerate locus.
    pub rational_identity: Option<bool>,
    /// `det T_N` from the forward continuant equals `Δ_0`.
    pub forward_det: bool,
}

impl MinorCheck {
    pub fn pass(&self) -> bool {
        self.minors_match && self.det_formula && self.rational_identity != Some(false) && self.forward_det
    }
}

pub fn verify_minor_identities(depth: usize, a2: &Rational, lambda: &Rational) -> Result<MinorCheck> {
    let state = trunc_k(depth, a2, lambda)?;
    let minors = TruncationMatrix::new(depth, a2, lambda).trailing_minors();
    let first_mismatch = (1..=depth + 1).find(|&n| &minors[n] != state.k(n));
    let det = &minors[0];
    let det_formula = *det == -(lambda * state.k(1)) + a2 * state.k(2) / rat_int(3);
    let rational_identity = state
        .q1
        .as_ref()
        .map(|q1| lambda * q1 - a2 / rat_int(3) == -(det / state.k(2)));
    Ok(MinorCheck {
        minors_match: first_mismatch.is_none(),
        first_mismatch,
        det_formula,
        rational_identity,
        forward_det: det_t(depth, a2, lambda) == *det,
    })
}
