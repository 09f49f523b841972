//! The universal sequence `ũ_n ∈ ℤ[x, λ]`, its central-binomial
//! normalization `v_n = ũ_n / C(2n, n)` and the pointwise specialization
//! `û_n(a, λ) = ũ_n(a², λ)`.
//!
//! `ũ_{n+1}` is formed over ℤ as
//! `(4n+2)(n(n+1) − λ) ũ_n + 4n x ũ_{n−1}` and then divided exactly by
//! `n + 1`. A failed division is an integrality violation and aborts.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::vars::X_LAMBDA;
use crate::algebra::{Rational, SparsePoly};
use crate::error::{Error, Result};

/// Weights `(w(x), w(λ)) = (2, 1)`.
pub const XL_WEIGHTS: [u32; 2] = [2, 1];

/// Cached prefix `ũ_0, …, ũ_m`, extended on demand.
#[derive(Clone, Debug)]
pub struct UtildeSeq {
    entries: Vec<SparsePoly>,
}

impl Default for UtildeSeq {
    fn default() -> Self {
        Self::new()
    }
}

impl UtildeSeq {
    /// Sequence holding `ũ_0 = 1` and `ũ_1 = −2λ`.
    pub fn new() -> Self {
        let u0 = SparsePoly::one(&X_LAMBDA);
        let u1 = SparsePoly::from_i64_terms(&X_LAMBDA, &[(&[0, 1], -2)]);
        UtildeSeq { entries: vec![u0, u1] }
    }

    /// Wraps arbitrary polynomials, e.g. to audit a modified sequence with
    /// [`check_bounds`].
    pub fn from_entries(entries: Vec<SparsePoly>) -> Self {
        UtildeSeq { entries }
    }

    pub fn with_len(n_max: usize) -> Result<Self> {
        let mut s = Self::new();
        s.extend_to(n_max)?;
        Ok(s)
    }

    /// Highest computed index.
    pub fn n_max(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&SparsePoly> {
        self.entries.get(n)
    }

    pub fn entries(&self) -> &[SparsePoly] {
        &self.entries
    }

    pub fn extend_to(&mut self, n_max: usize) -> Result<()> {
        while self.entries.len() <= n_max {
            let n = self.entries.len() - 1;
            let next = step(n, &self.entries[n], &self.entries[n - 1])?;
            self.entries.push(next);
        }
        Ok(())
    }
}

/// One application of the recurrence: returns `ũ_{n+1}` from `ũ_n`, `ũ_{n−1}`.
fn step(n: usize, un: &SparsePoly, prev: &SparsePoly) -> Result<SparsePoly> {
    let nn = BigInt::from(n);
    let a = BigInt::from(4 * n + 2);
    // (4n+2)(n(n+1) - λ)
    let diag = SparsePoly::from_terms(&X_LAMBDA, [([0u32, 0], &a * &nn * (&nn + 1u32)), ([0, 1], -&a)]);
    let mut acc = diag.mul(un)?;
    if n > 0 {
        let off = prev.shift(&[1, 0]).scale(&BigInt::from(4 * n));
        acc = acc.add(&off)?;
    }
    acc.exact_div_int(&(nn + 1u32)).map_err(|e| Error::IntegralityViolation {
        n: n + 1,
        source: Box::new(e),
    })
}

/// `ũ_n` computed from scratch.
pub fn u_tilde(n: usize) -> Result<SparsePoly> {
    let mut s = UtildeSeq::new();
    s.extend_to(n)?;
    Ok(s.entries.swap_remove(n))
}

/// Read-mostly shared cache; readers run concurrently, extension takes the
/// write lock.
#[derive(Debug, Default)]
pub struct UtildeCache {
    inner: RwLock<UtildeSeq>,
}

impl UtildeCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize) -> Result<SparsePoly> {
        if let Some(p) = self.inner.read().expect("cache lock").get(n) {
            return Ok(p.clone());
        }
        let mut w = self.inner.write().expect("cache lock");
        w.extend_to(n)?;
        Ok(w.entries[n].clone())
    }

    pub fn snapshot(&self, n_max: usize) -> Result<UtildeSeq> {
        self.get(n_max)?;
        let r = self.inner.read().expect("cache lock");
        Ok(UtildeSeq::from_entries(r.entries[..=n_max].to_vec()))
    }
}

/// `C(2n, n)` via `C_{k+1} = C_k · 2(2k+1) / (k+1)`.
pub fn central_binomial(n: usize) -> BigInt {
    let mut c = BigInt::one();
    for k in 0..n {
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 1);
    }
    c
}

/// `C_0, …, C_{n_max}`.
pub fn central_binomials(n_max: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut c = BigInt::one();
    out.push(c.clone());
    for k in 0..n_max {
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 1);
        out.push(c.clone());
    }
    out
}

/// `v_0, …, v_{n_max}` at `(x, λ)` from
/// `v_{n+1} = (n(n+1) − λ) v_n + n²/((2n−1)(2n+1)) x v_{n−1}`.
pub fn v_eval(x: &Rational, lambda: &Rational, n_max: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    if n_max == 0 {
        return out;
    }
    out.push(-lambda.clone());
    for n in 1..n_max {
        let d = Rational::from_integer(BigInt::from(n * (n + 1))) - lambda;
        let w = Rational::new(BigInt::from(n * n), BigInt::from((2 * n - 1) * (2 * n + 1)));
        let next = d * &out[n] + w * x * &out[n - 1];
        out.push(next);
    }
    out
}

/// `û_0, …, û_{n_max}` at `(a², λ)` by streaming the defining recurrence in
/// exact rationals.
pub fn u_hat_eval(a2: &Rational, lambda: &Rational, n_max: usize) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    let mut prev = Rational::zero();
    for n in 0..n_max {
        let cur = out[n].clone();
        let np1 = BigInt::from(n + 1);
        let d = Rational::from_integer(BigInt::from(n * (n + 1))) - lambda;
        let next = (Rational::from_integer(BigInt::from(4 * n + 2)) * d * &cur
            + Rational::from_integer(BigInt::from(4 * n)) * a2 * &prev)
            / Rational::from_integer(np1);
        prev = cur;
        out.push(next);
    }
    out
}

/// Weighted degree with `w(x) = 2, w(λ) = 1`; `None` for the zero polynomial.
pub fn weighted_degree(p: &SparsePoly) -> Option<u64> {
    p.weighted_degree(&XL_WEIGHTS)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsEntry {
    pub n: usize,
    pub weighted_degree: Option<u64>,
    pub deg_x: Option<u32>,
    pub deg_lambda: Option<u32>,
    pub pass: bool,
    /// First offending monomial `(r, s)` of `x^r λ^s`.
    pub witness: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub entries: Vec<BoundsEntry>,
    pub pass: bool,
}

/// Checks `2r + s ≤ n`, `r ≤ ⌊n/2⌋`, `s ≤ n` for every monomial of every entry.
pub fn check_bounds(seq: &UtildeSeq) -> BoundsReport {
    let entries: Vec<BoundsEntry> = seq
        .entries()
        .iter()
        .enumerate()
        .map(|(n, p)| bounds_entry(n, p))
        .collect();
    let pass = entries.iter().all(|e| e.pass);
    BoundsReport { entries, pass }
}

pub fn bounds_entry(n: usize, p: &SparsePoly) -> BoundsEntry {
    let n64 = n as u64;
    let witness = p
        .terms()
        .map(|(e, _)| (e[0], e[1]))
        .find(|&(r, s)| 2 * r as u64 + s as u64 > n64 || r as u64 > n64 / 2 || s as u64 > n64);
    BoundsEntry {
        n,
        weighted_degree: weighted_degree(p),
        deg_x: p.degree_in_var(0),
        deg_lambda: p.degree_in_var(1),
        pass: witness.is_none(),
        witness,
    }
}
