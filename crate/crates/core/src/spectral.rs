//! Decaying-branch eigenvalue `λ(a)` from finite truncations, and the
//! rational-slice diagnostics built on `û_n(a, λ)`.
//!
//! The branch at depth `N` is taken to be the smallest positive root of
//! `det T_N(a, ·)` (or the `k`-th sign change when a root index is given).
//! This selection is a heuristic: no finite-depth characterization of the
//! branch is known, and no reference value of `λ(a)` exists. Reports carry
//! that caveat in their `note` field.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{bits_for_tolerance, format_rational, ln_abs, pow2, rat, rat_int, round_dyadic};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::recurrence::u_hat_eval;
use crate::tridiag::{det_t, trunc_k};

pub const BRANCH_NOTE: &str = "branch = smallest positive root of det T_N (heuristic); \
no reference value for lambda(a) is available, values are computed here only";

/// Scan step for locating the first sign change.
pub fn scan_step() -> Rational {
    rat(1, 4)
}

/// Upper end of the scan: `4 · max(1, a²)`.
pub fn scan_cap(a2: &Rational) -> Rational {
    let one = Rational::one();
    rat_int(4) * if *a2 > one { a2.clone() } else { one }
}

/// Internal working precision, in bits, for a requested tolerance.
fn working_bits(tol: &Rational) -> u32 {
    4 * bits_for_tolerance(tol).max(1) + 4
}

fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// A located root with its sign-change bracket.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchRoot {
    pub depth: usize,
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub lambda: Rational,
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub lo: Rational,
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub hi: Rational,
    /// Sign of `det T_N` at `lo` and `hi` (opposite and nonzero), or 0 at an
    /// exactly hit root.
    pub sign_lo: i8,
    pub sign_hi: i8,
    /// `|det T_N(a, λ)|` at the returned `λ`.
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub residual: Rational,
    pub exact: bool,
}

impl BranchRoot {
    /// The recorded bracket still exhibits the recorded sign change, and
    /// `λ` lies strictly inside it.
    pub fn bracket_is_valid(&self, a2: &Rational) -> bool {
        let inside = self.lo < self.lambda && self.lambda < self.hi;
        let s_lo = sign(&det_t(self.depth, a2, &self.lo));
        let s_hi = sign(&det_t(self.depth, a2, &self.hi));
        inside && s_lo == self.sign_lo && s_hi == self.sign_hi && s_lo * s_hi < 0
    }
}

/// Smallest positive root (`root_index = 1`) or the `root_index`-th sign
/// change of `det T_N(a, ·)` on `(0, 4·max(1, a²)]`, refined by bisection
/// until the bracket is narrower than `tol / 2`.
pub fn lambda_branch(a2: &Rational, depth: usize, tol: &Rational, root_index: usize) -> Result<BranchRoot> {
    if !a2.is_positive() {
        return Err(Error::InvalidInput(format!("a2 must be positive, got {}", format_rational(a2))));
    }
    if depth == 0 {
        return Err(Error::InvalidInput("depth must be at least 1".into()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    if root_index == 0 {
        return Err(Error::InvalidInput("root index is 1-based".into()));
    }
    let f = |l: &Rational| det_t(depth, a2, l);
    let h = scan_step();
    let cap = scan_cap(a2);
    let tol_sq = tol * tol;

    let mut grid = vec![Rational::zero()];
    while grid.last().unwrap() < &cap {
        let next = grid.last().unwrap() + &h;
        grid.push(next);
    }
    let values: Vec<Rational> = grid.iter().map(f).collect();

    let mut found = 0usize;
    let mut last_nonzero: Option<usize> = None;
    let mut smallest: Option<(usize, Rational)> = None;
    for i in 0..grid.len() {
        let v = &values[i];
        let s = sign(v);
        let abs = v.abs();
        if smallest.as_ref().map_or(true, |(_, m)| abs < *m) {
            smallest = Some((i, abs));
        }
        if s == 0 {
            // exact hit: a root of odd multiplicity iff the neighbours differ in sign
            if let (Some(p), Some(nx)) = (last_nonzero, (i + 1..grid.len()).find(|&j| !values[j].is_zero())) {
                if sign(&values[p]) != sign(&values[nx]) {
                    found += 1;
                    if found == root_index {
                        return Ok(BranchRoot {
                            depth,
                            lambda: grid[i].clone(),
                            lo: grid[p].clone(),
                            hi: grid[nx].clone(),
                            sign_lo: sign(&values[p]),
                            sign_hi: sign(&values[nx]),
                            residual: Rational::zero(),
                            exact: true,
                        });
                    }
                }
            }
            continue;
        }
        if let Some(p) = last_nonzero {
            if sign(&values[p]) != s && p + 1 == i {
                found += 1;
                if found == root_index {
                    return bisect(depth, a2, tol, grid[p].clone(), grid[i].clone(), sign(&values[p]), s);
                }
            }
        }
        last_nonzero = Some(i);
    }
    match smallest {
        Some((i, m)) if m < tol_sq => Err(Error::TangencyCandidate {
            depth,
            lambda: format_rational(&grid[i]),
        }),
        _ => Err(Error::NoSignChange {
            depth,
            cap: format_rational(&cap),
        }),
    }
}

fn bisect(
    depth: usize,
    a2: &Rational,
    tol: &Rational,
    mut lo: Rational,
    mut hi: Rational,
    s_lo: i8,
    s_hi: i8,
) -> Result<BranchRoot> {
    let bits = working_bits(tol);
    let target = tol / rat_int(2);
    while &hi - &lo >= target {
        let mut mid = round_dyadic(&((&lo + &hi) / rat_int(2)), bits);
        if mid <= lo || mid >= hi {
            mid = (&lo + &hi) / rat_int(2);
        }
        let v = det_t(depth, a2, &mid);
        match sign(&v) {
            0 => {
                return Ok(BranchRoot {
                    depth,
                    lambda: mid,
                    lo,
                    hi,
                    sign_lo: s_lo,
                    sign_hi: s_hi,
                    residual: Rational::zero(),
                    exact: true,
                })
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    let mut lambda = round_dyadic(&((&lo + &hi) / rat_int(2)), bits);
    if lambda <= lo || lambda >= hi {
        lambda = (&lo + &hi) / rat_int(2);
    }
    let residual = det_t(depth, a2, &lambda).abs();
    Ok(BranchRoot {
        depth,
        lambda,
        lo,
        hi,
        sign_lo: s_lo,
        sign_hi: s_hi,
        residual,
        exact: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointResult {
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub lambda: Rational,
    pub iterations: usize,
    /// Iterates `λ_0, λ_1, …` as `p/q` strings.
    pub trace: Vec<String>,
}

/// Iterates `λ ← a² / (3 q_1^{(N)}(λ))` from `λ_0 = a²/6`, stopping once a
/// step is below `tol / 8`. Iterates are rounded to a dyadic grid far finer
/// than `tol` to bound their bit length.
pub fn lambda_fixed_point(a2: &Rational, depth: usize, tol: &Rational, max_iter: usize) -> Result<FixedPointResult> {
    if a2.is_negative() {
        return Err(Error::InvalidInput("a2 must be non-negative".into()));
    }
    if a2.is_zero() {
        return Ok(FixedPointResult {
            lambda: Rational::zero(),
            iterations: 0,
            trace: vec![format_rational(&Rational::zero())],
        });
    }
    let bits = working_bits(tol);
    let stop = tol / rat_int(8);
    let mut lambda = a2 / rat_int(6);
    let mut trace = vec![format_rational(&lambda)];
    let mut last_step = Rational::zero();
    for it in 1..=max_iter {
        let state = trunc_k(depth, a2, &lambda)?;
        let q1 = state.q1.ok_or_else(|| Error::DegenerateTruncation {
            depth,
            lambda: format_rational(&lambda),
        })?;
        if q1.is_zero() {
            return Err(Error::NotConverged {
                max_iter: it,
                last_step: "q1 = 0".into(),
            });
        }
        let next = round_dyadic(&(a2 / (rat_int(3) * q1)), bits);
        last_step = (&next - &lambda).abs();
        lambda = next;
        trace.push(format_rational(&lambda));
        if last_step < stop {
            return Ok(FixedPointResult {
                lambda,
                iterations: it,
                trace,
            });
        }
    }
    Err(Error::NotConverged {
        max_iter,
        last_step: format_rational(&last_step),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchSolveReport {
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub a2: Rational,
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub tolerance: Rational,
    pub depths: Vec<usize>,
    pub roots: Vec<BranchRoot>,
    /// `|λ_{N_{i+1}} − λ_{N_i}|`.
    pub differences: Vec<String>,
    /// `|det T_{N_{i+1}}(a, λ_{N_i})|`, recorded for information only.
    pub next_depth_residuals: Vec<String>,
    /// Last successive difference is below the tolerance.
    pub converged: bool,
    pub note: &'static str,
}

impl BranchSolveReport {
    pub fn lambdas(&self) -> impl Iterator<Item = &Rational> {
        self.roots.iter().map(|r| &r.lambda)
    }

    pub fn difference_values(&self) -> Vec<Rational> {
        self.roots.windows(2).map(|w| (&w[1].lambda - &w[0].lambda).abs()).collect()
    }
}

/// Solves the branch at each depth of `depths` (strictly increasing).
pub fn convergence_table(a2: &Rational, depths: &[usize], tol: &Rational) -> Result<BranchSolveReport> {
    if depths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("depths must be strictly increasing".into()));
    }
    let roots: Vec<BranchRoot> = depths
        .iter()
        .map(|&d| lambda_branch(a2, d, tol, 1))
        .collect::<Result<_>>()?;
    let diffs: Vec<Rational> = roots.windows(2).map(|w| (&w[1].lambda - &w[0].lambda).abs()).collect();
    let next_res = roots
        .windows(2)
        .map(|w| format_rational(&det_t(w[1].depth, a2, &w[0].lambda).abs()))
        .collect();
    let converged = diffs.last().is_some_and(|d| d < tol);
    Ok(BranchSolveReport {
        a2: a2.clone(),
        tolerance: tol.clone(),
        depths: depths.to_vec(),
        roots,
        differences: diffs.iter().map(format_rational).collect(),
        next_depth_residuals: next_res,
        converged,
        note: BRANCH_NOTE,
    })
}

/// `(sq)^n û_n(a, λ)` for `a² = r/s`, `λ = p/q` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSeq {
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub a2: Rational,
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub lambda: Rational,
    #[serde(serialize_with = "ser_ints")]
    pub entries: Vec<BigInt>,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

fn ser_f64<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{v:.12e}"))
}

fn ser_opt_f64<S: serde::Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => ser_f64(x, s),
        None => s.serialize_none(),
    }
}

pub fn integer_certificate(a2: &Rational, lambda: &Rational, n_max: usize) -> Result<CertificateSeq> {
    let scale = Rational::from_integer(a2.denom() * lambda.denom());
    let u = u_hat_eval(a2, lambda, n_max);
    let mut factor = Rational::one();
    let mut entries = Vec::with_capacity(n_max + 1);
    for (n, value) in u.iter().enumerate() {
        let scaled = &factor * value;
        if !scaled.is_integer() {
            return Err(Error::NonInteger {
                n,
                value: format_rational(&scaled),
            });
        }
        entries.push(scaled.to_integer());
        factor *= &scale;
    }
    Ok(CertificateSeq {
        a2: a2.clone(),
        lambda: lambda.clone(),
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayRow {
    pub n: usize,
    /// `ln |û_n|`; absent when `û_n = 0`.
    #[serde(serialize_with = "ser_opt_f64")]
    pub ln_abs_u_hat: Option<f64>,
    /// `n · |û_n|^{1/(2n)}`.
    #[serde(serialize_with = "ser_f64")]
    pub s_n: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayTable {
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub a2: Rational,
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub lambda: Rational,
    /// `e · √a²`, the scale `s_n` stays near on the branch.
    #[serde(serialize_with = "ser_f64")]
    pub e_sqrt_a2: f64,
    pub rows: Vec<DecayRow>,
    #[serde(skip)]
    pub abs_values: Vec<Rational>,
}

impl DecayTable {
    /// Maximal index ranges `[i, j]` (`i < j`) on which `|û_n|` strictly decreases.
    pub fn decreasing_ranges(&self) -> Vec<(usize, usize)> {
        let v = &self.abs_values;
        let mut out = Vec::new();
        let mut start: Option<usize> = None;
        for n in 1..v.len() {
            if v[n] < v[n - 1] {
                start.get_or_insert(n - 1);
            } else if let Some(s) = start.take() {
                out.push((s, n - 1));
            }
        }
        if let Some(s) = start {
            out.push((s, v.len() - 1));
        }
        out
    }

    /// `|û_{n+1}| > |û_n|` for every `n` in `from..to`.
    pub fn strictly_increasing_on(&self, from: usize, to: usize) -> bool {
        (from..to).all(|n| self.abs_values[n + 1] > self.abs_values[n])
    }
}

pub fn decay_diagnostic(a2: &Rational, lambda: &Rational, n_max: usize) -> DecayTable {
    let u = u_hat_eval(a2, lambda, n_max);
    let abs_values: Vec<Rational> = u.iter().map(|v| v.abs()).collect();
    let rows = abs_values
        .iter()
        .enumerate()
        .map(|(n, a)| {
            let ln = if a.is_zero() { None } else { Some(ln_abs(a)) };
            let s_n = match (n, ln) {
                (0, _) | (_, None) => 0.0,
                (_, Some(l)) => n as f64 * (l / (2.0 * n as f64)).exp(),
            };
            DecayRow {
                n,
                ln_abs_u_hat: ln,
                s_n,
            }
        })
        .collect();
    let e_sqrt_a2 = std::f64::consts::E * crate::algebra::rational::approx_f64(a2).max(0.0).sqrt();
    DecayTable {
        a2: a2.clone(),
        lambda: lambda.clone(),
        e_sqrt_a2,
        rows,
        abs_values,
    }
}

/// Default tolerance used by the CLI when none is given: `2^-64`.
pub fn default_tolerance() -> Rational {
    pow2(-64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `|λ − (1 − √(2/3))| < tol`, decided exactly by squaring.
    fn within_quadratic_root(lambda: &Rational, tol: &Rational) -> bool {
        let two_thirds = rat(2, 3);
        let lo = rat_int(1) - lambda - tol;
        let hi = rat_int(1) - lambda + tol;
        // lo < √(2/3) < hi
        (lo.is_negative() || &lo * &lo < two_thirds) && hi.is_positive() && &hi * &hi > two_thirds
    }

    #[test]
    fn depth_one_matches_quadratic_formula() {
        let tol = pow2(-64);
        let r = lambda_branch(&rat_int(1), 1, &tol, 1).unwrap();
        assert!(within_quadratic_root(&r.lambda, &tol));
        assert!(r.bracket_is_valid(&rat_int(1)));
        assert!(&r.hi - &r.lo < tol);
    }

    #[test]
    fn double_root_is_a_tangency_candidate() {
        let err = lambda_branch(&rat_int(3), 1, &pow2(-32), 1).unwrap_err();
        assert!(matches!(err, Error::TangencyCandidate { depth: 1, .. }), "{err:?}");
    }

    #[test]
    fn tiny_a2_gives_tiny_lambda() {
        let a2 = rat(1, 1_000_000);
        for depth in [1, 3, 8] {
            let r = lambda_branch(&a2, depth, &pow2(-40), 1).unwrap();
            assert!(r.lambda < a2, "depth {depth}: {}", r.lambda);
            assert!(r.lambda.is_positive());
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(lambda_branch(&rat_int(0), 2, &pow2(-8), 1), Err(Error::InvalidInput(_))));
        assert!(matches!(lambda_branch(&rat_int(-1), 2, &pow2(-8), 1), Err(Error::InvalidInput(_))));
        assert!(matches!(lambda_branch(&rat_int(1), 2, &pow2(-8), 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn second_root_is_larger() {
        let tol = pow2(-30);
        let r1 = lambda_branch(&rat_int(1), 3, &tol, 1).unwrap();
        let r2 = lambda_branch(&rat_int(1), 3, &tol, 2).unwrap();
        assert!(r2.lambda > r1.lambda);
        assert!(r2.bracket_is_valid(&rat_int(1)));
    }

    #[test]
    fn scalar_fixed_point() {
        let tol = pow2(-64);
        let fp = lambda_fixed_point(&rat_int(1), 1, &tol, 200).unwrap();
        assert!(within_quadratic_root(&fp.lambda, &tol));
        let zero = lambda_fixed_point(&rat_int(0), 5, &tol, 10).unwrap();
        assert_eq!(zero.lambda, rat_int(0));
        assert_eq!(zero.iterations, 0);
    }

    #[test]
    fn fixed_point_iteration_cap() {
        let err = lambda_fixed_point(&rat_int(1), 4, &pow2(-64), 1).unwrap_err();
        assert!(matches!(err, Error::NotConverged { max_iter: 1, .. }));
    }

    #[test]
    fn certificate_printed_values() {
        let c = integer_certificate(&rat_int(1), &rat_int(1), 3).unwrap();
        assert_eq!(c.entries[1..], [BigInt::from(-2), BigInt::from(-4), BigInt::from(-72)]);
        let c = integer_certificate(&rat_int(3), &rat_int(1), 2).unwrap();
        assert_eq!(c.entries[2], BigInt::from(0));
        let c = integer_certificate(&rat_int(0), &rat_int(0), 10).unwrap();
        assert!(c.entries[1..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn certificate_scales_denominators() {
        let (a2, l) = (rat(-7, 3), rat(5, 4));
        let c = integer_certificate(&a2, &l, 12).unwrap();
        let u = u_hat_eval(&a2, &l, 12);
        for n in 0..=12 {
            let back = Rational::from_integer(c.entries[n].clone()) / Rational::from_integer(BigInt::from(12).pow(n as u32));
            assert_eq!(back, u[n]);
        }
    }

    #[test]
    fn off_branch_growth_and_zero_table() {
        let t = decay_diagnostic(&rat_int(1), &rat_int(1), 50);
        assert!(t.strictly_increasing_on(3, 50));
        let z = decay_diagnostic(&rat_int(0), &rat_int(0), 10);
        assert!(z.rows[1..].iter().all(|r| r.s_n == 0.0 && r.ln_abs_u_hat.is_none()));
    }

    #[test]
    fn decreasing_ranges_detection() {
        let mut t = decay_diagnostic(&rat_int(0), &rat_int(0), 0);
        t.abs_values = [5, 4, 3, 6, 2, 2, 1].iter().map(|&v| rat_int(v)).collect();
        assert_eq!(t.decreasing_ranges(), vec![(0, 2), (3, 4), (5, 6)]);
    }
}
