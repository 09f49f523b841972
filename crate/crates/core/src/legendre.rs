//! Scaled Legendre polynomials `Q_n = 2^n P_n` and the two matrix
//! realizations of `𝓛 + βt − λ`, where `𝓛 = −d/dt((1 − t²) d/dt)`:
//!
//! * `M_n`, the monomial-basis matrix over `ℤ[β, λ]`, whose last column is
//!   `−Q_n`;
//! * `B_n`, the tridiagonal Legendre-basis block with rational entries, whose
//!   determinant `D_n` obeys a continuant recurrence.
//!
//! The checks here compare `det M_n` with `−ũ_n(−β², λ)` symbolically, and
//! `det M_n = C_n · (−D_n)`, `D_n = v_n(−β², λ)` on deterministic grids.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::rational::{format_rational, rat_int};
use crate::algebra::vars::{BETA_LAMBDA, T};
use crate::algebra::{det_rational, PolyMatrix, Rational, SparsePoly};
use crate::error::Result;
use crate::recurrence::{central_binomial, u_tilde, v_eval};

/// `Q_n` together with its index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QPoly {
    pub n: usize,
    pub poly: SparsePoly,
}

impl QPoly {
    pub fn leading_coefficient(&self) -> BigInt {
        self.poly.coeff(&[self.n as u32])
    }
}

/// `Q_n(t) = Σ_k (−1)^k C(n, k) C(2n − 2k, n) t^{n−2k}`.
pub fn q_poly(n: usize) -> QPoly {
    let terms = (0..=n / 2).map(|k| {
        let c = binomial(BigInt::from(n), BigInt::from(k)) * binomial(BigInt::from(2 * n - 2 * k), BigInt::from(n));
        let c = if k % 2 == 1 { -c } else { c };
        ([(n - 2 * k) as u32], c)
    });
    QPoly {
        n,
        poly: SparsePoly::from_terms(&T, terms),
    }
}

/// `Q_0, …, Q_{n_max}` from `(n+1) Q_{n+1} = 2(2n+1) t Q_n − 4n Q_{n−1}`.
pub fn q_polys_by_recurrence(n_max: usize) -> Vec<SparsePoly> {
    let mut out = vec![SparsePoly::one(&T)];
    if n_max == 0 {
        return out;
    }
    out.push(SparsePoly::from_i64_terms(&T, &[(&[1], 2)]));
    for n in 1..n_max {
        let a = out[n].shift(&[1]).scale(&BigInt::from(2 * (2 * n + 1)));
        let b = out[n - 1].scale(&BigInt::from(4 * n));
        let next = a
            .sub(&b)
            .and_then(|p| p.exact_div_int(&BigInt::from(n + 1)))
            .expect("scaled Legendre recurrence stays integral");
        out.push(next);
    }
    out
}

/// `𝓛 p = −((1 − t²) p′)′ = (t² − 1) p″ + 2t p′` for `p ∈ ℤ[t]`.
pub fn legendre_operator(p: &SparsePoly) -> SparsePoly {
    let d1 = p.derivative(0);
    let d2 = d1.derivative(0);
    let a = d2.shift(&[2]).sub(&d2).expect("same ring");
    let b = d1.shift(&[1]).scale(&BigInt::from(2));
    a.add(&b).expect("same ring")
}

/// Column of `(𝓛 + βt − λ) t^m` in the monomial basis, as
/// `(power of t, coefficient in ℤ[β, λ])` pairs:
/// `β t^{m+1} + (m(m+1) − λ) t^m − m(m−1) t^{m−2}`.
pub fn operator_on_monomial(m: usize) -> Vec<(usize, SparsePoly)> {
    let mut col = vec![
        (m + 1, SparsePoly::var(&BETA_LAMBDA, 0)),
        (
            m,
            SparsePoly::from_terms(&BETA_LAMBDA, [([0u32, 0], BigInt::from(m * (m + 1))), ([0, 1], BigInt::from(-1))]),
        ),
    ];
    if m >= 2 {
        col.push((m - 2, SparsePoly::constant(&BETA_LAMBDA, -((m * (m - 1)) as i64))));
    }
    col
}

/// `M_n` (size `n+1`): rows index `1, t, …, t^n`; columns `0..n−1` are the
/// images of `t^m`, the last column is `−Q_n`.
pub fn build_m(n: usize) -> PolyMatrix {
    assert!(n >= 1, "M_n is defined for n >= 1");
    let mut mat = PolyMatrix::zeros(&BETA_LAMBDA, n + 1);
    for m in 0..n {
        for (row, entry) in operator_on_monomial(m) {
            mat.set(row, m, entry);
        }
    }
    let q = q_poly(n);
    for (e, c) in q.poly.terms() {
        mat.set(e[0] as usize, n, SparsePoly::constant(&BETA_LAMBDA, -c));
    }
    mat
}

/// The Legendre-basis block `B_n` evaluated at a point `(β, λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TridiagB {
    pub diag: Vec<Rational>,
    /// `b_{j−1, j} = 2jβ/(2j+1)`, stored at index `j − 1`.
    pub upper: Vec<Rational>,
    /// `b_{j+1, j} = (j+1)β/(2(2j+1))`, stored at index `j`.
    pub lower: Vec<Rational>,
}

impl TridiagB {
    pub fn at(n: usize, beta: &Rational, lambda: &Rational) -> Self {
        let diag = (0..n).map(|j| rat_int((j * (j + 1)) as i64) - lambda).collect();
        let upper = (1..n)
            .map(|j| Rational::new(BigInt::from(2 * j), BigInt::from(2 * j + 1)) * beta)
            .collect();
        let lower = (0..n.saturating_sub(1))
            .map(|j| Rational::new(BigInt::from(j + 1), BigInt::from(2 * (2 * j + 1))) * beta)
            .collect();
        TridiagB { diag, upper, lower }
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn dense(&self) -> Vec<Vec<Rational>> {
        let n = self.size();
        let mut a = vec![vec![Rational::zero(); n]; n];
        for j in 0..n {
            a[j][j] = self.diag[j].clone();
        }
        for j in 1..n {
            a[j - 1][j] = self.upper[j - 1].clone();
            a[j][j - 1] = self.lower[j - 1].clone();
        }
        a
    }

    /// Determinant by expansion along the last row.
    pub fn det(&self) -> Rational {
        let mut prev = Rational::one();
        let mut cur = Rational::one();
        for k in 0..self.size() {
            let next = if k == 0 {
                self.diag[0].clone()
            } else {
                &self.diag[k] * &cur - &self.lower[k - 1] * &self.upper[k - 1] * &prev
            };
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }
}

/// `D_0, …, D_{n_max}` from
/// `D_{n+1} = (n(n+1) − λ) D_n − n²β²/((2n−1)(2n+1)) D_{n−1}`.
pub fn d_continuants(n_max: usize, beta: &Rational, lambda: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::one()];
    if n_max == 0 {
        return out;
    }
    out.push(-lambda.clone());
    let b2 = beta * beta;
    for n in 1..n_max {
        let d = rat_int((n * (n + 1)) as i64) - lambda;
        let w = Rational::new(BigInt::from(n * n), BigInt::from((2 * n - 1) * (2 * n + 1)));
        let next = d * &out[n] - w * &b2 * &out[n - 1];
        out.push(next);
    }
    out
}

pub fn d_continuant(n: usize, beta: &Rational, lambda: &Rational) -> Rational {
    d_continuants(n, beta, lambda).swap_remove(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetMCheck {
    pub n: usize,
    pub pass: bool,
    pub det_m: SparsePoly,
    pub expected: SparsePoly,
}

/// Symbolic check `det M_n = −ũ_n(−β², λ)` in `ℤ[β, λ]`.
pub fn verify_det_m_identity(n: usize) -> Result<DetMCheck> {
    let det_m = build_m(n).det_bareiss()?;
    let expected = u_tilde(n)?.substitute_neg_square(0, "beta").neg();
    Ok(DetMCheck {
        n,
        pass: det_m == expected,
        det_m,
        expected,
    })
}

/// Both determinant backends on `M_n`; returns whether they agree.
pub fn det_backends_agree(n: usize) -> Result<bool> {
    let m = build_m(n);
    Ok(m.det_bareiss()? == m.det_cofactor()?)
}

/// A grid point that failed one of the basis-comparison identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridFailure {
    pub beta: String,
    pub lambda: String,
    pub identity: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisReport {
    pub n: usize,
    pub points: usize,
    pub failures: Vec<GridFailure>,
}

impl BasisReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `n + 1` distinct integers per axis, which exceeds the degree of both
/// sides in `β` and in `λ`; agreement on the full product grid certifies the
/// polynomial identities.
pub fn default_grid(n: usize) -> (Vec<Rational>, Vec<Rational>) {
    let shift = (n / 2) as i64;
    let axis: Vec<Rational> = (0..=n as i64).map(|i| rat_int(i - shift)).collect();
    (axis.clone(), axis.iter().map(|v| v + rat_int(1)).collect())
}

/// At every `(β, λ)` of the product grid: numeric `det M_n` equals
/// `C_n · (−D_n)`, `D_n` equals `v_n(−β², λ)`, and the dense `B_n`
/// determinant equals `D_n`.
pub fn verify_basis_comparison(n: usize, betas: &[Rational], lambdas: &[Rational]) -> Result<BasisReport> {
    let m = build_m(n);
    let cn = Rational::from_integer(central_binomial(n));
    let points: Vec<(Rational, Rational)> = betas
        .iter()
        .flat_map(|b| lambdas.iter().map(move |l| (b.clone(), l.clone())))
        .collect();
    let per_point: Vec<Result<Vec<GridFailure>>> = points
        .par_iter()
        .map(|(beta, lambda)| {
            let mut fails = Vec::new();
            let det_m = det_rational(m.eval(&[beta.clone(), lambda.clone()])?)?;
            let d = d_continuant(n, beta, lambda);
            let fail = |identity| GridFailure {
                beta: format_rational(beta),
                lambda: format_rational(lambda),
                identity,
            };
            if det_m != -(&cn * &d) {
                fails.push(fail("detM = -C_n D_n"));
            }
            let x = -(beta * beta);
            if v_eval(&x, lambda, n)[n] != d {
                fails.push(fail("D_n = v_n(-beta^2, lambda)"));
            }
            if TridiagB::at(n, beta, lambda).det() != d {
                fails.push(fail("det B_n = D_n"));
            }
            Ok(fails)
        })
        .collect();
    let mut failures = Vec::new();
    for r in per_point {
        failures.extend(r?);
    }
    Ok(BasisReport {
        n,
        points: points.len(),
        failures,
    })
}
