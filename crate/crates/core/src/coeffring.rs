//! Maps `ũ_n` to the Taylor coefficient `c_n` as an element of
//! `ℤ[π², C, L]`, where the variable `pi2` stands for `π²` and `L` for the
//! alternating zero sum `L_τ(1)`.
//!
//! A monomial `a_{r,s} x^r λ^s` of `ũ_n` contributes
//! `a_{r,s} (−1)^s 2^{2n−4r−s} P^r C^{2n−2r−s} L^s`. The map works term by
//! term, so the exponent inequalities `2n − 4r − s ≥ 0` and
//! `2n − 2r − s ≥ n` are checked independently of any arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{format_rational, pow2, rat_int};
use crate::algebra::vars::PI2_C_L;
use crate::algebra::{Rational, SparsePoly};
use crate::error::{Error, Result};
use crate::recurrence::UtildeSeq;

/// Index of the `C` variable in the `(pi2, C, L)` ordering.
pub const C_INDEX: usize = 1;

/// `c_n` as a polynomial in `(pi2, C, L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HbPoly {
    pub n: usize,
    pub poly: SparsePoly,
}

/// Term-by-term image of `ũ_n`.
pub fn c_n_from_utilde(n: usize, u: &SparsePoly) -> Result<HbPoly> {
    let n64 = n as i64;
    let mut terms = Vec::with_capacity(u.num_terms());
    for (e, a) in u.terms() {
        let (r, s) = (e[0] as i64, e[1] as i64);
        let two_exp = 2 * n64 - 4 * r - s;
        let c_exp = 2 * n64 - 2 * r - s;
        if two_exp < 0 || c_exp < n64 {
            return Err(Error::ExponentViolation { n, r: e[0], s: e[1] });
        }
        let mut coeff = a << two_exp as usize;
        if s % 2 == 1 {
            coeff = -coeff;
        }
        terms.push(([e[0], c_exp as u32, e[1]], coeff));
    }
    Ok(HbPoly {
        n,
        poly: SparsePoly::from_terms(&PI2_C_L, terms),
    })
}

pub fn c_n_symbolic(n: usize) -> Result<HbPoly> {
    let seq = UtildeSeq::with_len(n)?;
    c_n_from_utilde(n, seq.get(n).expect("extended"))
}

/// `c_0, …, c_{n_max}` sharing one recurrence run.
pub fn c_n_symbolic_all(n_max: usize) -> Result<Vec<HbPoly>> {
    let seq = UtildeSeq::with_len(n_max)?;
    seq.entries()
        .iter()
        .enumerate()
        .map(|(n, u)| c_n_from_utilde(n, u))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityCheck {
    pub n: usize,
    pub pass: bool,
    pub min_c_exponent: Option<u32>,
    /// Offending exponent vector `(pi2, C, L)`.
    pub witness: Option<Vec<u32>>,
}

/// Every monomial must carry `C^k` with `k ≥ n`.
pub fn check_divisibility(h: &SparsePoly, n: usize) -> DivisibilityCheck {
    let witness = h
        .terms()
        .find(|(e, _)| (e[C_INDEX] as usize) < n)
        .map(|(e, _)| e.to_vec());
    DivisibilityCheck {
        n,
        pass: witness.is_none(),
        min_c_exponent: h.terms().map(|(e, _)| e[C_INDEX]).min(),
        witness,
    }
}

/// Evaluates `(2C)^{2n} ũ_n(P/(16C²), −L/(2C))` directly.
pub fn c_n_by_substitution(u: &SparsePoly, n: usize, p: &Rational, c: &Rational, l: &Rational) -> Result<Rational> {
    if c.is_zero() {
        return Err(Error::InvalidConstants("C must be nonzero".into()));
    }
    let x = p / (rat_int(16) * c * c);
    let lam = -(l / (rat_int(2) * c));
    let two_c = rat_int(2) * c;
    let mut scale = Rational::one();
    for _ in 0..2 * n {
        scale *= &two_c;
    }
    Ok(scale * u.eval(&[x, lam])?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub n: usize,
    pub samples: usize,
    /// Sample triples `(P, C, L)` where the two routes disagree.
    pub failures: Vec<[String; 3]>,
}

impl CrossCheck {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the symbolic image with the direct substitution at each sample.
pub fn cross_check_substitution(n: usize, u: &SparsePoly, samples: &[[Rational; 3]]) -> Result<CrossCheck> {
    let h = c_n_from_utilde(n, u)?;
    let mut failures = Vec::new();
    for [p, c, l] in samples {
        let symbolic = h.poly.eval(&[p.clone(), c.clone(), l.clone()])?;
        let direct = c_n_by_substitution(u, n, p, c, l)?;
        if symbolic != direct {
            failures.push([format_rational(p), format_rational(c), format_rational(l)]);
        }
    }
    Ok(CrossCheck {
        n,
        samples: samples.len(),
        failures,
    })
}

/// User-supplied constants. Nothing here is computed from the extremal
/// problem; `provenance` is echoed into every output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HbConstants {
    pub c_value: Rational,
    pub l_value: Rational,
    /// Bits of `π²` when it is computed here.
    pub pi_precision: u32,
    /// Exact `π²` substitute (e.g. for testing); skips the `π` computation.
    pub pi2_override: Option<Rational>,
    pub provenance: String,
}

/// Enclosure `[lo, hi]` of `π²` with `hi − lo ≤ 2^{−bits}`.
pub fn pi_squared_enclosure(bits: u32) -> (Rational, Rational) {
    // Machin: π = 16 atan(1/5) − 4 atan(1/239), alternating series with
    // explicit tail bounds.
    let guard = bits as i64 + 16;
    let eps = pow2(-guard);
    let (a5, e5) = atan_inv(5, &eps);
    let (a239, e239) = atan_inv(239, &eps);
    let pi = rat_int(16) * a5 - rat_int(4) * a239;
    let err = rat_int(16) * e5 + rat_int(4) * e239;
    let lo = &pi - &err;
    let hi = &pi + &err;
    (&lo * &lo, &hi * &hi)
}

/// `atan(1/k)` truncated once the next term is below `eps`; returns the
/// partial sum and a bound on the truncation error.
fn atan_inv(k: u32, eps: &Rational) -> (Rational, Rational) {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = k.clone();
    let mut sum = Rational::zero();
    let mut j = 0u64;
    loop {
        let term = Rational::new(BigInt::one(), &power * BigInt::from(2 * j + 1));
        if term < *eps {
            return (sum, term);
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &k2;
        j += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericValue {
    pub n: usize,
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub value: Rational,
    /// Bound on `|value − c_n|` due to the `π²` enclosure only.
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub error_bound: Rational,
    pub provenance: String,
}

/// `c_n` at the supplied constants, evaluated with interval arithmetic in the
/// `π²` variable.
pub fn c_n_numeric(h: &HbPoly, consts: &HbConstants) -> Result<NumericValue> {
    if consts.c_value.is_zero() {
        return Err(Error::InvalidConstants("C must be nonzero".into()));
    }
    let (lo, hi) = match &consts.pi2_override {
        Some(p) => (p.clone(), p.clone()),
        None => pi_squared_enclosure(consts.pi_precision),
    };
    let mut vlo = Rational::zero();
    let mut vhi = Rational::zero();
    for (e, a) in h.poly.terms() {
        let rest = Rational::from_integer(a.clone())
            * pow_rat(&consts.c_value, e[1])
            * pow_rat(&consts.l_value, e[2]);
        let (plo, phi) = (pow_rat(&lo, e[0]), pow_rat(&hi, e[0]));
        // lo ≥ 0, so P^r is increasing on the enclosure
        let (t1, t2) = (&rest * plo, &rest * phi);
        if t1 <= t2 {
            vlo += t1;
            vhi += t2;
        } else {
            vlo += t2;
            vhi += t1;
        }
    }
    let value = (&vlo + &vhi) / rat_int(2);
    let error_bound = ((&vhi - &vlo) / rat_int(2)).abs();
    Ok(NumericValue {
        n: h.n,
        value,
        error_bound,
        provenance: consts.provenance.clone(),
    })
}

fn pow_rat(q: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= q;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::recurrence::u_tilde;

    fn hb(terms: &[(&[u32], i64)]) -> SparsePoly {
        SparsePoly::from_i64_terms(&PI2_C_L, terms)
    }

    #[test]
    fn first_images() {
        assert_eq!(c_n_symbolic(0).unwrap().poly, hb(&[(&[0, 0, 0], 1)]));
        assert_eq!(c_n_symbolic(1).unwrap().poly, hb(&[(&[0, 1, 1], 4)]));
        assert_eq!(
            c_n_symbolic(2).unwrap().poly,
            hb(&[(&[1, 2, 0], 2), (&[0, 2, 2], 24), (&[0, 3, 1], 96)])
        );
    }

    #[test]
    fn divisibility() {
        assert!(check_divisibility(&c_n_symbolic(1).unwrap().poly, 1).pass);
        let c2 = check_divisibility(&c_n_symbolic(2).unwrap().poly, 2);
        assert!(c2.pass);
        assert_eq!(c2.min_c_exponent, Some(2));
        let bad = c_n_symbolic(2).unwrap().poly.add(&hb(&[(&[1, 0, 0], 1)])).unwrap();
        let rep = check_divisibility(&bad, 2);
        assert!(!rep.pass);
        assert_eq!(rep.witness, Some(vec![1, 0, 0]));
    }

    #[test]
    fn exponent_violation_detected() {
        // x^2 λ^2 in "ũ_3" breaks 2r + s ≤ n
        let fake = SparsePoly::from_i64_terms(&["x", "lambda"], &[(&[2, 2], 1)]);
        assert!(matches!(c_n_from_utilde(3, &fake), Err(Error::ExponentViolation { n: 3, r: 2, s: 2 })));
    }

    #[test]
    fn substitution_examples() {
        let u2 = u_tilde(2).unwrap();
        let s = cross_check_substitution(2, &u2, &[[rat_int(1), rat_int(1), rat_int(0)]]).unwrap();
        assert!(s.pass());
        assert_eq!(c_n_by_substitution(&u2, 2, &rat_int(1), &rat_int(1), &rat_int(0)).unwrap(), rat_int(2));
        let u1 = u_tilde(1).unwrap();
        for (p, l) in [(rat(3, 7), rat(-2, 5)), (rat_int(9), rat_int(4))] {
            let v = c_n_by_substitution(&u1, 1, &p, &rat_int(1), &l).unwrap();
            assert_eq!(v, rat_int(4) * &l);
        }
        let u0 = u_tilde(0).unwrap();
        assert_eq!(c_n_by_substitution(&u0, 0, &rat_int(5), &rat(1, 3), &rat_int(2)).unwrap(), rat_int(1));
        assert!(c_n_by_substitution(&u0, 0, &rat_int(5), &rat_int(0), &rat_int(2)).is_err());
    }

    #[test]
    fn pi_enclosure_brackets_known_digits() {
        let (lo, hi) = pi_squared_enclosure(80);
        // π² = 9.8696044010893586188344909998761511353...
        let reference = crate::algebra::parse_rational("9.8696044010893586188344909998761511353").unwrap();
        let slack = rat(1, 1_000_000_000_000_000_000);
        assert!(lo <= &reference + &slack && &reference - &slack <= hi);
        assert!(&hi - &lo <= pow2(-80));
    }

    #[test]
    fn numeric_values() {
        let consts = |c: i64, l: i64, pi2: Option<Rational>| HbConstants {
            c_value: rat_int(c),
            l_value: rat_int(l),
            pi_precision: 64,
            pi2_override: pi2,
            provenance: "test".into(),
        };
        let c0 = c_n_numeric(&c_n_symbolic(0).unwrap(), &consts(3, 2, None)).unwrap();
        assert_eq!(c0.value, rat_int(1));
        let c1 = c_n_numeric(&c_n_symbolic(1).unwrap(), &consts(1, 1, None)).unwrap();
        assert!((&c1.value - rat_int(4)).abs() <= c1.error_bound);
        let c2 = c_n_numeric(&c_n_symbolic(2).unwrap(), &consts(1, 0, Some(rat_int(1)))).unwrap();
        assert_eq!(c2.value, rat_int(2));
        assert_eq!(c2.error_bound, rat_int(0));
        assert!(matches!(
            c_n_numeric(&c_n_symbolic(1).unwrap(), &consts(0, 1, None)),
            Err(Error::InvalidConstants(_))
        ));
    }
}
