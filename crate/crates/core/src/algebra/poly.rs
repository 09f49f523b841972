use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then lexicographic on the exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 3]>);

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn zero(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored, so two polynomials over
/// the same variables are equal iff their term maps are equal.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero(vars: &[&str]) -> Self {
        SparsePoly {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    fn zero_like(&self) -> Self {
        SparsePoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        let arity = p.arity();
        p.add_term(Monomial::zero(arity), c.into());
        p
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, 1)
    }

    /// The polynomial consisting of the single variable at `index`.
    pub fn var(vars: &[&str], index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        Self::from_terms(vars, [(exps, BigInt::one())])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponent vectors are summed.
    ///
    /// Panics if an exponent vector has the wrong length.
    pub fn from_terms<I, E>(vars: &[&str], terms: I) -> Self
    where
        I: IntoIterator<Item = (E, BigInt)>,
        E: AsRef<[u32]>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            let e = e.as_ref();
            assert_eq!(e.len(), p.arity(), "exponent vector length must equal arity");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    /// Integer-coefficient convenience constructor used mostly in tests.
    pub fn from_i64_terms(vars: &[&str], terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(vars, terms.iter().map(|(e, c)| (*e, BigInt::from(*c))))
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().rev().map(|(m, c)| (m.exps(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial::new(exps))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.arity()])
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Same polynomial, variables renamed (arity must match).
    pub fn relabel(&self, vars: &[&str]) -> Self {
        assert_eq!(vars.len(), self.arity());
        SparsePoly {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: self.terms.clone(),
        }
    }

    fn check_compatible(&self, other: &SparsePoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::ArityMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(other)?;
        let mut out = self.zero_like();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> SparsePoly {
        if k.is_zero() {
            return self.zero_like();
        }
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Multiplies by the monomial `exps` (no coefficient).
    pub fn shift(&self, exps: &[u32]) -> SparsePoly {
        let m = Monomial::new(exps);
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(&m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut out = SparsePoly::one(&self.var_refs());
        for _ in 0..e {
            out = out.mul(self).expect("same variables");
        }
        out
    }

    fn var_refs(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    /// Divides every coefficient by `d`, failing on the first coefficient that
    /// is not a multiple of `d`.
    pub fn exact_div_int(&self, d: &BigInt) -> Result<SparsePoly> {
        if d.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::NotDivisible {
                    exponents: m.exps().to_vec(),
                    coeff: c.to_string(),
                    divisor: d.to_string(),
                });
            }
            terms.insert(m.clone(), q);
        }
        Ok(SparsePoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Exact division by a polynomial in the same ring. Fails when the
    /// divisor does not divide `self` over the integers.
    pub fn exact_div(&self, divisor: &SparsePoly) -> Result<SparsePoly> {
        self.check_compatible(divisor)?;
        let (lm, lc) = divisor
            .leading()
            .ok_or_else(|| Error::ExactDivisionFailure("division by the zero polynomial".into()))?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = self.zero_like();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return Err(Error::ExactDivisionFailure(format!(
                    "leading monomial {:?} not divisible by {:?}",
                    m.exps(),
                    lm.exps()
                )));
            }
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::ExactDivisionFailure(format!(
                    "leading coefficient {c} not divisible by {lc}"
                )));
            }
            let qm = m.div(&lm);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.arity() {
            return Err(Error::ArityMismatch {
                left: self.vars.to_vec(),
                right: (0..point.len()).map(|i| format!("coord{i}")).collect(),
            });
        }
        // Clear denominators: with point[v] = a_v / b_v and D_v the largest
        // exponent of v, sum c * prod a_v^e * b_v^(D_v - e) over the integers.
        let arity = self.arity();
        let mut max_exp = vec![0usize; arity];
        for m in self.terms.keys() {
            for (v, &e) in m.exps().iter().enumerate() {
                max_exp[v] = max_exp[v].max(e as usize);
            }
        }
        let table = |base: &BigInt, d: usize| {
            let mut pw = Vec::with_capacity(d + 1);
            pw.push(BigInt::one());
            for k in 0..d {
                let next = &pw[k] * base;
                pw.push(next);
            }
            pw
        };
        let num_pow: Vec<Vec<BigInt>> = point.iter().zip(&max_exp).map(|(p, &d)| table(p.numer(), d)).collect();
        let den_pow: Vec<Vec<BigInt>> = point.iter().zip(&max_exp).map(|(p, &d)| table(p.denom(), d)).collect();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                let e = e as usize;
                if e > 0 {
                    t *= &num_pow[v][e];
                }
                if e < max_exp[v] {
                    t *= &den_pow[v][max_exp[v] - e];
                }
            }
            acc += t;
        }
        let den = (0..arity).fold(BigInt::one(), |d, v| d * &den_pow[v][max_exp[v]]);
        Ok(Rational::new(acc, den))
    }

    /// Replaces variable `index` by `-(new)^2`, relabelling it `new_label`:
    /// `c * v^r * rest` becomes `(-1)^r c * new^(2r) * rest`.
    pub fn substitute_neg_square(&self, index: usize, new_label: &str) -> SparsePoly {
        let mut vars = self.vars.to_vec();
        vars[index] = new_label.to_string();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e: SmallVec<[u32; 3]> = m.0.clone();
                let r = e[index];
                e[index] = 2 * r;
                let c = if r % 2 == 1 { -c } else { c.clone() };
                (Monomial(e), c)
            })
            .collect();
        SparsePoly {
            vars: vars.into(),
            terms,
        }
    }

    /// `max(sum_i w_i e_i)` over the support; `None` stands for -infinity.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        assert_eq!(weights.len(), self.arity());
        self.terms
            .keys()
            .map(|m| m.exps().iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum())
            .max()
    }

    /// Maximal exponent of variable `index`; `None` for the zero polynomial.
    pub fn degree_in_var(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps()[index]).max()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Formal partial derivative.
    pub fn derivative(&self, index: usize) -> SparsePoly {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let e = m.exps()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.add_term(Monomial(exps), c * BigInt::from(e));
        }
        out
    }

    /// True when every coefficient is divisible by `d`.
    pub fn is_divisible_by(&self, d: &BigInt) -> bool {
        self.terms.values().all(|c| c.is_multiple_of(d))
    }

    /// Largest coefficient bit length; 0 for the zero polynomial.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(|c| c.abs().bits()).max().unwrap_or(0)
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(&k, _)| k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    e: Vec<u32>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            vars: self.vars.to_vec(),
            terms: self
                .terms()
                .map(|(e, c)| TermRepr {
                    e: e.to_vec(),
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(d)?;
        let vars: Vec<&str> = repr.vars.iter().map(|s| s.as_str()).collect();
        let mut p = SparsePoly::zero(&vars);
        for t in repr.terms {
            if t.e.len() != vars.len() {
                return Err(D::Error::custom("exponent vector length does not match vars"));
            }
            let c: BigInt = t.c.parse().map_err(D::Error::custom)?;
            p.add_term(Monomial::new(&t.e), c);
        }
        Ok(p)
    }
}
