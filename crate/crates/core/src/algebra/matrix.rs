use std::collections::HashMap;

use num_traits::{One, Zero};

use super::poly::SparsePoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense square matrix over `SparsePoly`. All entries share one variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: Vec<String>,
    rows: Vec<Vec<SparsePoly>>,
}

impl PolyMatrix {
    pub fn zeros(vars: &[&str], size: usize) -> Self {
        PolyMatrix {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            rows: vec![vec![SparsePoly::zero(vars); size]; size],
        }
    }

    pub fn identity(vars: &[&str], size: usize) -> Self {
        let mut m = Self::zeros(vars, size);
        for i in 0..size {
            m.rows[i][i] = SparsePoly::one(vars);
        }
        m
    }

    pub fn from_rows(vars: &[&str], rows: Vec<Vec<SparsePoly>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        PolyMatrix {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &SparsePoly {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: SparsePoly) {
        self.rows[i][j] = p;
    }

    pub fn rows(&self) -> &[Vec<SparsePoly>] {
        &self.rows
    }

    /// Entry-wise evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.eval(point)).collect())
            .collect()
    }

    /// Fraction-free (Bareiss) elimination. Every division is an exact
    /// division in the polynomial ring; a failure there means the input was
    /// not over an integral domain or the arithmetic is broken.
    pub fn det_bareiss(&self) -> Result<SparsePoly> {
        let vars = self.vars();
        let n = self.size();
        if n == 0 {
            return Ok(SparsePoly::one(&vars));
        }
        let mut a = self.rows.clone();
        let mut prev = SparsePoly::one(&vars);
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(SparsePoly::zero(&vars));
                };
                a.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                    a[i][j] = num.exact_div(&prev)?;
                }
                a[i][k] = SparsePoly::zero(&vars);
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { det.neg() } else { det })
    }

    /// Laplace expansion along rows, memoized on the set of remaining
    /// columns. Zero entries are skipped, so sparse matrices stay cheap.
    pub fn det_cofactor(&self) -> Result<SparsePoly> {
        let n = self.size();
        assert!(n <= 63, "cofactor backend supports at most 63 columns");
        let mut memo: HashMap<u64, SparsePoly> = HashMap::new();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.cofactor_rec(0, all, &mut memo)
    }

    fn cofactor_rec(&self, row: usize, cols: u64, memo: &mut HashMap<u64, SparsePoly>) -> Result<SparsePoly> {
        let vars = self.vars();
        if cols == 0 {
            return Ok(SparsePoly::one(&vars));
        }
        if let Some(v) = memo.get(&cols) {
            return Ok(v.clone());
        }
        let mut acc = SparsePoly::zero(&vars);
        let mut position = 0usize;
        for j in 0..self.size() {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = &self.rows[row][j];
            if !entry.is_zero() {
                let minor = self.cofactor_rec(row + 1, cols & !(1 << j), memo)?;
                let term = entry.mul(&minor)?;
                acc = if position % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
            }
            position += 1;
        }
        memo.insert(cols, acc.clone());
        Ok(acc)
    }
}

/// Determinant of a dense rational matrix by Gaussian elimination with
/// exact arithmetic (first nonzero pivot).
pub fn det_rational(mut a: Vec<Vec<Rational>>) -> Result<Rational> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k + 1..n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
            a[i][k] = Rational::zero();
        }
    }
    Ok(det)
}
