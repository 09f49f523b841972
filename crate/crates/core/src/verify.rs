//! Verification suites. Each suite maps to one identity or bound, runs its
//! checks (in parallel where they are independent) and reduces the results
//! in a fixed order, so a report depends only on its parameters.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::rational::{format_rational, rat_int};
use crate::algebra::vars::{PI2_C_L, X_LAMBDA};
use crate::algebra::{Rational, SparsePoly};
use crate::coeffring::{c_n_from_utilde, check_divisibility, cross_check_substitution};
use crate::error::{Error, Result};
use crate::legendre::{default_grid, det_backends_agree, verify_basis_comparison, verify_det_m_identity};
use crate::recurrence::{bounds_entry, UtildeSeq};
use crate::sampling::RationalSampler;
use crate::tridiag::{trunc_k, verify_compression, verify_minor_identities};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Integrality,
    Bounds,
    #[serde(rename = "detM")]
    DetM,
    Basis,
    Compression,
    Minors,
    Degenerate,
    Coeffring,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Integrality,
        Suite::Bounds,
        Suite::DetM,
        Suite::Basis,
        Suite::Compression,
        Suite::Minors,
        Suite::Degenerate,
        Suite::Coeffring,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Integrality => "integrality",
            Suite::Bounds => "bounds",
            Suite::DetM => "detM",
            Suite::Basis => "basis",
            Suite::Compression => "compression",
            Suite::Minors => "minors",
            Suite::Degenerate => "degenerate",
            Suite::Coeffring => "coeffring",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse {
                what: "suite",
                input: s.to_string(),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyParams {
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(id: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) -> Self {
        CheckResult {
            id: id.into(),
            pass,
            witness: if pass { None } else { Some(witness()) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub params: VerifyParams,
    pub checks: Vec<CheckResult>,
    pub totals: Totals,
}

impl VerifyReport {
    fn new(suite: Suite, params: VerifyParams, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let totals = Totals {
            checks: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        VerifyReport {
            suite,
            params,
            checks,
            totals,
        }
    }

    pub fn pass(&self) -> bool {
        self.totals.failed == 0
    }
}

pub fn run_suite(suite: Suite, params: VerifyParams) -> Result<VerifyReport> {
    let checks = match suite {
        Suite::Integrality => integrality(params.n_max),
        Suite::Bounds => bounds(params.n_max),
        Suite::DetM => det_m(params.n_max)?,
        Suite::Basis => basis(params.n_max)?,
        Suite::Compression => compression(params.n_max, params.samples, params.seed),
        Suite::Minors => minors(params.n_max, params.samples, params.seed)?,
        Suite::Degenerate => degenerate()?,
        Suite::Coeffring => coeffring(params.n_max, params.samples, params.seed)?,
    };
    Ok(VerifyReport::new(suite, params, checks))
}

/// The polynomials `ũ_1, ũ_2, ũ_3` as printed in closed form.
pub fn printed_first_terms() -> [SparsePoly; 3] {
    [
        SparsePoly::from_i64_terms(&X_LAMBDA, &[(&[0, 1], -2)]),
        SparsePoly::from_i64_terms(&X_LAMBDA, &[(&[0, 2], 6), (&[0, 1], -12), (&[1, 0], 2)]),
        SparsePoly::from_i64_terms(
            &X_LAMBDA,
            &[(&[0, 3], -20), (&[0, 2], 160), (&[1, 1], -12), (&[0, 1], -240), (&[1, 0], 40)],
        ),
    ]
}

fn integrality(n_max: usize) -> Vec<CheckResult> {
    let mut seq = UtildeSeq::new();
    let mut checks = Vec::with_capacity(n_max + 4);
    let target = n_max.max(3);
    for n in 2..=target {
        match seq.extend_to(n) {
            Ok(()) => {
                if n <= n_max {
                    checks.push(CheckResult::new(format!("u_{n} integral"), true, String::new));
                }
            }
            Err(e) => {
                checks.push(CheckResult::new(format!("u_{n} integral"), false, || e.to_string()));
                return checks;
            }
        }
    }
    for (i, printed) in printed_first_terms().iter().enumerate() {
        let n = i + 1;
        let got = seq.get(n).expect("extended");
        checks.push(CheckResult::new(format!("u_{n} matches printed"), got == printed, || {
            format!("computed {got}, printed {printed}")
        }));
    }
    checks
}

fn bounds(n_max: usize) -> Vec<CheckResult> {
    let seq = match UtildeSeq::with_len(n_max) {
        Ok(s) => s,
        Err(e) => return vec![CheckResult::new("sequence", false, || e.to_string())],
    };
    seq.entries()
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let b = bounds_entry(n, p);
            CheckResult::new(format!("u_{n} support"), b.pass, || {
                let (r, s) = b.witness.unwrap_or_default();
                format!("monomial x^{r} lambda^{s}")
            })
        })
        .collect()
}

fn det_m(n_max: usize) -> Result<Vec<CheckResult>> {
    let identity: Vec<Result<CheckResult>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let c = verify_det_m_identity(n)?;
            Ok(CheckResult::new(format!("detM_{n} = -u_{n}(-beta^2, lambda)"), c.pass, || {
                format!("det {} vs {}", c.det_m, c.expected)
            }))
        })
        .collect();
    let backends: Vec<Result<CheckResult>> = (1..=n_max.min(8))
        .into_par_iter()
        .map(|n| {
            let ok = det_backends_agree(n)?;
            Ok(CheckResult::new(format!("detM_{n} bareiss = cofactor"), ok, || "backends differ".into()))
        })
        .collect();
    identity.into_iter().chain(backends).collect()
}

fn basis(n_max: usize) -> Result<Vec<CheckResult>> {
    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let (bs, ls) = default_grid(n);
            let rep = verify_basis_comparison(n, &bs, &ls)?;
            Ok(CheckResult::new(
                format!("n={n} grid {}x{}", bs.len(), ls.len()),
                rep.pass(),
                || format!("{:?}", rep.failures.first()),
            ))
        })
        .collect()
}

/// Sample points for depth `depth`, drawn from a stream private to that depth.
pub fn depth_samples(seed: u64, depth: usize, count: usize) -> Vec<(Rational, Rational)> {
    RationalSampler::with_stream(seed, depth as u64).pairs(count)
}

fn compression(n_max: usize, samples: usize, seed: u64) -> Vec<CheckResult> {
    let per_depth: Vec<Vec<CheckResult>> = (0..=n_max)
        .into_par_iter()
        .map(|depth| {
            depth_samples(seed, depth, samples)
                .iter()
                .enumerate()
                .map(|(i, (a2, l))| {
                    CheckResult::new(format!("N={depth} #{i}"), verify_compression(depth, a2, l), || {
                        format!("a2={} lambda={}", format_rational(a2), format_rational(l))
                    })
                })
                .collect()
        })
        .collect();
    per_depth.into_iter().flatten().collect()
}

fn minors(n_max: usize, samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let per_depth: Vec<Result<Vec<CheckResult>>> = (1..=n_max)
        .into_par_iter()
        .map(|depth| {
            depth_samples(seed, depth, samples)
                .iter()
                .enumerate()
                .map(|(i, (a2, l))| {
                    let c = verify_minor_identities(depth, a2, l)?;
                    Ok(CheckResult::new(format!("N={depth} #{i}"), c.pass(), || {
                        format!("a2={} lambda={} {c:?}", format_rational(a2), format_rational(l))
                    }))
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for r in per_depth {
        out.extend(r?);
    }
    Ok(out)
}

/// The point `N = 3`, `λ = 0`, `a² = −280`, where `K_2` vanishes but
/// `det T_3` is still defined (and zero).
pub fn degenerate_point() -> (usize, Rational, Rational) {
    (3, rat_int(-280), rat_int(0))
}

fn degenerate() -> Result<Vec<CheckResult>> {
    let (depth, a2, l) = degenerate_point();
    let s = trunc_k(depth, &a2, &l)?;
    let show = |q: &Rational| format_rational(q);
    let minors = verify_minor_identities(depth, &a2, &l)?;
    Ok(vec![
        CheckResult::new("K_2 = 0", *s.k(2) == rat_int(0), || show(s.k(2))),
        CheckResult::new("K_1 = -896", *s.k(1) == rat_int(-896), || show(s.k(1))),
        CheckResult::new("det T_3 = 0", s.det_t == rat_int(0), || show(&s.det_t)),
        CheckResult::new("q_1 undefined", s.q1.is_none(), || "q_1 was defined".into()),
        CheckResult::new("compression holds", verify_compression(depth, &a2, &l), || "u_4 != C_4 det T_3".into()),
        CheckResult::new("trailing minors", minors.pass(), || format!("{minors:?}")),
    ])
}

fn coeffring(n_max: usize, samples: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let seq = UtildeSeq::with_len(n_max.max(2))?;
    let triples: Vec<[Rational; 3]> = {
        let mut s = RationalSampler::with_stream(seed, u64::MAX);
        (0..samples).map(|_| [s.next(), s.next_nonzero(), s.next()]).collect()
    };
    let per_n: Vec<Result<Vec<CheckResult>>> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let u = seq.get(n).expect("extended");
            let mut out = Vec::new();
            match c_n_from_utilde(n, u) {
                Ok(h) => {
                    let d = check_divisibility(&h.poly, n);
                    out.push(CheckResult::new(format!("c_{n} exponents"), true, String::new));
                    out.push(CheckResult::new(format!("c_{n} divisible by C^{n}"), d.pass, || {
                        format!("monomial {:?}", d.witness)
                    }));
                }
                Err(e) => out.push(CheckResult::new(format!("c_{n} exponents"), false, || e.to_string())),
            }
            if !triples.is_empty() {
                let x = cross_check_substitution(n, u, &triples)?;
                out.push(CheckResult::new(format!("c_{n} substitution x{}", triples.len()), x.pass(), || {
                    format!("{:?}", x.failures.first())
                }));
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_n {
        out.extend(r?);
    }
    let c1 = c_n_from_utilde(1, seq.get(1).expect("extended"))?.poly;
    let c2 = c_n_from_utilde(2, seq.get(2).expect("extended"))?.poly;
    let want1 = SparsePoly::from_terms(&PI2_C_L, [([0u32, 1, 1], BigInt::from(4))]);
    let want2 = SparsePoly::from_i64_terms(&PI2_C_L, &[(&[1, 2, 0], 2), (&[0, 2, 2], 24), (&[0, 3, 1], 96)]);
    out.push(CheckResult::new("c_1 = 4CL", c1 == want1, || c1.to_string()));
    out.push(CheckResult::new("c_2 = 2C^2 pi2 + 24C^2L^2 + 96C^3L", c2 == want2, || c2.to_string()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n_max: usize, samples: usize) -> VerifyParams {
        VerifyParams {
            n_max,
            samples,
            seed: 7,
            tol: "2^-64".into(),
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_small() {
        for s in Suite::ALL {
            let rep = run_suite(s, params(6, 5)).unwrap();
            assert!(rep.pass(), "{s}: {:?}", rep.checks.iter().find(|c| !c.pass));
            assert!(rep.totals.checks > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite(Suite::Compression, params(5, 4)).unwrap();
        let b = run_suite(Suite::Compression, params(5, 4)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.totals.checks, 6 * 4);
    }
}
