//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits nonzero if any failed.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use continuant::algebra::rational::{pow2, rat, rat_int};
use continuant::algebra::vars::{BETA_LAMBDA, PI2_C_L, X_LAMBDA};
use continuant::algebra::{BigInt, Rational, SparsePoly};
use continuant::coeffring::{c_n_from_utilde, cross_check_substitution};
use continuant::legendre::{det_backends_agree, verify_det_m_identity};
use continuant::recurrence::UtildeSeq;
use continuant::sampling::RationalSampler;
use continuant::spectral::{
    convergence_table, decay_diagnostic, integer_certificate, lambda_branch, lambda_fixed_point,
};
use continuant::tridiag::trunc_k;
use continuant::verify::{run_suite, Suite, VerifyParams, VerifyReport};
use num_traits::{Signed, Zero};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite(s: Suite, n_max: usize, samples: usize, seed: u64) -> Result<VerifyReport, String> {
    let params = VerifyParams {
        n_max,
        samples,
        seed,
        tol: "1/18446744073709551616".into(),
    };
    let rep = run_suite(s, params).map_err(|e| e.to_string())?;
    ensure(rep.pass(), || {
        format!("{s}: {} failed, first {:?}", rep.totals.failed, rep.checks.iter().find(|c| !c.pass))
    })?;
    Ok(rep)
}

fn xl(terms: &[(&[u32], i64)]) -> SparsePoly {
    SparsePoly::from_i64_terms(&X_LAMBDA, terms)
}

fn c1_integrality() -> Outcome {
    let rep = suite(Suite::Integrality, 300, 0, 0)?;
    let seq = UtildeSeq::with_len(3).map_err(|e| e.to_string())?;
    let printed = [
        xl(&[(&[0, 1], -2)]),
        xl(&[(&[0, 2], 6), (&[0, 1], -12), (&[1, 0], 2)]),
        xl(&[(&[0, 3], -20), (&[0, 2], 160), (&[1, 1], -12), (&[0, 1], -240), (&[1, 0], 40)]),
    ];
    for (i, p) in printed.iter().enumerate() {
        ensure(seq.get(i + 1) == Some(p), || format!("u_{} = {:?}", i + 1, seq.get(i + 1)))?;
    }
    Ok(format!("{} checks, u_1..u_3 match", rep.totals.checks))
}

fn c2_det_m() -> Outcome {
    for n in 1..=12 {
        let c = verify_det_m_identity(n).map_err(|e| e.to_string())?;
        ensure(c.pass, || format!("n={n}: {} vs {}", c.det_m, c.expected))?;
    }
    // −ũ_2(−β², λ) written out by hand
    let m2 = verify_det_m_identity(2).map_err(|e| e.to_string())?.det_m;
    let want = SparsePoly::from_i64_terms(&BETA_LAMBDA, &[(&[0, 2], -6), (&[0, 1], 12), (&[2, 0], 2)]);
    ensure(m2 == want, || format!("det M_2 = {m2}"))?;
    for n in 1..=8 {
        ensure(det_backends_agree(n).map_err(|e| e.to_string())?, || format!("backends differ at n={n}"))?;
    }
    Ok("n <= 12 symbolic, backends agree n <= 8".into())
}

fn c3_basis() -> Outcome {
    let rep = suite(Suite::Basis, 20, 0, 0)?;
    Ok(format!("{} grids", rep.totals.checks))
}

fn c4_compression() -> Outcome {
    let rep = suite(Suite::Compression, 50, 100, 7)?;
    ensure(rep.totals.checks == 51 * 100, || format!("{} checks", rep.totals.checks))?;
    Ok(format!("{} points, 0 failures", rep.totals.checks))
}

fn c5_minors() -> Outcome {
    let rep = suite(Suite::Minors, 20, 20, 7)?;
    ensure(rep.totals.checks >= 20 * 20, || format!("{} checks", rep.totals.checks))?;
    let s = trunc_k(3, &rat_int(-280), &rat_int(0)).map_err(|e| e.to_string())?;
    ensure(*s.k(2) == rat_int(0), || format!("K_2 = {}", s.k(2)))?;
    ensure(*s.k(1) == rat_int(-896), || format!("K_1 = {}", s.k(1)))?;
    ensure(s.det_t.is_zero(), || format!("det T_3 = {}", s.det_t))?;
    suite(Suite::Degenerate, 0, 0, 0)?;
    Ok(format!("{} minor checks, degenerate point exact", rep.totals.checks))
}

fn c6_support() -> Outcome {
    let rep = suite(Suite::Bounds, 300, 0, 0)?;
    ensure(rep.totals.checks == 301, || format!("{} checks", rep.totals.checks))?;
    Ok("n <= 300, zero violations".into())
}

fn c7_coeff_ring() -> Outcome {
    let seq = UtildeSeq::with_len(60).map_err(|e| e.to_string())?;
    for n in 0..=60 {
        let h = c_n_from_utilde(n, seq.get(n).unwrap()).map_err(|e| e.to_string())?;
        let bad = h.poly.terms().find(|(e, _)| (e[1] as usize) < n);
        ensure(bad.is_none(), || format!("c_{n}: monomial {:?}", bad.map(|b| b.0.to_vec())))?;
    }
    let mut s = RationalSampler::new(2024);
    let triples: Vec<[Rational; 3]> = (0..50).map(|_| [s.next(), s.next_nonzero(), s.next()]).collect();
    for n in 0..=40 {
        let x = cross_check_substitution(n, seq.get(n).unwrap(), &triples).map_err(|e| e.to_string())?;
        ensure(x.pass(), || format!("c_{n} substitution fails at {:?}", x.failures.first()))?;
    }
    let c1 = c_n_from_utilde(1, seq.get(1).unwrap()).unwrap().poly;
    let c2 = c_n_from_utilde(2, seq.get(2).unwrap()).unwrap().poly;
    ensure(c1 == SparsePoly::from_i64_terms(&PI2_C_L, &[(&[0, 1, 1], 4)]), || format!("c_1 = {c1}"))?;
    let want2 = SparsePoly::from_i64_terms(&PI2_C_L, &[(&[1, 2, 0], 2), (&[0, 2, 2], 24), (&[0, 3, 1], 96)]);
    ensure(c2 == want2, || format!("c_2 = {c2}"))?;
    Ok("C-divisibility n <= 60, 50 triples n <= 40, c_1 and c_2 exact".into())
}

/// `|λ − (1 − √(2/3))| < tol`, decided exactly by squaring.
fn within_quadratic_root(lambda: &Rational, tol: &Rational) -> bool {
    let y = rat_int(1) - lambda;
    let target = rat(2, 3);
    let lo = &y - tol;
    let hi = &y + tol;
    (lo.is_negative() || &lo * &lo < target) && hi.is_positive() && &hi * &hi > target
}

fn c8_solver() -> Outcome {
    let tol = pow2(-64);
    let err = |e: continuant::Error| e.to_string();
    let root = lambda_branch(&rat_int(1), 1, &tol, 1).map_err(err)?;
    ensure(within_quadratic_root(&root.lambda, &tol), || format!("N=1 lambda = {}", root.lambda))?;
    for a2 in [1, 2] {
        let a2 = rat_int(a2);
        for depth in [5, 10, 20] {
            let b = lambda_branch(&a2, depth, &tol, 1).map_err(err)?;
            let f = lambda_fixed_point(&a2, depth, &tol, 10_000).map_err(err)?;
            let diff = (&b.lambda - &f.lambda).abs();
            ensure(diff <= tol, || format!("a2={a2} N={depth}: |diff| = {diff}"))?;
        }
    }
    let depths: Vec<usize> = (1..=40).collect();
    let table = convergence_table(&rat_int(1), &depths, &tol).map_err(err)?;
    for r in &table.roots {
        ensure(r.bracket_is_valid(&rat_int(1)) || r.exact, || format!("N={}: bracket invalid", r.depth))?;
        ensure(&r.hi - &r.lo <= tol, || format!("N={}: bracket wider than tol", r.depth))?;
    }
    ensure(table.note.contains("no reference value"), || "report lacks the no-reference note".into())?;
    Ok(format!("quadratic oracle, 6 method comparisons, {} depths", table.roots.len()))
}

fn c9_slices() -> Outcome {
    let err = |e: continuant::Error| e.to_string();
    let cert = integer_certificate(&rat_int(1), &rat_int(1), 3).map_err(err)?;
    let want: Vec<BigInt> = [1, -2, -4, -72].iter().map(|&v| BigInt::from(v)).collect();
    ensure(cert.entries == want, || format!("{:?}", cert.entries))?;
    let off = decay_diagnostic(&rat_int(1), &rat_int(1), 50);
    ensure(off.strictly_increasing_on(3, 50), || "|u_n| not increasing on 3..50".into())?;
    let root = lambda_branch(&rat_int(1), 80, &pow2(-64), 1).map_err(err)?;
    let on = decay_diagnostic(&rat_int(1), &root.lambda, 80);
    let ranges = on.decreasing_ranges();
    ensure(!ranges.is_empty(), || "no decreasing range on the branch".into())?;
    Ok(format!("certificate -2, -4, -72; decreasing ranges {ranges:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 integrality", c1_integrality),
        ("2 determinant comparison", c2_det_m),
        ("3 basis comparison", c3_basis),
        ("4 compression identity", c4_compression),
        ("5 trailing minors and degenerate point", c5_minors),
        ("6 weighted support", c6_support),
        ("7 coefficient ring", c7_coeff_ring),
        ("8 spectral solver", c8_solver),
        ("9 rational-slice diagnostics", c9_slices),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("PASS  criterion {name} ({secs:.1} s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name} ({secs:.1} s): {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
