//! Integer certificate off the branch and the decay table on it.
use continuant::algebra::rational::rat_int;
use continuant::spectral::{decay_diagnostic, default_tolerance, integer_certificate, lambda_branch};

fn main() -> continuant::Result<()> {
    let cert = integer_certificate(&rat_int(1), &rat_int(1), 8)?;
    for (n, v) in cert.entries.iter().enumerate() {
        println!("(sq)^{n} u_{n} = {v}");
    }
    let a2 = rat_int(1);
    let root = lambda_branch(&a2, 80, &default_tolerance(), 1)?;
    let table = decay_diagnostic(&a2, &root.lambda, 30);
    for row in &table.rows {
        println!("n={:2}  ln|u| = {:>12.4?}  s_n = {:.6}", row.n, row.ln_abs_u_hat, row.s_n);
    }
    println!("e*sqrt(a2) = {:.6}", table.e_sqrt_a2);
    println!("decreasing ranges: {:?}", table.decreasing_ranges());
    Ok(())
}
