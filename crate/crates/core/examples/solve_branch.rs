//! Branch eigenvalue by bisection and by fixed-point iteration.
use continuant::algebra::rational::{approx_f64, rat_int};
use continuant::spectral::{convergence_table, default_tolerance, lambda_branch, lambda_fixed_point, BRANCH_NOTE};

fn main() -> continuant::Result<()> {
    let tol = default_tolerance();
    let a2 = rat_int(1);
    let root = lambda_branch(&a2, 1, &tol, 1)?;
    println!("N=1: lambda = {:.18}  (1 - sqrt(2/3) = {:.18})", approx_f64(&root.lambda), 1.0 - (2.0f64 / 3.0).sqrt());
    for depth in [5, 10, 20] {
        let b = lambda_branch(&a2, depth, &tol, 1)?;
        let f = lambda_fixed_point(&a2, depth, &tol, 1000)?;
        println!(
            "N={depth:2}: bisection {:.18}  fixed point {:.18} ({} steps)",
            approx_f64(&b.lambda),
            approx_f64(&f.lambda),
            f.iterations
        );
    }
    let table = convergence_table(&a2, &[5, 10, 20, 40], &tol)?;
    for (d, r) in table.depths.iter().zip(&table.roots) {
        println!("N={d:2}: {:.18}  bracket valid {}", approx_f64(&r.lambda), r.bracket_is_valid(&a2));
    }
    println!("{BRANCH_NOTE}");
    Ok(())
}
