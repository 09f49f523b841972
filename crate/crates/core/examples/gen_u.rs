//! Generates ũ_0..ũ_8 and prints their weighted support.
use continuant::recurrence::{check_bounds, UtildeSeq};

fn main() -> continuant::Result<()> {
    let seq = UtildeSeq::with_len(8)?;
    for (n, p) in seq.entries().iter().enumerate() {
        println!("u_{n} = {p}");
    }
    let report = check_bounds(&seq);
    for e in &report.entries {
        println!(
            "n={:2}  2r+s <= {:2}  deg_x = {:?}  deg_lambda = {:?}",
            e.n, e.weighted_degree.unwrap_or(0), e.deg_x, e.deg_lambda
        );
    }
    println!("all bounds hold: {}", report.pass);
    Ok(())
}
