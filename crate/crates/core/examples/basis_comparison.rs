//! det M_n = C_n(−D_n) and D_n = v_n(−β², λ) on integer grids.
use continuant::algebra::rational::rat_int;
use continuant::legendre::{d_continuant, default_grid, verify_basis_comparison, TridiagB};
use continuant::recurrence::central_binomial;

fn main() -> continuant::Result<()> {
    let (beta, lambda) = (rat_int(2), rat_int(3));
    let b = TridiagB::at(4, &beta, &lambda);
    println!("det B_4(2, 3) = {}  continuant D_4 = {}", b.det(), d_continuant(4, &beta, &lambda));
    for n in 1..=10 {
        let (bs, ls) = default_grid(n);
        let rep = verify_basis_comparison(n, &bs, &ls)?;
        println!("n={n:2}  C_n = {:>6}  {} points  pass {}", central_binomial(n), rep.points, rep.pass());
    }
    Ok(())
}
