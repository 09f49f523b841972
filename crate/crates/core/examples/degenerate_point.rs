//! Truncants at N = 3, λ = 0, a² = −280, where K_2 vanishes.
use continuant::algebra::format_rational;
use continuant::tridiag::{trunc_k, verify_minor_identities};
use continuant::verify::degenerate_point;

fn main() -> continuant::Result<()> {
    let (depth, a2, lambda) = degenerate_point();
    let s = trunc_k(depth, &a2, &lambda)?;
    for n in 1..=depth + 1 {
        println!("K_{n} = {}", format_rational(s.k(n)));
    }
    println!("det T_3 = {}", format_rational(&s.det_t));
    println!("q_1 defined: {}", s.q1.is_some());
    println!("trailing minors agree: {}", verify_minor_identities(depth, &a2, &lambda)?.pass());
    Ok(())
}
