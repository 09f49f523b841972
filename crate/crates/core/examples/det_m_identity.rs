//! Symbolic determinant of M_n against −ũ_n(−β², λ).
use continuant::legendre::{build_m, det_backends_agree, verify_det_m_identity};

fn main() -> continuant::Result<()> {
    let m = build_m(2);
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
        println!("[ {} ]", cells.join(" | "));
    }
    for n in 1..=8 {
        let c = verify_det_m_identity(n)?;
        println!("n={n}: identity {}  backends agree {}", c.pass, det_backends_agree(n)?);
        if n <= 3 {
            println!("    det M_{n} = {}", c.det_m);
        }
    }
    Ok(())
}
