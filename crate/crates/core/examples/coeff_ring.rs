//! Taylor coefficients in ℤ[π², C, L] and a numeric evaluation at
//! placeholder constants.
use continuant::algebra::rational::{rat, to_decimal};
use continuant::coeffring::{c_n_numeric, c_n_symbolic_all, check_divisibility, HbConstants};

fn main() -> continuant::Result<()> {
    let all = c_n_symbolic_all(5)?;
    for h in &all {
        let d = check_divisibility(&h.poly, h.n);
        println!("c_{} = {}   (min C exponent {:?})", h.n, h.poly, d.min_c_exponent);
    }
    let consts = HbConstants {
        c_value: rat(1, 2),
        l_value: rat(-1, 3),
        pi_precision: 96,
        pi2_override: None,
        provenance: "placeholder values for illustration".into(),
    };
    for h in &all {
        let v = c_n_numeric(h, &consts)?;
        println!("c_{} ~ {}  (+/- {})", v.n, to_decimal(&v.value, 20), to_decimal(&v.error_bound, 3));
    }
    Ok(())
}
