//! Scaled Legendre polynomials by the explicit sum and by the recurrence.
use continuant::legendre::{legendre_operator, q_poly, q_polys_by_recurrence};

fn main() {
    let rec = q_polys_by_recurrence(6);
    for n in 0..=6 {
        let q = q_poly(n);
        assert_eq!(q.poly, rec[n]);
        println!("Q_{n} = {}   (leading coefficient {})", q.poly, q.leading_coefficient());
    }
    // (t²−1)Q″ + 2tQ′ = n(n+1)Q
    let q4 = q_poly(4).poly;
    println!("L Q_4 = {}", legendre_operator(&q4));
}
