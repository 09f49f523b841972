//! û_{N+1} = C_{N+1} det T_N at seeded rational points.
use continuant::algebra::format_rational;
use continuant::recurrence::{central_binomial, u_hat_eval};
use continuant::sampling::RationalSampler;
use continuant::tridiag::{det_t, verify_compression};

fn main() {
    let mut sampler = RationalSampler::new(7);
    for depth in [0usize, 1, 5, 20] {
        let (a2, lambda) = (sampler.next(), sampler.next());
        let u = u_hat_eval(&a2, &lambda, depth + 1);
        let rhs = continuant::algebra::Rational::from_integer(central_binomial(depth + 1)) * det_t(depth, &a2, &lambda);
        println!(
            "N={depth:2} a2={} lambda={}  equal: {}  (checked: {})",
            format_rational(&a2),
            format_rational(&lambda),
            u[depth + 1] == rhs,
            verify_compression(depth, &a2, &lambda)
        );
    }
}
