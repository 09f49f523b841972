use continuant::algebra::Rational;
use continuant::recurrence::{central_binomials, u_hat_eval, v_eval, UtildeSeq};
use continuant::sampling::RationalSampler;

const N_MAX: usize = 60;

#[test]
fn symbolic_terms_match_streamed_values_and_normalization() {
    let seq = UtildeSeq::with_len(N_MAX).unwrap();
    let c = central_binomials(N_MAX);
    let mut s = RationalSampler::new(11);
    for _ in 0..50 {
        let (x, lambda) = (s.next(), s.next());
        let streamed = u_hat_eval(&x, &lambda, N_MAX);
        let v = v_eval(&x, &lambda, N_MAX);
        for n in 0..=N_MAX {
            let sym = seq.get(n).unwrap().eval(&[x.clone(), lambda.clone()]).unwrap();
            assert_eq!(sym, streamed[n], "n={n}");
            assert_eq!(sym, Rational::from_integer(c[n].clone()) * &v[n], "n={n}");
        }
    }
}

#[test]
fn central_binomials_match_factorial_formula() {
    let c = central_binomials(40);
    for (n, cn) in c.iter().enumerate() {
        assert_eq!(cn, &num_integer::binomial(continuant::algebra::BigInt::from(2 * n), continuant::algebra::BigInt::from(n)));
    }
}

#[test]
fn leading_lambda_coefficient_is_signed_central_binomial() {
    // The λ^n coefficient follows from dropping x: ∏ −(4k+2)/(k+1).
    let seq = UtildeSeq::with_len(30).unwrap();
    let c = central_binomials(30);
    for n in 0..=30 {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(seq.get(n).unwrap().coeff(&[0, n as u32]), &c[n] * sign);
    }
}
