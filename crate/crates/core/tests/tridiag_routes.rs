use continuant::algebra::{det_rational, Rational};
use continuant::recurrence::{central_binomial, UtildeSeq};
use continuant::sampling::RationalSampler;
use continuant::tridiag::{det_t, det_t_prefix, trunc_k, verify_compression, TruncationMatrix};

#[test]
fn backward_and_forward_routes_agree() {
    let mut s = RationalSampler::new(3);
    for depth in 1..=60 {
        for _ in 0..3 {
            let (a2, l) = (s.next(), s.next());
            let st = trunc_k(depth, &a2, &l).unwrap();
            assert_eq!(st.det_t, det_t(depth, &a2, &l), "N={depth}");
            assert_eq!(det_t_prefix(depth, &a2, &l).last().unwrap(), &st.det_t);
        }
    }
}

#[test]
fn dense_determinant_matches_symbolic_polynomial() {
    let seq = UtildeSeq::with_len(13).unwrap();
    let mut s = RationalSampler::new(5);
    for depth in 0..=12 {
        for _ in 0..4 {
            let (a2, l) = (s.next(), s.next());
            let dense = det_rational(TruncationMatrix::new(depth, &a2, &l).dense_scaled()).unwrap();
            let u = seq.get(depth + 1).unwrap().eval(&[a2.clone(), l.clone()]).unwrap();
            assert_eq!(u, Rational::from_integer(central_binomial(depth + 1)) * dense, "N={depth}");
        }
    }
}

#[test]
fn compression_on_integer_lattice() {
    for depth in 0..=15 {
        for a in -3..=3i64 {
            for l in -3..=3i64 {
                let (a2, l) = (Rational::from_integer(a.into()), Rational::from_integer(l.into()));
                assert!(verify_compression(depth, &a2, &l));
            }
        }
    }
}
