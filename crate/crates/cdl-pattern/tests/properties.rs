use cdl_pattern::{run_pattern, MutationWord};
use cdl_seed::{is_sign_coherent, ExchangeMatrix};
use proptest::prelude::*;

fn skew3() -> impl Strategy<Value = ExchangeMatrix> {
    (prop::collection::vec(-1i64..2, 3), prop::collection::vec(1i64..3, 3)).prop_map(|(s, d)| {
        let mut b = vec![vec![0; 3]; 3];
        let pairs = [(0, 1), (0, 2), (1, 2)];
        for (t, &(i, j)) in pairs.iter().enumerate() {
            b[i][j] = s[t] * d[j];
            b[j][i] = -s[t] * d[i];
        }
        ExchangeMatrix::new(b).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn runs_are_sign_coherent_and_dual(b in skew3(), word in prop::collection::vec(0usize..3, 0..7)) {
        let run = run_pattern(&MutationWord::new(b, word).unwrap()).unwrap();
        for st in &run.steps {
            prop_assert!(is_sign_coherent(&st.c));
            for f in &st.f {
                prop_assert_eq!(f.constant_term(), cdl_algebra::int(1));
                prop_assert!(f.has_nonnegative_coefficients() && f.has_integer_coefficients());
            }
        }
        run.verify_dualities().unwrap();
        for (s, c) in run.c_plus.iter().enumerate() {
            prop_assert!(c.is_positive());
            prop_assert_eq!(c.content(), 1, "c⁺ at step {} not primitive", s);
        }
        if let Some(nu) = run.detect_period() {
            for i in 0..3 {
                prop_assert_eq!(run.word.delta(i), run.word.delta(nu.apply(i)));
            }
        }
    }
}
