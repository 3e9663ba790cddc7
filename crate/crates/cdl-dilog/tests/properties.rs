use std::f64::consts::PI;

use cdl_dilog::{mod_rogers, rogers, verify_period_di, PI2_6};
use cdl_pattern::{run_pattern, MutationWord};
use cdl_seed::ExchangeMatrix;
use proptest::prelude::*;

fn log_uniform() -> impl Strategy<Value = f64> {
    (-2.0f64..2.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #[test]
    fn euler(x in log_uniform()) {
        prop_assert!((mod_rogers(x).unwrap() + mod_rogers(1.0 / x).unwrap() - PI2_6).abs() <= 1e-11);
    }

    #[test]
    fn reflection(x in 0.0f64..=1.0) {
        prop_assert!((rogers(x).unwrap() + rogers(1.0 - x).unwrap() - PI2_6).abs() <= 1e-12);
    }

    #[test]
    fn pentagon(y1 in 1e-6f64..=100.0, y2 in 1e-6f64..=100.0) {
        let l = |x: f64| mod_rogers(x).unwrap();
        let s = l(y1) + l(y2 * (1.0 + y1)) + l((1.0 + y2 + y1 * y2) / y1) + l((1.0 + y2) / (y1 * y2)) + l(1.0 / y2);
        prop_assert!((s - PI * PI / 2.0).abs() <= 1e-10);
    }

    /// The finite-type period identities hold for every sampling seed.
    #[test]
    fn period_identities_any_seed(seed in any::<u64>(), d2 in 1i64..=3) {
        let len = [5, 6, 8][d2 as usize - 1];
        let run = run_pattern(&MutationWord::alternating(ExchangeMatrix::rank2(1, d2), len).unwrap()).unwrap();
        let nu = run.detect_period().unwrap();
        let rep = verify_period_di(&run, &nu, 10, 1e-9, seed).unwrap();
        prop_assert_eq!(rep.constant_term, rep.weights.n_minus);
    }
}
