use icrates::channel::noisy_boundary;
use icrates::numerics::{
    a1_closed, a2_closed, bracketed_root, compute_p_doubleprime, compute_p_prime, f, find_a0, g1,
    g1_root, g2, k3_snr_lower, root_with_growth, NamedFn, NamedFnKind, DEFAULT_TOL, K3_SNR_UPPER,
};
use icrates::Error;
use proptest::prelude::*;

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn log2_one_plus(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

/// The ETW sum term minus `½log2(1+2P)`, whose zero defines `a1`.
fn a1_equation(p: f64, a: f64, offset: f64) -> f64 {
    0.5 * log2_one_plus(p + a * p) + 0.5 * (2.0 + 1.0 / a).log2()
        - 1.0
        - 0.5 * log2_one_plus(2.0 * p)
        - offset
}

#[test]
fn threshold_constants() {
    assert_eq!(a1_closed(4.0), 0.25);
    let pp = compute_p_prime().unwrap();
    assert!((pp - 109.3606931762843).abs() < 1e-6);
    assert!(compute_p_doubleprime().unwrap() > 1000.0);
    assert!((k3_snr_lower() - 0.171_557_7).abs() < 1e-7);
    assert_eq!(K3_SNR_UPPER, 69.52587890625);
}

#[test]
fn bisection_reports_missing_brackets() {
    let e = bracketed_root(|x| x * x + 1.0, -1.0, 1.0, DEFAULT_TOL).unwrap_err();
    assert!(matches!(e, Error::Bracket { .. }));
    let e = root_with_growth(|_| 1.0, 0.0, 1.0, DEFAULT_TOL).unwrap_err();
    assert!(matches!(e, Error::Bracket { .. }));
    let e = bracketed_root(
        |x| if x > 0.5 { f64::NAN } else { -1.0 },
        0.0,
        1.0,
        DEFAULT_TOL,
    );
    assert!(e.is_err());
}

#[test]
fn named_functions_agree_with_free_functions() {
    for (p, a) in [(4.0, 0.3), (100.0, 0.2), (1.0, 0.9)] {
        assert_eq!(NamedFn::new(NamedFnKind::F, p).eval(a), f(p, a));
        assert_eq!(NamedFn::new(NamedFnKind::G1, p).eval(a), g1(p, a));
        assert_eq!(NamedFn::new(NamedFnKind::G2, p).eval(a), g2(p, a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn f_changes_sign_once_at_a0(p in log_uniform(1e-3, 1e6), t in 0.0..1.0f64) {
        let a0 = find_a0(p).unwrap();
        prop_assert!(f(p, a0).abs() < 1e-9 * (1.0 + p));
        prop_assert_eq!(f(p, 0.0), -1.0);
        prop_assert!(f(p, a0 * t * 0.999) < 0.0);
        prop_assert!(f(p, a0 * (1.001 + 10.0 * t)) > 0.0);
        if p >= 1.0 {
            prop_assert!(a0 <= 1.0);
        }
    }

    #[test]
    fn f_at_noisy_boundary_is_minus_one(p in log_uniform(1e-3, 1e8)) {
        prop_assert!((f(p, noisy_boundary(p)) + 1.0).abs() <= 1e-9);
    }

    #[test]
    fn a1_and_a2_solve_their_equations(p in log_uniform(1e-2, 1e6)) {
        let (a1, a2) = (a1_closed(p), a2_closed(p));
        prop_assert!(a1_equation(p, a1, 0.0).abs() <= 1e-12 * (1.0 + p.log2().abs()));
        prop_assert!(a1_equation(p, a2, 0.5).abs() <= 1e-12 * (1.0 + p.log2().abs()));
        prop_assert!(a2 < a1 && a1 < 1.0);
    }

    #[test]
    fn f_at_a1_increases_with_snr(p in log_uniform(4.0, 1e6), s in 1.001..2.0f64) {
        prop_assert!(f(p * s, a1_closed(p * s)) > f(p, a1_closed(p)));
    }

    #[test]
    fn g2_at_four_ninths(p in log_uniform(1e-2, 1e3)) {
        let expected = (441.0 - 4.0 * p) / 81.0;
        prop_assert!((g2(p, 4.0 / 9.0) - expected).abs() <= 1e-12);
    }

    #[test]
    fn g1_root_is_a_root(p in log_uniform(1e-2, 1e6)) {
        let r = g1_root(p).unwrap();
        prop_assert!(r > 0.0);
        let scale = 8.0 * p * r.powi(4) + 8.0 * r.powi(3) + 27.0 * r + 9.0;
        prop_assert!(g1(p, r).abs() <= 1e-9 * scale);
    }
}
