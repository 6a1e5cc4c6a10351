use icrates::channel::{ian_tdma_crossover, noisy_boundary, Channel2Asym, Channel2Sym};
use icrates::numerics::find_a0;
use icrates::rates2::{
    etw_branch, etw_terms, rate_sym_etw, rate_sym_ian, rate_sym_p2p, rate_sym_tdma2,
    region_vertices, sum_rate_ian_asym, sum_rate_p2p_asym, ActiveBound, Region,
};
use proptest::prelude::*;

fn ch(p: f64, a: f64) -> Channel2Sym {
    Channel2Sym::new(p, a).unwrap()
}

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

#[test]
fn reference_values() {
    let c = ch(100.0, 0.5);
    assert!(close(rate_sym_p2p(&c).value, 0.5 * 201f64.log2(), 1e-15));
    assert!(close(
        rate_sym_etw(&c).unwrap().value,
        0.5 * 151f64.log2(),
        1e-14
    ));
    // Branch value log2(1 + aP + 1/a) − 1 at (100, 0.05).
    let c = ch(100.0, 0.05);
    assert!(close(
        rate_sym_etw(&c).unwrap().value,
        26f64.log2() - 1.0,
        1e-14
    ));
    assert!(rate_sym_ian(&c).value > 4.14);
    // a = 1: ETW equals ½log2(1+2P) + ½log2(3/4).
    for p in [1.0, 10.0, 100.0, 1000.0] {
        let etw = rate_sym_etw(&ch(p, 1.0)).unwrap().value;
        let tdma = rate_sym_tdma2(p).unwrap().value;
        assert!(close(etw, tdma + 0.5 * 0.75f64.log2(), 1e-13), "P={p}");
    }
}

#[test]
fn etw_rejects_strong_interference() {
    assert!(rate_sym_etw(&ch(100.0, 2.0)).is_err());
    assert!(etw_branch(&ch(100.0, 1.5)).is_err());
    assert!(rate_sym_etw(&ch(100.0, 1.0)).is_ok());
}

#[test]
fn asymmetric_sum_rates() {
    let noisy = Channel2Asym::new(1.0, 1.0, 0.3, 0.3).unwrap();
    let v = sum_rate_p2p_asym(&noisy).unwrap().value;
    assert!(close(v, 2.0 * (1.0 + 1.0 / 1.3f64).log2(), 1e-15));
    let reduced = Channel2Asym::new(1.0, 0.5, 0.3, 0.3).unwrap();
    assert!(sum_rate_p2p_asym(&reduced).unwrap().value < v);
    let weak = Channel2Asym::new(1.0, 0.9, 0.8, 0.8).unwrap();
    assert!(close(
        sum_rate_p2p_asym(&weak).unwrap().value,
        2.72f64.log2(),
        1e-15
    ));
    let strong = Channel2Asym::new(3.0, 2.0, 2.0, 3.0).unwrap();
    assert!(sum_rate_p2p_asym(&strong).is_err());
    assert!(sum_rate_ian_asym(&strong).value > 0.0);
}

#[test]
fn etw_crosses_over_at_a0() {
    for p in [5.0, 10.0, 100.0, 1000.0] {
        let a0 = find_a0(p).unwrap();
        let (sum, individual) = etw_terms(&ch(p, a0));
        assert!(close(sum, individual, 1e-9), "P={p}");
    }
}

#[test]
fn region_reference_corners() {
    let v = region_vertices(&ch(1.0, 1.0), Region::C1).vertices;
    let s = 3f64.log2() - 1.0;
    let expected = [(0.0, 0.0), (1.0, 0.0), (1.0, s), (s, 1.0), (0.0, 1.0)];
    assert_eq!(v.len(), expected.len());
    for (got, want) in v.iter().zip(expected) {
        assert!(
            close(got.0, want.0, 1e-15) && close(got.1, want.1, 1e-15),
            "{v:?}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn etw_never_beats_ian_in_noisy_regime(p in log_uniform(1e-2, 1e6), t in 0.0..=1.0f64) {
        let a = (noisy_boundary(p) * t).max(1e-12);
        let c = ch(p, a);
        prop_assert!(rate_sym_etw(&c).unwrap().value <= rate_sym_ian(&c).value + 1e-12);
    }

    #[test]
    fn noisy_p2p_is_the_crossover_piecewise_form(p in log_uniform(1e-2, 1e6), t in 1e-6..=1.0f64) {
        let a = noisy_boundary(p) * t;
        let c = ch(p, a);
        let expected = if a <= ian_tdma_crossover(p) {
            rate_sym_ian(&c).value
        } else {
            rate_sym_tdma2(p).unwrap().value
        };
        prop_assert_eq!(rate_sym_p2p(&c).value, expected);
    }

    #[test]
    fn weak_regime_p2p_is_tdma(p in log_uniform(1e-2, 1e6), t in 1e-6..=1.0f64) {
        let nb = noisy_boundary(p);
        let a = 1.0 - (1.0 - nb) * (1.0 - t);
        prop_assume!(a > nb);
        let r = rate_sym_p2p(&ch(p, a));
        prop_assert_eq!(r.active_bound, ActiveBound::Tdma);
        prop_assert_eq!(r.value, rate_sym_tdma2(p).unwrap().value);
    }

    #[test]
    fn branch_matches_the_active_term(p in log_uniform(1e-1, 1e6), a in log_uniform(1e-6, 1.0)) {
        let c = ch(p, a);
        let a0 = find_a0(p).unwrap();
        prop_assume!((a - a0).abs() > 1e-9 * a0);
        prop_assert_eq!(
            etw_branch(&c).unwrap().active_bound(),
            rate_sym_etw(&c).unwrap().active_bound
        );
    }

    #[test]
    fn etw_is_continuous_at_one_over_p(p in log_uniform(1.5, 1e6)) {
        let a = 1.0 / p;
        let below = rate_sym_etw(&ch(p, a * (1.0 - 1e-10))).unwrap().value;
        let above = rate_sym_etw(&ch(p, a * (1.0 + 1e-10))).unwrap().value;
        prop_assert!(close(below, above, 1e-8), "{below} vs {above}");
    }

    #[test]
    fn etw_is_continuous_at_a0(p in log_uniform(1.5, 1e6)) {
        let a0 = find_a0(p).unwrap();
        let below = rate_sym_etw(&ch(p, a0 * (1.0 - 1e-10))).unwrap().value;
        let above = rate_sym_etw(&ch(p, a0 * (1.0 + 1e-10))).unwrap().value;
        prop_assert!(close(below, above, 1e-8));
    }

    #[test]
    fn p2p_dominates_each_component(p in log_uniform(1e-2, 1e6), a in log_uniform(1e-4, 1e7)) {
        let c = ch(p, a);
        let v = rate_sym_p2p(&c).value;
        prop_assert!(v >= rate_sym_tdma2(p).unwrap().value - 1e-12);
        prop_assert!(v <= (1.0 + p).log2() + 1e-12);
        if a <= 1.0 {
            prop_assert!(v >= rate_sym_ian(&c).value - 1e-12);
        }
    }

    #[test]
    fn regions_are_symmetric_counter_clockwise_polygons(
        p in log_uniform(1e-2, 1e4),
        a in log_uniform(1e-3, 1e4),
    ) {
        let c = ch(p, a);
        for r in [Region::C0, Region::C1, Region::C1Prime, Region::Capacity] {
            let v = region_vertices(&c, r);
            prop_assert_eq!(v.vertices[0], (0.0, 0.0));
            prop_assert!(v.is_swap_symmetric(1e-12), "{:?}", r);
            prop_assert!(v.signed_area2() > 0.0);
            if r != Region::Capacity {
                prop_assert!(v.is_convex(), "{:?}", r);
            }
        }
    }

    #[test]
    fn capacity_region_contains_the_symmetric_rate(p in log_uniform(1e-2, 1e4), a in log_uniform(1e-3, 1e4)) {
        // The symmetric p2p rate without time sharing lies on the diagonal of
        // the capacity region of p2p codes.
        let c = ch(p, a);
        let v = region_vertices(&c, Region::Capacity).vertices;
        let diag = v.iter().map(|&(x, y)| x.min(y)).fold(0.0, f64::max);
        let on_diag = v
            .windows(2)
            .filter_map(|w| {
                let ((x0, y0), (x1, y1)) = (w[0], w[1]);
                let (d0, d1) = (x0 - y0, x1 - y1);
                (d0 >= 0.0 && d1 <= 0.0 && d0 != d1).then(|| {
                    let t = d0 / (d0 - d1);
                    x0 + t * (x1 - x0)
                })
            })
            .fold(diag, f64::max);
        let p2p = rate_sym_p2p(&c);
        if p2p.active_bound != ActiveBound::Tdma {
            prop_assert!(close(on_diag, p2p.value, 1e-9), "{on_diag} vs {}", p2p.value);
        } else {
            prop_assert!(on_diag <= p2p.value + 1e-9);
        }
    }

    #[test]
    fn power_reduction_never_helps(p in log_uniform(1e-2, 1e4), a in 1e-3..=1.0f64, rho in 1e-3..=1.0f64) {
        let full = sum_rate_p2p_asym(&Channel2Asym::new(p, p, a, a).unwrap()).unwrap().value;
        let reduced = sum_rate_p2p_asym(&Channel2Asym::new(p, rho * p, a, a).unwrap()).unwrap().value;
        prop_assert!(full >= reduced - 1e-12);
    }
}
