//! Monte Carlo estimates against the exact engines, at three standard errors.

use dsort_core::exact::to_f64;
use dsort_core::{
    exact_ds_expectation, harmonic, mc_ds, mc_rds, mc_record_count, mc_record_counts,
    rds_expectation, RngSpec, StirlingTable,
};

fn within(mean: f64, exact: f64, se: f64) -> bool {
    (mean - exact).abs() <= 3.0 * se
}

#[test]
fn ds_means_match_plancherel() {
    let spec = RngSpec::new(7001);
    for n in (2..=10).chain([20, 40]) {
        let s = mc_ds(n, 100_000, spec).unwrap();
        let exact = to_f64(&exact_ds_expectation(n).unwrap().value);
        assert!(within(s.mean, exact, s.std_error), "n={n}: {} vs {exact} (se {})", s.mean, s.std_error);
    }
}

#[test]
fn rds_means_match_recurrence() {
    let spec = RngSpec::new(7002);
    let t = StirlingTable::new(50);
    let d = rds_expectation(50, &t).unwrap();
    for n in (2..=10).chain([20, 50]) {
        let s = mc_rds(n, 100_000, spec).unwrap();
        let exact = to_f64(&d.d[n]);
        assert!(within(s.mean, exact, s.std_error), "n={n}: {} vs {exact} (se {})", s.mean, s.std_error);
    }
}

#[test]
fn record_frequencies_follow_reciprocals() {
    let trials = 1_000_000u64;
    let counts = mc_record_counts(20, trials, RngSpec::new(7003)).unwrap();
    for (k, &c) in counts.iter().enumerate() {
        let p = 1.0 / (k + 1) as f64;
        let freq = c as f64 / trials as f64;
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((freq - p).abs() <= 3.0 * se.max(f64::MIN_POSITIVE), "i={}: {freq} vs {p}", k + 1);
    }
}

#[test]
fn record_count_mean_is_harmonic() {
    for n in [1, 5, 30, 200] {
        let s = mc_record_count(n, 200_000, RngSpec::new(7004)).unwrap();
        let h = to_f64(&harmonic(n));
        if n == 1 {
            assert_eq!(s.mean, 1.0);
        } else {
            assert!(within(s.mean, h, s.std_error), "n={n}: {} vs {h}", s.mean);
        }
    }
}
