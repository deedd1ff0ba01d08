use proptest::prelude::*;
use robcirc::optimizer::Variant;
use robcirc::sim::{percentile, run_simulation, summarize, table_csv, SimConfig, TABLE_HEADER};

fn small(design: &str, n: usize, variant: Variant) -> SimConfig {
    SimConfig {
        replicates: 60,
        ..SimConfig::new(design, n, 2024, variant)
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let cfg = small("2x3x4_main_bc", 16, Variant::Full);
    let one = in_pool(1, || run_simulation(&cfg).unwrap());
    let three = in_pool(3, || run_simulation(&cfg).unwrap());
    assert_eq!(one, three);
}

#[test]
fn summary_is_ordered_and_bounded() {
    for variant in [Variant::Full, Variant::Reduced] {
        let (s, records) = run_simulation(&small("2pow4_main", 12, variant)).unwrap();
        assert_eq!(records.len(), 60);
        assert!(s.delta_p05 <= s.delta_p20 && s.delta_p20 <= s.median_delta);
        assert!((0.0..=1.0).contains(&s.mean_rb));
        for r in &records {
            assert!((0.0..=1.0).contains(&r.r_before) && (0.0..=1.0).contains(&r.r_after));
        }
    }
}

#[test]
fn different_seeds_differ() {
    let a = run_simulation(&small("2pow4_main", 10, Variant::Full)).unwrap().1;
    let b = run_simulation(&SimConfig {
        seed: 2025,
        ..small("2pow4_main", 10, Variant::Full)
    })
    .unwrap()
    .1;
    assert_ne!(a, b);
}

#[test]
fn bad_sizes_are_rejected() {
    assert!(run_simulation(&small("2pow4_main", 4, Variant::Full)).is_err());
    assert!(run_simulation(&small("2pow4_main", 17, Variant::Full)).is_err());
    assert!(run_simulation(&small("no_such_design", 8, Variant::Full)).is_err());
}

#[test]
fn table_has_one_row_per_size() {
    let rows: Vec<_> = [10, 12]
        .iter()
        .map(|&n| run_simulation(&small("2pow4_main", n, Variant::Reduced)).unwrap().0)
        .collect();
    let csv = table_csv(&rows);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], TABLE_HEADER);
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("10,") && lines[2].starts_with("12,"));
}

proptest! {
    #[test]
    fn percentile_is_monotone_and_bracketed(mut xs in proptest::collection::vec(-1.0f64..1.0, 1..50), q in 0.0f64..=1.0) {
        xs.sort_by(f64::total_cmp);
        let v = percentile(&xs, q);
        prop_assert!(xs[0] <= v && v <= xs[xs.len() - 1]);
        prop_assert!(percentile(&xs, q / 2.0) <= v);
        prop_assert_eq!(percentile(&xs, 0.0), xs[0]);
        prop_assert_eq!(percentile(&xs, 1.0), xs[xs.len() - 1]);
    }

    #[test]
    fn summary_mean_matches_sample(xs in proptest::collection::vec(-1.0f64..1.0, 1..50)) {
        let s = summarize(8, &xs, &xs).unwrap();
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        prop_assert!((s.mean_delta - m).abs() < 1e-12);
        prop_assert_eq!(s.replicates, xs.len());
    }
}
