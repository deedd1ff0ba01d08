use itertools::Itertools;
use num_rational::BigRational;
use proptest::prelude::*;
use robcirc::design::corpus::corpus;
use robcirc::optimizer::{optimize, optimize_with, ExchangeConfig, TieRule, Variant, WorkingSet};
use robcirc::robustness::robustness;
use robcirc::sim::seeded_fraction;
use robcirc::{circuits_of_model, submatrix, Error, Fraction};

fn cfg(seed: u64, variant: Variant) -> ExchangeConfig {
    ExchangeConfig {
        seed,
        variant,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exchange_never_increases_contained_circuits(seed in any::<u64>(), n in 6usize..=12, reduced in any::<bool>()) {
        let mm = corpus("2pow4_main").unwrap().model_matrix().unwrap();
        let basis = circuits_of_model(&mm, None, &Default::default()).unwrap();
        let variant = if reduced { Variant::Reduced } else { Variant::Full };
        let ws = WorkingSet::new(&basis, variant).unwrap();
        let start = seeded_fraction(16, n, seed).unwrap();
        let (end, trace) = optimize_with(&start, &ws, &cfg(seed, variant)).unwrap();
        prop_assert_eq!(end.len(), n);
        prop_assert!(ws.contained(&end).unwrap() <= ws.contained(&start).unwrap());
        let mut last = ws.contained(&start).unwrap();
        for s in &trace.steps {
            prop_assert!(s.active_after < last);
            last = s.active_after;
        }
    }
}

// Every circuit of this array lies on four points, so the support-4 basis
// is the whole working set.
#[test]
fn oa40_reaches_the_known_optimum_at_22_runs() {
    let mm = corpus("oa40_main").unwrap().model_matrix().unwrap();
    let bounded = circuits_of_model(&mm, Some(4), &Default::default()).unwrap();
    assert_eq!(bounded.len(), 190);
    let supports = bounded.circuits().iter().map(|c| c.support().to_vec()).collect();
    let ws = WorkingSet::from_supports(40, mm.p(), supports);
    for seed in 0..3 {
        let start = seeded_fraction(40, 22, seed).unwrap();
        let (end, _) = optimize_with(&start, &ws, &cfg(seed, Variant::Full)).unwrap();
        let r = robustness(&submatrix(&mm, &end).unwrap(), None).unwrap();
        assert_eq!(r.robustness, BigRational::new(4.into(), 22.into()), "seed {seed}");
    }
}

#[test]
fn full_variant_refuses_a_short_basis() {
    let mm = corpus("2pow4_main").unwrap().model_matrix().unwrap();
    let bounded = circuits_of_model(&mm, Some(4), &Default::default()).unwrap();
    let start = seeded_fraction(16, 8, 1).unwrap();
    assert!(matches!(optimize(&start, &bounded, &cfg(1, Variant::Full)), Err(Error::NotExhaustive(4))));
}

#[test]
fn block_design_multistart_finds_the_best_removal() {
    let mm = corpus("bibd_4x6_main").unwrap().model_matrix().unwrap();
    let basis = circuits_of_model(&mm, None, &Default::default()).unwrap();
    let mut best = BigRational::new(0.into(), 1.into());
    for pair in (0..12).combinations(2) {
        let keep = (0..12).filter(|r| !pair.contains(r)).collect();
        let start = Fraction::new(12, keep).unwrap();
        let (end, _) = optimize(&start, &basis, &cfg(7, Variant::Full)).unwrap();
        let r = robustness(&submatrix(&mm, &end).unwrap(), None).unwrap().robustness;
        best = best.max(r);
    }
    assert_eq!(best, BigRational::new(4.into(), 5.into()));
}

#[test]
fn runs_are_reproducible_and_traced() {
    let mm = corpus("2x3x4_main_bc").unwrap().model_matrix().unwrap();
    let basis = circuits_of_model(&mm, None, &Default::default()).unwrap();
    let start = seeded_fraction(24, 12, 5).unwrap();
    let c = ExchangeConfig {
        tie_rule: TieRule::SeededRandom,
        ..cfg(11, Variant::Full)
    };
    let (a, ta) = optimize(&start, &basis, &c).unwrap();
    let (b, tb) = optimize(&start, &basis, &c).unwrap();
    assert_eq!(a, b);
    assert_eq!(ta, tb);
    let lines = ta.to_json_lines().unwrap();
    let parsed: Vec<serde_json::Value> = lines.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(parsed.len(), ta.steps.len() + 1);
    assert!(parsed.last().unwrap().get("termination").is_some());
}
