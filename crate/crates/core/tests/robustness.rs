use num_rational::BigRational;
use proptest::prelude::*;
use robcirc::design::corpus::corpus;
use robcirc::linalg::cauchy_binet_verify;
use robcirc::robustness::{
    d_efficiency, fully_robust_supports, is_estimable, robustness, robustness_with, tu_equivalence_check, Method,
};
use robcirc::sim::seeded_fraction;
use robcirc::{
    build_full_factorial, circuits_of_model, model_matrix, submatrix, Coding, Error, FactorSpec, Fraction,
    IntMatrix, ModelSpec,
};

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rank_and_circuit_methods_agree(seed in any::<u64>(), pick in 0usize..3, extra in 0usize..6) {
        let name = ["2pow4_main", "2x3x4_main_bc", "bibd_4x6_main"][pick];
        let mm = corpus(name).unwrap().model_matrix().unwrap();
        let basis = circuits_of_model(&mm, None, &Default::default()).unwrap();
        let n = (mm.p() + extra).min(mm.n());
        let frac = seeded_fraction(mm.n(), n, seed).unwrap();
        let x = submatrix(&mm, &frac).unwrap();
        let by_rank = robustness_with(&x, Method::RankEnumeration, None, u128::MAX).unwrap();
        let by_circuits = robustness_with(&x, Method::CircuitCheck, Some(&basis), u128::MAX).unwrap();
        prop_assert_eq!(&by_rank.robustness, &by_circuits.robustness);
        prop_assert_eq!(by_rank.saturated_count > 0, is_estimable(&frac, &basis).unwrap());
    }

    #[test]
    fn robustness_ignores_the_coding(seed in any::<u64>(), n in 11usize..=16) {
        let cs = build_full_factorial(&FactorSpec::new(vec![2, 2, 2, 2]).unwrap()).unwrap();
        let frac = seeded_fraction(16, n, seed).unwrap();
        let r = |coding| {
            let mm = model_matrix(&cs, &ModelSpec::hierarchical(cs.factors(), coding, 2)).unwrap();
            robustness(&submatrix(&mm, &frac).unwrap(), None).unwrap().robustness
        };
        prop_assert_eq!(r(Coding::Indicator01), r(Coding::PlusMinusOne));
    }

    #[test]
    fn cauchy_binet_holds(entries in proptest::collection::vec(prop_oneof![Just(-1i64), Just(1i64)], 24)) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let (lhs, rhs) = cauchy_binet_verify(&IntMatrix::from_rows(&rows)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn block_design_best_removal() {
    let mm = corpus("bibd_4x6_main").unwrap().model_matrix().unwrap();
    let keep: Vec<usize> = (0..12).filter(|r| *r != 0 && *r != 8).collect();
    let x = submatrix(&mm, &Fraction::new(12, keep).unwrap()).unwrap();
    let r = robustness(&x, None).unwrap();
    assert_eq!(r.robustness, ratio(4, 5));
    assert!(r.summary_line().starts_with("r=4/5 (0.8000)"));
    assert!(tu_equivalence_check(&x).unwrap().holds());
}

#[test]
fn block_design_is_not_fully_robust() {
    let mm = corpus("bibd_4x6_main").unwrap().model_matrix().unwrap();
    let r = robustness(&mm, None).unwrap();
    assert!(r.robustness < ratio(1, 1));
    assert!(r.robustness > ratio(0, 1));
}

#[test]
fn fully_robust_supports_have_robustness_one() {
    let mm = corpus("oa18_main").unwrap().model_matrix().unwrap();
    let basis = circuits_of_model(&mm, None, &Default::default()).unwrap();
    let supports = fully_robust_supports(&basis).unwrap();
    assert!(!supports.is_empty());
    for frac in supports.iter().take(40) {
        assert_eq!(frac.len(), mm.p() + 1);
        let r = robustness(&submatrix(&mm, frac).unwrap(), Some(&basis)).unwrap();
        assert_eq!(r.robustness, ratio(1, 1));
    }
}

#[test]
fn orthogonal_two_level_design_is_fully_efficient() {
    let cs = build_full_factorial(&FactorSpec::new(vec![2, 2, 2]).unwrap()).unwrap();
    let mm = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::PlusMinusOne)).unwrap();
    let d = d_efficiency(&mm).unwrap();
    assert_eq!(d.det_xtx, 4096.into());
    assert!((d.d_efficiency - 100.0).abs() < 1e-9);
}

#[test]
fn rank_enumeration_respects_the_budget() {
    let mm = corpus("2pow5_main").unwrap().model_matrix().unwrap();
    match robustness_with(&mm, Method::RankEnumeration, None, 1000) {
        Err(Error::Capacity { needed, budget, .. }) => {
            assert_eq!(budget, 1000);
            assert_eq!(needed, robcirc::robustness::binomial(32, 6));
        }
        other => panic!("expected a capacity error, got {other:?}"),
    }
}
