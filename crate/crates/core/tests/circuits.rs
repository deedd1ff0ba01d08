use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;
use robcirc::circuits::{restrict_circuits, symmetry::classify_by_entry_pattern, Strategy as Route};
use robcirc::design::corpus::corpus;
use robcirc::io::{parse_vectors_4ti2, write_matrix_4ti2, parse_matrix_4ti2};
use robcirc::linalg::rank;
use robcirc::{
    build_full_factorial, circuits_of_model, compute_circuits, model_matrix, Coding, EnumerationOptions,
    FactorSpec, Fraction, IntMatrix, ModelSpec,
};

fn opts(strategy: Route) -> EnumerationOptions {
    EnumerationOptions {
        strategy,
        ..Default::default()
    }
}

// Minimal dependent column sets, straight from the definition.
fn brute_supports(a: &IntMatrix) -> BTreeSet<Vec<usize>> {
    let r = rank(a);
    let mut out = BTreeSet::new();
    for size in 1..=(r + 1).min(a.cols()) {
        for s in (0..a.cols()).combinations(size) {
            if rank(&a.select_columns(&s)) != size - 1 {
                continue;
            }
            let minimal = (0..size).all(|drop| {
                let t: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &c)| c).collect();
                rank(&a.select_columns(&t)) == size - 1
            });
            if minimal {
                out.insert(s);
            }
        }
    }
    out
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=3, 3usize..=7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-2i64..=2, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
            IntMatrix::from_rows(&rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn both_routes_match_brute_force(a in small_matrix()) {
        let expected = brute_supports(&a);
        for s in [Route::Primal, Route::Dual] {
            let b = compute_circuits(&a, None, &opts(s)).unwrap();
            let got: BTreeSet<Vec<usize>> = b.circuits().iter().map(|c| c.support().to_vec()).collect();
            prop_assert_eq!(&got, &expected);
            for c in b.circuits() {
                let v = c.vector();
                prop_assert!(v.is_primitive() && v.is_canonical_sign());
                prop_assert!(a.mul_vec(&v.0).unwrap().iter().all(|x| *x == 0.into()));
            }
        }
    }

    #[test]
    fn restriction_equals_recomputation(seed in any::<u64>(), n in 6usize..=12) {
        let c = corpus("2pow4_main").unwrap();
        let mm = c.model_matrix().unwrap();
        let full = circuits_of_model(&mm, None, &Default::default()).unwrap();
        let frac = robcirc::sim::seeded_fraction(16, n, seed).unwrap();
        let restricted = restrict_circuits(&full, &frac).unwrap();
        let direct = circuits_of_model(&robcirc::submatrix(&mm, &frac).unwrap(), None, &Default::default()).unwrap();
        let sub_cols = mm.transpose().select_columns(frac.rows());
        let direct_vectors: Vec<_> = direct.circuits().iter().map(|c| c.vector()).collect();
        prop_assert!(restricted.diff(&direct_vectors).unwrap().is_equal());
        prop_assert_eq!(restricted.len(), brute_supports(&sub_cols).len());
    }
}

#[test]
fn two_by_two_main_effects_has_one_circuit() {
    let cs = build_full_factorial(&FactorSpec::new(vec![2, 2]).unwrap()).unwrap();
    let spec = ModelSpec::main_effects(cs.factors(), Coding::Indicator01);
    let b = circuits_of_model(&model_matrix(&cs, &spec).unwrap(), None, &Default::default()).unwrap();
    assert_eq!(b.summary_line(), "count=1 by_support=4:1");
}

#[test]
fn golden_counts_for_small_corpora() {
    for (name, line) in [
        ("2pow4_main", "count=1348 by_support=4:100,5:160,6:1088"),
        ("2pow4_2way", "count=140 by_support=8:20,10:40,12:80"),
        ("2x3x4_2way", "count=42 by_support=8:18,12:24"),
        ("2x3x4_main_bc", "count=66 by_support=4:66"),
    ] {
        let b = circuits_of_model(&corpus(name).unwrap().model_matrix().unwrap(), None, &Default::default()).unwrap();
        assert_eq!(b.summary_line(), line, "{name}");
    }
}

#[test]
fn entry_pattern_classes() {
    let b = circuits_of_model(&corpus("2pow4_2way").unwrap().model_matrix().unwrap(), None, &Default::default())
        .unwrap();
    assert_eq!(classify_by_entry_pattern(&b).len(), 3);
}

#[test]
fn coding_does_not_change_circuits() {
    let cs = build_full_factorial(&FactorSpec::new(vec![2, 2, 2, 2]).unwrap()).unwrap();
    let spec = |coding| ModelSpec::hierarchical(cs.factors(), coding, 2);
    let a = circuits_of_model(&model_matrix(&cs, &spec(Coding::Indicator01)).unwrap(), None, &Default::default())
        .unwrap();
    let b = circuits_of_model(&model_matrix(&cs, &spec(Coding::PlusMinusOne)).unwrap(), None, &Default::default())
        .unwrap();
    let bv: Vec<_> = b.circuits().iter().map(|c| c.vector()).collect();
    assert!(a.diff(&bv).unwrap().is_equal());
}

#[test]
fn bounded_basis_is_a_prefix_of_the_full_one() {
    let mm = corpus("2pow4_main").unwrap().model_matrix().unwrap();
    let full = circuits_of_model(&mm, None, &Default::default()).unwrap();
    let bounded = circuits_of_model(&mm, Some(5), &Default::default()).unwrap();
    assert!(!bounded.is_exhaustive());
    assert_eq!(bounded.len(), 260);
    let small: Vec<_> = full.circuits().iter().filter(|c| c.support_size() <= 5).map(|c| c.vector()).collect();
    assert!(bounded.diff(&small).unwrap().is_equal());
}

#[test]
fn files_round_trip() {
    let mm = corpus("2x3x4_main").unwrap().model_matrix().unwrap();
    let a = mm.transpose();
    let dir = tempfile::tempdir().unwrap();
    let mat = dir.path().join("a.mat");
    std::fs::write(&mat, write_matrix_4ti2(&a)).unwrap();
    let back = parse_matrix_4ti2(&std::fs::read_to_string(&mat).unwrap()).unwrap();
    assert_eq!(back, a);

    let b = compute_circuits(&back, None, &Default::default()).unwrap();
    let cir = dir.path().join("a.cir");
    std::fs::write(&cir, b.to_4ti2()).unwrap();
    let (len, vectors) = parse_vectors_4ti2(&std::fs::read_to_string(&cir).unwrap()).unwrap();
    assert_eq!(len, 24);
    assert!(b.diff(&vectors).unwrap().is_equal());

    let meta = serde_json::to_string(&b.metadata()).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&meta).unwrap();
    assert_eq!(parsed["fingerprint"], b.fingerprint());
}

#[test]
fn replicated_rows_are_refused() {
    let mm = corpus("2pow4_main").unwrap().model_matrix().unwrap();
    let frac = Fraction::new(16, vec![0, 0, 1, 2, 3, 4]).unwrap();
    let sub = robcirc::submatrix(&mm, &frac).unwrap();
    assert!(circuits_of_model(&sub, None, &Default::default()).is_err());
}
