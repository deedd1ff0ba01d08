//! Robustness, D-efficiency, saturation and estimability.
//!
//! The robustness of an n-run fraction is the share of its p-run
//! sub-fractions whose model matrix is nonsingular. p-subsets are drawn
//! from runs, so two copies of a replicated point never sit together in a
//! saturated subset.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bitset::PointSet;
use crate::circuits::CircuitBasis;
use crate::design::{Fraction, ModelMatrix};
use crate::error::{Error, Result};
use crate::linalg::echelon::{count_independent_exact, fast_kernel};
use crate::linalg::{self, IntMatrix};

/// Default cap on C(n, p) for rank enumeration.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

/// Environment variable overriding enumeration budgets.
pub const BUDGET_ENV: &str = "ROBUST_BUDGET";

/// The budget from `ROBUST_BUDGET`, or `default`.
pub fn budget_from_env(default: u128) -> u128 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    RankEnumeration,
    CircuitCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub n: usize,
    pub p: usize,
    pub saturated_count: u128,
    pub total_count: u128,
    pub robustness: BigRational,
    pub method: Method,
}

impl RobustnessReport {
    fn new(n: usize, p: usize, saturated_count: u128, method: Method) -> Self {
        let total_count = binomial(n, p);
        RobustnessReport {
            n,
            p,
            saturated_count,
            total_count,
            robustness: BigRational::new(saturated_count.into(), total_count.max(1).into()),
            method,
        }
    }

    pub fn value(&self) -> f64 {
        self.robustness.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering rounded half-up to `places` digits.
    pub fn decimal(&self, places: u32) -> String {
        format_decimal(&self.robustness, places)
    }

    /// `r=<num>/<den> (<decimal>) saturated=<s> total=<t> method=<m>`
    pub fn summary_line(&self) -> String {
        format!(
            "r={} ({}) saturated={} total={} method={}",
            self.robustness,
            self.decimal(4),
            self.saturated_count,
            self.total_count,
            match self.method {
                Method::RankEnumeration => "rank_enumeration",
                Method::CircuitCheck => "circuit_check",
            }
        )
    }
}

impl fmt::Display for RobustnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary_line())
    }
}

/// Rounds a nonnegative rational to `places` decimals.
pub fn format_decimal(x: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let num = x.numer() * &scale * 2 + x.denom();
    let scaled: BigInt = num / (x.denom() * 2);
    let digits = scaled.abs().to_string();
    let places = places as usize;
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    let sign = if scaled.is_negative() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// True iff the square matrix is nonsingular.
pub fn is_saturated(x: &ModelMatrix) -> Result<bool> {
    let m = x.matrix();
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(!linalg::det(m)?.is_zero())
}

fn require_exhaustive(basis: &CircuitBasis) -> Result<()> {
    if basis.is_exhaustive() {
        Ok(())
    } else {
        Err(Error::NotExhaustive(basis.support_bound().unwrap_or(0)))
    }
}

/// Index of the first basis circuit whose support lies in `frac`.
pub fn contained_circuit(frac: &Fraction, basis: &CircuitBasis) -> Result<Option<usize>> {
    if frac.parent_size() != basis.num_points() {
        return Err(Error::Dimension(format!(
            "fraction over {} points, basis over {}",
            frac.parent_size(),
            basis.num_points()
        )));
    }
    let set = frac.to_point_set();
    Ok(basis
        .circuits()
        .iter()
        .position(|c| c.support().iter().all(|&i| set.contains(i))))
}

/// Saturation of a p-point fraction decided by circuit containment.
pub fn is_saturated_via_circuits(frac: &Fraction, basis: &CircuitBasis) -> Result<bool> {
    require_exhaustive(basis)?;
    if frac.len() != basis.rank() {
        return Err(Error::InvalidInput(format!(
            "fraction has {} points, the model has {} parameters",
            frac.len(),
            basis.rank()
        )));
    }
    if frac.has_replicates() {
        return Ok(false);
    }
    Ok(contained_circuit(frac, basis)?.is_none())
}

/// Number of nonsingular p x p row subsets of `x_f`, counted as bases of
/// the column matroid of `x_f^t` or, when cheaper, of its dual.
pub fn count_saturated(x_f: &ModelMatrix) -> Result<u128> {
    let n = x_f.n();
    let p = x_f.p();
    if n < p || x_f.rank() < p {
        return Ok(0);
    }
    let a = x_f.transpose();
    if p <= n - p {
        return count_independent_exact(&a, p);
    }
    let d = n - p;
    if d == 0 {
        return Ok(1);
    }
    let kernel = fast_kernel(&a)?;
    let bt = IntMatrix::from_vec(d, n, kernel.into_iter().flat_map(|v| v.0).collect())?;
    count_independent_exact(&bt, d)
}

/// Local supports of basis circuits inside the fraction's runs, with at
/// most `p` points. Fails on replicated runs.
fn local_supports(x_f: &ModelMatrix, basis: &CircuitBasis, p: usize) -> Result<Vec<Vec<usize>>> {
    let mut pos = HashMap::new();
    for (i, &label) in x_f.row_labels().iter().enumerate() {
        if label >= basis.num_points() {
            return Err(Error::IndexOutOfRange {
                index: label,
                size: basis.num_points(),
            });
        }
        if pos.insert(label, i).is_some() {
            return Err(Error::InvalidInput(
                "circuit check needs distinct runs; use rank enumeration for replicates".into(),
            ));
        }
    }
    Ok(basis
        .circuits()
        .iter()
        .filter(|c| c.support_size() <= p)
        .filter_map(|c| c.support().iter().map(|i| pos.get(i).copied()).collect::<Option<Vec<_>>>())
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .collect())
}

struct SupportFree {
    n: usize,
    p: usize,
    by_max: Vec<Vec<PointSet>>,
}

impl SupportFree {
    fn new(n: usize, p: usize, supports: &[Vec<usize>]) -> Self {
        let mut by_max = vec![Vec::new(); n];
        for s in supports {
            by_max[*s.last().unwrap()].push(PointSet::from_indices(n, s.iter().copied()));
        }
        SupportFree { n, p, by_max }
    }

    /// Counts support-free p-subsets; stops after `stop_at` hits.
    fn count(&self, stop_at: u128) -> u128 {
        if self.p == 0 {
            return 1;
        }
        let mut chosen = PointSet::new(self.n);
        let mut total = 0;
        self.rec(&mut chosen, 0, 0, stop_at, &mut total);
        total
    }

    fn rec(&self, chosen: &mut PointSet, size: usize, start: usize, stop_at: u128, total: &mut u128) {
        let need = self.p - size;
        if self.n < need {
            return;
        }
        for j in start..=self.n - need {
            if *total >= stop_at {
                return;
            }
            chosen.insert(j);
            if !self.by_max[j].iter().any(|s| s.is_subset(chosen)) {
                if need == 1 {
                    *total += 1;
                } else {
                    self.rec(chosen, size + 1, j + 1, stop_at, total);
                }
            }
            chosen.remove(j);
        }
    }
}

/// Robustness by the chosen method. `basis` must be exhaustive over the
/// candidate set the rows of `x_f` are labelled against when the method is
/// `CircuitCheck`; `budget` caps C(n, p) for rank enumeration.
pub fn robustness_with(
    x_f: &ModelMatrix,
    method: Method,
    basis: Option<&CircuitBasis>,
    budget: u128,
) -> Result<RobustnessReport> {
    let n = x_f.n();
    let p = x_f.p();
    if n < p {
        return Err(Error::InvalidInput(format!("fraction has {n} runs, fewer than p = {p}")));
    }
    match method {
        Method::RankEnumeration => {
            let total = binomial(n, p);
            if total > budget {
                return Err(Error::Capacity {
                    what: format!("rank enumeration over C({n},{p}) subsets"),
                    needed: total,
                    budget,
                });
            }
            Ok(RobustnessReport::new(n, p, count_saturated(x_f)?, method))
        }
        Method::CircuitCheck => {
            let basis = basis.ok_or_else(|| Error::InvalidInput("circuit check needs a circuit basis".into()))?;
            require_exhaustive(basis)?;
            if basis.rank() != p {
                return Err(Error::Dimension(format!(
                    "basis rank {} differs from p = {p}",
                    basis.rank()
                )));
            }
            let supports = local_supports(x_f, basis, p)?;
            let count = SupportFree::new(n, p, &supports).count(u128::MAX);
            Ok(RobustnessReport::new(n, p, count, method))
        }
    }
}

/// Robustness with the circuit check when a basis is given, rank
/// enumeration otherwise. The budget comes from `ROBUST_BUDGET`.
pub fn robustness(x_f: &ModelMatrix, basis: Option<&CircuitBasis>) -> Result<RobustnessReport> {
    let method = if basis.is_some() {
        Method::CircuitCheck
    } else {
        Method::RankEnumeration
    };
    robustness_with(x_f, method, basis, budget_from_env(DEFAULT_ENUMERATION_BUDGET))
}

/// True iff some p-subset of the fraction avoids every circuit support.
pub fn is_estimable(frac: &Fraction, basis: &CircuitBasis) -> Result<bool> {
    require_exhaustive(basis)?;
    if frac.parent_size() != basis.num_points() {
        return Err(Error::Dimension("fraction and basis disagree on the point count".into()));
    }
    let p = basis.rank();
    let mut rows = frac.rows().to_vec();
    rows.dedup();
    if rows.len() < p {
        return Ok(false);
    }
    let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let supports: Vec<Vec<usize>> = basis
        .circuits()
        .iter()
        .filter(|c| c.support_size() <= p)
        .filter_map(|c| c.support().iter().map(|i| pos.get(i).copied()).collect())
        .collect();
    Ok(SupportFree::new(rows.len(), p, &supports).count(1) > 0)
}

/// Supports of size p+1, each a fully robust fraction.
pub fn fully_robust_supports(basis: &CircuitBasis) -> Result<Vec<Fraction>> {
    require_exhaustive(basis)?;
    basis
        .circuits()
        .iter()
        .filter(|c| c.support_size() == basis.rank() + 1)
        .map(|c| Fraction::new(basis.num_points(), c.support().to_vec()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyReport {
    pub n: usize,
    pub p: usize,
    pub det_xtx: BigInt,
    pub d_efficiency: f64,
}

/// Natural log of a positive integer, good to f64 precision.
pub fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `100 det(X^t X)^(1/p) / n`, with the determinant exact.
pub fn d_efficiency(x_f: &ModelMatrix) -> Result<EfficiencyReport> {
    let n = x_f.n();
    let p = x_f.p();
    if n < p {
        return Err(Error::InvalidInput(format!("fraction has {n} runs, fewer than p = {p}")));
    }
    let x = x_f.matrix();
    let det_xtx = linalg::det(&x.transpose().mul(x)?)?;
    let d_efficiency = if det_xtx.is_positive() {
        100.0 * (ln_big(&det_xtx) / p as f64).exp() / n as f64
    } else {
        0.0
    };
    Ok(EfficiencyReport {
        n,
        p,
        det_xtx,
        d_efficiency,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TuReport {
    pub n: usize,
    pub p: usize,
    pub det_xtx: BigInt,
    pub saturated_count: u128,
    pub robustness: BigRational,
    pub d_efficiency: f64,
    /// `det(X^t X)` equals the saturated count.
    pub det_matches_count: bool,
    /// `(n D / 100)^p / C(n, p)` reproduces the robustness to 1e-9 relative.
    pub formula_matches: bool,
}

impl TuReport {
    pub fn holds(&self) -> bool {
        self.det_matches_count && self.formula_matches
    }
}

/// Checks, for a totally unimodular model matrix, that robustness and
/// D-efficiency determine each other.
pub fn tu_equivalence_check(x_f: &ModelMatrix) -> Result<TuReport> {
    let x = x_f.matrix();
    if !linalg::is_totally_unimodular(x, x.rows().min(x.cols())) {
        return Err(Error::InvalidInput("model matrix is not totally unimodular".into()));
    }
    let eff = d_efficiency(x_f)?;
    let rob = robustness_with(x_f, Method::RankEnumeration, None, u128::MAX)?;
    let det_matches_count = eff.det_xtx == BigInt::from(rob.saturated_count);
    let (n, p) = (x_f.n(), x_f.p());
    let predicted = (n as f64 * eff.d_efficiency / 100.0).powi(p as i32) / binomial(n, p) as f64;
    let actual = rob.value();
    let formula_matches = if actual == 0.0 {
        predicted == 0.0
    } else {
        ((predicted - actual) / actual).abs() < 1e-9
    };
    Ok(TuReport {
        n,
        p,
        det_xtx: eff.det_xtx,
        saturated_count: rob.saturated_count,
        robustness: rob.robustness,
        d_efficiency: eff.d_efficiency,
        det_matches_count,
        formula_matches,
    })
}

/// `r = 1` exactly.
pub fn is_fully_robust(report: &RobustnessReport) -> bool {
    report.robustness.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::circuits_of_model;
    use crate::design::{build_full_factorial, catalog::catalog, model_matrix, submatrix, Coding, FactorSpec, ModelSpec};
    use itertools::Itertools;
    use proptest::prelude::*;

    fn brute_count(x: &ModelMatrix) -> u128 {
        (0..x.n())
            .combinations(x.p())
            .filter(|rows| !linalg::det(&x.matrix().select_rows(rows)).unwrap().is_zero())
            .count() as u128
    }

    #[test]
    fn decimal_rendering() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(format_decimal(&r(4, 22), 4), "0.1818");
        assert_eq!(format_decimal(&r(12, 253), 4), "0.0474");
        assert_eq!(format_decimal(&r(1, 1), 4), "1.0000");
        assert_eq!(format_decimal(&r(0, 1), 4), "0.0000");
        assert_eq!(format_decimal(&r(1, 8), 2), "0.13");
    }

    #[test]
    fn saturated_checks() {
        let id = ModelMatrix::from_matrix(IntMatrix::identity(3), vec![0, 1, 2], vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert!(is_saturated(&id).unwrap());
        let rep = ModelMatrix::from_matrix(
            IntMatrix::from_rows(&[[1, 0], [1, 0]]),
            vec![0, 0],
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        assert!(!is_saturated(&rep).unwrap());
        let r = robustness(&id, None).unwrap();
        assert!(is_fully_robust(&r));
    }

    #[test]
    fn orthogonal_design_efficiency_is_100() {
        let cs = build_full_factorial(&FactorSpec::new(vec![2, 2, 2]).unwrap()).unwrap();
        let mm = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::PlusMinusOne)).unwrap();
        let e = d_efficiency(&mm).unwrap();
        assert_eq!(e.det_xtx, BigInt::from(8i64.pow(4)));
        assert!((e.d_efficiency - 100.0).abs() < 1e-12);
        let rank_def = submatrix(&mm, &Fraction::new(8, vec![0, 1, 2, 3]).unwrap()).unwrap();
        let e = d_efficiency(&rank_def).unwrap();
        assert!(e.det_xtx.is_zero());
        assert_eq!(e.d_efficiency, 0.0);
    }

    #[test]
    fn ln_big_matches_float() {
        let x = BigInt::from(3u32).pow(900);
        assert!((ln_big(&x) - 900.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn replicated_runs_follow_instance_convention() {
        let cs = build_full_factorial(&FactorSpec::new(vec![2, 2]).unwrap()).unwrap();
        let mm = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::Indicator01)).unwrap();
        let f = Fraction::new(4, vec![0, 0, 1, 2]).unwrap();
        let x = submatrix(&mm, &f).unwrap();
        let r = robustness(&x, None).unwrap();
        // {0,1,2} twice (either copy of 0), {0,0,*} never.
        assert_eq!(r.saturated_count, 2);
        assert_eq!(r.total_count, 4);
        assert_eq!(r.saturated_count, brute_count(&x));
    }

    #[test]
    fn budget_is_enforced() {
        let cs = build_full_factorial(&FactorSpec::new(vec![2, 2, 2, 2]).unwrap()).unwrap();
        let mm = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::Indicator01)).unwrap();
        let err = robustness_with(&mm, Method::RankEnumeration, None, 100).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }

    #[test]
    fn bibd_fraction_removing_first_and_ninth() {
        let cs = catalog("bibd_4x6").unwrap();
        let mm = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::Indicator01)).unwrap();
        let f = Fraction::new(12, (0..12).filter(|&i| i != 0 && i != 8).collect()).unwrap();
        let x = submatrix(&mm, &f).unwrap();
        let r = robustness(&x, None).unwrap();
        assert_eq!(r.decimal(4), "0.8000");
        assert!(r.summary_line().starts_with("r=4/5 (0.8000)"));
        let tu = tu_equivalence_check(&x).unwrap();
        assert!(tu.holds());
    }

    #[test]
    fn circuit_queries_on_the_two_by_two() {
        let cs = build_full_factorial(&FactorSpec::new(vec![2, 2]).unwrap()).unwrap();
        let mm = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::Indicator01)).unwrap();
        let b = circuits_of_model(&mm, None, &Default::default()).unwrap();
        let f = Fraction::new(4, vec![0, 1, 3]).unwrap();
        assert!(is_saturated_via_circuits(&f, &b).unwrap());
        assert!(is_estimable(&cs.full_fraction(), &b).unwrap());
        assert_eq!(fully_robust_supports(&b).unwrap().len(), 1);
        let all = robustness(&mm, Some(&b)).unwrap();
        assert_eq!(all.saturated_count, 4);
        assert_eq!(all.method, Method::CircuitCheck);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn counting_matches_brute_force(rows in proptest::collection::btree_set(0usize..16, 5..11)) {
            let cs = build_full_factorial(&FactorSpec::new(vec![2, 2, 2, 2]).unwrap()).unwrap();
            let mm = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::Indicator01)).unwrap();
            let b = circuits_of_model(&mm, None, &Default::default()).unwrap();
            let f = Fraction::new(16, rows.into_iter().collect()).unwrap();
            let x = submatrix(&mm, &f).unwrap();
            let by_rank = robustness_with(&x, Method::RankEnumeration, None, u128::MAX).unwrap();
            let by_circuits = robustness_with(&x, Method::CircuitCheck, Some(&b), u128::MAX).unwrap();
            prop_assert_eq!(by_rank.saturated_count, brute_count(&x));
            prop_assert_eq!(by_rank.saturated_count, by_circuits.saturated_count);
            prop_assert_eq!(is_estimable(&f, &b).unwrap(), x.rank() == 5);
        }
    }
}
