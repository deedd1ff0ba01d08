//! Candidate sets, fractions, model specifications and model matrices.

pub mod catalog;
pub mod corpus;

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bitset::PointSet;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};

/// Default cap on the number of points of a full factorial.
pub const DEFAULT_FACTORIAL_CAP: usize = 1_000_000;

/// Number of levels of each factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorSpec {
    levels: Vec<usize>,
}

impl FactorSpec {
    pub fn new(levels: Vec<usize>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidInput("no factors".into()));
        }
        if let Some(&s) = levels.iter().find(|&&s| s < 2) {
            return Err(Error::InvalidInput(format!(
                "every factor needs at least 2 levels, got {s}"
            )));
        }
        Ok(FactorSpec { levels })
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn num_factors(&self) -> usize {
        self.levels.len()
    }
}

/// An ordered list of distinct design points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSet {
    factors: FactorSpec,
    points: Vec<Vec<usize>>,
    name: Option<String>,
}

impl CandidateSet {
    pub fn new(factors: FactorSpec, points: Vec<Vec<usize>>, name: Option<String>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for (i, pt) in points.iter().enumerate() {
            if pt.len() != factors.num_factors() {
                return Err(Error::InvalidInput(format!(
                    "point {i} has {} coordinates, expected {}",
                    pt.len(),
                    factors.num_factors()
                )));
            }
            for (f, (&l, &s)) in pt.iter().zip(factors.levels()).enumerate() {
                if l >= s {
                    return Err(Error::InvalidInput(format!(
                        "point {i}: level {l} of factor {} is outside 0..{s}",
                        f + 1
                    )));
                }
            }
            if !seen.insert(pt.clone()) {
                return Err(Error::InvalidInput(format!("point {i} {pt:?} is repeated")));
            }
        }
        Ok(CandidateSet {
            factors,
            points,
            name,
        })
    }

    pub fn factors(&self) -> &FactorSpec {
        &self.factors
    }

    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, point: &[usize]) -> Option<usize> {
        self.points.iter().position(|p| p == point)
    }

    /// The fraction holding every point once.
    pub fn full_fraction(&self) -> Fraction {
        Fraction {
            parent_size: self.len(),
            rows: (0..self.len()).collect(),
        }
    }
}

/// All level combinations in lexicographic order (last factor fastest).
pub fn build_full_factorial(factors: &FactorSpec) -> Result<CandidateSet> {
    build_full_factorial_capped(factors, DEFAULT_FACTORIAL_CAP)
}

pub fn build_full_factorial_capped(factors: &FactorSpec, cap: usize) -> Result<CandidateSet> {
    let total = factors
        .levels()
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::Capacity {
            what: "full factorial".into(),
            needed: factors.levels().iter().map(|&s| s as u128).product(),
            budget: cap as u128,
        })?;
    let m = factors.num_factors();
    let mut points = Vec::with_capacity(total);
    let mut cur = vec![0usize; m];
    for _ in 0..total {
        points.push(cur.clone());
        for f in (0..m).rev() {
            cur[f] += 1;
            if cur[f] < factors.levels()[f] {
                break;
            }
            cur[f] = 0;
        }
    }
    let name = factors
        .levels()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join("x");
    CandidateSet::new(factors.clone(), points, Some(format!("full_{name}")))
}

/// A multiset of row indices into a candidate set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fraction {
    parent_size: usize,
    rows: Vec<usize>,
}

impl Fraction {
    /// Rows are stored sorted; replicates are kept.
    pub fn new(parent_size: usize, mut rows: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = rows.iter().find(|&&r| r >= parent_size) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: parent_size,
            });
        }
        rows.sort_unstable();
        Ok(Fraction { parent_size, rows })
    }

    pub fn parent_size(&self) -> usize {
        self.parent_size
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn has_replicates(&self) -> bool {
        self.rows.windows(2).any(|w| w[0] == w[1])
    }

    pub fn contains(&self, row: usize) -> bool {
        self.rows.binary_search(&row).is_ok()
    }

    pub fn to_point_set(&self) -> PointSet {
        PointSet::from_indices(self.parent_size, self.rows.iter().copied())
    }

    /// Candidate points not in the fraction.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.parent_size).filter(|r| !self.contains(*r)).collect()
    }

    /// Replaces one occurrence of `out` by `inn`.
    pub fn exchange(&self, out: usize, inn: usize) -> Result<Fraction> {
        let pos = self
            .rows
            .iter()
            .position(|&r| r == out)
            .ok_or_else(|| Error::InvalidInput(format!("row {out} is not in the fraction")))?;
        let mut rows = self.rows.clone();
        rows[pos] = inn;
        Fraction::new(self.parent_size, rows)
    }
}

/// Level coding used when evaluating model terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coding {
    /// Indicator columns of the retained levels.
    Indicator01,
    /// Two-level factors coded -1 (level 0) and +1 (level 1).
    PlusMinusOne,
    /// Monomials in user-supplied numeric levels.
    Monomial,
}

/// One column of the model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelTerm {
    Intercept,
    /// Under `indicator01`, 1 iff the factor sits at `level`. Under
    /// `plus_minus_one`, the +-1 code of the factor (only level 0 is valid).
    Indicator { factor: usize, level: usize },
    /// Numeric level of the factor raised to `exponent` (monomial coding).
    Power { factor: usize, exponent: u32 },
    /// Entrywise product of indicator/power primitives.
    Product { factors: Vec<ModelTerm> },
}

impl ModelTerm {
    pub fn label(&self) -> String {
        match self {
            ModelTerm::Intercept => "1".into(),
            ModelTerm::Indicator { factor, level } => format!("f{}[{}]", factor + 1, level),
            ModelTerm::Power { factor, exponent } => format!("x{}^{}", factor + 1, exponent),
            ModelTerm::Product { factors } => factors
                .iter()
                .map(ModelTerm::label)
                .collect::<Vec<_>>()
                .join("*"),
        }
    }

    fn factors_used(&self, out: &mut Vec<usize>) {
        match self {
            ModelTerm::Intercept => {}
            ModelTerm::Indicator { factor, .. } | ModelTerm::Power { factor, .. } => {
                out.push(*factor)
            }
            ModelTerm::Product { factors } => factors.iter().for_each(|t| t.factors_used(out)),
        }
    }
}

/// An ordered list of model terms with a coding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub coding: Coding,
    pub terms: Vec<ModelTerm>,
    /// Numeric value of each level, per factor. Required for monomial coding.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric_levels: Option<Vec<Vec<i64>>>,
}

impl ModelSpec {
    /// Intercept plus main effects.
    pub fn main_effects(factors: &FactorSpec, coding: Coding) -> Self {
        Self::hierarchical(factors, coding, 1)
    }

    /// Intercept plus all interactions up to `order` factors (1 = main
    /// effects). Interaction columns are products of the retained indicator
    /// columns of the participating factors.
    pub fn hierarchical(factors: &FactorSpec, coding: Coding, order: usize) -> Self {
        let m = factors.num_factors();
        let mut terms = vec![ModelTerm::Intercept];
        for k in 1..=order.min(m) {
            for set in combinations(m, k) {
                terms.extend(Self::interaction_terms(factors, coding, &set));
            }
        }
        ModelSpec {
            coding,
            terms,
            numeric_levels: None,
        }
    }

    /// Adds the interaction columns among the given factors.
    pub fn with_interaction(mut self, factors: &FactorSpec, among: &[usize]) -> Self {
        let t = Self::interaction_terms(factors, self.coding, among);
        self.terms.extend(t);
        self
    }

    fn interaction_terms(factors: &FactorSpec, coding: Coding, among: &[usize]) -> Vec<ModelTerm> {
        let mut acc: Vec<Vec<ModelTerm>> = vec![vec![]];
        for &f in among {
            let retained = match coding {
                Coding::PlusMinusOne => 1,
                _ => factors.levels()[f] - 1,
            };
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    (0..retained).map(move |l| {
                        let mut p = prefix.clone();
                        p.push(ModelTerm::Indicator {
                            factor: f,
                            level: l,
                        });
                        p
                    })
                })
                .collect();
        }
        acc.into_iter()
            .map(|mut prims| {
                if prims.len() == 1 {
                    prims.pop().unwrap()
                } else {
                    ModelTerm::Product { factors: prims }
                }
            })
            .collect()
    }

    /// Univariate-style polynomial model: one term per exponent vector.
    pub fn polynomial(exponents: &[Vec<u32>], numeric_levels: Vec<Vec<i64>>) -> Self {
        let terms = exponents
            .iter()
            .map(|alpha| {
                let prims: Vec<ModelTerm> = alpha
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(f, &a)| ModelTerm::Power {
                        factor: f,
                        exponent: a,
                    })
                    .collect();
                match prims.len() {
                    0 => ModelTerm::Intercept,
                    1 => prims.into_iter().next().unwrap(),
                    _ => ModelTerm::Product { factors: prims },
                }
            })
            .collect();
        ModelSpec {
            coding: Coding::Monomial,
            terms,
            numeric_levels: Some(numeric_levels),
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Checks the spec against a factor layout.
    pub fn validate(&self, factors: &FactorSpec) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::InvalidInput("model has no terms".into()));
        }
        let intercepts = self
            .terms
            .iter()
            .filter(|t| matches!(t, ModelTerm::Intercept))
            .count();
        if intercepts > 1 {
            return Err(Error::InvalidInput("intercept appears more than once".into()));
        }
        if self.coding == Coding::PlusMinusOne && factors.levels().iter().any(|&s| s != 2) {
            return Err(Error::InvalidInput(
                "plus_minus_one coding needs every factor to be 2-level".into(),
            ));
        }
        if self.coding == Coding::Monomial {
            let nl = self.numeric_levels.as_ref().ok_or_else(|| {
                Error::InvalidInput("monomial coding needs explicit numeric levels".into())
            })?;
            if nl.len() != factors.num_factors()
                || nl.iter().zip(factors.levels()).any(|(v, &s)| v.len() != s)
            {
                return Err(Error::InvalidInput(
                    "numeric levels must list one value per level of every factor".into(),
                ));
            }
        }
        for t in &self.terms {
            self.validate_term(t, factors, true)?;
        }
        Ok(())
    }

    fn validate_term(&self, t: &ModelTerm, factors: &FactorSpec, top: bool) -> Result<()> {
        let m = factors.num_factors();
        match t {
            ModelTerm::Intercept if top => Ok(()),
            ModelTerm::Intercept => Err(Error::InvalidInput(
                "intercept cannot appear inside a product".into(),
            )),
            ModelTerm::Indicator { factor, level } => {
                if *factor >= m {
                    return Err(Error::InvalidInput(format!("factor {factor} out of range")));
                }
                match self.coding {
                    Coding::Monomial => Err(Error::InvalidInput(
                        "indicator terms need indicator01 or plus_minus_one coding".into(),
                    )),
                    Coding::PlusMinusOne if *level != 0 => Err(Error::InvalidInput(
                        "plus_minus_one terms use level 0 only".into(),
                    )),
                    _ if *level + 2 > factors.levels()[*factor] => {
                        Err(Error::InvalidInput(format!(
                            "indicator level {level} of factor {} is not retained (last level is dropped)",
                            factor + 1
                        )))
                    }
                    _ => Ok(()),
                }
            }
            ModelTerm::Power { factor, .. } => {
                if *factor >= m {
                    return Err(Error::InvalidInput(format!("factor {factor} out of range")));
                }
                if self.coding != Coding::Monomial {
                    return Err(Error::InvalidInput("power terms need monomial coding".into()));
                }
                Ok(())
            }
            ModelTerm::Product { factors: prims } => {
                if prims.is_empty() {
                    return Err(Error::InvalidInput("empty product term".into()));
                }
                prims
                    .iter()
                    .try_for_each(|p| self.validate_term(p, factors, false))
            }
        }
    }

    fn eval(&self, t: &ModelTerm, point: &[usize]) -> i64 {
        match t {
            ModelTerm::Intercept => 1,
            ModelTerm::Indicator { factor, level } => match self.coding {
                Coding::PlusMinusOne => 2 * point[*factor] as i64 - 1,
                _ => (point[*factor] == *level) as i64,
            },
            ModelTerm::Power { factor, exponent } => {
                let x = self.numeric_levels.as_ref().expect("validated")[*factor][point[*factor]];
                x.pow(*exponent)
            }
            ModelTerm::Product { factors } => factors.iter().map(|p| self.eval(p, point)).product(),
        }
    }

    /// Factors touched by any term.
    pub fn factors_used(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.terms.iter().for_each(|t| t.factors_used(&mut out));
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(k).collect()
}

/// Integer model matrix with row and column labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelMatrix {
    matrix: IntMatrix,
    row_labels: Vec<usize>,
    col_labels: Vec<String>,
    rank: usize,
}

impl ModelMatrix {
    pub fn from_matrix(matrix: IntMatrix, row_labels: Vec<usize>, col_labels: Vec<String>) -> Result<Self> {
        if row_labels.len() != matrix.rows() || col_labels.len() != matrix.cols() {
            return Err(Error::Dimension("labels do not match the matrix shape".into()));
        }
        let rank = linalg::rank(&matrix);
        Ok(ModelMatrix {
            matrix,
            row_labels,
            col_labels,
            rank,
        })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Number of runs (rows).
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of parameters (columns).
    pub fn p(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    /// `A = X^t`, the p x K matrix whose kernel holds the circuits.
    pub fn transpose(&self) -> IntMatrix {
        self.matrix.transpose()
    }

    /// Drops the listed columns.
    pub fn drop_columns(&self, dropped: &[usize]) -> Result<ModelMatrix> {
        if let Some(&c) = dropped.iter().find(|&&c| c >= self.p()) {
            return Err(Error::IndexOutOfRange {
                index: c,
                size: self.p(),
            });
        }
        let keep: Vec<usize> = (0..self.p()).filter(|c| !dropped.contains(c)).collect();
        ModelMatrix::from_matrix(
            self.matrix.select_columns(&keep),
            self.row_labels.clone(),
            keep.iter().map(|&c| self.col_labels[c].clone()).collect(),
        )
    }
}

/// Evaluates every term at every point of the candidate set.
pub fn model_matrix(cs: &CandidateSet, spec: &ModelSpec) -> Result<ModelMatrix> {
    spec.validate(cs.factors())?;
    let p = spec.num_terms();
    let mut data = Vec::with_capacity(cs.len() * p);
    for pt in cs.points() {
        for t in &spec.terms {
            data.push(BigInt::from(spec.eval(t, pt)));
        }
    }
    let matrix = IntMatrix::from_vec(cs.len(), p, data)?;
    ModelMatrix::from_matrix(
        matrix,
        (0..cs.len()).collect(),
        spec.terms.iter().map(ModelTerm::label).collect(),
    )
}

/// Rows of the candidate-set matrix selected (with multiplicity) by a
/// fraction.
pub fn submatrix(mm: &ModelMatrix, frac: &Fraction) -> Result<ModelMatrix> {
    if frac.parent_size() != mm.n() {
        return Err(Error::Dimension(format!(
            "fraction over {} points applied to a matrix with {} rows",
            frac.parent_size(),
            mm.n()
        )));
    }
    let m = mm.matrix.select_rows(frac.rows());
    let labels = frac.rows().iter().map(|&r| mm.row_labels[r]).collect();
    ModelMatrix::from_matrix(m, labels, mm.col_labels.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ff(levels: &[usize]) -> CandidateSet {
        build_full_factorial(&FactorSpec::new(levels.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn full_factorial_order() {
        let cs = ff(&[2, 2, 2, 2]);
        assert_eq!(cs.len(), 16);
        assert_eq!(cs.points()[0], vec![0, 0, 0, 0]);
        assert_eq!(cs.points()[15], vec![1, 1, 1, 1]);
        assert_eq!(cs.points()[1], vec![0, 0, 0, 1]);
        assert_eq!(ff(&[2, 3, 4]).len(), 24);
        assert_eq!(ff(&[3, 3, 4]).len(), 36);
    }

    #[test]
    fn factorial_cap() {
        let f = FactorSpec::new(vec![10; 7]).unwrap();
        assert!(matches!(build_full_factorial(&f), Err(Error::Capacity { .. })));
    }

    #[test]
    fn factor_spec_rejects_bad_levels() {
        assert!(FactorSpec::new(vec![]).is_err());
        assert!(FactorSpec::new(vec![2, 1]).is_err());
    }

    #[test]
    fn main_effects_matrix_of_2pow4() {
        let cs = ff(&[2, 2, 2, 2]);
        let spec = ModelSpec::main_effects(cs.factors(), Coding::Indicator01);
        let mm = model_matrix(&cs, &spec).unwrap();
        assert_eq!((mm.n(), mm.p(), mm.rank()), (16, 5, 5));
        // Transpose as printed: intercept row, then indicators of level 0.
        let expect: [[i64; 16]; 5] = [
            [1; 16],
            [1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            [1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0],
            [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
            [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0],
        ];
        assert_eq!(mm.transpose(), IntMatrix::from_rows(&expect));
    }

    #[test]
    fn interaction_parameter_counts() {
        let cs = ff(&[2, 2, 2, 2]);
        let mm = model_matrix(&cs, &ModelSpec::hierarchical(cs.factors(), Coding::Indicator01, 2)).unwrap();
        assert_eq!((mm.p(), mm.rank()), (11, 11));
        let cs = ff(&[2, 3, 4]);
        let mm = model_matrix(&cs, &ModelSpec::hierarchical(cs.factors(), Coding::Indicator01, 2)).unwrap();
        assert_eq!((mm.p(), mm.rank()), (18, 18));
        let spec = ModelSpec::main_effects(cs.factors(), Coding::Indicator01).with_interaction(cs.factors(), &[1, 2]);
        let mm = model_matrix(&cs, &spec).unwrap();
        assert_eq!((mm.p(), mm.rank()), (13, 13));
        let cs = ff(&[2, 2, 2, 2, 2]);
        let mm = model_matrix(&cs, &ModelSpec::hierarchical(cs.factors(), Coding::Indicator01, 3)).unwrap();
        assert_eq!((mm.p(), mm.rank()), (26, 26));
    }

    #[test]
    fn main_effects_rank_formula() {
        for levels in [vec![2, 3], vec![4, 6], vec![3, 3, 4], vec![2, 2, 2]] {
            let cs = ff(&levels);
            let mm = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::Indicator01)).unwrap();
            let p = 1 + levels.iter().map(|s| s - 1).sum::<usize>();
            assert_eq!((mm.p(), mm.rank()), (p, p));
        }
    }

    #[test]
    fn coding_spans_agree_for_two_level_factors() {
        let cs = ff(&[2, 2, 2]);
        let a = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::Indicator01)).unwrap();
        let b = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::PlusMinusOne)).unwrap();
        let mut stacked = a.transpose().entries().to_vec();
        stacked.extend_from_slice(b.transpose().entries());
        let s = IntMatrix::from_vec(8, 8, stacked).unwrap();
        assert_eq!(linalg::rank(&s), a.rank());
        assert_eq!(a.rank(), b.rank());
    }

    #[test]
    fn quadratic_polynomial_matrix() {
        let cs = ff(&[7]);
        let spec = ModelSpec::polynomial(&[vec![0], vec![1], vec![2]], vec![(-3..=3).collect()]);
        let mm = model_matrix(&cs, &spec).unwrap();
        assert_eq!(
            mm.transpose(),
            IntMatrix::from_rows(&[
                [1, 1, 1, 1, 1, 1, 1],
                [-3, -2, -1, 0, 1, 2, 3],
                [9, 4, 1, 0, 1, 4, 9]
            ])
        );
    }

    #[test]
    fn spec_validation_errors() {
        let cs = ff(&[3, 2]);
        let mut spec = ModelSpec::main_effects(cs.factors(), Coding::Indicator01);
        spec.terms.push(ModelTerm::Indicator { factor: 0, level: 2 });
        assert!(model_matrix(&cs, &spec).is_err());
        assert!(model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::PlusMinusOne)).is_err());
        let mut dup = ModelSpec::main_effects(cs.factors(), Coding::Indicator01);
        dup.terms.push(ModelTerm::Intercept);
        assert!(model_matrix(&cs, &dup).is_err());
        let mono = ModelSpec {
            coding: Coding::Monomial,
            terms: vec![ModelTerm::Intercept],
            numeric_levels: None,
        };
        assert!(model_matrix(&cs, &mono).is_err());
    }

    #[test]
    fn submatrix_selection_and_replicates() {
        let cs = ff(&[2, 2, 2, 2]);
        let mm = model_matrix(&cs, &ModelSpec::main_effects(cs.factors(), Coding::Indicator01)).unwrap();
        let all = submatrix(&mm, &cs.full_fraction()).unwrap();
        assert_eq!(all, mm);
        let mut rows: Vec<usize> = (0..16).collect();
        rows.push(0);
        let rep = submatrix(&mm, &Fraction::new(16, rows).unwrap()).unwrap();
        assert_eq!(rep.n(), 17);
        assert_eq!(rep.matrix().row(0), rep.matrix().row(1));
        assert!(Fraction::new(16, vec![16]).is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let cs = ff(&[2, 3]);
        let spec = ModelSpec::hierarchical(cs.factors(), Coding::Indicator01, 2);
        let js = serde_json::to_string(&spec).unwrap();
        assert!(js.contains("\"kind\":\"product\""));
        let back: ModelSpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, spec);
    }
}
