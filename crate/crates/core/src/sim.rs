//! Monte-Carlo study of the exchange: random starts, optimized ends, and
//! summaries of the robustness gain.
//!
//! Replicate `i` draws from a ChaCha8 stream seeded with the master seed and
//! stream number `i`, so results do not depend on the number of workers.

use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuits::{circuits_of_model, predicted_primal_subsets, CircuitBasis, EnumerationOptions, DEFAULT_PRIMAL_BUDGET};
use crate::design::corpus::corpus;
use crate::design::{submatrix, CandidateSet, Fraction, ModelMatrix};
use crate::error::{Error, Result};
use crate::linalg;
use crate::optimizer::{optimize_with, ExchangeConfig, TieRule, Variant, WorkingSet};
use crate::robustness::{binomial, budget_from_env, count_saturated, d_efficiency};

/// Largest C(K, n) searched exhaustively for the D-optimal fraction.
pub const DOPT_EXHAUSTIVE_BUDGET: u128 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    /// A name from the corpus.
    pub design: String,
    pub n: usize,
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    pub seed: u64,
    #[serde(default)]
    pub variant: Variant,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default)]
    pub tie_rule: TieRule,
}

fn default_replicates() -> usize {
    1000
}

fn default_max_iter() -> usize {
    20
}

impl SimConfig {
    pub fn new(design: &str, n: usize, seed: u64, variant: Variant) -> Self {
        SimConfig {
            design: design.to_string(),
            n,
            replicates: default_replicates(),
            seed,
            variant,
            max_iter: default_max_iter(),
            tie_rule: TieRule::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimSummary {
    pub n: usize,
    pub replicates: usize,
    pub mean_rb: f64,
    pub median_rb: f64,
    pub mean_delta: f64,
    pub median_delta: f64,
    pub delta_p05: f64,
    pub delta_p20: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatterRecord {
    pub replicate: usize,
    pub r_before: f64,
    pub r_after: f64,
}

/// Percentile by linear interpolation between closest ranks: position
/// `(N - 1) q` in the sorted sample.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn summarize(n: usize, deltas: &[f64], r_starts: &[f64]) -> Result<SimSummary> {
    if deltas.is_empty() || r_starts.is_empty() {
        return Err(Error::InvalidInput("cannot summarize an empty sample".into()));
    }
    let d = sorted(deltas);
    let r = sorted(r_starts);
    Ok(SimSummary {
        n,
        replicates: deltas.len(),
        mean_rb: mean(r_starts),
        median_rb: percentile(&r, 0.5),
        mean_delta: mean(deltas),
        median_delta: percentile(&d, 0.5),
        delta_p05: percentile(&d, 0.05),
        delta_p20: percentile(&d, 0.20),
    })
}

/// Uniform n-subset of the K candidate points.
pub fn sample_fraction<R: Rng + ?Sized>(k: usize, n: usize, rng: &mut R) -> Result<Fraction> {
    if n > k || n == 0 {
        return Err(Error::InvalidInput(format!("cannot draw {n} of {k} points")));
    }
    Fraction::new(k, rand::seq::index::sample(rng, k, n).into_vec())
}

/// Robustness of the fraction as a float; 0 when not estimable.
pub fn robustness_value(mm: &ModelMatrix, frac: &Fraction) -> Result<f64> {
    let x = submatrix(mm, frac)?;
    let total = binomial(x.n(), x.p());
    if total == 0 {
        return Ok(0.0);
    }
    Ok(count_saturated(&x)? as f64 / total as f64)
}

/// A basis complete up to support p: the exhaustive one when the dual
/// route is cheap, otherwise the primal one bounded at p. The primal route
/// is refused beyond `budget` predicted subsets.
pub fn exchange_basis(mm: &ModelMatrix, budget: u128) -> Result<CircuitBasis> {
    let p = mm.rank();
    let opts = EnumerationOptions {
        budget,
        ..Default::default()
    };
    if mm.n() - p < p {
        circuits_of_model(mm, None, &opts)
    } else {
        let predicted = predicted_primal_subsets(mm.n(), p);
        if predicted > budget {
            return Err(Error::Capacity {
                what: format!("circuits over {} points up to support {p}", mm.n()),
                needed: predicted,
                budget,
            });
        }
        let b = circuits_of_model(mm, Some(p), &opts)?;
        if b.is_empty() {
            circuits_of_model(mm, None, &opts)
        } else {
            Ok(b)
        }
    }
}

/// The n-fraction a single seeded start would draw (replicate 0).
pub fn seeded_fraction(k: usize, n: usize, seed: u64) -> Result<Fraction> {
    sample_fraction(k, n, &mut replicate_rng(seed, 0))
}

fn replicate_rng(seed: u64, replicate: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate as u64);
    rng
}

/// Runs the study for one design and size against a prepared working set.
pub fn run_with(mm: &ModelMatrix, ws: &WorkingSet, cfg: &SimConfig) -> Result<(SimSummary, Vec<ScatterRecord>)> {
    if cfg.replicates == 0 {
        return Err(Error::InvalidInput("replicates must be at least 1".into()));
    }
    if cfg.n < mm.p() || cfg.n > mm.n() {
        return Err(Error::InvalidInput(format!(
            "n = {} outside [{}, {}]",
            cfg.n,
            mm.p(),
            mm.n()
        )));
    }
    let records = (0..cfg.replicates)
        .into_par_iter()
        .map(|i| {
            let mut rng = replicate_rng(cfg.seed, i);
            let start = sample_fraction(mm.n(), cfg.n, &mut rng)?;
            let ex = ExchangeConfig {
                max_iter: cfg.max_iter,
                variant: cfg.variant,
                seed: rng.gen(),
                tie_rule: cfg.tie_rule,
            };
            let (end, _) = optimize_with(&start, ws, &ex)?;
            Ok(ScatterRecord {
                replicate: i,
                r_before: robustness_value(mm, &start)?,
                r_after: robustness_value(mm, &end)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let deltas: Vec<f64> = records.iter().map(|r| r.r_after - r.r_before).collect();
    let starts: Vec<f64> = records.iter().map(|r| r.r_before).collect();
    Ok((summarize(cfg.n, &deltas, &starts)?, records))
}

pub fn run_simulation(cfg: &SimConfig) -> Result<(SimSummary, Vec<ScatterRecord>)> {
    let mm = corpus(&cfg.design)?.model_matrix()?;
    let basis = exchange_basis(&mm, budget_from_env(DEFAULT_PRIMAL_BUDGET))?;
    let ws = WorkingSet::new(&basis, cfg.variant)?;
    run_with(&mm, &ws, cfg)
}

pub const TABLE_HEADER: &str = "n,mean_rB,med_rB,mean_delta,med_delta,delta_p05,delta_p20";

pub fn table_csv(rows: &[SimSummary]) -> String {
    let mut out = format!("{TABLE_HEADER}\n");
    for s in rows {
        let _ = writeln!(
            out,
            "{},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4}",
            s.n, s.mean_rb, s.median_rb, s.mean_delta, s.median_delta, s.delta_p05, s.delta_p20
        );
    }
    out
}

pub fn scatter_csv(records: &[ScatterRecord]) -> String {
    let mut out = String::from("replicate,r_before,r_after\n");
    for r in records {
        let _ = writeln!(out, "{},{:.6},{:.6}", r.replicate, r.r_before, r.r_after);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoptPoint {
    /// "sample" or "d_optimal".
    pub kind: String,
    pub rows: Vec<usize>,
    pub det_xtx: BigInt,
    pub d_efficiency: f64,
    pub robustness: f64,
}

fn score(mm: &ModelMatrix, frac: &Fraction, kind: &str) -> Result<DoptPoint> {
    let x = submatrix(mm, frac)?;
    let eff = d_efficiency(&x)?;
    let robustness = if eff.det_xtx.is_zero() {
        0.0
    } else {
        robustness_value(mm, frac)?
    };
    Ok(DoptPoint {
        kind: kind.to_string(),
        rows: frac.rows().to_vec(),
        det_xtx: eff.det_xtx,
        d_efficiency: eff.d_efficiency,
        robustness,
    })
}

/// The n-fraction maximizing det(X^t X), first in lexicographic order.
pub fn d_optimal_fraction(mm: &ModelMatrix, n: usize) -> Result<Fraction> {
    let k = mm.n();
    let total = binomial(k, n);
    if total > DOPT_EXHAUSTIVE_BUDGET {
        return Err(Error::Capacity {
            what: format!("exhaustive D-optimal search over C({k},{n}) fractions"),
            needed: total,
            budget: DOPT_EXHAUSTIVE_BUDGET,
        });
    }
    let subsets: Vec<Vec<usize>> = (0..k).combinations(n).collect();
    let dets = subsets
        .par_iter()
        .map(|rows| {
            let x = mm.matrix().select_rows(rows);
            linalg::det(&x.transpose().mul(&x)?)
        })
        .collect::<Result<Vec<BigInt>>>()?;
    let mut best = 0;
    for (i, d) in dets.iter().enumerate() {
        if d > &dets[best] {
            best = i;
        }
    }
    Fraction::new(k, subsets[best].clone())
}

/// D-efficiency and robustness of `sample_size` random n-fractions, plus the
/// D-optimal one unless `sample_only`.
pub fn dopt_scatter(
    cs: &CandidateSet,
    mm: &ModelMatrix,
    n: usize,
    sample_size: usize,
    seed: u64,
    sample_only: bool,
) -> Result<Vec<DoptPoint>> {
    if mm.n() != cs.len() {
        return Err(Error::Dimension("model matrix and candidate set differ in size".into()));
    }
    let mut points = (0..sample_size)
        .into_par_iter()
        .map(|i| {
            let mut rng = replicate_rng(seed, i);
            score(mm, &sample_fraction(cs.len(), n, &mut rng)?, "sample")
        })
        .collect::<Result<Vec<_>>>()?;
    if !sample_only {
        points.push(score(mm, &d_optimal_fraction(mm, n)?, "d_optimal")?);
    }
    Ok(points)
}

pub fn dopt_csv(points: &[DoptPoint]) -> String {
    let mut out = String::from("kind,d_efficiency,robustness,det_xtx,rows\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{:.6},{:.6},{},{}",
            p.kind,
            p.d_efficiency,
            p.robustness,
            p.det_xtx,
            p.rows.iter().join(" ")
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentiles_interpolate() {
        let xs: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        assert!((percentile(&xs, 0.5) - 0.5).abs() < 1e-12);
        assert!((percentile(&[1.0, 2.0], 0.25) - 1.25).abs() < 1e-12);
        let s = summarize(3, &[0.2; 5], &[0.2; 5]).unwrap();
        assert_eq!((s.mean_delta, s.median_delta, s.delta_p05, s.delta_p20), (0.2, 0.2, 0.2, 0.2));
        assert!(summarize(3, &[], &[]).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_uniform() {
        let a = sample_fraction(16, 8, &mut replicate_rng(7, 3)).unwrap();
        let b = sample_fraction(16, 8, &mut replicate_rng(7, 3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(sample_fraction(16, 16, &mut replicate_rng(1, 0)).unwrap().rows(), &(0..16).collect::<Vec<_>>()[..]);
        assert!(sample_fraction(16, 17, &mut replicate_rng(1, 0)).is_err());
        let mut counts = [0usize; 16];
        let mut rng = replicate_rng(11, 0);
        for _ in 0..10_000 {
            for &r in sample_fraction(16, 8, &mut rng).unwrap().rows() {
                counts[r] += 1;
            }
        }
        for c in counts {
            assert!((c as f64 / 10_000.0 - 0.5).abs() < 0.02);
        }
    }

    #[test]
    fn small_run_is_reproducible() {
        let mut cfg = SimConfig::new("2pow4_main", 10, 5, Variant::Full);
        cfg.replicates = 20;
        let (s1, r1) = run_simulation(&cfg).unwrap();
        let (s2, r2) = run_simulation(&cfg).unwrap();
        assert_eq!(table_csv(&[s1.clone()]), table_csv(&[s2]));
        assert_eq!(r1, r2);
        assert!(r1.iter().all(|r| (0.0..=1.0).contains(&r.r_before) && (0.0..=1.0).contains(&r.r_after)));
        assert!(table_csv(&[s1]).starts_with(TABLE_HEADER));
    }

    #[test]
    fn circuit_free_start_has_zero_gain() {
        let mm = corpus("2pow4_main").unwrap().model_matrix().unwrap();
        let empty = WorkingSet::from_supports(16, 5, vec![]);
        let mut cfg = SimConfig::new("2pow4_main", 8, 1, Variant::Full);
        cfg.replicates = 1;
        let (s, recs) = run_with(&mm, &empty, &cfg).unwrap();
        assert_eq!(s.mean_delta, 0.0);
        assert_eq!(recs[0].r_before, recs[0].r_after);
    }

    #[test]
    fn d_optimal_search_matches_brute_force() {
        let c = corpus("2pow4_main").unwrap();
        let mm = c.model_matrix().unwrap();
        let best = d_optimal_fraction(&mm, 6).unwrap();
        let det = |rows: &[usize]| {
            let x = mm.matrix().select_rows(rows);
            linalg::det(&x.transpose().mul(&x).unwrap()).unwrap()
        };
        let max = (0..16).combinations(6).map(|r| det(&r)).max().unwrap();
        assert_eq!(det(best.rows()), max);
        let pts = dopt_scatter(&c.candidates, &mm, 6, 5, 3, false).unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts.last().unwrap().kind, "d_optimal");
        assert!(d_optimal_fraction(&mm, 8).is_ok());
        let big = corpus("2pow5_main").unwrap().model_matrix().unwrap();
        assert!(matches!(d_optimal_fraction(&big, 10), Err(Error::Capacity { .. })));
    }

    #[test]
    fn exchange_basis_respects_the_budget() {
        let mm = corpus("2pow5_main").unwrap().model_matrix().unwrap();
        assert!(matches!(exchange_basis(&mm, 100_000), Err(Error::Capacity { .. })));
        let small = corpus("2pow4_main").unwrap().model_matrix().unwrap();
        assert_eq!(exchange_basis(&small, 1_000_000).unwrap().histogram(), [(4, 100), (5, 160)].into());
    }
}
