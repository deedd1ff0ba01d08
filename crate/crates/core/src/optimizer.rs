//! Greedy circuit-driven exchange.
//!
//! Each step takes the points of the fraction with the highest loss
//!
//! ```text
//! L(R) = sum over working-set circuits u inside the fraction with R in supp(u)
//!        of C(n - |supp(u)|, p - |supp(u)|)
//! ```
//!
//! pairs every one of them with every point outside the fraction, and makes
//! the swap that leaves the fewest working-set circuits inside. Ties go to
//! the smaller total weighted loss, then to the tie rule.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::{minimal_support_subset, CircuitBasis};
use crate::design::Fraction;
use crate::error::{Error, Result};
use crate::robustness::binomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Circuits with support on at most p points.
    #[default]
    Full,
    /// Circuits of minimal support only.
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum TieRule {
    #[default]
    Lexicographic,
    SeededRandom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeConfig {
    pub max_iter: usize,
    pub variant: Variant,
    pub seed: u64,
    pub tie_rule: TieRule,
}

impl Default for ExchangeConfig {
    fn default() -> Self {
        ExchangeConfig {
            max_iter: 20,
            variant: Variant::Full,
            seed: 0,
            tie_rule: TieRule::Lexicographic,
        }
    }
}

/// Circuit supports the exchange works with, indexed by point.
#[derive(Clone, Debug)]
pub struct WorkingSet {
    points: usize,
    p: usize,
    supports: Vec<Vec<usize>>,
    by_point: Vec<Vec<u32>>,
}

impl WorkingSet {
    /// C^p (full) or C^min (reduced) of the basis. The full variant needs a
    /// basis complete up to support p.
    pub fn new(basis: &CircuitBasis, variant: Variant) -> Result<Self> {
        let p = basis.rank();
        let chosen: Vec<Vec<usize>> = match variant {
            Variant::Full => {
                if let Some(b) = basis.support_bound() {
                    if b < p && !basis.is_exhaustive() {
                        return Err(Error::NotExhaustive(b));
                    }
                }
                basis
                    .circuits()
                    .iter()
                    .filter(|c| c.support_size() <= p)
                    .map(|c| c.support().to_vec())
                    .collect()
            }
            Variant::Reduced => {
                if basis.is_empty() {
                    Vec::new()
                } else {
                    minimal_support_subset(basis)?
                        .circuits()
                        .iter()
                        .map(|c| c.support().to_vec())
                        .collect()
                }
            }
        };
        Ok(Self::from_supports(basis.num_points(), p, chosen))
    }

    pub fn from_supports(points: usize, p: usize, supports: Vec<Vec<usize>>) -> Self {
        let mut by_point = vec![Vec::new(); points];
        for (i, s) in supports.iter().enumerate() {
            for &x in s {
                by_point[x].push(i as u32);
            }
        }
        WorkingSet {
            points,
            p,
            supports,
            by_point,
        }
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn num_points(&self) -> usize {
        self.points
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn supports(&self) -> &[Vec<usize>] {
        &self.supports
    }

    fn weight(&self, n: usize, size: usize) -> u128 {
        if size > self.p || size > n {
            0
        } else {
            binomial(n - size, self.p - size)
        }
    }

    fn check(&self, frac: &Fraction) -> Result<()> {
        if frac.parent_size() != self.points {
            return Err(Error::Dimension(format!(
                "fraction over {} points, working set over {}",
                frac.parent_size(),
                self.points
            )));
        }
        if frac.has_replicates() {
            return Err(Error::InvalidInput("the exchange needs a fraction without replicates".into()));
        }
        Ok(())
    }

    /// Number of points of each support outside the fraction.
    fn missing(&self, inside: &[bool]) -> Vec<u32> {
        self.supports
            .iter()
            .map(|s| s.iter().filter(|&&x| !inside[x]).count() as u32)
            .collect()
    }

    /// Working-set circuits with support inside the fraction.
    pub fn contained(&self, frac: &Fraction) -> Result<usize> {
        self.check(frac)?;
        let inside = membership(frac);
        Ok(self.missing(&inside).iter().filter(|&&m| m == 0).count())
    }
}

fn membership(frac: &Fraction) -> Vec<bool> {
    let mut inside = vec![false; frac.parent_size()];
    for &r in frac.rows() {
        inside[r] = true;
    }
    inside
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LossTable {
    /// `(point, L(point))` for every point of the fraction, in row order.
    pub losses: Vec<(usize, u128)>,
    /// Working-set indices of the circuits inside the fraction.
    pub active: Vec<usize>,
}

impl LossTable {
    pub fn max_loss(&self) -> u128 {
        self.losses.iter().map(|&(_, l)| l).max().unwrap_or(0)
    }

    pub fn worst_points(&self) -> Vec<usize> {
        let m = self.max_loss();
        self.losses.iter().filter(|&&(_, l)| l == m).map(|&(r, _)| r).collect()
    }
}

pub fn loss_table(frac: &Fraction, ws: &WorkingSet) -> Result<LossTable> {
    ws.check(frac)?;
    let n = frac.len();
    let inside = membership(frac);
    let missing = ws.missing(&inside);
    let active: Vec<usize> = (0..ws.len()).filter(|&u| missing[u] == 0).collect();
    let losses = frac
        .rows()
        .iter()
        .map(|&r| {
            let l = ws.by_point[r]
                .iter()
                .filter(|&&u| missing[u as usize] == 0)
                .map(|&u| ws.weight(n, ws.supports[u as usize].len()))
                .sum();
            (r, l)
        })
        .collect();
    Ok(LossTable { losses, active })
}

/// `L(R)` for a point of the fraction.
pub fn loss(frac: &Fraction, ws: &WorkingSet, r: usize) -> Result<u128> {
    if r >= frac.parent_size() || !frac.contains(r) {
        return Err(Error::InvalidInput(format!("point {r} is not in the fraction")));
    }
    let table = loss_table(frac, ws)?;
    Ok(table.losses.iter().find(|&&(x, _)| x == r).map(|&(_, l)| l).unwrap_or(0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub iteration: usize,
    pub removed: usize,
    pub added: usize,
    pub active_before: usize,
    pub active_after: usize,
    pub weighted_after: u128,
    /// Losses before the exchange.
    pub losses: Vec<(usize, u128)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Exchanged(Fraction, StepRecord),
    NoImprovement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    NoReduction,
    MaxIter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeTrace {
    pub steps: Vec<StepRecord>,
    pub termination: Termination,
}

impl ExchangeTrace {
    /// One JSON object per step, then a closing record with the reason.
    pub fn to_json_lines(&self) -> Result<String> {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s)?);
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&serde_json::json!({ "termination": self.termination }))?);
        out.push('\n');
        Ok(out)
    }
}

/// One exchange. `rng` is only consulted under the seeded tie rule.
pub fn exchange_step(
    frac: &Fraction,
    ws: &WorkingSet,
    cfg: &ExchangeConfig,
    rng: &mut ChaCha8Rng,
) -> Result<StepOutcome> {
    ws.check(frac)?;
    if frac.len() >= ws.points {
        return Err(Error::InvalidInput("the fraction is the whole candidate set".into()));
    }
    let n = frac.len();
    let inside = membership(frac);
    let missing = ws.missing(&inside);
    let active_before = missing.iter().filter(|&&m| m == 0).count();
    if active_before == 0 {
        return Ok(StepOutcome::NoImprovement);
    }
    let weight = |u: u32| ws.weight(n, ws.supports[u as usize].len());
    let total_weighted: u128 = (0..ws.len() as u32).filter(|&u| missing[u as usize] == 0).map(weight).sum();
    let table = loss_table(frac, ws)?;
    let worst = table.worst_points();

    // Circuits an outside point Q would complete.
    let outside: Vec<usize> = (0..ws.points).filter(|&q| !inside[q]).collect();
    let gains: Vec<Vec<u32>> = outside
        .iter()
        .map(|&q| {
            ws.by_point[q]
                .iter()
                .copied()
                .filter(|&u| missing[u as usize] == 1)
                .collect()
        })
        .collect();

    // (count, weighted, removed, added)
    let mut best: Vec<(usize, u128, usize, usize)> = Vec::new();
    for &r in &worst {
        let (lost_count, lost_weight) = ws.by_point[r]
            .iter()
            .filter(|&&u| missing[u as usize] == 0)
            .fold((0usize, 0u128), |(c, w), &u| (c + 1, w + weight(u)));
        for (qi, &q) in outside.iter().enumerate() {
            let (gain_count, gain_weight) = gains[qi]
                .iter()
                .filter(|&&u| !ws.supports[u as usize].contains(&r))
                .fold((0usize, 0u128), |(c, w), &u| (c + 1, w + weight(u)));
            let count = active_before - lost_count + gain_count;
            let weighted = total_weighted - lost_weight + gain_weight;
            let key = (count, weighted, r, q);
            match best.first() {
                Some(b) if (b.0, b.1) < (count, weighted) => {}
                Some(b) if (b.0, b.1) == (count, weighted) => best.push(key),
                _ => best = vec![key],
            }
        }
    }
    let Some(&first) = best.first() else {
        return Ok(StepOutcome::NoImprovement);
    };
    if first.0 >= active_before {
        return Ok(StepOutcome::NoImprovement);
    }
    let chosen = match cfg.tie_rule {
        TieRule::Lexicographic => *best.iter().min_by_key(|k| (k.2, k.3)).unwrap(),
        TieRule::SeededRandom => *best.choose(rng).unwrap(),
    };
    let next = frac.exchange(chosen.2, chosen.3)?;
    Ok(StepOutcome::Exchanged(
        next,
        StepRecord {
            iteration: 0,
            removed: chosen.2,
            added: chosen.3,
            active_before,
            active_after: chosen.0,
            weighted_after: chosen.1,
            losses: table.losses,
        },
    ))
}

/// Repeats exchange steps until none reduces the contained-circuit count or
/// `max_iter` steps have been made.
pub fn optimize_with(start: &Fraction, ws: &WorkingSet, cfg: &ExchangeConfig) -> Result<(Fraction, ExchangeTrace)> {
    if cfg.max_iter == 0 {
        return Err(Error::InvalidInput("max_iter must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut frac = start.clone();
    let mut steps = Vec::new();
    for it in 0..cfg.max_iter {
        match exchange_step(&frac, ws, cfg, &mut rng)? {
            StepOutcome::NoImprovement => {
                return Ok((
                    frac,
                    ExchangeTrace {
                        steps,
                        termination: Termination::NoReduction,
                    },
                ))
            }
            StepOutcome::Exchanged(next, mut rec) => {
                rec.iteration = it + 1;
                steps.push(rec);
                frac = next;
            }
        }
    }
    Ok((
        frac,
        ExchangeTrace {
            steps,
            termination: Termination::MaxIter,
        },
    ))
}

/// Builds the working set of the configured variant and runs the exchange.
pub fn optimize(start: &Fraction, basis: &CircuitBasis, cfg: &ExchangeConfig) -> Result<(Fraction, ExchangeTrace)> {
    let ws = WorkingSet::new(basis, cfg.variant)?;
    optimize_with(start, &ws, cfg)
}
