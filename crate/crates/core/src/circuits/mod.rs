//! Circuit bases of integer matrices.
//!
//! For `A = X^t` (p x K, one column per design point) a circuit is a
//! primitive vector of `ker A` whose support is inclusion-minimal. Two
//! enumeration routes are provided:
//!
//! * **primal**: a depth-first walk over independent column sets in
//!   increasing index order. For an independent set `I` and a later column
//!   `j` in its span, `I + j` is a circuit exactly when the expansion of `j`
//!   uses every column of `I`. Every circuit `C` is met once, at
//!   `I = C - max(C)`, and dependent sets are never extended, so supersets
//!   of known supports are pruned for free.
//! * **dual**: circuits of `A` are complements of hyperplanes of the matroid
//!   on the rows of an integer kernel basis `B` of `A`. Each hyperplane is
//!   generated once, from its lexicographically first basis.
//!
//! Both run on the `i64` elimination engine and restart with arbitrary
//! precision on overflow. Every emitted vector is re-checked against `A`
//! exactly.

pub mod symmetry;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bitset::PointSet;
use crate::design::{Fraction, ModelMatrix};
use crate::error::{Error, Result};
use crate::io;
use crate::linalg::echelon::{self, fast_kernel, with_fallback, Reducer};
use crate::linalg::{self, IntMatrix, IntVector};

/// Default cap on the predicted number of subsets the primal route visits
/// without an explicit support bound.
pub const DEFAULT_PRIMAL_BUDGET: u128 = 100_000_000;

/// A circuit stored sparsely: sorted support and the nonzero entries, with
/// the first entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circuit {
    len: usize,
    support: Vec<usize>,
    coeffs: Vec<BigInt>,
}

impl Circuit {
    /// Canonicalizes a sparse vector (divides by content, fixes the sign).
    pub fn from_sparse(len: usize, mut entries: Vec<(usize, BigInt)>) -> Result<Self> {
        entries.retain(|(_, v)| !v.is_zero());
        entries.sort_by_key(|(i, _)| *i);
        if entries.is_empty() {
            return Err(Error::InvalidInput("zero vector is not a circuit".into()));
        }
        if entries.last().unwrap().0 >= len || entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("bad sparse circuit indices".into()));
        }
        let g = entries.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
        let flip = entries[0].1.is_negative();
        let (support, coeffs) = entries
            .into_iter()
            .map(|(i, v)| {
                let v = v / &g;
                (i, if flip { -v } else { v })
            })
            .unzip();
        Ok(Circuit {
            len,
            support,
            coeffs,
        })
    }

    pub fn from_vector(v: &IntVector) -> Result<Self> {
        Circuit::from_sparse(
            v.len(),
            v.0.iter().cloned().enumerate().collect(),
        )
    }

    /// Dense vector of length K.
    pub fn vector(&self) -> IntVector {
        let mut v = vec![BigInt::zero(); self.len];
        for (i, c) in self.support.iter().zip(&self.coeffs) {
            v[*i] = c.clone();
        }
        IntVector(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    pub fn support_set(&self) -> PointSet {
        PointSet::from_indices(self.len, self.support.iter().copied())
    }

    fn sort_key(&self) -> (usize, &[usize], &[BigInt]) {
        (self.support.len(), &self.support, &self.coeffs)
    }
}

impl PartialOrd for Circuit {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Circuit {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// How a basis was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisStrategy {
    Primal,
    Dual,
    Restriction,
    Bounded,
    MinimalSupport,
}

/// Requested enumeration route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    Primal,
    Dual,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    pub strategy: Strategy,
    pub budget: u128,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            strategy: Strategy::Auto,
            budget: DEFAULT_PRIMAL_BUDGET,
        }
    }
}

/// A canonically ordered set of circuits of one matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitBasis {
    len: usize,
    rank: usize,
    circuits: Vec<Circuit>,
    fingerprint: String,
    /// `None` when the basis holds every circuit.
    support_bound: Option<usize>,
    strategy: BasisStrategy,
}

/// Sidecar metadata written next to a circuit file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisMetadata {
    pub count: usize,
    pub points: usize,
    pub rank: usize,
    pub fingerprint: String,
    pub strategy: BasisStrategy,
    /// A number, or the string "exhaustive".
    pub support_bound: serde_json::Value,
    pub by_support: BTreeMap<usize, usize>,
}

impl CircuitBasis {
    pub fn new(
        len: usize,
        rank: usize,
        mut circuits: Vec<Circuit>,
        fingerprint: String,
        support_bound: Option<usize>,
        strategy: BasisStrategy,
    ) -> Self {
        circuits.sort();
        circuits.dedup();
        CircuitBasis {
            len,
            rank,
            circuits,
            fingerprint,
            support_bound,
            strategy,
        }
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// Number of points (K).
    pub fn num_points(&self) -> usize {
        self.len
    }

    /// Rank of the source matrix (p for full-rank models).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn support_bound(&self) -> Option<usize> {
        self.support_bound
    }

    pub fn strategy(&self) -> BasisStrategy {
        self.strategy
    }

    /// True when no circuit can be missing: unbounded, or bounded at p+1 or
    /// above.
    pub fn is_exhaustive(&self) -> bool {
        self.support_bound.is_none_or(|b| b > self.rank)
    }

    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in &self.circuits {
            *h.entry(c.support_size()).or_insert(0) += 1;
        }
        h
    }

    /// `count=<N> by_support=<size>:<count>,...`
    pub fn summary_line(&self) -> String {
        let hist: Vec<String> = self
            .histogram()
            .iter()
            .map(|(s, c)| format!("{s}:{c}"))
            .collect();
        format!("count={} by_support={}", self.len(), hist.join(","))
    }

    pub fn support_sets(&self) -> Vec<PointSet> {
        self.circuits.iter().map(Circuit::support_set).collect()
    }

    pub fn metadata(&self) -> BasisMetadata {
        BasisMetadata {
            count: self.len(),
            points: self.len,
            rank: self.rank,
            fingerprint: self.fingerprint.clone(),
            strategy: self.strategy,
            support_bound: match self.support_bound {
                None => serde_json::Value::String("exhaustive".into()),
                Some(b) => serde_json::Value::from(b),
            },
            by_support: self.histogram(),
        }
    }

    /// 4ti2-style circuit file text.
    pub fn to_4ti2(&self) -> String {
        let vs: Vec<IntVector> = self.circuits.iter().map(Circuit::vector).collect();
        io::write_vectors_4ti2(self.len, &vs)
    }

    /// Compares against externally produced vectors up to sign and order.
    pub fn diff(&self, external: &[IntVector]) -> Result<BasisDiff> {
        let ours: std::collections::BTreeSet<Circuit> = self.circuits.iter().cloned().collect();
        let theirs = external
            .iter()
            .map(Circuit::from_vector)
            .collect::<Result<std::collections::BTreeSet<_>>>()?;
        Ok(BasisDiff {
            only_ours: ours.difference(&theirs).cloned().collect(),
            only_theirs: theirs.difference(&ours).cloned().collect(),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct BasisDiff {
    pub only_ours: Vec<Circuit>,
    pub only_theirs: Vec<Circuit>,
}

impl BasisDiff {
    pub fn is_equal(&self) -> bool {
        self.only_ours.is_empty() && self.only_theirs.is_empty()
    }
}

/// Short content hash of a matrix.
pub fn fingerprint(a: &IntMatrix) -> String {
    let digest = Sha256::digest(io::write_matrix_4ti2(a).as_bytes());
    hex::encode(&digest[..16])
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Upper bound on the subsets the primal route may visit.
pub fn predicted_primal_subsets(points: usize, bound: usize) -> u128 {
    (1..=bound.min(points)).fold(0u128, |acc, k| acc.saturating_add(binomial(points, k)))
}

type Raw = Vec<(usize, BigInt)>;

fn primal_rec<T: echelon::Entry>(
    red: &Reducer<T>,
    depth: usize,
    start: usize,
    bound: usize,
    out: &mut Vec<Raw>,
) -> Result<()> {
    for j in start..red.cols() {
        if red.in_span(j) {
            if red.uses_all_pivots(j) {
                out.push(red.dependency(j));
            }
        } else if depth + 1 < bound {
            let mut child = red.clone();
            child.pivot(j, j + 1)?;
            primal_rec(&child, depth + 1, j + 1, bound, out)?;
        }
    }
    Ok(())
}

fn primal<T: echelon::Entry>(a: &IntMatrix, bound: usize) -> Result<Vec<Raw>> {
    let root = Reducer::<T>::new(a)?;
    let k = a.cols();
    let per_start: Vec<Result<Vec<Raw>>> = (0..k)
        .into_par_iter()
        .map(|j| {
            let mut out = Vec::new();
            if root.in_span(j) {
                out.push(root.dependency(j));
            } else if bound > 1 {
                let mut child = root.clone();
                child.pivot(j, j + 1)?;
                primal_rec(&child, 1, j + 1, bound, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_start {
        all.extend(r?);
    }
    Ok(all)
}

/// True when some `e < max(set)` outside `set` lies in the span but needs a
/// pivot column larger than itself; then `set` cannot grow into the first
/// basis of its closure.
fn breaks_lex_first<T: echelon::Entry>(red: &Reducer<T>, in_set: &[bool], upto: usize) -> bool {
    (0..upto).any(|e| {
        !in_set[e]
            && red.in_span(e)
            && red
                .pivots()
                .iter()
                .enumerate()
                .any(|(t, &(c, _))| c > e && !red.coefficient(t, e).is_zero())
    })
}

fn dual_rec<T: echelon::Entry>(
    red: &Reducer<T>,
    in_set: &mut Vec<bool>,
    start: usize,
    target: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let k = red.cols();
    if red.rank() == target {
        if breaks_lex_first(red, in_set, k) {
            return Ok(());
        }
        let support: Vec<usize> = (0..k).filter(|&e| !in_set[e] && !red.in_span(e)).collect();
        out.push(support);
        return Ok(());
    }
    let need = target - red.rank();
    for j in start..=k - need {
        if red.in_span(j) {
            continue;
        }
        let mut child = red.clone();
        child.pivot(j, 0)?;
        in_set[j] = true;
        if !breaks_lex_first(&child, in_set, j) {
            dual_rec(&child, in_set, j + 1, target, out)?;
        }
        in_set[j] = false;
    }
    Ok(())
}

/// Supports of all circuits of `a`, via hyperplanes of the kernel matroid.
fn dual_supports<T: echelon::Entry>(a: &IntMatrix) -> Result<Vec<Vec<usize>>> {
    let kernel = fast_kernel(a)?;
    let d = kernel.len();
    let k = a.cols();
    if d == 0 {
        return Ok(Vec::new());
    }
    let bt = IntMatrix::from_vec(d, k, kernel.into_iter().flat_map(|v| v.0).collect())?;
    let root = Reducer::<T>::new(&bt)?;
    let target = d - 1;
    let mut out = Vec::new();
    let mut in_set = vec![false; k];
    if target == 0 {
        dual_rec(&root, &mut in_set, 0, 0, &mut out)?;
        return Ok(out);
    }
    let branches: Vec<Result<Vec<Vec<usize>>>> = (0..=k - target)
        .into_par_iter()
        .map(|j| {
            let mut out = Vec::new();
            if root.in_span(j) {
                return Ok(out);
            }
            let mut in_set = vec![false; k];
            let mut child = root.clone();
            child.pivot(j, 0)?;
            in_set[j] = true;
            if !breaks_lex_first(&child, &in_set, j) {
                dual_rec(&child, &mut in_set, j + 1, target, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    for b in branches {
        out.extend(b?);
    }
    Ok(out)
}

/// The kernel generator of `a` restricted to `support`, which must be a
/// circuit support.
fn circuit_on_support<T: echelon::Entry>(a: &IntMatrix, support: &[usize]) -> Result<Raw> {
    let sub = a.select_columns(support);
    let mut red = Reducer::<T>::new(&sub)?;
    let last = support.len() - 1;
    for j in 0..last {
        if !red.pivot(j, 0)? {
            return Err(Error::InvalidInput(format!("{support:?} is not a circuit support")));
        }
    }
    if !red.in_span(last) || !red.uses_all_pivots(last) {
        return Err(Error::InvalidInput(format!("{support:?} is not a circuit support")));
    }
    Ok(red
        .dependency(last)
        .into_iter()
        .map(|(i, v)| (support[i], v))
        .collect())
}

fn finish(a: &IntMatrix, raws: Vec<Raw>) -> Result<Vec<Circuit>> {
    raws.into_par_iter()
        .map(|raw| {
            let c = Circuit::from_sparse(a.cols(), raw)?;
            let v = c.vector();
            if !a.mul_vec(&v.0)?.iter().all(Zero::is_zero) {
                return Err(Error::InvalidInput(format!(
                    "enumerated vector {v:?} is not in the kernel"
                )));
            }
            Ok(c)
        })
        .collect()
}

/// Every circuit of `a` with support size at most `min(bound, rank + 1)`.
///
/// `a` has one column per design point. The route is chosen from the
/// options: `Auto` uses the dual route when no bound below `rank + 1` is
/// given and `K - rank < rank`, the primal route otherwise.
pub fn compute_circuits(
    a: &IntMatrix,
    support_bound: Option<usize>,
    opts: &EnumerationOptions,
) -> Result<CircuitBasis> {
    let k = a.cols();
    let rank = linalg::rank(a);
    let effective = support_bound.map_or(rank + 1, |b| b.min(rank + 1));
    let bounded = effective <= rank;
    let use_dual = match opts.strategy {
        Strategy::Dual => true,
        Strategy::Primal => false,
        Strategy::Auto => !bounded && k - rank < rank,
    };
    if use_dual && bounded {
        return Err(Error::InvalidInput(
            "the dual route enumerates every circuit; drop the support bound".into(),
        ));
    }
    let (circuits, strategy) = if use_dual {
        let supports = with_fallback(|| dual_supports::<i64>(a), || dual_supports::<BigInt>(a))?;
        let raws = supports
            .into_par_iter()
            .map(|s| with_fallback(|| circuit_on_support::<i64>(a, &s), || circuit_on_support::<BigInt>(a, &s)))
            .collect::<Result<Vec<_>>>()?;
        (finish(a, raws)?, BasisStrategy::Dual)
    } else {
        let predicted = predicted_primal_subsets(k, effective);
        if support_bound.is_none() && predicted > opts.budget {
            return Err(Error::Capacity {
                what: format!("primal circuit enumeration over {k} points up to support {effective}"),
                needed: predicted,
                budget: opts.budget,
            });
        }
        let raws = with_fallback(|| primal::<i64>(a, effective), || primal::<BigInt>(a, effective))?;
        let strategy = if bounded {
            BasisStrategy::Bounded
        } else {
            BasisStrategy::Primal
        };
        (finish(a, raws)?, strategy)
    };
    Ok(CircuitBasis::new(
        k,
        rank,
        circuits,
        fingerprint(a),
        bounded.then_some(effective),
        strategy,
    ))
}

/// Circuits of a model matrix (rows = points). Replicated rows are refused.
pub fn circuits_of_model(
    mm: &ModelMatrix,
    support_bound: Option<usize>,
    opts: &EnumerationOptions,
) -> Result<CircuitBasis> {
    let mut labels = mm.row_labels().to_vec();
    labels.sort_unstable();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidInput(
            "circuits are defined for sets of points; the matrix has replicated rows".into(),
        ));
    }
    compute_circuits(&mm.transpose(), support_bound, opts)
}

/// Circuits of the sub-fraction: those whose support lies inside it,
/// re-indexed to positions within the fraction.
///
/// A bounded parent gives a bounded result (complete up to the same bound).
pub fn restrict_circuits(basis: &CircuitBasis, sub: &Fraction) -> Result<CircuitBasis> {
    if sub.parent_size() != basis.num_points() {
        return Err(Error::Dimension(format!(
            "fraction over {} points, basis over {}",
            sub.parent_size(),
            basis.num_points()
        )));
    }
    if sub.has_replicates() {
        return Err(Error::InvalidInput("restriction needs a fraction without replicates".into()));
    }
    let pos: HashMap<usize, usize> = sub.rows().iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let n = sub.len();
    let circuits = basis
        .circuits()
        .iter()
        .filter(|c| c.support().iter().all(|r| pos.contains_key(r)))
        .map(|c| Circuit {
            len: n,
            support: c.support().iter().map(|r| pos[r]).collect(),
            coeffs: c.coeffs().to_vec(),
        })
        .collect();
    Ok(CircuitBasis::new(
        n,
        basis.rank(),
        circuits,
        basis.fingerprint().to_string(),
        basis.support_bound(),
        BasisStrategy::Restriction,
    ))
}

/// The circuits of smallest support.
pub fn minimal_support_subset(basis: &CircuitBasis) -> Result<CircuitBasis> {
    let min = basis
        .circuits()
        .iter()
        .map(Circuit::support_size)
        .min()
        .ok_or_else(|| Error::InvalidInput("empty circuit basis".into()))?;
    Ok(CircuitBasis::new(
        basis.num_points(),
        basis.rank(),
        basis
            .circuits()
            .iter()
            .filter(|c| c.support_size() == min)
            .cloned()
            .collect(),
        basis.fingerprint().to_string(),
        Some(min),
        BasisStrategy::MinimalSupport,
    ))
}

/// Circuits with support on at most `size` points.
pub fn support_at_most(basis: &CircuitBasis, size: usize) -> CircuitBasis {
    CircuitBasis::new(
        basis.num_points(),
        basis.rank(),
        basis
            .circuits()
            .iter()
            .filter(|c| c.support_size() <= size)
            .cloned()
            .collect(),
        basis.fingerprint().to_string(),
        Some(size.min(basis.support_bound().unwrap_or(usize::MAX))),
        basis.strategy(),
    )
}

/// The unique circuit left after deleting one column of a saturated design.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnDeletion {
    pub column: usize,
    pub label: String,
    pub circuit: IntVector,
    /// Zero entries; each marks a singular (p-1) x (p-1) submatrix.
    pub zeros: usize,
}

/// For every column of a nonsingular p x p model matrix, the generator of
/// the left kernel of the matrix with that column removed.
pub fn column_deletion_circuits(x: &ModelMatrix) -> Result<Vec<ColumnDeletion>> {
    let m = x.matrix();
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if x.rank() < x.p() {
        return Err(Error::Singular);
    }
    (0..x.p())
        .map(|c| {
            let keep: Vec<usize> = (0..x.p()).filter(|&j| j != c).collect();
            let a = m.select_columns(&keep).transpose();
            let v = linalg::nullvector_1d(&a)?;
            let zeros = v.0.iter().filter(|e| e.is_zero()).count();
            Ok(ColumnDeletion {
                column: c,
                label: x.col_labels()[c].clone(),
                circuit: v,
                zeros,
            })
        })
        .collect()
}

/// Relation of a circuit of the larger model to the smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum NestedClass {
    /// Also a circuit of the reduced model.
    Equal,
    /// Strictly contains the support of the given reduced-model circuit,
    /// which is not orthogonal to the dropped columns.
    Contains { witness: usize },
    /// Neither; contradicts the nesting relation.
    Violation,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NestedReport {
    /// One entry per circuit of the full model.
    pub classes: Vec<NestedClass>,
    /// Reduced-model circuits that lie in the kernel of the full model.
    pub lifted: usize,
    /// Of those, how many are circuits of the full model.
    pub lifted_ok: usize,
}

impl NestedReport {
    pub fn holds(&self) -> bool {
        self.lifted == self.lifted_ok && !self.classes.iter().any(|c| *c == NestedClass::Violation)
    }

    pub fn count(&self, pred: impl Fn(&NestedClass) -> bool) -> usize {
        self.classes.iter().filter(|c| pred(c)).count()
    }
}

/// Checks both directions of the nesting relation between the circuits of
/// `x2` and of `x2` with `dropped` columns removed, given both bases.
pub fn nested_model_check(
    x2: &ModelMatrix,
    dropped: &[usize],
    basis2: &CircuitBasis,
    basis1: &CircuitBasis,
) -> Result<NestedReport> {
    if !basis1.is_exhaustive() || !basis2.is_exhaustive() {
        return Err(Error::NotExhaustive(
            basis1.support_bound().or(basis2.support_bound()).unwrap_or(0),
        ));
    }
    let k = x2.n();
    if basis1.num_points() != k || basis2.num_points() != k {
        return Err(Error::Dimension("bases and matrix disagree on the point count".into()));
    }
    let a2 = x2.transpose();
    let xa_t = x2.matrix().select_columns(dropped).transpose();
    let set2: std::collections::HashSet<&Circuit> = basis2.circuits().iter().collect();
    let set1: std::collections::HashSet<&Circuit> = basis1.circuits().iter().collect();

    let mut lifted = 0;
    let mut lifted_ok = 0;
    for v in basis1.circuits() {
        if a2.mul_vec(&v.vector().0)?.iter().all(Zero::is_zero) {
            lifted += 1;
            lifted_ok += set2.contains(v) as usize;
        }
    }

    let supports1 = basis1.support_sets();
    let classes = basis2
        .circuits()
        .par_iter()
        .map(|u| {
            if set1.contains(u) {
                return Ok(NestedClass::Equal);
            }
            let su = u.support_set();
            for (i, s1) in supports1.iter().enumerate() {
                if s1.is_subset(&su) && s1 != &su {
                    let v = basis1.circuits()[i].vector();
                    if !xa_t.mul_vec(&v.0)?.iter().all(Zero::is_zero) {
                        return Ok(NestedClass::Contains { witness: i });
                    }
                }
            }
            Ok(NestedClass::Violation)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NestedReport {
        classes,
        lifted,
        lifted_ok,
    })
}
