//! Incremental fraction-free Gauss-Jordan elimination.
//!
//! A [`Reducer`] holds `T * A` for some invertible `T`, where the columns
//! pivoted so far are reduced to `d * e_r` (`d` the running pivot, `r` their
//! pivot row). After `k` pivots every stored entry is a minor of `A` of order
//! `k` or `k + 1`, so the update `(piv * a - f * b) / d` divides exactly.
//!
//! With that form a column `j` lies in the span of the pivoted columns iff it
//! is zero on every free row, and its coefficient on the `t`-th pivoted
//! column is `m[r_t][j] / d`. Cloning a reducer and pivoting one more column
//! is how the depth-first enumerations walk the independent sets.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Entry type for the elimination engine.
pub trait Entry: Clone + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    /// `(piv * a - f * b) / d`, where the division is known to be exact.
    fn cross(piv: &Self, a: &Self, f: &Self, b: &Self, d: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
}

impl Entry for i64 {
    #[inline]
    fn zero() -> Self {
        0
    }
    #[inline]
    fn one() -> Self {
        1
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn cross(piv: &i64, a: &i64, f: &i64, b: &i64, d: &i64) -> Option<i64> {
        let num = (*piv as i128) * (*a as i128) - (*f as i128) * (*b as i128);
        let q = match *d {
            1 => num,
            -1 => -num,
            d => {
                debug_assert_eq!(num % d as i128, 0, "inexact fraction-free division");
                num / d as i128
            }
        };
        i64::try_from(q).ok()
    }
    fn neg(&self) -> Option<i64> {
        self.checked_neg()
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn cross(piv: &Self, a: &Self, f: &Self, b: &Self, d: &Self) -> Option<Self> {
        let num = piv * a - f * b;
        if d.is_one() {
            Some(num)
        } else {
            debug_assert!(Zero::is_zero(&(&num % d)), "inexact fraction-free division");
            Some(num / d)
        }
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Incremental fraction-free Gauss-Jordan state over the columns of a matrix.
#[derive(Clone, Debug)]
pub struct Reducer<T: Entry> {
    rows: usize,
    cols: usize,
    m: Vec<T>,
    /// (column, pivot row) in pivoting order.
    pivots: Vec<(usize, usize)>,
    free_rows: Vec<usize>,
    det: T,
}

impl<T: Entry> Reducer<T> {
    pub fn new(mat: &IntMatrix) -> Result<Self> {
        let m = mat
            .entries()
            .iter()
            .map(T::from_big)
            .collect::<Option<Vec<T>>>()
            .ok_or(Error::Overflow)?;
        Ok(Reducer {
            rows: mat.rows(),
            cols: mat.cols(),
            m,
            pivots: Vec::new(),
            free_rows: (0..mat.rows()).collect(),
            det: T::one(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of pivoted columns.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[(usize, usize)] {
        &self.pivots
    }

    /// The common diagonal value of the pivoted columns.
    pub fn scale(&self) -> &T {
        &self.det
    }

    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> &T {
        &self.m[r * self.cols + c]
    }

    /// True when column `j` is a combination of the pivoted columns.
    #[inline]
    pub fn in_span(&self, j: usize) -> bool {
        self.free_rows.iter().all(|&r| self.m[r * self.cols + j].is_zero())
    }

    /// Numerator of the coefficient of the `t`-th pivoted column in the
    /// expansion of column `j` (denominator [`Reducer::scale`]).
    #[inline]
    pub fn coefficient(&self, t: usize, j: usize) -> &T {
        &self.m[self.pivots[t].1 * self.cols + j]
    }

    /// True when column `j` is in the span and uses every pivoted column.
    pub fn uses_all_pivots(&self, j: usize) -> bool {
        self.pivots
            .iter()
            .all(|&(_, r)| !self.m[r * self.cols + j].is_zero())
    }

    /// Pivots on column `j`, updating only columns `from..cols`.
    ///
    /// Returns `Ok(false)` and leaves the state untouched when `j` is already
    /// in the span. Columns before `from` become stale.
    pub fn pivot(&mut self, j: usize, from: usize) -> Result<bool> {
        let cols = self.cols;
        let Some(pos) = self
            .free_rows
            .iter()
            .position(|&r| !self.m[r * cols + j].is_zero())
        else {
            return Ok(false);
        };
        let pr = self.free_rows.swap_remove(pos);
        let piv = self.m[pr * cols + j].clone();
        let prow: Vec<T> = self.m[pr * cols + from..(pr + 1) * cols].to_vec();
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let f = self.m[r * cols + j].clone();
            let row = &mut self.m[r * cols + from..(r + 1) * cols];
            for (x, b) in row.iter_mut().zip(prow.iter()) {
                *x = T::cross(&piv, x, &f, b, &self.det).ok_or(Error::Overflow)?;
            }
        }
        self.det = piv;
        self.pivots.push((j, pr));
        Ok(true)
    }

    /// The integer dependency `d * e_j - sum_t m[r_t][j] * e_{c_t}` of a
    /// column in the span, as sparse `(column, value)` pairs (not reduced).
    pub fn dependency(&self, j: usize) -> Vec<(usize, BigInt)> {
        let mut out = Vec::with_capacity(self.pivots.len() + 1);
        for &(c, r) in &self.pivots {
            let v = &self.m[r * self.cols + j];
            if !v.is_zero() {
                out.push((c, -v.to_big()));
            }
        }
        out.push((j, self.det.to_big()));
        out
    }
}

/// Pivots every column in order and returns the reducer plus the kernel
/// basis (one integer vector per non-pivot column, not reduced).
pub fn full_reduce<T: Entry>(mat: &IntMatrix) -> Result<(Reducer<T>, Vec<Vec<T>>)> {
    let mut red = Reducer::<T>::new(mat)?;
    let mut free = Vec::new();
    for j in 0..mat.cols() {
        if !red.pivot(j, 0)? {
            free.push(j);
        }
    }
    let n = mat.cols();
    let kernel = free
        .iter()
        .map(|&j| {
            let mut v = vec![T::zero(); n];
            v[j] = red.det.clone();
            for &(c, r) in &red.pivots {
                let e = red.entry(r, j);
                if !e.is_zero() {
                    v[c] = e.neg().ok_or(Error::Overflow)?;
                }
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((red, kernel))
}

/// Number of `k`-subsets of columns that are linearly independent.
pub fn count_independent<T: Entry>(mat: &IntMatrix, k: usize) -> Result<u128> {
    if k == 0 {
        return Ok(1);
    }
    if k > mat.rows() || k > mat.cols() {
        return Ok(0);
    }
    let red = Reducer::<T>::new(mat)?;
    let mut count = 0u128;
    count_rec(&red, 0, k, &mut count)?;
    Ok(count)
}

fn count_rec<T: Entry>(red: &Reducer<T>, start: usize, k: usize, count: &mut u128) -> Result<()> {
    let n = red.cols();
    let depth = red.rank();
    let need = k - depth;
    if need == 1 {
        *count += (start..n).filter(|&j| !red.in_span(j)).count() as u128;
        return Ok(());
    }
    // Leave room for the `need - 1` columns still to choose after `j`.
    for j in start..=n - need {
        if red.in_span(j) {
            continue;
        }
        let mut child = red.clone();
        child.pivot(j, j + 1)?;
        count_rec(&child, j + 1, k, count)?;
    }
    Ok(())
}

/// Runs `f` with the `i64` engine, retrying with arbitrary precision on
/// overflow.
pub fn with_fallback<R>(
    f64bit: impl FnOnce() -> Result<R>,
    fbig: impl FnOnce() -> Result<R>,
) -> Result<R> {
    match f64bit() {
        Err(Error::Overflow) => fbig(),
        other => other,
    }
}

/// Counts independent `k`-column subsets, exact for any input size.
pub fn count_independent_exact(mat: &IntMatrix, k: usize) -> Result<u128> {
    with_fallback(
        || count_independent::<i64>(mat, k),
        || count_independent::<BigInt>(mat, k),
    )
}

/// Kernel basis of `mat` as exact integer vectors (primitive, canonical).
pub fn fast_kernel(mat: &IntMatrix) -> Result<Vec<crate::linalg::IntVector>> {
    fn go<T: Entry>(mat: &IntMatrix) -> Result<Vec<crate::linalg::IntVector>> {
        let (_, k) = full_reduce::<T>(mat)?;
        Ok(k
            .into_iter()
            .map(|v| crate::linalg::IntVector(v.iter().map(T::to_big).collect()).canonicalize())
            .collect())
    }
    with_fallback(|| go::<i64>(mat), || go::<BigInt>(mat))
}
