//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Rank and
//! determinant use fraction-free (Bareiss) elimination, kernels come out as
//! primitive integer vectors with a canonical sign (first nonzero entry
//! positive). The [`echelon`] submodule holds the incremental fixed-width
//! engine that the enumeration code builds on.

pub mod echelon;

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Rows in the given order; repeats allowed.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for r in 0..self.rows {
            for &c in idx {
                data.push(self.get(r, c).clone());
            }
        }
        IntMatrix {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.data.iter().map(|x| x.to_i64()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r).iter().join(" "))?;
        }
        write!(f, "]")
    }
}

/// Integer vector with helpers for supports and canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntVector(pub Vec<BigInt>);

impl IntVector {
    pub fn from_i64(v: &[i64]) -> Self {
        IntVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// gcd of the nonzero entries is 1 (the zero vector is not primitive).
    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// First nonzero entry is positive.
    pub fn is_canonical_sign(&self) -> bool {
        self.0
            .iter()
            .find(|x| !x.is_zero())
            .is_none_or(|x| x.is_positive())
    }

    /// Divides by the content and flips the sign so the first nonzero entry
    /// is positive.
    pub fn canonicalize(mut self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self;
        }
        let flip = self.0.iter().find(|x| !x.is_zero()).unwrap().is_negative();
        for x in self.0.iter_mut() {
            *x = &*x / &g;
            if flip {
                *x = -&*x;
            }
        }
        self
    }

    /// Positive part `u+`.
    pub fn positive_part(&self) -> IntVector {
        IntVector(
            self.0
                .iter()
                .map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() })
                .collect(),
        )
    }

    /// Negative part `u-`, so that `u = u+ - u-`.
    pub fn negative_part(&self) -> IntVector {
        IntVector(
            self.0
                .iter()
                .map(|x| if x.is_negative() { -x } else { BigInt::zero() })
                .collect(),
        )
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| x.to_i64()).collect()
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Fraction-free elimination state shared by rank/det/kernel.
struct Bareiss {
    m: Vec<Vec<BigInt>>,
    pivots: Vec<(usize, usize)>,
    det: BigInt,
    swaps: usize,
}

/// Row-echelon form by Bareiss elimination. Each pivot entry after step k is
/// a k x k minor of the input, so every division below is exact.
fn bareiss(mat: &IntMatrix) -> Bareiss {
    let (rows, cols) = (mat.rows, mat.cols);
    let mut m: Vec<Vec<BigInt>> = (0..rows).map(|r| mat.row(r).to_vec()).collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if pr != r {
            m.swap(pr, r);
            swaps += 1;
        }
        let piv = m[r][c].clone();
        for i in r + 1..rows {
            let f = m[i][c].clone();
            for j in c..cols {
                let v = (&piv * &m[i][j] - &f * &m[r][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = piv;
        pivots.push((r, c));
        r += 1;
    }
    Bareiss {
        det: prev,
        m,
        pivots,
        swaps,
    }
}

/// Exact rank.
pub fn rank(m: &IntMatrix) -> usize {
    bareiss(m).pivots.len()
}

/// Exact determinant.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows == 0 {
        return Ok(BigInt::one());
    }
    let b = bareiss(m);
    if b.pivots.len() < m.rows {
        return Ok(BigInt::zero());
    }
    // The last pivot of a full-rank square Bareiss run is the determinant of
    // the row-swapped matrix.
    let d = b.m[m.rows - 1][m.cols - 1].clone();
    debug_assert_eq!(d, b.det);
    Ok(if b.swaps % 2 == 1 { -d } else { d })
}

/// Primitive integer basis of the rational right kernel `{v : M v = 0}`.
///
/// One vector per non-pivot column, each canonically signed.
pub fn kernel_basis(m: &IntMatrix) -> Vec<IntVector> {
    let cols = m.cols;
    let b = bareiss(m);
    let rank = b.pivots.len();
    // Back-substitute to a fraction-free reduced form: scale so every pivot
    // row expresses its pivot variable in terms of the free ones.
    let mut red: Vec<Vec<BigInt>> = b.m[..rank].to_vec();
    for k in (0..rank).rev() {
        let (_, ck) = b.pivots[k];
        for i in 0..k {
            let f = red[i][ck].clone();
            if f.is_zero() {
                continue;
            }
            let pk = red[k][ck].clone();
            let g = f.gcd(&pk);
            let (a, bb) = (&pk / &g, &f / &g);
            for j in 0..cols {
                let v = &a * &red[i][j] - &bb * &red[k][j];
                red[i][j] = v;
            }
            let content = red[i].iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if !content.is_zero() && !content.is_one() {
                for x in red[i].iter_mut() {
                    *x = &*x / &content;
                }
            }
        }
    }
    let pivot_cols: Vec<usize> = b.pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::with_capacity(cols - rank);
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        // x_free = L, x_{pc_k} = -red[k][free] * L / red[k][pc_k]
        let l = pivot_cols
            .iter()
            .enumerate()
            .fold(BigInt::one(), |acc, (k, &pc)| acc.lcm(&red[k][pc]));
        let mut v = vec![BigInt::zero(); cols];
        v[free] = l.clone();
        for (k, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -(&red[k][free] * &l) / &red[k][pc];
        }
        out.push(IntVector(v).canonicalize());
    }
    out
}

/// The primitive, canonically signed generator of a one-dimensional kernel.
pub fn nullvector_1d(m: &IntMatrix) -> Result<IntVector> {
    let mut basis = kernel_basis(m);
    if basis.len() != 1 {
        return Err(Error::KernelDimension(basis.len()));
    }
    Ok(basis.pop().unwrap())
}

/// Determinant of a small square matrix of machine integers.
fn det_small(a: &[i64], n: usize) -> i128 {
    let mut m: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut prev: i128 = 1;
    let mut sign = 1;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let Some(pr) = (k + 1..n).find(|&i| m[i * n + k] != 0) else {
                return 0;
            };
            for j in 0..n {
                m.swap(k * n + j, pr * n + j);
            }
            sign = -sign;
        }
        let piv = m[k * n + k];
        for i in k + 1..n {
            let f = m[i * n + k];
            for j in k + 1..n {
                m[i * n + j] = (piv * m[i * n + j] - f * m[k * n + j]) / prev;
            }
        }
        prev = piv;
    }
    sign * prev
}

/// Brute-force total unimodularity check over every square submatrix of
/// order at most `max_order`.
///
/// Returns false immediately when an entry lies outside {-1, 0, 1}.
pub fn is_totally_unimodular(m: &IntMatrix, max_order: usize) -> bool {
    let Some(vals) = m.to_i64() else {
        return false;
    };
    if vals.iter().any(|x| x.abs() > 1) {
        return false;
    }
    let top = max_order.min(m.rows).min(m.cols);
    let cols = m.cols;
    (2..=top).all(|k| {
        let row_sets: Vec<Vec<usize>> = (0..m.rows).combinations(k).collect();
        row_sets.par_iter().all(|rs| {
            let mut buf = vec![0i64; k * k];
            (0..cols).combinations(k).all(|cs| {
                for (i, &r) in rs.iter().enumerate() {
                    for (j, &c) in cs.iter().enumerate() {
                        buf[i * k + j] = vals[r * cols + c];
                    }
                }
                det_small(&buf, k).abs() <= 1
            })
        })
    })
}

/// `det(M^t M)` computed directly.
pub fn cauchy_binet_sum(m: &IntMatrix) -> Result<BigInt> {
    if m.rows < m.cols {
        return Err(Error::Dimension(format!(
            "Cauchy-Binet needs rows >= cols, got {}x{}",
            m.rows, m.cols
        )));
    }
    det(&m.transpose().mul(m)?)
}

/// Sum of squared maximal minors over all `cols`-row subsets.
pub fn squared_minor_sum(m: &IntMatrix) -> Result<BigInt> {
    if m.rows < m.cols {
        return Err(Error::Dimension(format!(
            "Cauchy-Binet needs rows >= cols, got {}x{}",
            m.rows, m.cols
        )));
    }
    let p = m.cols;
    (0..m.rows)
        .combinations(p)
        .map(|rs| det(&m.select_rows(&rs)).map(|d| &d * &d))
        .sum()
}

/// Both routes of the Cauchy-Binet identity: `(direct, enumerated)`.
pub fn cauchy_binet_verify(m: &IntMatrix) -> Result<(BigInt, BigInt)> {
    Ok((cauchy_binet_sum(m)?, squared_minor_sum(m)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn rank_and_det_basics() {
        assert_eq!(rank(&IntMatrix::identity(3)), 3);
        assert_eq!(det(&IntMatrix::identity(5)).unwrap(), big(1));
        assert_eq!(det(&IntMatrix::from_rows(&[[1, 1], [1, 1]])).unwrap(), big(0));
        assert_eq!(det(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap(), big(-1));
        assert_eq!(
            det(&IntMatrix::from_rows(&[[2, 0, 1], [1, 3, 2], [1, 1, 1]])).unwrap(),
            big(2 * (3 - 2) + (1 - 3))
        );
        assert!(matches!(
            det(&IntMatrix::from_rows(&[[1, 2, 3]])),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&IntMatrix::identity(4)).is_empty());
        let k = kernel_basis(&IntMatrix::from_rows(&[[2, 4]]));
        assert_eq!(k, vec![IntVector::from_i64(&[2, -1])]);
        let v = nullvector_1d(&IntMatrix::from_rows(&[[1, 1], [1, 1]])).unwrap();
        assert_eq!(v, IntVector::from_i64(&[1, -1]));
        assert!(matches!(
            nullvector_1d(&IntMatrix::identity(2)),
            Err(Error::KernelDimension(0))
        ));
    }

    #[test]
    fn quadratic_nullvector_matches_hand_solution() {
        // Columns are the points -3,-2,-1,0 of the quadratic model.
        // Third finite difference: (1,-3,3,-1) annihilates 1, x, x^2.
        let a = IntMatrix::from_rows(&[[1, 1, 1, 1], [-3, -2, -1, 0], [9, 4, 1, 0]]);
        let v = nullvector_1d(&a).unwrap();
        assert_eq!(v, IntVector::from_i64(&[1, -3, 3, -1]));
    }

    #[test]
    fn tu_examples() {
        assert!(!is_totally_unimodular(
            &IntMatrix::from_rows(&[[1, 1], [-1, 1]]),
            2
        ));
        // Consecutive-ones (interval) matrix.
        let interval = IntMatrix::from_rows(&[
            [1, 1, 0, 0],
            [0, 1, 1, 1],
            [0, 0, 1, 1],
            [1, 1, 1, 0],
        ]);
        assert!(is_totally_unimodular(&interval, 4));
        assert!(!is_totally_unimodular(&IntMatrix::from_rows(&[[2]]), 1));
    }

    #[test]
    fn cauchy_binet_small() {
        let m = IntMatrix::from_rows(&[[1, 0], [0, 1], [0, 0]]);
        assert_eq!(cauchy_binet_sum(&m).unwrap(), big(1));
        let m = IntMatrix::from_rows(&[[1, 2], [3, 4], [5, 7], [-1, 2]]);
        let (a, b) = cauchy_binet_verify(&m).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_form() {
        let v = IntVector::from_i64(&[0, -4, 2, 6]).canonicalize();
        assert_eq!(v, IntVector::from_i64(&[0, 2, -1, -3]));
        assert!(v.is_primitive() && v.is_canonical_sign());
        assert_eq!(v.positive_part(), IntVector::from_i64(&[0, 2, 0, 0]));
        assert_eq!(v.negative_part(), IntVector::from_i64(&[0, 0, 1, 3]));
    }
}
