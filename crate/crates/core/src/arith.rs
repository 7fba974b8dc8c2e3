//! Exact linear algebra over an ordered field.
//!
//! Everything in the crate runs on [`crate::Rational`] (arbitrary precision),
//! but the elimination routines only need field operations, so they are
//! written against the [`Field`] trait. Any `num_rational::Ratio<T>` over a
//! signed integer type qualifies.

use std::fmt::{self, Debug};
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{NumAssign, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// An exact ordered field. Implemented for `Ratio<T>`; floating point types
/// are deliberately excluded since every test in this crate is an equality
/// test.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
}

impl<T> Field for Ratio<T> where T: Clone + Debug + Integer + Signed + NumAssign {}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Debug> Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Field> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Input(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.data[i * size + i] = T::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. An empty row list yields a
    /// `0 x cols` matrix.
    pub fn from_rows<R: AsRef<[T]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Input(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Computes `self * x`.
    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::Input(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), x)).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * cols);
        head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
    }

    /// In-place reduction to reduced row echelon form. Returns the pivot
    /// column of each nonzero row, in order.
    ///
    /// `limit` stops the sweep once that many pivots are found; `None` runs
    /// to completion.
    fn reduce(&mut self, reduced: bool, limit: Option<usize>) -> Vec<usize> {
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == self.rows || limit.is_some_and(|l| pivots.len() >= l) {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);

            let pivot = self.data[row * cols + col].clone();
            if reduced && !pivot.is_one() {
                for c in col..cols {
                    self.data[row * cols + c] /= &pivot;
                }
            }
            let start = if reduced { 0 } else { row + 1 };
            for r in start..self.rows {
                if r == row || self.data[r * cols + col].is_zero() {
                    continue;
                }
                let mut factor = self.data[r * cols + col].clone();
                if !reduced {
                    factor /= &pivot;
                }
                self.data[r * cols + col] = T::zero();
                for c in col + 1..cols {
                    let src = &self.data[row * cols + c];
                    if src.is_zero() {
                        continue;
                    }
                    let mut term = src.clone();
                    term *= &factor;
                    self.data[r * cols + c] -= &term;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

pub(crate) fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let mut t = x.clone();
        t *= y;
        acc += &t;
    }
    acc
}

/// Rank over the field, by fraction-preserving Gaussian elimination.
pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    m.clone().reduce(false, None).len()
}

/// Like [`rank`], but stops as soon as the rank is known to be at least
/// `cap`. Returns `min(rank, cap)`.
pub fn rank_capped<T: Field>(m: &Matrix<T>, cap: usize) -> usize {
    m.clone().reduce(false, Some(cap)).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column of the reduced
/// echelon form.
pub fn nullspace_basis<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let mut r = m.clone();
    let pivots = r.reduce(true, None);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![T::zero(); m.cols];
            v[free] = T::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            v
        })
        .collect()
}

/// Solves `m x = b` exactly. Returns `Ok(None)` when the system is
/// inconsistent; free variables of a consistent system are set to zero.
pub fn solve<T: Field>(m: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if b.len() != m.rows {
        return Err(Error::Input(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    let cols = m.cols + 1;
    let mut data = Vec::with_capacity(m.rows * cols);
    for (r, rhs) in b.iter().enumerate() {
        data.extend_from_slice(m.row(r));
        data.push(rhs.clone());
    }
    let mut aug = Matrix {
        rows: m.rows,
        cols,
        data,
    };
    let pivots = aug.reduce(true, None);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![T::zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(i, m.cols).clone();
    }
    Ok(Some(x))
}

/// Scales a nonzero rational vector by a positive factor so that all
/// entries are integers with gcd 1. The zero vector is returned unchanged.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}

/// Parses `"p/q"` or `"p"`. The result is normalized; a zero denominator is
/// rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn int_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| q(x, 1)).collect())
            .collect();
        Matrix::from_rows(cols, &rows).unwrap()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(rank(&Matrix::<Rational>::identity(2)), 2);
        assert_eq!(rank(&Matrix::<Rational>::zeros(3, 5)), 0);
        assert_eq!(rank(&Matrix::<Rational>::zeros(0, 4)), 0);
    }

    #[test]
    fn rank_capped_stops_early() {
        let m = Matrix::<Rational>::identity(5);
        assert_eq!(rank_capped(&m, 3), 3);
        assert_eq!(rank_capped(&m, 9), 5);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(nullspace_basis(&Matrix::<Rational>::identity(2)).is_empty());
    }

    #[test]
    fn nullspace_of_difference_row() {
        let basis = nullspace_basis(&int_matrix(&[&[1, -1]]));
        assert_eq!(basis, vec![vec![q(1, 1), q(1, 1)]]);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let m = int_matrix(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let basis = nullspace_basis(&m);
        assert_eq!(basis.len(), 4 - rank(&m));
        for v in &basis {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_identity() {
        let b = vec![q(3, 2), q(-7, 1)];
        assert_eq!(solve(&Matrix::identity(2), &b).unwrap(), Some(b));
    }

    #[test]
    fn solve_underdetermined_row() {
        let x = solve(&int_matrix(&[&[2, 0]]), &[q(1, 1)]).unwrap().unwrap();
        assert_eq!(x[0], q(1, 2));
    }

    #[test]
    fn solve_inconsistent() {
        let m = int_matrix(&[&[1, 0], &[1, 0]]);
        assert_eq!(solve(&m, &[q(1, 1), q(2, 1)]).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = int_matrix(&[&[1, 0]]);
        assert!(matches!(
            solve(&m, &[q(1, 1), q(2, 1)]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn from_rows_rejects_ragged() {
        let rows = vec![vec![q(1, 1)], vec![q(1, 1), q(2, 1)]];
        assert!(Matrix::from_rows(1, &rows).is_err());
        assert!(Matrix::new(2, 2, vec![q(1, 1)]).is_err());
    }

    #[test]
    fn works_over_machine_ratios() {
        let m = Matrix::<Ratio<i64>>::identity(3);
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn rationals_stay_normalized() {
        let x = parse_rational("6/-4").unwrap();
        assert_eq!(x, q(-3, 2));
        assert!(x.denom() > &BigInt::zero());
        let mut y = q(1, 6);
        y -= &q(-1, 3);
        assert_eq!((y.numer().clone(), y.denom().clone()), (1.into(), 2.into()));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/2/3").is_err());
        assert_eq!(parse_rational("-5").unwrap(), q(-5, 1));
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![q(1, 3), q(-2, 3), q(0, 1)];
        assert_eq!(primitive(&v), vec![q(1, 1), q(-2, 1), q(0, 1)]);
        let w = vec![q(4, 1), q(6, 1)];
        assert_eq!(primitive(&w), vec![q(2, 1), q(3, 1)]);
        let neg = vec![q(-2, 1), q(-4, 1)];
        assert_eq!(primitive(&neg), vec![q(-1, 1), q(-2, 1)]);
    }
}
