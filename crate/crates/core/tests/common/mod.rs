//! Brute-force vertex oracle shared by the integration tests.
//!
//! Builds the inequalities of m_n from scratch and solves every square
//! subsystem by its own Gauss-Jordan elimination, so nothing here goes
//! through the library's linear algebra or double description code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn pair(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // pairs with first node < i, then the offset inside row i
    (1..i).map(|a| n - a).sum::<usize>() + (j - i - 1)
}

/// Rows `(normal, rhs)` of all triangle and perimeter inequalities.
pub fn inequalities(n: usize) -> Vec<(Vec<i64>, i64)> {
    let d = n * (n - 1) / 2;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let (ij, ik, jk) = (pair(n, i, j), pair(n, i, k), pair(n, j, k));
                for (plus, m1, m2) in [(jk, ij, ik), (ik, ij, jk), (ij, ik, jk)] {
                    let mut a = vec![0; d];
                    a[plus] = 1;
                    a[m1] = -1;
                    a[m2] = -1;
                    out.push((a, 0));
                }
                let mut a = vec![0; d];
                a[ij] = 1;
                a[ik] = 1;
                a[jk] = 1;
                out.push((a, 2));
            }
        }
    }
    out
}

/// Unique solution of a square system, or `None` when singular.
fn solve_square(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let d = m.len();
    for c in 0..d {
        let p = (c..d).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = BigRational::one() / m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = &*x - p * &f;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d].clone()).collect())
}

fn subsets(len: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in start..len {
        if len - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(len, k, i + 1, cur, out);
        cur.pop();
    }
}

/// Every feasible basic solution of m_n, as sorted coordinate vectors.
pub fn brute_force_vertices(n: usize) -> BTreeSet<Vec<BigRational>> {
    let ineq = inequalities(n);
    let d = n * (n - 1) / 2;
    let mut choices = Vec::new();
    subsets(ineq.len(), d, 0, &mut Vec::new(), &mut choices);
    let mut out = BTreeSet::new();
    for rows in choices {
        let m = rows
            .iter()
            .map(|&r| {
                let (a, b) = &ineq[r];
                a.iter()
                    .chain(std::iter::once(b))
                    .map(|&v| BigRational::from_integer(BigInt::from(v)))
                    .collect()
            })
            .collect();
        let Some(x) = solve_square(m) else { continue };
        let feasible = ineq.iter().all(|(a, b)| {
            let lhs: BigRational = a
                .iter()
                .zip(&x)
                .map(|(&c, v)| v * BigRational::from_integer(BigInt::from(c)))
                .sum();
            !(lhs - BigRational::from_integer(BigInt::from(*b))).is_positive()
        });
        if feasible {
            out.insert(x);
        }
    }
    out
}
