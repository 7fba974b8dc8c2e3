//! Double description method for pointed polyhedral cones
//! `{y : a_i . y <= 0 for all i}`.
//!
//! The cone is seeded with a simplicial cone from `dim` linearly independent
//! rows, then the remaining rows are inserted one at a time, always picking
//! the row that cuts off the most current rays. Two rays are combined only
//! when they are adjacent in the current cone, which is decided by the rank
//! of the rows tight at both (after a cheap cardinality and containment
//! screen).
//!
//! Rays are kept as primitive integer vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rank_capped, Matrix};
use crate::error::{Error, Result};
use crate::Rational;

/// Fixed-capacity bit set over row indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowSet {
    words: Vec<u64>,
}

impl RowSet {
    pub fn new(capacity: usize) -> Self {
        RowSet {
            words: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &RowSet) -> RowSet {
        RowSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn intersection_len(&self, other: &RowSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_superset(&self, other: &RowSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == *b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits & (1 << b) != 0)
                .map(move |b| w * 64 + b)
        })
    }
}

/// A sparse constraint row.
pub type SparseRow = Vec<(usize, BigInt)>;

/// An extreme ray together with the rows it satisfies with equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub coords: Vec<BigInt>,
    pub zero: RowSet,
}

fn sparse_dot(row: &SparseRow, y: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, c) in row {
        if !y[*i].is_zero() {
            acc += c * &y[*i];
        }
    }
    acc
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

/// Extreme ray computation for `{y in R^dim : row . y <= 0}`.
pub struct DoubleDescription {
    dim: usize,
    rows: Vec<SparseRow>,
    seed: Vec<usize>,
}

impl DoubleDescription {
    pub fn new(dim: usize, rows: Vec<SparseRow>) -> Self {
        DoubleDescription {
            dim,
            rows,
            seed: Vec::new(),
        }
    }

    /// Rows to try first when choosing the initial simplicial cone.
    pub fn with_seed(mut self, seed: Vec<usize>) -> Self {
        self.seed = seed;
        self
    }

    fn dense_row(&self, i: usize) -> Vec<Rational> {
        let mut r = vec![Rational::zero(); self.dim];
        for (c, v) in &self.rows[i] {
            r[*c] = Rational::from_integer(v.clone());
        }
        r
    }

    fn rank_of(&self, rows: impl Iterator<Item = usize>, cap: usize) -> usize {
        let dense: Vec<Vec<Rational>> = rows.map(|i| self.dense_row(i)).collect();
        let m = Matrix::from_rows(self.dim, &dense).expect("rows have the cone dimension");
        rank_capped(&m, cap)
    }

    /// Greedy rank-revealing choice of `dim` independent rows, seed rows
    /// first. Returns them with the inverse of their matrix.
    fn initial_basis(&self) -> Result<(Vec<usize>, Vec<Vec<Rational>>)> {
        let order = self
            .seed
            .iter()
            .copied()
            .chain((0..self.rows.len()).filter(|i| !self.seed.contains(i)));
        // reduced basis rows, each with a pivot column
        let mut reduced: Vec<(usize, Vec<Rational>)> = Vec::new();
        let mut chosen = Vec::new();
        for i in order {
            if chosen.len() == self.dim {
                break;
            }
            let mut r = self.dense_row(i);
            for (pc, b) in &reduced {
                if !r[*pc].is_zero() {
                    let f = r[*pc].clone() / &b[*pc];
                    for (x, y) in r.iter_mut().zip(b) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
            }
            if let Some(pc) = r.iter().position(|x| !x.is_zero()) {
                reduced.push((pc, r));
                chosen.push(i);
            }
        }
        if chosen.len() < self.dim {
            return Err(Error::Input(format!(
                "cone is not pointed: constraint rank {} < dimension {}",
                chosen.len(),
                self.dim
            )));
        }
        // Gauss-Jordan on [B | I]
        let d = self.dim;
        let mut aug: Vec<Vec<Rational>> = chosen
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                let mut r = self.dense_row(i);
                r.extend((0..d).map(|j| {
                    if j == k {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                r
            })
            .collect();
        for col in 0..d {
            let p = (col..d)
                .find(|&r| !aug[r][col].is_zero())
                .expect("basis rows are independent");
            aug.swap(col, p);
            let piv = aug[col][col].clone();
            for x in aug[col].iter_mut() {
                *x /= &piv;
            }
            let pivot_row = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
            }
        }
        let inverse = aug.into_iter().map(|r| r[d..].to_vec()).collect();
        Ok((chosen, inverse))
    }

    /// All extreme rays of the cone, in no particular order.
    pub fn run(&self) -> Result<Vec<Ray>> {
        let d = self.dim;
        let m = self.rows.len();
        let (basis, inverse) = self.initial_basis()?;

        // ray j = -(column j of B^-1): tight on every basis row but j
        let mut rays: Vec<Ray> = (0..d)
            .map(|j| {
                let col: Vec<Rational> = (0..d).map(|i| -inverse[i][j].clone()).collect();
                let ints = crate::arith::primitive(&col)
                    .into_iter()
                    .map(|x| x.to_integer())
                    .collect();
                let mut zero = RowSet::new(m);
                for (k, &b) in basis.iter().enumerate() {
                    if k != j {
                        zero.insert(b);
                    }
                }
                Ray { coords: ints, zero }
            })
            .collect();

        let mut done = vec![false; m];
        for &b in &basis {
            done[b] = true;
        }
        let mut remaining = m - d;
        while remaining > 0 {
            // values of every pending row on every ray
            let mut best: Option<(usize, usize, Vec<BigInt>)> = None;
            for i in (0..m).filter(|&i| !done[i]) {
                let vals: Vec<BigInt> = rays.iter().map(|r| sparse_dot(&self.rows[i], &r.coords)).collect();
                let cut = vals.iter().filter(|v| v.is_positive()).count();
                if best.as_ref().is_none_or(|(_, c, _)| cut > *c) {
                    best = Some((i, cut, vals));
                }
            }
            let (row, _, vals) = best.expect("a pending row exists");
            done[row] = true;
            remaining -= 1;
            rays = self.insert_row(row, rays, &vals);
        }
        Ok(rays)
    }

    fn insert_row(&self, row: usize, rays: Vec<Ray>, vals: &[BigInt]) -> Vec<Ray> {
        let d = self.dim;
        let plus: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        if plus.is_empty() {
            let mut rays = rays;
            for (r, v) in rays.iter_mut().zip(vals) {
                if v.is_zero() {
                    r.zero.insert(row);
                }
            }
            return rays;
        }
        let minus: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();

        let mut created = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let (rp, rq) = (&rays[p], &rays[q]);
                let common = rp.zero.intersection(&rq.zero);
                let size = common.len();
                if size + 2 < d {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(k, r)| {
                    k != p && k != q && r.zero.is_superset(&common)
                });
                if blocked {
                    continue;
                }
                if self.rank_of(common.iter(), d - 1) != d - 2 {
                    continue;
                }
                // vals[p] > 0 > vals[q]
                let coords: Vec<BigInt> = rp
                    .coords
                    .iter()
                    .zip(&rq.coords)
                    .map(|(a, b)| &vals[p] * b - &vals[q] * a)
                    .collect();
                let mut zero = common;
                zero.insert(row);
                created.push(Ray {
                    coords: make_primitive(coords),
                    zero,
                });
            }
        }

        let mut next: Vec<Ray> = rays
            .into_iter()
            .zip(vals)
            .filter(|(_, v)| !v.is_positive())
            .map(|(mut r, v)| {
                if v.is_zero() {
                    r.zero.insert(row);
                }
                r
            })
            .collect();
        next.extend(created);
        next
    }
}
