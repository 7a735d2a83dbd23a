//! Matrices over Laurent rings: rank at a character, generic rank, and minors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeSet, HashMap};

use super::character::{CharacterPoint, Scalar};
use super::field::Fp;
use super::laurent::{Coeff, LaurentPoly};
use crate::error::{Error, Result};

pub type LaurentMatrix<C = BigRational> = Vec<Vec<LaurentPoly<C>>>;

/// Integral domains with exact division, enough for Bareiss elimination.
pub trait ExactDomain: Clone {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    /// `a * d - b * c`
    fn cross(a: &Self, d: &Self, b: &Self, c: &Self) -> Self;
    fn div_exact(&self, by: &Self) -> Option<Self>;
}

impl ExactDomain for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn cross(a: &Self, d: &Self, b: &Self, c: &Self) -> Self {
        a * d - b * c
    }
    fn div_exact(&self, by: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(by);
        Zero::is_zero(&r).then_some(q)
    }
}

impl<C: Coeff> ExactDomain for LaurentPoly<C> {
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.nvars())
    }
    fn cross(a: &Self, d: &Self, b: &Self, c: &Self) -> Self {
        &(a * d) - &(b * c)
    }
    fn div_exact(&self, by: &Self) -> Option<Self> {
        LaurentPoly::div_exact(self, by)
    }
}

/// Rank by Bareiss fraction-free elimination; every division is exact.
pub fn bareiss_rank<T: ExactDomain>(mut a: Vec<Vec<T>>) -> Result<usize> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut prev: Option<T> = None;
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            for j in c + 1..n {
                let num = T::cross(&a[r][c], &a[i][j], &a[i][c], &a[r][j]);
                a[i][j] = match &prev {
                    None => num,
                    Some(d) => num
                        .div_exact(d)
                        .ok_or_else(|| Error::Computation("inexact Bareiss division".into()))?,
                };
            }
        }
        for row in a.iter_mut().skip(r + 1) {
            row[c] = row[c].zero_like();
        }
        prev = Some(a[r][c].clone());
        r += 1;
    }
    Ok(r)
}

/// Rank of a rational matrix: rows are scaled to integers, then Bareiss.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    bareiss_rank(ints).expect("integer Bareiss divisions are exact")
}

/// Rank over `F_p` by Gaussian elimination.
pub fn rank_mod(mut a: Vec<Vec<Fp>>) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..m {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c] * inv;
            for j in c..n {
                let v = a[r][j];
                a[i][j] = a[i][j] - f * v;
            }
        }
        r += 1;
    }
    r
}

/// Exact rank of `m` evaluated at `rho`.
pub fn matrix_rank_at<C: Coeff>(m: &LaurentMatrix<C>, rho: &CharacterPoint) -> Result<usize> {
    let vals: Vec<Vec<Scalar>> = m
        .iter()
        .map(|row| row.iter().map(|f| f.evaluate(rho)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(rank_of_scalars(vals))
}

pub(crate) fn rank_of_scalars(vals: Vec<Vec<Scalar>>) -> usize {
    let is_mod = vals.iter().flatten().any(|s| matches!(s, Scalar::Mod(_)));
    if is_mod {
        let rows = vals
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|s| match s {
                        Scalar::Mod(x) => x,
                        Scalar::Rational(_) => unreachable!("mixed fields in one matrix"),
                    })
                    .collect()
            })
            .collect();
        rank_mod(rows)
    } else {
        let rows: Vec<Vec<BigRational>> = vals
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|s| match s {
                        Scalar::Rational(q) => q,
                        Scalar::Mod(_) => unreachable!(),
                    })
                    .collect()
            })
            .collect();
        rank_rational(&rows)
    }
}

/// Rank over the fraction field of the Laurent ring.
pub fn generic_rank<C: Coeff>(m: &LaurentMatrix<C>) -> Result<usize> {
    bareiss_rank(m.clone())
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out
}

/// All nonzero `size x size` minors of `m`, keyed by (row mask, column mask).
///
/// Laplace expansion along the first row of each row set, memoized level by level.
pub fn raw_minors<C: Coeff>(m: &LaurentMatrix<C>, size: usize) -> Result<Vec<((u64, u64), LaurentPoly<C>)>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if size == 0 || size > rows.min(cols) {
        return Err(Error::MinorSize { size, rows, cols });
    }
    if rows > 64 || cols > 64 {
        return Err(Error::Computation("minors limited to 64 rows and columns".into()));
    }
    let mut level: HashMap<(u64, u64), LaurentPoly<C>> = HashMap::new();
    for (i, row) in m.iter().enumerate() {
        for (j, f) in row.iter().enumerate() {
            if !f.is_zero() {
                level.insert((1 << i, 1 << j), f.clone());
            }
        }
    }
    for t in 2..=size {
        let mut next = HashMap::new();
        for rmask in subsets(rows, t) {
            let r0 = rmask.trailing_zeros() as usize;
            let rest = rmask & !(1 << r0);
            for cmask in subsets(cols, t) {
                let mut acc: Option<LaurentPoly<C>> = None;
                let mut sign_pos = true;
                let mut cm = cmask;
                while cm != 0 {
                    let c = cm.trailing_zeros() as usize;
                    cm &= cm - 1;
                    let entry = &m[r0][c];
                    if !entry.is_zero() {
                        if let Some(sub) = level.get(&(rest, cmask & !(1 << c))) {
                            let term = entry * sub;
                            let term = if sign_pos { term } else { term.neg() };
                            acc = Some(match acc {
                                None => term,
                                Some(a) => &a + &term,
                            });
                        }
                    }
                    sign_pos = !sign_pos;
                }
                if let Some(a) = acc.filter(|a| !a.is_zero()) {
                    next.insert((rmask, cmask), a);
                }
            }
        }
        level = next;
    }
    let mut out: Vec<_> = level.into_iter().collect();
    out.sort_by_key(|(k, _)| *k);
    Ok(out)
}

/// Normalized, deduplicated nonzero minors of the given size, in canonical order.
pub fn minors(m: &LaurentMatrix, size: usize) -> Result<Vec<LaurentPoly>> {
    let set: BTreeSet<LaurentPoly> = raw_minors(m, size)?.into_iter().map(|(_, f)| f.normalized()).collect();
    Ok(set.into_iter().collect())
}
