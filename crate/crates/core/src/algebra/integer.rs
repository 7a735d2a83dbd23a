//! Dense integer matrices and Smith normal form with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows of machine integers. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().map(|&x| x.into()));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * c;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * c;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// `d_1 | d_2 | ...`, length `min(rows, cols)`, trailing zeros for the rank defect.
    pub diag: Vec<BigInt>,
    pub rank: usize,
    /// The invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

/// `u * a * v == diag(form.diag)` with `u`, `v` unimodular; `v_inv` is the inverse of `v`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub form: SmithForm,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    smith_decomposition(a).form
}

struct SnfState {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row(dst, src, c);
        self.u.add_row(dst, src, c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col(dst, src, c);
        self.v.add_col(dst, src, c);
        // inverse of (col dst += c col src) acts on rows of v^{-1}
        self.v_inv.add_row(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
    }

    /// Smallest nonzero |entry| in the trailing block starting at (t, t), row-major first.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn process(&mut self, t: usize) -> bool {
        let Some((pi, pj)) = self.min_entry(t) else {
            return false;
        };
        self.swap_rows(t, pi);
        self.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..self.a.rows {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &self.a[(i, t)] / &self.a[(t, t)];
                if !q.is_zero() {
                    self.add_row(i, t, &-q);
                }
                if !self.a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..self.a.cols {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &self.a[(t, j)] / &self.a[(t, t)];
                if !q.is_zero() {
                    self.add_col(j, t, &-q);
                }
                if !self.a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder survived; move the smallest entry of row/column t into the pivot
                let mut best = (t, t);
                for i in t + 1..self.a.rows {
                    let x = &self.a[(i, t)];
                    if !x.is_zero() && x.abs() < self.a[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..self.a.cols {
                    let x = &self.a[(t, j)];
                    if !x.is_zero() && x.abs() < self.a[best].abs() {
                        best = (t, j);
                    }
                }
                self.swap_rows(t, best.0);
                self.swap_cols(t, best.1);
                continue;
            }
            let pivot = self.a[(t, t)].clone();
            let mut bad_row = None;
            'scan: for i in t + 1..self.a.rows {
                for j in t + 1..self.a.cols {
                    if !self.a[(i, j)].is_multiple_of(&pivot) {
                        bad_row = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad_row {
                Some(i) => self.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if self.a[(t, t)].is_negative() {
            self.negate_row(t);
        }
        true
    }
}

pub fn smith_decomposition(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut st = SnfState {
        a: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let steps = m.min(n);
    let mut rank = 0;
    for t in 0..steps {
        if !st.process(t) {
            break;
        }
        rank += 1;
    }
    let diag: Vec<BigInt> = (0..steps).map(|t| st.a[(t, t)].clone()).collect();
    let torsion = diag.iter().filter(|d| **d > BigInt::one()).cloned().collect();
    SmithDecomposition {
        form: SmithForm { diag, rank, torsion },
        u: st.u,
        v: st.v,
        v_inv: st.v_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diag_2_3() {
        let f = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(f.diag, big(&[1, 6]));
        assert_eq!(f.rank, 2);
        assert_eq!(f.torsion, big(&[6]));
    }

    #[test]
    fn zero_one_by_one() {
        let f = smith_normal_form(&IntMatrix::from_rows(&[vec![0]]));
        assert_eq!(f.diag, big(&[0]));
        assert_eq!(f.rank, 0);
        assert!(f.torsion.is_empty());
    }

    #[test]
    fn two_by_two_gcd_and_det() {
        let f = smith_normal_form(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(f.diag, big(&[2, 4]));
    }

    #[test]
    fn empty_matrix() {
        let f = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert!(f.diag.is_empty());
        assert_eq!(f.rank, 0);
    }

    #[test]
    fn transforms_reconstruct() {
        let a = IntMatrix::from_rows(&[vec![3, 1, -4], vec![6, 2, 4], vec![0, 5, 10]]);
        let d = smith_decomposition(&a);
        let prod = d.u.mul(&a).unwrap().mul(&d.v).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { d.form.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(prod[(i, j)], expect);
            }
        }
        assert_eq!(d.v.mul(&d.v_inv).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn zero_matrix_keeps_identity_transforms() {
        let d = smith_decomposition(&IntMatrix::zeros(2, 3));
        assert_eq!(d.v, IntMatrix::identity(3));
        assert_eq!(d.u, IntMatrix::identity(2));
    }
}
