//! Small dense linear algebra over `Q`: reduced echelon forms, kernels, subspaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QVec = Vec<BigRational>;

pub fn qint(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[QVec]) -> (Vec<QVec>, Vec<usize>) {
    let mut a: Vec<QVec> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..n {
                let v = &a[r][j] * &f;
                a[i][j] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[QVec]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `n`.
pub fn kernel(rows: &[QVec], n: usize) -> Vec<QVec> {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to coprime integers with first nonzero entry positive.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) { -g } else { g };
    ints.into_iter().map(|x| x / &sign).collect()
}

pub fn to_q(v: &[BigInt]) -> QVec {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Canonical integer basis of a row space: RREF rows made primitive.
pub fn canonical_basis(rows: &[QVec]) -> Vec<Vec<BigInt>> {
    rref(rows).0.iter().map(|r| primitive(r)).collect()
}

/// Whether `v` lies in the row space spanned by `basis`.
pub fn in_span(basis: &[QVec], v: &[BigRational]) -> bool {
    let r = rank(basis);
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == r
}

/// Whether the row space of `a` is contained in the row space of `b`.
pub fn subspace_le(a: &[QVec], b: &[QVec]) -> bool {
    let rb = rank(b);
    let mut ext = b.to_vec();
    ext.extend(a.iter().cloned());
    rank(&ext) == rb
}

/// A row space kept in reduced echelon form, so membership is one reduction pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    rows: Vec<QVec>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(rows: &[QVec]) -> Self {
        let (rows, pivots) = rref(rows);
        RowSpace { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[QVec] {
        &self.rows
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if w[c].is_zero() {
                continue;
            }
            let f = w[c].clone();
            for (x, y) in w.iter_mut().zip(row).skip(c) {
                *x -= &f * y;
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        other.dim() <= self.dim() && other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &RowSpace) -> RowSpace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        RowSpace::new(&rows)
    }
}

/// Dimension of the intersection of two row spaces.
pub fn intersection_dim(a: &[QVec], b: &[QVec]) -> usize {
    let mut ext = a.to_vec();
    ext.extend(b.iter().cloned());
    rank(a) + rank(b) - rank(&ext)
}
