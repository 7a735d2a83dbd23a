use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse rational vector keyed by coordinate index.
pub type SVec = BTreeMap<usize, BigRational>;

pub fn axpy(v: &mut SVec, c: &BigRational, w: &SVec) {
    for (k, x) in w {
        let e = v.entry(*k).or_insert_with(BigRational::zero);
        *e += c * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Row echelon form whose pivots are the smallest index of each row.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: usize) -> bool {
        self.rows.contains_key(&k)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SVec)> {
        self.rows.iter()
    }

    pub fn reduce(&self, mut v: SVec) -> SVec {
        let mut from = 0;
        loop {
            let next = v.range(from..).find(|(k, _)| self.rows.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            match next {
                None => return v,
                Some((k, c)) => {
                    axpy(&mut v, &-c, &self.rows[&k]);
                    from = k + 1;
                }
            }
        }
    }

    /// Adds `v` to the row space; returns the reduced row when it was independent.
    pub fn insert(&mut self, v: SVec) -> Option<&SVec> {
        let r = self.reduce(v);
        let (&pivot, lead) = r.iter().next()?;
        let inv = BigRational::one() / lead;
        let r: SVec = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.rows.insert(pivot, r);
        self.rows.get(&pivot)
    }
}

/// Rank of a list of sparse rows.
pub fn sparse_rank(rows: impl IntoIterator<Item = SVec>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}
