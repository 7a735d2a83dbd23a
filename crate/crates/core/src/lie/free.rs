use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::sparse::{axpy, SVec};
use crate::error::{Error, Result};
use crate::fox::magnus::{check_degree, NcSeries};

/// Homogeneous noncommutative polynomial with integer coefficients.
type Assoc = BTreeMap<Vec<usize>, BigInt>;

fn assoc_add(f: &mut Assoc, w: Vec<usize>, c: BigInt) {
    let e = f.entry(w.clone()).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        f.remove(&w);
    }
}

fn commutator(f: &Assoc, g: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (u, a) in f {
        for (v, b) in g {
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            assoc_add(&mut out, uv, a * b);
            let mut vu = v.clone();
            vu.extend_from_slice(u);
            assoc_add(&mut out, vu, -(a * b));
        }
    }
    out
}

/// Lyndon words over `0..n` of length `1..=max_len`, ordered by length then lexicographically.
pub fn lyndon_words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 || max_len == 0 {
        return out;
    }
    // Duval's generation in lexicographic order
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(n - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(x) => *x += 1,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimensions of the degree `1..=d` pieces of the free Lie algebra on `n` generators.
pub fn free_lie_dims(n: usize, d: usize) -> Vec<usize> {
    (1..=d)
        .map(|deg| {
            let sum: BigInt = (1..=deg)
                .filter(|e| deg % e == 0)
                .map(|e| BigInt::from(mobius(e)) * num_traits::pow(BigInt::from(n), deg / e))
                .sum();
            let q: BigInt = sum / BigInt::from(deg);
            q.try_into().expect("dimension fits in usize")
        })
        .collect()
}

/// The free Lie algebra on `n` weight-one generators, truncated above degree `D`,
/// with the Lyndon basis under standard bracketing.
#[derive(Debug)]
pub struct FreeLieTruncation {
    n: usize,
    degree: usize,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    expansions: Vec<Assoc>,
    offsets: Vec<usize>,
    brackets: RefCell<HashMap<(usize, usize), SVec>>,
}

impl FreeLieTruncation {
    pub fn new(n: usize, degree: usize) -> Result<Self> {
        check_degree(degree)?;
        let words = lyndon_words(n, degree);
        let index: HashMap<Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut expansions: Vec<Assoc> = Vec::with_capacity(words.len());
        for w in &words {
            let e = if w.len() == 1 {
                [(w.clone(), BigInt::one())].into_iter().collect()
            } else {
                let split = (1..w.len()).find(|&i| index.contains_key(&w[i..])).expect("a Lyndon word has a Lyndon suffix");
                commutator(&expansions[index[&w[..split]]], &expansions[index[&w[split..]]])
            };
            expansions.push(e);
        }
        let mut offsets = vec![0; degree + 2];
        for w in &words {
            offsets[w.len() + 1] += 1;
        }
        for d in 1..offsets.len() {
            offsets[d] += offsets[d - 1];
        }
        Ok(FreeLieTruncation { n, degree, words, index, expansions, offsets, brackets: RefCell::new(HashMap::new()) })
    }

    pub fn num_generators(&self) -> usize {
        self.n
    }

    pub fn degree_cap(&self) -> usize {
        self.degree
    }

    /// Total dimension of degrees `1..=D`.
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        (1..=self.degree).map(|d| self.offsets[d + 1] - self.offsets[d]).collect()
    }

    /// Basis indices of degree `d`.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d == 0 || d > self.degree {
            return 0..0;
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.words[i].len()
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// Bracket notation of basis element `i`, e.g. `[a,[a,b]]`.
    pub fn display(&self, i: usize, names: &[String]) -> String {
        let w = &self.words[i];
        if w.len() == 1 {
            return names.get(w[0]).cloned().unwrap_or_else(|| format!("x{}", w[0]));
        }
        let split = (1..w.len()).find(|&s| self.index.contains_key(&w[s..])).expect("standard factorization");
        format!("[{},{}]", self.display(self.index[&w[..split]], names), self.display(self.index[&w[split..]], names))
    }

    /// Coordinates of a homogeneous Lie polynomial in the Lyndon basis.
    ///
    /// Each basis expansion is its Lyndon word plus lexicographically larger words, so
    /// peeling off the smallest word is triangular.
    fn lie_coords(&self, mut f: BTreeMap<Vec<usize>, BigRational>) -> Result<SVec> {
        let mut out = SVec::new();
        while let Some((w, c)) = f.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            let Some(&i) = self.index.get(&w) else {
                return Err(Error::NotLieElement(format!("word {w:?} is not Lyndon")));
            };
            for (u, x) in &self.expansions[i] {
                let e = f.entry(u.clone()).or_insert_with(BigRational::zero);
                *e -= &c * BigRational::from_integer(x.clone());
                if e.is_zero() {
                    f.remove(u);
                }
            }
            out.insert(i, c);
        }
        Ok(out)
    }

    /// `[b_i, b_j]` in the basis; zero above the degree cap.
    pub fn bracket(&self, i: usize, j: usize) -> SVec {
        if self.degree_of(i) + self.degree_of(j) > self.degree || i == j {
            return SVec::new();
        }
        if let Some(v) = self.brackets.borrow().get(&(i, j)) {
            return v.clone();
        }
        let c = commutator(&self.expansions[i], &self.expansions[j]);
        let c = c.into_iter().map(|(w, x)| (w, BigRational::from_integer(x))).collect();
        let v = self.lie_coords(c).expect("brackets of Lie elements are Lie elements");
        self.brackets.borrow_mut().insert((i, j), v.clone());
        v
    }

    /// Bilinear extension of [`Self::bracket`].
    pub fn bracket_vec(&self, u: &SVec, v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (i, a) in u {
            for (j, b) in v {
                if self.degree_of(*i) + self.degree_of(*j) <= self.degree {
                    axpy(&mut out, &(a * b), &self.bracket(*i, *j));
                }
            }
        }
        out
    }

    /// Nonzero structure constants `[b_i, b_j] = sum_k c_k b_k` for `i < j`.
    pub fn structure_constants(&self) -> Vec<((usize, usize), SVec)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let v = self.bracket(i, j);
                if !v.is_empty() {
                    out.push(((i, j), v));
                }
            }
        }
        out
    }

    /// Coordinates of a Lie series (every homogeneous part a Lie polynomial).
    pub fn series_coords(&self, s: &NcSeries) -> Result<SVec> {
        let mut out = SVec::new();
        for d in 1..=self.degree.min(s.degree_cap()) {
            let part = s.homogeneous(d);
            if part.keys().any(|w| w.iter().any(|&g| g >= self.n)) {
                return Err(Error::NotLieElement("series uses more generators than the algebra".into()));
            }
            out.extend(self.lie_coords(part)?);
        }
        if !s.coeff(&[]).is_zero() {
            return Err(Error::NotLieElement("series has a constant term".into()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_lyndon_count(n: usize, len: usize) -> usize {
        let total = n.pow(len as u32);
        (0..total)
            .filter(|&code| {
                let w: Vec<usize> = (0..len).map(|i| code / n.pow(i as u32) % n).collect();
                (1..len).all(|r| {
                    let rot: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
                    w < rot
                })
            })
            .count()
    }

    #[test]
    fn witt_numbers() {
        assert_eq!(free_lie_dims(2, 4), vec![2, 1, 2, 3]);
        assert_eq!(free_lie_dims(1, 4), vec![1, 0, 0, 0]);
        assert_eq!(free_lie_dims(3, 2)[1], 3);
        for n in 1..=4 {
            for d in 1..=6 {
                assert_eq!(free_lie_dims(n, 6)[d - 1], brute_lyndon_count(n, d), "n={n} d={d}");
            }
            let words = lyndon_words(n, 6);
            assert_eq!(words.len(), free_lie_dims(n, 6).iter().sum::<usize>());
        }
    }

    #[test]
    fn basis_shapes() {
        let l = FreeLieTruncation::new(2, 4).unwrap();
        assert_eq!(l.dims(), vec![2, 1, 2, 3]);
        let names = vec!["a".to_string(), "b".to_string()];
        let shown: Vec<String> = (0..l.dim()).map(|i| l.display(i, &names)).collect();
        assert_eq!(shown[..5], ["a", "b", "[a,b]", "[a,[a,b]]", "[[a,b],b]"]);
        // [b, a] = -[a, b]
        assert_eq!(l.bracket(1, 0), [(2, -BigRational::one())].into_iter().collect());
        assert!(l.bracket(2, 4).is_empty());
        assert!(FreeLieTruncation::new(2, 7).is_err());
    }

    #[test]
    fn antisymmetry_and_jacobi() {
        for n in 1..=4 {
            let l = FreeLieTruncation::new(n, 4).unwrap();
            let dim = l.dim();
            for i in 0..dim {
                for j in 0..dim {
                    let mut s = l.bracket(i, j);
                    axpy(&mut s, &BigRational::one(), &l.bracket(j, i));
                    assert!(s.is_empty());
                }
            }
            let unit = |i: usize| -> SVec { [(i, BigRational::one())].into_iter().collect() };
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        if l.degree_of(i) + l.degree_of(j) + l.degree_of(k) > 4 {
                            continue;
                        }
                        let mut s = l.bracket_vec(&unit(i), &l.bracket(j, k));
                        axpy(&mut s, &BigRational::one(), &l.bracket_vec(&unit(j), &l.bracket(k, i)));
                        axpy(&mut s, &BigRational::one(), &l.bracket_vec(&unit(k), &l.bracket(i, j)));
                        assert!(s.is_empty(), "n={n} ({i},{j},{k})");
                    }
                }
            }
        }
    }

    proptest! {
        // exp(u) exp(v) is group-like, so its logarithm has Lie coordinates
        #[test]
        fn bch_is_lie(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
            let q = |x: i64| BigRational::from_integer(x.into());
            let u = NcSeries::var(5, 0).scale(&q(a)).add(&NcSeries::var(5, 2).scale(&q(c)));
            let v = NcSeries::var(5, 1).scale(&q(b));
            let z = u.exp().mul(&v.exp()).log();
            let l = FreeLieTruncation::new(3, 5).unwrap();
            prop_assert!(l.series_coords(&z).is_ok());
        }
    }
}
