use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};

pub const MIN_DEGREE: usize = 2;
pub const MAX_DEGREE: usize = 6;
pub const DEFAULT_DEGREE: usize = 4;

/// Truncated noncommutative power series in `X_0, X_1, ...` with rational coefficients,
/// keyed by the index sequence of each monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcSeries {
    degree: usize,
    terms: BTreeMap<Vec<usize>, BigRational>,
}

impl NcSeries {
    pub fn zero(degree: usize) -> Self {
        NcSeries { degree, terms: BTreeMap::new() }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.terms.insert(vec![], BigRational::one());
        s
    }

    pub fn var(degree: usize, i: usize) -> Self {
        let mut s = Self::zero(degree);
        if degree >= 1 {
            s.terms.insert(vec![i], BigRational::one());
        }
        s
    }

    pub fn degree_cap(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, mono: &[usize]) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, mono: Vec<usize>, c: BigRational) {
        if mono.len() > self.degree || c.is_zero() {
            return;
        }
        let e = self.terms.entry(mono.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.degree);
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree.min(other.degree));
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.len() + b.len() > out.degree {
                    continue;
                }
                let mut m = a.clone();
                m.extend_from_slice(b);
                out.add_term(m, x * y);
            }
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous(&self, d: usize) -> BTreeMap<Vec<usize>, BigRational> {
        self.terms.iter().filter(|(m, _)| m.len() == d).map(|(m, c)| (m.clone(), c.clone())).collect()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).min()
    }

    /// `log(self)` for a series with constant term 1.
    pub fn log(&self) -> Self {
        let d = self.degree;
        let x = self.sub(&Self::one(d));
        debug_assert!(x.coeff(&[]).is_zero());
        let mut out = Self::zero(d);
        let mut power = Self::one(d);
        for k in 1..=d {
            power = power.mul(&x);
            let c = BigRational::new(BigInt::from(if k % 2 == 1 { 1 } else { -1 }), BigInt::from(k));
            out = out.add(&power.scale(&c));
        }
        out
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Self {
        let d = self.degree;
        debug_assert!(self.coeff(&[]).is_zero());
        let mut out = Self::one(d);
        let mut power = Self::one(d);
        let mut fact = BigInt::one();
        for k in 1..=d {
            power = power.mul(self);
            fact *= k;
            out = out.add(&power.scale(&BigRational::new(BigInt::one(), fact.clone())));
        }
        out
    }
}

/// How a generator is sent into the power series ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `x -> 1 + X`
    Standard,
    /// `x -> exp(X)`, under which every group element has a Lie-element logarithm.
    Exponential,
}

fn generator_series(g: usize, s: i64, degree: usize, how: Substitution) -> NcSeries {
    match how {
        Substitution::Standard => {
            if s > 0 {
                NcSeries::one(degree).add(&NcSeries::var(degree, g))
            } else {
                // 1 - X + X^2 - ...
                let mut out = NcSeries::zero(degree);
                for k in 0..=degree {
                    let c = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                    out.add_term(vec![g; k], c);
                }
                out
            }
        }
        Substitution::Exponential => NcSeries::var(degree, g).scale(&BigRational::from_integer(s.into())).exp(),
    }
}

/// Image of a word under a Magnus-type substitution, truncated at `degree`.
pub fn word_series(w: &Word, degree: usize, how: Substitution) -> NcSeries {
    let mut cache: BTreeMap<(usize, i64), NcSeries> = BTreeMap::new();
    let mut out = NcSeries::one(degree);
    for (g, s) in w.letters() {
        let f = cache.entry((g, s)).or_insert_with(|| generator_series(g, s, degree, how));
        out = out.mul(f);
    }
    out
}

/// Coefficients of `r - 1` for each relator under `x -> 1 + X`.
#[derive(Clone, Debug)]
pub struct MagnusExpansion {
    pub degree: usize,
    pub relators: Vec<NcSeries>,
}

impl MagnusExpansion {
    /// Coefficient of `X_{i_1} ... X_{i_k}` in relator `j`.
    pub fn coeff(&self, j: usize, mono: &[usize]) -> BigRational {
        self.relators[j].coeff(mono)
    }
}

pub fn check_degree(degree: usize) -> Result<()> {
    if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
        return Err(Error::DegreeOutOfRange { degree, min: MIN_DEGREE, max: MAX_DEGREE });
    }
    Ok(())
}

pub fn magnus_expand(p: &Presentation, degree: usize) -> Result<MagnusExpansion> {
    check_degree(degree)?;
    let relators = p
        .relators()
        .iter()
        .map(|r| word_series(r, degree, Substitution::Standard).sub(&NcSeries::one(degree)))
        .collect();
    Ok(MagnusExpansion { degree, relators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn commutator_degree_two() {
        let p = parse_presentation("gens: a b\nrels: [a,b]").unwrap();
        let m = magnus_expand(&p, 4).unwrap();
        let d2 = m.relators[0].homogeneous(2);
        let expect: BTreeMap<Vec<usize>, BigRational> = [(vec![0, 1], q(1)), (vec![1, 0], q(-1))].into_iter().collect();
        assert_eq!(d2, expect);
        assert!(m.relators[0].homogeneous(1).is_empty());
        assert!(m.relators[0].coeff(&[]).is_zero());
    }

    #[test]
    fn power_and_iterated_commutator() {
        let p = parse_presentation("gens: a b\nrels: a^3\n[a,[a,b]]").unwrap();
        let m = magnus_expand(&p, 4).unwrap();
        assert_eq!(m.relators[0].homogeneous(1), [(vec![0], q(3))].into_iter().collect());
        assert!(m.relators[1].homogeneous(2).is_empty());
        assert_eq!(m.relators[1].valuation(), Some(3));
    }

    #[test]
    fn degree_bounds() {
        let p = Presentation::free(2);
        assert!(magnus_expand(&p, 1).is_err());
        assert!(magnus_expand(&p, 7).is_err());
        assert!(magnus_expand(&p, 6).is_ok());
    }

    #[test]
    fn log_inverts_exp() {
        let x = NcSeries::var(5, 0).add(&NcSeries::var(5, 1).scale(&q(2)));
        assert_eq!(x.exp().log(), x);
    }

    proptest! {
        #[test]
        fn degree_one_is_exponent_vector(ls in prop::collection::vec(prop_oneof![1i64..=3, -3i64..=-1], 0..12)) {
            let w = Word::from_letters(&ls);
            let s = word_series(&w, 3, Substitution::Standard);
            let ev = w.exponent_vector(3);
            for (i, &e) in ev.iter().enumerate() {
                prop_assert_eq!(s.coeff(&[i]), q(e));
            }
            // the two substitutions agree to first order
            let t = word_series(&w, 3, Substitution::Exponential);
            for i in 0..3 {
                prop_assert_eq!(t.coeff(&[i]), q(ev[i]));
            }
        }

        #[test]
        fn series_is_multiplicative(a in prop::collection::vec(1i64..=2, 0..6), b in prop::collection::vec(-2i64..=-1, 0..6)) {
            let (u, v) = (Word::from_letters(&a), Word::from_letters(&b));
            let lhs = word_series(&u.mul(&v), 4, Substitution::Standard);
            let rhs = word_series(&u, 4, Substitution::Standard).mul(&word_series(&v, 4, Substitution::Standard));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
