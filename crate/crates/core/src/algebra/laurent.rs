//! Sparse multivariate Laurent polynomials with exact coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so equality is
//! structural. The "leading" term is the lexicographically largest exponent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::character::{CharacterPoint, Scalar};
use super::field::Fp;
use crate::error::{Error, Result};

pub type Exponent = Vec<i64>;

/// Exact field coefficients for [`LaurentPoly`].
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// The multiplicative identity of the field `self` lives in.
    fn one_like(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn as_rational(&self) -> Option<BigRational>;
    fn reduce_mod(&self, p: u64) -> Option<Fp>;
}

impl Coeff for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn reduce_mod(&self, p: u64) -> Option<Fp> {
        Fp::from_rational(self, p)
    }
}

impl Coeff for Fp {
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn is_one(&self) -> bool {
        Fp::is_one(*self)
    }
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn inv(&self) -> Option<Self> {
        Fp::inv(*self)
    }
    fn one_like(&self) -> Self {
        Fp::new(1, self.modulus())
    }
    fn as_rational(&self) -> Option<BigRational> {
        None
    }
    fn reduce_mod(&self, p: u64) -> Option<Fp> {
        (self.modulus() == p).then_some(*self)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly<C = BigRational> {
    nvars: usize,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(exp: Exponent, c: C) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// Builds a polynomial from terms, merging repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, C)>>(nvars: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::NvarsMismatch { left: nvars, right: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> Option<&C> {
        self.terms.get(exp)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &C)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.mul(c))).collect(),
        }
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent, i.e. the monomial gcd.
    pub fn monomial_gcd(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Exact quotient `self / divisor`, `None` when the division is not exact.
    ///
    /// Leading-term division in lex order; the exponents of an exact quotient are
    /// confined to the box spanned by the Newton polytopes, which bounds the loop.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if self.nvars != divisor.nvars || divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let n = self.nvars;
        let bounds = |p: &Self| {
            let mut lo = vec![i64::MAX; n];
            let mut hi = vec![i64::MIN; n];
            for e in p.terms.keys() {
                for v in 0..n {
                    lo[v] = lo[v].min(e[v]);
                    hi[v] = hi[v].max(e[v]);
                }
            }
            (lo, hi)
        };
        let (flo, fhi) = bounds(self);
        let (glo, ghi) = bounds(divisor);
        let (lt_exp, lt_c) = divisor.leading_term().map(|(e, c)| (e.clone(), c.clone()))?;
        let lt_inv = lt_c.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(n);
        while let Some((re, rc)) = rem.leading_term() {
            let m: Exponent = re.iter().zip(&lt_exp).map(|(a, b)| a - b).collect();
            for v in 0..n {
                if m[v] < flo[v] - glo[v] || m[v] > fhi[v] - ghi[v] {
                    return None;
                }
            }
            let c = rc.mul(&lt_inv);
            for (e, x) in &divisor.terms {
                let prod: Exponent = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                rem.add_term(prod, x.mul(&c).neg());
            }
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Composition with a monomial map: variable `i` goes to `t'^images[i]`.
    pub fn substitute(&self, images: &[Exponent], nvars_out: usize) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: images.len() });
        }
        if let Some(bad) = images.iter().find(|im| im.len() != nvars_out) {
            return Err(Error::NvarsMismatch { left: nvars_out, right: bad.len() });
        }
        let mut out = Self::zero(nvars_out);
        for (e, c) in &self.terms {
            let mut img = vec![0i64; nvars_out];
            for (v, &k) in e.iter().enumerate() {
                if k != 0 {
                    for (slot, d) in img.iter_mut().zip(&images[v]) {
                        *slot += k * d;
                    }
                }
            }
            out.add_term(img, c.clone());
        }
        Ok(out)
    }

    /// Composition with a scaled monomial map over `F_p`: variable `i` goes to
    /// `scales[i] * t'^images[i]`.
    pub fn substitute_scaled(&self, images: &[Exponent], scales: &[Fp], nvars_out: usize) -> Result<LaurentPoly<Fp>> {
        if images.len() != self.nvars || scales.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: images.len().min(scales.len()) });
        }
        let p = match scales.first() {
            Some(s) => s.modulus(),
            None => return Err(Error::FieldMismatch("no scales to fix the field".into())),
        };
        let mut out = LaurentPoly::<Fp>::zero(nvars_out);
        for (e, c) in &self.terms {
            let mut coef = c
                .reduce_mod(p)
                .ok_or_else(|| Error::FieldMismatch(format!("coefficient {c:?} does not reduce mod {p}")))?;
            let mut img = vec![0i64; nvars_out];
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let s = scales[v].powi(k).ok_or(Error::NotInvertible(v))?;
                coef = coef * s;
                if images[v].len() != nvars_out {
                    return Err(Error::NvarsMismatch { left: nvars_out, right: images[v].len() });
                }
                for (slot, d) in img.iter_mut().zip(&images[v]) {
                    *slot += k * d;
                }
            }
            out.add_term(img, coef);
        }
        Ok(out)
    }

    /// Reduces the exponent of each listed variable modulo its order
    /// (valid in the quotient where `t_v^order = 1`).
    pub fn reduce_cyclic(&self, cyclic: &[(usize, i64)]) -> Self {
        if cyclic.is_empty() {
            return self.clone();
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            for &(v, ord) in cyclic {
                e[v] = e[v].rem_euclid(ord);
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Exact value at a character point.
    pub fn evaluate(&self, rho: &CharacterPoint) -> Result<Scalar> {
        if rho.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: rho.len() });
        }
        match rho {
            CharacterPoint::Rational(vals) => {
                let mut acc = BigRational::zero();
                for (e, c) in &self.terms {
                    let mut term = c.as_rational().ok_or_else(|| {
                        Error::FieldMismatch("polynomial over F_p evaluated at a rational point".into())
                    })?;
                    for (v, &k) in e.iter().enumerate() {
                        if k != 0 {
                            term *= pow_rational(&vals[v], k).ok_or(Error::NotInvertible(v))?;
                        }
                    }
                    acc += term;
                }
                Ok(Scalar::Rational(acc))
            }
            CharacterPoint::Modular { field, coords } => {
                let mut acc = field.elem(0);
                for (e, c) in &self.terms {
                    let mut term = c.reduce_mod(field.p).ok_or_else(|| {
                        Error::FieldMismatch(format!("coefficient {c:?} does not reduce mod {}", field.p))
                    })?;
                    for (v, &k) in e.iter().enumerate() {
                        if k != 0 {
                            term = term * coords[v].powi(k).ok_or(Error::NotInvertible(v))?;
                        }
                    }
                    acc = acc + term;
                }
                Ok(Scalar::Mod(acc))
            }
        }
    }
}

pub(crate) fn pow_rational(x: &BigRational, k: i64) -> Option<BigRational> {
    if k < 0 && Zero::is_zero(x) {
        return None;
    }
    let base = if k < 0 { x.recip() } else { x.clone() };
    Some(num_traits::pow(base, k.unsigned_abs() as usize))
}

impl LaurentPoly<BigRational> {
    pub fn from_int_terms(nvars: usize, terms: &[(Vec<i64>, i64)]) -> Result<Self> {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (e.clone(), BigRational::from_integer(BigInt::from(*c)))))
    }

    /// The variable `t_v`.
    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// Canonical associate: monomial content removed, coefficients made coprime
    /// integers, and the lexicographically largest term positive.
    pub fn normalized(&self) -> Self {
        let Some(g) = self.monomial_gcd() else {
            return self.clone();
        };
        let neg: Vec<i64> = g.iter().map(|x| -x).collect();
        let shifted = self.shift(&neg);
        let mut den_lcm = BigInt::one();
        for c in shifted.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in shifted.terms.values() {
            let n = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let mut factor = BigRational::new(den_lcm, num_gcd);
        if shifted.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            factor = -factor;
        }
        shifted.scale(&factor)
    }
}

impl LaurentPoly<Fp> {
    /// Monomial content removed and leading coefficient one.
    pub fn normalized_mod(&self) -> Self {
        let Some(g) = self.monomial_gcd() else {
            return self.clone();
        };
        let neg: Vec<i64> = g.iter().map(|x| -x).collect();
        let shifted = self.shift(&neg);
        let lc = *shifted.leading_term().expect("nonzero").1;
        shifted.scale(&lc.inv().expect("field element"))
    }
}

impl<C: Coeff> std::ops::Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl<C: Coeff> std::ops::Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl<C: Coeff> std::ops::Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl<C: Coeff + fmt::Display> LaurentPoly<C> {
    /// Renders with the given variable names, highest term first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| {
                    let name = names.get(v).cloned().unwrap_or_else(|| format!("t{v}"));
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl<C: Coeff + fmt::Display> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::PrimeField;

    type Q = LaurentPoly;

    fn p(n: usize, t: &[(Vec<i64>, i64)]) -> Q {
        Q::from_int_terms(n, t).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = p(1, &[(vec![1], 1), (vec![0], -1)]);
        let b = p(1, &[(vec![1], 1), (vec![0], 1)]);
        assert_eq!(&a * &b, p(1, &[(vec![2], 1), (vec![0], -1)]));
        assert!((&a * &Q::zero(1)).is_zero());
    }

    #[test]
    fn mul_expand_by_hand() {
        // (1 - t_b)(t_b - 1) = -t_b^2 + 2 t_b - 1
        let a = p(2, &[(vec![0, 0], 1), (vec![0, 1], -1)]);
        let b = p(2, &[(vec![0, 1], 1), (vec![0, 0], -1)]);
        assert_eq!(&a * &b, p(2, &[(vec![0, 2], -1), (vec![0, 1], 2), (vec![0, 0], -1)]));
    }

    #[test]
    fn mul_nvars_mismatch() {
        assert!(matches!(Q::one(1).try_mul(&Q::one(2)), Err(Error::NvarsMismatch { .. })));
    }

    #[test]
    fn substitute_examples() {
        let f = p(1, &[(vec![1], 1), (vec![0], -1)]);
        assert_eq!(f.substitute(&[vec![2]], 1).unwrap(), p(1, &[(vec![2], 1), (vec![0], -1)]));
        let g = p(1, &[(vec![0], 1), (vec![1], -1)]);
        assert!(g.substitute(&[vec![0]], 1).unwrap().is_zero());
        let h = p(2, &[(vec![1, 1], 1), (vec![0, 0], -1)]);
        assert!(h.substitute(&[vec![1], vec![-1]], 1).unwrap().is_zero());
    }

    #[test]
    fn evaluate_examples() {
        let f = p(1, &[(vec![0], 1), (vec![1], -1)]);
        let r = f.evaluate(&CharacterPoint::rational(vec![q(2, 1)]).unwrap()).unwrap();
        assert_eq!(r, Scalar::Rational(q(-1, 1)));

        let g = &p(2, &[(vec![1, 0], 1), (vec![0, 0], -1)]) * &p(2, &[(vec![0, 1], 1), (vec![0, 0], -1)]);
        let r = g.evaluate(&CharacterPoint::rational(vec![q(1, 1), q(5, 1)]).unwrap()).unwrap();
        assert!(r.is_zero());

        let h = p(1, &[(vec![2], 1), (vec![-1], -1)]);
        let r = h.evaluate(&CharacterPoint::rational(vec![q(2, 1)]).unwrap()).unwrap();
        assert_eq!(r, Scalar::Rational(q(7, 2)));
    }

    #[test]
    fn evaluate_field_mismatch() {
        let f = PrimeField::for_root_order(2);
        let poly = LaurentPoly::<Fp>::constant(1, f.elem(3));
        let err = poly.evaluate(&CharacterPoint::rational(vec![q(2, 1)]).unwrap());
        assert!(matches!(err, Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn normalization() {
        let f = p(2, &[(vec![0, 0], 1), (vec![0, 1], -1)]);
        assert_eq!(f.normalized(), p(2, &[(vec![0, 1], 1), (vec![0, 0], -1)]));
        let g = p(1, &[(vec![3], -4), (vec![1], 6)]).normalized();
        assert_eq!(g, p(1, &[(vec![2], 2), (vec![0], -3)]));
        let h = Q::from_terms(1, [(vec![-2], q(1, 2)), (vec![0], q(1, 3))]).unwrap();
        assert_eq!(h.normalized(), p(1, &[(vec![2], 2), (vec![0], 3)]));
    }

    #[test]
    fn exact_division() {
        let a = p(2, &[(vec![1, 0], 1), (vec![0, 0], -1)]);
        let b = p(2, &[(vec![0, 1], 1), (vec![-1, 0], 3), (vec![0, 0], -1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn scaled_substitution() {
        let f = PrimeField::for_root_order(3);
        // t_a t_b - 1 at (zeta s, zeta^2 s^-1) = 0
        let h = p(2, &[(vec![1, 1], 1), (vec![0, 0], -1)]);
        let out = h.substitute_scaled(&[vec![1], vec![-1]], &[f.root_power(1), f.root_power(2)], 1).unwrap();
        assert!(out.is_zero());
    }
}
