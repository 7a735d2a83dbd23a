use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::LaurentPoly;
use crate::error::{Error, Result};
use crate::presentation::{AbelianizationData, Word};

/// Element of the rational group ring of a free group.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigRational>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::identity())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, BigRational::one())
    }

    pub fn term(w: Word, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(w, c);
        out
    }

    fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Image in the Laurent ring of `H_1` coordinates (torsion exponents reduced).
    pub fn abelianize(&self, ab: &AbelianizationData) -> LaurentPoly {
        let n = ab.num_generators();
        let mut out = LaurentPoly::zero(ab.num_coords());
        for (w, c) in &self.terms {
            out.add_term(ab.coords_of(&w.exponent_vector(n)), c.clone());
        }
        out
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*({w:?})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Fox derivative `dw/dx_i` for a word in the free group of rank `n`.
pub fn fox_derivative(w: &Word, i: usize, n: usize) -> Result<GroupRingElement> {
    if i >= n {
        return Err(Error::GeneratorIndex { index: i, n });
    }
    if let Some(g) = w.max_generator().filter(|&g| g >= n) {
        return Err(Error::GeneratorIndex { index: g, n });
    }
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for (g, s) in w.letters() {
        let next = prefix.mul(&Word::syllable(g, s));
        if g == i {
            if s > 0 {
                out.add_term(prefix.clone(), BigRational::one());
            } else {
                out.add_term(next.clone(), -BigRational::one());
            }
        }
        prefix = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> Word {
        Word::generator(0)
    }

    fn y() -> Word {
        Word::generator(1)
    }

    #[test]
    fn examples() {
        assert_eq!(fox_derivative(&x().mul(&y()), 0, 2).unwrap(), GroupRingElement::one());
        let xi = x().inverse();
        assert_eq!(fox_derivative(&xi, 0, 1).unwrap(), GroupRingElement::word(xi.clone()).scale(&-BigRational::one()));
        let c = Word::commutator(&x(), &y());
        let expect = GroupRingElement::one().sub(&GroupRingElement::word(Word::from_letters(&[1, 2, -1])));
        assert_eq!(fox_derivative(&c, 0, 2).unwrap(), expect);
        assert!(fox_derivative(&c, 2, 2).is_err());
    }

    fn word3() -> impl Strategy<Value = Word> {
        prop::collection::vec(prop_oneof![1i64..=3, -3i64..=-1], 0..16).prop_map(|l| Word::from_letters(&l))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn fundamental_identity(w in word3()) {
            let mut lhs = GroupRingElement::zero();
            for i in 0..3 {
                let xi_minus_1 = GroupRingElement::word(Word::generator(i)).sub(&GroupRingElement::one());
                lhs = lhs.add(&fox_derivative(&w, i, 3).unwrap().mul(&xi_minus_1));
            }
            let rhs = GroupRingElement::word(w.clone()).sub(&GroupRingElement::one());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_rule(u in word3(), v in word3(), i in 0usize..3) {
            let lhs = fox_derivative(&u.mul(&v), i, 3).unwrap();
            let rhs = fox_derivative(&u, i, 3).unwrap()
                .add(&GroupRingElement::word(u.clone()).mul(&fox_derivative(&v, i, 3).unwrap()));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
