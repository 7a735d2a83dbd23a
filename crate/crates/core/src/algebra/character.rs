//! Points of the character torus, with coordinates in `Q^*` or `F_p^*`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Fp, PrimeField};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterPoint {
    Rational(Vec<BigRational>),
    /// Coordinates in a prime field carrying a primitive `root_order`-th root of unity.
    Modular { field: PrimeField, coords: Vec<Fp> },
}

/// The value of a polynomial at a [`CharacterPoint`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Mod(Fp),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod(x) => x.is_zero(),
        }
    }
}

impl CharacterPoint {
    pub fn rational(coords: Vec<BigRational>) -> Result<Self> {
        if let Some(i) = coords.iter().position(|c| c.is_zero()) {
            return Err(Error::NotInvertible(i));
        }
        Ok(CharacterPoint::Rational(coords))
    }

    pub fn modular(field: PrimeField, coords: Vec<Fp>) -> Result<Self> {
        for (i, c) in coords.iter().enumerate() {
            if c.modulus() != field.p {
                return Err(Error::FieldMismatch(format!("coordinate {i} is not in F_{}", field.p)));
            }
            if c.is_zero() {
                return Err(Error::NotInvertible(i));
            }
        }
        Ok(CharacterPoint::Modular { field, coords })
    }

    /// The point `(zeta^e_1, ..., zeta^e_n)` of exact torsion.
    pub fn roots_of_unity(field: PrimeField, exponents: &[i64]) -> Self {
        let coords = exponents.iter().map(|&e| field.root_power(e)).collect();
        CharacterPoint::Modular { field, coords }
    }

    pub fn identity(n: usize) -> Self {
        CharacterPoint::Rational(vec![BigRational::one(); n])
    }

    pub fn len(&self) -> usize {
        match self {
            CharacterPoint::Rational(v) => v.len(),
            CharacterPoint::Modular { coords, .. } => coords.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_identity(&self) -> bool {
        match self {
            CharacterPoint::Rational(v) => v.iter().all(|c| c.is_one()),
            CharacterPoint::Modular { coords, .. } => coords.iter().all(|c| c.is_one()),
        }
    }

    pub fn field(&self) -> Option<&PrimeField> {
        match self {
            CharacterPoint::Rational(_) => None,
            CharacterPoint::Modular { field, .. } => Some(field),
        }
    }

    /// The same point viewed in `F_p`; `None` if a coordinate does not reduce to a unit.
    pub fn reduce(&self, field: PrimeField) -> Option<Self> {
        match self {
            CharacterPoint::Rational(v) => {
                let coords: Option<Vec<Fp>> = v.iter().map(|c| field.from_rational(c)).collect();
                let coords = coords?;
                coords.iter().all(|c| !c.is_zero()).then_some(CharacterPoint::Modular { field, coords })
            }
            CharacterPoint::Modular { field: f, .. } if f.p == field.p => Some(self.clone()),
            CharacterPoint::Modular { .. } => None,
        }
    }

    /// Coordinatewise power `rho^k`.
    pub fn pow(&self, k: i64) -> Self {
        match self {
            CharacterPoint::Rational(v) => CharacterPoint::Rational(
                v.iter().map(|c| super::laurent::pow_rational(c, k).expect("unit coordinate")).collect(),
            ),
            CharacterPoint::Modular { field, coords } => CharacterPoint::Modular {
                field: *field,
                coords: coords.iter().map(|c| c.powi(k).expect("unit coordinate")).collect(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_coordinates() {
        let z = vec![BigRational::one(), BigRational::zero()];
        assert!(matches!(CharacterPoint::rational(z), Err(Error::NotInvertible(1))));
    }

    #[test]
    fn torsion_points_have_declared_order() {
        let f = PrimeField::for_root_order(4);
        let rho = CharacterPoint::roots_of_unity(f, &[1, 2, 0]);
        if let CharacterPoint::Modular { coords, .. } = &rho {
            assert_eq!(f.order_of(coords[0]), Some(4));
            assert_eq!(f.order_of(coords[1]), Some(2));
            assert_eq!(f.order_of(coords[2]), Some(1));
        }
        assert!(rho.pow(4).is_identity());
        assert!(!rho.is_identity());
    }
}
