use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{matrix_rank_at, CharacterPoint, Fp, LaurentMatrix, LaurentPoly, PrimeField};
use crate::error::{Error, Result};
use crate::presentation::{abelianization, AbelianizationData, Presentation};

/// Abelianized Fox Jacobian of a presentation.
///
/// Entries live in the Laurent ring of `H_1`: variables `0..b1` are the free coordinates,
/// followed by one variable per torsion summand `Z/d`, whose exponents are kept in `[0, d)`.
/// A character point assigns a value to every variable; torsion variables take `d`-th roots of unity.
#[derive(Clone, Debug)]
pub struct AlexanderMatrix {
    pub entries: LaurentMatrix,
    pub abelianization: AbelianizationData,
}

pub fn alexander_matrix(p: &Presentation) -> AlexanderMatrix {
    let ab = abelianization(p);
    let n = p.num_generators();
    let nv = ab.num_coords();
    let cyclic = ab.cyclic_vars();
    let gen_coords: Vec<Vec<i64>> = (0..n).map(|i| ab.generator_coords(i)).collect();
    let mut entries = Vec::with_capacity(p.relators().len());
    for r in p.relators() {
        let mut row = vec![LaurentPoly::zero(nv); n];
        let mut pos = vec![0i64; nv];
        let step = |pos: &mut Vec<i64>, g: usize, s: i64| {
            for (k, x) in pos.iter_mut().enumerate() {
                *x += s * gen_coords[g][k];
            }
            for &(v, d) in &cyclic {
                pos[v] = pos[v].rem_euclid(d);
            }
        };
        let one = BigRational::from_integer(BigInt::from(1));
        for (g, s) in r.letters() {
            if s > 0 {
                row[g].add_term(pos.clone(), one.clone());
                step(&mut pos, g, 1);
            } else {
                step(&mut pos, g, -1);
                row[g].add_term(pos.clone(), -one.clone());
            }
        }
        entries.push(row);
    }
    AlexanderMatrix { entries, abelianization: ab }
}

impl AlexanderMatrix {
    pub fn num_relators(&self) -> usize {
        self.entries.len()
    }

    pub fn num_generators(&self) -> usize {
        self.abelianization.num_generators()
    }

    pub fn b1(&self) -> usize {
        self.abelianization.b1
    }

    /// Number of Laurent variables: free coordinates then torsion coordinates.
    pub fn nvars(&self) -> usize {
        self.abelianization.num_coords()
    }

    /// Rejects points of the wrong length or whose torsion coordinates are not roots of unity of the right order.
    pub fn check_character(&self, rho: &CharacterPoint) -> Result<()> {
        if rho.len() != self.nvars() {
            return Err(Error::IncompatibleCharacter(format!(
                "expected {} coordinates, got {}",
                self.nvars(),
                rho.len()
            )));
        }
        for (v, d) in self.abelianization.cyclic_vars() {
            let ok = match rho {
                CharacterPoint::Rational(c) => {
                    crate::algebra::laurent::pow_rational(&c[v], d).is_some_and(|x| x == BigRational::from_integer(1.into()))
                }
                CharacterPoint::Modular { coords, .. } => coords[v].pow(d as u64).is_one(),
            };
            if !ok {
                return Err(Error::IncompatibleCharacter(format!("coordinate {v} is not a root of unity of order dividing {d}")));
            }
        }
        Ok(())
    }

    /// The character sending generator `i` to `zeta^phi[i]`, for `zeta` a primitive `order`-th root of unity.
    pub fn character_from_generator_exponents(&self, phi: &[i64], field: PrimeField) -> Result<CharacterPoint> {
        let n = self.num_generators();
        if phi.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: phi.len() });
        }
        let exps: Vec<i64> = (0..self.nvars())
            .map(|k| self.abelianization.coord_lift(k).iter().zip(phi).map(|(a, b)| a * b).sum())
            .collect();
        let rho = CharacterPoint::roots_of_unity(field, &exps);
        self.check_generator_values(&rho, |i| field.root_power(phi[i]))?;
        Ok(rho)
    }

    /// The character with the given (rational) values on generators.
    pub fn character_from_generator_values(&self, values: &[BigRational]) -> Result<CharacterPoint> {
        let n = self.num_generators();
        if values.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: values.len() });
        }
        let mut coords = Vec::with_capacity(self.nvars());
        for k in 0..self.nvars() {
            let mut acc = BigRational::from_integer(1.into());
            for (i, &e) in self.abelianization.coord_lift(k).iter().enumerate() {
                acc *= crate::algebra::laurent::pow_rational(&values[i], e).ok_or(Error::NotInvertible(i))?;
            }
            coords.push(acc);
        }
        let rho = CharacterPoint::rational(coords)?;
        self.check_character(&rho)?;
        // every relator must evaluate to 1
        for (j, r) in self.relator_exponents().iter().enumerate() {
            let mut acc = BigRational::from_integer(1.into());
            for (i, &e) in r.iter().enumerate() {
                acc *= crate::algebra::laurent::pow_rational(&values[i], e).ok_or(Error::NotInvertible(i))?;
            }
            if acc != BigRational::from_integer(1.into()) {
                return Err(Error::IncompatibleCharacter(format!("relator {j} does not map to 1")));
            }
        }
        Ok(rho)
    }

    fn relator_exponents(&self) -> Vec<Vec<i64>> {
        let e = &self.abelianization.relation_matrix;
        (0..e.rows()).map(|j| e.row(j).iter().map(|x| i64::try_from(x).expect("small exponents")).collect()).collect()
    }

    fn check_generator_values(&self, rho: &CharacterPoint, value: impl Fn(usize) -> Fp) -> Result<()> {
        self.check_character(rho)?;
        for (j, r) in self.relator_exponents().iter().enumerate() {
            let mut acc: Option<Fp> = None;
            for (i, &e) in r.iter().enumerate() {
                let x = value(i).powi(e).ok_or(Error::NotInvertible(i))?;
                acc = Some(acc.map_or(x, |a| a * x));
            }
            if acc.is_some_and(|a| !a.is_one()) {
                return Err(Error::IncompatibleCharacter(format!("relator {j} does not map to 1")));
            }
        }
        Ok(())
    }
}

/// `dim H^1(G, L_rho)` computed from the presentation 2-complex.
pub fn h1_dim_at(a: &AlexanderMatrix, rho: &CharacterPoint) -> Result<usize> {
    a.check_character(rho)?;
    if rho.is_identity() {
        return Ok(a.b1());
    }
    let r = matrix_rank_at(&a.entries, rho)?;
    Ok(a.num_generators() - 1 - r)
}
