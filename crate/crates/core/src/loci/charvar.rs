use std::collections::BTreeSet;

use crate::algebra::{matrix::raw_minors, CharacterPoint, LaurentPoly};
use crate::error::{Error, Result};
use crate::fox::AlexanderMatrix;

/// Defining ideal of `V^1_k` away from the trivial character.
///
/// An empty generator list is the zero ideal (the whole torus); the unit ideal is `[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharVarIdeal {
    pub k: usize,
    pub nvars: usize,
    pub gens: Vec<LaurentPoly>,
    pub includes_identity: bool,
}

impl CharVarIdeal {
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant() && !g.is_zero())
    }
}

/// `V^1_k` as the vanishing of the `(n-k)`-minors of the Alexander matrix.
///
/// When `n - k <= 0` no nontrivial character can reach level `k`, so the ideal is the unit ideal.
pub fn charvar_ideal(a: &AlexanderMatrix, k: usize) -> Result<CharVarIdeal> {
    if k == 0 {
        return Err(Error::Computation("jump level k must be at least 1".into()));
    }
    let n = a.num_generators();
    let m = a.num_relators();
    let nvars = a.nvars();
    let includes_identity = a.b1() >= k;
    let mk = |gens| CharVarIdeal { k, nvars, gens, includes_identity };
    if n <= k {
        return Ok(mk(vec![LaurentPoly::one(nvars)]));
    }
    let size = n - k;
    if size > m.min(n) {
        return Ok(mk(vec![]));
    }
    let cyclic = a.abelianization.cyclic_vars();
    let set: BTreeSet<LaurentPoly> = raw_minors(&a.entries, size)?
        .into_iter()
        .map(|(_, f)| f.reduce_cyclic(&cyclic))
        .filter(|f| !f.is_zero())
        .map(|f| f.normalized())
        .collect();
    let gens: Vec<LaurentPoly> = if set.iter().any(|g| g.is_constant()) {
        vec![LaurentPoly::one(nvars)]
    } else {
        set.into_iter().collect()
    };
    Ok(mk(gens))
}

/// Whether `rho` lies in `V^1_k`.
pub fn charvar_member(ideal: &CharVarIdeal, rho: &CharacterPoint) -> Result<bool> {
    if rho.len() != ideal.nvars {
        return Err(Error::FieldMismatch(format!(
            "character has {} coordinates, ideal lives in {} variables",
            rho.len(),
            ideal.nvars
        )));
    }
    if rho.is_identity() {
        return Ok(ideal.includes_identity);
    }
    for g in &ideal.gens {
        if !g.evaluate(rho)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::fox::{alexander_matrix, h1_dim_at};
    use crate::presentation::{parse_presentation, raag_presentation, surface_presentation, Presentation, SimpleGraph};
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn lp(nv: usize, terms: &[(Vec<i64>, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(nv, terms).unwrap()
    }

    #[test]
    fn free_groups_give_zero_ideals() {
        for n in 2..=4 {
            let a = alexander_matrix(&Presentation::free(n));
            for k in 1..n {
                assert!(charvar_ideal(&a, k).unwrap().is_zero_ideal());
            }
            assert!(charvar_ideal(&a, n).unwrap().is_unit_ideal());
        }
    }

    #[test]
    fn torus_ideal() {
        let a = alexander_matrix(&Presentation::free_abelian(2));
        let i = charvar_ideal(&a, 1).unwrap();
        let expect = vec![lp(2, &[(vec![0, 0], -1), (vec![0, 1], 1)]), lp(2, &[(vec![0, 0], -1), (vec![1, 0], 1)])];
        assert_eq!(i.gens, expect);
        assert!(!charvar_member(&i, &CharacterPoint::rational(vec![q(2), q(3)]).unwrap()).unwrap());
        assert!(charvar_member(&i, &CharacterPoint::identity(2)).unwrap());
        assert!(charvar_member(&i, &CharacterPoint::identity(3)).is_err());
    }

    #[test]
    fn path_raag_ideal() {
        let a = alexander_matrix(&raag_presentation(&SimpleGraph::path(3)));
        let i = charvar_ideal(&a, 1).unwrap();
        assert_eq!(i.gens.len(), 3);
        let tb_minus_1 = lp(3, &[(vec![0, 1, 0], 1), (vec![0, 0, 0], -1)]);
        for g in &i.gens {
            assert!(g.div_exact(&tb_minus_1).is_some(), "{g}");
        }
        assert!(charvar_member(&i, &CharacterPoint::rational(vec![q(5), q(1), q(7)]).unwrap()).unwrap());
    }

    fn random_character(rng: &mut ChaCha8Rng, a: &AlexanderMatrix) -> CharacterPoint {
        let b1 = a.b1();
        let torsion = &a.abelianization.torsion;
        if !torsion.is_empty() {
            let order = torsion.iter().fold(1i64, |l, &d| num_integer::lcm(l, d));
            let order = order * [1, 2, 3][rng.gen_range(0..3)];
            let field = PrimeField::for_root_order(order as u64);
            let mut exps: Vec<i64> = (0..b1).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(0..order) }).collect();
            exps.extend(torsion.iter().map(|&d| (order / d) * rng.gen_range(0..d)));
            return CharacterPoint::roots_of_unity(field, &exps);
        }
        // mix generic values with 1 and -1 so that positive-dimensional pieces get hit
        let coords = (0..b1)
            .map(|_| match rng.gen_range(0..4) {
                0 => q(1),
                1 => q(-1),
                _ => {
                    let n: i64 = rng.gen_range(1..=50) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    BigRational::new(n.into(), rng.gen_range(1..=50).into())
                }
            })
            .collect();
        CharacterPoint::rational(coords).unwrap()
    }

    #[test]
    fn membership_matches_direct_rank() {
        let fixtures = [
            Presentation::free(3),
            Presentation::free_abelian(3),
            surface_presentation(2, 0),
            raag_presentation(&SimpleGraph::path(4)),
            raag_presentation(&SimpleGraph::cycle(4)),
            parse_presentation("gens: x y\nrels: [x,[x,y]]\n[y,[x,y]]").unwrap(),
            parse_presentation("gens: a b\nrels: a^2\n[a,b]").unwrap(),
            parse_presentation("gens: a b c\nrels: a^3 b^-3\n[a,c]").unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in &fixtures {
            let a = alexander_matrix(p);
            let ideals: Vec<CharVarIdeal> = (1..=p.num_generators()).map(|k| charvar_ideal(&a, k).unwrap()).collect();
            for _ in 0..150 {
                let rho = random_character(&mut rng, &a);
                let dim = h1_dim_at(&a, &rho).unwrap();
                for i in &ideals {
                    assert_eq!(charvar_member(i, &rho).unwrap(), dim >= i.k, "{p:?} k={} rho={rho:?}", i.k);
                }
            }
        }
    }
}
