use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::magnus::{magnus_expand, MagnusExpansion};
use crate::presentation::{abelianization, AbelianizationData, Presentation};

/// Cup product `H^1 x H^1 -> H^2` of the presentation 2-complex.
///
/// `H^1` uses the basis of [`AbelianizationData::h1_basis`]; `H^2` is the cokernel of the
/// relator exponent matrix, with coordinates `(U y)_j` for `j >= rank`, `U` the left Smith transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupTensor {
    pub b1: usize,
    pub h2_dim: usize,
    /// `mu[i][j][h]`: coordinate `h` of `e_i ∪ e_j`.
    pub mu: Vec<Vec<Vec<BigRational>>>,
}

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Projection of a relator-indexed vector to `H^2` coordinates.
pub(crate) fn project_h2(ab: &AbelianizationData, y: &[BigRational]) -> Vec<BigRational> {
    let u = &ab.smith.u;
    let m = u.rows();
    (ab.smith.form.rank..m)
        .map(|j| (0..m).fold(BigRational::zero(), |acc, k| acc + q(&u[(j, k)]) * &y[k]))
        .collect()
}

pub fn cup_tensor(p: &Presentation) -> CupTensor {
    let ab = abelianization(p);
    let magnus = magnus_expand(p, 2).expect("degree 2 is in range");
    cup_from_parts(&ab, &magnus)
}

pub(crate) fn cup_from_parts(ab: &AbelianizationData, magnus: &MagnusExpansion) -> CupTensor {
    let b1 = ab.b1;
    let m = magnus.relators.len();
    let h2_dim = m - ab.smith.form.rank;
    let basis = ab.h1_basis();
    let n = ab.num_generators();
    let half = BigRational::new(1.into(), 2.into());
    // antisymmetrized degree-2 coefficients per relator
    let anti: Vec<Vec<Vec<BigRational>>> = (0..m)
        .map(|r| {
            (0..n)
                .map(|a| (0..n).map(|b| (magnus.coeff(r, &[a, b]) - magnus.coeff(r, &[b, a])) * &half).collect())
                .collect()
        })
        .collect();
    let mut mu = vec![vec![vec![BigRational::zero(); h2_dim]; b1]; b1];
    for i in 0..b1 {
        for j in i + 1..b1 {
            let y: Vec<BigRational> = anti
                .iter()
                .map(|mr| {
                    let mut acc = BigRational::zero();
                    for a in 0..n {
                        if basis[i][a] == 0 {
                            continue;
                        }
                        for b in 0..n {
                            if basis[j][b] != 0 && !mr[a][b].is_zero() {
                                acc += &mr[a][b] * BigRational::from_integer((basis[i][a] * basis[j][b]).into());
                            }
                        }
                    }
                    acc
                })
                .collect();
            let h = project_h2(ab, &y);
            mu[j][i] = h.iter().map(|x| -x).collect();
            mu[i][j] = h;
        }
    }
    CupTensor { b1, h2_dim, mu }
}

impl CupTensor {
    /// `u ∪ v` in `H^2` coordinates.
    pub fn product(&self, u: &[BigRational], v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.h2_dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                for (h, o) in out.iter_mut().enumerate() {
                    *o += ui * vj * &self.mu[i][j][h];
                }
            }
        }
        out
    }

    /// Matrix of `v -> u ∪ v`, of shape `h2_dim x b1`.
    pub fn multiplication_matrix(&self, u: &[BigRational]) -> Vec<Vec<BigRational>> {
        (0..self.h2_dim)
            .map(|h| {
                (0..self.b1)
                    .map(|j| u.iter().enumerate().fold(BigRational::zero(), |acc, (i, ui)| acc + ui * &self.mu[i][j][h]))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{letter_names, parse_presentation, surface_presentation, Word};
    use proptest::prelude::*;

    fn qi(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn torus_and_free() {
        let c = cup_tensor(&Presentation::free_abelian(2));
        assert_eq!((c.b1, c.h2_dim), (2, 1));
        assert_eq!(c.mu[0][1], vec![qi(1)]);
        assert_eq!(c.mu[1][0], vec![qi(-1)]);
        let f = cup_tensor(&Presentation::free(3));
        assert_eq!(f.h2_dim, 0);
        assert!(f.mu.iter().flatten().all(|v| v.is_empty()));
    }

    #[test]
    fn genus_two_symplectic() {
        let c = cup_tensor(&surface_presentation(2, 0));
        assert_eq!((c.b1, c.h2_dim), (4, 1));
        let mut expect = vec![vec![qi(0); 4]; 4];
        expect[0][1] = qi(1);
        expect[1][0] = qi(-1);
        expect[2][3] = qi(1);
        expect[3][2] = qi(-1);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(c.mu[i][j], vec![expect[i][j].clone()]);
            }
        }
    }

    #[test]
    fn relators_in_the_image_do_not_count() {
        // three relators, exponent matrix of rank one
        let p = parse_presentation("gens: a b c\nrels: a^2 b^-2\n[a,c]\n[b,c]").unwrap();
        let c = cup_tensor(&p);
        assert_eq!(c.b1, 2);
        assert_eq!(c.h2_dim, 2);
    }

    proptest! {
        // The symmetric part of the degree-2 coefficients lies in the image of the exponent matrix,
        // so the unsymmetrized pairing agrees with the stored tensor on H^1.
        #[test]
        fn raw_pairing_matches(rels in prop::collection::vec(prop::collection::vec(prop_oneof![1i64..=3, -3i64..=-1], 1..10), 0..4)) {
            let words = rels.iter().map(|l| Word::from_letters(l)).collect();
            let p = Presentation::new(letter_names(3), words).unwrap();
            let c = cup_tensor(&p);
            let ab = abelianization(&p);
            let mag = magnus_expand(&p, 2).unwrap();
            let basis = ab.h1_basis();
            for i in 0..c.b1 {
                for j in 0..c.b1 {
                    let y: Vec<BigRational> = (0..mag.relators.len())
                        .map(|r| {
                            let mut acc = BigRational::zero();
                            for a in 0..3 {
                                for b in 0..3 {
                                    acc += mag.coeff(r, &[a, b]) * qi(basis[i][a] * basis[j][b]);
                                }
                            }
                            acc
                        })
                        .collect();
                    prop_assert_eq!(project_h2(&ab, &y), c.mu[i][j].clone());
                }
            }
        }
    }
}
