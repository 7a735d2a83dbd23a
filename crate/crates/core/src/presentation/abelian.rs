use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::Presentation;
use crate::algebra::{smith_decomposition, IntMatrix, SmithDecomposition};

/// `H_1` of a presented group, with explicit coordinates.
///
/// Coordinates on `H_1` are `x -> x V` for the Smith transform `V` of the relator
/// exponent matrix. The free part uses the last `b1` columns of `V`, the torsion
/// part the columns whose invariant factor exceeds one.
#[derive(Clone, Debug)]
pub struct AbelianizationData {
    pub b1: usize,
    pub torsion: Vec<i64>,
    /// Row `i`: image of generator `i` in the free basis (`n x b1`).
    pub basis_map: Vec<Vec<i64>>,
    /// Row `i`: image of generator `i` in the torsion summands, reduced into `[0, d_j)`.
    pub torsion_map: Vec<Vec<i64>>,
    /// Relator exponent matrix, one row per relator.
    pub relation_matrix: IntMatrix,
    pub smith: SmithDecomposition,
    torsion_cols: Vec<usize>,
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("abelianization entries fit in i64")
}

pub fn abelianization(p: &Presentation) -> AbelianizationData {
    let n = p.num_generators();
    let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_vector(n)).collect();
    let e = if rows.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_rows(&rows) };
    let smith = smith_decomposition(&e);
    let rank = smith.form.rank;
    let b1 = n - rank;
    let torsion_cols: Vec<usize> = (0..rank).filter(|&c| smith.form.diag[c] > BigInt::one()).collect();
    let torsion: Vec<i64> = torsion_cols.iter().map(|&c| small(&smith.form.diag[c])).collect();
    let v = &smith.v;
    let basis_map = (0..n).map(|i| (rank..n).map(|c| small(&v[(i, c)])).collect()).collect();
    let torsion_map = (0..n)
        .map(|i| torsion_cols.iter().zip(&torsion).map(|(&c, &d)| small(&v[(i, c)]).rem_euclid(d)).collect())
        .collect();
    AbelianizationData { b1, torsion, basis_map, torsion_map, relation_matrix: e, smith, torsion_cols }
}

impl AbelianizationData {
    pub fn num_generators(&self) -> usize {
        self.basis_map.len()
    }

    /// Free coordinates followed by torsion coordinates.
    pub fn num_coords(&self) -> usize {
        self.b1 + self.torsion.len()
    }

    /// Coordinates of the image of an exponent vector `x in Z^n`.
    pub fn coords_of(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.num_coords()];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (k, o) in out.iter_mut().enumerate() {
                *o += xi * self.generator_coords_entry(i, k);
            }
        }
        for (j, &d) in self.torsion.iter().enumerate() {
            out[self.b1 + j] = out[self.b1 + j].rem_euclid(d);
        }
        out
    }

    fn generator_coords_entry(&self, i: usize, k: usize) -> i64 {
        if k < self.b1 {
            self.basis_map[i][k]
        } else {
            self.torsion_map[i][k - self.b1]
        }
    }

    /// Coordinates of the image of generator `i`.
    pub fn generator_coords(&self, i: usize) -> Vec<i64> {
        (0..self.num_coords()).map(|k| self.generator_coords_entry(i, k)).collect()
    }

    /// Exponent vector in `Z^n` of a lift of the coordinate basis element `k`.
    pub fn coord_lift(&self, k: usize) -> Vec<i64> {
        let row = if k < self.b1 { self.num_generators() - self.b1 + k } else { self.torsion_cols[k - self.b1] };
        let v_inv = &self.smith.v_inv;
        (0..v_inv.cols()).map(|i| small(&v_inv[(row, i)])).collect()
    }

    /// Basis of `H^1(G; Q)`: the free coordinate functionals, as values on generators.
    pub fn h1_basis(&self) -> Vec<Vec<i64>> {
        (0..self.b1).map(|k| self.basis_map.iter().map(|row| row[k]).collect()).collect()
    }

    /// `(variable, order)` for each torsion coordinate.
    pub fn cyclic_vars(&self) -> Vec<(usize, i64)> {
        self.torsion.iter().enumerate().map(|(j, &d)| (self.b1 + j, d)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, raag_presentation, surface_presentation, SimpleGraph};

    #[test]
    fn examples() {
        let f3 = abelianization(&Presentation::free(3));
        assert_eq!((f3.b1, f3.torsion.clone()), (3, vec![]));
        let z3 = abelianization(&parse_presentation("gens: a\nrels: a^3").unwrap());
        assert_eq!((z3.b1, z3.torsion.clone()), (0, vec![3]));
        let s2 = abelianization(&surface_presentation(2, 0));
        assert_eq!((s2.b1, s2.torsion.clone()), (4, vec![]));
    }

    #[test]
    fn coordinates_kill_relators_and_lifts_are_dual() {
        let p = parse_presentation("gens: a b c\nrels: a^2 b^4\nb^2 c^-6\n[a,c]").unwrap();
        let ab = abelianization(&p);
        assert_eq!(ab.b1, 1);
        for r in p.relators() {
            assert!(ab.coords_of(&r.exponent_vector(3)).iter().all(|&x| x == 0));
        }
        for k in 0..ab.num_coords() {
            let c = ab.coords_of(&ab.coord_lift(k));
            let expect: Vec<i64> = (0..ab.num_coords()).map(|j| i64::from(j == k)).collect();
            assert_eq!(c, expect);
        }
        let order: i64 = ab.torsion.iter().product();
        assert_eq!(order, 4);
    }

    #[test]
    fn raag_betti_is_vertex_count() {
        for g in [SimpleGraph::path(4), SimpleGraph::complete(4), SimpleGraph::cycle(5), SimpleGraph::empty(3)] {
            let ab = abelianization(&raag_presentation(&g));
            assert_eq!(ab.b1, g.vertex_count());
            assert!(ab.torsion.is_empty());
        }
    }
}
