use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::charvar::{charvar_member, CharVarIdeal};
use super::resonance::LinearComponent;
use crate::algebra::linear::{self, QVec};
use crate::algebra::{generic_rank, matrix_rank_at, smith_decomposition, CharacterPoint, Fp, IntMatrix, LaurentMatrix, LaurentPoly, PrimeField};
use crate::error::{Error, Result};
use crate::fox::AlexanderMatrix;

/// A torsion point `(zeta^e_1, ..., zeta^e_n)` with `zeta` a primitive `order`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Translate {
    pub order: u64,
    pub exponents: Vec<i64>,
}

impl Translate {
    pub fn point(&self) -> CharacterPoint {
        CharacterPoint::roots_of_unity(PrimeField::for_root_order(self.order), &self.exponents)
    }

    fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|e| e.rem_euclid(self.order as i64) == 0)
    }
}

/// `translate * {s^directions}`: the image of `(C^*)^dim` under the monomial map whose
/// rows are exponent vectors over the free coordinates, shifted by a torsion point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubtorusComponent {
    pub directions: Vec<Vec<i64>>,
    pub translate: Option<Translate>,
    pub dim: usize,
    pub k: usize,
}

impl SubtorusComponent {
    pub fn through_identity(directions: Vec<Vec<i64>>, k: usize) -> Self {
        let dim = directions.len();
        SubtorusComponent { directions, translate: None, dim, k }
    }

    /// The coordinate subtorus on the given free coordinates.
    pub fn coordinate(coords: &[usize], b1: usize, k: usize) -> Self {
        let directions = coords.iter().map(|&c| (0..b1).map(|j| i64::from(j == c)).collect()).collect();
        Self::through_identity(directions, k)
    }

    fn images(&self, nvars: usize) -> Vec<Vec<i64>> {
        (0..nvars).map(|j| self.directions.iter().map(|row| row.get(j).copied().unwrap_or(0)).collect()).collect()
    }

    pub fn direction_space(&self) -> Vec<QVec> {
        self.directions.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect()
    }
}

enum Parametrized {
    Rational(LaurentPoly),
    Modular(LaurentPoly<Fp>),
}

fn parametrize(f: &LaurentPoly, s: &SubtorusComponent) -> Result<Parametrized> {
    let images = s.images(f.nvars());
    match &s.translate {
        Some(t) if !t.is_trivial() => {
            let field = PrimeField::for_root_order(t.order);
            if t.exponents.len() != f.nvars() {
                return Err(Error::DimensionMismatch { expected: f.nvars(), got: t.exponents.len() });
            }
            let scales: Vec<Fp> = t.exponents.iter().map(|&e| field.root_power(e)).collect();
            Ok(Parametrized::Modular(f.substitute_scaled(&images, &scales, s.dim)?))
        }
        _ => Ok(Parametrized::Rational(f.substitute(&images, s.dim)?)),
    }
}

/// Whether the subtorus lies in the zero set of the ideal.
///
/// With a torsion translate the substitution runs over `F_p`, `p = 1 mod order`, so the
/// check is exact modulo `p`.
pub fn subtorus_verify(ideal: &CharVarIdeal, s: &SubtorusComponent) -> Result<bool> {
    if s.dim == 0 {
        let rho = s.translate.as_ref().map_or_else(|| CharacterPoint::identity(ideal.nvars), Translate::point);
        return charvar_member(ideal, &rho);
    }
    for g in &ideal.gens {
        let vanishes = match parametrize(g, s)? {
            Parametrized::Rational(p) => p.is_zero(),
            Parametrized::Modular(p) => p.is_zero(),
        };
        if !vanishes {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The subtorus tangent to a resonance component: its basis rows become the directions.
pub fn exp_map(e: &LinearComponent) -> SubtorusComponent {
    let directions = e.basis.iter().map(|r| r.iter().map(|x| x.to_i64().expect("small basis entries")).collect()).collect();
    SubtorusComponent::through_identity(directions, e.k_max)
}

/// `dim H^1` at a generic point of the subtorus.
pub fn subtorus_level(a: &AlexanderMatrix, s: &SubtorusComponent) -> Result<usize> {
    let n = a.num_generators();
    if s.dim == 0 {
        let rho = s.translate.as_ref().map_or_else(|| CharacterPoint::identity(a.nvars()), Translate::point);
        return crate::fox::h1_dim_at(a, &rho);
    }
    let rank = match &s.translate {
        Some(t) if !t.is_trivial() => {
            let rows: Vec<Vec<LaurentPoly<Fp>>> = a
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|f| match parametrize(f, s)? {
                            Parametrized::Modular(p) => Ok(p),
                            Parametrized::Rational(_) => unreachable!("translate is nontrivial"),
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            generic_rank(&rows)?
        }
        _ => {
            let rows: LaurentMatrix = a
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|f| match parametrize(f, s)? {
                            Parametrized::Rational(p) => Ok(p),
                            Parametrized::Modular(_) => unreachable!("translate is trivial"),
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            generic_rank(&rows)?
        }
    };
    Ok(n - 1 - rank)
}

/// Upper bound for [`subtorus_level`] from one random point of the subtorus.
fn level_at_random_point(a: &AlexanderMatrix, s: &SubtorusComponent, rng: &mut ChaCha8Rng) -> Result<usize> {
    let n = a.num_generators();
    let params: Vec<i64> = (0..s.dim).map(|_| rng.gen_range(2..=97) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let nv = a.nvars();
    let rho = match &s.translate {
        Some(t) if !t.is_trivial() => {
            let field = PrimeField::for_root_order(t.order);
            let coords = (0..nv)
                .map(|j| {
                    let mut x = field.root_power(t.exponents[j]);
                    for (i, row) in s.directions.iter().enumerate() {
                        let e = row.get(j).copied().unwrap_or(0);
                        x = x * field.from_rational(&BigRational::from_integer(params[i].into())).expect("nonzero").powi(e).expect("unit");
                    }
                    x
                })
                .collect();
            CharacterPoint::modular(field, coords)?
        }
        _ => {
            let coords = (0..nv)
                .map(|j| {
                    let mut x = BigRational::from_integer(1.into());
                    for (i, row) in s.directions.iter().enumerate() {
                        let e = row.get(j).copied().unwrap_or(0);
                        let base = BigRational::from_integer(params[i].into());
                        x *= if e >= 0 { num_traits::pow(base, e as usize) } else { num_traits::pow(base.recip(), (-e) as usize) };
                    }
                    x
                })
                .collect();
            CharacterPoint::rational(coords)?
        }
    };
    if rho.is_identity() {
        return Ok(a.b1());
    }
    Ok(n - 1 - matrix_rank_at(&a.entries, &rho)?)
}

/// Charvar ideals for `k = 1..=max_k`, indexed by `k - 1`.
pub fn charvar_tower(a: &AlexanderMatrix, max_k: usize) -> Result<Vec<CharVarIdeal>> {
    (1..=max_k).map(|k| super::charvar::charvar_ideal(a, k)).collect()
}

/// A certified component of some `V^1_k`, with the ideal level at which it was verified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifiedSubtorus {
    pub component: SubtorusComponent,
    pub verified: bool,
}

fn verify_at_level(a: &AlexanderMatrix, ideals: &mut Vec<CharVarIdeal>, s: &SubtorusComponent) -> Result<bool> {
    if s.k == 0 {
        return Ok(false);
    }
    while ideals.len() < s.k {
        let next = super::charvar::charvar_ideal(a, ideals.len() + 1)?;
        ideals.push(next);
    }
    subtorus_verify(&ideals[s.k - 1], s)
}

/// Positive-dimensional components of `V^1` through the identity.
///
/// Candidates are the coordinate subtori and the exponentials of the supplied resonance
/// components; each is kept when its generic jump level is at least 1 and the
/// charvar ideal at that level vanishes on it. Only maximal subtori are returned.
pub fn components_through_identity(
    a: &AlexanderMatrix,
    resonance: &[LinearComponent],
    ideals: &mut Vec<CharVarIdeal>,
    seed: u64,
) -> Result<Vec<VerifiedSubtorus>> {
    let b1 = a.b1();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<VerifiedSubtorus> = Vec::new();
    let mut consider = |s: SubtorusComponent, found: &mut Vec<VerifiedSubtorus>, rng: &mut ChaCha8Rng| -> Result<()> {
        let dirs = s.direction_space();
        if found.iter().any(|f| linear::subspace_le(&dirs, &f.component.direction_space())) {
            return Ok(());
        }
        if level_at_random_point(a, &s, rng)? == 0 {
            return Ok(());
        }
        let k = subtorus_level(a, &s)?;
        if k == 0 {
            return Ok(());
        }
        let s = SubtorusComponent { k, ..s };
        let verified = verify_at_level(a, ideals, &s)?;
        found.retain(|f| !linear::subspace_le(&f.component.direction_space(), &dirs));
        found.push(VerifiedSubtorus { component: s, verified });
        Ok(())
    };
    for e in resonance {
        consider(exp_map(e), &mut found, &mut rng)?;
    }
    if b1 <= 12 {
        let mut masks: Vec<u64> = (1u64..(1 << b1)).collect();
        masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
        for mask in masks {
            let coords: Vec<usize> = (0..b1).filter(|i| mask >> i & 1 == 1).collect();
            consider(SubtorusComponent::coordinate(&coords, b1, 0), &mut found, &mut rng)?;
        }
    }
    found.sort_by(|x, y| {
        (std::cmp::Reverse(x.component.dim), &x.component.directions).cmp(&(std::cmp::Reverse(y.component.dim), &y.component.directions))
    });
    Ok(found)
}

/// Integer characters vanishing on the direction lattice: a `Z`-basis of its orthogonal.
fn orthogonal_lattice(directions: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if directions.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    }
    let m = IntMatrix::from_rows(directions);
    let sd = smith_decomposition(&m);
    (sd.form.rank..n)
        .map(|c| (0..n).map(|i| sd.v[(i, c)].to_i64().expect("small entries")).collect())
        .collect()
}

/// Whether the translated subtorus `t * T_S` lies in the subtorus `s`.
fn contained_in(t: &Translate, coords: &[usize], s: &SubtorusComponent, b1: usize) -> bool {
    let own = SubtorusComponent::coordinate(coords, b1, 0);
    if !linear::subspace_le(&own.direction_space(), &s.direction_space()) {
        return false;
    }
    // t / s.translate must lie in the connected subtorus of `s`
    let n = t.exponents.len();
    let frac = |e: i64, order: u64| BigRational::new(e.into(), (order as i64).into());
    let diff: Vec<BigRational> = (0..n)
        .map(|j| {
            let mine = frac(t.exponents[j], t.order);
            let theirs = s.translate.as_ref().map_or_else(BigRational::zero, |u| frac(u.exponents[j], u.order));
            mine - theirs
        })
        .collect();
    let is_int = |q: &BigRational| q.is_integer();
    // torsion coordinates are fixed on every subtorus
    if !diff[b1..].iter().all(is_int) {
        return false;
    }
    orthogonal_lattice(&s.directions, b1).iter().all(|w| {
        let pairing: BigRational = w.iter().zip(&diff[..b1]).map(|(&x, d)| d * BigRational::from_integer(x.into())).sum();
        is_int(&pairing)
    })
}

/// Search limits for translated components.
#[derive(Clone, Debug)]
pub struct TorsionScan {
    /// Largest translate order tried.
    pub max_order: u64,
    /// Maximum number of candidates examined.
    pub budget: usize,
}

impl Default for TorsionScan {
    fn default() -> Self {
        TorsionScan { max_order: 30, budget: 20_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslatedScan {
    pub components: Vec<VerifiedSubtorus>,
    /// True when the candidate budget ran out before the scan finished.
    pub truncated: bool,
    pub candidates_examined: usize,
}

fn exponent_tuples(n: usize, order: u64, allowed: &[Vec<i64>], out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, cap: usize) {
    if out.len() >= cap {
        return;
    }
    if cur.len() == n {
        let g = cur.iter().fold(order as i64, |g, &e| g.gcd(&e));
        if g == 1 {
            out.push(cur.clone());
        }
        return;
    }
    for &e in &allowed[cur.len()] {
        cur.push(e);
        exponent_tuples(n, order, allowed, out, cur, cap);
        cur.pop();
    }
}

/// Translated coordinate subtori and isolated torsion points of `V^1`, by a bounded scan.
///
/// For each order `N` up to the bound, each coordinate set `S` and each primitive torsion
/// point of order `N` that is trivial on `S`, the translated subtorus is tested; those with
/// positive generic level that are not inside an already known component are verified
/// against the charvar ideal at their level. Completeness is not claimed.
pub fn translated_components(
    a: &AlexanderMatrix,
    through_identity: &[VerifiedSubtorus],
    ideals: &mut Vec<CharVarIdeal>,
    scan: &TorsionScan,
    seed: u64,
) -> Result<TranslatedScan> {
    let b1 = a.b1();
    let nv = a.nvars();
    let torsion = a.abelianization.torsion.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7472);
    let mut found: Vec<(Vec<usize>, VerifiedSubtorus)> = Vec::new();
    let mut examined = 0usize;
    let mut truncated = false;
    let known: Vec<SubtorusComponent> = through_identity.iter().map(|v| v.component.clone()).collect();
    let mut masks: Vec<u64> = if b1 <= 12 { (0u64..(1 << b1)).collect() } else { vec![0] };
    masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
    'orders: for order in 2..=scan.max_order {
        let ord = order as i64;
        for &mask in &masks {
            let coords: Vec<usize> = (0..b1).filter(|i| mask >> i & 1 == 1).collect();
            if coords.len() == b1 && torsion.is_empty() {
                continue;
            }
            let allowed: Vec<Vec<i64>> = (0..nv)
                .map(|j| {
                    if j < b1 {
                        if mask >> j & 1 == 1 { vec![0] } else { (0..ord).collect() }
                    } else {
                        let d = torsion[j - b1];
                        // zeta^e must be a d-th root of unity
                        (0..ord).filter(|e| (e * d) % ord == 0).collect()
                    }
                })
                .collect();
            let remaining = scan.budget.saturating_sub(examined);
            let mut tuples = Vec::new();
            exponent_tuples(nv, order, &allowed, &mut tuples, &mut Vec::new(), remaining + 1);
            for exps in tuples {
                if examined >= scan.budget {
                    truncated = true;
                    break 'orders;
                }
                examined += 1;
                let t = Translate { order, exponents: exps };
                if known.iter().any(|s| contained_in(&t, &coords, s, b1))
                    || found.iter().any(|(_, f)| contained_in(&t, &coords, &f.component, b1))
                {
                    continue;
                }
                let mut s = SubtorusComponent::coordinate(&coords, b1, 0);
                s.translate = Some(t);
                if level_at_random_point(a, &s, &mut rng)? == 0 {
                    continue;
                }
                let k = subtorus_level(a, &s)?;
                if k == 0 {
                    continue;
                }
                s.k = k;
                let verified = verify_at_level(a, ideals, &s)?;
                found.push((coords.clone(), VerifiedSubtorus { component: s, verified }));
            }
        }
    }
    Ok(TranslatedScan { components: found.into_iter().map(|(_, v)| v).collect(), truncated, candidates_examined: examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::{alexander_matrix, cup_tensor};
    use crate::loci::charvar::charvar_ideal;
    use crate::loci::resonance::{resonance_components, ResonanceLocus, SamplerConfig};
    use crate::presentation::{parse_presentation, raag_presentation, surface_presentation, Presentation, SimpleGraph};
    use num_bigint::BigInt;

    fn to_big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn verify_examples() {
        let path = alexander_matrix(&raag_presentation(&SimpleGraph::path(3)));
        let i = charvar_ideal(&path, 1).unwrap();
        assert!(subtorus_verify(&i, &SubtorusComponent::coordinate(&[0, 2], 3, 1)).unwrap());
        assert!(!subtorus_verify(&i, &SubtorusComponent::coordinate(&[0, 1], 3, 1)).unwrap());
        let z2 = alexander_matrix(&Presentation::free_abelian(2));
        let j = charvar_ideal(&z2, 1).unwrap();
        assert!(!subtorus_verify(&j, &SubtorusComponent::coordinate(&[0], 2, 1)).unwrap());
        // dimension zero agrees with membership
        let point = SubtorusComponent { directions: vec![], translate: Some(Translate { order: 3, exponents: vec![1, 0] }), dim: 0, k: 1 };
        assert_eq!(subtorus_verify(&j, &point).unwrap(), charvar_member(&j, &point.translate.as_ref().unwrap().point()).unwrap());
        assert!(subtorus_verify(&j, &SubtorusComponent::through_identity(vec![], 1)).unwrap());
    }

    #[test]
    fn exp_map_examples() {
        let comp = |rows: &[&[i64]]| LinearComponent {
            basis: rows.iter().map(|r| to_big(r)).collect(),
            dim: rows.len(),
            k_max: 1,
            certified: true,
        };
        assert_eq!(exp_map(&comp(&[&[1, 0, 0], &[0, 0, 1]])).directions, vec![vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(exp_map(&comp(&[&[1, 1]])).directions, vec![vec![1, 1]]);
        let s = exp_map(&comp(&[&[2, -1]]));
        assert_eq!(s.images(2), vec![vec![2], vec![-1]]);
        assert!(s.translate.is_none());
    }

    #[test]
    fn tangent_cone_for_formal_fixtures() {
        let cfg = SamplerConfig::default();
        let fixtures = [
            Presentation::free(3),
            surface_presentation(2, 0),
            raag_presentation(&SimpleGraph::path(4)),
            raag_presentation(&SimpleGraph::complete_bipartite(2, 2)),
        ];
        for p in &fixtures {
            let a = alexander_matrix(p);
            let cup = cup_tensor(p);
            for k in 1..a.b1() {
                let comps = resonance_components(&ResonanceLocus::new(cup.clone(), k), &cfg).unwrap();
                let ideal = charvar_ideal(&a, k).unwrap();
                for e in &comps {
                    assert!(subtorus_verify(&ideal, &exp_map(e)).unwrap(), "{p:?} k={k} {e:?}");
                }
            }
        }
    }

    #[test]
    fn components_of_path_raag() {
        let p = raag_presentation(&SimpleGraph::path(3));
        let a = alexander_matrix(&p);
        let mut ideals = Vec::new();
        let comps = components_through_identity(&a, &[], &mut ideals, 1).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].component.directions, vec![vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(comps[0].component.k, 1);
        assert!(comps[0].verified);
    }

    #[test]
    fn translated_component_of_a_torsion_group() {
        // <a, b | a^2, [a, b]^?>: the free product Z/2 * Z has V^1_1 = {tau = -1} x C^*
        let p = parse_presentation("gens: a b\nrels: a^2").unwrap();
        let a = alexander_matrix(&p);
        let mut ideals = Vec::new();
        let through = components_through_identity(&a, &[], &mut ideals, 1).unwrap();
        assert!(through.is_empty());
        let scan = translated_components(&a, &through, &mut ideals, &TorsionScan { max_order: 4, budget: 1000 }, 1).unwrap();
        assert!(!scan.truncated);
        assert_eq!(scan.components.len(), 1);
        let c = &scan.components[0].component;
        assert_eq!(c.dim, 1);
        assert_eq!(c.k, 1);
        assert_eq!(c.translate, Some(Translate { order: 2, exponents: vec![0, 1] }));
        assert!(scan.components[0].verified);
    }
}
