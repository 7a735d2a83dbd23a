use std::cmp::Reverse;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linear::{self, canonical_basis, kernel, QVec, RowSpace};
use crate::algebra::{generic_rank, LaurentPoly};
use crate::error::{Error, Result};
use crate::fox::CupTensor;

/// `R^1_k`: the `u` with `rank(v -> u ∪ v) <= b1 - 1 - k`, plus the origin when `b1 >= k`.
#[derive(Clone, Debug)]
pub struct ResonanceLocus {
    pub k: usize,
    pub cup: CupTensor,
}

impl ResonanceLocus {
    pub fn new(cup: CupTensor, k: usize) -> Self {
        ResonanceLocus { k, cup }
    }

    pub fn b1(&self) -> usize {
        self.cup.b1
    }

    /// Largest allowed rank of the multiplication map, or `None` if no nonzero `u` qualifies.
    fn rank_bound(&self) -> Option<usize> {
        (self.b1() as isize - 1 - self.k as isize).try_into().ok()
    }
}

pub fn resonance_member(r: &ResonanceLocus, u: &[BigRational]) -> Result<bool> {
    if u.len() != r.b1() {
        return Err(Error::DimensionMismatch { expected: r.b1(), got: u.len() });
    }
    if u.iter().all(Zero::is_zero) {
        return Ok(r.b1() >= r.k);
    }
    Ok(r.rank_bound().is_some_and(|bound| linear::rank(&r.cup.multiplication_matrix(u)) <= bound))
}

/// A rational linear subspace of `H^1` inside a resonance variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearComponent {
    /// Canonical integer basis (reduced echelon rows made primitive).
    pub basis: Vec<Vec<BigInt>>,
    pub dim: usize,
    /// Largest `k` with the whole subspace inside `R^1_k`.
    pub k_max: usize,
    /// False for a line through a sampled point whose multiplication kernel was not
    /// resonant and which did not merge into anything larger; its shape is unknown.
    pub certified: bool,
}

impl LinearComponent {
    pub fn rational_basis(&self) -> Vec<QVec> {
        self.basis.iter().map(|r| linear::to_q(r)).collect()
    }
}

/// Sampling parameters for component discovery.
#[derive(Clone, Debug)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: usize,
    /// Bound on numerators and denominators of sampled coordinates.
    pub bound: i64,
    /// Largest `b1` accepted.
    pub max_b1: usize,
}

pub const DEFAULT_SEED: u64 = 42;

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { seed: DEFAULT_SEED, samples: 200, bound: 100, max_b1: 12 }
    }
}

/// Rank of `u -> mu_u` over the function field of the subspace spanned by `basis`.
pub fn generic_multiplication_rank(cup: &CupTensor, basis: &[QVec]) -> Result<usize> {
    let d = basis.len();
    if d == 0 || cup.h2_dim == 0 {
        return Ok(0);
    }
    let mats: Vec<Vec<QVec>> = basis.iter().map(|v| cup.multiplication_matrix(v)).collect();
    let sym: Vec<Vec<LaurentPoly>> = (0..cup.h2_dim)
        .map(|h| {
            (0..cup.b1)
                .map(|j| {
                    let terms = (0..d).filter(|&i| !mats[i][h][j].is_zero()).map(|i| {
                        let mut e = vec![0i64; d];
                        e[i] = 1;
                        (e, mats[i][h][j].clone())
                    });
                    LaurentPoly::from_terms(d, terms).expect("exponents have length d")
                })
                .collect()
        })
        .collect();
    generic_rank(&sym)
}

/// Largest `k` such that the span of `basis` lies in `R^1_k`, if it lies in `R^1_1` at all.
fn subspace_level(cup: &CupTensor, basis: &[QVec], probe: &QVec) -> Result<Option<usize>> {
    let b1 = cup.b1 as isize;
    // cheap rejection: a single point of too large rank rules the subspace out
    let at_probe = linear::rank(&cup.multiplication_matrix(probe)) as isize;
    if b1 - 1 - at_probe < 1 {
        return Ok(None);
    }
    let r = generic_multiplication_rank(cup, basis)? as isize;
    Ok(usize::try_from(b1 - 1 - r).ok().filter(|&k| k >= 1))
}

fn random_nonzero(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    let num = rng.gen_range(1..=bound) * if rng.gen_bool(0.5) { 1 } else { -1 };
    BigRational::new(num.into(), rng.gen_range(1..=bound).into())
}

fn combination(basis: &[QVec], rng: &mut ChaCha8Rng, bound: i64, n: usize) -> QVec {
    let mut out = vec![BigRational::zero(); n];
    for v in basis {
        let c = random_nonzero(rng, bound);
        for (o, x) in out.iter_mut().zip(v) {
            *o += &c * x;
        }
    }
    out
}

/// `{v in W : v ∪ w = 0 for all w in W}`.
fn radical(cup: &CupTensor, basis: &[QVec]) -> Vec<QVec> {
    let d = basis.len();
    let products: Vec<Vec<QVec>> = basis.iter().map(|v| basis.iter().map(|w| cup.product(v, w)).collect()).collect();
    // one equation per (w, h) in the coefficients of v
    let equations: Vec<QVec> = (0..d)
        .flat_map(|j| (0..cup.h2_dim).map(move |h| (j, h)))
        .map(|(j, h)| (0..d).map(|i| products[i][j][h].clone()).collect())
        .collect();
    kernel(&equations, d)
        .iter()
        .map(|c| {
            let mut v = vec![BigRational::zero(); cup.b1];
            for (ci, b) in c.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += ci * y;
                }
            }
            v
        })
        .collect()
}

/// `subspace_level` memoized on the canonical basis of the span.
struct LevelCache<'a> {
    cup: &'a CupTensor,
    seen: HashMap<Vec<Vec<BigInt>>, Option<usize>>,
}

impl LevelCache<'_> {
    fn level(&mut self, basis: &[QVec], rng: &mut ChaCha8Rng, bound: i64) -> Result<Option<usize>> {
        let key = canonical_basis(basis);
        if let Some(&lvl) = self.seen.get(&key) {
            return Ok(lvl);
        }
        let probe = combination(basis, rng, bound, self.cup.b1);
        let lvl = subspace_level(self.cup, basis, &probe)?;
        self.seen.insert(key, lvl);
        Ok(lvl)
    }
}

struct Candidate {
    space: RowSpace,
    certified: bool,
}

/// Linear components of `R^1_k` found by sampling and certified symbolically.
///
/// Sample points are: for every nonempty set of coordinates, two random points supported
/// there; then `samples` random sparse points with small integer entries. A resonant point
/// `u` proposes `ker(mu_u)`, accepted once the generic rank over that kernel is small enough;
/// otherwise the line through `u` is kept and flagged uncertified. Candidates whose sum is
/// again resonant are merged, and only maximal subspaces are returned.
pub fn resonance_components(r: &ResonanceLocus, cfg: &SamplerConfig) -> Result<Vec<LinearComponent>> {
    let b1 = r.b1();
    if b1 > cfg.max_b1 {
        return Err(Error::TooLarge { b1, bound: cfg.max_b1 });
    }
    let Some(bound) = r.rank_bound() else {
        return Ok(vec![]);
    };
    let cup = &r.cup;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut points: Vec<QVec> = Vec::new();
    for mask in 1u64..(1 << b1) {
        for _ in 0..2 {
            points.push((0..b1).map(|i| if mask >> i & 1 == 1 { random_nonzero(&mut rng, cfg.bound) } else { BigRational::zero() }).collect());
        }
    }
    let coords: Vec<usize> = (0..b1).collect();
    for _ in 0..cfg.samples {
        let size = rng.gen_range(1..=b1);
        let support: Vec<usize> = coords.choose_multiple(&mut rng, size).copied().collect();
        let mut u = vec![BigRational::zero(); b1];
        for i in support {
            let v: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            u[i] = BigRational::from_integer(v.into());
        }
        points.push(u);
    }

    let mut cache = LevelCache { cup, seen: HashMap::new() };
    let mut candidates: Vec<Candidate> = Vec::new();
    for u in &points {
        if candidates.iter().any(|c| c.space.contains(u)) {
            continue;
        }
        if linear::rank(&cup.multiplication_matrix(u)) > bound {
            continue;
        }
        // ker(mu_u), then successive radicals; every term contains u
        let mut space = kernel(&cup.multiplication_matrix(u), b1);
        let mut found = None;
        while !space.is_empty() {
            if cache.level(&space, &mut rng, cfg.bound)?.is_some_and(|lvl| lvl >= r.k) {
                found = Some(space);
                break;
            }
            let next = radical(cup, &space);
            if next.len() == space.len() {
                break;
            }
            space = next;
        }
        candidates.push(match found {
            Some(basis) => Candidate { space: RowSpace::new(&basis), certified: true },
            None => Candidate { space: RowSpace::new(std::slice::from_ref(u)), certified: false },
        });
    }

    // merge pairs whose sum stays resonant, until a full pass changes nothing
    loop {
        let mut merged = false;
        let mut i = 0;
        while i < candidates.len() {
            let mut j = i + 1;
            while j < candidates.len() {
                let (a, b) = (&candidates[i].space, &candidates[j].space);
                if a.contains_space(b) || b.contains_space(a) {
                    j += 1;
                    continue;
                }
                let sum = a.sum(b);
                if cache.level(sum.rows(), &mut rng, cfg.bound)?.is_some_and(|lvl| lvl >= r.k) {
                    candidates[i] = Candidate { space: sum, certified: true };
                    candidates.remove(j);
                    merged = true;
                } else {
                    j += 1;
                }
            }
            i += 1;
        }
        if !merged {
            break;
        }
    }

    let mut out: Vec<LinearComponent> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let dominated = candidates.iter().enumerate().any(|(j, d)| {
            j != i && d.space.contains_space(&c.space) && (!c.space.contains_space(&d.space) || j < i)
        });
        if dominated {
            continue;
        }
        let basis = canonical_basis(c.space.rows());
        let dim = basis.len();
        let rank = generic_multiplication_rank(cup, c.space.rows())?;
        let k_max = b1 - 1 - rank;
        out.push(LinearComponent { basis, dim, k_max, certified: c.certified });
    }
    out.sort_by(|a, b| (Reverse(a.dim), &a.basis).cmp(&(Reverse(b.dim), &b.basis)));
    Ok(out)
}

/// `u ∪ -` as a matrix whose entries are linear forms in `b1` symbols; used to check
/// identities that must hold for every `u`.
pub fn symbolic_multiplication(cup: &CupTensor) -> Vec<Vec<LaurentPoly>> {
    let basis: Vec<QVec> = (0..cup.b1)
        .map(|i| (0..cup.b1).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    let mats: Vec<Vec<QVec>> = basis.iter().map(|v| cup.multiplication_matrix(v)).collect();
    (0..cup.h2_dim)
        .map(|h| {
            (0..cup.b1)
                .map(|j| {
                    let terms = (0..cup.b1).map(|i| {
                        let mut e = vec![0i64; cup.b1];
                        e[i] = 1;
                        (e, mats[i][h][j].clone())
                    });
                    LaurentPoly::from_terms(cup.b1, terms).expect("valid exponents")
                })
                .collect()
        })
        .collect()
}
