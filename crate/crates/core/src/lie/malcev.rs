use std::collections::{HashMap, VecDeque};

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::free::FreeLieTruncation;
use super::sparse::{sparse_rank, Echelon, SVec};
use crate::error::{Error, Result};
use crate::fox::magnus::{check_degree, word_series, Substitution};
use crate::presentation::Presentation;

pub const MALCEV_MAX_DEGREE: usize = 5;
pub const MALCEV_DEFAULT_DEGREE: usize = 4;

/// Logarithms of the relators in the Lyndon basis of the free Lie truncation.
#[derive(Debug)]
pub struct RelatorLog {
    pub algebra: FreeLieTruncation,
    pub logs: Vec<SVec>,
}

impl RelatorLog {
    /// Homogeneous part of relator `r` in degree `d`.
    pub fn part(&self, r: usize, d: usize) -> SVec {
        let range = self.algebra.degree_range(d);
        self.logs[r].range(range).map(|(k, v)| (*k, v.clone())).collect()
    }
}

/// `log r` under `x -> exp(X)`, truncated at degree `D`.
pub fn relator_logs(p: &Presentation, degree: usize) -> Result<RelatorLog> {
    let algebra = FreeLieTruncation::new(p.num_generators(), degree)?;
    let logs = p
        .relators()
        .iter()
        .map(|r| algebra.series_coords(&word_series(r, degree, Substitution::Exponential).log()))
        .collect::<Result<_>>()?;
    Ok(RelatorLog { algebra, logs })
}

/// Associated graded of the truncated Malcev Lie algebra, in positive degrees `1..=D`.
///
/// Degree `d` here is weight `-d` in the mixed Hodge convention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedQuotient {
    pub degree: usize,
    /// `dims[d - 1]` is the dimension of the degree-`d` piece.
    pub dims: Vec<usize>,
    /// Minimal generators per degree.
    pub generator_dims: Vec<usize>,
    /// Minimal relations per degree (degreewise `H_2`).
    pub relation_dims: Vec<usize>,
}

impl GradedQuotient {
    pub fn generator_degrees(&self) -> Vec<usize> {
        nonzero_degrees(&self.generator_dims)
    }

    pub fn relation_degrees(&self) -> Vec<usize> {
        nonzero_degrees(&self.relation_dims)
    }
}

fn nonzero_degrees(v: &[usize]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i + 1).collect()
}

fn unit(i: usize) -> SVec {
    [(i, BigRational::one())].into_iter().collect()
}

/// Closed ideal spanned by the relator logs and their iterated brackets with generators.
fn closed_ideal(logs: &RelatorLog) -> Echelon {
    let l = &logs.algebra;
    let mut ideal = Echelon::new();
    let mut queue: VecDeque<SVec> = logs.logs.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        let Some(row) = ideal.insert(v) else { continue };
        let row = row.clone();
        for g in 0..l.num_generators() {
            let w = l.bracket_vec(&unit(g), &row);
            if !w.is_empty() {
                queue.push_back(w);
            }
        }
    }
    ideal
}

/// The graded quotient `gr L / in(I)` with a basis of non-leading Lyndon elements.
struct GradedAlgebra<'a> {
    free: &'a FreeLieTruncation,
    leading: Echelon,
    /// Free-algebra indices of the quotient basis, by degree.
    basis: Vec<Vec<usize>>,
}

impl GradedAlgebra<'_> {
    fn degree_of(&self, i: usize) -> usize {
        self.free.degree_of(i)
    }

    /// Bracket of quotient basis elements, in quotient coordinates (free indices).
    fn bracket(&self, i: usize, j: usize) -> SVec {
        self.leading.reduce(self.free.bracket(i, j))
    }

    fn all_basis(&self) -> Vec<usize> {
        self.basis.iter().flatten().copied().collect()
    }
}

fn graded_algebra<'a>(logs: &'a RelatorLog) -> GradedAlgebra<'a> {
    let l = &logs.algebra;
    let ideal = closed_ideal(logs);
    let mut leading = Echelon::new();
    for (&pivot, row) in ideal.rows() {
        let range = l.degree_range(l.degree_of(pivot));
        leading.insert(row.range(range).map(|(k, v)| (*k, v.clone())).collect());
    }
    let basis = (1..=l.degree_cap()).map(|d| l.degree_range(d).filter(|&i| !leading.is_pivot(i)).collect()).collect();
    GradedAlgebra { free: l, leading, basis }
}

/// Ranks of `d_2: Λ²G → G` and `d_3: Λ³G → Λ²G` in each degree, plus `dim Λ²G`.
fn chevalley_eilenberg(g: &GradedAlgebra, max_degree: usize) -> Vec<(usize, usize, usize)> {
    let all = g.all_basis();
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let pairs: Vec<(usize, usize)> = all
            .iter()
            .enumerate()
            .flat_map(|(x, &a)| all[x + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| g.degree_of(a) + g.degree_of(b) == d)
            .collect();
        let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let d2 = sparse_rank(pairs.iter().map(|&(a, b)| g.bracket(a, b)));
        let wedge = |e: usize, c: usize, coeff: &BigRational, out: &mut SVec| {
            if e == c {
                return;
            }
            let (key, sign) = if e < c { ((e, c), coeff.clone()) } else { ((c, e), -coeff.clone()) };
            super::sparse::axpy(out, &sign, &[(pair_index[&key], BigRational::one())].into_iter().collect());
        };
        let mut rows = Vec::new();
        for (x, &a) in all.iter().enumerate() {
            for (y, &b) in all.iter().enumerate().skip(x + 1) {
                for &c in &all[y + 1..] {
                    if g.degree_of(a) + g.degree_of(b) + g.degree_of(c) != d {
                        continue;
                    }
                    // d(a∧b∧c) = [a,b]∧c - [a,c]∧b + [b,c]∧a
                    let mut row = SVec::new();
                    for (e, v) in g.bracket(a, b) {
                        wedge(e, c, &v, &mut row);
                    }
                    for (e, v) in g.bracket(a, c) {
                        wedge(e, b, &-v, &mut row);
                    }
                    for (e, v) in g.bracket(b, c) {
                        wedge(e, a, &v, &mut row);
                    }
                    rows.push(row);
                }
            }
        }
        out.push((pairs.len(), d2, sparse_rank(rows)));
    }
    out
}

/// Graded pieces, minimal generators and minimal relations of the Malcev Lie algebra,
/// computed from the class-`D` quotient of the free Lie algebra by the relator logs.
pub fn malcev_truncation(p: &Presentation, degree: usize) -> Result<GradedQuotient> {
    check_degree(degree)?;
    if degree > MALCEV_MAX_DEGREE {
        return Err(Error::DegreeOutOfRange { degree, min: 2, max: MALCEV_MAX_DEGREE });
    }
    let logs = relator_logs(p, degree)?;
    let g = graded_algebra(&logs);
    let dims: Vec<usize> = g.basis.iter().map(Vec::len).collect();
    let ce = chevalley_eilenberg(&g, degree);
    let generator_dims = dims.iter().zip(&ce).map(|(dim, (_, d2, _))| dim - d2).collect();
    let relation_dims = ce.iter().map(|(wedge2, d2, d3)| wedge2 - d2 - d3).collect();
    Ok(GradedQuotient { degree, dims, generator_dims, relation_dims })
}

/// Which necessary condition on the Malcev Lie algebra to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarietyClass {
    Projective,
    Quasiprojective,
}

impl std::str::FromStr for VarietyClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "projective" => Ok(VarietyClass::Projective),
            "quasiprojective" => Ok(VarietyClass::Quasiprojective),
            other => Err(format!("unknown class `{other}` (expected projective or quasiprojective)")),
        }
    }
}

impl VarietyClass {
    pub fn as_str(self) -> &'static str {
        match self {
            VarietyClass::Projective => "projective",
            VarietyClass::Quasiprojective => "quasiprojective",
        }
    }

    fn allowed(self) -> (&'static [usize], &'static [usize]) {
        match self {
            VarietyClass::Projective => (&[1], &[2]),
            VarietyClass::Quasiprojective => (&[1, 2], &[2, 3, 4]),
        }
    }

    pub fn min_degree(self) -> usize {
        match self {
            VarietyClass::Projective => 3,
            VarietyClass::Quasiprojective => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeKind {
    Generator,
    Relation,
}

/// Outcome of the generator/relation degree test; a pass holds only up to `up_to_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorganVerdict {
    pub pass: bool,
    pub witness: Option<(DegreeKind, usize)>,
    pub up_to_degree: usize,
    pub generator_degrees: Vec<usize>,
    pub relation_degrees: Vec<usize>,
}

pub fn morgan_degree_check(q: &GradedQuotient, class: VarietyClass) -> Result<MorganVerdict> {
    if q.degree < class.min_degree() {
        return Err(Error::InsufficientTruncation { have: q.degree, need: class.min_degree() });
    }
    let (gens, rels) = class.allowed();
    let generator_degrees = q.generator_degrees();
    let relation_degrees = q.relation_degrees();
    let witness = generator_degrees
        .iter()
        .find(|d| !gens.contains(d))
        .map(|&d| (DegreeKind::Generator, d))
        .or_else(|| relation_degrees.iter().find(|d| !rels.contains(d)).map(|&d| (DegreeKind::Relation, d)));
    Ok(MorganVerdict { pass: witness.is_none(), witness, up_to_degree: q.degree, generator_degrees, relation_degrees })
}
