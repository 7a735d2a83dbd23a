use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::linear::{self, QVec};
use crate::fox::CupTensor;
use crate::lie::{morgan_degree_check, GradedQuotient, VarietyClass};
use crate::loci::{
    exp_map, resonance_member, subtorus_verify, CharVarIdeal, LinearComponent, ResonanceLocus, VerifiedSubtorus,
};
use crate::presentation::SimpleGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub evidence: Value,
}

impl Check {
    pub fn new(name: &str, verdict: Verdict, evidence: Value) -> Self {
        Check { name: name.to_string(), verdict, evidence }
    }
}

pub(crate) fn int_json(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub(crate) fn rows_json(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(int_json).collect())).collect())
}

fn rational_json(x: &BigRational) -> Value {
    if x.is_integer() {
        int_json(x.numer())
    } else {
        Value::String(x.to_string())
    }
}

pub fn check_even_b1(b1: usize) -> Check {
    let verdict = if b1.is_multiple_of(2) { Verdict::Pass } else { Verdict::Fail };
    Check::new("even_b1", verdict, json!({ "b1": b1 }))
}

/// How the cup product restricts to a linear component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyClass {
    pub component: LinearComponent,
    /// Rank of the image of `E ⊗ E -> H^2`.
    pub p: usize,
    /// For `p = 1`: whether the induced skew form on `E` is nondegenerate.
    pub pairing_nondegenerate: bool,
}

impl IsotropyClass {
    pub fn passes(&self) -> bool {
        self.p <= 1 && self.component.dim >= 2 * self.p + 2 && (self.p == 0 || self.pairing_nondegenerate)
    }
}

pub fn isotropy_class(component: &LinearComponent, cup: &CupTensor) -> IsotropyClass {
    let basis = component.rational_basis();
    let d = basis.len();
    let products: Vec<Vec<QVec>> =
        (0..d).map(|i| (0..d).map(|j| cup.product(&basis[i], &basis[j])).collect()).collect();
    let image: Vec<QVec> = products.iter().flatten().cloned().collect();
    let p = linear::rank(&image);
    let mut pairing_nondegenerate = false;
    if p == 1 {
        let w = image.iter().find(|v| v.iter().any(|x| !x.is_zero())).expect("rank one image").clone();
        let h = w.iter().position(|x| !x.is_zero()).expect("nonzero vector");
        let form: Vec<QVec> = products.iter().map(|row| row.iter().map(|v| &v[h] / &w[h]).collect()).collect();
        pairing_nondegenerate = linear::rank(&form) == d;
    }
    IsotropyClass { component: component.clone(), p, pairing_nondegenerate }
}

pub fn check_isotropy(components: &[LinearComponent], cup: &CupTensor) -> (Vec<IsotropyClass>, Check) {
    let classes: Vec<IsotropyClass> = components.iter().map(|c| isotropy_class(c, cup)).collect();
    let mut verdict = Verdict::Pass;
    let mut entries = Vec::new();
    for c in &classes {
        let v = if !c.component.certified {
            Verdict::Inconclusive
        } else if c.passes() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        verdict = verdict.combine(v);
        entries.push(json!({
            "basis": rows_json(&c.component.basis),
            "dim": c.component.dim,
            "p": c.p,
            "pairing_nondegenerate": c.pairing_nondegenerate,
            "verdict": v,
        }));
    }
    (classes, Check::new("isotropy", verdict, json!({ "components": entries })))
}

pub fn check_pairwise_intersections(components: &[LinearComponent]) -> Check {
    let mut verdict = Verdict::Pass;
    let mut offending = Vec::new();
    for (i, a) in components.iter().enumerate() {
        for b in &components[i + 1..] {
            let dim = linear::intersection_dim(&a.rational_basis(), &b.rational_basis());
            if dim > 0 {
                let v = if a.certified && b.certified { Verdict::Fail } else { Verdict::Inconclusive };
                verdict = verdict.combine(v);
                offending.push(json!({
                    "first": rows_json(&a.basis),
                    "second": rows_json(&b.basis),
                    "intersection_dim": dim,
                }));
            }
        }
    }
    Check::new("pairwise_intersections", verdict, json!({ "components": components.len(), "overlaps": offending }))
}

/// Resonance components at one jump level.
#[derive(Clone, Debug)]
pub struct LevelComponents {
    pub k: usize,
    pub components: Vec<LinearComponent>,
}

/// Tangent cone comparison at the identity.
///
/// The direction space of a subtorus through 1 inside `V^1_k` always lies in `R^1_k`; a
/// failure there is definitive. The converse inclusion `exp(R^1_k) ⊆ V^1_k` is only
/// expected for 1-formal groups, so without `formal` the verdict is at best inconclusive.
pub fn check_tangent_cone(
    cup: &CupTensor,
    resonance: &[LevelComponents],
    ideals: &[CharVarIdeal],
    through_identity: &[VerifiedSubtorus],
    formal: bool,
    seed: u64,
) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7463);
    let mut verdict = Verdict::Pass;
    let mut exp_failures = Vec::new();
    let mut exp_checked = 0;
    let mut uncertified = 0;
    for level in resonance {
        let Some(ideal) = ideals.get(level.k - 1) else { continue };
        for e in &level.components {
            if !e.certified {
                uncertified += 1;
                continue;
            }
            exp_checked += 1;
            let mut s = exp_map(e);
            s.k = level.k;
            match subtorus_verify(ideal, &s) {
                Ok(true) => {}
                Ok(false) => exp_failures.push(json!({ "k": level.k, "basis": rows_json(&e.basis) })),
                Err(err) => exp_failures.push(json!({ "k": level.k, "basis": rows_json(&e.basis), "error": err.to_string() })),
            }
        }
    }
    let mut direction_failures = Vec::new();
    let mut unverified = 0;
    for v in through_identity {
        if !v.verified {
            unverified += 1;
            continue;
        }
        let c = &v.component;
        let locus = ResonanceLocus::new(cup.clone(), c.k);
        let dirs = c.direction_space();
        let mut probes: Vec<QVec> = dirs.clone();
        for _ in 0..3 {
            let mut u = vec![BigRational::zero(); cup.b1];
            for d in &dirs {
                let coeff = BigRational::from_integer(rng.gen_range(-20i64..=20).into());
                for (x, y) in u.iter_mut().zip(d) {
                    *x += &coeff * y;
                }
            }
            probes.push(u);
        }
        if let Some(u) = probes.iter().find(|u| !resonance_member(&locus, u).unwrap_or(false)) {
            direction_failures.push(json!({
                "k": c.k,
                "directions": c.directions,
                "point": u.iter().map(rational_json).collect::<Vec<_>>(),
            }));
        }
    }
    if !direction_failures.is_empty() {
        verdict = Verdict::Fail;
    } else if !formal {
        verdict = Verdict::Inconclusive;
    } else if !exp_failures.is_empty() {
        verdict = Verdict::Fail;
    } else if uncertified > 0 || unverified > 0 {
        verdict = Verdict::Inconclusive;
    }
    Check::new(
        "tangent_cone",
        verdict,
        json!({
            "formal": formal,
            "partial": !formal,
            "exp_components_checked": exp_checked,
            "exp_not_in_charvar": exp_failures,
            "directions_not_resonant": direction_failures,
            "uncertified_components": uncertified + unverified,
        }),
    )
}

/// A smooth curve whose fibration would explain a component of dimension `d` at level `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CurveProfile {
    /// Closed genus `g` curve: `d = 2g`, `k = 2g - 2`.
    Projective { g: usize },
    /// Genus `g` with `s >= 1` punctures: `d = 2g + s - 1`, `k = 2g + s - 2`.
    Punctured { g: usize, s: usize },
}

impl CurveProfile {
    pub fn dim(self) -> usize {
        match self {
            CurveProfile::Projective { g } => 2 * g,
            CurveProfile::Punctured { g, s } => 2 * g + s - 1,
        }
    }

    /// Minus the Euler characteristic.
    pub fn level(self) -> usize {
        match self {
            CurveProfile::Projective { g } => 2 * g - 2,
            CurveProfile::Punctured { g, s } => 2 * g + s - 2,
        }
    }
}

pub fn curve_profiles(d: usize, k: usize) -> Vec<CurveProfile> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    if d >= 4 && d.is_multiple_of(2) && k + 2 == d {
        out.push(CurveProfile::Projective { g: d / 2 });
    }
    if d >= 2 && k + 1 == d {
        out.extend((0..=d / 2).map(|g| CurveProfile::Punctured { g, s: d + 1 - 2 * g }));
    }
    out
}

pub fn check_curve_profiles(through_identity: &[VerifiedSubtorus]) -> Check {
    let mut verdict = Verdict::Pass;
    let mut entries = Vec::new();
    for v in through_identity {
        let c = &v.component;
        if c.dim == 0 {
            continue;
        }
        let profiles = curve_profiles(c.dim, c.k);
        let here = if !v.verified {
            Verdict::Inconclusive
        } else if profiles.is_empty() {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        verdict = verdict.combine(here);
        entries.push(json!({ "dim": c.dim, "k": c.k, "directions": c.directions, "profiles": profiles, "verdict": here }));
    }
    Check::new("curve_profiles", verdict, json!({ "components": entries }))
}

pub fn check_morgan(q: &GradedQuotient, class: VarietyClass) -> Check {
    match morgan_degree_check(q, class) {
        Ok(v) => Check::new(
            "morgan_degrees",
            if v.pass { Verdict::Pass } else { Verdict::Fail },
            json!({
                "up_to_degree": v.up_to_degree,
                "dims": q.dims,
                "generator_degrees": v.generator_degrees,
                "relation_degrees": v.relation_degrees,
                "relation_dims": q.relation_dims,
                "witness": v.witness.map(|(kind, degree)| json!({ "kind": kind, "degree": degree })),
            }),
        ),
        Err(e) => Check::new("morgan_degrees", Verdict::Inconclusive, json!({ "error": e.to_string() })),
    }
}

/// Realizability of a right-angled Artin group by the graph criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RaagClassification {
    /// Complete multipartite, i.e. the group is a product of free groups.
    pub realizable: bool,
    /// Parts of the multipartition (components of the complement), when realizable.
    pub parts: Vec<Vec<String>>,
    /// Ranks of the free factors, one per part.
    pub free_ranks: Vec<usize>,
    /// `u, v, w` with `u, w` adjacent and `v` adjacent to neither: an induced path
    /// `u - v - w` in the complement.
    pub witness: Option<[String; 3]>,
    /// Free abelian of even rank: complete with an even number of vertices.
    pub projective: bool,
    pub description: String,
}

pub fn raag_classify(g: &SimpleGraph) -> RaagClassification {
    let n = g.vertex_count();
    let names = g.vertices();
    let mut witness = None;
    'search: for v in 0..n {
        for u in 0..n {
            for w in u + 1..n {
                if u != v && w != v && !g.adjacent(u, v) && !g.adjacent(v, w) && g.adjacent(u, w) {
                    witness = Some([names[u].clone(), names[v].clone(), names[w].clone()]);
                    break 'search;
                }
            }
        }
    }
    let realizable = witness.is_none();
    let (parts, free_ranks, description) = if realizable {
        let comps = g.complement().components();
        let parts: Vec<Vec<String>> = comps.iter().map(|c| c.iter().map(|&i| names[i].clone()).collect()).collect();
        let ranks: Vec<usize> = comps.iter().map(Vec::len).collect();
        let description = if ranks.is_empty() {
            "trivial group".to_string()
        } else if ranks.iter().all(|&r| r == 1) {
            format!("Z^{}", ranks.len())
        } else {
            ranks.iter().map(|r| format!("F_{r}")).collect::<Vec<_>>().join(" x ")
        };
        (parts, ranks, description)
    } else {
        (vec![], vec![], "not a product of free groups".to_string())
    };
    let complete = g.edges().len() == n * n.saturating_sub(1) / 2;
    RaagClassification { realizable, parts, free_ranks, witness, projective: complete && n.is_multiple_of(2), description }
}

pub fn check_raag(g: &SimpleGraph, class: VarietyClass) -> Check {
    let c = raag_classify(g);
    let verdict = match (c.realizable, class) {
        (false, _) => Verdict::Fail,
        (true, VarietyClass::Projective) if !c.projective => Verdict::Fail,
        _ => Verdict::Pass,
    };
    Check::new("raag_classification", verdict, serde_json::to_value(&c).expect("plain data"))
}
