use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use super::checks::{
    check_curve_profiles, check_even_b1, check_isotropy, check_morgan, check_pairwise_intersections, check_raag,
    check_tangent_cone, Check, LevelComponents, Verdict,
};
use crate::error::{Error, Result};
use crate::fox::{alexander_matrix, cup_tensor, AlexanderMatrix, CupTensor};
use crate::lie::{malcev_truncation, VarietyClass, MALCEV_DEFAULT_DEGREE};
use crate::loci::{
    charvar_ideal, components_through_identity, resonance_components, CharVarIdeal, LinearComponent, ResonanceLocus,
    SamplerConfig, Translate, VerifiedSubtorus,
};
use crate::presentation::{raag_presentation, Presentation, SimpleGraph};

/// One entry of the `components` list of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentRecord {
    pub kind: &'static str,
    pub k: usize,
    pub dim: usize,
    pub basis: Vec<Vec<i64>>,
    pub translate: Option<Translate>,
    pub certified: bool,
}

impl ComponentRecord {
    pub fn linear(c: &LinearComponent) -> Result<Self> {
        let basis = c
            .basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().ok_or_else(|| Error::Computation(format!("basis entry {x} too large")))).collect())
            .collect::<Result<_>>()?;
        Ok(ComponentRecord { kind: "linear", k: c.k_max, dim: c.dim, basis, translate: None, certified: c.certified })
    }

    pub fn subtorus(v: &VerifiedSubtorus) -> Self {
        let c = &v.component;
        ComponentRecord {
            kind: "subtorus",
            k: c.k,
            dim: c.dim,
            basis: c.directions.clone(),
            translate: c.translate.clone(),
            certified: v.verified,
        }
    }
}

#[derive(Clone, Debug)]
pub enum BatteryInput {
    Presentation(Presentation),
    Graph(SimpleGraph),
}

impl BatteryInput {
    pub fn presentation(&self) -> Presentation {
        match self {
            BatteryInput::Presentation(p) => p.clone(),
            BatteryInput::Graph(g) => raag_presentation(g),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            BatteryInput::Presentation(p) => json!({
                "kind": "presentation",
                "generators": p.gen_names(),
                "relators": p.relators().iter().map(|r| r.render(p.gen_names())).collect::<Vec<_>>(),
            }),
            BatteryInput::Graph(g) => json!({
                "kind": "graph",
                "vertices": g.vertices(),
                "edges": g.edges().iter().map(|&(a, b)| [&g.vertices()[a], &g.vertices()[b]]).collect::<Vec<_>>(),
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BatteryOptions {
    pub class: VarietyClass,
    /// Treat the group as 1-formal, making the tangent cone comparison definitive.
    pub formal: bool,
    pub sampler: SamplerConfig,
    pub truncation_degree: usize,
}

impl BatteryOptions {
    pub fn new(class: VarietyClass) -> Self {
        BatteryOptions { class, formal: false, sampler: SamplerConfig::default(), truncation_degree: MALCEV_DEFAULT_DEGREE }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub input: Value,
    pub class: VarietyClass,
    pub b1: usize,
    pub torsion: Vec<i64>,
    pub checks: Vec<Check>,
    pub components: Vec<ComponentRecord>,
    pub overall: Verdict,
    pub seed: u64,
    pub truncation_degree: Option<usize>,
}

impl ObstructionReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }
}

fn failed(name: &str, e: &Error) -> Check {
    Check::new(name, Verdict::Inconclusive, json!({ "error": e.to_string() }))
}

/// Resonance components at every level `k >= 1` until none remain.
pub fn resonance_levels(cup: &CupTensor, cfg: &SamplerConfig) -> Result<Vec<LevelComponents>> {
    let mut out = Vec::new();
    for k in 1..cup.b1.max(1) {
        let components = resonance_components(&ResonanceLocus::new(cup.clone(), k), cfg)?;
        if components.is_empty() {
            break;
        }
        out.push(LevelComponents { k, components });
    }
    Ok(out)
}

struct Loci {
    levels: Vec<LevelComponents>,
    ideals: Vec<CharVarIdeal>,
    through_identity: Vec<VerifiedSubtorus>,
}

fn compute_loci(a: &AlexanderMatrix, cup: &CupTensor, cfg: &SamplerConfig) -> Result<Loci> {
    let levels = resonance_levels(cup, cfg)?;
    let top = levels.last().map_or(0, |l| l.k);
    let mut ideals = (1..=top).map(|k| charvar_ideal(a, k)).collect::<Result<Vec<_>>>()?;
    let first: Vec<LinearComponent> = levels.first().map(|l| l.components.clone()).unwrap_or_default();
    let through_identity = components_through_identity(a, &first, &mut ideals, cfg.seed)?;
    Ok(Loci { levels, ideals, through_identity })
}

/// Runs every applicable check in a fixed order. A computation that fails turns its
/// checks inconclusive without stopping the rest.
pub fn run_battery(input: &BatteryInput, opts: &BatteryOptions) -> ObstructionReport {
    let p = input.presentation();
    let a = alexander_matrix(&p);
    let b1 = a.b1();
    let cup = cup_tensor(&p);
    let formal = opts.formal || matches!(input, BatteryInput::Graph(_)) || p.relators().is_empty();
    let mut checks = Vec::new();
    if opts.class == VarietyClass::Projective {
        checks.push(check_even_b1(b1));
    }
    let mut components = Vec::new();
    match compute_loci(&a, &cup, &opts.sampler) {
        Ok(loci) => {
            let first: &[LinearComponent] = loci.levels.first().map_or(&[], |l| &l.components);
            let records: Result<Vec<ComponentRecord>> = first.iter().map(ComponentRecord::linear).collect();
            match records {
                Ok(r) => components.extend(r),
                Err(e) => checks.push(failed("resonance_components", &e)),
            }
            components.extend(loci.through_identity.iter().map(ComponentRecord::subtorus));
            let all_certified = first.iter().all(|c| c.certified);
            checks.push(Check::new(
                "resonance_components",
                if all_certified { Verdict::Pass } else { Verdict::Inconclusive },
                json!({
                    "levels": loci.levels.iter().map(|l| json!({
                        "k": l.k,
                        "dims": l.components.iter().map(|c| c.dim).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "uncertified": first.iter().filter(|c| !c.certified).count(),
                }),
            ));
            checks.push(check_isotropy(first, &cup).1);
            checks.push(check_pairwise_intersections(first));
            checks.push(check_tangent_cone(&cup, &loci.levels, &loci.ideals, &loci.through_identity, formal, opts.sampler.seed));
            checks.push(check_curve_profiles(&loci.through_identity));
        }
        Err(e) => {
            for name in ["resonance_components", "isotropy", "pairwise_intersections", "tangent_cone", "curve_profiles"] {
                checks.push(failed(name, &e));
            }
        }
    }
    match malcev_truncation(&p, opts.truncation_degree) {
        Ok(q) => checks.push(check_morgan(&q, opts.class)),
        Err(e) => checks.push(failed("morgan_degrees", &e)),
    }
    if let BatteryInput::Graph(g) = input {
        checks.push(check_raag(g, opts.class));
    }
    let overall = checks.iter().fold(Verdict::Pass, |v, c| v.combine(c.verdict));
    ObstructionReport {
        input: input.to_json(),
        class: opts.class,
        b1,
        torsion: a.abelianization.torsion.clone(),
        checks,
        components,
        overall,
        seed: opts.sampler.seed,
        truncation_degree: Some(opts.truncation_degree),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, surface_presentation};

    fn verdicts(r: &ObstructionReport) -> Vec<(&str, Verdict)> {
        r.checks.iter().map(|c| (c.name.as_str(), c.verdict)).collect()
    }

    #[test]
    fn genus_two_passes_projective() {
        let mut opts = BatteryOptions::new(VarietyClass::Projective);
        opts.formal = true;
        let r = run_battery(&BatteryInput::Presentation(surface_presentation(2, 0)), &opts);
        assert_eq!(r.overall, Verdict::Pass, "{:?}", verdicts(&r));
        assert_eq!(r.checks.len(), 7);
    }

    #[test]
    fn free_group_fails_parity() {
        let r = run_battery(&BatteryInput::Presentation(Presentation::free(3)), &BatteryOptions::new(VarietyClass::Projective));
        assert_eq!(r.check("even_b1").unwrap().verdict, Verdict::Fail);
        assert_eq!(r.overall, Verdict::Fail);
        let q = run_battery(&BatteryInput::Presentation(Presentation::free(3)), &BatteryOptions::new(VarietyClass::Quasiprojective));
        assert_eq!(q.overall, Verdict::Pass, "{:?}", verdicts(&q));
        assert!(q.check("even_b1").is_none());
    }

    #[test]
    fn path_raag_fails() {
        let r = run_battery(&BatteryInput::Graph(SimpleGraph::path(4)), &BatteryOptions::new(VarietyClass::Quasiprojective));
        assert_eq!(r.check("pairwise_intersections").unwrap().verdict, Verdict::Fail);
        assert_eq!(r.check("raag_classification").unwrap().verdict, Verdict::Fail);
        assert_eq!(r.overall, Verdict::Fail);
    }

    #[test]
    fn heisenberg_without_formality() {
        let h = parse_presentation("gens: x y\nrels: [x,[x,y]]\n[y,[x,y]]").unwrap();
        let r = run_battery(&BatteryInput::Presentation(h.clone()), &BatteryOptions::new(VarietyClass::Projective));
        assert_eq!(r.check("morgan_degrees").unwrap().verdict, Verdict::Fail);
        let q = run_battery(&BatteryInput::Presentation(h), &BatteryOptions::new(VarietyClass::Quasiprojective));
        assert_eq!(q.check("morgan_degrees").unwrap().verdict, Verdict::Pass);
        assert_eq!(q.check("tangent_cone").unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = BatteryOptions::new(VarietyClass::Quasiprojective);
        let input = BatteryInput::Graph(SimpleGraph::cycle(4));
        assert_eq!(run_battery(&input, &opts).to_json(), run_battery(&input, &opts).to_json());
    }
}
