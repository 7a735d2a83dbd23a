use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jumploci_core::fox::alexander_matrix;
use jumploci_core::fox::cup_tensor;
use jumploci_core::lie::{malcev_truncation, morgan_degree_check, VarietyClass, MALCEV_DEFAULT_DEGREE};
use jumploci_core::loci::{
    charvar_ideal, components_through_identity, resonance_components, translated_components, ResonanceLocus,
    SamplerConfig, TorsionScan, DEFAULT_SEED,
};
use jumploci_core::obstruction::{raag_classify, run_battery, BatteryInput, BatteryOptions, ComponentRecord};
use jumploci_core::presentation::{abelianization, cyclic_cover_presentation, parse_graph, parse_presentation, Presentation, SimpleGraph};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "jumploci", version, about = "Jump loci and obstruction checks for finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Sampling {
    /// Random sample points used for component discovery.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl Sampling {
    fn config(&self) -> SamplerConfig {
        SamplerConfig { seed: self.seed, samples: self.samples, ..SamplerConfig::default() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Linear components of the resonance variety R^1_k.
    Resonance {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long)]
        json: bool,
    },
    /// Defining ideal and subtorus components of the characteristic variety V^1_k.
    Charvar {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        sampling: Sampling,
        /// Largest order of torsion translates to scan.
        #[arg(long, default_value_t = 30)]
        torsion_bound: u64,
        #[arg(long)]
        json: bool,
    },
    /// Graded Malcev Lie algebra data up to a truncation degree.
    Malcev {
        file: PathBuf,
        #[arg(long, default_value_t = MALCEV_DEFAULT_DEGREE)]
        degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the obstruction battery on a presentation or a graph.
    Obstruct {
        #[arg(required_unless_present = "graph", conflicts_with = "graph")]
        file: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        class: VarietyClass,
        /// Treat the group as 1-formal.
        #[arg(long)]
        formal: bool,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a right-angled Artin group is a product of free groups.
    Raag {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Presentation of the cyclic cover defined by a map H_1 -> Z/N.
    Cover {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        phi: Vec<i64>,
        #[arg(long)]
        order: u64,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<jumploci_core::Error> for Failure {
    fn from(e: jumploci_core::Error) -> Self {
        use jumploci_core::Error::*;
        match e {
            // rejected inputs and arguments
            Parse(_) | NotSurjective { .. } | NotHomomorphism { .. } | DimensionMismatch { .. } | DegreeOutOfRange { .. }
            | InvalidGraph(_) => Failure::Usage(e.to_string()),
            other => Failure::Computation(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_presentation(path: &Path) -> Result<Presentation, Failure> {
    parse_presentation(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<SimpleGraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn presentation_json(p: &Presentation) -> Value {
    json!({
        "kind": "presentation",
        "generators": p.gen_names(),
        "relators": p.relators().iter().map(|r| r.render(p.gen_names())).collect::<Vec<_>>(),
    })
}

fn emit(json_mode: bool, value: &Value, text: String) {
    let out = if json_mode { serde_json::to_string_pretty(value).expect("serializable") + "\n" } else { text };
    // a closed pipe on stdout is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn component_line(c: &ComponentRecord) -> String {
    let translate = c.translate.as_ref().map_or_else(String::new, |t| format!(" translate order {} exponents {:?}", t.order, t.exponents));
    let cert = if c.certified { "" } else { " (uncertified)" };
    format!("  {} dim {} k {} basis {:?}{translate}{cert}\n", c.kind, c.dim, c.k, c.basis)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Resonance { file, k, sampling, json } => {
            if k == 0 {
                return Err(Failure::Usage("--k must be at least 1".into()));
            }
            let p = load_presentation(&file)?;
            let ab = abelianization(&p);
            let comps = resonance_components(&ResonanceLocus::new(cup_tensor(&p), k), &sampling.config())?;
            let records = comps.iter().map(ComponentRecord::linear).collect::<Result<Vec<_>, _>>()?;
            let value = json!({
                "input": presentation_json(&p),
                "b1": ab.b1,
                "torsion": ab.torsion,
                "k": k,
                "components": records,
                "seed": sampling.seed,
            });
            let mut text = format!("b1 = {}\nR^1_{k}: {} component(s)\n", ab.b1, records.len());
            records.iter().for_each(|c| text.push_str(&component_line(c)));
            emit(json, &value, text);
        }
        Command::Charvar { file, k, sampling, torsion_bound, json } => {
            if k == 0 {
                return Err(Failure::Usage("--k must be at least 1".into()));
            }
            let p = load_presentation(&file)?;
            let a = alexander_matrix(&p);
            let cfg = sampling.config();
            let ideal = charvar_ideal(&a, k)?;
            let names: Vec<String> = (0..a.nvars())
                .map(|i| if i < a.b1() { format!("t{}", i + 1) } else { format!("u{}", i + 1 - a.b1()) })
                .collect();
            let resonance = if a.b1() <= cfg.max_b1 {
                resonance_components(&ResonanceLocus::new(cup_tensor(&p), 1), &cfg)?
            } else {
                vec![]
            };
            let mut ideals = vec![];
            let through = components_through_identity(&a, &resonance, &mut ideals, cfg.seed)?;
            let scan = TorsionScan { max_order: torsion_bound, ..TorsionScan::default() };
            let translated = translated_components(&a, &through, &mut ideals, &scan, cfg.seed)?;
            let records: Vec<ComponentRecord> = through
                .iter()
                .chain(&translated.components)
                .filter(|v| v.component.k >= k)
                .map(ComponentRecord::subtorus)
                .collect();
            let generators: Vec<String> = ideal.gens.iter().map(|g| g.display_with(&names)).collect();
            let value = json!({
                "input": presentation_json(&p),
                "b1": a.b1(),
                "torsion": a.abelianization.torsion,
                "k": k,
                "variables": names,
                "ideal": {
                    "zero": ideal.is_zero_ideal(),
                    "unit": ideal.is_unit_ideal(),
                    "includes_identity": ideal.includes_identity,
                    "generators": generators,
                },
                "components": records,
                "torsion_scan": {
                    "max_order": torsion_bound,
                    "candidates_examined": translated.candidates_examined,
                    "truncated": translated.truncated,
                },
                "seed": sampling.seed,
            });
            let mut text = format!("b1 = {}, torsion = {:?}\nV^1_{k} ideal: ", a.b1(), a.abelianization.torsion);
            if ideal.is_zero_ideal() {
                text.push_str("zero (whole torus)\n");
            } else if ideal.is_unit_ideal() {
                text.push_str("unit\n");
            } else {
                let _ = writeln!(text, "{} generator(s)", generators.len());
                generators.iter().for_each(|g| {
                    let _ = writeln!(text, "  {g}");
                });
            }
            let _ = writeln!(text, "components with k >= {k}: {}", records.len());
            records.iter().for_each(|c| text.push_str(&component_line(c)));
            if translated.truncated {
                text.push_str("torsion scan stopped at its candidate budget\n");
            }
            emit(json, &value, text);
        }
        Command::Malcev { file, degree, json } => {
            let p = load_presentation(&file)?;
            let q = malcev_truncation(&p, degree)?;
            let morgan = |class: VarietyClass| match morgan_degree_check(&q, class) {
                Ok(v) => json!({ "pass": v.pass, "witness": v.witness.map(|(kind, d)| json!({ "kind": kind, "degree": d })) }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            let value = json!({
                "input": presentation_json(&p),
                "truncation_degree": degree,
                "dims": q.dims,
                "generator_dims": q.generator_dims,
                "relation_dims": q.relation_dims,
                "generator_degrees": q.generator_degrees(),
                "relation_degrees": q.relation_degrees(),
                "morgan": { "projective": morgan(VarietyClass::Projective), "quasiprojective": morgan(VarietyClass::Quasiprojective) },
            });
            let text = format!(
                "graded dimensions (degrees 1..{degree}): {:?}\ngenerator degrees: {:?}\nrelation degrees: {:?} (up to degree {degree})\n",
                q.dims,
                q.generator_degrees(),
                q.relation_degrees()
            );
            emit(json, &value, text);
        }
        Command::Obstruct { file, graph, class, formal, sampling, json } => {
            let input = match (file, graph) {
                (_, Some(g)) => BatteryInput::Graph(load_graph(&g)?),
                (Some(f), None) => BatteryInput::Presentation(load_presentation(&f)?),
                (None, None) => return Err(Failure::Usage("a presentation file or --graph is required".into())),
            };
            let opts = BatteryOptions { formal, sampler: sampling.config(), ..BatteryOptions::new(class) };
            let report = run_battery(&input, &opts);
            let mut text = format!("class: {}\nb1 = {}\n", class.as_str(), report.b1);
            for c in &report.checks {
                let _ = writeln!(text, "  {:<24} {}", c.name, c.verdict.as_str());
            }
            let _ = writeln!(text, "overall: {}", report.overall.as_str());
            emit(json, &serde_json::to_value(&report).expect("serializable"), text);
        }
        Command::Raag { graph, json } => {
            let g = load_graph(&graph)?;
            let c = raag_classify(&g);
            let mut text = if c.realizable {
                format!("realizable: yes ({})\n", c.description)
            } else {
                let [u, v, w] = c.witness.clone().expect("witness for non-realizable graphs");
                format!("realizable: no; {u} - {w} adjacent, {v} adjacent to neither\n")
            };
            let _ = writeln!(text, "projective (free abelian of even rank): {}", if c.projective { "yes" } else { "no" });
            emit(json, &serde_json::to_value(&c).expect("serializable"), text);
        }
        Command::Cover { file, phi, order, json } => {
            let p = load_presentation(&file)?;
            let cover = cyclic_cover_presentation(&p, &phi, order)?;
            let ab = abelianization(&cover);
            let value = json!({
                "input": presentation_json(&p),
                "phi": phi,
                "order": order,
                "cover": presentation_json(&cover),
                "b1": ab.b1,
                "torsion": ab.torsion,
            });
            emit(json, &value, cover.to_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("computation failed: {msg}");
            ExitCode::from(2)
        }
    }
}
