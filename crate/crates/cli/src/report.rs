use std::collections::BTreeMap;

use resolvent_core::cotangent::{compare_tangent, cotangent_module, qcoh_all, ComparisonReport, ModuleReport, QcohReport};
use resolvent_core::diagram::{build_resolvent, check_resolvent, DiagramIssue, Resolvent, ResolventCheck, TargetDiagram};
use resolvent_core::morphisms::{
    build_morphism_resolvent, morphism_tangent_report, sequence_check, ComparisonIssue, MorphismTangentReport, SequenceReport,
};
use resolvent_core::parse::{ResolventSpec, SchemeSpec};
use resolvent_core::tangent::{
    first_order_classes, mc_extend_in, perturbed_diagram, tangent_cohomology, DegreeSummary, DerComplex, ExtensionOutcome,
    FirstOrderCount,
};
use resolvent_core::window::TruncationWindow;
use resolvent_core::{Error, Result};
use serde::Serialize;

use crate::input::Input;
use crate::{text, Command, RunConfig, EXIT_FAIL, EXIT_PASS};

/// Output of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub passed: bool,
    /// pretty JSON with a trailing newline
    pub json: String,
    pub text: String,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    command: &'static str,
    passed: bool,
    #[serde(flatten)]
    body: &'a T,
}

fn finish<T: Serialize>(command: Command, passed: bool, body: &T, text: String) -> Report {
    let mut json = serde_json::to_string_pretty(&Envelope { command: command.name(), passed, body }).expect("reports serialize");
    json.push('\n');
    Report { command, passed, json, text }
}

#[derive(Serialize)]
pub struct DiagramValidation {
    pub role: String,
    pub cells: usize,
    pub passed: bool,
    pub issues: Vec<DiagramIssue>,
}

#[derive(Serialize)]
pub struct ValidateBody {
    pub kind: &'static str,
    pub diagrams: Vec<DiagramValidation>,
    pub comparison_issues: Vec<ComparisonIssue>,
}

#[derive(Serialize)]
pub struct CellEntry {
    pub cell: String,
    pub degree: usize,
    pub faces: Vec<String>,
    pub variables: Vec<String>,
    pub relations: Vec<String>,
}

#[derive(Serialize)]
pub struct NerveBody {
    pub charts: Vec<usize>,
    pub cells: Vec<CellEntry>,
}

#[derive(Serialize)]
pub struct CellCount {
    pub cell: String,
    pub generators: usize,
    pub by_degree: BTreeMap<i32, usize>,
}

#[derive(Serialize)]
pub struct ResolveBody {
    pub window: TruncationWindow,
    pub cells: Vec<CellCount>,
    pub warnings: Vec<String>,
    pub scheme: SchemeSpec,
    pub resolvent: ResolventSpec,
}

#[derive(Serialize)]
pub struct CheckBody {
    pub source: &'static str,
    pub cells: Vec<CellCount>,
    pub warnings: Vec<String>,
    pub check: ResolventCheck,
}

#[derive(Serialize)]
pub struct TangentDegree {
    pub degree: i32,
    pub dim: usize,
    pub stable: bool,
    pub cycles: usize,
    pub boundaries: usize,
    pub representatives: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct TangentBody {
    pub window: TruncationWindow,
    /// every degree is stable under shrinking the weight bound
    pub certified: bool,
    pub warnings: Vec<String>,
    pub degrees: Vec<TangentDegree>,
}

#[derive(Serialize)]
pub struct Direction {
    pub representative: Vec<String>,
    /// `extends`, `obstructed` or `undecided`
    pub outcome: &'static str,
    /// highest order reached
    pub order: u32,
    pub mc_element: BTreeMap<String, Vec<String>>,
    pub perturbed_differentials: Vec<String>,
    pub obstruction: Vec<String>,
    pub t2_dim: Option<usize>,
    pub note: Option<String>,
}

#[derive(Serialize)]
pub struct DeformBody {
    pub window: TruncationWindow,
    pub order: u32,
    pub t1: DegreeSummary,
    pub t2: DegreeSummary,
    pub first_order: FirstOrderCount,
    pub first_order_matches_t1: bool,
    pub warnings: Vec<String>,
    pub directions: Vec<Direction>,
}

#[derive(Serialize)]
pub struct CotangentBody {
    pub module: ModuleReport,
    pub qcoh_window: TruncationWindow,
    pub qcoh: Vec<QcohReport>,
    pub comparison: ComparisonReport,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
pub struct GeneratorRow {
    pub name: String,
    pub degree: i32,
    pub cell: String,
    pub row: u8,
    pub differential: String,
}

#[derive(Serialize)]
pub struct MorphismBody {
    pub generators: Vec<GeneratorRow>,
    pub warnings: Vec<String>,
    pub codomain_check: ResolventCheck,
    pub domain_check: ResolventCheck,
    pub sequence: SequenceReport,
    pub tangent: MorphismTangentReport,
}

fn wrong_kind(expected: &str) -> Error {
    Error::semantic("$", format!("expected {expected}"))
}

fn cell_counts(r: &Resolvent) -> Vec<CellCount> {
    let nerve = r.nerve();
    (0..nerve.len())
        .map(|a| {
            let mut by_degree = BTreeMap::new();
            for g in r.generators_at(a) {
                *by_degree.entry(r.algebra().generator(g).degree).or_insert(0) += 1;
            }
            CellCount { cell: nerve.display(a), generators: r.generators_at(a).len(), by_degree }
        })
        .collect()
}

/// The resolvent to work with: read from the file or built in the resolve
/// window.
fn resolvent_of(config: &RunConfig, input: Input) -> Result<(TargetDiagram, Resolvent, Vec<String>, &'static str)> {
    match input {
        Input::Scheme(s) => {
            let built = build_resolvent(&s, &config.resolve_window()?)?;
            Ok((s, built.resolvent, built.warnings, "built"))
        }
        Input::Resolvent(s, r) => Ok((s, r, Vec::new(), "file")),
        Input::Morphism(_) => Err(wrong_kind("a scheme or resolvent description, found a morphism")),
    }
}

fn diagram_validation(role: &str, s: &TargetDiagram, extra: u32) -> DiagramValidation {
    let v = s.validate(extra);
    DiagramValidation { role: role.into(), cells: s.nerve().len(), passed: v.passed, issues: v.issues }
}

pub(crate) fn dispatch(config: &RunConfig, input: Input) -> Result<Report> {
    let cmd = config.command;
    match cmd {
        Command::Validate => {
            let body = match &input {
                Input::Scheme(s) => {
                    ValidateBody { kind: "scheme", diagrams: vec![diagram_validation("scheme", s, config.margin)], comparison_issues: vec![] }
                }
                Input::Resolvent(s, _) => ValidateBody {
                    kind: "resolvent",
                    diagrams: vec![diagram_validation("scheme", s, config.margin)],
                    comparison_issues: vec![],
                },
                Input::Morphism(m) => ValidateBody {
                    kind: "morphism",
                    diagrams: vec![
                        diagram_validation("codomain", &m.codomain, config.margin),
                        diagram_validation("domain", &m.domain, config.margin),
                    ],
                    comparison_issues: m.validate(config.margin),
                },
            };
            let passed = body.diagrams.iter().all(|d| d.passed) && body.comparison_issues.is_empty();
            let text = text::validate(&body, passed);
            Ok(finish(cmd, passed, &body, text))
        }
        Command::Nerve => {
            let s = match &input {
                Input::Scheme(s) | Input::Resolvent(s, _) => s,
                Input::Morphism(m) => &m.codomain,
            };
            let nerve = s.nerve();
            let cells = (0..nerve.len())
                .map(|a| {
                    let chart = s.chart(a);
                    CellEntry {
                        cell: nerve.display(a),
                        degree: nerve.degree(a),
                        faces: nerve.faces(a).into_iter().map(|f| nerve.display(f)).collect(),
                        variables: chart.variables().iter().map(|v| v.to_string()).collect(),
                        relations: chart.relations().iter().map(|r| chart.algebra().format(r)).collect(),
                    }
                })
                .collect();
            let body = NerveBody { charts: nerve.charts().to_vec(), cells };
            let text = text::nerve(&body);
            Ok(finish(cmd, true, &body, text))
        }
        Command::Resolve => {
            let window = config.resolve_window()?;
            let (s, r, warnings, _) = resolvent_of(config, input)?;
            let body = ResolveBody {
                window,
                cells: cell_counts(&r),
                warnings,
                scheme: SchemeSpec::from_diagram(&s),
                resolvent: ResolventSpec::from_resolvent(&r, &s),
            };
            let text = text::resolve(&body);
            Ok(finish(cmd, true, &body, text))
        }
        Command::Check => {
            let window = config.resolve_window()?;
            let (s, r, warnings, source) = resolvent_of(config, input)?;
            let check = check_resolvent(&r, &s, &window)?;
            let body = CheckBody { source, cells: cell_counts(&r), warnings, check };
            let passed = body.check.passed;
            let text = text::check(&body, passed);
            Ok(finish(cmd, passed, &body, text))
        }
        Command::Tangent => {
            let window = config.range_window()?;
            let (_, r, warnings, _) = resolvent_of(config, input)?;
            let degrees = window
                .range()
                .map(|i| {
                    let h = tangent_cohomology(&r, i, &window)?;
                    Ok(TangentDegree {
                        degree: i,
                        dim: h.dim,
                        stable: h.stable,
                        cycles: h.cycles,
                        boundaries: h.boundaries,
                        representatives: h.representatives.iter().map(|t| t.format(r.algebra())).collect(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let certified = degrees.iter().all(|d| d.stable);
            let body = TangentBody { window, certified, warnings, degrees };
            let text = text::tangent(&body);
            Ok(finish(cmd, true, &body, text))
        }
        Command::Deform => {
            let window = config.range_window()?;
            let (_, r, warnings, _) = resolvent_of(config, input)?;
            let body = deform(&r, &window, config.order, warnings)?;
            let passed = body.first_order_matches_t1;
            let text = text::deform(&body, passed);
            Ok(finish(cmd, passed, &body, text))
        }
        Command::Cotangent => {
            let window = config.range_window()?;
            let qcoh_window = config.resolve_window()?;
            let (s, r, warnings, _) = resolvent_of(config, input)?;
            let l = cotangent_module(&r, &s);
            let module = l.check(config.margin);
            let qcoh = qcoh_all(&l, &qcoh_window)?;
            let comparison = compare_tangent(&r, &s, &window)?;
            let passed = module.d_squared
                && module.chain_maps
                && module.cocycle
                && qcoh.iter().all(|q| q.quasi_isomorphism)
                && comparison.passed;
            let body = CotangentBody { module, qcoh_window, qcoh, comparison, warnings };
            let text = text::cotangent(&body, passed);
            Ok(finish(cmd, passed, &body, text))
        }
        Command::Morphism => {
            let Input::Morphism(data) = input else {
                return Err(wrong_kind("a morphism description"));
            };
            let build_window = config.resolve_window()?;
            let window = config.range_window()?;
            let built = build_morphism_resolvent(&data, &build_window)?;
            let m = &built.diagram;
            let (codomain_check, domain_check) = rayon::join(
                || check_resolvent(&m.base, &data.codomain, &build_window),
                || check_resolvent(&m.total, &data.domain, &build_window),
            );
            let alg = m.total.algebra();
            let generators = (0..alg.len() as u32)
                .map(|g| {
                    let d = alg.generator(g);
                    GeneratorRow {
                        name: d.name.clone(),
                        degree: d.degree,
                        cell: m.total.nerve().display(d.cell),
                        row: if m.is_base(g) { 0 } else { 1 },
                        differential: alg.format(alg.differential_of(g)),
                    }
                })
                .collect();
            let body = MorphismBody {
                generators,
                warnings: built.warnings.clone(),
                codomain_check: codomain_check?,
                domain_check: domain_check?,
                sequence: sequence_check(m, &window),
                tangent: morphism_tangent_report(m, &window)?,
            };
            let passed = body.codomain_check.passed
                && body.domain_check.passed
                && body.sequence.passed
                && (!body.tangent.applicable || body.tangent.euler_holds);
            let text = text::morphism(&body, passed);
            Ok(finish(cmd, passed, &body, text))
        }
    }
}

fn summary(r: &Resolvent, i: i32, window: &TruncationWindow) -> Result<DegreeSummary> {
    let h = tangent_cohomology(r, i, window)?;
    Ok(DegreeSummary { dim: h.dim, stable: h.stable })
}

/// First-order count against `T¹`, then an attempt to extend each `T¹`
/// representative to the requested order.
fn deform(r: &Resolvent, window: &TruncationWindow, order: u32, warnings: Vec<String>) -> Result<DeformBody> {
    let cx = DerComplex::of_resolvent(r);
    let alg = r.algebra();
    let t1 = tangent_cohomology(r, 1, window)?;
    let t2 = summary(r, 2, window)?;
    let first_order = first_order_classes(&cx, window);
    let mut directions = Vec::new();
    for xi in &t1.representatives {
        let mut d = Direction {
            representative: xi.format(alg),
            outcome: "undecided",
            order: 1,
            mc_element: BTreeMap::new(),
            perturbed_differentials: Vec::new(),
            obstruction: Vec::new(),
            t2_dim: None,
            note: None,
        };
        match mc_extend_in(&cx, xi, order, window) {
            Ok(ExtensionOutcome::Extended(eta)) => {
                d.outcome = "extends";
                d.order = order;
                d.mc_element = eta.format(alg);
                let p = perturbed_diagram(r, &eta)?;
                d.perturbed_differentials = (0..alg.len() as u32)
                    .map(|g| format!("d{} = {}", alg.generator(g).name, p.algebra.format_differential(g)))
                    .collect();
            }
            Ok(ExtensionOutcome::Obstructed { order: k, obstruction, t2_dim }) => {
                d.outcome = "obstructed";
                d.order = k - 1;
                d.obstruction = obstruction.format(alg);
                d.t2_dim = Some(t2_dim);
            }
            Err(e @ Error::WindowTooSmall { .. }) => d.note = Some(e.to_string()),
            Err(e) => return Err(e),
        }
        directions.push(d);
    }
    Ok(DeformBody {
        window: *window,
        order,
        t1: DegreeSummary { dim: t1.dim, stable: t1.stable },
        t2,
        first_order_matches_t1: first_order.classes == t1.dim,
        first_order,
        warnings,
        directions,
    })
}
