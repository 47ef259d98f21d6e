//! The `gogcone` command line.
//!
//! Every command writes one JSON report (to `--out` or standard output) and
//! exits with status 0 when all checks pass, 1 when a check produced
//! counterexamples and 2 when the input could not be used; in the last case
//! no report is written.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gogcone_core::fault::Faults;
use gogcone_core::presentations::GraphOfGroups;
use gogcone_core::quasimorphism::{OddFunction, RolliFamily};
use gogcone_core::seminorm::{
    below_unit_theta, glue_assemble, DualCone, HomClass, MappingCone, PairComplex,
};
use gogcone_core::transplant::verify_chain_map;
use gogcone_core::Q;
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::acceptance::{self, Scale, CRITERIA};
use crate::bundled;
use crate::error::{parse_err, Error, Result};
use crate::format::{self, parse_q, q_str, CertificateJson, CochainJson, GlueJson, GraphJson};
use crate::literal;
use crate::sample::{s_point_pool, sample_tuples};

/// Most counterexamples listed in a report; the counts are always complete.
const MAX_LISTED: usize = 50;

#[derive(Debug, Parser)]
#[command(
    name = "gogcone",
    version,
    about = "Bounded cohomology of graphs of groups, computed exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add wall-clock timings to the report (which then varies between runs).
    #[arg(long, global = true)]
    timing: bool,
    #[arg(long, global = true, hide = true)]
    fault: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Graphs of groups and normal forms.
    #[command(subcommand)]
    Gog(GogCommand),
    /// The Bass–Serre tree and its subdivision.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// The barycentric transplant of vertex cochains.
    #[command(subcommand)]
    Transplant(TransplantCommand),
    /// Rolli quasimorphisms on free products.
    #[command(subcommand)]
    Qm(QmCommand),
    /// θ-seminorms on finite chain complexes.
    #[command(subcommand)]
    Norm(NormCommand),
    /// Glue relative cycles along interfaces.
    Glue(GlueArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Subcommand)]
enum GogCommand {
    /// Validate a graph of groups.
    Check(GraphArg),
    /// Reduce a word to its normal form.
    Reduce(ReduceArgs),
    /// List the elements reached by bounded words.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Subcommand)]
enum TreeCommand {
    /// The geodesic between two vertices of the subdivided tree.
    Geodesic(GeodesicArgs),
    /// The barycenter of the projections of points of S.
    Barycenter(BarycenterArgs),
}

#[derive(Debug, Subcommand)]
enum TransplantCommand {
    /// Evaluate the transplanted cochain on tuples of points.
    Eval(TransplantArgs),
    /// Check the chain map identity and the sup bound on sampled tuples.
    Verify(TransplantArgs),
}

#[derive(Debug, Subcommand)]
enum QmCommand {
    /// The defect of the Rolli quasimorphism over bounded words.
    Defect(QmArgs),
    /// Compare the transplanted cocycle with the Rolli cocycle on triples.
    DiagramCheck(QmArgs),
}

#[derive(Debug, Subcommand)]
enum NormCommand {
    /// The θ-seminorm of a relative class.
    Seminorm(NormArgs),
    /// The mapping cone seminorm against the relative seminorm.
    ConeCompare(NormArgs),
    /// The maximum of the dual problem, with a witness cocycle.
    Duality(NormArgs),
    /// A representative within ε of the seminorm with small boundary.
    Thurston(ThurstonArgs),
}

#[derive(Debug, Args, Serialize)]
struct GraphArg {
    /// A graph-of-groups JSON file or `bundled:zz|trefoil|bs12`.
    #[arg(long)]
    graph: String,
}

#[derive(Debug, Args, Serialize)]
struct ReduceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    graph: GraphArg,
    /// Whitespace separated letters such as `a b^2 a⁻¹`.
    #[arg(long, allow_hyphen_values = true)]
    word: String,
}

#[derive(Debug, Args, Serialize)]
struct EnumerateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    graph: GraphArg,
    /// Enumerate one vertex group instead of the fundamental group.
    #[arg(long)]
    vertex: Option<String>,
    #[arg(long, default_value_t = 2)]
    syllables: usize,
    #[arg(long, default_value_t = 1)]
    exponent: u32,
}

#[derive(Debug, Args, Serialize)]
struct GeodesicArgs {
    #[command(flatten)]
    #[serde(flatten)]
    graph: GraphArg,
    /// `word @ vertex` or `word # edge`.
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
}

#[derive(Debug, Args, Serialize)]
struct BarycenterArgs {
    #[command(flatten)]
    #[serde(flatten)]
    graph: GraphArg,
    /// Points of S, each `word @ vertex` or `word # edge`.
    #[arg(required = true)]
    points: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
struct TransplantArgs {
    #[command(flatten)]
    #[serde(flatten)]
    graph: GraphArg,
    /// A cochain-family JSON file; without it a seeded family is used.
    #[arg(long)]
    cochain: Option<String>,
    /// Degree of the seeded family.
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// Extra tuples, points separated by `;`.
    #[arg(long)]
    tuple: Vec<String>,
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Word bounds for the pool of sampled points.
    #[arg(long, default_value_t = 2)]
    syllables: usize,
    #[arg(long, default_value_t = 2)]
    exponent: u32,
}

#[derive(Debug, Args, Serialize)]
struct QmArgs {
    #[command(flatten)]
    #[serde(flatten)]
    graph: GraphArg,
    /// `VERTEX=sign|zero|clamp:N|parity:N|table:k=p/q,…`; unlisted vertices use `sign`.
    #[arg(long)]
    function: Vec<String>,
    #[arg(long, default_value_t = 3)]
    syllables: usize,
    #[arg(long, default_value_t = 1)]
    exponent: u32,
}

#[derive(Debug, Args, Serialize)]
struct NormArgs {
    /// A chain-complex JSON file or `bundled:circle|simplex|torus7|uw`.
    #[arg(long)]
    pair: String,
    /// `p/q`, or `inf` for `norm seminorm`.
    #[arg(long, default_value = "0")]
    theta: String,
}

#[derive(Debug, Args, Serialize)]
struct ThurstonArgs {
    #[arg(long)]
    pair: String,
    #[arg(long)]
    epsilon: String,
}

#[derive(Debug, Args, Serialize)]
struct GlueArgs {
    /// A gluing JSON file or `bundled:annulus|segments|square`.
    #[arg(long)]
    gluing: String,
}

#[derive(Debug, Args, Serialize)]
struct SelftestArgs {
    #[arg(value_parser = ["quick", "full"], default_value = "quick")]
    level: String,
}

/// A finished computation: the results and whether every check passed.
struct Outcome {
    result: Value,
    passed: bool,
}

impl Outcome {
    fn ok(result: Value) -> Outcome {
        Outcome {
            result,
            passed: true,
        }
    }
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    run(cli)
}

/// Runs a parsed command line and returns the exit status.
pub fn run(cli: Cli) -> i32 {
    let start = Instant::now();
    let faults = match &cli.fault {
        None => Faults::NONE,
        Some(name) => match Faults::by_name(name) {
            Some(f) => f,
            None => {
                eprintln!("error: unknown fault `{name}`");
                return 2;
            }
        },
    };
    let (name, parameters, outcome) = match dispatch(&cli.command, faults) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let mut report = json!({
        "command": name,
        "parameters": parameters,
        "result": outcome.result,
        "passed": outcome.passed,
    });
    if let Some(f) = &cli.fault {
        report["fault"] = json!(f);
    }
    if cli.timing {
        report["seconds"] = json!(start.elapsed().as_secs_f64());
    }
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    if let Err(e) = emit(cli.out.as_deref(), &text) {
        eprintln!("error: {e}");
        return 2;
    }
    if outcome.passed {
        0
    } else {
        1
    }
}

/// Writes through a temporary sibling and a rename, so a report is never
/// left half written.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    let Some(path) = out else {
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io {
                path: "<stdout>".into(),
                source,
            })?;
        return Ok(());
    };
    let file = path
        .file_name()
        .ok_or_else(|| parse_err(format!("`{}` is not a file path", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file);
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    fs::write(&tmp, text).map_err(io)?;
    fs::rename(&tmp, path).map_err(|source| {
        let _ = fs::remove_file(&tmp);
        io(source)
    })
}

fn params<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).expect("arguments serialize")
}

fn dispatch(command: &Command, faults: Faults) -> Result<(&'static str, Value, Outcome)> {
    Ok(match command {
        Command::Gog(GogCommand::Check(a)) => ("gog check", params(a), gog_check(a)?),
        Command::Gog(GogCommand::Reduce(a)) => ("gog reduce", params(a), gog_reduce(a)?),
        Command::Gog(GogCommand::Enumerate(a)) => ("gog enumerate", params(a), gog_enumerate(a)?),
        Command::Tree(TreeCommand::Geodesic(a)) => {
            ("tree geodesic", params(a), tree_geodesic(a, faults)?)
        }
        Command::Tree(TreeCommand::Barycenter(a)) => {
            ("tree barycenter", params(a), tree_barycenter(a, faults)?)
        }
        Command::Transplant(TransplantCommand::Eval(a)) => {
            ("transplant eval", params(a), transplant(a, faults, false)?)
        }
        Command::Transplant(TransplantCommand::Verify(a)) => {
            ("transplant verify", params(a), transplant(a, faults, true)?)
        }
        Command::Qm(QmCommand::Defect(a)) => ("qm defect", params(a), qm_defect(a, faults)?),
        Command::Qm(QmCommand::DiagramCheck(a)) => {
            ("qm diagram-check", params(a), qm_diagram(a, faults)?)
        }
        Command::Norm(NormCommand::Seminorm(a)) => ("norm seminorm", params(a), norm_seminorm(a)?),
        Command::Norm(NormCommand::ConeCompare(a)) => {
            ("norm cone-compare", params(a), cone_compare(a, faults)?)
        }
        Command::Norm(NormCommand::Duality(a)) => ("norm duality", params(a), norm_duality(a)?),
        Command::Norm(NormCommand::Thurston(a)) => ("norm thurston", params(a), norm_thurston(a)?),
        Command::Glue(a) => ("glue", params(a), glue(a)?),
        Command::Selftest(a) => ("selftest", params(a), selftest(a, faults)),
    })
}

// ----------------------------------------------------------------- inputs

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.into(),
        source,
    })
}

fn load_graph_json(src: &str) -> Result<GraphJson> {
    match src.strip_prefix("bundled:") {
        Some(name) => bundled::graph(name),
        None => format::graph_from_str(&read(src)?),
    }
}

fn load_graph(src: &str, faults: Faults) -> Result<Arc<GraphOfGroups>> {
    Ok(Arc::new(load_graph_json(src)?.build()?.with_faults(faults)))
}

fn load_pair(src: &str) -> Result<(PairComplex, HomClass)> {
    let json = match src.strip_prefix("bundled:") {
        Some(name) => bundled::pair(name)?,
        None => format::pair_from_str(&read(src)?)?,
    };
    let pair = json.pair()?;
    let class = json
        .class_in(pair.ambient())?
        .ok_or_else(|| parse_err("the complex has no `class`"))?;
    pair.check_relative_cycle(&class)?;
    Ok((pair, class))
}

fn theta(text: &str) -> Result<Q> {
    let t = parse_q(text)?;
    if t < Q::default() {
        return Err(gogcone_core::Error::NegativeTheta.into());
    }
    Ok(t)
}

fn listed<T>(items: &[T], f: impl Fn(&T) -> Value) -> Value {
    Value::Array(items.iter().take(MAX_LISTED).map(f).collect())
}

// -------------------------------------------------------------------- gog

fn gog_check(a: &GraphArg) -> Result<Outcome> {
    let g = load_graph(&a.graph, Faults::NONE)?;
    let letters: Vec<String> = g
        .letters()
        .into_iter()
        .map(|l| g.letter_name(l).to_string())
        .collect();
    Ok(Outcome::ok(json!({
        "vertices": (0..g.vertex_count()).map(|v| g.vertex_name(v)).collect::<Vec<_>>(),
        "edges": (0..g.edge_count()).map(|e| g.edge_name(e)).collect::<Vec<_>>(),
        "letters": letters,
    })))
}

fn gog_reduce(a: &ReduceArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph.graph, Faults::NONE)?;
    let x = literal::parse_element(&g, &a.word)?;
    let identity = x == g.identity();
    Ok(Outcome::ok(json!({
        "normal_form": literal::element_to_string(&g, &x),
        "identity": identity,
    })))
}

fn gog_enumerate(a: &EnumerateArgs) -> Result<Outcome> {
    let g = load_graph(&a.graph.graph, Faults::NONE)?;
    let elements: Vec<String> = match &a.vertex {
        Some(v) => {
            let v = g.vertex_index(v)?;
            g.enumerate_vertex_elements(v, a.syllables, a.exponent)
                .iter()
                .map(|x| literal::word_to_string(&g.vertex_word_names(v, x)))
                .collect()
        }
        None => g
            .enumerate_elements(a.syllables, a.exponent)
            .iter()
            .map(|x| literal::element_to_string(&g, x))
            .collect(),
    };
    Ok(Outcome::ok(
        json!({ "count": elements.len(), "elements": elements }),
    ))
}

// ------------------------------------------------------------------- tree

fn tree_geodesic(a: &GeodesicArgs, faults: Faults) -> Result<Outcome> {
    let g = load_graph(&a.graph.graph, faults)?;
    let from = literal::parse_node(&g, &a.from)?;
    let to = literal::parse_node(&g, &a.to)?;
    let path = g.geodesic(&from, &to)?;
    Ok(Outcome::ok(json!({
        "length": path.len().saturating_sub(1),
        "path": path.iter().map(|n| literal::node_to_string(&g, n)).collect::<Vec<_>>(),
    })))
}

fn tree_barycenter(a: &BarycenterArgs, faults: Faults) -> Result<Outcome> {
    let g = load_graph(&a.graph.graph, faults)?;
    let points = a
        .points
        .iter()
        .map(|p| literal::parse_point(&g, p))
        .collect::<Result<Vec<_>>>()?;
    let nodes = points
        .iter()
        .map(|p| g.project(p))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let candidates = g.barycenters(&nodes);
    Ok(Outcome {
        passed: candidates.len() <= 1,
        result: json!({
            "projections": nodes.iter().map(|n| literal::node_to_string(&g, n)).collect::<Vec<_>>(),
            "barycenter": candidates.first().map(|n| literal::node_to_string(&g, n)),
            "candidates": candidates.iter().map(|n| literal::node_to_string(&g, n)).collect::<Vec<_>>(),
        }),
    })
}

// ------------------------------------------------------------- transplant

fn transplant(a: &TransplantArgs, faults: Faults, verify: bool) -> Result<Outcome> {
    let g = load_graph(&a.graph.graph, faults)?;
    let cochain = match &a.cochain {
        Some(path) => serde_json::from_str::<CochainJson>(&read(path)?)?,
        None => CochainJson {
            degree: a.degree,
            seed: Some(a.seed),
            vertices: Default::default(),
            tuples: Vec::new(),
        },
    };
    let family = cochain.family(&g)?;
    let mut tuples = Vec::new();
    for t in cochain.tuples.iter().cloned().chain(
        a.tuple
            .iter()
            .map(|t| t.split(';').map(str::to_string).collect()),
    ) {
        tuples.push(
            t.iter()
                .map(|p| literal::parse_point(&g, p))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let len = cochain.degree + if verify { 2 } else { 1 };
    if a.samples > 0 {
        let pool = s_point_pool(&g, a.syllables, a.exponent);
        tuples.extend(sample_tuples(&pool, len, a.samples, a.seed));
    }
    if let Some(t) = tuples.iter().find(|t| t.len() != len) {
        return Err(parse_err(format!(
            "tuple of {} points, expected {len}",
            t.len()
        )));
    }
    let show = |t: &[gogcone_core::bass_serre::SPoint]| -> Vec<String> {
        t.iter().map(|p| literal::point_to_string(&g, p)).collect()
    };
    if !verify {
        let values = tuples
            .iter()
            .map(|t| Ok(json!({ "tuple": show(t), "value": q_str(&g.psi_eval(&family, t)?) })))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Outcome::ok(
            json!({ "degree": cochain.degree, "values": values }),
        ));
    }
    let report = verify_chain_map(&g, &family, &tuples)?;
    let discrepancy = |d: &gogcone_core::transplant::Discrepancy| json!({ "tuple": show(&d.tuple), "lhs": q_str(&d.lhs), "rhs": q_str(&d.rhs) });
    Ok(Outcome {
        passed: report.passed(),
        result: json!({
            "degree": cochain.degree,
            "checked": report.checked,
            "failure_count": report.failures.len(),
            "failures": listed(&report.failures, discrepancy),
            "bound_violation_count": report.bound_violations.len(),
            "bound_violations": listed(&report.bound_violations, discrepancy),
        }),
    })
}

// --------------------------------------------------------------------- qm

fn odd_function(spec: &str) -> Result<OddFunction> {
    let int = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|_| parse_err(format!("`{s}` is not an integer")))
    };
    Ok(match spec.split_once(':') {
        None if spec == "sign" => OddFunction::Sign,
        None if spec == "zero" => OddFunction::Zero,
        Some(("clamp", n)) => OddFunction::Clamped(int(n)?),
        Some(("parity", n)) => OddFunction::ParityWindow(int(n)?),
        Some(("table", entries)) => {
            let mut values = std::collections::BTreeMap::new();
            for entry in entries.split(',').filter(|e| !e.is_empty()) {
                let (k, v) = entry
                    .split_once('=')
                    .ok_or_else(|| parse_err(format!("`{entry}` is not k=p/q")))?;
                values.insert(int(k.trim())?, parse_q(v.trim())?);
            }
            OddFunction::table(values)?
        }
        _ => return Err(parse_err(format!("unknown function `{spec}`"))),
    })
}

fn rolli_family(a: &QmArgs, faults: Faults) -> Result<RolliFamily> {
    let g = load_graph(&a.graph.graph, faults)?;
    let mut functions = vec![OddFunction::Sign; g.vertex_count()];
    for f in &a.function {
        let (v, spec) = f
            .split_once('=')
            .ok_or_else(|| parse_err(format!("`{f}` is not VERTEX=function")))?;
        functions[g.vertex_index(v.trim())?] = odd_function(spec.trim())?;
    }
    Ok(RolliFamily::new(g, functions)?)
}

fn qm_defect(a: &QmArgs, faults: Faults) -> Result<Outcome> {
    let f = rolli_family(a, faults)?;
    Ok(Outcome::ok(json!({
        "defect": q_str(&f.defect(a.syllables, a.exponent)),
        "sup_bound": q_str(&f.sup_bound()),
    })))
}

fn qm_diagram(a: &QmArgs, faults: Faults) -> Result<Outcome> {
    let f = rolli_family(a, faults)?;
    let g = f.graph().clone();
    let elems = g.enumerate_elements(a.syllables, a.exponent);
    let triples: Vec<_> = elems
        .iter()
        .flat_map(|x| elems.iter().map(|y| [g.identity(), x.clone(), y.clone()]))
        .collect();
    let report = f.diagram_check(&triples)?;
    let text = |s: &String| json!(s);
    Ok(Outcome {
        passed: report.passed(),
        result: json!({
            "triples": triples.len(),
            "checked": report.checked,
            "barycenter_checked": report.barycenter_checked,
            "barycenter_failure_count": report.barycenter_failures.len(),
            "barycenter_failures": listed(&report.barycenter_failures, text),
            "value_failure_count": report.value_failures.len(),
            "value_failures": listed(&report.value_failures, text),
        }),
    })
}

// ------------------------------------------------------------------- norm

fn chain(pair: &PairComplex, n: usize, c: &[Q]) -> Value {
    json!(format::chain_json(pair.ambient(), n, c))
}

fn theta_note(t: &Q) -> Value {
    json!(below_unit_theta(t))
}

fn norm_seminorm(a: &NormArgs) -> Result<Outcome> {
    let (pair, class) = load_pair(&a.pair)?;
    let n = class.degree;
    if a.theta == "inf" {
        let r = pair.homology_seminorm_infinite(&class)?;
        return Ok(Outcome::ok(json!({
            "boundary_min": q_str(&r.boundary_min),
            "value": r.value.as_ref().map_or("inf".to_string(), q_str),
            "representative": chain(&pair, n, &r.representative),
            "certificates": r.certificates.iter().map(|(_, c)| CertificateJson::new(c)).collect::<Vec<_>>(),
        })));
    }
    let t = theta(&a.theta)?;
    let r = pair.homology_seminorm(&class, &t)?;
    Ok(Outcome {
        passed: r.verified(),
        result: json!({
            "value": q_str(&r.value),
            "representative": chain(&pair, n, &r.representative),
            "certificate": CertificateJson::new(&r.certificate),
            "certificate_verified": r.verified(),
            "theta_below_one": theta_note(&t),
        }),
    })
}

fn cone_compare(a: &NormArgs, faults: Faults) -> Result<Outcome> {
    let (pair, class) = load_pair(&a.pair)?;
    let t = theta(&a.theta)?;
    let relative = pair.homology_seminorm(&class, &t)?;
    let cone = match MappingCone::with_faults(pair.clone(), faults) {
        Ok(c) => c,
        Err(e) => {
            return Ok(Outcome {
                passed: false,
                result: json!({ "relative": q_str(&relative.value), "cone_error": e.to_string() }),
            })
        }
    };
    let c = cone.beta_inverse(&class)?;
    let r = cone.cone_seminorm(class.degree, &c, &t)?;
    let equal = r.value == relative.value;
    let verified = r.verified() && relative.verified();
    Ok(Outcome {
        passed: equal && verified,
        result: json!({
            "cone": q_str(&r.value),
            "relative": q_str(&relative.value),
            "equal": equal,
            "certificates_verified": verified,
            "cone_certificate": CertificateJson::new(&r.certificate),
            "relative_certificate": CertificateJson::new(&relative.certificate),
            "theta_below_one": theta_note(&t),
        }),
    })
}

fn norm_duality(a: &NormArgs) -> Result<Outcome> {
    let (pair, class) = load_pair(&a.pair)?;
    let t = theta(&a.theta)?;
    let dual = DualCone::new(&pair);
    let d = dual.duality_max(&class, &t)?;
    let primal = pair.homology_seminorm(&class, &t)?;
    let witness_ok = dual.check_witness(&class, &t, &d);
    let n = class.degree;
    let x = pair.ambient();
    let g: std::collections::BTreeMap<String, String> = if n == 0 {
        Default::default()
    } else {
        pair.sub_basis(n - 1)
            .iter()
            .zip(&d.witness.g)
            .map(|(&i, v)| (x.names(n - 1)[i].clone(), q_str(v)))
            .collect()
    };
    let equal = d.value == primal.value;
    Ok(Outcome {
        passed: equal && witness_ok && primal.verified(),
        result: json!({
            "value": q_str(&d.value),
            "primal": q_str(&primal.value),
            "equal": equal,
            "witness": { "f": chain(&pair, n, &d.witness.f), "g": g },
            "witness_verified": witness_ok,
            "certificate": CertificateJson::new(&d.certificate),
            "theta_below_one": theta_note(&t),
        }),
    })
}

fn norm_thurston(a: &ThurstonArgs) -> Result<Outcome> {
    let (pair, class) = load_pair(&a.pair)?;
    let eps = parse_q(&a.epsilon)?;
    let r = pair.thurston_representative(&class, &eps)?;
    Ok(Outcome::ok(json!({
        "seminorm": q_str(&r.seminorm),
        "theta": q_str(&r.theta),
        "chain": chain(&pair, class.degree, &r.chain),
        "chain_norm": q_str(&r.chain_norm),
        "boundary_norm": q_str(&r.boundary_norm),
        "status": format!("{:?}", r.status),
    })))
}

// ------------------------------------------------------------------- glue

fn glue(a: &GlueArgs) -> Result<Outcome> {
    let json = match a.gluing.strip_prefix("bundled:") {
        Some(name) => bundled::glue(name)?,
        None => serde_json::from_str::<GlueJson>(&read(&a.gluing)?)?,
    };
    let (pieces, interfaces) = json.load()?;
    let r = glue_assemble(json.degree, &pieces, &interfaces)?;
    let n = json.degree;
    let verified = r.verified(n);
    Ok(Outcome {
        passed: verified,
        result: json!({
            "cycle": chain(&r.glued, n, &r.cycle),
            "sum": chain(&r.glued, n, &r.sum),
            "correction": chain(&r.glued, n, &r.correction),
            "piece_norms": format::q_strs(&r.piece_norms),
            "correction_norm": q_str(&r.correction_norm),
            "cycle_norm": q_str(&r.cycle_norm),
            "certificate": CertificateJson::new(&r.certificate),
            "verified": verified,
        }),
    })
}

// --------------------------------------------------------------- selftest

fn selftest(a: &SelftestArgs, faults: Faults) -> Outcome {
    let scale = if a.level == "full" {
        Scale::full()
    } else {
        Scale::quick()
    };
    let mut rows = Vec::new();
    let mut passed = true;
    for (id, _) in CRITERIA {
        let o = acceptance::run(id, &scale, faults);
        eprintln!("{o}");
        passed &= o.passed;
        rows.push(json!({ "id": o.id, "name": o.name, "passed": o.passed, "detail": o.detail }));
    }
    Outcome {
        result: json!({ "level": a.level, "criteria": rows }),
        passed,
    }
}
