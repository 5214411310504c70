use std::path::Path;
use std::time::Instant;

use ctxkit::graph::{
    builtin_graph, independence_number, ks_assignment_search, lovasz_theta, parse_graph,
    ExclusivityGraph, BUILTIN_GRAPHS,
};
use ctxkit::inequalities::{
    clfc_value, csw_value, yu_oh_value, IcosahedronInequality, InequalitySpec, WitnessReport,
};
use ctxkit::linalg::DensityMatrix;
use ctxkit::magic::{magic_value, quantum_max_magic};
use ctxkit::pauli::{
    activation_breakdown, avn_parity_check, builtin_avn, parse_avn, AvnSystem, AvnVerdict,
    BUILTIN_AVN, OMEGA_LHV_BOUND,
};
use ctxkit::rays::{
    builtin_rayset, enumerate_bases, exclusivity_graph, parse_rayset, RaySet, BUILTIN_RAYSETS,
};
use ctxkit::report::{ReportDocument, Section, Value};
use ctxkit::selftest::run_selftest;
use ctxkit::states::{builtin_state, parse_state};
use ctxkit::{Error, Result, Tolerances};

/// What a `graph` input resolved to.
enum GraphSource {
    Rays(RaySet),
    Graph(ExclusivityGraph),
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read `{path}`: {e}")))
}

fn file_stem(path: &str) -> String {
    Path::new(path)
        .file_stem()
        .map_or_else(|| path.to_string(), |s| s.to_string_lossy().into_owned())
}

/// A path on disk, or else the name of a builtin ray set or graph.
fn load_graph_source(input: &str) -> Result<GraphSource> {
    if Path::new(input).exists() {
        let text = read(input)?;
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .unwrap_or("");
        return if first.starts_with("dim") {
            Ok(GraphSource::Rays(parse_rayset(&file_stem(input), &text)?))
        } else {
            Ok(GraphSource::Graph(parse_graph(&text)?))
        };
    }
    if BUILTIN_RAYSETS.contains(&input) {
        return Ok(GraphSource::Rays(builtin_rayset(input)?));
    }
    if BUILTIN_GRAPHS.contains(&input) {
        return Ok(GraphSource::Graph(builtin_graph(input)?));
    }
    Err(Error::InvalidArgument(format!(
        "`{input}` is neither a file nor a builtin ray set or graph"
    )))
}

fn timed<T>(doc: &mut ReportDocument, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f()?;
    doc.record_timing(stage, start.elapsed().as_secs_f64());
    Ok(out)
}

pub fn cmd_graph(input: &str, tol: Option<f64>, tols: &Tolerances) -> Result<ReportDocument> {
    let tol = tol.unwrap_or(tols.sdp_gap);
    let mut doc = ReportDocument::new("graph")
        .config("input", Value::text(input))
        .config("tol", Value::number(tol));
    let source = load_graph_source(input)?;
    let (g, rays) = match source {
        GraphSource::Rays(rs) => {
            let edge_tol = if rs.is_exact() { 0.0 } else { tols.edge };
            (exclusivity_graph(&rs, edge_tol)?, Some(rs))
        }
        GraphSource::Graph(g) => (g, None),
    };
    let alpha = timed(&mut doc, "independence", || independence_number(&g))?;
    let cert = timed(&mut doc, "theta", || lovasz_theta(&g, tol))?;
    let mut s = Section::new("graph")
        .with("vertices", Value::Integer(g.n() as i64))
        .with("edges", Value::Integer(g.edge_count() as i64))
        .with("alpha", Value::Integer(alpha as i64))
        .with("theta", Value::number(cert.theta))
        .with("theta_upper_bound", Value::number(cert.upper_bound));
    if alpha > 0 {
        s.push("theta_over_alpha", Value::number(cert.theta / alpha as f64));
    }
    if let Some(rs) = rays {
        s.push("dimension", Value::Integer(rs.dim() as i64));
        let bases = timed(&mut doc, "bases", || enumerate_bases(&rs))?;
        s.push("bases", Value::Integer(bases.len() as i64));
        if !bases.is_empty() {
            let colouring = timed(&mut doc, "ks_search", || ks_assignment_search(&g, &bases))?;
            let verdict = if colouring.is_some() { "KS-colorable" } else { "KS-uncolorable" };
            s.push("verdict", Value::text(verdict));
        }
    }
    doc.push(s);
    Ok(doc)
}

/// Inequalities accepted by `ineq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum IneqName {
    Yo,
    Csw,
    Icosahedron,
    Clfc,
    Omega,
    Magic,
    Avn,
}

fn load_state(spec: &str, native_dim: usize, tols: &Tolerances) -> Result<DensityMatrix> {
    let rho = if Path::new(spec).exists() {
        parse_state(&read(spec)?)?
    } else {
        builtin_state(spec, native_dim)?
    };
    // Re-validate against the active tolerance bundle.
    let rho = DensityMatrix::with_tolerances(rho.into_matrix(), tols)?;
    if rho.dim() != native_dim {
        return Err(Error::DimensionMismatch {
            expected: native_dim,
            found: rho.dim(),
        });
    }
    Ok(rho)
}

fn load_avn(spec: &str) -> Result<AvnSystem> {
    if Path::new(spec).exists() {
        parse_avn(&read(spec)?)
    } else if BUILTIN_AVN.contains(&spec) {
        builtin_avn(spec)
    } else {
        Err(Error::InvalidArgument(format!("`{spec}` is neither a file nor a builtin AVN system")))
    }
}

fn load_rays(spec: &str) -> Result<RaySet> {
    if Path::new(spec).exists() {
        parse_rayset(&file_stem(spec), &read(spec)?)
    } else {
        builtin_rayset(spec)
    }
}

fn verdict_section(title: &str, sys: &AvnSystem) -> Section {
    match avn_parity_check(sys) {
        AvnVerdict::Contradiction { clauses } => Section::new(title)
            .with("verdict", Value::text("contradiction"))
            .with("clauses", Value::integers(clauses.iter().map(|&c| c as i64))),
        AvnVerdict::Consistent { model } => {
            let assignment = sys
                .atoms()
                .iter()
                .zip(&model)
                .map(|((name, _), v)| Value::text(format!("{name}={v:+}")))
                .collect();
            Section::new(title)
                .with("verdict", Value::text("consistent"))
                .with("model", Value::List(assignment))
        }
    }
}

pub struct IneqArgs<'a> {
    pub name: IneqName,
    pub state: &'a str,
    pub system: Option<&'a str>,
    pub rays: Option<&'a str>,
}

pub fn cmd_inequality(args: &IneqArgs, tols: &Tolerances) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("ineq")
        .config("name", Value::text(format!("{:?}", args.name).to_lowercase()))
        .config("state", Value::text(args.state));
    let witness = match args.name {
        IneqName::Yo => {
            let rho = load_state(args.state, 3, tols)?;
            WitnessReport::from_spec(&InequalitySpec::yu_oh(), yu_oh_value(&rho)?)
        }
        IneqName::Csw => {
            let rays_spec = args.rays.unwrap_or("kcbs5");
            doc.config.push(ctxkit::report::Field {
                key: "rays".into(),
                value: Value::text(rays_spec),
            });
            let rs = load_rays(rays_spec)?;
            let edge_tol = if rs.is_exact() { 0.0 } else { tols.edge };
            let g = exclusivity_graph(&rs, edge_tol)?;
            let rho = load_state(args.state, rs.dim(), tols)?;
            let alpha = independence_number(&g)?;
            let theta = lovasz_theta(&g, tols.sdp_gap)?.theta;
            let spec = InequalitySpec::csw(&format!("csw-{}", rs.name()), alpha, theta);
            WitnessReport::from_spec(&spec, csw_value(&rs, &g, &rho)?)
        }
        IneqName::Icosahedron => {
            let rho = load_state(args.state, 4, tols)?;
            let ineq = IcosahedronInequality::new()?;
            WitnessReport::from_spec(&InequalitySpec::icosahedron(), ineq.value(&rho, true)?)
        }
        IneqName::Clfc => {
            let rho = load_state(args.state, 9, tols)?;
            WitnessReport::from_spec(&InequalitySpec::clfc(), clfc_value(&rho)?)
        }
        IneqName::Omega => {
            let rho = load_state(args.state, 16, tols)?;
            let b = activation_breakdown(&rho)?;
            doc.push(
                Section::new("omega-terms")
                    .with("chi", Value::number(b.chi))
                    .with("correlations", Value::numbers(&b.correlations)),
            );
            WitnessReport::new("omega", b.value, OMEGA_LHV_BOUND, Some(18.0))
        }
        IneqName::Magic => {
            let rho = load_state(args.state, 3, tols)?;
            let (q, _) = quantum_max_magic()?;
            WitnessReport::new("magic", magic_value(&rho)?, 0.0, Some(q))
        }
        IneqName::Avn => {
            let system = args.system.unwrap_or("cabello01");
            doc.config.push(ctxkit::report::Field {
                key: "system".into(),
                value: Value::text(system),
            });
            let sys = load_avn(system)?;
            let rho = load_state(args.state, 1 << sys.qubits(), tols)?;
            let expectations = sys.clause_expectations(&rho)?;
            let asserted: Vec<f64> = sys.clauses().iter().map(|c| f64::from(c.value)).collect();
            let mut s = verdict_section("avn", &sys);
            s.push("clause_expectations", Value::numbers(&expectations));
            s.push("asserted_values", Value::numbers(&asserted));
            let deviation = expectations
                .iter()
                .zip(&asserted)
                .map(|(e, a)| (e - a).abs())
                .fold(0.0, f64::max);
            s.push("max_deviation", Value::number(deviation));
            doc.push(s);
            return Ok(doc);
        }
    };
    doc.push(Section::from_witness(&witness));
    Ok(doc)
}

pub fn cmd_avn(input: &str) -> Result<ReportDocument> {
    let sys = load_avn(input)?;
    let mut doc = ReportDocument::new("avn").config("input", Value::text(input));
    let mut s = verdict_section("avn", &sys);
    s.push("atoms", Value::Integer(sys.atoms().len() as i64));
    s.push("clauses_total", Value::Integer(sys.clauses().len() as i64));
    doc.push(s);
    Ok(doc)
}

/// Returns the report and whether every criterion passed.
pub fn cmd_selftest(seed: u64, timings: bool) -> Result<(ReportDocument, bool)> {
    let report = run_selftest(seed)?;
    Ok((report.to_document(timings), report.all_passed()))
}
