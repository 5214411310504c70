//! The acceptance suite: eleven numbered criteria, each re-deriving a
//! headline value with independent checks.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    cycle, icosahedron, independence_number, ks_assignment_search, lovasz_theta, ExclusivityGraph,
};
use crate::inequalities::{
    clfc_value, linear_entropy, purity_bound, reprep_joint, signaling_factor, IcosahedronInequality,
    YuOhTerms,
};
use crate::linalg::{eigh, sequential_joint, ComplexMatrix, DensityMatrix};
use crate::magic::{
    magic_value, mub_projector, nchv_bound_magic, phase_gate, quantum_max_magic,
    unitary_conjugation_check, witnesses,
};
use crate::pauli::{
    activation_omega, avn_parity_check, builtin_avn, lhv_max_omega, no_signaling_residuals,
    AvnSystem, AvnVerdict,
};
use crate::rays::{basis_membership, builtin_rayset, enumerate_bases, exclusivity_graph, Ray, RaySet};
use crate::report::{format_number, ReportDocument, Section, Value};
use crate::sampling::{random_density, random_graph, random_pure_state, random_unit_vector};
use crate::states::{maxent3x3, xi};

/// Number of acceptance criteria.
pub const CRITERIA: usize = 11;

/// Data the suite runs on; replace fields to inject faults.
#[derive(Debug, Clone)]
pub struct SelftestInputs {
    pub cabello18: RaySet,
    pub yu_oh13: RaySet,
    pub kcbs5: RaySet,
    pub icosahedron: ExclusivityGraph,
    pub pentagon: ExclusivityGraph,
    pub cabello01: AvnSystem,
    pub phip: AvnSystem,
    pub bell_control: AvnSystem,
}

impl SelftestInputs {
    pub fn builtin() -> Result<Self> {
        Ok(Self {
            cabello18: builtin_rayset("cabello18")?,
            yu_oh13: builtin_rayset("yu_oh13")?,
            kcbs5: builtin_rayset("kcbs5")?,
            icosahedron: icosahedron(),
            pentagon: cycle(5),
            cabello01: builtin_avn("cabello01")?,
            phip: builtin_avn("phip_huang03")?,
            bell_control: builtin_avn("bell_control")?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub section: Section,
    /// Failed checks, in evaluation order.
    pub failures: Vec<String>,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub seed: u64,
    pub outcomes: Vec<CriterionOutcome>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn outcome(&self, id: usize) -> Option<&CriterionOutcome> {
        self.outcomes.iter().find(|o| o.id == id)
    }

    pub fn to_document(&self, timings: bool) -> ReportDocument {
        let mut doc = ReportDocument::new("selftest").config("seed", Value::Integer(self.seed as i64));
        for o in &self.outcomes {
            let mut s = o.section.clone();
            s.push("passed", Value::Bool(o.passed));
            if !o.failures.is_empty() {
                s.push("failures", Value::List(o.failures.iter().map(Value::text).collect()));
            }
            doc.push(s);
            if timings {
                doc.record_timing(&o.section.title, o.seconds);
            }
        }
        doc.push(Section::new("summary").with("all_passed", Value::Bool(self.all_passed())));
        doc
    }
}

/// Collects measured values and check results for one criterion.
struct Checker {
    section: Section,
    failures: Vec<String>,
}

impl Checker {
    fn new(title: String) -> Self {
        Self {
            section: Section::new(title),
            failures: Vec::new(),
        }
    }

    fn record(&mut self, key: &str, value: Value) {
        self.section.push(key, value);
    }

    fn num(&mut self, key: &str, v: f64) {
        self.record(key, Value::number(v));
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records `measured` and checks it against `expected` within `tol`.
    fn close(&mut self, key: &str, measured: f64, expected: f64, tol: f64) {
        self.num(key, measured);
        self.check((measured - expected).abs() <= tol, || {
            format!(
                "{key}: {} differs from {} by more than {}",
                format_number(measured),
                format_number(expected),
                format_number(tol)
            )
        });
    }
}

fn title(id: usize) -> &'static str {
    match id {
        1 => "kochen-specker-18",
        2 => "yu-oh",
        3 => "projector-sums",
        4 => "graph-constants",
        5 => "icosahedron-inequality",
        6 => "all-versus-nothing",
        7 => "clfc",
        8 => "activation",
        9 => "magic-witness",
        10 => "signaling",
        _ => "determinism",
    }
}

fn criterion_rng(seed: u64, id: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id as u64);
    rng
}

/// Runs one criterion (1-based id).
pub fn run_criterion(id: usize, inputs: &SelftestInputs, seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut c = Checker::new(format!("criterion-{id:02}-{}", title(id)));
    let mut rng = criterion_rng(seed, id);
    let result = match id {
        1 => kochen_specker(&mut c, inputs),
        2 => yu_oh(&mut c, inputs, &mut rng),
        3 => projector_sums(&mut c, inputs),
        4 => graph_constants(&mut c, inputs, &mut rng),
        5 => icosahedron_inequality(&mut c, inputs, &mut rng),
        6 => all_versus_nothing(&mut c, inputs),
        7 => clfc(&mut c),
        8 => activation(&mut c),
        9 => magic(&mut c, &mut rng),
        10 => signaling(&mut c, inputs, &mut rng),
        11 => determinism(&mut c, seed),
        other => Err(Error::InvalidArgument(format!("no criterion {other}"))),
    };
    if let Err(e) = result {
        c.failures.push(format!("error: {e}"));
    }
    CriterionOutcome {
        id,
        title: title(id).to_string(),
        passed: c.failures.is_empty(),
        section: c.section,
        failures: c.failures,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_selftest_with(inputs: &SelftestInputs, seed: u64) -> SelftestReport {
    SelftestReport {
        seed,
        outcomes: (1..=CRITERIA).map(|id| run_criterion(id, inputs, seed)).collect(),
    }
}

pub fn run_selftest(seed: u64) -> Result<SelftestReport> {
    Ok(run_selftest_with(&SelftestInputs::builtin()?, seed))
}

fn kochen_specker(c: &mut Checker, inputs: &SelftestInputs) -> Result<()> {
    let rs = &inputs.cabello18;
    let g = exclusivity_graph(rs, 0.0)?;
    let bases = enumerate_bases(rs)?;
    let membership = basis_membership(rs, &bases);
    c.record("rays", Value::Integer(rs.len() as i64));
    c.record("exact", Value::Bool(rs.is_exact()));
    c.record("bases", Value::Integer(bases.len() as i64));
    c.record("membership", Value::integers(membership.iter().map(|&m| m as i64)));
    c.check(rs.is_exact(), || "ray set is not exact".into());
    c.check(bases.len() == 9, || format!("expected 9 bases, found {}", bases.len()));
    c.check(membership.iter().all(|&m| m == 2), || "some ray is not in exactly two bases".into());
    let colouring = ks_assignment_search(&g, &bases)?;
    c.record("ks_colourable", Value::Bool(colouring.is_some()));
    c.check(colouring.is_none(), || "found a KS colouring".into());
    Ok(())
}

fn yu_oh(c: &mut Checker, inputs: &SelftestInputs, rng: &mut ChaCha8Rng) -> Result<()> {
    let terms = YuOhTerms::from_rays(inputs.yu_oh13.clone())?;
    let bases = enumerate_bases(&terms.rays)?;
    let colouring = ks_assignment_search(&terms.graph, &bases)?;
    let valid = colouring.as_ref().is_some_and(|a| a.is_valid(&terms.graph, &bases));
    c.record("ks_colouring_valid", Value::Bool(valid));
    c.check(valid, || "no valid KS colouring found".into());

    let target = 29.0 / 3.0;
    let op = terms.operator();
    let defect = op.max_abs_diff(&ComplexMatrix::identity(3).scale_real(target))?;
    c.num("operator_defect", defect);
    c.check(defect <= 1e-9, || "operator is not (29/3) I".into());

    let mixed = terms.value(&DensityMatrix::maximally_mixed(3))?;
    c.close("value_mixed", mixed, target, 1e-8);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let v = terms.value(&random_pure_state(3, rng))?;
        worst = worst.max((v - target).abs());
    }
    c.num("max_deviation_random_pure", worst);
    c.check(worst <= 1e-8, || "random pure state deviates from 29/3".into());
    c.close("nchv_bound", terms.nchv_bound(), 9.0, 0.0);
    Ok(())
}

fn projector_sums(c: &mut Checker, inputs: &SelftestInputs) -> Result<()> {
    let rs = &inputs.yu_oh13;
    let mut h_sum = ComplexMatrix::zeros(3, 3);
    for label in ["h0", "h1", "h2", "h3"] {
        let k = rs
            .index_of(label)
            .ok_or_else(|| Error::InvalidArgument(format!("ray {label} missing")))?;
        h_sum = &h_sum + rs.rays()[k].projector().matrix();
    }
    let defect = h_sum.max_abs_diff(&ComplexMatrix::identity(3).scale_real(4.0 / 3.0))?;
    c.num("h_sum_defect", defect);
    c.check(defect <= 1e-12, || "h projectors do not sum to (4/3) I".into());

    let ineq = IcosahedronInequality::from_graph(inputs.icosahedron.clone())?;
    let spectrum = eigh(&ineq.projector_sum())?.values;
    c.record("icosahedron_spectrum", Value::numbers(&spectrum));
    let expected = [3.0 * (5f64.sqrt() - 1.0), 5.0 - 5f64.sqrt(), 5.0 - 5f64.sqrt(), 5.0 - 5f64.sqrt()];
    let worst = spectrum
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    c.check(worst <= 1e-4, || "icosahedron spectrum differs".into());
    Ok(())
}

/// Largest independent set by exhaustive subset enumeration.
fn brute_force_alpha(g: &ExclusivityGraph) -> usize {
    let n = g.n();
    let edges: Vec<u32> = g.edges().iter().map(|&(u, v)| 1 << u | 1 << v).collect();
    (0u32..1 << n)
        .filter(|s| edges.iter().all(|e| s & e != *e))
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

fn graph_constants(c: &mut Checker, inputs: &SelftestInputs, rng: &mut ChaCha8Rng) -> Result<()> {
    let c5 = &inputs.pentagon;
    let alpha5 = independence_number(c5)?;
    c.record("alpha_c5", Value::Integer(alpha5 as i64));
    c.check(alpha5 == 2 && brute_force_alpha(c5) == 2, || "alpha(C5) is not 2".into());
    c.close("theta_c5", lovasz_theta(c5, 1e-8)?.theta, 5f64.sqrt(), 1e-5);

    let ico = &inputs.icosahedron;
    let alpha_i = independence_number(ico)?;
    c.record("alpha_icosahedron", Value::Integer(alpha_i as i64));
    c.check(alpha_i == 3, || format!("alpha(icosahedron) is {alpha_i}"));
    c.close("theta_icosahedron", lovasz_theta(ico, 1e-8)?.theta, 3.0 * (5f64.sqrt() - 1.0), 1e-4);

    let mut violations = 0;
    let mut alpha_mismatch = 0;
    for _ in 0..200 {
        let n = rng.random_range(1..=16);
        let p = rng.random_range(0.1..0.9);
        let g = random_graph(n, p, rng);
        let alpha = brute_force_alpha(&g);
        if independence_number(&g)? != alpha {
            alpha_mismatch += 1;
        }
        if alpha as f64 > lovasz_theta(&g, 1e-8)?.theta + 1e-6 {
            violations += 1;
        }
    }
    c.record("random_graphs", Value::Integer(200));
    c.record("sandwich_violations", Value::Integer(violations));
    c.record("alpha_mismatches", Value::Integer(alpha_mismatch));
    c.check(violations == 0, || format!("{violations} graphs with alpha > theta"));
    c.check(alpha_mismatch == 0, || format!("{alpha_mismatch} alpha mismatches vs brute force"));
    Ok(())
}

fn icosahedron_inequality(c: &mut Checker, inputs: &SelftestInputs, rng: &mut ChaCha8Rng) -> Result<()> {
    let ineq = IcosahedronInequality::from_graph(inputs.icosahedron.clone())?;
    c.close("value_mixed", ineq.value(&DensityMatrix::maximally_mixed(4), false)?, 3.0, 1e-6);
    let top = eigh(&ineq.projector_sum())?.vector(0);
    let aligned = ineq.value(&DensityMatrix::pure(&top)?, false)?;
    c.close("value_aligned", aligned, 3.0 * (5f64.sqrt() - 1.0), 1e-4);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..100 {
        let rho = random_density(4, rng);
        let excess = ineq.value(&rho, true)? - purity_bound(linear_entropy(&rho)?);
        worst = worst.max(excess);
    }
    c.num("max_excess_over_purity_bound", worst);
    c.check(worst <= 1e-6, || "purity bound exceeded".into());
    Ok(())
}

fn all_versus_nothing(c: &mut Checker, inputs: &SelftestInputs) -> Result<()> {
    let state = xi();
    let expectations = inputs.cabello01.clause_expectations(&state)?;
    c.record("cabello01_expectations", Value::numbers(&expectations));
    let worst = expectations
        .iter()
        .zip(inputs.cabello01.clauses())
        .map(|(e, cl)| (e - f64::from(cl.value)).abs())
        .fold(0.0, f64::max);
    c.check(
        expectations.len() == 9 && worst <= 1e-9,
        || "stabilizer expectations do not match the asserted values".into(),
    );
    for (key, sys) in [("cabello01", &inputs.cabello01), ("phip_huang03", &inputs.phip)] {
        let verdict = avn_parity_check(sys);
        let contradiction = matches!(verdict, AvnVerdict::Contradiction { .. });
        c.record(key, Value::text(if contradiction { "contradiction" } else { "consistent" }));
        c.check(contradiction, || format!("{key} admits a noncontextual model"));
    }
    match avn_parity_check(&inputs.bell_control) {
        AvnVerdict::Consistent { model } => {
            c.record("bell_control_model", Value::integers(model.iter().map(|&v| i64::from(v))));
            c.check(inputs.bell_control.satisfied_by(&model), || "model fails a clause".into());
        }
        AvnVerdict::Contradiction { .. } => {
            c.record("bell_control", Value::text("contradiction"));
            c.check(false, || "Bell stabilizer control reported contradictory".into());
        }
    }
    Ok(())
}

fn clfc(c: &mut Checker) -> Result<()> {
    c.close("value_maxent3x3", clfc_value(&maxent3x3())?, 1.0 / 9.0, 1e-9);
    let mixed = clfc_value(&DensityMatrix::maximally_mixed(9))?;
    c.num("value_mixed", mixed);
    c.check(mixed <= 0.0, || "maximally mixed state violates".into());
    Ok(())
}

fn activation(c: &mut Checker) -> Result<()> {
    let state = xi();
    c.close("omega_xi", activation_omega(&state)?, 18.0, 1e-8);
    let lhv = lhv_max_omega();
    c.record("lhv_max", Value::Integer(i64::from(lhv)));
    c.check(lhv == 16, || format!("LHV maximum is {lhv}"));
    let residuals = no_signaling_residuals(&state)?;
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    c.num("max_no_signaling_residual", worst);
    c.check(residuals.len() == 12 && worst <= 1e-9, || "context changes a correlation".into());
    Ok(())
}

/// Largest `<psi|A|psi>` over the witnesses, by power iteration on the
/// shifted operators from random starting vectors.
fn random_restart_magic_max(rng: &mut ChaCha8Rng, restarts: usize) -> Result<f64> {
    let shift = ComplexMatrix::identity(3).scale_real(3.0);
    let mut best = f64::NEG_INFINITY;
    for w in witnesses() {
        let shifted = &w.operator + &shift;
        for _ in 0..restarts {
            let mut v = random_unit_vector(3, rng);
            for _ in 0..400 {
                let next = shifted.apply(&v)?;
                let n = crate::linalg::norm(&next);
                v = next.into_iter().map(|z| z / n).collect();
            }
            let value = crate::linalg::inner(&v, &w.operator.apply(&v)?).re;
            best = best.max(value);
        }
    }
    Ok(best)
}

fn magic(c: &mut Checker, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut worst: f64 = 0.0;
    for j in 0..4 {
        for jj in j + 1..4 {
            for r in 0..3 {
                for rr in 0..3 {
                    let ov = mub_projector(j, r)?.matrix().trace_product(mub_projector(jj, rr)?.matrix())?;
                    worst = worst.max((ov.re - 1.0 / 3.0).abs().max(ov.im.abs()));
                }
            }
        }
    }
    c.num("max_mub_overlap_defect", worst);
    c.check(worst <= 1e-10, || "bases are not mutually unbiased".into());
    c.close("nchv_bound", nchv_bound_magic(), 0.0, 0.0);
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let (q, _) = quantum_max_magic()?;
    c.close("quantum_max", q, golden, 1e-8);
    let search = random_restart_magic_max(rng, 8)?;
    c.close("random_restart_max", search, q, 1e-6);
    c.close("value_mixed", magic_value(&DensityMatrix::maximally_mixed(3))?, -1.0 / 3.0, 1e-12);

    let samples: Vec<DensityMatrix> = (0..9)
        .map(|k| if k % 2 == 0 { random_pure_state(3, rng) } else { random_density(3, rng) })
        .collect();
    let report = unitary_conjugation_check(&phase_gate(), &samples)?;
    c.record(
        "phase_gate_permutation",
        match &report.permutation {
            Some(p) => Value::integers(p.iter().map(|&k| k as i64)),
            None => Value::text("none"),
        },
    );
    c.check(report.is_nontrivial(), || "phase gate does not permute the witnesses".into());
    let change = report.max_value_change.unwrap_or(f64::INFINITY);
    c.num("max_value_change", change);
    c.check(change <= 1e-9, || "magic value not invariant".into());
    Ok(())
}

fn random_ray<R: Rng>(label: &str, dim: usize, rng: &mut R) -> Result<Ray> {
    Ray::float(label, random_unit_vector(dim, rng))
}

fn signaling(c: &mut Checker, inputs: &SelftestInputs, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let dim = rng.random_range(2..=4);
        let rho = random_pure_state(dim, rng);
        let (i, j) = (random_ray("i", dim, rng)?, random_ray("j", dim, rng)?);
        let diff = reprep_joint(&rho, &i, &j)? - sequential_joint(&rho, &i.projector(), &j.projector())?;
        worst = worst.max(diff.abs());
    }
    c.num("max_reprep_difference", worst);
    c.check(worst <= 1e-10, || "repreparation differs from sequential joint".into());

    let mut worst: f64 = 0.0;
    let mut edges = 0;
    for rs in [&inputs.cabello18, &inputs.yu_oh13, &inputs.kcbs5] {
        let g = exclusivity_graph(rs, 0.0)?;
        let states = [DensityMatrix::maximally_mixed(rs.dim()), random_density(rs.dim(), rng)];
        for (u, v) in g.edges() {
            edges += 1;
            for rho in &states {
                for (a, b) in [(u, v), (v, u)] {
                    let s = signaling_factor(rho, &rs.rays()[a], &rs.rays()[b])?;
                    worst = worst.max(s.abs());
                }
            }
        }
    }
    c.record("edges_checked", Value::Integer(edges));
    c.num("max_signaling_factor", worst);
    c.check(worst <= 1e-12, || "an orthogonal pair signals".into());
    Ok(())
}

/// Draws the suite's random samples twice from the same seed and compares
/// their serialized forms bit for bit.
fn determinism(c: &mut Checker, seed: u64) -> Result<()> {
    let draw = || -> String {
        let mut rng = criterion_rng(seed, 4);
        let mut out = String::new();
        for _ in 0..20 {
            let n = rng.random_range(1..=16);
            let p = rng.random_range(0.1..0.9);
            out.push_str(&crate::graph::serialize_graph(&random_graph(n, p, &mut rng)));
        }
        let mut rng = criterion_rng(seed, 5);
        for _ in 0..5 {
            let rho = random_density(4, &mut rng);
            for z in rho.matrix().as_slice() {
                out.push_str(&format!("{:016x}{:016x}", z.re.to_bits(), z.im.to_bits()));
            }
        }
        out
    };
    let (first, second) = (draw(), draw());
    c.record("sample_bytes", Value::Integer(first.len() as i64));
    c.check(first == second, || "seeded samples differ between draws".into());
    let doc = ReportDocument::new("probe").config("seed", Value::Integer(seed as i64));
    let round_trip = ReportDocument::from_json(&doc.to_json()).map(|d| d == doc).unwrap_or(false);
    c.record("json_round_trip", Value::Bool(round_trip));
    c.check(round_trip, || "report JSON does not round-trip".into());
    Ok(())
}
