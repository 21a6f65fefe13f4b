//! What each command computes and the files it produces. Nothing here
//! touches the filesystem; [`Outcome::write`] does.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64 as C64;
use qubitize::circuit::{Circuit, CostModel};
use qubitize::models::{
    dual_basis_coefficients, dual_basis_lambda, hubbard_terms, jw_terms, random_toy, DualBasisSpec, HubbardSpec,
    LcuHamiltonian,
};
use qubitize::oracles::{build_select_chem, build_select_hub, ChemOracle, GenericOracle, HubbardOracle, WalkMode, WalkSpec};
use qubitize::phase_est::{build_chi_m, build_pea_schedule, pea_bits, pea_distribution, ErrorBudget, PhaseDistribution};
use qubitize::primitives::{build_indexed, build_majorana_selector, build_qrom, build_ranged_op, build_uniform, IndexedTargetSpec, Pauli, QromData};
use qubitize::resources::{
    logical_chem, logical_hub, physical_overhead, LogicalReport, PhysicalReport, QueryMix, SurfaceCodeParams, System,
    ERROR_RATES, PUBLISHED,
};
use qubitize::sim::walk::{walk_eigenphases, MatrixFreeWalk};
use qubitize::sim::extract_block;
use qubitize::state_prep::{build_alias_table, compute_mu, discretize};
use qubitize::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{Command, JobConfig, ModelKind, SynthTarget};
use crate::plot::emit_plot_data;

/// Files to write plus a short console summary.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub files: Vec<(String, Vec<u8>)>,
    pub summary: String,
    pub success: bool,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { files: Vec::new(), summary: String::new(), success: true }
    }

    fn add(&mut self, name: &str, body: impl Into<Vec<u8>>) {
        self.files.push((name.to_string(), body.into()));
    }

    fn add_json(&mut self, name: &str, v: &Value) {
        let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
        s.push('\n');
        self.add(name, s);
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, body) in &self.files {
            std::fs::write(dir.join(name), body)?;
        }
        Ok(())
    }
}

pub fn run(cfg: &JobConfig) -> Result<Outcome> {
    let cmd = cfg.command.ok_or_else(|| Error::Invalid("no command given".into()))?;
    match cmd {
        Command::Synth => synth(cfg),
        Command::Verify => Ok(verify(cfg)),
        Command::Budget => budget(cfg),
        Command::Estimate => estimate(cfg),
        Command::LambdaScan => lambda_scan(cfg),
    }
}

fn model(cfg: &JobConfig) -> ModelKind {
    cfg.model.unwrap_or(ModelKind::Chem)
}

fn hubbard_spec(cfg: &JobConfig) -> Result<HubbardSpec<f64>> {
    HubbardSpec::new(cfg.m.unwrap_or(6), cfg.t.unwrap_or(1.0), cfg.u.unwrap_or(4.0))
}

fn jellium_spec(cfg: &JobConfig) -> Result<DualBasisSpec<f64>> {
    DualBasisSpec::jellium(cfg.m.unwrap_or(3), cfg.d.unwrap_or(3), cfg.rs.unwrap_or(10.0))
}

fn delta_e(cfg: &JobConfig) -> f64 {
    cfg.delta_e.unwrap_or(match model(cfg) {
        ModelKind::Hubbard => cfg.t.unwrap_or(1.0) / 100.0,
        _ => 0.0016,
    })
}

fn eps_synth(cfg: &JobConfig) -> f64 {
    cfg.eps_synth.unwrap_or(1e-3)
}

/// The LCU the circuits encode, for budgets.
fn model_lcu(cfg: &JobConfig) -> Result<LcuHamiltonian<f64>> {
    match model(cfg) {
        ModelKind::Hubbard => Ok(hubbard_terms(&hubbard_spec(cfg)?)),
        ModelKind::Chem => Ok(jw_terms(&dual_basis_coefficients(&jellium_spec(cfg)?)?)),
        ModelKind::Published => Err(Error::Invalid("`published` only applies to estimate".into())),
    }
}

fn walk_spec(cfg: &JobConfig) -> Result<WalkSpec> {
    match model(cfg) {
        ModelKind::Hubbard => HubbardOracle::walk_spec(&hubbard_spec(cfg)?),
        ModelKind::Chem => {
            let coeffs = dual_basis_coefficients(&jellium_spec(cfg)?)?;
            let mu = match cfg.mu {
                Some(mu) => mu,
                None => compute_mu(dual_basis_lambda(&coeffs), delta_e(cfg), cfg.norm.unwrap_or(0.0))?,
            };
            ChemOracle::walk_spec(&coeffs, mu)
        }
        ModelKind::Published => Err(Error::Invalid("`published` only applies to estimate".into())),
    }
}

fn header(cfg: &JobConfig) -> String {
    format!("# config {}\n", cfg.short_hash())
}

// ---------------------------------------------------------------- synth

fn synth_circuit(cfg: &JobConfig) -> Result<(SynthTarget, Circuit)> {
    let target = cfg.target.unwrap_or(SynthTarget::Qrom);
    let len = cfg.len.unwrap_or(11);
    let controlled = cfg.controlled.unwrap_or(false);
    let c = match target {
        SynthTarget::Qrom => {
            let bits = cfg.word_bits.unwrap_or(8);
            if bits == 0 || bits > 63 {
                return Err(Error::Invalid(format!("word_bits must be in 1..=63, got {bits}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
            let words = (0..len).map(|_| rng.gen_range(0..1u64 << bits)).collect();
            build_qrom(&QromData::new(words, bits)?, controlled)?
        }
        SynthTarget::Majorana => build_majorana_selector(len, controlled)?,
        SynthTarget::Indexed => {
            build_indexed(&IndexedTargetSpec { actions: (0..len).map(|l| vec![(Pauli::X, l)]).collect() }, controlled)?
        }
        SynthTarget::Ranged => build_ranged_op(len, Pauli::Z, controlled)?,
        SynthTarget::Uniform => build_uniform(len, controlled)?,
        SynthTarget::Select => match model(cfg) {
            ModelKind::Hubbard => build_select_hub(cfg.m.unwrap_or(6), controlled)?,
            _ => build_select_chem(cfg.m.unwrap_or(3), cfg.d.unwrap_or(3), controlled)?,
        },
        SynthTarget::Prepare => walk_spec(cfg)?.build_prepare()?,
        SynthTarget::Walk => walk_spec(cfg)?.build(if controlled { WalkMode::Controlled } else { WalkMode::Plain })?,
        SynthTarget::Chi => build_chi_m(cfg.pea_bits.unwrap_or(3), true)?,
        SynthTarget::Pea => {
            let spec = walk_spec(cfg)?;
            let m = match cfg.pea_bits {
                Some(m) => m,
                None => {
                    let m = pea_bits(spec.lambda(), delta_e(cfg))?;
                    if m > 8 {
                        return Err(Error::Invalid(format!(
                            "the target error needs m = {m} phase bits; set precision.m to build a smaller schedule"
                        )));
                    }
                    m
                }
            };
            build_pea_schedule(&spec, m)?.circuit
        }
    };
    Ok((target, c))
}

fn synth(cfg: &JobConfig) -> Result<Outcome> {
    let (target, c) = synth_circuit(cfg)?;
    let name = serde_json::to_value(target).expect("target serializes");
    let name = name.as_str().expect("target is a string");
    let ledger = c.ledger();
    let total = c.total_t_count(&CostModel::default(), eps_synth(cfg))?;
    let regs: Vec<Value> = c.registers().iter().map(|r| json!({"name": r.name, "size": r.qubits.len()})).collect();
    let mut out = Outcome::new();
    out.add(&format!("{name}.circ"), c.serialize());
    out.add_json(
        "synth.json",
        &json!({
            "config_hash": cfg.hash(),
            "target": name,
            "registers": regs,
            "width": c.width(),
            "gates": c.gates().len(),
            "peak_ancilla": c.peak_ancilla(),
            "ledger": ledger,
            "t_count": c.t_count(),
            "rotations": c.rotation_count(),
            "eps_synth": eps_synth(cfg),
            "total_t_count": total,
        }),
    );
    let mut s = String::new();
    writeln!(s, "target={name}").ok();
    writeln!(s, "t_count={}", c.t_count()).ok();
    writeln!(s, "rotations={}", c.rotation_count()).ok();
    writeln!(s, "total_t_count={total}").ok();
    writeln!(s, "qubits={}", c.width()).ok();
    writeln!(s, "gates={}", c.gates().len()).ok();
    out.add("synth.txt", format!("{}{s}", header(cfg)));
    out.summary = s;
    Ok(out)
}

// ---------------------------------------------------------------- budget

fn budget(cfg: &JobConfig) -> Result<Outcome> {
    let h = model_lcu(cfg)?;
    let lambda = h.lambda();
    let (norm, source) = match cfg.norm {
        Some(n) => (n, "config"),
        None if h.n_qubits <= 12 => (h.exact_norm(), "exact"),
        None => (h.norm_bound(0.5), "guess: lambda/2"),
    };
    let b = ErrorBudget::new(lambda, delta_e(cfg), h.len(), norm)?;
    let mut v = serde_json::to_value(&b).expect("budget serializes");
    let obj = v.as_object_mut().expect("budget is an object");
    obj.insert("config_hash".into(), json!(cfg.hash()));
    obj.insert("n_terms".into(), json!(h.len()));
    obj.insert("norm_bound".into(), json!(norm));
    obj.insert("norm_source".into(), json!(source));
    let mut out = Outcome::new();
    out.add_json("budget.json", &v);
    out.summary = format!("lambda={lambda} m={} mu={} delta={:e}\n", b.m, b.mu, b.delta);
    Ok(out)
}

// ---------------------------------------------------------------- estimate

const LOGICAL_HEADER: &str = "system,N,lambda,dE,m,mu,ancilla,total_logical,t_count,t_quoted,queries,queries_circuit\n";
const PHYSICAL_HEADER: &str = "system,N,p,physical_qubits,hours,d_data,d_factory,t_gates\n";

fn logical_row(system: &str, r: &LogicalReport) -> String {
    format!(
        "{system},{},{:.6},{},{},{},{},{},{:.4e},{:.4e},{:.4e},{:.4e}\n",
        r.n, r.lambda, r.delta_e, r.m, r.mu, r.ancilla_qubits, r.total_logical_qubits, r.t_total, r.t_quoted, r.queries, r.queries_circuit
    )
}

fn physical_row(system: &str, n: usize, r: &PhysicalReport) -> String {
    format!(
        "{system},{n},{:e},{:.4e},{:.4},{},{},{:.4e}\n",
        r.p, r.physical_qubits, r.hours, r.d_data, r.d_factory, r.t_gates
    )
}

/// Jellium lambda: the tabulated value when the instance is a published
/// row, otherwise computed from the coefficients.
fn jellium_lambda(cfg: &JobConfig, n: usize) -> Result<(f64, &'static str)> {
    let spec = jellium_spec(cfg)?;
    let published = PUBLISHED.iter().find(|r| r.system == System::Jellium && r.n == n);
    match published {
        Some(r) if !cfg.recompute_lambda.unwrap_or(false) && spec.d == 3 && cfg.rs.unwrap_or(10.0) == 10.0 => {
            Ok((r.param, "table"))
        }
        _ => Ok((dual_basis_lambda(&dual_basis_coefficients(&spec)?), "computed")),
    }
}

fn estimate(cfg: &JobConfig) -> Result<Outcome> {
    let rates = cfg.p.clone().unwrap_or(ERROR_RATES.to_vec());
    let mut out = Outcome::new();
    if model(cfg) == ModelKind::Published {
        return Ok(estimate_published(cfg, &rates));
    }
    let (system, report, mix, lambda_source) = match model(cfg) {
        ModelKind::Hubbard => {
            let s = hubbard_spec(cfg)?;
            let n = s.spin_orbitals();
            (System::Hubbard, logical_hub(n, s.t, s.u, delta_e(cfg))?, QueryMix::hubbard(n)?, "formula")
        }
        _ => {
            let n = jellium_spec(cfg)?.spin_orbitals();
            let (lambda, src) = jellium_lambda(cfg, n)?;
            (System::Jellium, logical_chem(n, lambda, delta_e(cfg))?, QueryMix::electronic_structure(n)?, src)
        }
    };
    let name = serde_json::to_value(system).expect("system serializes");
    let name = name.as_str().expect("system is a string");
    let mut logical = format!("{}{LOGICAL_HEADER}", header(cfg));
    logical.push_str(&logical_row(name, &report));
    let mut physical = format!("{}{PHYSICAL_HEADER}", header(cfg));
    let mut phys = Vec::new();
    for &p in &rates {
        let r = physical_overhead(&report, &mix, &SurfaceCodeParams::new(p))?;
        physical.push_str(&physical_row(name, report.n, &r));
        phys.push(r);
    }
    out.add("logical.csv", logical);
    out.add("physical.csv", physical);
    out.add_json(
        "estimate.json",
        &json!({"config_hash": cfg.hash(), "system": name, "lambda_source": lambda_source, "logical": report, "physical": phys}),
    );
    out.summary = format!(
        "{name} N={} lambda={} T={:.3e} ancilla={} total_logical={}\n",
        report.n, report.lambda, report.t_quoted, report.ancilla_qubits, report.total_logical_qubits
    );
    Ok(out)
}

fn estimate_published(cfg: &JobConfig, rates: &[f64]) -> Outcome {
    let mut out = Outcome::new();
    let mut csv = format!("{}system,N,p,t_quoted,published_t,ancilla,published_ancilla,queries,published_queries,qubits,published_qubits,hours,published_hours\n", header(cfg));
    let mut ok = true;
    for row in PUBLISHED {
        let name = if row.system == System::Hubbard { "hubbard" } else { "jellium" };
        let (l, mix) = match (row.logical(), row.mix()) {
            (Ok(l), Ok(m)) => (l, m),
            _ => {
                ok = false;
                continue;
            }
        };
        for &p in rates {
            let published = ERROR_RATES.iter().position(|&x| x == p).map(|k| (row.qubits[k], row.hours[k]));
            let Ok(r) = physical_overhead(&l, &mix, &SurfaceCodeParams::new(p)) else {
                ok = false;
                continue;
            };
            let (pq, ph) = published.map_or((String::new(), String::new()), |(q, h)| (format!("{q:e}"), format!("{h}")));
            writeln!(
                csv,
                "{name},{},{p:e},{:.4e},{:e},{},{},{:.4e},{:e},{:.4e},{pq},{:.4},{ph}",
                row.n, l.t_quoted, row.t_count, l.ancilla_qubits, row.ancilla, l.queries, row.queries, r.physical_qubits, r.hours
            )
            .ok();
        }
    }
    out.add("published.csv", csv);
    out.success = ok;
    out.summary = format!("{} published rows at {} error rate(s)\n", PUBLISHED.len(), rates.len());
    out
}

// ---------------------------------------------------------------- lambda-scan

fn lambda_scan(cfg: &JobConfig) -> Result<Outcome> {
    let ms = cfg.scan_m.clone().unwrap_or(vec![2, 3, 4]);
    let d = cfg.d.unwrap_or(3);
    let rs = cfg.rs.unwrap_or(10.0);
    let mut points = Vec::new();
    for &m in &ms {
        let spec = DualBasisSpec::jellium(m, d, rs)?;
        let lambda = dual_basis_lambda(&dual_basis_coefficients(&spec)?);
        points.push((spec.spin_orbitals() as f64, lambda));
    }
    let head = vec![format!("config {}", cfg.short_hash()), format!("jellium r_s={rs} D={d}")];
    let (csv, fit) = emit_plot_data("N", "lambda", &points, &head)?;
    let mut out = Outcome::new();
    out.add("lambda_scan.csv", csv);
    out.add_json(
        "lambda_scan.json",
        &json!({"config_hash": cfg.hash(), "rs": rs, "D": d, "M": ms, "points": points, "slope": fit.slope, "intercept": fit.intercept}),
    );
    out.summary = format!("exponent={:.4}\n", fit.slope);
    Ok(out)
}

// ---------------------------------------------------------------- verify

type Suite = fn(u64) -> std::result::Result<String, String>;

const SUITES: [(&str, Suite); 8] = [
    ("t_count_identities", suite_t_counts),
    ("alias_tables", suite_alias),
    ("toy_block_encoding", suite_block),
    ("toy_walk_spectrum", suite_walk),
    ("hubbard_matrix_free_walk", suite_hubbard_walk),
    ("chi_state", suite_chi),
    ("pea_distribution", suite_pea),
    ("published_tables", suite_tables),
];

fn verify(cfg: &JobConfig) -> Outcome {
    let seed = cfg.seed.unwrap_or(0);
    let mut out = Outcome::new();
    let mut results = Vec::new();
    let mut text = String::new();
    for (name, f) in SUITES {
        let (pass, detail) = match f(seed) {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        out.success &= pass;
        writeln!(text, "{} {name}: {detail}", if pass { "PASS" } else { "FAIL" }).ok();
        results.push(json!({"suite": name, "pass": pass, "detail": detail}));
    }
    out.add_json("verify.json", &json!({"config_hash": cfg.hash(), "seed": seed, "suites": results}));
    out.summary = text;
    out
}

fn e2s(e: Error) -> String {
    e.to_string()
}

fn suite_t_counts(_: u64) -> std::result::Result<String, String> {
    for l in 2..=64usize {
        let data = QromData::new((0..l as u64).collect(), 7).map_err(e2s)?;
        let counts = [
            build_qrom(&data, false).map_err(e2s)?.t_count(),
            build_majorana_selector(l, false).map_err(e2s)?.t_count(),
            build_ranged_op(l, Pauli::Z, false).map_err(e2s)?.t_count(),
        ];
        if counts.iter().any(|&t| t != 4 * l - 4) {
            return Err(format!("L={l}: {counts:?}, expected {}", 4 * l - 4));
        }
    }
    Ok("4L-4 for L in 2..=64".into())
}

fn suite_alias(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let l = rng.gen_range(1..=256);
        let mu = rng.gen_range(1..=8);
        let w: Vec<f64> = (0..l).map(|_| rng.gen_range(0.0..1.0)).collect();
        let dist = discretize(&w, mu).map_err(e2s)?;
        let table = build_alias_table(&dist);
        if !table.is_consistent() || table.realized() != dist.targets {
            return Err(format!("alias table mismatch at L={l}, mu={mu}"));
        }
    }
    Ok("200 random tables exact".into())
}

fn suite_block(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let l = rng.gen_range(2..=6);
        let h = random_toy(&mut rng, 2, l);
        let spec = GenericOracle::walk_spec(&h).map_err(e2s)?;
        let c = spec.build_block().map_err(e2s)?;
        let b = extract_block(&c, &spec.register_map().system).map_err(e2s)?;
        let want = h.matrix() / C64::new(spec.lambda(), 0.0);
        worst = worst.max((b - want).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    if worst < 1e-10 {
        Ok(format!("max error {worst:.1e}"))
    } else {
        Err(format!("max error {worst:.1e}"))
    }
}

fn suite_walk(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let l = rng.gen_range(2..=4);
        let h = random_toy(&mut rng, 2, l);
        let s = walk_eigenphases(&h).map_err(e2s)?;
        worst = worst.max(s.max_error).max(s.spurious_error());
    }
    if worst < 1e-8 {
        Ok(format!("max error {worst:.1e}"))
    } else {
        Err(format!("max error {worst:.1e}"))
    }
}

fn suite_hubbard_walk(_: u64) -> std::result::Result<String, String> {
    let h = hubbard_terms(&HubbardSpec::new(2, 1.0, 4.0).map_err(e2s)?);
    let w = MatrixFreeWalk::new(&h).map_err(e2s)?;
    let lambda = h.lambda();
    let mut worst = 0.0f64;
    for (e, b) in w.phases().map_err(e2s)? {
        let want = (e / lambda).clamp(-1.0, 1.0).acos();
        let err = b.phases.iter().map(|p| (p.abs() - want).abs()).fold(0.0, f64::max);
        worst = worst.max(err).max(b.residual);
    }
    if worst < 1e-8 {
        Ok(format!("max error {worst:.1e}"))
    } else {
        Err(format!("max error {worst:.1e}"))
    }
}

fn suite_chi(_: u64) -> std::result::Result<String, String> {
    use qubitize::sim::SparseState;
    for m in 1..=5u32 {
        let c = build_chi_m(m, true).map_err(e2s)?;
        let reg = c.reg("chi").map_err(e2s)?;
        let mut s = SparseState::basis(0);
        s.run(&c, true).map_err(e2s)?;
        let want = qubitize::phase_est::chi_amplitudes(m);
        for (x, a) in want.iter().enumerate() {
            let key = qubitize::sim::spread(x, &reg);
            if (s.get(key).norm() - a).abs() > 1e-10 {
                return Err(format!("m={m} amplitude {x} off"));
            }
        }
    }
    Ok("m=1..5 amplitudes to 1e-10".into())
}

fn suite_pea(seed: u64) -> std::result::Result<String, String> {
    let h = random_toy(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(2)), 2, 3);
    let spec = GenericOracle::walk_spec(&h).map_err(e2s)?;
    let m = 3;
    let pc = build_pea_schedule(&spec, m).map_err(e2s)?;
    let (evals, vecs) = qubitize::models::hermitian_eigen(&h.matrix());
    let mut worst = 0.0f64;
    for (k, e) in evals.iter().enumerate() {
        let psi: Vec<C64> = vecs.column(k).iter().copied().collect();
        let phi = (e / spec.lambda()).clamp(-1.0, 1.0).acos();
        let got = pea_distribution(&pc, &psi).map_err(e2s)?;
        let a = PhaseDistribution::ideal(m + 1, phi);
        let b = PhaseDistribution::ideal(m + 1, -phi);
        for (y, g) in got.probs.iter().enumerate() {
            worst = worst.max((g - 0.5 * (a.probs[y] + b.probs[y])).abs());
        }
    }
    if pc.select_count != 1 << m {
        return Err(format!("{} walks, expected {}", pc.select_count, 1 << m));
    }
    if worst < 1e-10 {
        Ok(format!("m={m} max deviation {worst:.1e}"))
    } else {
        Err(format!("m={m} max deviation {worst:.1e}"))
    }
}

fn suite_tables(_: u64) -> std::result::Result<String, String> {
    for row in PUBLISHED {
        let l = row.logical().map_err(e2s)?;
        if (l.t_quoted / row.t_count - 1.0).abs() > 0.05 || (l.ancilla_qubits as i64 - row.ancilla as i64).abs() > 3 {
            return Err(format!("{:?} N={} logical mismatch", row.system, row.n));
        }
        for (i, p) in ERROR_RATES.into_iter().enumerate() {
            let r = row.physical(p).map_err(e2s)?;
            let (q, h) = (r.physical_qubits / row.qubits[i], r.hours / row.hours[i]);
            if !(0.5..=1.5).contains(&q) || !(0.5..=1.5).contains(&h) {
                return Err(format!("{:?} N={} p={p} ratios {q:.2}/{h:.2}", row.system, row.n));
            }
        }
    }
    Ok("8 rows within tolerance".into())
}
