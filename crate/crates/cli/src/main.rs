use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use qubitize_cli::config::{JobConfig, ModelKind, SynthTarget};
use qubitize_cli::run;

/// Synthesize qubitized walk circuits, verify them on small instances and
/// estimate fault-tolerant resources.
#[derive(Parser, Debug)]
#[command(name = "qubitize", version)]
struct Cli {
    /// synth, verify, budget, estimate or lambda-scan. May come from the config.
    command: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (default `out`).
    #[arg(long)]
    out: Option<String>,
    /// chem, hubbard or published.
    #[arg(long)]
    model: Option<String>,
    /// Grid points per axis (chem) or lattice side (hubbard).
    #[arg(long = "M")]
    m: Option<usize>,
    /// Spatial dimension for chem.
    #[arg(long = "D")]
    d: Option<usize>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    u: Option<f64>,
    #[arg(long)]
    rs: Option<f64>,
    #[arg(long = "dE")]
    de: Option<f64>,
    /// Physical error rates, comma separated.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    #[arg(long = "eps-synth")]
    eps_synth: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Circuit to synthesize.
    #[arg(long)]
    target: Option<String>,
    /// Index range for primitive targets.
    #[arg(long)]
    len: Option<usize>,
    /// Phase bits for chi and pea targets.
    #[arg(long)]
    bits: Option<u32>,
    #[arg(long)]
    controlled: bool,
    #[arg(long = "recompute-lambda")]
    recompute_lambda: bool,
    /// Grid sizes for lambda-scan, comma separated.
    #[arg(long = "scan-M", value_delimiter = ',')]
    scan_m: Option<Vec<usize>>,
}

impl Cli {
    fn overrides(&self) -> anyhow::Result<JobConfig> {
        let parse = |s: &Option<String>, what: &str| -> anyhow::Result<_> { Ok(s.clone().map(|v| (v, what.to_string()))) };
        let command = match parse(&self.command, "command")? {
            Some((v, _)) => Some(v.parse().map_err(anyhow::Error::msg)?),
            None => None,
        };
        let model: Option<ModelKind> = match &self.model {
            Some(v) => Some(v.parse().map_err(anyhow::Error::msg)?),
            None => None,
        };
        let target: Option<SynthTarget> = match &self.target {
            Some(v) => Some(v.parse().map_err(anyhow::Error::msg)?),
            None => None,
        };
        Ok(JobConfig {
            command,
            model,
            m: self.m,
            d: self.d,
            t: self.t,
            u: self.u,
            rs: self.rs,
            recompute_lambda: self.recompute_lambda.then_some(true),
            delta_e: self.de,
            eps_synth: self.eps_synth,
            p: self.p.clone(),
            pea_bits: self.bits,
            target,
            len: self.len,
            controlled: self.controlled.then_some(true),
            scan_m: self.scan_m.clone(),
            seed: self.seed,
            out: self.out.clone(),
            ..Default::default()
        })
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> anyhow::Result<bool> {
    let cli = Cli::parse();
    let base = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            JobConfig::parse(&text).with_context(|| format!("in {}", path.display()))?
        }
        None => JobConfig::default(),
    };
    let cfg = base.merge(cli.overrides()?);
    let outcome = run(&cfg)?;
    let dir = PathBuf::from(cfg.out.clone().unwrap_or_else(|| "out".into()));
    outcome.write(&dir).with_context(|| format!("writing to {}", dir.display()))?;
    print!("{}", outcome.summary);
    Ok(outcome.success)
}
