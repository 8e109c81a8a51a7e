//! The `ensvol` command line: JSON documents in, JSON run reports out.
//!
//! Exit codes: 0 success, 1 an inequality or property check failed,
//! 2 invalid input, 3 numerical failure.

pub mod document;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde::Serialize;
use serde_json::json;

pub use report::RunReport;

use crate::axioms::{check_invariance, fuzz, AxiomId, DimRange, FuzzConfig};
use crate::ensembles::{mix, Ensemble, Kind};
use crate::error::{Error, Result};
use crate::information::{
    block_volume_bounds, finite_block_rate, holevo_chi, information_rate_bound, lanford_robinson,
    single_measurement_bound, typical_count, typical_volume, BlockCode,
};
use crate::numerics::Rng;
use crate::semiclassical::{
    apply_symplectic, correspondence_sweep, entropic_uncertainty_check, heisenberg_from_entropy,
    marginal_volume_check, ou_evolve, position_momentum_entropies, random_symplectic, volume_trajectory,
    GridWavefunction,
};
use crate::volume::{
    entropy, ln_volume, renyi_entropy, thermodynamic_entropy, volume_labeled, Unit, VolumeContext,
};
use document::{read_json, EnsembleDocument, ProcessDocument, TransformDocument};

#[derive(Debug, Parser)]
#[command(name = "ensvol", version, about = "Ensemble volumes, information bounds and property checks")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "ENSVOL_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Volume constant for an elementary space, e.g. `quantum:2=1.5`. Repeatable.
    #[arg(long = "k", global = true, value_name = "LABEL=VALUE", value_parser = parse_k)]
    pub k: Vec<(String, f64)>,

    /// Reduced Planck constant.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub hbar: f64,

    /// Refuse spaces without an explicit `--k`.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Emit single-line JSON.
    #[arg(long, global = true)]
    pub compact: bool,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shannon, von Neumann, Gaussian or Rényi entropy of an ensemble document.
    Entropy {
        input: PathBuf,
        #[arg(long)]
        bits: bool,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Volume K·e^S, optionally Rényi, thermodynamic, or checked under a transform.
    Volume {
        input: PathBuf,
        #[arg(long)]
        alpha: Option<f64>,
        /// Boltzmann constant for the thermodynamic reading.
        #[arg(long)]
        boltzmann: Option<f64>,
        /// Transform document to check invariance against.
        #[arg(long)]
        transform: Option<PathBuf>,
    },
    /// Holevo χ and its bounds for a signal document.
    Chi {
        input: PathBuf,
    },
    /// Block-coding volume chain, typical-set sizes and the single-measurement bound.
    Bounds {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        length: usize,
        #[arg(long, value_enum, default_value_t = CodeKind::Independent)]
        code: CodeKind,
        /// Number of random codes (with `--code random`).
        #[arg(long, default_value_t = 1)]
        codes: usize,
        /// Resolution volume for the single-measurement bound.
        #[arg(long)]
        v0: Option<f64>,
    },
    /// Gaussian entropy, marginal bound, symplectic invariance and diffusion.
    Gaussian {
        input: PathBuf,
        /// Process document with `diffusion` and optional `drift`.
        #[arg(long)]
        process: Option<PathBuf>,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Transform document holding a symplectic matrix.
        #[arg(long, conflicts_with = "random_symplectic")]
        symplectic: Option<PathBuf>,
        /// Apply a seeded random symplectic map.
        #[arg(long)]
        random_symplectic: bool,
    },
    /// Position/momentum entropies of a grid wavepacket.
    Uncertainty {
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Use two packets this far apart instead of one.
        #[arg(long)]
        separation: Option<f64>,
    },
    /// e^{S_C}/e^{S_Q} of a thermal oscillator at each kT/ħω.
    Correspondence {
        #[arg(long = "ratio-at", value_name = "KT_OVER_HBAR_OMEGA")]
        ratio_at: Vec<f64>,
    },
    /// Seeded property checks over random ensembles.
    Fuzz {
        #[arg(long, default_value = "i", value_parser = parse_axiom)]
        axiom: AxiomId,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Factor dimensions, `N` or `MIN-MAX` [default: 2-4, or 2 for renyi].
        #[arg(long, value_parser = parse_dims)]
        dims: Option<DimRange>,
        /// [default: quantum, or classical for renyi]
        #[arg(long, value_enum)]
        kind: Option<FuzzKind>,
        /// Rényi order for `--axiom renyi`.
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CodeKind {
    Independent,
    TypeClass,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FuzzKind {
    Quantum,
    Classical,
}

fn parse_k(s: &str) -> std::result::Result<(String, f64), String> {
    let (label, value) = s.split_once('=').ok_or_else(|| format!("expected LABEL=VALUE, got `{s}`"))?;
    let v: f64 = value.parse().map_err(|_| format!("`{value}` is not a number"))?;
    Ok((label.to_string(), v))
}

fn parse_axiom(s: &str) -> std::result::Result<AxiomId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_dims(s: &str) -> std::result::Result<DimRange, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Cli {
    pub fn context(&self) -> Result<VolumeContext> {
        let mut ctx = if self.strict { VolumeContext::strict() } else { VolumeContext::new() };
        ctx = ctx.with_hbar(self.hbar)?;
        for (label, k) in &self.k {
            ctx = ctx.with_k(label.clone(), *k)?;
        }
        Ok(ctx)
    }
}

/// Runs one parsed invocation.
pub fn execute(cli: &Cli, command_echo: Vec<String>) -> Result<RunReport> {
    let ctx = cli.context()?;
    let mut report = RunReport::new(command_echo, cli.seed);
    match &cli.command {
        Command::Entropy { input, bits, alpha } => cmd_entropy(&mut report, input, *bits, *alpha)?,
        Command::Volume { input, alpha, boltzmann, transform } => {
            cmd_volume(&mut report, &ctx, input, *alpha, *boltzmann, transform.as_deref())?
        }
        Command::Chi { input } => cmd_chi(&mut report, input)?,
        Command::Bounds { input, length, code, codes, v0 } => {
            cmd_bounds(&mut report, &ctx, cli.seed, input, *length, *code, *codes, *v0)?
        }
        Command::Gaussian { input, process, dt, steps, symplectic, random_symplectic } => cmd_gaussian(
            &mut report,
            &ctx,
            cli.seed,
            input,
            process.as_deref(),
            *dt,
            *steps,
            symplectic.as_deref(),
            *random_symplectic,
        )?,
        Command::Uncertainty { n, sigma, separation } => cmd_uncertainty(&mut report, &ctx, *n, *sigma, *separation)?,
        Command::Correspondence { ratio_at } => cmd_correspondence(&mut report, &ctx, ratio_at)?,
        Command::Fuzz { axiom, trials, dims, kind, alpha } => {
            let renyi = *axiom == AxiomId::RenyiProjection;
            let kind = match kind.unwrap_or(if renyi { FuzzKind::Classical } else { FuzzKind::Quantum }) {
                FuzzKind::Quantum => Kind::Quantum,
                FuzzKind::Classical => Kind::Classical,
            };
            let dims = dims.unwrap_or(if renyi { DimRange::new(2, 2)? } else { DimRange::new(2, 4)? });
            let cfg = FuzzConfig { trials: *trials, seed: cli.seed, dims, kind, alpha: *alpha };
            let r = fuzz(*axiom, &cfg, &ctx)?;
            let key = match axiom {
                AxiomId::RenyiProjection => "violation_found",
                _ => "axiom_holds",
            };
            report.check(key, r.passed);
            report.result("report", &r);
        }
    }
    Ok(report)
}

fn load_ensemble(path: &Path) -> Result<(Ensemble, Option<Vec<String>>)> {
    EnsembleDocument::read(path)?.load()?.into_ensemble()
}

fn ensemble_summary(report: &mut RunReport, e: &Ensemble) {
    report.result("kind", e.kind().to_string());
    report.result("factor_sizes", e.factor_sizes());
}

fn cmd_entropy(report: &mut RunReport, input: &Path, bits: bool, alpha: Option<f64>) -> Result<()> {
    let (e, _) = load_ensemble(input)?;
    let unit = if bits { Unit::Bits } else { Unit::Nats };
    let s = match alpha {
        Some(a) if a != 1.0 => renyi_entropy(&e, a)?,
        _ => entropy(&e)?,
    };
    ensemble_summary(report, &e);
    report.result("entropy", s.in_unit(unit)).result("unit", unit);
    if let Some(a) = alpha {
        report.result("alpha", a);
    }
    Ok(())
}

fn cmd_volume(
    report: &mut RunReport,
    ctx: &VolumeContext,
    input: &Path,
    alpha: Option<f64>,
    boltzmann: Option<f64>,
    transform: Option<&Path>,
) -> Result<()> {
    let (e, labels) = load_ensemble(input)?;
    ensemble_summary(report, &e);
    let labels = labels.unwrap_or_else(|| e.space_labels());
    let k = ctx.k_for_labels(&labels)?;
    let v = match alpha {
        Some(a) if a != 1.0 => k * renyi_entropy(&e, a)?.nats.exp(),
        _ => volume_labeled(&e, &labels, ctx)?,
    };
    report.result("labels", &labels).result("k", k).result("volume", v).result("ln_volume", v.ln());
    if let Some(a) = alpha {
        report.result("alpha", a);
    }
    if let Some(kb) = boltzmann {
        report.result("thermodynamic", thermodynamic_entropy(&e, ctx, kb)?);
    }
    if let Some(path) = transform {
        let t = read_json::<TransformDocument>(path)?.to_transform()?;
        let r = check_invariance(&e, &t, ctx)?;
        report.check("invariance", r.passed);
        report.result("invariance", &r);
    }
    Ok(())
}

fn cmd_chi(report: &mut RunReport, input: &Path) -> Result<()> {
    let s = EnsembleDocument::read(input)?.load()?.into_signal()?;
    let chi = holevo_chi(&s)?;
    let lr = lanford_robinson(&s)?;
    let rate = information_rate_bound(&s)?;
    report
        .result("signals", s.len())
        .result("chi_nats", chi.nats)
        .result("chi_bits", chi.bits())
        .result("lanford_robinson", &lr)
        .result("information_rate", &rate);
    report.check("lanford_robinson", lr.passed).check("information_rate", rate.passed);
    Ok(())
}

#[derive(Serialize)]
struct CodeRecord {
    seed: Option<u64>,
    blocks: usize,
    bounds: crate::information::BlockBounds,
    rate_bits: f64,
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    report: &mut RunReport,
    ctx: &VolumeContext,
    seed: u64,
    input: &Path,
    length: usize,
    code: CodeKind,
    codes: usize,
    v0: Option<f64>,
) -> Result<()> {
    let s = EnsembleDocument::read(input)?.load()?.into_signal()?;
    let tv = typical_volume(&s, length, ctx)?;
    let tc = typical_count(s.priors(), length)?;
    report.result("length", length).result("ln_typical_volume", tv.ln).result("ln_typical_count", tc.ln);

    let mut records = Vec::new();
    let mut master = Rng::new(seed);
    let count = if code == CodeKind::Random { codes } else { 1 };
    for _ in 0..count {
        let (c, code_seed) = match code {
            CodeKind::Independent => (BlockCode::independent(s.clone(), length)?, None),
            CodeKind::TypeClass => (BlockCode::type_class(s.clone(), length)?, None),
            CodeKind::Random => {
                let mut rng = master.fork();
                let code_seed = rng.seed();
                (BlockCode::random_constrained(s.clone(), length, &mut rng)?, Some(code_seed))
            }
        };
        let bounds = block_volume_bounds(&c, ctx)?;
        let rate_bits = finite_block_rate(&c, ctx)?;
        records.push(CodeRecord { seed: code_seed, blocks: c.blocks().len(), bounds, rate_bits });
    }
    let all_pass = records.iter().all(|r| r.bounds.passed);
    let worst = |f: fn(&CodeRecord) -> f64| records.iter().map(f).fold(f64::INFINITY, f64::min);
    report
        .result("min_projection_slack", worst(|r| r.bounds.projection.slack))
        .result("min_slot_chain_slack", worst(|r| r.bounds.slot_chain.slack))
        .result("codes", &records);
    report.check("block_chain", all_pass);

    if let Some(v0) = v0 {
        let b = single_measurement_bound(&mix(&s)?, v0, ctx)?;
        report.check("single_measurement", b.passed);
        report.result("single_measurement", &b);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_gaussian(
    report: &mut RunReport,
    ctx: &VolumeContext,
    seed: u64,
    input: &Path,
    process: Option<&Path>,
    dt: f64,
    steps: usize,
    symplectic: Option<&Path>,
    random: bool,
) -> Result<()> {
    let (e, _) = load_ensemble(input)?;
    let g = e
        .as_gaussian()
        .ok_or_else(|| Error::validation("document-kind", format!("expected a gaussian ensemble, found {}", e.kind())))?
        .clone();
    ensemble_summary(report, &e);
    let ln_v = ln_volume(&e, ctx)?;
    let hadamard = marginal_volume_check(&g);
    report.result("entropy", entropy(&e)?.nats).result("volume", ln_v.exp());
    report.check("marginal_volume", hadamard.passed);
    report.result("marginal_volume", &hadamard);

    let map: Option<DMatrix<f64>> = match (symplectic, random) {
        (Some(path), _) => match read_json::<TransformDocument>(path)?.to_transform()? {
            crate::ensembles::Transform::Symplectic(m) => Some(m),
            _ => return Err(Error::validation("transform-kind", "expected a symplectic transform document")),
        },
        (None, true) => Some(random_symplectic(g.dof(), &mut Rng::new(seed))),
        (None, false) => None,
    };
    if let Some(m) = map {
        let h = apply_symplectic(&g, &m)?;
        let after = ln_volume(&h.into(), ctx)?.exp();
        let drift = (after - ln_v.exp()).abs();
        report.check("symplectic_invariance", drift <= crate::axioms::AXIOM_TOL * ln_v.exp());
        report.result("symplectic", json!({ "volume_after": after, "volume_drift": drift }));
    }

    if let Some(path) = process {
        let p = read_json::<ProcessDocument>(path)?.to_process()?;
        let traj = ou_evolve(&g, &p, dt, steps)?;
        let series = volume_trajectory(&traj, ctx)?;
        let first = series[0].volume;
        let last = series.last().expect("initial point").volume;
        report.result("volume_ratio", last / first).result("trajectory", &series);
    }
    Ok(())
}

fn cmd_uncertainty(
    report: &mut RunReport,
    ctx: &VolumeContext,
    n: usize,
    sigma: f64,
    separation: Option<f64>,
) -> Result<()> {
    let hbar = ctx.hbar();
    let w = match separation {
        Some(d) => GridWavefunction::two_peaks(n, sigma, d, hbar)?,
        None => GridWavefunction::gaussian(n, sigma, hbar)?,
    };
    let (sx, sp) = position_momentum_entropies(&w)?;
    let entropic = entropic_uncertainty_check(&w)?;
    let heisenberg = heisenberg_from_entropy(&w)?;
    report
        .result("grid_points", n)
        .result("spacing", w.spacing())
        .result("position_entropy", sx.nats)
        .result("momentum_entropy", sp.nats)
        .result("entropy_sum", sx.nats + sp.nats)
        .result("entropic", &entropic)
        .result("heisenberg", &heisenberg);
    report.check("entropic", entropic.passed).check("heisenberg", heisenberg.passed);
    Ok(())
}

fn cmd_correspondence(report: &mut RunReport, ctx: &VolumeContext, ratios: &[f64]) -> Result<()> {
    let ratios = if ratios.is_empty() { vec![10.0, 100.0, 1e3, 1e4] } else { ratios.to_vec() };
    let h = ctx.planck();
    let sweep = correspondence_sweep(&ratios, ctx.hbar())?;
    let series: Vec<_> = sweep
        .iter()
        .map(|&(r, v)| json!({ "kt_over_hbar_omega": r, "ratio": v, "relative_deviation": v / h - 1.0 }))
        .collect();
    let mut by_temp = sweep.clone();
    by_temp.sort_by(|a, b| a.0.total_cmp(&b.0));
    let monotone = by_temp.windows(2).all(|w| w[1].1 >= w[0].1);
    report.result("planck", h).result("sweep", series);
    report.check("monotone", monotone);
    Ok(())
}

/// Parses `args` (program name first), runs the command, writes the report,
/// and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, echo) {
        Ok(report) => {
            let mut text = report.to_json(!cli.compact);
            text.push('\n');
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text),
                None => stdout.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write report: {e}");
                return 2;
            }
            if report.passed {
                0
            } else {
                let failed: Vec<_> = report.checks.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k.as_str()).collect();
                let _ = writeln!(stderr, "check failed: {}", failed.join(", "));
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
