//! Command-line configuration, scenario execution and file formats.

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::diagnostics::{find_optimum, husimi_q, scaling_fit, HusimiGrid, RunRecord};
use crate::dicke::{make_css, DickeState, StateSnapshot};
use crate::error::{Result, SqueezeError};
use crate::propagator::{evolve_schedule, evolve_schedule_refined, ConvergenceReport, DEFAULT_STEPS_PER_PERIOD};
use crate::protocols::{
    build_modulated_drive, build_repeated_pulse, effective_optimal_time, pulse_timing, reference_schedule,
    run_monte_carlo, BuiltProtocol, DriveParams, FreezePolicy, NoiseModel, NoiseScope, ProtocolSchedule,
    PulseParams, ReferenceModel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Oat,
    Tact,
    Pulses,
    Drive,
    Husimi,
    Sweep,
    Noise,
}

/// Flags as given on the command line or in a config file; unset fields take
/// defaults. Config files are flat JSON objects keyed by the flag names.
#[derive(Clone, Debug, Default, PartialEq, Parser, Deserialize)]
#[command(name = "spinsqueeze", about = "Collective-spin squeezing simulator", version, allow_negative_numbers = true)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Overrides {
    /// Scenario to run
    #[arg(value_enum)]
    pub scenario: Option<Scenario>,
    /// JSON file with defaults for any flag; command-line flags take precedence
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Particle number N
    #[arg(long)]
    pub n: Option<usize>,
    /// Coupling χ/2π in Hz; adds physical times to the outputs
    #[arg(long)]
    pub chi_hz: Option<f64>,
    /// Pulse periods up to the analytic optimum
    #[arg(long)]
    pub nc: Option<usize>,
    /// Relative pulse-area noise amplitude η
    #[arg(long)]
    pub eta: Option<f64>,
    /// Monte Carlo realizations for the noise scenario
    #[arg(long)]
    pub realizations: Option<usize>,
    /// Noise draw scope: per-pulse or per-realization
    #[arg(long, value_parser = parse_scope)]
    pub noise_scope: Option<NoiseScope>,
    /// Drive angular frequency ω/χ
    #[arg(long)]
    pub omega_over_chi: Option<f64>,
    /// Drive amplitude Ω₀/ω
    #[arg(long)]
    pub omega0_over_omega: Option<f64>,
    /// Drive phase φ in radians
    #[arg(long)]
    pub phase: Option<f64>,
    /// Freeze the squeezing at the optimum
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub freeze: Option<bool>,
    /// Evolution time after the freeze, in units of χt
    #[arg(long)]
    pub hold: Option<f64>,
    /// Husimi grid as THETAxPHI, e.g. 128x256
    #[arg(long)]
    pub grid: Option<String>,
    /// Master seed for the noise draws
    #[arg(long)]
    pub seed: Option<u64>,
    /// Samples per reference run, or per drive period for the drive scenario
    #[arg(long)]
    pub samples: Option<usize>,
    /// Split-step slices per drive period
    #[arg(long)]
    pub steps_per_period: Option<usize>,
    /// Particle numbers for the sweep, comma separated
    #[arg(long, value_delimiter = ',')]
    pub n_list: Option<Vec<usize>>,
    /// Model used by the sweep
    #[arg(long, value_enum)]
    pub model: Option<ModelArg>,
    /// State snapshot (JSON) for the husimi scenario
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    Oat,
    Tact,
}

impl From<ModelArg> for ReferenceModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Oat => ReferenceModel::Oat,
            ModelArg::Tact => ReferenceModel::Tact,
        }
    }
}

fn parse_scope(s: &str) -> std::result::Result<NoiseScope, String> {
    match s {
        "per-pulse" => Ok(NoiseScope::PerPulse),
        "per-realization" => Ok(NoiseScope::PerRealization),
        other => Err(format!("unknown noise scope '{other}' (per-pulse or per-realization)")),
    }
}

/// Fully resolved scenario description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    #[serde(rename = "n")]
    pub n: usize,
    pub chi_hz: Option<f64>,
    pub nc: usize,
    pub eta: f64,
    pub realizations: usize,
    pub noise_scope: NoiseScope,
    pub omega_over_chi: f64,
    pub omega0_over_omega: f64,
    pub phase: f64,
    pub freeze: bool,
    /// `None` means ten analytic optimum times.
    pub hold: Option<f64>,
    pub grid: (usize, usize),
    pub seed: u64,
    pub samples: Option<usize>,
    pub steps_per_period: usize,
    pub n_list: Vec<usize>,
    pub model: ReferenceModel,
    pub state: Option<PathBuf>,
    pub out: PathBuf,
}

fn usage<T>(field: &str, msg: impl std::fmt::Display) -> Result<T> {
    Err(SqueezeError::Usage(format!("{field}: {msg}")))
}

fn parse_grid(s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(['x', 'X']).collect();
    match parts.as_slice() {
        [a, b] => match (a.trim().parse(), b.trim().parse()) {
            (Ok(t), Ok(p)) => Ok((t, p)),
            _ => usage("grid", format!("expected THETAxPHI, got '{s}'")),
        },
        _ => usage("grid", format!("expected THETAxPHI, got '{s}'")),
    }
}

fn read_overrides(path: &Path) -> Result<Overrides> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| SqueezeError::Usage(format!("config {}: {e}", path.display())))
}

/// Merges a config file (if named) under the command-line flags and fills
/// defaults. Invalid or conflicting values are usage errors naming the field.
pub fn resolve_config(cli: Overrides) -> Result<ScenarioConfig> {
    let file = match &cli.config {
        Some(p) => read_overrides(p)?,
        None => Overrides::default(),
    };
    macro_rules! pick {
        ($f:ident) => {
            cli.$f.clone().or(file.$f.clone())
        };
    }
    let Some(scenario) = pick!(scenario) else {
        return usage("scenario", "missing (oat, tact, pulses, drive, husimi, sweep or noise)");
    };
    let grid = match pick!(grid) {
        Some(g) => parse_grid(&g)?,
        None => (128, 256),
    };
    let cfg = ScenarioConfig {
        scenario,
        n: pick!(n).unwrap_or(1250),
        chi_hz: pick!(chi_hz),
        nc: pick!(nc).unwrap_or(50),
        eta: pick!(eta).unwrap_or(0.001),
        realizations: pick!(realizations).unwrap_or(100),
        noise_scope: pick!(noise_scope).unwrap_or(NoiseScope::PerPulse),
        omega_over_chi: pick!(omega_over_chi).unwrap_or(2.0 * PI * 2e4),
        omega0_over_omega: pick!(omega0_over_omega).unwrap_or(0.9057),
        phase: pick!(phase).unwrap_or(-FRAC_PI_2),
        freeze: pick!(freeze).unwrap_or(false),
        hold: pick!(hold),
        grid,
        seed: pick!(seed).unwrap_or(42),
        samples: pick!(samples),
        steps_per_period: pick!(steps_per_period).unwrap_or(DEFAULT_STEPS_PER_PERIOD),
        n_list: pick!(n_list).unwrap_or_else(|| vec![100, 200, 400, 800, 1600]),
        model: pick!(model).map(ReferenceModel::from).unwrap_or(ReferenceModel::Oat),
        state: pick!(state),
        out: pick!(out).unwrap_or_else(|| PathBuf::from("out")),
    };
    validate(&cfg, &cli, &file)?;
    Ok(cfg)
}

fn validate(cfg: &ScenarioConfig, cli: &Overrides, file: &Overrides) -> Result<()> {
    let squeezing = cfg.scenario != Scenario::Husimi;
    if squeezing && cfg.n < 2 {
        return usage("n", format!("must be at least 2, got {}", cfg.n));
    }
    if cfg.n == 0 {
        return usage("n", "must be positive");
    }
    if cfg.nc == 0 {
        return usage("nc", "must be at least 1");
    }
    if !(cfg.eta >= 0.0 && cfg.eta.is_finite()) {
        return usage("eta", format!("must be non-negative, got {}", cfg.eta));
    }
    if cfg.realizations == 0 {
        return usage("realizations", "must be at least 1");
    }
    if !(cfg.omega_over_chi > 0.0 && cfg.omega_over_chi.is_finite()) {
        return usage("omega-over-chi", format!("must be positive, got {}", cfg.omega_over_chi));
    }
    if !(cfg.omega0_over_omega >= 0.0 && cfg.omega0_over_omega.is_finite()) {
        return usage("omega0-over-omega", format!("must be non-negative, got {}", cfg.omega0_over_omega));
    }
    if !cfg.phase.is_finite() {
        return usage("phase", "must be finite");
    }
    if let Some(c) = cfg.chi_hz {
        if !(c > 0.0 && c.is_finite()) {
            return usage("chi-hz", format!("must be positive, got {c}"));
        }
    }
    if let Some(h) = cfg.hold {
        if !(h >= 0.0 && h.is_finite()) {
            return usage("hold", format!("must be non-negative, got {h}"));
        }
    }
    if cfg.grid.0 < 16 || cfg.grid.1 < 32 {
        return usage("grid", format!("{}x{} is below the 16x32 minimum", cfg.grid.0, cfg.grid.1));
    }
    if cfg.steps_per_period < 16 {
        return usage("steps-per-period", "must be at least 16");
    }
    if cfg.samples == Some(0) || (cfg.samples == Some(1) && cfg.scenario != Scenario::Drive) {
        return usage("samples", "too few samples");
    }
    if cfg.freeze && !matches!(cfg.scenario, Scenario::Pulses | Scenario::Drive | Scenario::Noise) {
        return usage("freeze", "only applies to the pulses, drive and noise scenarios");
    }
    let given = |f: fn(&Overrides) -> bool| f(cli) || f(file);
    if cfg.scenario != Scenario::Sweep && given(|o| o.n_list.is_some()) {
        return usage("n-list", "only applies to the sweep scenario");
    }
    if cfg.scenario != Scenario::Husimi && given(|o| o.state.is_some()) {
        return usage("state", "only applies to the husimi scenario");
    }
    if cfg.scenario == Scenario::Sweep {
        let mut distinct = cfg.n_list.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() < 3 || distinct[0] < 2 {
            return usage("n-list", "needs at least three distinct values, each at least 2");
        }
    }
    Ok(())
}

/// Parses `argv` (including the program name) into a resolved config.
pub fn parse_config<I, S>(argv: I) -> Result<ScenarioConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Overrides::try_parse_from(argv).map_err(|e| SqueezeError::Usage(e.to_string()))?;
    resolve_config(cli)
}

/// Files written by a scenario and a one-line summary.
#[derive(Clone, Debug)]
pub struct ScenarioOutcome {
    pub files: Vec<PathBuf>,
    pub summary: String,
    pub warnings: Vec<String>,
}

fn fmt(x: f64) -> String {
    format!("{x}")
}

/// Run CSV: `chi_t,xi2,xi2_db,jx,jy,jz,theta_min` plus `t_seconds` when a
/// physical coupling `χ = 2π chi_hz` is given.
pub fn run_csv(record: &RunRecord, chi_hz: Option<f64>) -> String {
    let mut out = String::from("chi_t,xi2,xi2_db,jx,jy,jz,theta_min");
    if chi_hz.is_some() {
        out.push_str(",t_seconds");
    }
    out.push('\n');
    for s in &record.samples {
        let r = &s.report;
        let _ = write!(
            out,
            "{},{},{},{},{},{},{}",
            fmt(s.chi_t),
            fmt(r.xi2),
            fmt(r.xi2_db()),
            fmt(r.mean_spin[0]),
            fmt(r.mean_spin[1]),
            fmt(r.mean_spin[2]),
            fmt(r.theta_min)
        );
        if let Some(hz) = chi_hz {
            let _ = write!(out, ",{}", fmt(s.chi_t / (2.0 * PI * hz)));
        }
        out.push('\n');
    }
    out
}

/// Husimi CSV: `theta,phi,q`, θ in the outer loop.
pub fn husimi_csv(grid: &HusimiGrid) -> String {
    let mut out = String::from("theta,phi,q\n");
    for (i, th) in grid.thetas.iter().enumerate() {
        for (k, ph) in grid.phis.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", fmt(*th), fmt(*ph), fmt(grid.get(i, k)));
        }
    }
    out
}

pub fn write_snapshot(path: &Path, state: &DickeState) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(&state.to_snapshot())?)?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<DickeState> {
    let snap: StateSnapshot = serde_json::from_str(&fs::read_to_string(path)?)?;
    DickeState::from_snapshot(&snap)
}

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

struct Emitter {
    dir: PathBuf,
    files: Vec<(String, String)>,
}

impl Emitter {
    fn write(&mut self, name: &str, contents: &[u8]) -> Result<()> {
        fs::write(self.dir.join(name), contents)?;
        self.files.push((name.to_string(), sha256_hex(contents)));
        Ok(())
    }
}

/// Runs a schedule at base and doubled resolution.
fn run_checked(schedule: &ProtocolSchedule, initial: &DickeState) -> Result<(DickeState, RunRecord, ConvergenceReport)> {
    let (s1, r1) = evolve_schedule(initial, schedule)?;
    let (s2, r2) = evolve_schedule_refined(initial, schedule, 2)?;
    let conv = ConvergenceReport::compare((&s1, &r1), (&s2, &r2))?;
    Ok((s1, r1, conv))
}

fn freeze_state(schedule: &ProtocolSchedule, initial: &DickeState, trigger: f64) -> Result<DickeState> {
    // everything up to and including the freeze rotations
    let mut prefix = schedule.clone();
    let cut = prefix
        .segments
        .iter()
        .rposition(|s| matches!(s, crate::protocols::Segment::Pulse { .. }))
        .expect("a frozen schedule ends its pulses before the hold");
    prefix.segments.truncate(cut + 1);
    prefix.sample_times.retain(|t| *t <= trigger);
    Ok(evolve_schedule(initial, &prefix)?.0)
}

fn units_report(cfg: &ScenarioConfig) -> Value {
    let Some(hz) = cfg.chi_hz else { return Value::Null };
    let chi = 2.0 * PI * hz;
    let t_opt = effective_optimal_time(cfg.n);
    let (dt, tc, _) = pulse_timing(cfg.n, 1.0, cfg.nc);
    let omega_hz = cfg.omega_over_chi * chi / (2.0 * PI);
    json!({
        "chi_rad_per_s": chi,
        "effective_t_opt_s": t_opt / chi,
        "oat_t_opt_s": crate::protocols::oat_optimal_time(cfg.n) / chi,
        "pulse_delta_t_s": dt / chi,
        "pulse_period_s": tc / chi,
        "pulse_total_s": cfg.nc as f64 * tc / chi,
        "drive_frequency_hz": omega_hz,
        "drive_amplitude_hz": cfg.omega0_over_omega * omega_hz,
    })
}

/// Executes a scenario and writes its artifacts into `cfg.out`.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioOutcome> {
    fs::create_dir_all(&cfg.out)?;
    let mut em = Emitter { dir: cfg.out.clone(), files: Vec::new() };
    let mut warnings = Vec::new();
    let mut events = Value::Null;
    let hold = cfg.hold.unwrap_or(10.0 * effective_optimal_time(cfg.n));
    let ref_samples = cfg.samples.unwrap_or(300);

    let (summary, convergence, extra): (String, Value, Value) = match cfg.scenario {
        Scenario::Oat | Scenario::Tact => {
            let model = if cfg.scenario == Scenario::Oat { ReferenceModel::Oat } else { ReferenceModel::Tact };
            let (schedule, initial) = reference_schedule(cfg.n, 1.0, model, ref_samples)?;
            let (_, rec, conv) = run_checked(&schedule, &initial)?;
            em.write("run.csv", run_csv(&rec, cfg.chi_hz).as_bytes())?;
            let opt = find_optimum(&rec, (0.0, f64::INFINITY))?;
            (
                format!("min xi2 = {:.6e} at chi t = {:.6e}", opt.xi2, opt.chi_t),
                serde_json::to_value(conv)?,
                json!({ "optimum": opt, "analytic_chi_t_opt": model.optimal_time(cfg.n) }),
            )
        }
        Scenario::Pulses | Scenario::Drive => {
            let built = build_protocol(cfg, hold)?;
            warnings.extend(built.warnings.iter().cloned());
            let (_, rec, conv) = run_checked(&built.schedule, &built.initial)?;
            em.write("run.csv", run_csv(&rec, cfg.chi_hz).as_bytes())?;
            write_references(&mut em, cfg, ref_samples)?;
            if let Some(t) = built.trigger {
                let frozen = freeze_state(&built.schedule, &built.initial, t)?;
                em.write("freeze_state.json", serde_json::to_string_pretty(&frozen.to_snapshot())?.as_bytes())?;
            }
            events = serde_json::to_value(&rec.events)?;
            let (t, x) = rec.min_sample().unwrap_or((0.0, f64::NAN));
            (
                format!("min sampled xi2 = {x:.6e} at chi t = {t:.6e}"),
                serde_json::to_value(conv)?,
                json!({ "freeze_chi_t": built.trigger, "analytic_chi_t_opt": built.t_opt }),
            )
        }
        Scenario::Noise => {
            let built = build_protocol(cfg, hold)?;
            warnings.extend(built.warnings.iter().cloned());
            let (_, clean, conv) = run_checked(&built.schedule, &built.initial)?;
            em.write("run.csv", run_csv(&clean, cfg.chi_hz).as_bytes())?;
            let noise = NoiseModel::new(cfg.eta, cfg.seed, cfg.noise_scope)?;
            let ens = run_monte_carlo(&built.schedule, &built.initial, &noise, cfg.realizations)?;
            let mut mean = String::from("chi_t,mean_xi2,mean_xi2_db\n");
            for (t, x) in &ens.mean_xi2 {
                let _ = writeln!(mean, "{},{},{}", fmt(*t), fmt(*x), fmt(10.0 * x.log10()));
            }
            em.write("mean.csv", mean.as_bytes())?;
            let mut all = String::from("realization,chi_t,xi2\n");
            for (i, r) in ens.runs.iter().enumerate() {
                for s in &r.samples {
                    let _ = writeln!(all, "{i},{},{}", fmt(s.chi_t), fmt(s.report.xi2));
                }
            }
            em.write("ensemble.csv", all.as_bytes())?;
            write_references(&mut em, cfg, ref_samples)?;
            let best = ens.mean_xi2.iter().cloned().fold((0.0, f64::INFINITY), |a, p| if p.1 < a.1 { p } else { a });
            (
                format!("min mean xi2 = {:.6e} at chi t = {:.6e} over {} realizations", best.1, best.0, cfg.realizations),
                serde_json::to_value(conv)?,
                json!({ "freeze_chi_t": built.trigger }),
            )
        }
        Scenario::Sweep => {
            let mut rows = String::from("N,chi_t_opt,xi2_min\n");
            let mut points = Vec::new();
            let mut convs = Vec::new();
            for &n in &cfg.n_list {
                let (schedule, initial) = reference_schedule(n, 1.0, cfg.model, ref_samples)?;
                let (_, rec, conv) = run_checked(&schedule, &initial)?;
                let opt = find_optimum(&rec, (0.0, f64::INFINITY))?;
                let _ = writeln!(rows, "{n},{},{}", fmt(opt.chi_t), fmt(opt.xi2));
                points.push((n as f64, opt.xi2));
                convs.push(json!({ "N": n, "report": conv }));
            }
            em.write("sweep.csv", rows.as_bytes())?;
            let fit = scaling_fit(&points)?;
            (
                format!("exponent = {:.4}, prefactor = {:.4}", fit.exponent, fit.prefactor),
                Value::Array(convs),
                json!({ "fit": fit }),
            )
        }
        Scenario::Husimi => {
            let state = match &cfg.state {
                Some(p) => read_snapshot(p)?,
                None => make_css(cfg.n, FRAC_PI_2, 0.0)?,
            };
            let grid = husimi_q(&state, cfg.grid.0, cfg.grid.1)?;
            em.write("husimi.csv", husimi_csv(&grid).as_bytes())?;
            (
                format!("{} grid points, normalization {:.6}", grid.values.len(), grid.normalization()),
                json!({ "terminal_infidelity": 0.0, "max_relative_xi2_change": 0.0, "note": "no time evolution" }),
                json!({ "normalization": grid.normalization(), "N": state.n() }),
            )
        }
    };

    let config = serde_json::to_value(cfg)?;
    let mut hashed = config.clone();
    if let Some(obj) = hashed.as_object_mut() {
        obj.remove("out");
    }
    let mut hasher = Sha256::new();
    hasher.update(serde_json::to_vec(&hashed)?);
    for (name, digest) in &em.files {
        hasher.update(name.as_bytes());
        hasher.update(digest.as_bytes());
    }
    let content_digest: String = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
    let outputs: Vec<Value> = em.files.iter().map(|(f, d)| json!({ "file": f, "sha256": d })).collect();
    let manifest = json!({
        "config": config,
        "content_digest": content_digest,
        "outputs": outputs,
        "convergence": convergence,
        "units": units_report(cfg),
        "warnings": warnings,
        "events": events,
        "summary": summary,
        "results": extra,
    });
    let text = serde_json::to_string_pretty(&manifest)?;
    fs::write(cfg.out.join("manifest.json"), &text)?;
    let mut files: Vec<PathBuf> = em.files.iter().map(|(f, _)| cfg.out.join(f)).collect();
    files.push(cfg.out.join("manifest.json"));
    Ok(ScenarioOutcome { files, summary, warnings })
}

fn build_protocol(cfg: &ScenarioConfig, hold: f64) -> Result<BuiltProtocol> {
    match cfg.scenario {
        Scenario::Drive => {
            let freeze = cfg.freeze.then(|| FreezePolicy::drive(cfg.omega0_over_omega, hold));
            let params = DriveParams {
                steps_per_period: cfg.steps_per_period,
                samples_per_period: cfg.samples.unwrap_or(4),
                freeze,
                ..DriveParams::new(cfg.n, 1.0, cfg.omega_over_chi, cfg.omega0_over_omega, cfg.phase)
            };
            build_modulated_drive(&params)
        }
        _ => {
            let freeze = cfg.freeze.then(|| FreezePolicy::pulses(hold));
            build_repeated_pulse(&PulseParams { freeze, ..PulseParams::new(cfg.n, 1.0, cfg.nc) })
        }
    }
}

fn write_references(em: &mut Emitter, cfg: &ScenarioConfig, samples: usize) -> Result<()> {
    for (model, name) in [(ReferenceModel::Oat, "reference_oat.csv"), (ReferenceModel::Tact, "reference_tact.csv")] {
        let (schedule, initial) = reference_schedule(cfg.n, 1.0, model, samples)?;
        let (_, rec) = evolve_schedule(&initial, &schedule)?;
        em.write(name, run_csv(&rec, cfg.chi_hz).as_bytes())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pulse_flags_echo_defaults() {
        let c = parse_config(["spinsqueeze", "pulses", "--n", "1250", "--nc", "50", "--freeze"]).unwrap();
        assert_eq!(c.scenario, Scenario::Pulses);
        assert_eq!((c.n, c.nc, c.freeze, c.seed), (1250, 50, true, 42));
        assert_eq!((c.eta, c.realizations, c.omega0_over_omega), (0.001, 100, 0.9057));
        assert_eq!(c.phase, -FRAC_PI_2);
    }

    #[test]
    fn drive_defaults_n() {
        let c = parse_config(["spinsqueeze", "drive", "--omega-over-chi", "6.2832e4"]).unwrap();
        assert_eq!(c.n, 1250);
        assert_eq!(c.omega_over_chi, 6.2832e4);
        let c = parse_config(["spinsqueeze", "drive", "--phase", "-0.5"]).unwrap();
        assert_eq!(c.phase, -0.5);
    }

    #[test]
    fn sweep_list() {
        let c = parse_config(["spinsqueeze", "sweep", "--n-list", "100,200,400,800,1600", "--model", "oat"]).unwrap();
        assert_eq!(c.n_list, vec![100, 200, 400, 800, 1600]);
        assert_eq!(c.model, ReferenceModel::Oat);
        let e = parse_config(["spinsqueeze", "sweep", "--n-list", "100,100,200"]).unwrap_err();
        assert!(e.to_string().contains("n-list"));
    }

    #[test]
    fn errors_name_the_field() {
        for (args, field) in [
            (vec!["spinsqueeze", "oat", "--n", "1"], "n"),
            (vec!["spinsqueeze", "noise", "--eta", "-1"], "eta"),
            (vec!["spinsqueeze", "oat", "--freeze"], "freeze"),
            (vec!["spinsqueeze", "husimi", "--grid", "8x8"], "grid"),
            (vec!["spinsqueeze", "pulses", "--n-list", "1,2,3"], "n-list"),
            (vec!["spinsqueeze", "husimi", "--grid", "abc"], "grid"),
        ] {
            let e = parse_config(args.clone()).unwrap_err();
            assert!(matches!(e, SqueezeError::Usage(_)));
            assert!(e.to_string().contains(field), "{args:?}: {e}");
        }
        assert!(parse_config(["spinsqueeze"]).is_err());
        assert!(parse_config(["spinsqueeze", "oat", "--bogus", "1"]).is_err());
    }
}
