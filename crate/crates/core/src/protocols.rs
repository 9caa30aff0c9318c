//! Executable protocols: repeated pulses, the modulated drive, freezing,
//! pulse-area noise and the plain OAT/TACT reference runs.
//!
//! Times are in the same units as `1/χ`; records report `χt`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::diagnostics::{m_distribution, squeezing_report, RunRecord};
use crate::dicke::{make_css, make_dicke_state, rotate, Axis, DickeState, RotationSpec};
use crate::error::{domain, Result};
use crate::hamiltonians::{DriveEnvelope, HamiltonianSpec};
use crate::propagator::{evolve_driven, evolve_schedule, DEFAULT_STEPS_PER_PERIOD};

/// `χt` of the OAT optimum, `6^{1/6} N^{-2/3}`.
pub fn oat_optimal_time(n: usize) -> f64 {
    6f64.powf(1.0 / 6.0) * (n as f64).powf(-2.0 / 3.0)
}

/// `χt` of the TACT optimum, `ln(4N) / 2N`.
pub fn tact_optimal_time(n: usize) -> f64 {
    (4.0 * n as f64).ln() / (2.0 * n as f64)
}

/// `χt` of the optimum under an effective TACT generator at rate `χ/3`.
pub fn effective_optimal_time(n: usize) -> f64 {
    3.0 * tact_optimal_time(n)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "segment", rename_all = "snake_case")]
pub enum Segment {
    /// `exp(-iχt J_axis²)`
    Quadratic { axis: Axis, chi: f64, duration: f64 },
    /// Any time-independent generator.
    Static { hamiltonian: HamiltonianSpec, duration: f64 },
    /// `χJz² + Ω(t)Jy` on the absolute time interval `[t0, t1]`.
    Driven { drive: DriveEnvelope, chi: f64, t0: f64, t1: f64, steps_per_period: usize },
    /// Instantaneous rotation by `area_scale × angle`.
    Pulse { rotation: RotationSpec, area_scale: f64 },
    Freeze { time: f64 },
}

impl Segment {
    pub fn duration(&self) -> f64 {
        match self {
            Segment::Quadratic { duration, .. } | Segment::Static { duration, .. } => *duration,
            Segment::Driven { t0, t1, .. } => t1 - t0,
            Segment::Pulse { .. } | Segment::Freeze { .. } => 0.0,
        }
    }
}

/// Ordered timeline of evolutions and pulses with diagnostic sample times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolSchedule {
    #[serde(rename = "N")]
    pub n: usize,
    pub chi: f64,
    pub segments: Vec<Segment>,
    /// Times (not `χt`) at which diagnostics are recorded, strictly increasing.
    pub sample_times: Vec<f64>,
    /// Build-time decisions copied into every record.
    pub notes: Vec<String>,
}

impl ProtocolSchedule {
    pub fn new(n: usize, chi: f64) -> Self {
        Self { n, chi, segments: Vec::new(), sample_times: Vec::new(), notes: Vec::new() }
    }

    pub fn end_time(&self) -> f64 {
        self.segments.iter().map(Segment::duration).sum()
    }

    pub(crate) fn time_scale(&self) -> f64 {
        self.end_time().max(f64::MIN_POSITIVE)
    }

    pub fn push_quadratic(&mut self, axis: Axis, duration: f64) {
        if duration > 0.0 {
            self.segments.push(Segment::Quadratic { axis, chi: self.chi, duration });
        }
    }

    pub fn push_static(&mut self, hamiltonian: HamiltonianSpec, duration: f64) {
        self.segments.push(Segment::Static { hamiltonian, duration });
    }

    /// Driven segment from the current end of the schedule to `t1`.
    pub fn push_driven(&mut self, drive: DriveEnvelope, t1: f64, steps_per_period: usize) {
        let t0 = self.end_time();
        self.segments.push(Segment::Driven { drive, chi: self.chi, t0, t1, steps_per_period });
    }

    pub fn push_pulse(&mut self, rotation: RotationSpec) {
        self.segments.push(Segment::Pulse { rotation, area_scale: 1.0 });
    }

    pub fn push_freeze(&mut self) {
        let time = self.end_time();
        self.segments.push(Segment::Freeze { time });
    }

    pub fn pulse_count(&self) -> usize {
        self.segments.iter().filter(|s| matches!(s, Segment::Pulse { .. })).count()
    }

    pub fn validate(&self) -> Result<()> {
        let mut clock = 0.0;
        let tol = 1e-9 * self.time_scale();
        for (i, seg) in self.segments.iter().enumerate() {
            match seg {
                Segment::Quadratic { duration, .. } | Segment::Static { duration, .. } => {
                    if !(*duration >= 0.0 && duration.is_finite()) {
                        return domain(format!("segment {i}: invalid duration {duration}"));
                    }
                }
                Segment::Driven { t0, t1, .. } => {
                    if (t0 - clock).abs() > tol {
                        return domain(format!("segment {i}: driven segment starts at {t0}, schedule is at {clock}"));
                    }
                    if !(t1 >= t0 && t1.is_finite()) {
                        return domain(format!("segment {i}: driven segment ends at {t1} before {t0}"));
                    }
                }
                Segment::Pulse { area_scale, .. } => {
                    if !(*area_scale > 0.0 && area_scale.is_finite()) {
                        return domain(format!("segment {i}: pulse area scale must be positive, got {area_scale}"));
                    }
                }
                Segment::Freeze { time } => {
                    if (time - clock).abs() > tol {
                        return domain(format!("segment {i}: freeze marked at {time}, schedule is at {clock}"));
                    }
                }
            }
            clock += seg.duration();
        }
        if self.sample_times.iter().any(|t| !(*t >= 0.0)) || self.sample_times.windows(2).any(|w| w[1] <= w[0]) {
            return domain("sample times must be non-negative and strictly increasing");
        }
        Ok(())
    }

    /// SHA-256 of the JSON serialization, hex encoded.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("schedule serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseScope {
    /// Fresh `r` for every pulse.
    PerPulse,
    /// One `r` shared by all pulses of a realization.
    PerRealization,
}

/// Pulse angles scaled by `1 + rη`, `r` uniform in `[-½, ½]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub eta: f64,
    pub seed: u64,
    pub scope: NoiseScope,
}

impl NoiseModel {
    pub fn new(eta: f64, seed: u64, scope: NoiseScope) -> Result<Self> {
        if !(eta >= 0.0 && eta.is_finite()) {
            return domain(format!("noise amplitude eta must be non-negative, got {eta}"));
        }
        Ok(Self { eta, seed, scope })
    }

    fn perturb(&self, schedule: &ProtocolSchedule, rng: &mut ChaCha8Rng) -> ProtocolSchedule {
        let mut out = schedule.clone();
        let mut draw = || 1.0 + (rng.random::<f64>() - 0.5) * self.eta;
        let shared = match self.scope {
            NoiseScope::PerRealization => Some(draw()),
            NoiseScope::PerPulse => None,
        };
        for seg in &mut out.segments {
            if let Segment::Pulse { area_scale, .. } = seg {
                *area_scale *= shared.unwrap_or_else(&mut draw);
            }
        }
        out
    }

    fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum FreezeTrigger {
    /// The candidate instant closest to the analytic optimum.
    AnalyticTime,
    /// Smallest `ξ²` among candidate instants in `[lo, hi] × t_opt`.
    NumericMinimum { lo: f64, hi: f64 },
}

impl Default for FreezeTrigger {
    fn default() -> Self {
        FreezeTrigger::NumericMinimum { lo: 0.7, hi: 1.3 }
    }
}

/// When and how to freeze the squeezing, and how long to follow it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreezePolicy {
    pub trigger: FreezeTrigger,
    /// Applied in order at the trigger.
    pub rotations: Vec<RotationSpec>,
    /// Pick the sign of each rotation angle that minimizes `Var(Jz)` afterwards.
    pub resolve_signs: bool,
    /// Duration of the `χJz²` evolution after the freeze.
    pub hold: f64,
    pub hold_samples: usize,
}

impl FreezePolicy {
    /// A `π/4` pulse about `-x`.
    pub fn pulses(hold: f64) -> Self {
        Self {
            trigger: FreezeTrigger::default(),
            rotations: vec![RotationSpec::about_neg_x(FRAC_PI_4)],
            resolve_signs: true,
            hold,
            hold_samples: 200,
        }
    }

    /// `R_y(Ω₀/ω)` back to the equator, then `π/4` about `-x`.
    pub fn drive(omega0_over_omega: f64, hold: f64) -> Self {
        Self {
            rotations: vec![RotationSpec::about_y(omega0_over_omega), RotationSpec::about_neg_x(FRAC_PI_4)],
            ..Self::pulses(hold)
        }
    }

    fn validate(&self) -> Result<()> {
        if self.rotations.is_empty() || self.rotations.len() > 4 {
            return domain("freeze needs between one and four rotations");
        }
        if !(self.hold >= 0.0 && self.hold.is_finite()) {
            return domain(format!("freeze hold time must be non-negative, got {}", self.hold));
        }
        if let FreezeTrigger::NumericMinimum { lo, hi } = self.trigger {
            if !(lo > 0.0 && hi > lo) {
                return domain(format!("freeze window [{lo}, {hi}] is empty"));
            }
        }
        Ok(())
    }

    /// Sign choice for the rotations, with a note describing it.
    fn resolve(&self, state: &DickeState) -> Result<(Vec<RotationSpec>, String)> {
        let k = self.rotations.len();
        let combos: Vec<u32> = if self.resolve_signs { (0..1u32 << k).collect() } else { vec![0] };
        let mut best: Option<(f64, Vec<RotationSpec>)> = None;
        for mask in combos {
            let rots: Vec<RotationSpec> = self
                .rotations
                .iter()
                .enumerate()
                .map(|(i, r)| if mask >> i & 1 == 1 { r.scaled(-1.0) } else { *r })
                .collect();
            let mut s = state.clone();
            for r in &rots {
                s = rotate(&s, r)?;
            }
            let var = m_distribution(&s).variance;
            if best.as_ref().is_none_or(|(v, _)| var < *v) {
                best = Some((var, rots));
            }
        }
        let (var, rots) = best.expect("at least one combination");
        let angles: Vec<String> = rots.iter().map(|r| format!("{:+.6}", r.angle())).collect();
        let note = format!("freeze rotation angles [{}] give Var(Jz) = {var:.6e}", angles.join(", "));
        Ok((rots, note))
    }

    fn hold_times(&self, from: f64) -> Vec<f64> {
        let count = self.hold_samples.max(1);
        (1..=count).map(|i| from + self.hold * i as f64 / count as f64).filter(|t| *t > from).collect()
    }
}

/// A schedule with the state it is meant to start from.
#[derive(Clone, Debug)]
pub struct BuiltProtocol {
    pub schedule: ProtocolSchedule,
    pub initial: DickeState,
    /// Analytic optimum time (in the schedule's time units).
    pub t_opt: f64,
    /// Freeze instant, if any.
    pub trigger: Option<f64>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseParams {
    #[serde(rename = "N")]
    pub n: usize,
    pub chi: f64,
    /// Periods needed to reach the analytic optimum.
    pub nc: usize,
    /// Periods to run without a freeze; defaults to `2 nc`.
    pub periods: Option<usize>,
    pub freeze: Option<FreezePolicy>,
}

impl PulseParams {
    pub fn new(n: usize, chi: f64, nc: usize) -> Self {
        Self { n, chi, nc, periods: None, freeze: None }
    }
}

/// `(δt, t_c, t_opt)` of the repeated-pulse sequence.
pub fn pulse_timing(n: usize, chi: f64, nc: usize) -> (f64, f64, f64) {
    let t_opt = effective_optimal_time(n) / chi;
    let dt = t_opt / (3.0 * nc as f64);
    (dt, 3.0 * dt, t_opt)
}

/// Period: `R_y(π/2)`, `2δt` of `χJz²`, `R_y(-π/2)`, `δt` of `χJz²`.
///
/// Between the pulses the lab-frame `Jz²` acts as `Jx²` on the state in the
/// pulse frame, so one period averages to `χ(2Jx² + Jz²)/3`.
fn push_period(s: &mut ProtocolSchedule, dt: f64) {
    s.push_pulse(RotationSpec::about_y(FRAC_PI_2));
    s.push_quadratic(Axis::Z, 2.0 * dt);
    s.push_pulse(RotationSpec::about_y(-FRAC_PI_2));
    s.push_quadratic(Axis::Z, dt);
}

fn pulse_samples(dt: f64, periods: usize) -> Vec<f64> {
    let tc = 3.0 * dt;
    (0..periods).flat_map(|p| [p as f64 * tc + dt, p as f64 * tc + 2.5 * dt]).collect()
}

/// Full periods followed by the first half of the next `2δt` section.
fn pulse_prefix(n: usize, chi: f64, dt: f64, full_periods: usize) -> ProtocolSchedule {
    let mut s = ProtocolSchedule::new(n, chi);
    for _ in 0..full_periods {
        push_period(&mut s, dt);
    }
    s.push_pulse(RotationSpec::about_y(FRAC_PI_2));
    s.push_quadratic(Axis::Z, dt);
    s
}

pub fn build_repeated_pulse(params: &PulseParams) -> Result<BuiltProtocol> {
    let PulseParams { n, chi, nc, .. } = *params;
    if nc == 0 {
        return domain("the pulse protocol needs at least one period (nc ≥ 1)");
    }
    if n == 0 || !(chi > 0.0 && chi.is_finite()) {
        return domain(format!("invalid N = {n} or chi = {chi}"));
    }
    let (dt, tc, t_opt) = pulse_timing(n, chi, nc);
    let mut warnings = Vec::new();
    let gate = 2.0 * chi * dt * n as f64;
    if gate >= 1.0 {
        warnings.push(format!("2χδtN = {gate:.4} is not below 1; the averaged generator is a poor description"));
    }
    let initial = make_dicke_state(n, n as f64 / 2.0)?;

    let Some(freeze) = &params.freeze else {
        let periods = params.periods.unwrap_or(2 * nc);
        let mut schedule = ProtocolSchedule::new(n, chi);
        for _ in 0..periods {
            push_period(&mut schedule, dt);
        }
        schedule.sample_times = pulse_samples(dt, periods);
        return Ok(BuiltProtocol { schedule, initial, t_opt, trigger: None, warnings });
    };
    freeze.validate()?;

    // candidates sit at p t_c + δt, inside the Jz² section after R_y(π/2)
    let full_periods = match freeze.trigger {
        FreezeTrigger::AnalyticTime => nc,
        FreezeTrigger::NumericMinimum { lo, hi } => {
            let first = ((lo * t_opt - dt) / tc).ceil().max(0.0) as usize;
            let last = ((hi * t_opt - dt) / tc).floor().max(0.0) as usize;
            if last < first {
                return domain("freeze window contains no sampling instant");
            }
            let mut probe = ProtocolSchedule::new(n, chi);
            for _ in 0..=last {
                push_period(&mut probe, dt);
            }
            probe.sample_times = (first..=last).map(|p| p as f64 * tc + dt).collect();
            let (_, rec) = evolve_schedule(&initial, &probe)?;
            let (best, _) = rec
                .samples
                .iter()
                .enumerate()
                .fold((0, f64::INFINITY), |acc, (i, s)| if s.report.xi2 < acc.1 { (i, s.report.xi2) } else { acc });
            first + best
        }
    };
    let mut schedule = pulse_prefix(n, chi, dt, full_periods);
    let t_f = schedule.end_time();
    let (at_trigger, _) = evolve_schedule(&initial, &schedule)?;
    let (rots, note) = freeze.resolve(&at_trigger)?;
    schedule.notes.push(note);
    schedule.push_freeze();
    for r in rots {
        schedule.push_pulse(r);
    }
    schedule.push_quadratic(Axis::Z, freeze.hold);
    let mut samples: Vec<f64> = pulse_samples(dt, full_periods + 1).into_iter().filter(|t| *t < t_f * (1.0 - 1e-12)).collect();
    samples.push(t_f);
    samples.extend(freeze.hold_times(t_f));
    schedule.sample_times = samples;
    Ok(BuiltProtocol { schedule, initial, t_opt, trigger: Some(t_f), warnings })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriveParams {
    #[serde(rename = "N")]
    pub n: usize,
    pub chi: f64,
    pub omega_over_chi: f64,
    pub omega0_over_omega: f64,
    pub phase: f64,
    /// End of the driven evolution without a freeze; defaults to `2 t_opt`.
    pub horizon: Option<f64>,
    pub steps_per_period: usize,
    pub samples_per_period: usize,
    pub freeze: Option<FreezePolicy>,
}

impl DriveParams {
    pub fn new(n: usize, chi: f64, omega_over_chi: f64, omega0_over_omega: f64, phase: f64) -> Self {
        Self {
            n,
            chi,
            omega_over_chi,
            omega0_over_omega,
            phase,
            horizon: None,
            steps_per_period: DEFAULT_STEPS_PER_PERIOD,
            samples_per_period: 4,
            freeze: None,
        }
    }

    pub fn envelope(&self) -> Result<DriveEnvelope> {
        if !(self.omega_over_chi > 0.0) {
            return domain(format!("omega_over_chi must be positive, got {}", self.omega_over_chi));
        }
        if !(self.omega0_over_omega >= 0.0) {
            return domain(format!("omega0_over_omega must be non-negative, got {}", self.omega0_over_omega));
        }
        let omega = self.omega_over_chi * self.chi;
        DriveEnvelope::new(self.omega0_over_omega * omega, omega, self.phase)
    }
}

/// `exp(-i(Ω₀/ω) sinφ Jy)|j,j⟩_x`, the start that makes the drive equivalent
/// to TACT in the rotated frame.
pub fn drive_initial_state(n: usize, omega0_over_omega: f64, phase: f64) -> Result<DickeState> {
    let css = make_css(n, FRAC_PI_2, 0.0)?;
    rotate(&css, &RotationSpec::about_y(omega0_over_omega * phase.sin()))
}

pub fn build_modulated_drive(params: &DriveParams) -> Result<BuiltProtocol> {
    let env = params.envelope()?;
    let (n, chi) = (params.n, params.chi);
    if n == 0 || !(chi > 0.0 && chi.is_finite()) {
        return domain(format!("invalid N = {n} or chi = {chi}"));
    }
    if params.samples_per_period == 0 {
        return domain("samples_per_period must be positive");
    }
    let mut warnings = Vec::new();
    if params.omega_over_chi <= 10.0 * n as f64 {
        warnings.push(format!(
            "ω/χ = {} is not well above Nχ = {n}; the averaged generator is a poor description",
            params.omega_over_chi
        ));
    }
    let t_opt = effective_optimal_time(n) / chi;
    let initial = drive_initial_state(n, params.omega0_over_omega, params.phase)?;
    let spp = params.steps_per_period;
    let sample_step = env.period() / params.samples_per_period as f64;
    let grid = |end: f64| -> Vec<f64> {
        let count = (end / sample_step * (1.0 + 1e-12)).floor() as usize;
        (0..=count).map(|k| k as f64 * sample_step).filter(|t| *t <= end).collect()
    };

    let Some(freeze) = &params.freeze else {
        let horizon = params.horizon.unwrap_or(2.0 * t_opt);
        let mut schedule = ProtocolSchedule::new(n, chi);
        schedule.push_driven(env, horizon, spp);
        schedule.sample_times = grid(horizon);
        return Ok(BuiltProtocol { schedule, initial, t_opt, trigger: None, warnings });
    };
    freeze.validate()?;

    let (t_f, at_trigger) = match freeze.trigger {
        FreezeTrigger::AnalyticTime => {
            let near = env.zeros_between((t_opt - env.period()).max(0.0), t_opt + env.period());
            let t = near
                .into_iter()
                .min_by(|a, b| (a - t_opt).abs().total_cmp(&(b - t_opt).abs()))
                .expect("a cosine has zeros in every period");
            (t, evolve_driven(&initial, chi, &env, 0.0, t, spp)?)
        }
        FreezeTrigger::NumericMinimum { lo, hi } => {
            let candidates = env.zeros_between(lo * t_opt, hi * t_opt);
            if candidates.is_empty() {
                return domain("freeze window contains no drive zero");
            }
            let mut state = initial.clone();
            let mut clock = 0.0;
            let mut best: Option<(f64, f64, DickeState)> = None;
            for &t in &candidates {
                state = evolve_driven(&state, chi, &env, clock, t, spp)?;
                clock = t;
                let xi2 = squeezing_report(&state)?.xi2;
                if best.as_ref().is_none_or(|b| xi2 < b.1) {
                    best = Some((t, xi2, state.clone()));
                }
            }
            let (t, _, s) = best.expect("non-empty candidates");
            (t, s)
        }
    };
    let (rots, note) = freeze.resolve(&at_trigger)?;
    let mut schedule = ProtocolSchedule::new(n, chi);
    schedule.notes.push(note);
    schedule.push_driven(env, t_f, spp);
    schedule.push_freeze();
    for r in rots {
        schedule.push_pulse(r);
    }
    schedule.push_quadratic(Axis::Z, freeze.hold);
    let mut samples: Vec<f64> = grid(t_f).into_iter().filter(|t| *t < t_f * (1.0 - 1e-12)).collect();
    samples.push(t_f);
    samples.extend(freeze.hold_times(t_f));
    schedule.sample_times = samples;
    Ok(BuiltProtocol { schedule, initial, t_opt, trigger: Some(t_f), warnings })
}

/// Runs a schedule, optionally with pulse-area noise.
pub fn run_protocol(schedule: &ProtocolSchedule, initial: &DickeState, noise: Option<&NoiseModel>) -> Result<RunRecord> {
    match noise {
        None => Ok(evolve_schedule(initial, schedule)?.1),
        Some(model) => run_realization(schedule, initial, model, 0),
    }
}

fn run_realization(schedule: &ProtocolSchedule, initial: &DickeState, noise: &NoiseModel, index: u64) -> Result<RunRecord> {
    let noisy = noise.perturb(schedule, &mut noise.stream(index));
    let (_, mut rec) = evolve_schedule(initial, &noisy)?;
    rec.params.seed = Some(noise.seed);
    rec.params.schedule_digest = schedule.digest();
    Ok(rec)
}

/// Independent noisy runs and their pointwise mean `ξ²`.
#[derive(Clone, Debug)]
pub struct Ensemble {
    pub runs: Vec<RunRecord>,
    /// `(χt, mean ξ²)` at every sample time.
    pub mean_xi2: Vec<(f64, f64)>,
}

/// Realization `i` draws from ChaCha stream `i` of the master seed, so the
/// ensemble does not depend on thread scheduling.
pub fn run_monte_carlo(
    schedule: &ProtocolSchedule,
    initial: &DickeState,
    noise: &NoiseModel,
    realizations: usize,
) -> Result<Ensemble> {
    if realizations == 0 {
        return domain("need at least one realization");
    }
    let runs: Vec<RunRecord> = (0..realizations as u64)
        .into_par_iter()
        .map(|i| run_realization(schedule, initial, noise, i))
        .collect::<Result<_>>()?;
    let times = runs[0].times();
    let mean_xi2 = times
        .iter()
        .enumerate()
        .map(|(k, t)| (*t, runs.iter().map(|r| r.samples[k].report.xi2).sum::<f64>() / runs.len() as f64))
        .collect();
    Ok(Ensemble { runs, mean_xi2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferenceModel {
    Oat,
    Tact,
}

impl ReferenceModel {
    /// Analytic `χt` of the optimum.
    pub fn optimal_time(self, n: usize) -> f64 {
        match self {
            ReferenceModel::Oat => oat_optimal_time(n),
            ReferenceModel::Tact => tact_optimal_time(n),
        }
    }
}

/// Schedule and start state of a reference run: `|j,j⟩_x` under `χJz²` or
/// `χ(Jz² - Jy²)`, sampled uniformly over three analytic optimum times.
pub fn reference_schedule(n: usize, chi: f64, model: ReferenceModel, samples: usize) -> Result<(ProtocolSchedule, DickeState)> {
    if samples < 2 {
        return domain("reference runs need at least two samples");
    }
    let span = 3.0 * model.optimal_time(n) / chi;
    let mut schedule = ProtocolSchedule::new(n, chi);
    match model {
        ReferenceModel::Oat => schedule.push_quadratic(Axis::Z, span),
        ReferenceModel::Tact => schedule.push_static(HamiltonianSpec::tact(chi), span),
    }
    schedule.sample_times = (0..=samples).map(|i| span * i as f64 / samples as f64).collect();
    Ok((schedule, make_css(n, FRAC_PI_2, 0.0)?))
}

pub fn reference_runs(n: usize, chi: f64, model: ReferenceModel, samples: usize) -> Result<RunRecord> {
    let (schedule, initial) = reference_schedule(n, chi, model, samples)?;
    Ok(evolve_schedule(&initial, &schedule)?.1)
}
