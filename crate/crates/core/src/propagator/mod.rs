//! Time evolution: quadratic generators, the driven split-step integrator and
//! piecewise schedules.

pub mod oracle;

use serde::{Deserialize, Serialize};

use crate::diagnostics::{squeezing_report, RecordParams, RunEvent, RunRecord};
use crate::dicke::{self, Axis, DickeState, YRotation};
use crate::error::{domain, Result, SqueezeError};
use crate::hamiltonians::{DriveEnvelope, HamiltonianForm, HamiltonianSpec};
use crate::linalg::{self, Banded};
use crate::protocols::{ProtocolSchedule, Segment};
use crate::C64;

/// Default split-step resolution per drive period.
pub const DEFAULT_STEPS_PER_PERIOD: usize = 64;

/// Per-step norm drift above which the integrator renormalizes.
const DRIFT_LIMIT: f64 = 1e-12;

fn check_duration(duration: f64) -> Result<()> {
    if !(duration >= 0.0 && duration.is_finite()) {
        return domain(format!("duration must be finite and non-negative, got {duration}"));
    }
    Ok(())
}

/// `c_m ↦ e^{-iχt m²} c_m`.
pub fn evolve_quadratic_diagonal(state: &DickeState, chi: f64, duration: f64) -> Result<DickeState> {
    check_duration(duration)?;
    let mut out = state.clone();
    apply_diagonal_phases(&mut out, chi * duration);
    Ok(out)
}

fn apply_diagonal_phases(state: &mut DickeState, chi_t: f64) {
    if chi_t == 0.0 {
        return;
    }
    let j = state.j();
    for (k, c) in state.amplitudes_mut().iter_mut().enumerate() {
        let m = j - k as f64;
        *c *= C64::from_polar(1.0, -chi_t * m * m);
    }
}

/// `exp(-iχt J_axis²)`.
pub fn evolve_quadratic_axis(state: &DickeState, axis: Axis, chi: f64, duration: f64) -> Result<DickeState> {
    check_duration(duration)?;
    if axis == Axis::Z {
        return evolve_quadratic_diagonal(state, chi, duration);
    }
    let j = state.j();
    let h = dicke::quadratic(state.n(), axis).scale_real(chi);
    let lo = if state.n().is_multiple_of(2) { 0.0 } else { 0.25 * chi };
    let amps = linalg::expm_apply(&h, duration, state.amplitudes(), (lo, chi * j * j));
    Ok(DickeState::from_raw(state.n(), amps))
}

/// `exp(-iHt)` for a Hermitian banded generator.
pub fn evolve_static(state: &DickeState, h: &Banded, duration: f64) -> Result<DickeState> {
    check_duration(duration)?;
    if h.dim() != state.dim() {
        return domain(format!("generator dimension {} does not match state dimension {}", h.dim(), state.dim()));
    }
    let amps = linalg::expm_apply_auto(h, duration, state.amplitudes());
    Ok(DickeState::from_raw(state.n(), amps))
}

/// Evolution under a time-independent generator.
pub fn evolve_hamiltonian(state: &DickeState, spec: &HamiltonianSpec, duration: f64) -> Result<DickeState> {
    match spec.form {
        HamiltonianForm::Oat => evolve_quadratic_diagonal(state, spec.chi, duration),
        HamiltonianForm::Quadratic { axis } => evolve_quadratic_axis(state, axis, spec.chi, duration),
        HamiltonianForm::Driven { .. } => domain("driven generators need evolve_driven"),
        _ => evolve_static(state, &spec.matrix(state.n()), duration),
    }
}

/// Bookkeeping of one driven integration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DriveLog {
    pub steps: usize,
    pub renormalizations: usize,
    pub max_drift: f64,
}

/// `H(t) = χJz² + Ω(t)Jy` from `t0` to `t1` by Strang splitting.
///
/// Each substep is a half step of `Jz²`, a `y` rotation by the exact envelope
/// integral over the substep, and another half step of `Jz²`.
pub fn evolve_driven(
    state: &DickeState,
    chi: f64,
    env: &DriveEnvelope,
    t0: f64,
    t1: f64,
    steps_per_period: usize,
) -> Result<DickeState> {
    Ok(evolve_driven_logged(state, chi, env, t0, t1, steps_per_period)?.0)
}

pub fn evolve_driven_logged(
    state: &DickeState,
    chi: f64,
    env: &DriveEnvelope,
    t0: f64,
    t1: f64,
    steps_per_period: usize,
) -> Result<(DickeState, DriveLog)> {
    if steps_per_period < 16 {
        return domain(format!("steps_per_period must be at least 16, got {steps_per_period}"));
    }
    if !(t1 >= t0) {
        return domain(format!("driven segment ends at {t1} before it starts at {t0}"));
    }
    let span = t1 - t0;
    let mut out = state.clone();
    let mut log = DriveLog::default();
    if span == 0.0 {
        return Ok((out, log));
    }
    let h_max = env.period() / steps_per_period as f64;
    // tolerate rounding so that aligned pieces keep the same grid
    let steps = ((span / h_max) - 1e-9).ceil().max(1.0);
    if steps > 1e10 {
        return Err(SqueezeError::Resource(format!("driven segment needs {steps:e} substeps")));
    }
    let steps = steps as usize;
    let dt = span / steps as f64;
    if t0 + dt == t0 || dt == 0.0 {
        return domain(format!("substep {dt} underflows at t = {t0}"));
    }
    let rot = YRotation::new(state.n());
    let j = state.j();
    let phases = |chi_t: f64| -> Vec<C64> {
        (0..state.dim())
            .map(|k| {
                let m = j - k as f64;
                C64::from_polar(1.0, -chi_t * m * m)
            })
            .collect()
    };
    let half = phases(0.5 * chi * dt);
    let full = phases(chi * dt);
    let mul = |amps: &mut [C64], ph: &[C64]| {
        for (c, p) in amps.iter_mut().zip(ph) {
            *c *= p;
        }
    };

    let mut amps = out.amplitudes().to_vec();
    mul(&mut amps, &half);
    for k in 0..steps {
        let a = t0 + k as f64 * dt;
        let b = if k + 1 == steps { t1 } else { t0 + (k + 1) as f64 * dt };
        amps = rot.apply(&amps, env.integral(a, b));
        mul(&mut amps, if k + 1 == steps { &half } else { &full });
        let drift = (linalg::norm_sqr(&amps) - 1.0).abs();
        log.max_drift = log.max_drift.max(drift);
        if drift > DRIFT_LIMIT {
            let s = 1.0 / linalg::norm_sqr(&amps).sqrt();
            amps.iter_mut().for_each(|c| *c *= s);
            log.renormalizations += 1;
        }
    }
    log.steps = steps;
    out.amplitudes_mut().copy_from_slice(&amps);
    Ok((out, log))
}

/// Applies a schedule and samples diagnostics at its sample times.
///
/// A sample at time `s` sees every instantaneous pulse scheduled at `s`.
pub fn evolve_schedule(state: &DickeState, schedule: &ProtocolSchedule) -> Result<(DickeState, RunRecord)> {
    evolve_schedule_refined(state, schedule, 1)
}

/// [`evolve_schedule`] with every integrator resolution multiplied by `refine`:
/// driven segments use `refine ×` the steps per period, static segments are
/// split into `refine` pieces.
pub fn evolve_schedule_refined(
    state: &DickeState,
    schedule: &ProtocolSchedule,
    refine: usize,
) -> Result<(DickeState, RunRecord)> {
    if state.n() != schedule.n {
        return domain(format!("schedule for N = {} applied to state with N = {}", schedule.n, state.n()));
    }
    if refine == 0 {
        return domain("refinement factor must be positive");
    }
    schedule.validate()?;
    let mut record = RunRecord::new(RecordParams {
        n: schedule.n,
        chi: schedule.chi,
        schedule_digest: schedule.digest(),
        seed: None,
    });
    for note in &schedule.notes {
        record.events.push(RunEvent::Note { text: note.clone() });
    }
    let mut run = Runner { state: state.clone(), clock: 0.0, next_sample: 0, schedule, record, refine };
    for seg in &schedule.segments {
        run.segment(seg)?;
    }
    run.flush_at(run.clock)?;
    if run.next_sample < schedule.sample_times.len() {
        return domain(format!(
            "sample time {} lies beyond the schedule end {}",
            schedule.sample_times[run.next_sample], run.clock
        ));
    }
    Ok((run.state, run.record))
}

struct Runner<'a> {
    state: DickeState,
    clock: f64,
    next_sample: usize,
    schedule: &'a ProtocolSchedule,
    record: RunRecord,
    refine: usize,
}

impl Runner<'_> {
    fn tol(&self) -> f64 {
        1e-9 * self.clock.abs().max(self.schedule.time_scale())
    }

    fn sample(&mut self, t: f64) -> Result<()> {
        let report = squeezing_report(&self.state)?;
        self.record.push(self.schedule.chi * t, report)
    }

    /// Takes every pending sample up to `t` using the current state.
    fn flush_at(&mut self, t: f64) -> Result<()> {
        let tol = self.tol();
        while let Some(&s) = self.schedule.sample_times.get(self.next_sample) {
            if s > t + tol {
                break;
            }
            self.sample(s)?;
            self.next_sample += 1;
        }
        Ok(())
    }

    /// Evolves over `[clock, clock + duration]`, stopping at interior samples.
    fn advance<F>(&mut self, duration: f64, mut step: F) -> Result<()>
    where
        F: FnMut(&DickeState, f64, f64) -> Result<DickeState>,
    {
        let start = self.clock;
        let end = start + duration;
        self.flush_at(start)?;
        let tol = self.tol();
        let mut t = start;
        while let Some(&s) = self.schedule.sample_times.get(self.next_sample) {
            if s >= end - tol {
                break;
            }
            self.state = step(&self.state, t, s)?;
            t = s;
            self.sample(s)?;
            self.next_sample += 1;
        }
        if end > t {
            self.state = step(&self.state, t, end)?;
        }
        self.clock = end;
        Ok(())
    }

    fn segment(&mut self, seg: &Segment) -> Result<()> {
        let refine = self.refine;
        match seg {
            Segment::Quadratic { axis, chi, duration } => {
                let (axis, chi) = (*axis, *chi);
                self.advance(*duration, |s, a, b| {
                    let mut out = s.clone();
                    let piece = (b - a) / refine as f64;
                    for _ in 0..refine {
                        out = evolve_quadratic_axis(&out, axis, chi, piece)?;
                    }
                    Ok(out)
                })
            }
            Segment::Static { hamiltonian, duration } => {
                let h = hamiltonian.matrix(self.schedule.n);
                let bounds = h.gershgorin_bounds();
                self.advance(*duration, |s, a, b| {
                    let piece = (b - a) / refine as f64;
                    let mut amps = s.amplitudes().to_vec();
                    for _ in 0..refine {
                        amps = linalg::expm_apply(&h, piece, &amps, bounds);
                    }
                    Ok(DickeState::from_raw(s.n(), amps))
                })
            }
            Segment::Driven { drive, chi, t0, t1, steps_per_period } => {
                let (drive, chi, spp) = (*drive, *chi, steps_per_period * refine);
                let mut total = DriveLog::default();
                self.advance(t1 - t0, |s, a, b| {
                    let (out, log) = evolve_driven_logged(s, chi, &drive, a, b, spp)?;
                    total.steps += log.steps;
                    total.renormalizations += log.renormalizations;
                    total.max_drift = total.max_drift.max(log.max_drift);
                    Ok(out)
                })?;
                if total.renormalizations > 0 {
                    self.record.events.push(RunEvent::Renormalized {
                        chi_t: self.schedule.chi * self.clock,
                        drift: total.max_drift,
                    });
                }
                Ok(())
            }
            Segment::Pulse { rotation, area_scale } => {
                self.state = dicke::rotate(&self.state, &rotation.scaled(*area_scale))?;
                Ok(())
            }
            Segment::Freeze { .. } => {
                self.record.events.push(RunEvent::Freeze { chi_t: self.schedule.chi * self.clock });
                Ok(())
            }
        }
    }
}

/// Difference between a run and the same run at doubled resolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// `1 - |⟨ψ|ψ'⟩|` of the terminal states.
    pub terminal_infidelity: f64,
    /// Largest `|ξ² - ξ²'| / ξ²` over common samples.
    pub max_relative_xi2_change: f64,
}

impl ConvergenceReport {
    pub fn compare(a: (&DickeState, &RunRecord), b: (&DickeState, &RunRecord)) -> Result<Self> {
        if a.1.samples.len() != b.1.samples.len() {
            return domain("records to compare have different sample counts");
        }
        let max_rel = a
            .1
            .samples
            .iter()
            .zip(&b.1.samples)
            .map(|(x, y)| (x.report.xi2 - y.report.xi2).abs() / x.report.xi2)
            .fold(0.0, f64::max);
        Ok(Self { terminal_infidelity: (1.0 - a.0.fidelity(b.0)).max(0.0), max_relative_xi2_change: max_rel })
    }
}

/// Runs a schedule at the base and doubled resolution.
pub fn doubling_check(state: &DickeState, schedule: &ProtocolSchedule) -> Result<ConvergenceReport> {
    let (s1, r1) = evolve_schedule_refined(state, schedule, 1)?;
    let (s2, r2) = evolve_schedule_refined(state, schedule, 2)?;
    ConvergenceReport::compare((&s1, &r1), (&s2, &r2))
}
