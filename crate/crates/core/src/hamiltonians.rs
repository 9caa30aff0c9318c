//! Generators: one-axis twisting, two-axis countertwisting, single-axis
//! quadratics, the α₀-mixture obtained by period-averaging a modulated drive,
//! and the driven Hamiltonian `χJz² + Ω(t)Jy` itself.
//!
//! Returned matrices keep the `J² = j(j+1)` constant where the algebra produces
//! one; it only shifts the global phase.

use serde::{Deserialize, Serialize};

use crate::bessel::bessel_j0;
use crate::dicke::{self, Axis, RotationSpec};
use crate::error::{domain, Result};
use crate::linalg::Banded;
use crate::C64;

/// `Ω(t) = Ω₀ cos(ωt + φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriveEnvelope {
    /// Amplitude Ω₀.
    pub omega0: f64,
    /// Angular frequency ω.
    pub omega: f64,
    /// Phase φ (radians).
    pub phase: f64,
}

impl DriveEnvelope {
    pub fn new(omega0: f64, omega: f64, phase: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return domain(format!("drive frequency must be positive, got {omega}"));
        }
        if !(omega0 >= 0.0 && omega0.is_finite()) {
            return domain(format!("drive amplitude must be non-negative, got {omega0}"));
        }
        if !phase.is_finite() {
            return domain("drive phase must be finite");
        }
        Ok(Self { omega0, omega, phase })
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.omega
    }

    /// Ω₀/ω, the solstice angle.
    pub fn ratio(&self) -> f64 {
        self.omega0 / self.omega
    }

    /// `∫_{t0}^{t1} Ω(t) dt`, exactly.
    pub fn integral(&self, t0: f64, t1: f64) -> f64 {
        self.ratio() * ((self.omega * t1 + self.phase).sin() - (self.omega * t0 + self.phase).sin())
    }

    /// Instants in `[lo, hi]` where `Ω(t) = 0`, i.e. `ωt + φ = π/2 + kπ`.
    pub fn zeros_between(&self, lo: f64, hi: f64) -> Vec<f64> {
        use std::f64::consts::{FRAC_PI_2, PI};
        let first = ((self.omega * lo + self.phase - FRAC_PI_2) / PI).ceil() as i64;
        (first..)
            .map(|k| (FRAC_PI_2 + k as f64 * PI - self.phase) / self.omega)
            .take_while(|&t| t <= hi)
            .filter(|&t| t >= lo)
            .collect()
    }
}

pub fn drive_value(env: &DriveEnvelope, t: f64) -> f64 {
    env.omega0 * (env.omega * t + env.phase).cos()
}

/// `α₀ = [1 + J₀(2Ω₀/ω)]/2`, always in `(-0.5, 1]`.
pub fn alpha0(omega0: f64, omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return domain(format!("drive frequency must be positive, got {omega}"));
    }
    Ok(0.5 * (1.0 + bessel_j0(2.0 * omega0 / omega)))
}

/// Generator shapes. `chi` multiplies all of them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum HamiltonianForm {
    /// `Jz²`
    Oat,
    /// `Jz² - Jy²`
    Tact,
    /// `J_axis²`
    Quadratic { axis: Axis },
    /// `α₀Jz² + (1-α₀)Jx²`
    Mixture { alpha0: f64 },
    /// `Jz² + (Ω(t)/χ) Jy`
    Driven { drive: DriveEnvelope },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    pub chi: f64,
    #[serde(flatten)]
    pub form: HamiltonianForm,
}

impl HamiltonianSpec {
    pub fn new(chi: f64, form: HamiltonianForm) -> Result<Self> {
        if !(chi > 0.0 && chi.is_finite()) {
            return domain(format!("coupling chi must be positive, got {chi}"));
        }
        match form {
            HamiltonianForm::Mixture { alpha0 } if !(alpha0 > -0.5 && alpha0 <= 1.0) => {
                return domain(format!("alpha0 = {alpha0} outside (-0.5, 1]"));
            }
            HamiltonianForm::Driven { drive } => {
                DriveEnvelope::new(drive.omega0, drive.omega, drive.phase)?;
            }
            _ => {}
        }
        Ok(Self { chi, form })
    }

    pub fn oat(chi: f64) -> Self {
        Self { chi, form: HamiltonianForm::Oat }
    }

    pub fn tact(chi: f64) -> Self {
        Self { chi, form: HamiltonianForm::Tact }
    }

    pub fn is_time_dependent(&self) -> bool {
        matches!(self.form, HamiltonianForm::Driven { .. })
    }

    /// Matrix at time `t` (the time only matters for the driven form).
    pub fn matrix_at(&self, n: usize, t: f64) -> Banded {
        let chi = C64::new(self.chi, 0.0);
        let jz2 = dicke::quadratic(n, Axis::Z);
        match self.form {
            HamiltonianForm::Oat => jz2.scale(chi),
            HamiltonianForm::Tact => jz2.sub(&dicke::quadratic(n, Axis::Y)).scale(chi),
            HamiltonianForm::Quadratic { axis } => dicke::quadratic(n, axis).scale(chi),
            HamiltonianForm::Mixture { alpha0 } => mixture(n, self.chi, alpha0),
            HamiltonianForm::Driven { drive } => {
                let jy = dicke::component(n, Axis::Y);
                jz2.scale(chi).axpy(C64::new(drive_value(&drive, t), 0.0), jy.matrix())
            }
        }
    }

    /// Matrix of a static generator.
    pub fn matrix(&self, n: usize) -> Banded {
        self.matrix_at(n, 0.0)
    }
}

fn mixture(n: usize, chi: f64, alpha0: f64) -> Banded {
    let jz2 = dicke::quadratic(n, Axis::Z);
    let jx2 = dicke::quadratic(n, Axis::X);
    jz2.scale_real(chi * alpha0).axpy(C64::new(chi * (1.0 - alpha0), 0.0), &jx2)
}

/// `J² = Jx² + Jy² + Jz²` (equal to `j(j+1)` times identity).
pub fn casimir(n: usize) -> Banded {
    dicke::quadratic(n, Axis::X)
        .add(&dicke::quadratic(n, Axis::Y))
        .add(&dicke::quadratic(n, Axis::Z))
}

/// Effective generator of the modulated drive in the high-frequency limit:
/// `χ[α₀Jz² + (1-α₀)Jx²]` together with the frame rotation about y by
/// `(Ω₀/ω) sin φ` that conjugates it for a nonzero drive phase.
pub fn build_effective(n: usize, chi: f64, omega0: f64, omega: f64, phase: f64) -> Result<(Banded, RotationSpec)> {
    let a0 = alpha0(omega0, omega)?;
    HamiltonianSpec::new(chi, HamiltonianForm::Mixture { alpha0: a0 })?;
    let frame = RotationSpec::about_y(omega0 / omega * phase.sin());
    Ok((mixture(n, chi, a0), frame))
}

/// Averages of `cos²θ₁`, `sin²θ₁` and `sinθ₁cosθ₁` over one drive period,
/// `θ₁(t) = (Ω₀/ω) sin(ωt + φ)`, by the periodic trapezoid rule.
///
/// The integrands are smooth and periodic, so the rule converges
/// geometrically in the number of points.
pub fn time_averaged_trig_moments(omega0: f64, omega: f64, phase: f64, quadrature_points: usize) -> Result<(f64, f64, f64)> {
    if quadrature_points < 64 {
        return domain(format!("need at least 64 quadrature points, got {quadrature_points}"));
    }
    let env = DriveEnvelope::new(omega0, omega, phase)?;
    let period = env.period();
    let h = period / quadrature_points as f64;
    let (mut c2, mut s2, mut sc) = (0.0, 0.0, 0.0);
    for i in 0..quadrature_points {
        let t = i as f64 * h;
        let theta1 = env.ratio() * (omega * t + phase).sin();
        let (s, c) = theta1.sin_cos();
        c2 += c * c;
        s2 += s * s;
        sc += s * c;
    }
    let w = quadrature_points as f64;
    Ok((c2 / w, s2 / w, sc / w))
}

/// Period average of the pulse sequence, `χ(2Jx² + Jz²)/3`.
pub fn pulse_pair_average(n: usize, chi: f64) -> Banded {
    // (2 Jx² + Jz²)/3
    let jx2 = dicke::quadratic(n, Axis::X);
    let jz2 = dicke::quadratic(n, Axis::Z);
    jx2.scale_real(2.0 * chi / 3.0).axpy(C64::new(chi / 3.0, 0.0), &jz2)
}

/// `χ(Jx² - Jy²)/3`, the pulse sequence's effective TACT generator with the
/// constant dropped.
pub fn pulse_effective_tact(n: usize, chi: f64) -> Banded {
    dicke::quadratic(n, Axis::X).sub(&dicke::quadratic(n, Axis::Y)).scale_real(chi / 3.0)
}
