//! Brute-force reference on the full `2^N` tensor-product space.
//!
//! Spin operators are built from single-particle Pauli matrices by bit
//! manipulation, never from Dicke ladder coefficients, so agreement with the
//! symmetric-subspace code is a genuine cross-check.

use nalgebra::{DMatrix, DVector};

use crate::dicke::{Axis, DickeState, RotationSpec};
use crate::error::{Result, SqueezeError};
use crate::hamiltonians::{drive_value, DriveEnvelope, HamiltonianForm, HamiltonianSpec};
use crate::linalg::dense_unitary;
use crate::protocols::{ProtocolSchedule, Segment};
use crate::C64;

pub const MAX_ORACLE_N: usize = 10;

/// Terminal state of an oracle run, projected back onto the Dicke basis.
#[derive(Clone, Debug)]
pub struct OracleResult {
    pub state: DickeState,
    /// `1 - Σ|c_k|²` lost in the projection.
    pub deficit: f64,
}

struct FullSpace {
    n: usize,
    dim: usize,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl FullSpace {
    fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORACLE_N {
            return Err(SqueezeError::Resource(format!("full-space oracle supports 1 ≤ N ≤ {MAX_ORACLE_N}, got {n}")));
        }
        Ok(Self { n, dim: 1 << n })
    }

    /// Bit `q` set means particle `q` points down.
    fn embed(&self, state: &DickeState) -> Vec<C64> {
        let amps = state.amplitudes();
        (0..self.dim)
            .map(|s: usize| {
                let k = s.count_ones() as usize;
                amps[k] / binomial(self.n, k).sqrt()
            })
            .collect()
    }

    fn project(&self, psi: &[C64]) -> Result<OracleResult> {
        let mut amps = vec![C64::new(0.0, 0.0); self.n + 1];
        for (s, v) in psi.iter().enumerate() {
            amps[s.count_ones() as usize] += v;
        }
        for (k, a) in amps.iter_mut().enumerate() {
            *a /= binomial(self.n, k).sqrt();
        }
        let kept: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let total: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        let deficit = total - kept;
        let s = 1.0 / kept.sqrt();
        amps.iter_mut().for_each(|a| *a *= s);
        Ok(OracleResult { state: DickeState::from_amplitudes(self.n, amps)?, deficit })
    }

    /// `J_axis ψ` from single-particle Pauli actions.
    fn apply_component(&self, axis: Axis, psi: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for (s, v) in psi.iter().enumerate() {
            for q in 0..self.n {
                let down = s >> q & 1 == 1;
                match axis {
                    Axis::Z => out[s] += v * if down { -0.5 } else { 0.5 },
                    Axis::X => out[s ^ (1 << q)] += v * 0.5,
                    // σy|↑⟩ = i|↓⟩, σy|↓⟩ = -i|↑⟩
                    Axis::Y => out[s ^ (1 << q)] += v * C64::new(0.0, if down { -0.5 } else { 0.5 }),
                }
            }
        }
        out
    }

    fn dense_component(&self, axis: Axis) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        let mut e = vec![C64::new(0.0, 0.0); self.dim];
        for col in 0..self.dim {
            e[col] = C64::new(1.0, 0.0);
            let v = self.apply_component(axis, &e);
            for (row, x) in v.into_iter().enumerate() {
                m[(row, col)] = x;
            }
            e[col] = C64::new(0.0, 0.0);
        }
        m
    }

    fn square(&self, axis: Axis) -> DMatrix<C64> {
        let c = self.dense_component(axis);
        &c * &c
    }

    fn static_generator(&self, spec: &HamiltonianSpec) -> Result<DMatrix<C64>> {
        let chi = C64::new(spec.chi, 0.0);
        let h = match spec.form {
            HamiltonianForm::Oat => self.square(Axis::Z),
            HamiltonianForm::Tact => self.square(Axis::Z) - self.square(Axis::Y),
            HamiltonianForm::Quadratic { axis } => self.square(axis),
            HamiltonianForm::Mixture { alpha0 } => {
                self.square(Axis::Z) * C64::new(alpha0, 0.0) + self.square(Axis::X) * C64::new(1.0 - alpha0, 0.0)
            }
            HamiltonianForm::Driven { .. } => {
                return Err(SqueezeError::Domain("driven generator is not static".into()));
            }
        };
        Ok(h * chi)
    }

    fn evolve_dense(&self, h: &DMatrix<C64>, t: f64, psi: &[C64]) -> Vec<C64> {
        let u = dense_unitary(h, t);
        (u * DVector::from_column_slice(psi)).as_slice().to_vec()
    }

    /// Product of identical single-particle rotations.
    fn rotate(&self, rot: &RotationSpec, psi: &[C64]) -> Vec<C64> {
        let [nx, ny, nz] = rot.axis();
        let (s, c) = (0.5 * rot.angle()).sin_cos();
        let mi = C64::new(0.0, -s);
        // U = cos(θ/2) - i sin(θ/2) n·σ, basis (↑, ↓)
        let u = [
            [C64::new(c, 0.0) + mi * nz, mi * C64::new(nx, -ny)],
            [mi * C64::new(nx, ny), C64::new(c, 0.0) - mi * nz],
        ];
        let mut out = psi.to_vec();
        for q in 0..self.n {
            let bit = 1 << q;
            for s0 in 0..self.dim {
                if s0 & bit != 0 {
                    continue;
                }
                let (a, b) = (out[s0], out[s0 | bit]);
                out[s0] = u[0][0] * a + u[0][1] * b;
                out[s0 | bit] = u[1][0] * a + u[1][1] * b;
            }
        }
        out
    }

    /// Classical RK4 for `χJz² + Ω(t)Jy`.
    fn evolve_driven(&self, chi: f64, env: &DriveEnvelope, t0: f64, t1: f64, psi: &[C64]) -> Vec<C64> {
        let j = self.n as f64 / 2.0;
        let rate = chi.abs() * j * j + env.omega0 * j;
        let h_max = (0.004 / rate.max(1e-300)).min(env.period() / 64.0);
        let steps = ((t1 - t0) / h_max).ceil().max(1.0) as usize;
        let h = (t1 - t0) / steps as f64;
        let jz2: Vec<f64> = (0..self.dim)
            .map(|s: usize| {
                let m = j - s.count_ones() as f64;
                m * m
            })
            .collect();
        let deriv = |t: f64, v: &[C64]| -> Vec<C64> {
            let jy = self.apply_component(Axis::Y, v);
            let w = drive_value(env, t);
            v.iter()
                .zip(&jy)
                .zip(&jz2)
                .map(|((x, y), d)| C64::new(0.0, -1.0) * (x * (chi * d) + y * w))
                .collect()
        };
        let axpy = |x: &[C64], a: f64, k: &[C64]| -> Vec<C64> { x.iter().zip(k).map(|(x, k)| x + k * a).collect() };
        let mut v = psi.to_vec();
        for i in 0..steps {
            let t = t0 + i as f64 * h;
            let k1 = deriv(t, &v);
            let k2 = deriv(t + 0.5 * h, &axpy(&v, 0.5 * h, &k1));
            let k3 = deriv(t + 0.5 * h, &axpy(&v, 0.5 * h, &k2));
            let k4 = deriv(t + h, &axpy(&v, h, &k3));
            for idx in 0..v.len() {
                v[idx] += (k1[idx] + (k2[idx] + k3[idx]) * 2.0 + k4[idx]) * (h / 6.0);
            }
        }
        v
    }
}

/// Evolves `initial` under `spec` for `duration` on the full tensor-product
/// space and projects the result back. Driven generators start at `t = 0`.
pub fn full_hilbert_oracle(spec: &HamiltonianSpec, initial: &DickeState, duration: f64) -> Result<OracleResult> {
    let space = FullSpace::new(initial.n())?;
    let psi = space.embed(initial);
    let out = match spec.form {
        HamiltonianForm::Driven { drive } => space.evolve_driven(spec.chi, &drive, 0.0, duration, &psi),
        _ => space.evolve_dense(&space.static_generator(spec)?, duration, &psi),
    };
    space.project(&out)
}

/// Applies a whole schedule on the full space; samples are ignored.
pub fn full_hilbert_schedule(schedule: &ProtocolSchedule, initial: &DickeState) -> Result<OracleResult> {
    let space = FullSpace::new(initial.n())?;
    let mut psi = space.embed(initial);
    for seg in &schedule.segments {
        psi = match seg {
            Segment::Quadratic { axis, chi, duration } => {
                space.evolve_dense(&(space.square(*axis) * C64::new(*chi, 0.0)), *duration, &psi)
            }
            Segment::Static { hamiltonian, duration } => {
                space.evolve_dense(&space.static_generator(hamiltonian)?, *duration, &psi)
            }
            Segment::Driven { drive, chi, t0, t1, .. } => space.evolve_driven(*chi, drive, *t0, *t1, &psi),
            Segment::Pulse { rotation, area_scale } => space.rotate(&rotation.scaled(*area_scale), &psi),
            Segment::Freeze { .. } => psi,
        };
    }
    space.project(&psi)
}
