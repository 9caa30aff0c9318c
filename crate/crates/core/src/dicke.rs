//! Dicke-basis states, collective spin operators and exact rotations.
//!
//! A state of `N` spin-1/2 particles in the exchange-symmetric sector lives in
//! the `N + 1` dimensional space spanned by `|j, m⟩`, `j = N/2`. Amplitudes are
//! stored in descending `m`: index `k` holds `m = j - k`, so `|j, j⟩` (all spins
//! up) is index 0.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::bessel::chebyshev_exp_coefficients;
use crate::linalg::{self, Banded};
use crate::C64;

/// Tolerance on `Σ|c_m|²` for states accepted from outside.
const NORM_TOL: f64 = 1e-10;

/// Pure state in the symmetric subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct DickeState {
    n: usize,
    amps: Vec<C64>,
}

impl DickeState {
    /// Wraps amplitudes for `n` particles, rejecting wrong lengths or norms.
    pub fn from_amplitudes(n: usize, amps: Vec<C64>) -> Result<Self> {
        check_particle_count(n)?;
        if amps.len() != n + 1 {
            return domain(format!("expected {} amplitudes for N = {n}, got {}", n + 1, amps.len()));
        }
        let norm = linalg::norm_sqr(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return domain(format!("state norm {norm} differs from 1"));
        }
        Ok(Self { n, amps })
    }

    /// Propagators produce unit vectors up to rounding; skip the check.
    pub(crate) fn from_raw(n: usize, amps: Vec<C64>) -> Self {
        debug_assert_eq!(amps.len(), n + 1);
        Self { n, amps }
    }

    /// Particle number `N = 2j`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j(&self) -> f64 {
        self.n as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    /// Magnetic quantum number of basis index `k`.
    pub fn m_of(&self, k: usize) -> f64 {
        self.j() - k as f64
    }

    pub fn norm_sqr(&self) -> f64 {
        linalg::norm_sqr(&self.amps)
    }

    pub fn inner(&self, other: &DickeState) -> C64 {
        linalg::inner(&self.amps, &other.amps)
    }

    /// Phase-insensitive overlap `|⟨self|other⟩|`.
    pub fn fidelity(&self, other: &DickeState) -> f64 {
        self.inner(other).norm()
    }

    pub fn renormalize(&mut self) {
        let s = self.norm_sqr().sqrt();
        self.amps.iter_mut().for_each(|v| *v /= s);
    }

    /// JSON snapshot (`basis = "Jz-descending"`).
    pub fn to_snapshot(&self) -> StateSnapshot {
        StateSnapshot {
            n: self.n,
            j: self.j(),
            basis: SNAPSHOT_BASIS.to_string(),
            amplitudes: self.amps.iter().map(|v| [v.re, v.im]).collect(),
        }
    }

    pub fn from_snapshot(snap: &StateSnapshot) -> Result<Self> {
        if snap.basis != SNAPSHOT_BASIS {
            return domain(format!("unsupported basis {:?}", snap.basis));
        }
        if snap.j != snap.n as f64 / 2.0 {
            return domain(format!("j = {} inconsistent with N = {}", snap.j, snap.n));
        }
        let amps = snap.amplitudes.iter().map(|&[re, im]| C64::new(re, im)).collect();
        Self::from_amplitudes(snap.n, amps)
    }
}

pub const SNAPSHOT_BASIS: &str = "Jz-descending";

/// On-disk form of a [`DickeState`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSnapshot {
    #[serde(rename = "N")]
    pub n: usize,
    pub j: f64,
    pub basis: String,
    pub amplitudes: Vec<[f64; 2]>,
}

fn check_particle_count(n: usize) -> Result<()> {
    if n == 0 {
        return domain("particle number must be positive");
    }
    Ok(())
}

/// `|j, m⟩` for `N = 2j` particles.
pub fn make_dicke_state(n: usize, m: f64) -> Result<DickeState> {
    check_particle_count(n)?;
    let j = n as f64 / 2.0;
    let k = j - m;
    if !(m.is_finite() && (-j..=j).contains(&m) && k.fract() == 0.0) {
        return domain(format!("m = {m} is not a valid projection for j = {j}"));
    }
    let mut amps = vec![C64::new(0.0, 0.0); n + 1];
    amps[k as usize] = C64::new(1.0, 0.0);
    Ok(DickeState { n, amps })
}

/// Coherent spin state pointing along `(θ, φ)`: `R_z(φ) R_y(θ) |j, j⟩`.
pub fn make_css(n: usize, theta: f64, phi: f64) -> Result<DickeState> {
    if !(theta.is_finite() && phi.is_finite()) {
        return domain("CSS angles must be finite");
    }
    let north = make_dicke_state(n, n as f64 / 2.0)?;
    let tilted = rotate(&north, &RotationSpec::about_y(theta))?;
    rotate(&tilted, &RotationSpec::about_z(phi))
}

/// Coordinate axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn unit(self) -> [f64; 3] {
        match self {
            Axis::X => [1.0, 0.0, 0.0],
            Axis::Y => [0.0, 1.0, 0.0],
            Axis::Z => [0.0, 0.0, 1.0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinKind {
    Jx,
    Jy,
    Jz,
    Jplus,
    Jminus,
}

impl SpinKind {
    pub fn is_hermitian(self) -> bool {
        matches!(self, SpinKind::Jx | SpinKind::Jy | SpinKind::Jz)
    }
}

/// `√(j(j+1) - m(m+1))`, the `J₊` matrix element `⟨m+1|J₊|m⟩`.
pub(crate) fn ladder_up(j: f64, m: f64) -> f64 {
    ((j - m) * (j + m + 1.0)).max(0.0).sqrt()
}

/// Collective spin component for `N` particles, in tridiagonal storage.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinOperator {
    n: usize,
    kind: SpinKind,
    matrix: Banded,
}

impl SpinOperator {
    pub fn new(n: usize, kind: SpinKind) -> Self {
        let dim = n + 1;
        let j = n as f64 / 2.0;
        let mut mat = Banded::zeros(dim, 1);
        let zero = C64::new(0.0, 0.0);
        for k in 0..dim {
            let m = j - k as f64;
            if kind == SpinKind::Jz {
                mat.set(k, k, C64::new(m, 0.0));
            }
            if k + 1 < dim {
                // row k is m, column k+1 is m-1; J₊|m-1⟩ = a|m⟩
                let a = ladder_up(j, m - 1.0);
                let (upper, lower) = match kind {
                    SpinKind::Jz => (zero, zero),
                    SpinKind::Jplus => (C64::new(a, 0.0), zero),
                    SpinKind::Jminus => (zero, C64::new(a, 0.0)),
                    SpinKind::Jx => (C64::new(0.5 * a, 0.0), C64::new(0.5 * a, 0.0)),
                    SpinKind::Jy => (C64::new(0.0, -0.5 * a), C64::new(0.0, 0.5 * a)),
                };
                mat.set(k, k + 1, upper);
                mat.set(k + 1, k, lower);
            }
        }
        Self { n, kind, matrix: mat }
    }

    pub fn kind(&self) -> SpinKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Banded {
        &self.matrix
    }

    pub fn apply(&self, state: &DickeState) -> Result<Vec<C64>> {
        self.check(state)?;
        Ok(self.matrix.matvec(state.amplitudes()))
    }

    fn check(&self, state: &DickeState) -> Result<()> {
        if state.n() != self.n {
            return domain(format!("operator for N = {} applied to state with N = {}", self.n, state.n()));
        }
        Ok(())
    }
}

/// `J_a J_b` as a pentadiagonal matrix.
pub fn quadratic(n: usize, axis: Axis) -> Banded {
    let op = component(n, axis);
    op.matrix().mul(op.matrix())
}

pub fn component(n: usize, axis: Axis) -> SpinOperator {
    let kind = match axis {
        Axis::X => SpinKind::Jx,
        Axis::Y => SpinKind::Jy,
        Axis::Z => SpinKind::Jz,
    };
    SpinOperator::new(n, kind)
}

/// `n̂ · J` for a (not necessarily unit) direction.
pub fn directed_component(n: usize, dir: [f64; 3]) -> Banded {
    let mut g = Banded::zeros(n + 1, 1);
    for (axis, w) in [Axis::X, Axis::Y, Axis::Z].into_iter().zip(dir) {
        if w != 0.0 {
            g = g.axpy(C64::new(w, 0.0), component(n, axis).matrix());
        }
    }
    g
}

/// `⟨ψ|A|ψ⟩` for Hermitian components.
pub fn expectation(state: &DickeState, op: &SpinOperator) -> Result<f64> {
    if !op.kind().is_hermitian() {
        return domain(format!("{:?} is not Hermitian; use expectation_complex", op.kind()));
    }
    Ok(expectation_complex(state, op)?.re)
}

pub fn expectation_complex(state: &DickeState, op: &SpinOperator) -> Result<C64> {
    let v = op.apply(state)?;
    Ok(linalg::inner(state.amplitudes(), &v))
}

/// `⟨ψ|A B|ψ⟩`.
pub fn pair_moment(state: &DickeState, a: &SpinOperator, b: &SpinOperator) -> Result<C64> {
    a.check(state)?;
    let bv = b.apply(state)?;
    let av = a.matrix().matvec(&bv);
    Ok(linalg::inner(state.amplitudes(), &av))
}

/// Rotation by `angle` (right-handed) about a unit `axis`, acting as
/// `exp(-i angle axis·J)` on states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationSpec {
    axis: [f64; 3],
    angle: f64,
}

impl RotationSpec {
    pub fn new(axis: [f64; 3], angle: f64) -> Result<Self> {
        let len = axis.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (len - 1.0).abs() > 1e-12 {
            return domain(format!("rotation axis {axis:?} has length {len}, expected 1"));
        }
        if !angle.is_finite() {
            return domain("rotation angle must be finite");
        }
        Ok(Self { axis, angle })
    }

    pub fn about(axis: Axis, angle: f64) -> Self {
        Self { axis: axis.unit(), angle }
    }

    pub fn about_x(angle: f64) -> Self {
        Self::about(Axis::X, angle)
    }

    pub fn about_y(angle: f64) -> Self {
        Self::about(Axis::Y, angle)
    }

    pub fn about_z(angle: f64) -> Self {
        Self::about(Axis::Z, angle)
    }

    /// Rotation about `-x`, the freeze pulse direction.
    pub fn about_neg_x(angle: f64) -> Self {
        Self { axis: [-1.0, 0.0, 0.0], angle }
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn with_angle(&self, angle: f64) -> Self {
        Self { axis: self.axis, angle }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.with_angle(self.angle * factor)
    }

    fn quaternion(&self) -> [f64; 4] {
        let (s, c) = (0.5 * self.angle).sin_cos();
        [c, s * self.axis[0], s * self.axis[1], s * self.axis[2]]
    }

    fn from_quaternion(q: [f64; 4]) -> Self {
        let v = (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
        if v < 1e-300 {
            return Self::about_z(0.0);
        }
        let angle = 2.0 * v.atan2(q[0]);
        Self { axis: [q[1] / v, q[2] / v, q[3] / v], angle }
    }

    /// The rotation that applies `self` first and `then` second.
    pub fn followed_by(&self, then: &RotationSpec) -> RotationSpec {
        let a = then.quaternion();
        let b = self.quaternion();
        let q = [
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
        ];
        Self::from_quaternion(q)
    }

    /// Classical action on a 3-vector (Rodrigues).
    pub fn rotate_vector(&self, v: [f64; 3]) -> [f64; 3] {
        let k = self.axis;
        let (s, c) = self.angle.sin_cos();
        let cross = [k[1] * v[2] - k[2] * v[1], k[2] * v[0] - k[0] * v[2], k[0] * v[1] - k[1] * v[0]];
        let dot = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
        std::array::from_fn(|i| v[i] * c + cross[i] * s + k[i] * dot * (1.0 - c))
    }

    fn is_about_z(&self) -> bool {
        self.axis[0] == 0.0 && self.axis[1] == 0.0
    }
}

/// `exp(-i angle axis·J) ψ`.
///
/// Rotations about z are diagonal phases; any other axis is applied through a
/// Chebyshev expansion of the tridiagonal generator, whose spectrum is exactly
/// `[-j, j]`.
pub fn rotate(state: &DickeState, rot: &RotationSpec) -> Result<DickeState> {
    RotationSpec::new(rot.axis, rot.angle)?;
    let n = state.n();
    let j = state.j();
    if rot.is_about_z() {
        let w = rot.angle * rot.axis[2];
        let amps = state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(k, c)| c * C64::from_polar(1.0, -w * (j - k as f64)))
            .collect();
        return Ok(DickeState::from_raw(n, amps));
    }
    if rot.axis[0] == 0.0 && rot.axis[2] == 0.0 {
        let amps = YRotation::new(n).apply(state.amplitudes(), rot.angle * rot.axis[1]);
        return Ok(DickeState::from_raw(n, amps));
    }
    let gen = directed_component(n, rot.axis);
    Ok(rotate_with_generator(state, &gen, rot.angle))
}

/// `exp(-iθJy)` in real arithmetic.
///
/// `K = -iJy` is real and antisymmetric, so the Chebyshev vectors
/// `U_k = (-i)^k T_k(Jy/j) ψ` obey `U_{k+1} = 2(K/j)U_k + U_{k-1}` and only
/// need real multipliers.
#[derive(Clone, Debug)]
pub(crate) struct YRotation {
    /// `b_k / (2j)` where `b_k` couples indices `k` and `k + 1`
    coupling: Vec<f64>,
    j: f64,
}

impl YRotation {
    pub(crate) fn new(n: usize) -> Self {
        let j = n as f64 / 2.0;
        let coupling = (0..n).map(|k| ladder_up(j, j - k as f64 - 1.0) / (2.0 * j)).collect();
        Self { coupling, j }
    }

    /// `out = (K/j) x`
    fn apply_k(&self, x: &[C64], out: &mut [C64]) {
        let dim = x.len();
        for k in 0..dim {
            let mut v = C64::new(0.0, 0.0);
            if k + 1 < dim {
                v -= x[k + 1] * self.coupling[k];
            }
            if k > 0 {
                v += x[k - 1] * self.coupling[k - 1];
            }
            out[k] = v;
        }
    }

    pub(crate) fn apply(&self, psi: &[C64], angle: f64) -> Vec<C64> {
        if angle == 0.0 || self.coupling.is_empty() {
            return psi.to_vec();
        }
        let coeffs = chebyshev_exp_coefficients(angle * self.j, linalg::CHEBYSHEV_TOL);
        let dim = psi.len();
        let mut acc: Vec<C64> = psi.iter().map(|v| v * coeffs[0]).collect();
        let mut prev = psi.to_vec();
        let mut cur = vec![C64::new(0.0, 0.0); dim];
        self.apply_k(&prev, &mut cur);
        let mut scratch = vec![C64::new(0.0, 0.0); dim];
        for (i, &ck) in coeffs.iter().enumerate().skip(1) {
            if i > 1 {
                self.apply_k(&cur, &mut scratch);
                for (p, s) in prev.iter_mut().zip(&scratch) {
                    *p = s * 2.0 + *p;
                }
                std::mem::swap(&mut prev, &mut cur);
            }
            let c = 2.0 * ck;
            for (a, v) in acc.iter_mut().zip(&cur) {
                *a += v * c;
            }
        }
        acc
    }
}

/// Rotation with a prebuilt `n̂·J` generator; used on hot paths.
pub(crate) fn rotate_with_generator(state: &DickeState, gen: &Banded, angle: f64) -> DickeState {
    let j = state.j();
    let amps = linalg::expm_apply(gen, angle, state.amplitudes(), (-j, j));
    DickeState::from_raw(state.n(), amps)
}
