//! Observables: squeezing parameter and direction, mean spin, Husimi Q,
//! `Jz` distribution, optimum detection and power-law fits.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::dicke::{ladder_up, DickeState};
use crate::error::{domain, Result, SqueezeError};
use crate::C64;

/// First and (symmetrized) second moments of `(Jx, Jy, Jz)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moments {
    pub mean: [f64; 3],
    /// `⟨{J_a, J_b}⟩ / 2`
    pub second: [[f64; 3]; 3],
}

impl Moments {
    pub fn covariance(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|a| std::array::from_fn(|b| self.second[a][b] - self.mean[a] * self.mean[b]))
    }
}

/// All moments in one pass over the amplitudes, from the ladder-operator
/// matrix elements.
pub fn moments(state: &DickeState) -> Moments {
    let c = state.amplitudes();
    let j = state.j();
    let mut p1 = C64::new(0.0, 0.0); // ⟨J₊⟩
    let mut p2 = C64::new(0.0, 0.0); // ⟨J₊²⟩
    let mut q = C64::new(0.0, 0.0); // ⟨{J₊, Jz}⟩
    let (mut z1, mut z2, mut s) = (0.0, 0.0, 0.0);
    let mut a_prev = 0.0;
    for k in 0..c.len() {
        let m = j - k as f64;
        let w = c[k].norm_sqr();
        z1 += m * w;
        z2 += m * m * w;
        s += 2.0 * (j * (j + 1.0) - m * m) * w;
        if k >= 1 {
            let a = ladder_up(j, m);
            let t = c[k - 1].conj() * c[k] * a;
            p1 += t;
            q += t * (2.0 * m + 1.0);
            if k >= 2 {
                p2 += c[k - 2].conj() * c[k] * (a * a_prev);
            }
            a_prev = a;
        }
    }
    let sxx = 0.25 * (s + 2.0 * p2.re);
    let syy = 0.25 * (s - 2.0 * p2.re);
    let sxy = 0.5 * p2.im;
    let sxz = 0.5 * q.re;
    let syz = 0.5 * q.im;
    Moments {
        mean: [p1.re, p1.im, z1],
        second: [[sxx, sxy, sxz], [sxy, syy, syz], [sxz, syz, z2]],
    }
}

pub fn mean_spin(state: &DickeState) -> [f64; 3] {
    moments(state).mean
}

/// Squeezing diagnostics of a state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezingReport {
    /// `ξ² = 4 var_min / N`.
    pub xi2: f64,
    /// Angle of the minimal-variance direction from `n1` toward `n2`, in `[0, π)`.
    pub theta_min: f64,
    pub mean_spin: [f64; 3],
    pub var_min: f64,
    pub var_max: f64,
    /// Perpendicular frame: `n1 = ẑ × n̂` (or `x̂` near the poles), `n2 = n̂ × n1`.
    pub n1: [f64; 3],
    pub n2: [f64; 3],
    /// Set when the perpendicular variance is isotropic; `theta_min` is then 0.
    pub isotropic: bool,
}

impl SqueezingReport {
    /// Unit vector of the squeezed direction.
    pub fn squeezed_direction(&self) -> [f64; 3] {
        let (s, c) = self.theta_min.sin_cos();
        std::array::from_fn(|i| c * self.n1[i] + s * self.n2[i])
    }

    pub fn xi2_db(&self) -> f64 {
        10.0 * self.xi2.log10()
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter().zip(&b).map(|(x, y)| x * y).sum()
}

fn normalized(a: [f64; 3]) -> [f64; 3] {
    let l = dot(a, a).sqrt();
    a.map(|v| v / l)
}

fn quad_form(m: &[[f64; 3]; 3], u: [f64; 3], v: [f64; 3]) -> f64 {
    (0..3).map(|a| (0..3).map(|b| u[a] * m[a][b] * v[b]).sum::<f64>()).sum()
}

/// Perpendicular frame for a mean-spin direction.
pub fn perpendicular_frame(direction: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let nhat = normalized(direction);
    let zc = cross([0.0, 0.0, 1.0], nhat);
    let n1 = if dot(zc, zc).sqrt() < 1e-6 { [1.0, 0.0, 0.0] } else { normalized(zc) };
    let n2 = cross(nhat, n1);
    (n1, n2)
}

pub fn squeezing_report(state: &DickeState) -> Result<SqueezingReport> {
    report_from_moments(&moments(state), state.n())
}

pub fn report_from_moments(mom: &Moments, n: usize) -> Result<SqueezingReport> {
    let j = n as f64 / 2.0;
    let len = dot(mom.mean, mom.mean).sqrt();
    if len <= 1e-9 * j {
        return Err(SqueezeError::Degenerate(format!("mean spin length {len} too small to define a direction")));
    }
    let (n1, n2) = perpendicular_frame(mom.mean);
    let cov = mom.covariance();
    let a = quad_form(&cov, n1, n1);
    let b = quad_form(&cov, n2, n2);
    let c = quad_form(&cov, n1, n2);
    let big_a = a - b;
    let big_b = 2.0 * c;
    let root = big_a.hypot(big_b);
    let var_min = 0.5 * (a + b - root);
    let var_max = 0.5 * (a + b + root);
    let isotropic = root <= 1e-9 * (a + b).abs().max(1e-300);
    let theta_min = if isotropic {
        0.0
    } else {
        (0.5 * (-big_b).atan2(-big_a)).rem_euclid(PI)
    };
    Ok(SqueezingReport {
        xi2: 4.0 * var_min / n as f64,
        theta_min,
        mean_spin: mom.mean,
        var_min,
        var_max,
        n1,
        n2,
        isotropic,
    })
}

/// Populations of the `Jz` eigenstates with their mean and variance.
#[derive(Clone, Debug, PartialEq)]
pub struct MDistribution {
    /// `m` values in descending order.
    pub m: Vec<f64>,
    pub p: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
}

pub fn m_distribution(state: &DickeState) -> MDistribution {
    let m: Vec<f64> = (0..state.dim()).map(|k| state.m_of(k)).collect();
    let p: Vec<f64> = state.amplitudes().iter().map(|c| c.norm_sqr()).collect();
    let mean: f64 = m.iter().zip(&p).map(|(m, p)| m * p).sum();
    let variance = m.iter().zip(&p).map(|(m, p)| (m - mean).powi(2) * p).sum();
    MDistribution { m, p, mean, variance }
}

/// `ln C(n, k)` for all `k`.
fn log_binomials(n: usize) -> Vec<f64> {
    let mut log_fact = vec![0.0; n + 1];
    for i in 1..=n {
        log_fact[i] = log_fact[i - 1] + (i as f64).ln();
    }
    (0..=n).map(|k| log_fact[n] - log_fact[k] - log_fact[n - k]).collect()
}

/// Real CSS amplitudes `d^j_{m,j}(θ)` in descending `m`; the azimuth enters as
/// `e^{-imφ}`.
fn css_profile(n: usize, theta: f64, log_binom: &[f64]) -> Vec<f64> {
    let (s, c) = (0.5 * theta).sin_cos();
    let (ls, lc) = (s.abs().ln(), c.abs().ln());
    let (ss, sc) = (s.signum(), c.signum());
    (0..=n)
        .map(|k| {
            // exponents: j + m = n - k on cos, j - m = k on sin
            let pc = (n - k) as f64;
            let ps = k as f64;
            let lg = 0.5 * log_binom[k] + if pc > 0.0 { pc * lc } else { 0.0 } + if ps > 0.0 { ps * ls } else { 0.0 };
            let sign = if (n - k) % 2 == 1 && sc < 0.0 { -1.0 } else { 1.0 } * if k % 2 == 1 && ss < 0.0 { -1.0 } else { 1.0 };
            sign * lg.exp()
        })
        .collect()
}

/// `Q(θ, φ) = |⟨θ, φ|ψ⟩|²` at a single point.
pub fn husimi_at(state: &DickeState, theta: f64, phi: f64) -> f64 {
    let n = state.n();
    let j = state.j();
    let prof = css_profile(n, theta, &log_binomials(n));
    let amp: C64 = state
        .amplitudes()
        .iter()
        .zip(&prof)
        .enumerate()
        .map(|(k, (c, b))| c * C64::from_polar(*b, (j - k as f64) * phi))
        .sum();
    amp.norm_sqr()
}

/// Husimi field on a regular grid: `θ_i = (i + ½)π/n_θ`, `φ_k = 2πk/n_φ`,
/// stored row-major with θ outer.
#[derive(Clone, Debug, PartialEq)]
pub struct HusimiGrid {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    pub values: Vec<f64>,
    pub n: usize,
}

impl HusimiGrid {
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.phis.len() + k]
    }

    /// `(2j+1)/(4π) ∫ Q dΩ`, which is 1 for any normalized state.
    pub fn normalization(&self) -> f64 {
        let dt = PI / self.thetas.len() as f64;
        let dp = 2.0 * PI / self.phis.len() as f64;
        let mut total = 0.0;
        for (i, th) in self.thetas.iter().enumerate() {
            let row: f64 = (0..self.phis.len()).map(|k| self.get(i, k)).sum();
            total += row * th.sin();
        }
        total * dt * dp * (self.n as f64 + 1.0) / (4.0 * PI)
    }

    /// Grid point of the maximum.
    pub fn argmax(&self) -> (f64, f64) {
        let (idx, _) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
        let np = self.phis.len();
        (self.thetas[idx / np], self.phis[idx % np])
    }

    /// Minor axis of the Q distribution in the plane perpendicular to
    /// `direction`, measured like [`SqueezingReport::theta_min`].
    pub fn anisotropy_angle(&self, direction: [f64; 3]) -> f64 {
        let nhat = normalized(direction);
        let (n1, n2) = perpendicular_frame(nhat);
        let (mut w, mut s1, mut s2, mut s11, mut s22, mut s12) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        for (i, th) in self.thetas.iter().enumerate() {
            let (st, ct) = th.sin_cos();
            for (k, ph) in self.phis.iter().enumerate() {
                let (sp, cp) = ph.sin_cos();
                let u = [st * cp, st * sp, ct];
                if dot(u, nhat) <= 0.0 {
                    continue;
                }
                let q = self.get(i, k) * st;
                let (a, b) = (dot(u, n1), dot(u, n2));
                w += q;
                s1 += q * a;
                s2 += q * b;
                s11 += q * a * a;
                s22 += q * b * b;
                s12 += q * a * b;
            }
        }
        let (m1, m2) = (s1 / w, s2 / w);
        let c11 = s11 / w - m1 * m1;
        let c22 = s22 / w - m2 * m2;
        let c12 = s12 / w - m1 * m2;
        (0.5 * (-2.0 * c12).atan2(-(c11 - c22))).rem_euclid(PI)
    }
}

pub fn husimi_q(state: &DickeState, theta_count: usize, phi_count: usize) -> Result<HusimiGrid> {
    if theta_count < 16 || phi_count < 32 {
        return domain(format!("Husimi grid {theta_count}x{phi_count} is below the 16x32 minimum"));
    }
    let n = state.n();
    let j = state.j();
    let log_binom = log_binomials(n);
    let thetas: Vec<f64> = (0..theta_count).map(|i| (i as f64 + 0.5) * PI / theta_count as f64).collect();
    let phis: Vec<f64> = (0..phi_count).map(|k| 2.0 * PI * k as f64 / phi_count as f64).collect();
    let amps = state.amplitudes();
    let mut values = Vec::with_capacity(theta_count * phi_count);
    for &th in &thetas {
        let prof = css_profile(n, th, &log_binom);
        let weighted: Vec<C64> = amps.iter().zip(&prof).map(|(c, b)| c * *b).collect();
        for &ph in &phis {
            let step = C64::from_polar(1.0, ph);
            // Σ_k w_k e^{i m_k φ}, m_k = j - k; Horner in e^{-iφ}
            let mut acc = C64::new(0.0, 0.0);
            let back = step.conj();
            for w in weighted.iter().rev() {
                acc = acc * back + w;
            }
            let lead = C64::from_polar(1.0, j * ph);
            values.push((acc * lead).norm_sqr().min(1.0));
        }
    }
    Ok(HusimiGrid { thetas, phis, values, n })
}

/// Minimum of a sampled curve with parabolic refinement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub chi_t: f64,
    pub xi2: f64,
    /// The sampled minimum sits on the edge of the window; no refinement done.
    pub at_boundary: bool,
}

/// Vertex of the parabola through three points.
pub fn parabolic_vertex(p0: (f64, f64), p1: (f64, f64), p2: (f64, f64)) -> (f64, f64) {
    let (x0, y0) = p0;
    let (x1, y1) = p1;
    let (x2, y2) = p2;
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let a = (d12 - d01) / (x2 - x0);
    if a <= 0.0 {
        return p1;
    }
    let b = d01 - a * (x0 + x1);
    let xv = -b / (2.0 * a);
    let yv = y0 + (xv - x0) * (d01 + a * (xv - x1));
    (xv, yv)
}

pub fn find_optimum(record: &RunRecord, window: (f64, f64)) -> Result<Optimum> {
    let pts: Vec<(f64, f64)> = record
        .samples
        .iter()
        .filter(|s| s.chi_t >= window.0 && s.chi_t <= window.1)
        .map(|s| (s.chi_t, s.report.xi2))
        .collect();
    optimum_of_points(&pts)
}

pub fn optimum_of_points(pts: &[(f64, f64)]) -> Result<Optimum> {
    if pts.len() < 3 {
        return domain(format!("need at least 3 samples in the window, got {}", pts.len()));
    }
    let (i, _) = pts
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, p)| if p.1 < acc.1 { (i, p.1) } else { acc });
    if i == 0 || i == pts.len() - 1 {
        return Ok(Optimum { chi_t: pts[i].0, xi2: pts[i].1, at_boundary: true });
    }
    let (x, y) = parabolic_vertex(pts[i - 1], pts[i], pts[i + 1]);
    Ok(Optimum { chi_t: x, xi2: y, at_boundary: false })
}

/// Least-squares power law `ξ² ≈ prefactor · N^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub exponent: f64,
    pub prefactor: f64,
    /// RMS residual of the fit in natural-log space.
    pub residual: f64,
}

pub fn scaling_fit(points: &[(f64, f64)]) -> Result<ScalingFit> {
    let mut distinct: Vec<f64> = points.iter().map(|p| p.0).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return domain(format!("need at least 3 distinct N, got {}", distinct.len()));
    }
    if points.iter().any(|&(n, y)| !(n > 0.0 && y > 0.0)) {
        return domain("scaling fit needs positive N and xi2");
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - icpt - slope * x).powi(2)).sum();
    Ok(ScalingFit { exponent: slope, prefactor: icpt.exp(), residual: (rss / k).sqrt() })
}

/// Provenance attached to a run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RecordParams {
    #[serde(rename = "N")]
    pub n: usize,
    pub chi: f64,
    pub schedule_digest: String,
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub chi_t: f64,
    pub report: SqueezingReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum RunEvent {
    Freeze { chi_t: f64 },
    Note { text: String },
    Renormalized { chi_t: f64, drift: f64 },
}

/// Time series of diagnostics with provenance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub params: RecordParams,
    pub samples: Vec<Sample>,
    pub events: Vec<RunEvent>,
}

impl RunRecord {
    pub fn new(params: RecordParams) -> Self {
        Self { params, samples: Vec::new(), events: Vec::new() }
    }

    /// Appends a sample; times must increase strictly.
    pub fn push(&mut self, chi_t: f64, report: SqueezingReport) -> Result<()> {
        if let Some(last) = self.samples.last() {
            if chi_t <= last.chi_t {
                return domain(format!("sample time {chi_t} does not follow {}", last.chi_t));
            }
        }
        self.samples.push(Sample { chi_t, report });
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.chi_t).collect()
    }

    pub fn xi2(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.report.xi2).collect()
    }

    /// Smallest sampled `ξ²` with its time.
    pub fn min_sample(&self) -> Option<(f64, f64)> {
        self.samples
            .iter()
            .map(|s| (s.chi_t, s.report.xi2))
            .fold(None, |acc: Option<(f64, f64)>, p| match acc {
                Some(a) if a.1 <= p.1 => Some(a),
                _ => Some(p),
            })
    }

    pub fn freeze_time(&self) -> Option<f64> {
        self.events.iter().find_map(|e| match e {
            RunEvent::Freeze { chi_t } => Some(*chi_t),
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dicke::{make_css, make_dicke_state, pair_moment, rotate, RotationSpec, SpinKind, SpinOperator};
    use crate::propagator::evolve_quadratic_diagonal;
    use std::f64::consts::FRAC_PI_2;

    fn squeezed(n: usize) -> DickeState {
        let x = make_css(n, FRAC_PI_2, 0.0).unwrap();
        evolve_quadratic_diagonal(&x, 1.0, 0.3 / n as f64).unwrap()
    }

    #[test]
    fn moments_match_operator_products() {
        let s = rotate(&squeezed(9), &RotationSpec::new([0.6, 0.0, 0.8], 0.7).unwrap()).unwrap();
        let mom = moments(&s);
        let ops = [SpinKind::Jx, SpinKind::Jy, SpinKind::Jz].map(|k| SpinOperator::new(9, k));
        for a in 0..3 {
            let ea = crate::dicke::expectation(&s, &ops[a]).unwrap();
            assert!((mom.mean[a] - ea).abs() < 1e-12);
            for b in 0..3 {
                let ab = pair_moment(&s, &ops[a], &ops[b]).unwrap();
                let ba = pair_moment(&s, &ops[b], &ops[a]).unwrap();
                assert!((mom.second[a][b] - 0.5 * (ab + ba).re).abs() < 1e-11);
            }
        }
        let cas = mom.second[0][0] + mom.second[1][1] + mom.second[2][2];
        assert!((cas - 4.5 * 5.5).abs() < 1e-10);
    }

    #[test]
    fn css_has_unit_xi2() {
        for n in [1, 2, 100, 1250] {
            for (th, ph) in [(0.0, 0.0), (FRAC_PI_2, 0.0), (1.1, 2.3), (3.0, 5.0)] {
                let r = squeezing_report(&make_css(n, th, ph).unwrap()).unwrap();
                assert!((r.xi2 - 1.0).abs() < 1e-9, "n={n}: {}", r.xi2);
                assert!(r.isotropic);
                assert_eq!(r.theta_min, 0.0);
            }
        }
    }

    #[test]
    fn report_fields_are_consistent() {
        let s = squeezed(40);
        let r = squeezing_report(&s).unwrap();
        assert!(r.xi2 < 1.0 && r.var_min <= r.var_max);
        assert!((r.xi2 - 4.0 * r.var_min / 40.0).abs() < 1e-12);
        let mom = moments(&s);
        let cov = mom.covariance();
        let trace = quad_form(&cov, r.n1, r.n1) + quad_form(&cov, r.n2, r.n2);
        assert!((r.var_min + r.var_max - trace).abs() < 1e-10);
        let d = r.squeezed_direction();
        assert!((quad_form(&cov, d, d) - r.var_min).abs() < 1e-9);
    }

    #[test]
    fn degenerate_mean_spin_is_an_error() {
        let s = make_dicke_state(4, 0.0).unwrap();
        assert!(matches!(squeezing_report(&s), Err(SqueezeError::Degenerate(_))));
    }

    #[test]
    fn mean_spin_examples() {
        assert_eq!(mean_spin(&make_dicke_state(6, 3.0).unwrap()), [0.0, 0.0, 3.0]);
        let x = make_css(6, FRAC_PI_2, 0.0).unwrap();
        let m = mean_spin(&x);
        assert!((m[0] - 3.0).abs() < 1e-12 && m[1].abs() < 1e-12 && m[2].abs() < 1e-12);
        let r = rotate(&make_dicke_state(6, 3.0).unwrap(), &RotationSpec::about_y(0.9057)).unwrap();
        let m = mean_spin(&r);
        let want = [3.0 * 0.9057f64.sin(), 0.0, 3.0 * 0.9057f64.cos()];
        for i in 0..3 {
            assert!((m[i] - want[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn m_distribution_examples() {
        let d = m_distribution(&make_dicke_state(4, 1.0).unwrap());
        assert_eq!(d.p, vec![0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(d.mean, 1.0);
        let d = m_distribution(&make_css(2, FRAC_PI_2, 0.0).unwrap());
        for (p, w) in d.p.iter().zip([0.25, 0.5, 0.25]) {
            assert!((p - w).abs() < 1e-14);
        }
        assert!((d.p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn css_profile_matches_rotation_construction() {
        for n in [1, 4, 31] {
            let lb = log_binomials(n);
            for (th, ph) in [(0.4, 0.0), (2.0, 1.0), (PI - 1e-3, 4.0)] {
                let css = make_css(n, th, ph).unwrap();
                let prof = css_profile(n, th, &lb);
                for (k, (a, b)) in css.amplitudes().iter().zip(&prof).enumerate() {
                    let m = n as f64 / 2.0 - k as f64;
                    let want = C64::from_polar(*b, -m * ph);
                    assert!((a - want).norm() < 1e-12, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn husimi_examples() {
        let n = 20;
        let (th0, ph0) = (1.2, 0.7);
        let css = make_css(n, th0, ph0).unwrap();
        assert!((husimi_at(&css, th0, ph0) - 1.0).abs() < 1e-12);
        assert!(husimi_at(&css, PI - th0, ph0 + PI) < 1e-15);
        let grid = husimi_q(&css, 64, 128).unwrap();
        assert!(grid.values.iter().all(|&q| (0.0..=1.0).contains(&q)));
        let (th, ph) = grid.argmax();
        assert!((th - th0).abs() <= PI / 64.0 && (ph - ph0).abs() <= 2.0 * PI / 128.0);
        assert!(husimi_q(&css, 8, 128).is_err());
    }

    #[test]
    fn husimi_normalizes() {
        let g = husimi_q(&squeezed(50), 128, 256).unwrap();
        assert!((g.normalization() - 1.0).abs() < 1e-3, "{}", g.normalization());
    }

    #[test]
    fn optimum_of_exact_parabola() {
        let mut rec = RunRecord::default();
        let r = squeezing_report(&make_css(2, 1.0, 0.0).unwrap()).unwrap();
        for i in 0..20 {
            let t = 0.1 * i as f64 + 0.013 * (i % 3) as f64;
            let mut rr = r;
            rr.xi2 = 2.0 * (t - 0.737).powi(2) + 0.25;
            rec.push(t, rr).unwrap();
        }
        let o = find_optimum(&rec, (0.0, 10.0)).unwrap();
        assert!(!o.at_boundary);
        assert!((o.chi_t - 0.737).abs() < 1e-9 && (o.xi2 - 0.25).abs() < 1e-9);
        let o = find_optimum(&rec, (1.0, 2.0)).unwrap();
        assert!(o.at_boundary && (o.chi_t - 1.0).abs() < 0.05);
        assert!(find_optimum(&rec, (0.0, 0.15)).is_err());
        assert!(rec.push(0.5, r).is_err());
    }

    #[test]
    fn scaling_of_exact_power_law() {
        let pts: Vec<(f64, f64)> = [100.0, 200.0, 400.0, 800.0].iter().map(|&n| (n, 3.0 / n)).collect();
        let fit = scaling_fit(&pts).unwrap();
        assert!((fit.exponent + 1.0).abs() < 1e-12);
        assert!((fit.prefactor - 3.0).abs() < 1e-10);
        assert!(fit.residual < 1e-12);
        assert!(scaling_fit(&pts[..2]).is_err());
        assert!(scaling_fit(&[(10.0, 1.0), (10.0, 2.0), (20.0, 1.0)]).is_err());
    }
}
