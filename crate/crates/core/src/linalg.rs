//! Banded complex matrices and Chebyshev-series propagation.
//!
//! Every generator in the Dicke basis is at most pentadiagonal, so all
//! propagation reduces to repeated banded matrix-vector products.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::bessel::chebyshev_exp_coefficients;

/// Truncation threshold on the Chebyshev coefficients `|J_k|`.
pub const CHEBYSHEV_TOL: f64 = 1e-17;

/// Square matrix stored by diagonals, `offset ∈ [-hbw, hbw]`.
///
/// `bands[hbw + d][i]` holds entry `(i, i + d)`; slots that fall outside the
/// matrix are kept at zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Banded {
    dim: usize,
    hbw: usize,
    bands: Vec<Vec<C64>>,
}

impl Banded {
    pub fn zeros(dim: usize, hbw: usize) -> Self {
        Self { dim, hbw, bands: vec![vec![C64::new(0.0, 0.0); dim]; 2 * hbw + 1] }
    }

    pub fn from_diagonal(diag: Vec<C64>) -> Self {
        let dim = diag.len();
        Self { dim, hbw: 0, bands: vec![diag] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(vec![C64::new(1.0, 0.0); dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_bandwidth(&self) -> usize {
        self.hbw
    }

    fn in_range(&self, i: usize, d: isize) -> bool {
        let k = i as isize + d;
        k >= 0 && (k as usize) < self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        let d = col as isize - row as isize;
        if d.unsigned_abs() > self.hbw {
            return C64::new(0.0, 0.0);
        }
        self.bands[(self.hbw as isize + d) as usize][row]
    }

    /// Panics if `(row, col)` lies outside the band.
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        let d = col as isize - row as isize;
        assert!(d.unsigned_abs() <= self.hbw, "entry ({row}, {col}) outside band");
        self.bands[(self.hbw as isize + d) as usize][row] = value;
    }

    fn widened(&self, hbw: usize) -> Self {
        let mut out = Self::zeros(self.dim, hbw);
        for (b, band) in self.bands.iter().enumerate() {
            out.bands[hbw - self.hbw + b].clone_from(band);
        }
        out
    }

    pub fn add(&self, other: &Banded) -> Banded {
        self.axpy(C64::new(1.0, 0.0), other)
    }

    pub fn sub(&self, other: &Banded) -> Banded {
        self.axpy(C64::new(-1.0, 0.0), other)
    }

    /// `self + a · other`.
    pub fn axpy(&self, a: C64, other: &Banded) -> Banded {
        assert_eq!(self.dim, other.dim);
        let hbw = self.hbw.max(other.hbw);
        let mut out = self.widened(hbw);
        let shift = hbw - other.hbw;
        for (b, band) in other.bands.iter().enumerate() {
            for (o, v) in out.bands[shift + b].iter_mut().zip(band) {
                *o += a * v;
            }
        }
        out
    }

    pub fn scale(&self, a: C64) -> Banded {
        let mut out = self.clone();
        for band in out.bands.iter_mut() {
            for v in band.iter_mut() {
                *v *= a;
            }
        }
        out
    }

    pub fn scale_real(&self, a: f64) -> Banded {
        self.scale(C64::new(a, 0.0))
    }

    /// Matrix product; the bandwidths add.
    pub fn mul(&self, other: &Banded) -> Banded {
        assert_eq!(self.dim, other.dim);
        let hbw = (self.hbw + other.hbw).min(self.dim.saturating_sub(1));
        let mut out = Banded::zeros(self.dim, hbw);
        let (ha, hb) = (self.hbw as isize, other.hbw as isize);
        for i in 0..self.dim {
            for da in -ha..=ha {
                if !self.in_range(i, da) {
                    continue;
                }
                let k = (i as isize + da) as usize;
                let a = self.bands[(ha + da) as usize][i];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for db in -hb..=hb {
                    if !other.in_range(k, db) {
                        continue;
                    }
                    let col = (k as isize + db) as usize;
                    let b = other.bands[(hb + db) as usize][k];
                    let d = da + db;
                    out.bands[(hbw as isize + d) as usize][i] += a * b;
                    debug_assert_eq!(col as isize - i as isize, d);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Banded {
        let mut out = Banded::zeros(self.dim, self.hbw);
        for i in 0..self.dim {
            for d in -(self.hbw as isize)..=(self.hbw as isize) {
                if self.in_range(i, d) {
                    let k = (i as isize + d) as usize;
                    out.set(k, i, self.get(i, k).conj());
                }
            }
        }
        out
    }

    /// Largest entrywise `|A - A†|`.
    pub fn hermitian_residue(&self) -> f64 {
        let adj = self.adjoint();
        self.sub(&adj).max_abs()
    }

    pub fn max_abs(&self) -> f64 {
        self.bands.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![C64::new(0.0, 0.0); self.dim];
        self.matvec_into(x, &mut y);
        y
    }

    pub fn matvec_into(&self, x: &[C64], y: &mut [C64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        let n = self.dim;
        for (b, band) in self.bands.iter().enumerate() {
            let d = b as isize - self.hbw as isize;
            if d >= 0 {
                let d = d as usize;
                if d >= n {
                    continue;
                }
                for ((yi, a), xk) in y[..n - d].iter_mut().zip(&band[..n - d]).zip(&x[d..]) {
                    *yi += a * xk;
                }
            } else {
                let d = (-d) as usize;
                if d >= n {
                    continue;
                }
                for ((yi, a), xk) in y[d..].iter_mut().zip(&band[d..]).zip(&x[..n - d]) {
                    *yi += a * xk;
                }
            }
        }
    }

    /// Gershgorin enclosure of the (real) spectrum of a Hermitian matrix.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.dim {
            let mut radius = 0.0;
            let mut center = 0.0;
            for d in -(self.hbw as isize)..=(self.hbw as isize) {
                if !self.in_range(i, d) {
                    continue;
                }
                let v = self.bands[(self.hbw as isize + d) as usize][i];
                if d == 0 {
                    center = v.re;
                } else {
                    radius += v.norm();
                }
            }
            lo = lo.min(center - radius);
            hi = hi.max(center + radius);
        }
        (lo, hi)
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.dim, self.dim, |r, c| self.get(r, c))
    }
}

/// `exp(-i H t) ψ` for Hermitian banded `H` whose spectrum lies in `spectrum`.
///
/// Uses the Chebyshev expansion `e^{-ixy} = J₀(x) + 2Σ(-i)^k J_k(x) T_k(y)`;
/// the series is cut once `|J_k| < CHEBYSHEV_TOL`, so the remainder stays
/// below ~1e-15 in norm.
pub fn expm_apply(h: &Banded, t: f64, psi: &[C64], spectrum: (f64, f64)) -> Vec<C64> {
    let (lo, hi) = spectrum;
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let global = C64::from_polar(1.0, -center * t);
    if half <= 0.0 || t == 0.0 {
        return psi.iter().map(|v| v * global).collect();
    }
    let coeffs = chebyshev_exp_coefficients(half * t, CHEBYSHEV_TOL);
    let n = psi.len();

    // T_k recurrence on (H - center)/half
    let inv = 1.0 / half;
    let apply = |x: &[C64], y: &mut [C64], scratch: &mut [C64]| {
        h.matvec_into(x, scratch);
        for ((yi, si), xi) in y.iter_mut().zip(scratch.iter()).zip(x) {
            *yi = (si - xi * center) * inv;
        }
    };

    let mut acc: Vec<C64> = psi.iter().map(|v| v * coeffs[0]).collect();
    if coeffs.len() == 1 {
        return acc.iter().map(|v| v * global).collect();
    }
    let mut prev = psi.to_vec();
    let mut cur = vec![C64::new(0.0, 0.0); n];
    let mut scratch = vec![C64::new(0.0, 0.0); n];
    apply(&prev, &mut cur, &mut scratch);
    let mut phase = C64::new(0.0, -1.0); // (-i)^k
    let c1 = phase * 2.0 * coeffs[1];
    for (a, v) in acc.iter_mut().zip(&cur) {
        *a += c1 * v;
    }
    for &ck in &coeffs[2..] {
        // next = 2 H̃ cur - prev, written into prev
        h.matvec_into(&cur, &mut scratch);
        for ((p, s), c) in prev.iter_mut().zip(&scratch).zip(&cur) {
            *p = (s - c * center) * (2.0 * inv) - *p;
        }
        std::mem::swap(&mut prev, &mut cur);
        phase *= C64::new(0.0, -1.0);
        let c = phase * 2.0 * ck;
        for (a, v) in acc.iter_mut().zip(&cur) {
            *a += c * v;
        }
    }
    acc.iter().map(|v| v * global).collect()
}

/// `exp(-i H t) ψ` with Gershgorin spectral bounds.
pub fn expm_apply_auto(h: &Banded, t: f64, psi: &[C64]) -> Vec<C64> {
    let bounds = h.gershgorin_bounds();
    expm_apply(h, t, psi, bounds)
}

/// Dense `exp(-i H t)` for Hermitian `H` via eigendecomposition.
///
/// Only used by the validation oracles; independent of the Chebyshev path.
pub fn dense_unitary(h: &DMatrix<C64>, t: f64) -> DMatrix<C64> {
    let eig = nalgebra::SymmetricEigen::new(h.clone());
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| C64::from_polar(1.0, -e * t)));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum()
}
