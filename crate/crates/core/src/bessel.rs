//! Bessel functions of the first kind, integer order.
//!
//! `bessel_j0` feeds the drive coefficient α₀; `bessel_jn_sequence` supplies the
//! Chebyshev expansion coefficients used by the propagators.

/// Below this argument the ascending power series is used directly.
const SERIES_LIMIT: f64 = 8.0;

/// `J₀(x)` to about 1e-14 absolute over the real line.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_LIMIT {
        j0_series(ax)
    } else {
        miller_sequence(ax, 0)[0]
    }
}

fn j0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= -q / (k * k);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        k += 1.0;
    }
    sum
}

/// `[J₀(x), J₁(x), …, J_kmax(x)]`.
///
/// Small arguments use the ascending series; everything else uses Miller's
/// backward recurrence normalized by `J₀ + 2ΣJ₂ₖ = 1`.
pub fn bessel_jn_sequence(x: f64, kmax: usize) -> Vec<f64> {
    if x == 0.0 {
        let mut out = vec![0.0; kmax + 1];
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let mut out = if ax < 1.0 {
        series_sequence(ax, kmax)
    } else {
        miller_sequence(ax, kmax)
    };
    if x < 0.0 {
        for (k, v) in out.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

fn series_sequence(x: f64, kmax: usize) -> Vec<f64> {
    let half = 0.5 * x;
    let q = half * half;
    let mut lead = 1.0; // (x/2)^k / k!
    (0..=kmax)
        .map(|k| {
            if k > 0 {
                lead *= half / k as f64;
            }
            if lead == 0.0 {
                return 0.0;
            }
            let mut term: f64 = 1.0;
            let mut sum = 1.0;
            let mut l = 1.0;
            while term.abs() > 1e-18 {
                term *= -q / (l * (l + k as f64));
                sum += term;
                l += 1.0;
            }
            lead * sum
        })
        .collect()
}

fn miller_sequence(x: f64, kmax: usize) -> Vec<f64> {
    const BIG: f64 = 1e250;
    let top = (kmax as f64).max(x);
    let mut start = (top + (160.0 * top).sqrt() + 20.0).ceil() as usize;
    start += start % 2;

    let mut out = vec![0.0; kmax + 1];
    let two_over_x = 2.0 / x;
    let mut above = 0.0; // J_{k+1}
    let mut here = 1e-300; // J_k
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let below = k as f64 * two_over_x * here - above;
        above = here;
        here = below;
        // `here` now holds the unnormalized J_{k-1}
        if k - 1 <= kmax {
            out[k - 1] = here;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * here;
        }
        if here.abs() > BIG {
            here /= BIG;
            above /= BIG;
            norm /= BIG;
            for v in out.iter_mut() {
                *v /= BIG;
            }
        }
    }
    norm += here;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// Coefficients `J_k(x)` for a Chebyshev expansion of `exp(-i x y)`, `y ∈ [-1, 1]`,
/// truncated once the tail drops below `tol`.
pub(crate) fn chebyshev_exp_coefficients(x: f64, tol: f64) -> Vec<f64> {
    let ax = x.abs();
    let kmax = (ax + 13.0 * ax.cbrt() + 25.0).ceil() as usize;
    let mut coeffs = bessel_jn_sequence(x, kmax);
    // past k ≈ |x| the magnitudes fall off monotonically
    let floor = ax.floor() as usize;
    let mut keep = coeffs.len();
    while keep > floor + 2 && coeffs[keep - 1].abs() < tol {
        keep -= 1;
    }
    coeffs.truncate(keep);
    coeffs
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // Reference values from mpmath at 30 digits.
    const J0_TABLE: &[(f64, f64)] = &[
        (0.5, 0.938469807240812904228),
        (1.0, 0.765197686557966551450),
        (2.5, -0.0483837764681979963273),
        (7.9, 0.194361844841278239695),
        (8.1, 0.147517454044377670299),
        (15.0, -0.0142244728267807732339),
        (50.0, 0.0558123276692518150048),
        (1000.0, 0.0247866861524201746),
    ];

    #[test]
    fn j0_matches_reference_values() {
        assert_eq!(bessel_j0(0.0), 1.0);
        for &(x, v) in J0_TABLE {
            let got = bessel_j0(x);
            assert!((got - v).abs() < 1e-12, "J0({x}) = {got}, want {v}");
            assert!((bessel_j0(-x) - v).abs() < 1e-12);
        }
    }

    #[test]
    fn sequence_matches_reference_orders() {
        // J_k(10) from mpmath
        let want = [
            (0, -0.245935764451348335),
            (1, 0.0434727461688614367),
            (5, -0.234061528186793640),
            (10, 0.207486106633358858),
            (20, 1.15133692478133978e-5),
        ];
        let seq = bessel_jn_sequence(10.0, 30);
        for (k, v) in want {
            assert!((seq[k] - v).abs() < 1e-13, "J_{k}(10) = {}", seq[k]);
        }
        let small = bessel_jn_sequence(0.3, 4);
        assert!((small[1] - 0.148318816273104).abs() < 1e-14);
        let neg = bessel_jn_sequence(-10.0, 5);
        assert!((neg[1] + 0.0434727461688614367).abs() < 1e-13);
    }

    #[test]
    fn sequence_satisfies_normalization_and_recurrence() {
        for &x in &[1.5, 37.0, 400.0, 2500.0] {
            let n = (x as usize) + 200;
            let seq = bessel_jn_sequence(x, n);
            let sum: f64 = seq[0] + 2.0 * seq.iter().skip(2).step_by(2).sum::<f64>();
            assert!((sum - 1.0).abs() < 1e-12, "normalization at {x}: {sum}");
            for k in 1..n {
                let r = seq[k - 1] + seq[k + 1] - 2.0 * k as f64 / x * seq[k];
                assert!(r.abs() < 1e-12, "recurrence at x={x}, k={k}: {r}");
            }
            assert!((seq[0] - bessel_j0(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn chebyshev_coefficients_truncate_tail() {
        let c = chebyshev_exp_coefficients(55.0, 1e-17);
        assert!(c.len() > 56 && c.len() < 120, "{}", c.len());
        assert!(c.last().unwrap().abs() < 1e-15);
    }
}
