//! Quadrature over the sphere.
//!
//! The product rule used throughout is Gauss-Legendre in the polar angle
//! (with the `sin(theta)` Jacobian folded into the weights) crossed with
//! the uniform trapezoid rule in the azimuth.  Trapezoid sums over the
//! periodic azimuth converge geometrically for analytic integrands, and
//! the polar rule keeps fourth-order convergence even against the
//! integrable `ln` singularities produced by zeros of the densities.
//! Both directions come in fixed-size and self-refining variants.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, fabs, sin, sqrt};

use crate::geometry::SpherePoint;

/// Product-grid resolution: polar nodes by azimuthal nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Resolution {
    pub fn new(n_theta: usize, n_phi: usize) -> Self {
        Resolution { n_theta, n_phi }
    }
}

impl Default for Resolution {
    fn default() -> Self {
        Resolution {
            n_theta: 64,
            n_phi: 128,
        }
    }
}

/// Legendre polynomial `P_n` and its derivative at `x`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending nodes.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess, then Newton.
        let mut x = cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if fabs(dx) < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Polar rule: nodes `theta in (0, pi)` with weights that include the
/// `sin(theta)` surface Jacobian, so `sum w_i g(theta_i)` approximates
/// `int_0^pi g(theta) sin(theta) dtheta`.
pub(crate) fn theta_rule(n: usize) -> Vec<(f64, f64)> {
    let (nodes, weights) = gauss_legendre(n);
    nodes
        .iter()
        .zip(weights.iter())
        .map(|(&x, &w)| {
            let theta = 0.5 * PI * (x + 1.0);
            (theta, 0.5 * PI * w * sin(theta))
        })
        .collect()
}

/// Trapezoid sum of a periodic function over `[-pi, pi)`, refined by
/// doubling (each refinement reuses all previous samples).  Stops after
/// two consecutive doublings agree within `tol`, or at `max_n` samples.
pub(crate) fn adaptive_periodic<F: Fn(f64) -> f64>(f: F, tol: f64, max_n: usize) -> f64 {
    let mut n: usize = 32;
    let mut sum: f64 = (0..n).map(|j| f(-PI + j as f64 * (2.0 * PI / n as f64))).sum();
    let mut est = sum * 2.0 * PI / n as f64;
    let mut agreed = false;
    loop {
        let h = 2.0 * PI / n as f64;
        let mid: f64 = (0..n).map(|j| f(-PI + (j as f64 + 0.5) * h)).sum();
        sum += mid;
        n *= 2;
        let next = sum * 2.0 * PI / n as f64;
        let close = fabs(next - est) <= tol * (1.0 + fabs(next));
        est = next;
        if (close && agreed) || n >= max_n {
            return est;
        }
        agreed = close;
    }
}

/// `int_0^pi g(theta) sin(theta) dtheta` by Gauss-Legendre order
/// doubling, starting at `n0` nodes.
pub(crate) fn adaptive_theta<F: Fn(f64) -> f64>(g: F, n0: usize, tol: f64, max_n: usize) -> f64 {
    let mut n = n0;
    let mut est: f64 = theta_rule(n).iter().map(|&(t, w)| w * g(t)).sum();
    loop {
        n *= 2;
        let next: f64 = theta_rule(n).iter().map(|&(t, w)| w * g(t)).sum();
        let close = fabs(next - est) <= tol * (1.0 + fabs(next));
        est = next;
        if close || n >= max_n {
            return est;
        }
    }
}

/// `int f dOmega` over the sphere on the fixed product grid.
pub(crate) fn integrate_sphere<F: Fn(f64, f64) -> f64>(res: Resolution, f: F) -> f64 {
    let dphi = 2.0 * PI / res.n_phi as f64;
    let mut total = 0.0;
    for (theta, w) in theta_rule(res.n_theta) {
        let mut row = 0.0;
        for j in 0..res.n_phi {
            row += f(theta, -PI + j as f64 * dphi);
        }
        total += w * row * dphi;
    }
    total
}

/// Polar rule on `[0, pi]` split at the given interior latitudes, with
/// `n_theta` Gauss nodes per segment and the `sin(theta)` Jacobian in
/// the weights.  Rotated densities with azimuthal structure are smooth
/// in `theta` except across the latitudes of their (rotated) poles;
/// splitting there restores fast convergence of the row sums.
pub(crate) fn theta_rule_split(n_theta: usize, breaks: &[f64]) -> Vec<(f64, f64)> {
    // grade the mesh geometrically into each break: the integrand is
    // only Holder-smooth there, and shrinking segments restore
    // spectral accuracy overall
    let mut cuts: Vec<f64> = Vec::new();
    for &b in breaks {
        if !(1e-9..=PI - 1e-9).contains(&b) {
            // pole latitudes need no split: Gauss nodes stay interior
            continue;
        }
        cuts.push(b);
        let mut d = 0.2;
        for _ in 0..5 {
            cuts.push(b - d);
            cuts.push(b + d);
            d /= 4.0;
        }
    }
    let mut cuts: Vec<f64> = cuts
        .into_iter()
        .filter(|&b| b > 1e-12 && b < PI - 1e-12)
        .collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| fabs(*a - *b) < 1e-12);

    let (nodes, weights) = gauss_legendre(n_theta);
    let mut rule = Vec::with_capacity(n_theta * (cuts.len() + 1));
    let mut lo = 0.0;
    for hi in cuts.iter().copied().chain(core::iter::once(PI)) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for (&x, &w) in nodes.iter().zip(&weights) {
            let theta = mid + half * x;
            rule.push((theta, half * w * sin(theta)));
        }
        lo = hi;
    }
    rule
}

/// As [`integrate_sphere_rows`], with the polar axis split at `breaks`.
pub(crate) fn integrate_sphere_rows_split<F: Fn(f64, f64) -> f64>(
    n_theta: usize,
    breaks: &[f64],
    tol: f64,
    max_phi: usize,
    f: F,
) -> f64 {
    theta_rule_split(n_theta, breaks)
        .iter()
        .map(|&(theta, w)| w * adaptive_periodic(|phi| f(theta, phi), tol, max_phi))
        .sum()
}

/// A low-discrepancy test grid of `n` points (golden-spiral layout).
pub fn fibonacci_grid(n: usize) -> Vec<SpherePoint> {
    let golden = 0.5 * (1.0 + sqrt(5.0));
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let frac = (i as f64 / golden) % 1.0;
            let phi = 2.0 * PI * frac - PI;
            let s = sqrt((1.0 - z * z).max(0.0));
            SpherePoint {
                x: s * cos(phi),
                y: s * sin(phi),
                z,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use libm::{exp, log};

    #[test]
    fn gauss_legendre_low_orders_match_tables() {
        let (x, w) = gauss_legendre(2);
        let r = 1.0 / sqrt(3.0);
        assert!(fabs(x[0] + r) < 1e-15 && fabs(x[1] - r) < 1e-15);
        assert!(fabs(w[0] - 1.0) < 1e-15 && fabs(w[1] - 1.0) < 1e-15);

        let (x, w) = gauss_legendre(3);
        assert!(fabs(x[0] + sqrt(0.6)) < 1e-15);
        assert!(fabs(x[1]) < 1e-15);
        assert!(fabs(w[0] - 5.0 / 9.0) < 1e-15);
        assert!(fabs(w[1] - 8.0 / 9.0) < 1e-15);
    }

    #[test]
    fn gauss_legendre_integrates_high_degree_polynomials_exactly() {
        // degree 2n-1 exactness: x^126 with n = 64
        let (x, w) = gauss_legendre(64);
        let got: f64 = x.iter().zip(&w).map(|(&x, &w)| w * libm::pow(x, 126.0)).sum();
        assert!(fabs(got - 2.0 / 127.0) < 1e-14);
    }

    #[test]
    fn theta_rule_integrates_surface_area() {
        let got: f64 = theta_rule(32).iter().map(|&(_, w)| w).sum();
        assert!(fabs(got - 2.0) < 1e-13);
        let got: f64 = theta_rule(32).iter().map(|&(t, w)| w * cos(t) * cos(t)).sum();
        assert!(fabs(got - 2.0 / 3.0) < 1e-13);
    }

    #[test]
    fn adaptive_periodic_handles_harmonics_and_sharp_peaks() {
        let got = adaptive_periodic(|p| 1.0 + cos(40.0 * p), 1e-13, 1 << 16);
        assert!(fabs(got - 2.0 * PI) < 1e-11);
        // von Mises-like peak: int exp(k cos p) dp = 2 pi I0(k)
        let got = adaptive_periodic(|p| exp(6.0 * cos(p)), 1e-13, 1 << 16);
        let i0_6 = 67.234406976478; // I0(6), series value
        assert!(fabs(got / (2.0 * PI) - i0_6) < 1e-9);
    }

    #[test]
    fn adaptive_theta_matches_closed_forms() {
        let got = adaptive_theta(|t| cos(t) * cos(t), 16, 1e-13, 4096);
        assert!(fabs(got - 2.0 / 3.0) < 1e-12);
        // log singularity at the pole: int (1+u) ln(1+u) du over [-1,1] = 2 ln 2 - 1
        let got = adaptive_theta(|t| (1.0 + cos(t)) * log(1.0 + cos(t)), 64, 1e-13, 1 << 14);
        assert!(fabs(got - (2.0 * log(2.0) - 1.0)) < 1e-10);
    }

    #[test]
    fn sphere_integrators_agree_on_surface_area() {
        let fixed = integrate_sphere(Resolution::default(), |_, _| 1.0);
        assert!(fabs(fixed - 4.0 * PI) < 1e-12);
        let rows = integrate_sphere_rows_split(64, &[], 1e-13, 1 << 16, |_, _| 1.0);
        assert!(fabs(rows - 4.0 * PI) < 1e-12);
    }

    #[test]
    fn fibonacci_grid_is_roughly_uniform() {
        let pts = fibonacci_grid(10_000);
        assert_eq!(pts.len(), 10_000);
        let mean_z: f64 = pts.iter().map(|p| p.z).sum::<f64>() / 10_000.0;
        assert!(fabs(mean_z) < 1e-3);
        for p in &pts {
            assert!(fabs(p.x * p.x + p.y * p.y + p.z * p.z - 1.0) < 1e-12);
        }
    }
}
