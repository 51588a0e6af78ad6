//! Dissipation production: the log-ratio of the initial-time density at
//! a configuration and at its rotated image, its ensemble mean, the
//! integral fluctuation identity and past/future mean curves.
//!
//! The mean is a Kullback-Leibler divergence whose integrand carries
//! integrable `ln` singularities along the zero curves of the evolved
//! density.  Rather than evaluating `ln f` near those curves, the mean
//! is computed from the factored canonical form: with
//! `W(A) = int f(Aq) ln f(q) dOmega`, the mean is `W(I) - W(R^-1)`
//! (in canonical coordinates), and `ln f = ln c + p ln(1+z) + ln B(phi)`
//! splits `W` into three pieces.  The `ln(1+z)` piece rides on the
//! polar Gauss rule, and the `ln B` piece is a Fourier pairing between
//! the column profile of `f(Aq)` and the analytic Fourier series of
//! `ln B`, so no `ln` is ever sampled at a quadrature node.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, log, sin};

use crate::density::{AzPart, LogFourier, SphereDensity};
use crate::error::{Error, Result};
use crate::geometry::{mat_mul, mat_vec, transpose, Mat3, Rotation, SpherePoint, Vec3};
use crate::quadrature::{
    adaptive_periodic, adaptive_theta, integrate_sphere, integrate_sphere_rows_split,
    theta_rule_split, Resolution,
};
use crate::DENSITY_FLOOR;

/// Convergence tolerance for the self-refining sub-integrals.
const TOL: f64 = 1e-12;
/// Azimuthal sample cap for the self-refining trapezoid.
const MAX_PHI: usize = 1 << 16;
/// Polar node cap for the self-refining column integrals.
const MAX_THETA: usize = 4096;

/// One trajectory's dissipation production.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OmegaValue {
    Finite(f64),
    /// The evolved point landed where the density vanishes.
    Infinite,
}

impl OmegaValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            OmegaValue::Finite(v) => Some(*v),
            OmegaValue::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, OmegaValue::Infinite)
    }
}

/// `omega = ln f(p) - ln f(Rp)`.
///
/// Errors if the initial point has vanishing density; returns the
/// infinity marker if only the evolved point does.
pub fn omega_of_point(d: &SphereDensity, r: &Rotation, p: &SpherePoint) -> Result<OmegaValue> {
    let fa = d.evaluate(p);
    if fa < DENSITY_FLOOR {
        return Err(Error::ZeroProbabilityOrigin);
    }
    let fb = d.evaluate(&r.apply(p));
    if fb < DENSITY_FLOOR {
        return Ok(OmegaValue::Infinite);
    }
    Ok(OmegaValue::Finite(log(fa) - log(fb)))
}

/// The rotation expressed in the density's canonical coordinates,
/// inverted: `F^T R^T F`.
fn canonical_inverse(d: &SphereDensity, r: &Rotation) -> Mat3 {
    let rt = transpose(r.matrix());
    if d.frame_is_identity() {
        rt
    } else {
        let f = d.frame().matrix();
        mat_mul(&transpose(f), &mat_mul(&rt, f))
    }
}

fn canonical_node(theta: f64, phi: f64) -> Vec3 {
    let st = sin(theta);
    [st * cos(phi), st * sin(phi), cos(theta)]
}

/// `W(A) = int f(Aq) ln f(q) dOmega` in canonical coordinates, split
/// over the factored form of `ln f`.
fn w_integral(d: &SphereDensity, a: &Mat3, lf: &LogFourier, res: Resolution) -> f64 {
    let g = |theta: f64, phi: f64| d.canonical_eval(&mat_vec(a, &canonical_node(theta, phi)));

    // `f(Aq)` loses smoothness across the latitudes of the mapped
    // poles (A^T z has z-component a[2][2]) when `B` is not constant
    let breaks = if matches!(d.az, AzPart::One) {
        Vec::new()
    } else {
        let c = a[2][2].clamp(-1.0, 1.0);
        alloc::vec![libm::acos(c), libm::acos(-c)]
    };

    let p = d.polar_exponent;
    let mut mass = 0.0;
    let mut polar = 0.0;
    for (theta, w) in theta_rule_split(res.n_theta, &breaks) {
        let row = adaptive_periodic(|phi| g(theta, phi), TOL, MAX_PHI);
        mass += w * row;
        if p > 0 {
            // ln(1 + cos t) = ln 2 + 2 ln|cos(t/2)|, stable near t = pi
            polar += w * (core::f64::consts::LN_2 + 2.0 * log(libm::fabs(cos(0.5 * theta)))) * row;
        }
    }
    let mut total = log(d.norm_const) * mass + p as f64 * polar;

    if !matches!(d.az, AzPart::One) {
        let n_phi = res.n_phi;
        let kmax = lf.lc.len();
        let cols: Vec<f64> = (0..n_phi)
            .map(|j| {
                let phi = -PI + j as f64 * (2.0 * PI / n_phi as f64);
                adaptive_theta(|theta| g(theta, phi), 64, TOL, MAX_THETA)
            })
            .collect();
        let mean = cols.iter().sum::<f64>() / n_phi as f64;
        let mut az = 2.0 * PI * mean * lf.lam0;
        for k in 1..=kmax {
            let (mut ak, mut bk) = (0.0, 0.0);
            for (j, &c) in cols.iter().enumerate() {
                let phi = -PI + j as f64 * (2.0 * PI / n_phi as f64);
                ak += c * cos(k as f64 * phi);
                bk += c * sin(k as f64 * phi);
            }
            ak *= 2.0 / n_phi as f64;
            bk *= 2.0 / n_phi as f64;
            az += PI * (ak * lf.lc[k - 1] + bk * lf.ls[k - 1]);
        }
        total += az;
    }
    total
}

/// `<omega> = int f ln(f / f o R) dOmega`, the KL divergence between the
/// density and its pullback under the rotation.
pub fn mean_omega(d: &SphereDensity, r: &Rotation, res: Resolution) -> f64 {
    let kmax = (res.n_phi / 2).max(2) - 1;
    match d.az.log_fourier(kmax) {
        Some(lf) => {
            let ident = *Rotation::identity().matrix();
            let rhat_inv = canonical_inverse(d, r);
            w_integral(d, &ident, &lf, res) - w_integral(d, &rhat_inv, &lf, res)
        }
        // azimuthal factor not strictly positive and not of the
        // shifted-cosine family: fall back to direct grid quadrature
        None => mean_omega_grid(d, r, res),
    }
}

/// Direct product-grid evaluation of the same KL divergence, with the
/// density floor guarding the logarithms.  Less accurate than
/// [`mean_omega`] near zero curves; kept as an independent route for
/// cross-checks and as the fallback for irregular custom densities.
pub fn mean_omega_grid(d: &SphereDensity, r: &Rotation, res: Resolution) -> f64 {
    integrate_sphere(res, |theta, phi| {
        let pt = SpherePoint::from_spherical(theta, phi);
        let fa = d.evaluate(&pt);
        if fa < DENSITY_FLOOR {
            return 0.0;
        }
        let fb = d.evaluate(&r.apply(&pt)).max(DENSITY_FLOOR);
        fa * (log(fa) - log(fb))
    })
}

/// Quadrature estimate of `<exp(-omega)> = int f(Rp) dOmega`, which is
/// exactly 1 for any normalised density.
pub fn integral_fluctuation_check(d: &SphereDensity, r: &Rotation, res: Resolution) -> f64 {
    // the integrand f(Rp) kinks at the latitudes of R^-1 (pole images)
    let pre = transpose(r.matrix());
    let breaks = d.pole_breaks(Some(&pre));
    integrate_sphere_rows_split(res.n_theta, &breaks, TOL, MAX_PHI, |theta, phi| {
        d.evaluate(&r.apply(&SpherePoint::from_spherical(theta, phi)))
    })
}

/// `<omega_t>` sampled on a time grid.  Negative times rotate the other
/// way about the same axis (evolution into the past).
#[derive(Debug, Clone, PartialEq)]
pub struct MeanCurve {
    pub times: Vec<f64>,
    pub means: Vec<f64>,
    pub resolution: Resolution,
}

pub fn mean_curve(
    d: &SphereDensity,
    axis: Vec3,
    times: &[f64],
    res: Resolution,
) -> Result<MeanCurve> {
    let mut means = Vec::with_capacity(times.len());
    for &t in times {
        let r = Rotation::from_axis_angle(axis, t)?;
        means.push(mean_omega(d, &r, res));
    }
    Ok(MeanCurve {
        times: times.to_vec(),
        means,
        resolution: res,
    })
}

/// `<omega_t> - <omega_{-t}>`: zero whenever past and future evolution
/// dissipate identically.
pub fn asymmetry(d: &SphereDensity, axis: Vec3, t: f64, res: Resolution) -> Result<f64> {
    let fwd = Rotation::from_axis_angle(axis, t)?;
    let bwd = Rotation::from_axis_angle(axis, -t)?;
    Ok(mean_omega(d, &fwd, res) - mean_omega(d, &bwd, res))
}
