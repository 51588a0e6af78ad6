//! Ensemble probability densities over the Bloch sphere.
//!
//! Every density is stored in a factored canonical form
//! `f(q) = c (1 + q_z)^p B(phi)` together with a frame rotation mapping
//! canonical coordinates to world coordinates.  The five built-in cases
//! and the user-defined family all fit this shape; keeping the factors
//! explicit lets the dissipation integrals split the logarithm
//! analytically instead of evaluating `ln f` near its zeros.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{atan2, cos, log, sin, sqrt};

use crate::error::{Error, Result};
use crate::geometry::{mat_vec, Mat3, Rotation, SpherePoint, Vec3};
use crate::quadrature::{integrate_sphere, integrate_sphere_rows_split, Resolution};
use crate::rng::{uniform_sphere_point, ChunkRng, CHUNK_SIZE};

/// Descriptor of a density, sufficient to reconstruct it.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityKind {
    /// `1/(4 pi)`.
    Uniform,
    /// `(4 pi)^-1 (1 + cos theta)`, symmetric about +z.
    Case1a,
    /// Case 1a rotated by `angle` about `axis`; its symmetry axis is the
    /// image of +z under that rotation.
    Case1b { axis: [f64; 3], angle: f64 },
    /// `(4 pi)^-1 (1 + cos theta)(1 + cos phi)`.
    Case2a,
    /// `(4 pi)^-1 (1 + cos theta)(1 + cos(phi + pi/4))`.
    Case2b,
    /// `(8 pi)^-1 (1 + cos theta)(2 + cos phi + sin 2 phi)`.
    Case3,
    /// `c (1 + cos theta)^p (1 + sum_k a_k cos(k phi) + b_k sin(k phi))`.
    Custom {
        polar_exponent: u32,
        azimuthal_coefficients: Vec<(u32, f64, f64)>,
        normalization: f64,
    },
}

/// The azimuthal factor `B(phi)` of the canonical form.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum AzPart {
    One,
    /// `1 + cos(k (phi - phi0))`; its logarithm has a closed-form
    /// Fourier series despite the zero at `phi0 + pi/k`.
    ShiftedCosine { k: u32, phi0: f64 },
    /// `1 + sum_k a_k cos(k phi) + b_k sin(k phi)`.
    TrigPoly { coeffs: Vec<(u32, f64, f64)> },
}

/// Truncated Fourier series of `ln B`: `lam0 + sum lc[k-1] cos(k phi) +
/// ls[k-1] sin(k phi)`.
pub(crate) struct LogFourier {
    pub lam0: f64,
    pub lc: Vec<f64>,
    pub ls: Vec<f64>,
}

impl AzPart {
    pub(crate) fn eval(&self, phi: f64) -> f64 {
        match self {
            AzPart::One => 1.0,
            AzPart::ShiftedCosine { k, phi0 } => 1.0 + cos(*k as f64 * (phi - phi0)),
            AzPart::TrigPoly { coeffs } => {
                let mut b = 1.0;
                for &(k, a, bb) in coeffs {
                    b += a * cos(k as f64 * phi) + bb * sin(k as f64 * phi);
                }
                b
            }
        }
    }

    /// Sum of harmonic amplitudes; `max B <= 1 +` this.
    fn amplitude_sum(&self) -> f64 {
        match self {
            AzPart::One => 0.0,
            AzPart::ShiftedCosine { .. } => 1.0,
            AzPart::TrigPoly { coeffs } => {
                coeffs.iter().map(|&(_, a, b)| sqrt(a * a + b * b)).sum()
            }
        }
    }

    /// Fourier coefficients of `ln B` up to harmonic `kmax`.
    ///
    /// Closed form for the shifted-cosine factor; otherwise computed by
    /// discrete sums on a fine grid, valid only when `B` is strictly
    /// positive (returns `None` if it is not).
    pub(crate) fn log_fourier(&self, kmax: usize) -> Option<LogFourier> {
        match self {
            AzPart::One => Some(LogFourier {
                lam0: 0.0,
                lc: vec![0.0; kmax],
                ls: vec![0.0; kmax],
            }),
            AzPart::ShiftedCosine { k, phi0 } => {
                // ln(1 + cos u) = -ln 2 + sum_m 2 (-1)^{m+1} cos(m u)/m
                let mut lc = vec![0.0; kmax];
                let mut ls = vec![0.0; kmax];
                let k = *k as usize;
                let mut m = 1usize;
                while m * k <= kmax {
                    let j = m * k;
                    let a = 2.0 * if m % 2 == 1 { 1.0 } else { -1.0 } / m as f64;
                    lc[j - 1] = a * cos(j as f64 * phi0);
                    ls[j - 1] = a * sin(j as f64 * phi0);
                    m += 1;
                }
                Some(LogFourier {
                    lam0: -log(2.0),
                    lc,
                    ls,
                })
            }
            AzPart::TrigPoly { .. } => {
                let n = 1usize << 14;
                let mut vals = Vec::with_capacity(n);
                for j in 0..n {
                    let phi = -PI + j as f64 * (2.0 * PI / n as f64);
                    let b = self.eval(phi);
                    if b < 1e-9 {
                        return None;
                    }
                    vals.push(log(b));
                }
                let lam0 = vals.iter().sum::<f64>() / n as f64;
                let mut lc = vec![0.0; kmax];
                let mut ls = vec![0.0; kmax];
                for k in 1..=kmax {
                    let (mut sc, mut ss) = (0.0, 0.0);
                    for (j, &v) in vals.iter().enumerate() {
                        let phi = -PI + j as f64 * (2.0 * PI / n as f64);
                        sc += v * cos(k as f64 * phi);
                        ss += v * sin(k as f64 * phi);
                    }
                    lc[k - 1] = 2.0 * sc / n as f64;
                    ls[k - 1] = 2.0 * ss / n as f64;
                }
                Some(LogFourier { lam0, lc, ls })
            }
        }
    }
}

/// A probability density over the Bloch sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereDensity {
    kind: DensityKind,
    /// Canonical-to-world rotation.
    frame: Rotation,
    /// Cached inverse frame matrix.
    frame_inv: Mat3,
    frame_is_identity: bool,
    pub(crate) norm_const: f64,
    pub(crate) polar_exponent: u32,
    pub(crate) az: AzPart,
}

impl SphereDensity {
    fn from_parts(kind: DensityKind, frame: Rotation, c: f64, p: u32, az: AzPart) -> Self {
        let frame_is_identity = frame.matrix() == Rotation::identity().matrix();
        let frame_inv = *frame.inverse().matrix();
        SphereDensity {
            kind,
            frame,
            frame_inv,
            frame_is_identity,
            norm_const: c,
            polar_exponent: p,
            az,
        }
    }

    pub fn uniform() -> Self {
        Self::from_parts(
            DensityKind::Uniform,
            Rotation::identity(),
            1.0 / (4.0 * PI),
            0,
            AzPart::One,
        )
    }

    pub fn case1a() -> Self {
        Self::from_parts(
            DensityKind::Case1a,
            Rotation::identity(),
            1.0 / (4.0 * PI),
            1,
            AzPart::One,
        )
    }

    pub fn case1b(axis: Vec3, angle: f64) -> Result<Self> {
        let frame = Rotation::from_axis_angle(axis, angle)?;
        Ok(Self::from_parts(
            DensityKind::Case1b { axis, angle },
            frame,
            1.0 / (4.0 * PI),
            1,
            AzPart::One,
        ))
    }

    /// The Case 1b of the built-in family: Case 1a rotated by `pi/3`
    /// about `(1, 1, 0)/sqrt(2)`.
    pub fn case1b_default() -> Self {
        let s = 1.0 / sqrt(2.0);
        Self::case1b([s, s, 0.0], PI / 3.0).unwrap()
    }

    pub fn case2a() -> Self {
        Self::from_parts(
            DensityKind::Case2a,
            Rotation::identity(),
            1.0 / (4.0 * PI),
            1,
            AzPart::ShiftedCosine { k: 1, phi0: 0.0 },
        )
    }

    pub fn case2b() -> Self {
        Self::from_parts(
            DensityKind::Case2b,
            Rotation::identity(),
            1.0 / (4.0 * PI),
            1,
            AzPart::ShiftedCosine {
                k: 1,
                phi0: -PI / 4.0,
            },
        )
    }

    pub fn case3() -> Self {
        // (8 pi)^-1 (1+cos theta)(2 + cos phi + sin 2 phi)
        //   = (4 pi)^-1 (1+cos theta)(1 + cos(phi)/2 + sin(2 phi)/2)
        Self::from_parts(
            DensityKind::Case3,
            Rotation::identity(),
            1.0 / (4.0 * PI),
            1,
            AzPart::TrigPoly {
                coeffs: vec![(1, 0.5, 0.0), (2, 0.0, 0.5)],
            },
        )
    }

    /// A user-defined density with an explicit normalisation constant.
    pub fn custom(
        polar_exponent: u32,
        azimuthal_coefficients: &[(u32, f64, f64)],
        normalization: f64,
    ) -> Self {
        let coeffs: Vec<(u32, f64, f64)> = azimuthal_coefficients.to_vec();
        let az = if coeffs.is_empty() {
            AzPart::One
        } else {
            AzPart::TrigPoly {
                coeffs: coeffs.clone(),
            }
        };
        Self::from_parts(
            DensityKind::Custom {
                polar_exponent,
                azimuthal_coefficients: coeffs,
                normalization,
            },
            Rotation::identity(),
            normalization,
            polar_exponent,
            az,
        )
    }

    /// A user-defined density with the normalisation constant computed
    /// analytically: all harmonics integrate to zero, so
    /// `c = (p + 1) / (2^{p+2} pi)`.
    pub fn custom_normalized(polar_exponent: u32, azimuthal_coefficients: &[(u32, f64, f64)]) -> Self {
        let p = polar_exponent;
        let c = (p as f64 + 1.0) / (libm::exp2(p as f64 + 2.0) * PI);
        Self::custom(p, azimuthal_coefficients, c)
    }

    pub fn kind(&self) -> &DensityKind {
        &self.kind
    }

    /// Short machine-readable name.
    pub fn label(&self) -> &'static str {
        match self.kind {
            DensityKind::Uniform => "uniform",
            DensityKind::Case1a => "1a",
            DensityKind::Case1b { .. } => "1b",
            DensityKind::Case2a => "2a",
            DensityKind::Case2b => "2b",
            DensityKind::Case3 => "3",
            DensityKind::Custom { .. } => "custom",
        }
    }

    /// The canonical-to-world frame rotation.
    pub fn frame(&self) -> &Rotation {
        &self.frame
    }

    pub(crate) fn frame_is_identity(&self) -> bool {
        self.frame_is_identity
    }

    /// The density evaluated in canonical coordinates.
    pub(crate) fn canonical_eval(&self, q: &Vec3) -> f64 {
        let mut v = self.norm_const;
        let base = 1.0 + q[2];
        for _ in 0..self.polar_exponent {
            v *= base;
        }
        if !matches!(self.az, AzPart::One) {
            let phi = if q[0] == 0.0 && q[1] == 0.0 {
                0.0
            } else {
                atan2(q[1], q[0])
            };
            v *= self.az.eval(phi);
        }
        v
    }

    /// `f(p)` in per-steradian units.
    pub fn evaluate(&self, p: &SpherePoint) -> f64 {
        let q = if self.frame_is_identity {
            p.as_vec()
        } else {
            mat_vec(&self.frame_inv, &p.as_vec())
        };
        self.canonical_eval(&q)
    }

    /// The pushforward of the density under a rotation: the returned
    /// density satisfies `rotated.evaluate(R p) == self.evaluate(p)`.
    /// The descriptor still names the unrotated base density.
    pub fn rotated(&self, r: &Rotation) -> SphereDensity {
        Self::from_parts(
            self.kind.clone(),
            r * &self.frame,
            self.norm_const,
            self.polar_exponent,
            self.az.clone(),
        )
    }

    /// Latitudes at which polar-row integrals of this density lose
    /// smoothness: the poles of the azimuthal factor, moved by the
    /// frame (and optionally a further rotation with matrix `pre`).
    pub(crate) fn pole_breaks(&self, pre: Option<&Mat3>) -> Vec<f64> {
        if matches!(self.az, AzPart::One) {
            return Vec::new();
        }
        let f = self.frame.matrix();
        // world position of the canonical +z pole, then its latitude
        // after the extra map
        let col = [f[0][2], f[1][2], f[2][2]];
        let wz = match pre {
            None => col[2],
            Some(m) => m[2][0] * col[0] + m[2][1] * col[1] + m[2][2] * col[2],
        }
        .clamp(-1.0, 1.0);
        vec![libm::acos(wz), libm::acos(-wz)]
    }

    /// Quadrature estimate of `int f dOmega`.
    pub fn normalization_integral(&self, res: Resolution) -> f64 {
        if self.frame_is_identity {
            integrate_sphere(res, |theta, phi| {
                self.evaluate(&SpherePoint::from_spherical(theta, phi))
            })
        } else {
            integrate_sphere_rows_split(res.n_theta, &self.pole_breaks(None), 1e-13, 1 << 16, |theta, phi| {
                self.evaluate(&SpherePoint::from_spherical(theta, phi))
            })
        }
    }

    /// A guaranteed upper bound on `f` over the sphere, from the
    /// analytic maxima of the canonical factors.
    pub fn supremum_estimate(&self) -> f64 {
        let mut m = self.norm_const * (1.0 + self.az.amplitude_sum());
        for _ in 0..self.polar_exponent {
            m *= 2.0;
        }
        m
    }

    /// Generates the points of one sampling chunk, feeding them to
    /// `sink` in acceptance order.  Chunk `i` of a run is fully
    /// determined by `(seed, i)`, so chunks may be produced in parallel
    /// and merged by index.
    pub(crate) fn rejection_chunk<F: FnMut(SpherePoint)>(
        &self,
        seed: u64,
        chunk_index: u64,
        count: usize,
        mut sink: F,
    ) -> Result<()> {
        let bound = self.supremum_estimate();
        let mut rng = ChunkRng::new(seed, chunk_index);
        let mut accepted: usize = 0;
        let mut proposals: u64 = 0;
        while accepted < count {
            let p = uniform_sphere_point(&mut rng);
            let u = rng.next_f64();
            proposals += 1;
            if u * bound < self.evaluate(&p) {
                sink(p);
                accepted += 1;
            } else if proposals >= 100_000 && (accepted as f64) < 1e-4 * proposals as f64 {
                return Err(Error::PathologicalDensity {
                    acceptance_rate: accepted as f64 / proposals as f64,
                });
            }
        }
        Ok(())
    }

    /// Draws `n` points by rejection sampling with uniform-sphere
    /// proposals.  Deterministic in `(self, n, seed)`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<SampleSet> {
        let mut points = Vec::with_capacity(n);
        let mut chunk_index = 0u64;
        let mut remaining = n;
        while remaining > 0 {
            let count = remaining.min(CHUNK_SIZE);
            self.rejection_chunk(seed, chunk_index, count, |p| points.push(p))?;
            remaining -= count;
            chunk_index += 1;
        }
        Ok(SampleSet {
            points,
            seed,
            density: self.kind.clone(),
        })
    }
}

/// An ordered draw from a density, with enough metadata to regenerate it.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub points: Vec<SpherePoint>,
    pub seed: u64,
    pub density: DensityKind,
}

/// The built-in cases, in the order used by verdict tables:
/// uniform, 1a, 1b, 2a, 2b, 3.
pub fn builtin_cases() -> Vec<SphereDensity> {
    vec![
        SphereDensity::uniform(),
        SphereDensity::case1a(),
        SphereDensity::case1b_default(),
        SphereDensity::case2a(),
        SphereDensity::case2b(),
        SphereDensity::case3(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::fibonacci_grid;
    use core::f64::consts::FRAC_PI_2;
    use libm::fabs;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        fabs(a - b) < tol
    }

    #[test]
    fn case1a_north_pole_value() {
        let d = SphereDensity::case1a();
        let f = d.evaluate(&SpherePoint::new(0.0, 0.0, 1.0));
        assert!(close(f, 1.0 / (2.0 * PI), 1e-15));
        assert!(close(f, 0.15915494309189535, 1e-12));
    }

    #[test]
    fn case2a_vanishes_on_its_zero_meridian() {
        let d = SphereDensity::case2a();
        let f = d.evaluate(&SpherePoint::from_spherical(FRAC_PI_2, PI));
        assert!(fabs(f) < 1e-16);
    }

    #[test]
    fn case3_equator_value() {
        let d = SphereDensity::case3();
        let f = d.evaluate(&SpherePoint::from_spherical(FRAC_PI_2, 0.0));
        assert!(close(f, 3.0 / (8.0 * PI), 1e-15));
        assert!(close(f, 0.11936620731892151, 1e-12));
    }

    #[test]
    fn case2b_is_case2a_with_shifted_azimuth() {
        let a = SphereDensity::case2a();
        let b = SphereDensity::case2b();
        for p in fibonacci_grid(500) {
            let shifted = SpherePoint::from_spherical(p.theta(), p.phi() + PI / 4.0);
            assert!(close(b.evaluate(&p), a.evaluate(&shifted), 1e-12));
        }
    }

    #[test]
    fn builtins_are_normalized_and_non_negative() {
        let grid = fibonacci_grid(10_000);
        for d in builtin_cases() {
            let norm = d.normalization_integral(Resolution::default());
            assert!(close(norm, 1.0, 1e-9), "{}: {}", d.label(), norm);
            for p in &grid {
                assert!(d.evaluate(p) >= 0.0);
            }
        }
    }

    #[test]
    fn uniform_normalization_is_exact() {
        let norm = SphereDensity::uniform().normalization_integral(Resolution::default());
        assert!(close(norm, 1.0, 1e-12));
    }

    #[test]
    fn case1b_with_zero_angle_is_case1a() {
        let a = SphereDensity::case1a();
        let b = SphereDensity::case1b([0.0, 1.0, 0.0], 0.0).unwrap();
        for p in fibonacci_grid(1000) {
            assert!(fabs(a.evaluate(&p) - b.evaluate(&p)) < 1e-15);
        }
    }

    #[test]
    fn case1b_default_symmetry_axis() {
        // symmetry axis = R(u, pi/3) z with u = (1,1,0)/sqrt(2)
        let d = SphereDensity::case1b_default();
        let m = [
            sqrt(3.0) / (2.0 * sqrt(2.0)),
            -sqrt(3.0) / (2.0 * sqrt(2.0)),
            0.5,
        ];
        for p in fibonacci_grid(1000) {
            let dotp = m[0] * p.x + m[1] * p.y + m[2] * p.z;
            assert!(fabs(d.evaluate(&p) - (1.0 + dotp) / (4.0 * PI)) < 1e-14);
        }
    }

    #[test]
    fn rotation_covariance() {
        let r = Rotation::from_axis_angle([0.6, 0.0, 0.8], 1.234).unwrap();
        for d in builtin_cases() {
            let rd = d.rotated(&r);
            for p in fibonacci_grid(300) {
                assert!(fabs(rd.evaluate(&r.apply(&p)) - d.evaluate(&p)) < 1e-12);
            }
            let rn = rd.normalization_integral(Resolution::default());
            assert!(close(rn, 1.0, 1e-9), "{}: {rn}", d.label());
        }
    }

    #[test]
    fn supremum_bounds_hold() {
        assert!(close(SphereDensity::uniform().supremum_estimate(), 1.0 / (4.0 * PI), 1e-15));
        assert!(close(SphereDensity::case1a().supremum_estimate(), 1.0 / (2.0 * PI), 1e-15));
        assert!(close(SphereDensity::case2a().supremum_estimate(), 1.0 / PI, 1e-15));
        for d in builtin_cases() {
            let bound = d.supremum_estimate();
            for p in fibonacci_grid(10_000) {
                assert!(d.evaluate(&p) <= bound + 1e-15);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let d = SphereDensity::case2a();
        let a = d.sample(5000, 99).unwrap();
        let b = d.sample(5000, 99).unwrap();
        assert_eq!(a, b);
        let c = d.sample(5000, 100).unwrap();
        assert_ne!(a.points, c.points);
        assert!(d.sample(0, 1).unwrap().points.is_empty());
    }

    #[test]
    fn sample_prefix_stability_across_chunks() {
        // a longer run starts with the shorter run's points
        let d = SphereDensity::case1a();
        let short = d.sample(CHUNK_SIZE, 7).unwrap();
        let long = d.sample(CHUNK_SIZE + 1000, 7).unwrap();
        assert_eq!(&long.points[..CHUNK_SIZE], &short.points[..]);
    }

    #[test]
    fn case1a_sample_mean_z_is_one_third() {
        let n = 1_000_000;
        let s = SphereDensity::case1a().sample(n, 12345).unwrap();
        let mean: f64 = s.points.iter().map(|p| p.z).sum::<f64>() / n as f64;
        // Var(z) = 2/9, so SE = sqrt(2/9/n)
        let se = sqrt(2.0 / 9.0 / n as f64);
        assert!(fabs(mean - 1.0 / 3.0) < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn custom_matches_case3() {
        let d = SphereDensity::custom_normalized(1, &[(1, 0.5, 0.0), (2, 0.0, 0.5)]);
        let c3 = SphereDensity::case3();
        for p in fibonacci_grid(500) {
            assert!(fabs(d.evaluate(&p) - c3.evaluate(&p)) < 1e-15);
        }
        assert!(close(d.normalization_integral(Resolution::default()), 1.0, 1e-10));
    }

    #[test]
    fn pathological_density_is_reported() {
        // polar exponent concentrates mass at the pole (acceptance
        // 1/(p+1)) and the aligned-harmonic comb concentrates the
        // azimuth (acceptance ~ 1/K up to a log), so the combined
        // acceptance is far below the 1e-4 cutoff
        let comb: std::vec::Vec<(u32, f64, f64)> = (1..=100).map(|k| (k, 1.0, 0.0)).collect();
        let spike = SphereDensity::custom(1000, &comb, 1.0);
        match spike.sample(200_000, 3) {
            Err(Error::PathologicalDensity { acceptance_rate }) => {
                assert!(acceptance_rate < 1e-4);
            }
            other => panic!(
                "expected pathological density, got {:?}",
                other.map(|s| s.points.len())
            ),
        }
        // a merely lopsided density still samples fine
        let d = SphereDensity::custom(0, &[(1, 0.99999, 0.0)], 1.0);
        assert_eq!(d.sample(1000, 3).unwrap().points.len(), 1000);
    }

    #[test]
    fn shifted_cosine_log_fourier_matches_numeric() {
        // phi0 chosen so the zero of B never lands exactly on the
        // dyadic trapezoid grids used for the numeric comparison
        let az = AzPart::ShiftedCosine { k: 1, phi0: 0.3 };
        let lf = az.log_fourier(12).unwrap();
        assert!(close(lf.lam0, -log(2.0), 1e-15));
        // each coefficient is a projection integral of ln B; check the
        // closed form against direct (trapezoid) integration, whose
        // error is set by the interior log singularity
        for k in 1..=6usize {
            let lc = crate::quadrature::adaptive_periodic(
                |phi| log(az.eval(phi).max(1e-300)) * cos(k as f64 * phi),
                1e-13,
                1 << 17,
            ) / PI;
            let ls = crate::quadrature::adaptive_periodic(
                |phi| log(az.eval(phi).max(1e-300)) * sin(k as f64 * phi),
                1e-13,
                1 << 17,
            ) / PI;
            assert!(close(lf.lc[k - 1], lc, 5e-3), "k={k}: {} vs {lc}", lf.lc[k - 1]);
            assert!(close(lf.ls[k - 1], ls, 5e-3), "k={k}: {} vs {ls}", lf.ls[k - 1]);
        }
        // and the constant term of the positive trig-poly route agrees
        // with direct integration
        let az3 = AzPart::TrigPoly {
            coeffs: vec![(1, 0.5, 0.0), (2, 0.0, 0.5)],
        };
        let lf3 = az3.log_fourier(8).unwrap();
        let direct = crate::quadrature::adaptive_periodic(
            |phi| log(az3.eval(phi)),
            1e-13,
            1 << 16,
        ) / (2.0 * PI);
        assert!(close(lf3.lam0, direct, 1e-12));
    }

    #[test]
    fn log_fourier_refuses_vanishing_trig_poly() {
        let az = AzPart::TrigPoly {
            coeffs: vec![(1, 1.0, 0.0)],
        };
        assert!(az.log_fourier(4).is_none());
    }
}
