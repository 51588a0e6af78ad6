//! Empirical distribution of the dissipation production and the
//! Evans-Searles symmetry `P(omega) = e^omega P(-omega)`: histograms,
//! the weighted log-ratio fit, the symmetry-plane predictor, and the
//! verdict matrix over the built-in cases.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use libm::{cos, fabs, log, sin, sqrt};

use crate::density::SphereDensity;
use crate::dissipation::{omega_of_point, OmegaValue};
use crate::error::Result;
use crate::geometry::{orthonormal_complement, Reflection, Rotation, SpherePoint, Vec3};
use crate::quadrature::{fibonacci_grid, theta_rule, Resolution};
use crate::rng::{uniform_sphere_point, ChunkRng, CHUNK_SIZE};

/// Default histogram bin width.
pub const DEFAULT_BIN_WIDTH: f64 = 0.05;
/// Bin pairs need at least this many counts on both sides to enter the fit.
pub const MIN_PAIR_COUNT: u64 = 10;
/// Fewer usable pairs than this makes the fit inconclusive.
pub const MIN_USABLE_PAIRS: usize = 5;
/// Verdict thresholds: |slope - 1|, |intercept|, minimum weighted R^2.
pub const SLOPE_TOLERANCE: f64 = 0.05;
pub const INTERCEPT_TOLERANCE: f64 = 0.05;
pub const R_SQUARED_MIN: f64 = 0.95;
/// Residual below which a reflection plane counts as a symmetry plane.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;
/// Accepted samples per deterministic sampling chunk.
pub const SAMPLE_CHUNK: usize = CHUNK_SIZE;

/// Binned empirical estimate of `P(omega)` with bins mirror-symmetric
/// about zero: bin `k >= 0` covers `[k w, (k+1) w)` and bin `-1-k`
/// covers `(-(k+1) w, -k w]`, so each bin has a mirror partner.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaHistogram {
    pub bin_width: f64,
    counts: BTreeMap<i64, u64>,
    /// All recorded trajectories, including excluded ones.
    pub total: u64,
    /// Trajectories whose dissipation was infinite (evolved point on a
    /// zero of the density) or undefined.
    pub excluded: u64,
    finite_sum: f64,
    finite_sum_sq: f64,
    pub seed: u64,
}

impl OmegaHistogram {
    pub fn new(bin_width: f64, seed: u64) -> Self {
        assert!(bin_width > 0.0);
        OmegaHistogram {
            bin_width,
            counts: BTreeMap::new(),
            total: 0,
            excluded: 0,
            finite_sum: 0.0,
            finite_sum_sq: 0.0,
            seed,
        }
    }

    pub fn bin_index(&self, omega: f64) -> i64 {
        if omega >= 0.0 {
            (omega / self.bin_width) as i64
        } else {
            -1 - (-omega / self.bin_width) as i64
        }
    }

    /// Midpoint of a bin; mirror bins have opposite centers.
    pub fn bin_center(&self, index: i64) -> f64 {
        (index as f64 + 0.5) * self.bin_width
    }

    pub fn record(&mut self, omega: OmegaValue) {
        self.total += 1;
        match omega.value() {
            Some(w) => {
                *self.counts.entry(self.bin_index(w)).or_insert(0) += 1;
                self.finite_sum += w;
                self.finite_sum_sq += w * w;
            }
            None => self.excluded += 1,
        }
    }

    /// Adds `count` trajectories directly into a bin, attributing the
    /// bin center to the running moments.  Intended for synthetic
    /// histograms in tests and tools.
    pub fn insert_count(&mut self, index: i64, count: u64) {
        let c = self.bin_center(index);
        *self.counts.entry(index).or_insert(0) += count;
        self.total += count;
        self.finite_sum += c * count as f64;
        self.finite_sum_sq += c * c * count as f64;
    }

    pub fn count(&self, index: i64) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    /// Occupied bins in ascending index order.
    pub fn bins(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().map(|(&i, &c)| (i, c))
    }

    pub fn finite_total(&self) -> u64 {
        self.total - self.excluded
    }

    /// Mean of the recorded finite values.
    pub fn mean(&self) -> f64 {
        self.finite_sum / self.finite_total() as f64
    }

    /// Standard error of the mean of the finite values.
    pub fn std_error(&self) -> f64 {
        let n = self.finite_total() as f64;
        let mean = self.finite_sum / n;
        let var = (self.finite_sum_sq / n - mean * mean).max(0.0);
        sqrt(var / n)
    }

    /// Folds another histogram into this one.  Merging partial
    /// histograms in chunk order reproduces a serial accumulation
    /// bit for bit.
    pub fn merge(&mut self, other: &OmegaHistogram) {
        assert_eq!(self.bin_width, other.bin_width);
        for (&i, &c) in &other.counts {
            *self.counts.entry(i).or_insert(0) += c;
        }
        self.total += other.total;
        self.excluded += other.excluded;
        self.finite_sum += other.finite_sum;
        self.finite_sum_sq += other.finite_sum_sq;
    }

    /// The histogram of `-omega`: bins and counts mirrored.
    pub fn mirrored(&self) -> OmegaHistogram {
        let mut out = OmegaHistogram::new(self.bin_width, self.seed);
        for (&i, &c) in &self.counts {
            out.counts.insert(-1 - i, c);
        }
        out.total = self.total;
        out.excluded = self.excluded;
        out.finite_sum = -self.finite_sum;
        out.finite_sum_sq = self.finite_sum_sq;
        out
    }
}

/// One sampling chunk of an `omega` histogram.  Chunk `i` depends only
/// on `(d, r, seed, i)`, so chunks can be computed in parallel and
/// merged in index order.
pub fn omega_histogram_chunk(
    d: &SphereDensity,
    r: &Rotation,
    seed: u64,
    chunk_index: u64,
    count: usize,
    bin_width: f64,
) -> Result<OmegaHistogram> {
    let mut h = OmegaHistogram::new(bin_width, seed);
    d.rejection_chunk(seed, chunk_index, count, |p| {
        match omega_of_point(d, r, &p) {
            Ok(w) => h.record(w),
            // accepted point sits below the density floor; exclude it
            // rather than aborting the whole run
            Err(_) => h.record(OmegaValue::Infinite),
        }
    })?;
    Ok(h)
}

/// Empirical `P(omega)` from `n` rejection-sampled trajectories.
pub fn omega_histogram(
    d: &SphereDensity,
    r: &Rotation,
    n: usize,
    seed: u64,
    bin_width: f64,
) -> Result<OmegaHistogram> {
    let mut h = OmegaHistogram::new(bin_width, seed);
    let mut chunk_index = 0u64;
    let mut remaining = n;
    while remaining > 0 {
        let count = remaining.min(SAMPLE_CHUNK);
        let part = omega_histogram_chunk(d, r, seed, chunk_index, count, bin_width)?;
        h.merge(&part);
        remaining -= count;
        chunk_index += 1;
    }
    Ok(h)
}

/// Deterministic cross-check of the histogram: bins the quadrature mass
/// `f(p) dOmega` by the `omega` of each node.  Returns
/// `(bin_center, probability_density)` pairs in ascending order.
pub fn omega_density_quadrature(
    d: &SphereDensity,
    r: &Rotation,
    res: Resolution,
    bin_width: f64,
) -> Vec<(f64, f64)> {
    let probe = OmegaHistogram::new(bin_width, 0);
    let mut mass: BTreeMap<i64, f64> = BTreeMap::new();
    let dphi = 2.0 * PI / res.n_phi as f64;
    for (theta, w) in theta_rule(res.n_theta) {
        for j in 0..res.n_phi {
            let phi = -PI + j as f64 * dphi;
            let p = SpherePoint::from_spherical(theta, phi);
            let f = d.evaluate(&p);
            if let Ok(OmegaValue::Finite(omega)) = omega_of_point(d, r, &p) {
                *mass.entry(probe.bin_index(omega)).or_insert(0.0) += w * dphi * f;
            }
        }
    }
    mass.into_iter()
        .map(|(i, m)| (probe.bin_center(i), m / bin_width))
        .collect()
}

/// Outcome of an ESFT test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The density is invariant under the rotation, so `omega` is
    /// identically zero and the symmetry is trivially satisfied.
    HoldsDegenerate,
    Violated,
    Inconclusive,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds | Verdict::HoldsDegenerate)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::HoldsDegenerate => "holds (degenerate)",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Diagnostics of the weighted fit of `ln[P(omega)/P(-omega)]` vs
/// `omega`, which the ESFT predicts to be the identity line.
#[derive(Debug, Clone, PartialEq)]
pub struct EsftReport {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub usable_pairs: usize,
    pub verdict: Verdict,
    pub slope_tolerance: f64,
    pub intercept_tolerance: f64,
    pub r_squared_min: f64,
}

/// The fitted log-ratio points: `(omega_k, y_k, weight_k)`.
pub fn log_ratio_points(h: &OmegaHistogram) -> Vec<(f64, f64, f64)> {
    let mut pts = Vec::new();
    let max_index = h.bins().map(|(i, _)| if i >= 0 { i } else { -1 - i }).max();
    let Some(max_index) = max_index else {
        return pts;
    };
    for k in 0..=max_index {
        let n_plus = h.count(k);
        let n_minus = h.count(-1 - k);
        if n_plus >= MIN_PAIR_COUNT && n_minus >= MIN_PAIR_COUNT {
            let x = h.bin_center(k);
            let y = log(n_plus as f64 / n_minus as f64);
            // delta-method variance of the log-ratio of Poisson counts
            let w = 1.0 / (1.0 / n_plus as f64 + 1.0 / n_minus as f64);
            pts.push((x, y, w));
        }
    }
    pts
}

/// Weighted least-squares test of `P(omega) = e^omega P(-omega)`.
pub fn esft_fit(h: &OmegaHistogram) -> EsftReport {
    let pts = log_ratio_points(h);
    let usable_pairs = pts.len();
    if usable_pairs < MIN_USABLE_PAIRS {
        return EsftReport {
            slope: f64::NAN,
            intercept: f64::NAN,
            r_squared: f64::NAN,
            usable_pairs,
            verdict: Verdict::Inconclusive,
            slope_tolerance: SLOPE_TOLERANCE,
            intercept_tolerance: INTERCEPT_TOLERANCE,
            r_squared_min: R_SQUARED_MIN,
        };
    }
    let (mut s, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, y, w) in &pts {
        s += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    let slope = (s * sxy - sx * sy) / (s * sxx - sx * sx);
    let intercept = (sy - slope * sx) / s;
    let y_bar = sy / s;
    let (mut ss_res, mut ss_tot) = (0.0, 0.0);
    for &(x, y, w) in &pts {
        let fit = slope * x + intercept;
        ss_res += w * (y - fit) * (y - fit);
        ss_tot += w * (y - y_bar) * (y - y_bar);
    }
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res <= 1e-24 {
        1.0
    } else {
        0.0
    };
    let verdict = if fabs(slope - 1.0) <= SLOPE_TOLERANCE
        && fabs(intercept) <= INTERCEPT_TOLERANCE
        && r_squared >= R_SQUARED_MIN
    {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    EsftReport {
        slope,
        intercept,
        r_squared,
        usable_pairs,
        verdict,
        slope_tolerance: SLOPE_TOLERANCE,
        intercept_tolerance: INTERCEPT_TOLERANCE,
        r_squared_min: R_SQUARED_MIN,
    }
}

/// Prediction of whether the ESFT should hold for a rotation axis:
/// true iff some plane containing the axis is a symmetry plane of the
/// density.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryVerdict {
    pub predicted: bool,
    /// Normal of the best symmetry plane, when one was found.
    pub plane_normal: Option<[f64; 3]>,
    /// `max |f(reflect p) - f(p)|` over the test grid at the optimum.
    pub residual: f64,
}

fn reflection_residual(d: &SphereDensity, grid: &[SpherePoint], normal: Vec3) -> f64 {
    let refl = Reflection::new(normal).unwrap();
    let mut worst: f64 = 0.0;
    for p in grid {
        worst = worst.max(fabs(d.evaluate(&refl.apply(p)) - d.evaluate(p)));
    }
    worst
}

/// Scans plane normals perpendicular to `axis` (i.e. planes containing
/// the axis) for one whose reflection fixes the density: 720-step
/// coarse scan over half a turn, then golden-section refinement.
pub fn symmetry_plane_search(d: &SphereDensity, axis: Vec3) -> Result<SymmetryVerdict> {
    // validates and normalises the axis
    let axis = Rotation::from_axis_angle(axis, 0.0)?.axis();
    let (e1, e2) = orthonormal_complement(&axis);
    let normal_at = |psi: f64| -> Vec3 {
        [
            cos(psi) * e1[0] + sin(psi) * e2[0],
            cos(psi) * e1[1] + sin(psi) * e2[1],
            cos(psi) * e1[2] + sin(psi) * e2[2],
        ]
    };
    let grid = fibonacci_grid(2000);
    let res_at = |psi: f64| reflection_residual(d, &grid, normal_at(psi));

    let steps = 720;
    let mut best_psi = 0.0;
    let mut best = f64::INFINITY;
    for i in 0..steps {
        let psi = i as f64 * PI / steps as f64;
        let r = res_at(psi);
        if r < best {
            best = r;
            best_psi = psi;
        }
    }

    // golden-section refinement around the coarse minimum
    let gr = 0.5 * (sqrt(5.0) - 1.0);
    let (mut a, mut b) = (best_psi - PI / steps as f64, best_psi + PI / steps as f64);
    let mut c = b - gr * (b - a);
    let mut dd = a + gr * (b - a);
    let (mut fc, mut fd) = (res_at(c), res_at(dd));
    while b - a > 1e-10 {
        if fc < fd {
            b = dd;
            dd = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = res_at(c);
        } else {
            a = c;
            c = dd;
            fc = fd;
            dd = a + gr * (b - a);
            fd = res_at(dd);
        }
    }
    let psi = 0.5 * (a + b);
    let residual = res_at(psi).min(best);
    let predicted = residual < SYMMETRY_TOLERANCE;
    Ok(SymmetryVerdict {
        predicted,
        plane_normal: predicted.then(|| normal_at(if res_at(psi) <= best { psi } else { best_psi })),
        residual,
    })
}

/// Max deviation of `M^R S M^R S` from the identity over `n_points`
/// pseudo-random points (fixed internal stream, so the check is
/// reproducible).
pub fn involution_check(r: &Rotation, plane_normal: Vec3, n_points: usize) -> Result<f64> {
    let refl = Reflection::new(plane_normal)?;
    let mut rng = ChunkRng::new(0x6f62_7665_7273_696d, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..n_points {
        let p = uniform_sphere_point(&mut rng);
        let q = refl.apply(&r.apply(&refl.apply(&r.apply(&p))));
        worst = worst.max(q.distance(&p));
    }
    Ok(worst)
}

/// True when the density is (numerically) invariant under the rotation,
/// i.e. `omega` is identically zero.
pub fn rotation_invariant(d: &SphereDensity, r: &Rotation) -> bool {
    fibonacci_grid(2000)
        .iter()
        .all(|p| fabs(d.evaluate(&r.apply(p)) - d.evaluate(p)) < 1e-12)
}

/// The rows of the verdict table, in order.
pub fn table_cases() -> Vec<SphereDensity> {
    alloc::vec![
        SphereDensity::case1a(),
        SphereDensity::case1b_default(),
        SphereDensity::case2a(),
        SphereDensity::case2b(),
        SphereDensity::case3(),
    ]
}

/// The Cartesian axes, labelled.
pub const CARTESIAN_AXES: [([f64; 3], &str); 3] = [
    ([1.0, 0.0, 0.0], "x"),
    ([0.0, 1.0, 0.0], "y"),
    ([0.0, 0.0, 1.0], "z"),
];

/// Seed used for one (case, axis) table entry.
pub fn table_entry_seed(seed: u64, entry_index: u64) -> u64 {
    seed.wrapping_add(entry_index)
}

/// One cell of the verdict table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableEntry {
    pub case_label: &'static str,
    pub axis_label: &'static str,
    pub predicted: bool,
    pub symmetry_residual: f64,
    pub empirical: Verdict,
    /// Fit details, absent for degenerate entries.
    pub report: Option<EsftReport>,
}

/// Classifies one (case, axis) pair given its sampled histogram (or
/// `None` when the rotation leaves the density invariant).
pub fn classify_entry(
    d: &SphereDensity,
    axis: ([f64; 3], &'static str),
    hist: Option<&OmegaHistogram>,
) -> Result<TableEntry> {
    let sym = symmetry_plane_search(d, axis.0)?;
    let (empirical, report) = match hist {
        None => (Verdict::HoldsDegenerate, None),
        Some(h) => {
            let rep = esft_fit(h);
            (rep.verdict, Some(rep))
        }
    };
    Ok(TableEntry {
        case_label: d.label(),
        axis_label: axis.1,
        predicted: sym.predicted,
        symmetry_residual: sym.residual,
        empirical,
        report,
    })
}

/// Empirical and predicted ESFT verdicts for every built-in case and
/// Cartesian axis at a common rotation angle.
pub fn table_matrix(angle: f64, n: usize, seed: u64) -> Result<Vec<TableEntry>> {
    let mut entries = Vec::new();
    let mut idx = 0u64;
    for d in table_cases() {
        for axis in CARTESIAN_AXES {
            let r = Rotation::from_axis_angle(axis.0, angle)?;
            let entry = if rotation_invariant(&d, &r) {
                classify_entry(&d, axis, None)?
            } else {
                let h = omega_histogram(&d, &r, n, table_entry_seed(seed, idx), DEFAULT_BIN_WIDTH)?;
                classify_entry(&d, axis, Some(&h))?
            };
            entries.push(entry);
            idx += 1;
        }
    }
    Ok(entries)
}
