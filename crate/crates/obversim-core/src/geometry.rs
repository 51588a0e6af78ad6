//! Points, rotations and reflections on the Bloch sphere, plus the
//! SU(2) double cover.

use core::ops::Mul;

use libm::{atan2, cos, fabs, sin, sqrt};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance within which an axis is silently renormalised.
const AXIS_TOL: f64 = 1e-9;

pub(crate) type Vec3 = [f64; 3];
pub(crate) type Mat3 = [[f64; 3]; 3];

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm(a: &Vec3) -> f64 {
    sqrt(dot(a, a))
}

pub(crate) fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub(crate) fn mat_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

pub(crate) fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

pub(crate) fn transpose(m: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i];
        }
    }
    out
}

fn unit_axis(axis: Vec3) -> Result<Vec3> {
    let n = norm(&axis);
    if fabs(n - 1.0) > AXIS_TOL {
        return Err(Error::InvalidAxis { norm: n });
    }
    Ok(scale(&axis, 1.0 / n))
}

/// A location on the unit sphere: the configuration of a two-level pure
/// state in Bloch coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpherePoint {
    /// Builds a point from Cartesian coordinates, renormalising small
    /// round-off in the radius.
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        let r = sqrt(x * x + y * y + z * z);
        SpherePoint {
            x: x / r,
            y: y / r,
            z: z / r,
        }
    }

    /// Builds a point from polar angle `theta` (from +z) and azimuth `phi`.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let st = sin(theta);
        SpherePoint {
            x: st * cos(phi),
            y: st * sin(phi),
            z: cos(theta),
        }
    }

    /// Polar angle in `[0, pi]`.
    pub fn theta(&self) -> f64 {
        atan2(sqrt(self.x * self.x + self.y * self.y), self.z)
    }

    /// Azimuth in `(-pi, pi]`; 0 at the poles, where the azimuth is a
    /// coordinate singularity.
    pub fn phi(&self) -> f64 {
        if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            atan2(self.y, self.x)
        }
    }

    pub(crate) fn as_vec(&self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    pub(crate) fn from_vec(v: Vec3) -> Self {
        SpherePoint {
            x: v[0],
            y: v[1],
            z: v[2],
        }
    }

    /// The inversion map: complex conjugation of the state, i.e. the
    /// transformation `phi -> -phi` on the Bloch sphere.
    pub fn conjugate(&self) -> Self {
        SpherePoint {
            x: self.x,
            y: -self.y,
            z: self.z,
        }
    }

    /// Euclidean distance to another point.
    pub fn distance(&self, other: &SpherePoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        sqrt(dx * dx + dy * dy + dz * dz)
    }
}

/// The inversion map `phi -> -phi` as a free function.
pub fn conjugate(p: &SpherePoint) -> SpherePoint {
    p.conjugate()
}

/// An orientation-preserving isometry of the sphere: the evolution map
/// for a time interval equal to the rotation angle.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    axis: Vec3,
    angle: f64,
    matrix: Mat3,
}

impl Rotation {
    /// Builds the rotation about `axis` (right-hand rule) by `angle`
    /// radians.
    ///
    /// Diagonal entries are `cos^2(t/2) + sin^2(t/2) (2 n_j^2 - 1)` and
    /// off-diagonal entries `2 n_j n_k sin^2(t/2) - eps_jkl n_l sin t`.
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Result<Self> {
        let n = unit_axis(axis)?;
        let h = sin(angle / 2.0);
        let h2 = h * h; // sin^2(t/2) = (1 - cos t)/2
        let c2 = 1.0 - h2; // cos^2(t/2)
        let s = sin(angle);
        let mut m = [[0.0; 3]; 3];
        for j in 0..3 {
            m[j][j] = c2 + h2 * (2.0 * n[j] * n[j] - 1.0);
        }
        // eps_jkl n_l for the three off-diagonal pairs
        m[0][1] = 2.0 * n[0] * n[1] * h2 - n[2] * s;
        m[1][0] = 2.0 * n[1] * n[0] * h2 + n[2] * s;
        m[0][2] = 2.0 * n[0] * n[2] * h2 + n[1] * s;
        m[2][0] = 2.0 * n[2] * n[0] * h2 - n[1] * s;
        m[1][2] = 2.0 * n[1] * n[2] * h2 - n[0] * s;
        m[2][1] = 2.0 * n[2] * n[1] * h2 + n[0] * s;
        Ok(Rotation {
            axis: n,
            angle,
            matrix: m,
        })
    }

    /// The identity rotation.
    pub fn identity() -> Self {
        Rotation {
            axis: [0.0, 0.0, 1.0],
            angle: 0.0,
            matrix: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    /// Applies the rotation to a point.
    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        SpherePoint::from_vec(mat_vec(&self.matrix, &p.as_vec()))
    }

    /// The inverse rotation (transpose matrix, negated angle).
    pub fn inverse(&self) -> Self {
        Rotation {
            axis: self.axis,
            angle: -self.angle,
            matrix: transpose(&self.matrix),
        }
    }

}

impl Mul<&Rotation> for &Rotation {
    type Output = Rotation;

    /// Composition: `(a * b).apply(p) == a.apply(&b.apply(p))`. The
    /// stored axis/angle of the product are not meaningful; only the
    /// matrix is.
    fn mul(self, rhs: &Rotation) -> Rotation {
        Rotation {
            axis: self.axis,
            angle: self.angle + rhs.angle,
            matrix: mat_mul(&self.matrix, &rhs.matrix),
        }
    }
}

/// Applies a rotation to a point (free-function form).
pub fn apply(rotation: &Rotation, p: &SpherePoint) -> SpherePoint {
    rotation.apply(p)
}

/// A mirror symmetry of the sphere: reflection in the plane through the
/// origin with the given unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    plane_normal: Vec3,
}

impl Reflection {
    pub fn new(plane_normal: Vec3) -> Result<Self> {
        Ok(Reflection {
            plane_normal: unit_axis(plane_normal)?,
        })
    }

    pub fn plane_normal(&self) -> Vec3 {
        self.plane_normal
    }

    /// `p -> p - 2 (m.p) m`.
    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        let m = &self.plane_normal;
        let d = 2.0 * dot(&p.as_vec(), m);
        SpherePoint {
            x: p.x - d * m[0],
            y: p.y - d * m[1],
            z: p.z - d * m[2],
        }
    }

    /// The reflection as a 3x3 matrix.
    pub fn matrix(&self) -> Mat3 {
        let m = &self.plane_normal;
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = if i == j { 1.0 } else { 0.0 } - 2.0 * m[i] * m[j];
            }
        }
        out
    }
}

/// Reflects a point (free-function form).
pub fn reflect(r: &Reflection, p: &SpherePoint) -> SpherePoint {
    r.apply(p)
}

/// A 2x2 unitary with unit determinant: the SU(2) representative of a
/// Bloch-sphere rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Matrix {
    /// Row-major entries.
    pub entries: [[Complex64; 2]; 2],
}

impl Su2Matrix {
    /// `I cos(a/2) - i (n . sigma) sin(a/2)` for rotation about `axis`
    /// by `angle`.
    pub fn from_rotation(axis: Vec3, angle: f64) -> Result<Self> {
        let n = unit_axis(axis)?;
        let c = cos(angle / 2.0);
        let s = sin(angle / 2.0);
        // n.sigma = [[nz, nx - i ny], [nx + i ny, -nz]]
        let e00 = Complex64::new(c, -n[2] * s);
        let e01 = Complex64::new(-n[1] * s, -n[0] * s);
        let e10 = Complex64::new(n[1] * s, -n[0] * s);
        let e11 = Complex64::new(c, n[2] * s);
        Ok(Su2Matrix {
            entries: [[e00, e01], [e10, e11]],
        })
    }

    pub fn determinant(&self) -> Complex64 {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Su2Matrix {
        let e = &self.entries;
        Su2Matrix {
            entries: [[e[0][0].conj(), e[1][0].conj()], [e[0][1].conj(), e[1][1].conj()]],
        }
    }

    pub fn mul(&self, rhs: &Su2Matrix) -> Su2Matrix {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Su2Matrix { entries: out }
    }

    /// The SO(3) matrix induced by conjugation of the Pauli vector:
    /// `R_jk = tr(sigma_j U sigma_k U^dag) / 2`.
    pub fn adjoint_action(&self) -> Mat3 {
        let paulis = pauli_matrices();
        let udag = self.adjoint();
        let mut r = [[0.0; 3]; 3];
        for (k, sk) in paulis.iter().enumerate() {
            // column k: U sigma_k U^dag expanded in the Pauli basis
            let m = self.mul(&Su2Matrix { entries: *sk }).mul(&udag);
            for (j, sj) in paulis.iter().enumerate() {
                // tr(sigma_j m) / 2
                let t = sj[0][0] * m.entries[0][0]
                    + sj[0][1] * m.entries[1][0]
                    + sj[1][0] * m.entries[0][1]
                    + sj[1][1] * m.entries[1][1];
                r[j][k] = 0.5 * t.re;
            }
        }
        r
    }
}

fn pauli_matrices() -> [[[Complex64; 2]; 2]; 3] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    [
        [[zero, one], [one, zero]],
        [[zero, Complex64::new(0.0, -1.0)], [Complex64::new(0.0, 1.0), zero]],
        [[one, zero], [zero, -one]],
    ]
}

/// Builds the SO(3) rotation (free-function form).
pub fn rotation_from_axis_angle(axis: Vec3, angle: f64) -> Result<Rotation> {
    Rotation::from_axis_angle(axis, angle)
}

/// Builds the SU(2) representative (free-function form).
pub fn su2_from_rotation(axis: Vec3, angle: f64) -> Result<Su2Matrix> {
    Su2Matrix::from_rotation(axis, angle)
}

/// An orthonormal pair spanning the plane perpendicular to `v` (assumed
/// unit length).
pub(crate) fn orthonormal_complement(v: &Vec3) -> (Vec3, Vec3) {
    // pick the coordinate axis least aligned with v
    let a = if fabs(v[0]) <= fabs(v[1]) && fabs(v[0]) <= fabs(v[2]) {
        [1.0, 0.0, 0.0]
    } else if fabs(v[1]) <= fabs(v[2]) {
        [0.0, 1.0, 0.0]
    } else {
        [0.0, 0.0, 1.0]
    };
    let mut e1 = cross(v, &a);
    e1 = scale(&e1, 1.0 / norm(&e1));
    let e2 = cross(v, &e1);
    (e1, e2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{uniform_sphere_point, ChunkRng};
    use core::f64::consts::{FRAC_PI_2, PI};

    const X: Vec3 = [1.0, 0.0, 0.0];
    const Y: Vec3 = [0.0, 1.0, 0.0];
    const Z: Vec3 = [0.0, 0.0, 1.0];

    /// Independent Rodrigues-formula oracle: R = I + sin t K + (1 - cos t) K^2.
    fn rodrigues(axis: Vec3, t: f64) -> Mat3 {
        let n = scale(&axis, 1.0 / norm(&axis));
        let k = [
            [0.0, -n[2], n[1]],
            [n[2], 0.0, -n[0]],
            [-n[1], n[0], 0.0],
        ];
        let k2 = mat_mul(&k, &k);
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { 1.0 } else { 0.0 };
                m[i][j] = id + sin(t) * k[i][j] + (1.0 - cos(t)) * k2[i][j];
            }
        }
        m
    }

    fn max_entry_diff(a: &Mat3, b: &Mat3) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max(fabs(a[i][j] - b[i][j]));
            }
        }
        d
    }

    #[test]
    fn zero_angle_is_identity() {
        let r = Rotation::from_axis_angle([0.3, -0.8, 0.5196152422706632], 0.0).unwrap();
        assert!(max_entry_diff(r.matrix(), Rotation::identity().matrix()) < 1e-15);
    }

    #[test]
    fn quarter_turn_about_z_maps_x_to_y() {
        let r = Rotation::from_axis_angle(Z, FRAC_PI_2).unwrap();
        let p = r.apply(&SpherePoint::new(1.0, 0.0, 0.0));
        assert!(fabs(p.x) < 1e-15 && fabs(p.y - 1.0) < 1e-15 && fabs(p.z) < 1e-15);
    }

    #[test]
    fn component_formula_matches_frozen_matrix_and_rodrigues() {
        let r = Rotation::from_axis_angle(X, 2.0 * PI / 3.0).unwrap();
        let s3 = sqrt(3.0) / 2.0;
        let expected = [[1.0, 0.0, 0.0], [0.0, -0.5, -s3], [0.0, s3, -0.5]];
        assert!(max_entry_diff(r.matrix(), &expected) < 1e-15);

        let mut rng = ChunkRng::new(11, 0);
        for _ in 0..200 {
            let axis = uniform_sphere_point(&mut rng).as_vec();
            let t = (rng.next_f64() - 0.5) * 20.0;
            let r = Rotation::from_axis_angle(axis, t).unwrap();
            assert!(max_entry_diff(r.matrix(), &rodrigues(axis, t)) < 1e-13);
        }
    }

    #[test]
    fn rotation_matrix_is_special_orthogonal_and_fixes_axis() {
        let axis = [0.6, -0.48, 0.6400000000000001];
        let r = Rotation::from_axis_angle(axis, 1.234).unwrap();
        let m = r.matrix();
        let mtm = mat_mul(&transpose(m), m);
        assert!(max_entry_diff(&mtm, Rotation::identity().matrix()) < 1e-12);
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        assert!(fabs(det - 1.0) < 1e-12);
        let fixed = mat_vec(m, &r.axis());
        for i in 0..3 {
            assert!(fabs(fixed[i] - r.axis()[i]) < 1e-12);
        }
    }

    #[test]
    fn zero_axis_is_rejected() {
        assert!(matches!(
            Rotation::from_axis_angle([0.0, 0.0, 0.0], 1.0),
            Err(Error::InvalidAxis { .. })
        ));
        assert!(matches!(
            Su2Matrix::from_rotation([0.0, 0.0, 0.0], 1.0),
            Err(Error::InvalidAxis { .. })
        ));
    }

    #[test]
    fn apply_quarter_turn_about_x_sends_z_to_minus_y() {
        let r = Rotation::from_axis_angle(X, FRAC_PI_2).unwrap();
        let p = r.apply(&SpherePoint::new(0.0, 0.0, 1.0));
        assert!(fabs(p.x) < 1e-15 && fabs(p.y + 1.0) < 1e-15 && fabs(p.z) < 1e-15);
    }

    #[test]
    fn rotations_preserve_unit_norm() {
        let mut rng = ChunkRng::new(3, 0);
        for _ in 0..1000 {
            let axis = uniform_sphere_point(&mut rng).as_vec();
            let t = (rng.next_f64() - 0.5) * 20.0;
            let r = Rotation::from_axis_angle(axis, t).unwrap();
            let p = r.apply(&uniform_sphere_point(&mut rng));
            assert!(fabs(norm(&p.as_vec()) - 1.0) < 1e-12);
        }
    }

    #[test]
    fn conjugate_flips_y_and_phi() {
        let p = SpherePoint::new(0.0, 1.0, 0.0).conjugate();
        assert!(fabs(p.y + 1.0) < 1e-15);

        let p = SpherePoint::from_spherical(PI / 3.0, PI / 4.0);
        let c = p.conjugate();
        assert!(fabs(c.theta() - PI / 3.0) < 1e-15);
        assert!(fabs(c.phi() + PI / 4.0) < 1e-15);

        assert!(p.conjugate().conjugate().distance(&p) < 1e-16);
    }

    #[test]
    fn reflection_in_xz_plane_is_conjugation() {
        let refl = Reflection::new(Y).unwrap();
        let mut rng = ChunkRng::new(5, 0);
        for _ in 0..100 {
            let p = uniform_sphere_point(&mut rng);
            assert!(refl.apply(&p).distance(&p.conjugate()) < 1e-16);
        }
        let flipped = Reflection::new(X).unwrap().apply(&SpherePoint::new(1.0, 0.0, 0.0));
        assert!(flipped.distance(&SpherePoint::new(-1.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn reflections_are_involutions() {
        let mut rng = ChunkRng::new(6, 0);
        let refl = Reflection::new(scale(&[1.0, 2.0, -2.0], 1.0 / 3.0)).unwrap();
        for _ in 0..1000 {
            let p = uniform_sphere_point(&mut rng);
            assert!(refl.apply(&refl.apply(&p)).distance(&p) < 1e-12);
        }
    }

    #[test]
    fn fixed_axis_rotations_compose_additively() {
        let axis = [0.2672612419124244, -0.5345224838248488, 0.8017837257372732];
        let a = Rotation::from_axis_angle(axis, 0.7).unwrap();
        let b = Rotation::from_axis_angle(axis, 1.9).unwrap();
        let ab = Rotation::from_axis_angle(axis, 2.6).unwrap();
        assert!(max_entry_diff((&a * &b).matrix(), ab.matrix()) < 1e-12);
    }

    #[test]
    fn isometries_preserve_pairwise_distances() {
        let mut rng = ChunkRng::new(8, 0);
        let pts: std::vec::Vec<SpherePoint> =
            (0..40).map(|_| uniform_sphere_point(&mut rng)).collect();
        let r = Rotation::from_axis_angle([0.48, 0.6, 0.6400000000000001], 2.2).unwrap();
        let refl = Reflection::new([0.0, 0.8, -0.6]).unwrap();
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let d = pts[i].distance(&pts[j]);
                assert!(fabs(r.apply(&pts[i]).distance(&r.apply(&pts[j])) - d) < 1e-12);
                assert!(fabs(refl.apply(&pts[i]).distance(&refl.apply(&pts[j])) - d) < 1e-12);
            }
        }
    }

    #[test]
    fn spherical_round_trip() {
        let mut rng = ChunkRng::new(9, 0);
        for _ in 0..1000 {
            let theta = rng.next_f64() * (PI - 2e-6) + 1e-6;
            let phi = (rng.next_f64() - 0.5) * (2.0 * PI - 1e-9);
            let p = SpherePoint::from_spherical(theta, phi);
            assert!(fabs(p.theta() - theta) < 1e-12);
            assert!(fabs(p.phi() - phi) < 1e-12);
            let q = SpherePoint::from_spherical(p.theta(), p.phi());
            assert!(p.distance(&q) < 1e-12);
        }
    }

    #[test]
    fn su2_zero_angle_is_identity() {
        let u = Su2Matrix::from_rotation([0.0, 1.0, 0.0], 0.0).unwrap();
        assert!((u.entries[0][0] - Complex64::new(1.0, 0.0)).l1_norm() < 1e-15);
        assert!(u.entries[0][1].l1_norm() < 1e-15);
        assert!(u.entries[1][0].l1_norm() < 1e-15);
        assert!((u.entries[1][1] - Complex64::new(1.0, 0.0)).l1_norm() < 1e-15);
    }

    #[test]
    fn su2_half_turn_about_z() {
        let u = Su2Matrix::from_rotation(Z, PI).unwrap();
        assert!((u.entries[0][0] - Complex64::new(0.0, -1.0)).l1_norm() < 1e-15);
        assert!((u.entries[1][1] - Complex64::new(0.0, 1.0)).l1_norm() < 1e-15);
        assert!(u.entries[0][1].l1_norm() < 1e-15 && u.entries[1][0].l1_norm() < 1e-15);
    }

    #[test]
    fn su2_is_unitary_with_unit_determinant() {
        let u = Su2Matrix::from_rotation([0.6, 0.0, 0.8], 2.4).unwrap();
        let prod = u.mul(&u.adjoint());
        assert!((prod.entries[0][0] - Complex64::new(1.0, 0.0)).l1_norm() < 1e-12);
        assert!(prod.entries[0][1].l1_norm() < 1e-12);
        assert!(prod.entries[1][0].l1_norm() < 1e-12);
        assert!((prod.entries[1][1] - Complex64::new(1.0, 0.0)).l1_norm() < 1e-12);
        assert!((u.determinant() - Complex64::new(1.0, 0.0)).l1_norm() < 1e-12);
    }

    #[test]
    fn adjoint_action_matches_so3_on_random_inputs() {
        let mut rng = ChunkRng::new(12, 0);
        for _ in 0..100 {
            let axis = uniform_sphere_point(&mut rng).as_vec();
            let t = (rng.next_f64() - 0.5) * 4.0 * PI;
            let u = Su2Matrix::from_rotation(axis, t).unwrap();
            let r = Rotation::from_axis_angle(axis, t).unwrap();
            assert!(max_entry_diff(&u.adjoint_action(), r.matrix()) < 1e-12);
        }
    }

    #[test]
    fn double_cover_sign() {
        let axis = [0.0, 0.6, 0.8];
        let t = 1.3;
        let u1 = Su2Matrix::from_rotation(axis, t).unwrap();
        let u2 = Su2Matrix::from_rotation(axis, t + 2.0 * PI).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((u1.entries[i][j] + u2.entries[i][j]).l1_norm() < 1e-12);
            }
        }
        let r = Rotation::from_axis_angle(axis, t).unwrap();
        assert!(max_entry_diff(&u2.adjoint_action(), r.matrix()) < 1e-12);
    }

    #[test]
    fn reflection_rotation_involution_identity() {
        // For any plane containing the rotation axis,
        // reflect . rotate . reflect . rotate = identity.
        let mut rng = ChunkRng::new(13, 0);
        for _ in 0..20 {
            let axis = uniform_sphere_point(&mut rng).as_vec();
            let t = (rng.next_f64() - 0.5) * 20.0;
            let (e1, e2) = orthonormal_complement(&axis);
            let psi = rng.next_f64() * PI;
            let normal = [
                cos(psi) * e1[0] + sin(psi) * e2[0],
                cos(psi) * e1[1] + sin(psi) * e2[1],
                cos(psi) * e1[2] + sin(psi) * e2[2],
            ];
            let r = Rotation::from_axis_angle(axis, t).unwrap();
            let refl = Reflection::new(normal).unwrap();
            for _ in 0..50 {
                let p = uniform_sphere_point(&mut rng);
                let q = refl.apply(&r.apply(&refl.apply(&r.apply(&p))));
                assert!(q.distance(&p) < 1e-10);
            }
        }
    }
}
