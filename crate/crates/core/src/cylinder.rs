//! Surfaces of revolution around a geodesic axis in hyperbolic 3-space:
//! a generator geodesic rotated about the z-diameter of the Poincare ball,
//! the common-perpendicular neck circle, parametric sampling, and the
//! combinatorial cylinder mesh with eight triangles at each vertex.

use crate::error::{Error, Result};
use crate::hypmath::{rotate_about_z, BallPoint, Geodesic3, IdealEndpoint, POINT_TOLERANCE};
use crate::mesh::{grow_band, TriMesh};
use crate::scalar::{real, Real};

/// Hyperbolic distance from a ball point to the z-diameter geodesic.
///
/// Through the hyperboloid model the distance to the axis closes to
/// `asinh(2 sqrt(x^2 + y^2) / (1 - |b|^2))`, exact at the axis and stable
/// near the boundary sphere.
pub fn distance_to_z_axis<T: Real>(p: BallPoint<T>) -> T {
    let rho = (p.x() * p.x() + p.y() * p.y()).sqrt();
    let two = T::one() + T::one();
    (two * rho / (T::one() - p.norm_sq())).asinh()
}

/// Distance from the generator point at chord parameter `t` to the z-axis
/// geodesic. Errors at `t <= 0` or `t >= 1`, where the generator point is
/// ideal and the distance infinite.
pub fn distance_to_axis<T: Real>(g: &Geodesic3<T>, t: T) -> Result<T> {
    Ok(distance_to_z_axis(g.point_at(t)?))
}

/// Golden-section search for the minimum of a unimodal function on [a, b].
fn golden_section_min<T: Real>(f: impl Fn(T) -> T, mut a: T, mut b: T, tol: T) -> (T, T) {
    let inv_phi = real::<T>(0.618_033_988_749_894_9);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

const PARAM_EPS: f64 = 1e-9;
const NECK_PARAM_TOL: f64 = 1e-10;

/// `sinh^2` of the distance from the generator point at `t` to the z-axis,
/// written directly on the projective chord: with chord point c,
/// `sinh d = sqrt(cx^2 + cy^2) / sqrt(1 - |c|^2)`. A smooth rational function
/// of `t`, monotone in the distance, used to locate the minimizer.
fn axis_distance_surrogate<T: Real>(g: &Geodesic3<T>, t: T) -> T {
    let (e1, e2) = g.endpoints();
    let u = e1.unit();
    let v = e2.unit();
    let s = T::one() - t;
    let c = [
        s * u[0] + t * v[0],
        s * u[1] + t * v[1],
        s * u[2] + t * v[2],
    ];
    let rho_sq = c[0] * c[0] + c[1] * c[1];
    (rho_sq / (T::one() - (rho_sq + c[2] * c[2]))).max(T::zero())
}

fn min_distance_to_axis<T: Real>(g: &Geodesic3<T>) -> (T, T) {
    let lo = real::<T>(PARAM_EPS);
    let hi = T::one() - real::<T>(PARAM_EPS);
    let (mut t_min, _) = golden_section_min(
        |t| axis_distance_surrogate(g, t),
        lo,
        hi,
        real::<T>(NECK_PARAM_TOL),
    );
    // Value comparisons go flat within sqrt(eps) of the minimum; the vertex
    // of a three-point parabola across that plateau does not.
    let h = real::<T>(1e-5);
    if t_min - h > lo && t_min + h < hi {
        let f0 = axis_distance_surrogate(g, t_min - h);
        let f1 = axis_distance_surrogate(g, t_min);
        let f2 = axis_distance_surrogate(g, t_min + h);
        let curvature = f0 - f1 - f1 + f2;
        if curvature > T::zero() {
            let shift = (f0 - f2) / (curvature + curvature) * h;
            t_min += shift.max(-h).min(h);
        }
    }
    let distance = distance_to_z_axis(g.point_at(t_min).expect("parameter is interior"));
    (t_min, distance)
}

/// The cylinder: a surface of revolution obtained by rotating an
/// ultraparallel generator geodesic about the axis.
///
/// Constructions are normalized so the axis is the z-diameter; an axis given
/// as any other diameter is moved there by a rotation of the ball, applied to
/// the generator as well. Generators that meet the axis, or share an ideal
/// endpoint with it (no common perpendicular exists), are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderSurface<T> {
    generator: Geodesic3<T>,
}

/// The shortest simple closed curve on the infinite cylinder: the circle
/// where the common perpendicular of axis and generator sweeps around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeckCircle<T> {
    /// z-plane of the neck in the normalized frame.
    pub height: T,
    /// Distance from the axis to the neck circle.
    pub hyperbolic_radius: T,
    /// Hyperbolic length of the neck circle, `2 pi sinh(radius)`.
    pub circumference: T,
}

impl<T: Real> CylinderSurface<T> {
    /// Builds the cylinder from an axis diameter and a generator geodesic.
    pub fn new(axis: Geodesic3<T>, generator: Geodesic3<T>) -> Result<Self> {
        let (a1, a2) = axis.endpoints();
        let u1 = a1.unit();
        let u2 = a2.unit();
        let sum = [u1[0] + u2[0], u1[1] + u2[1], u1[2] + u2[2]];
        let off = (sum[0] * sum[0] + sum[1] * sum[1] + sum[2] * sum[2]).sqrt();
        if off > real::<T>(POINT_TOLERANCE) {
            return Err(Error::domain(
                "axis must be a diameter of the ball (antipodal ideal endpoints)",
            ));
        }
        // Rotate the frame so the axis becomes the z-diameter.
        let rotate = rotation_to_z(u2);
        let (g1, g2) = generator.endpoints();
        let v1 = apply(&rotate, g1.unit());
        let v2 = apply(&rotate, g2.unit());
        let generator = Geodesic3::new(
            IdealEndpoint::new(v1[0], v1[1], v1[2])?,
            IdealEndpoint::new(v2[0], v2[1], v2[2])?,
        )?;
        Self::from_generator(generator)
    }

    /// Builds the cylinder around the z-diameter axis directly.
    pub fn from_generator(generator: Geodesic3<T>) -> Result<Self> {
        let tol = real::<T>(POINT_TOLERANCE);
        for e in [generator.endpoints().0, generator.endpoints().1] {
            let u = e.unit();
            if (u[0] * u[0] + u[1] * u[1]).sqrt() < tol {
                return Err(Error::domain(
                    "generator shares an ideal endpoint with the axis; no common perpendicular exists",
                ));
            }
        }
        let (_, min_dist) = min_distance_to_axis(&generator);
        if min_dist <= tol {
            return Err(Error::domain("generator intersects the axis"));
        }
        Ok(CylinderSurface { generator })
    }

    pub fn axis(&self) -> Geodesic3<T> {
        Geodesic3::z_diameter()
    }

    pub fn generator(&self) -> Geodesic3<T> {
        self.generator
    }

    /// Point of the surface: the generator point at chord parameter `t`,
    /// rotated about the axis by `theta`.
    pub fn surface_point(&self, t: T, theta: T) -> Result<BallPoint<T>> {
        Ok(rotate_about_z(self.generator.point_at(t)?, theta))
    }

    /// Minimizes the distance to the axis along the generator by golden
    /// section (parameter tolerance 1e-10). By rotational symmetry the neck
    /// circle lies in the plane perpendicular to the axis through the
    /// minimizing point.
    pub fn neck(&self) -> NeckCircle<T> {
        let (t_min, radius) = min_distance_to_axis(&self.generator);
        let foot = self
            .generator
            .point_at(t_min)
            .expect("minimizer is interior");
        NeckCircle {
            height: foot.z(),
            hyperbolic_radius: radius,
            circumference: (T::PI() + T::PI()) * radius.sinh(),
        }
    }
}

/// Rotation matrix taking the unit vector `u` to the north pole (0, 0, 1).
fn rotation_to_z<T: Real>(u: [T; 3]) -> [[T; 3]; 3] {
    let target_dot = u[2];
    let eps = real::<T>(1e-12);
    if (T::one() - target_dot).abs() < eps {
        return identity();
    }
    if (T::one() + target_dot).abs() < eps {
        // Antipodal: half turn about the x-axis.
        let mut m = identity::<T>();
        m[1][1] = -T::one();
        m[2][2] = -T::one();
        return m;
    }
    // Rodrigues formula for the rotation with axis u x e_z.
    let w = [u[1], -u[0], T::zero()];
    let c = target_dot;
    let k = T::one() / (T::one() + c);
    let mut m = identity::<T>();
    let cross = [
        [T::zero(), T::zero(), w[1]],
        [T::zero(), T::zero(), -w[0]],
        [-w[1], w[0], T::zero()],
    ];
    for i in 0..3 {
        for j in 0..3 {
            let cross_sq = (0..3).fold(T::zero(), |acc, l| acc + cross[i][l] * cross[l][j]);
            m[i][j] = m[i][j] + cross[i][j] + cross_sq * k;
        }
    }
    m
}

fn identity<T: Real>() -> [[T; 3]; 3] {
    let mut m = [[T::zero(); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

fn apply<T: Real>(m: &[[T; 3]; 3], v: [T; 3]) -> [T; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// Combinatorial annulus with eight triangles at every interior vertex: a
/// central neck ring of `neck_count` vertices with `rows_per_side` bands of
/// triangles grown symmetrically on both sides. Ring sizes away from the neck
/// follow the recurrence forced by the degree-8 condition.
///
/// `rows_per_side = 0` returns just the bare neck ring (no faces).
pub fn build_cylinder_mesh(rows_per_side: u32, neck_count: u32) -> Result<TriMesh> {
    if neck_count < 3 {
        return Err(Error::domain("the neck ring needs at least 3 vertices"));
    }
    let n0 = neck_count as usize;
    let neck: Vec<u32> = (0..neck_count).collect();
    if rows_per_side == 0 {
        return TriMesh::from_oriented_faces(n0, Vec::new(), vec![0; n0], Vec::new());
    }
    let mut faces: Vec<[u32; 3]> = Vec::new();
    let mut face_layers: Vec<u32> = Vec::new();
    let mut vertex_layers: Vec<u32> = vec![0; n0];
    let mut next_id = neck_count;

    for side in 0..2 {
        // The second side grows across the reversed neck ring so that the
        // shared ring edges are traversed once in each direction.
        let mut ring: Vec<u32> = if side == 0 {
            neck.clone()
        } else {
            neck.iter().rev().copied().collect()
        };
        // The neck splits its six cross slots evenly: three per side.
        let mut down = vec![3u32; n0];
        let mut first_band = true;
        for band in 1..=rows_per_side {
            let up: Vec<u32> = if first_band {
                down.clone()
            } else {
                down.iter().map(|&d| 6 - d).collect()
            };
            first_band = false;
            let band_size: usize = up.iter().map(|&m| m as usize).sum();
            let (outer, outer_down) = grow_band(&mut next_id, &ring, &up, &mut faces);
            face_layers.extend(std::iter::repeat_n(band - 1, band_size));
            vertex_layers.extend(std::iter::repeat_n(band, outer.len()));
            ring = outer;
            down = outer_down;
        }
    }

    TriMesh::from_oriented_faces(next_id as usize, faces, vertex_layers, face_layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypmath::ball_distance;

    fn symmetric_generator(theta: f64) -> Geodesic3<f64> {
        Geodesic3::new(
            IdealEndpoint::from_polar(theta, 0.0),
            IdealEndpoint::from_polar(core::f64::consts::PI - theta, 0.0),
        )
        .unwrap()
    }

    fn skew_generator() -> Geodesic3<f64> {
        Geodesic3::new(
            IdealEndpoint::from_polar(0.7, 0.2),
            IdealEndpoint::from_polar(2.3, 1.4),
        )
        .unwrap()
    }

    #[test]
    fn axis_distance_matches_the_radial_identity() {
        // For a point on the positive x-axis the nearest axis point is the
        // origin, so the distance is 2 atanh(r).
        for r in [0.1f64, 0.4, 0.8, 0.95] {
            let p = BallPoint::new(r, 0.0, 0.0).unwrap();
            let expect = 2.0 * r.atanh();
            assert!((distance_to_z_axis(p) - expect).abs() < 1e-12);
        }
        let on_axis = BallPoint::new(0.0, 0.0, 0.6).unwrap();
        assert_eq!(distance_to_z_axis(on_axis), 0.0);
    }

    #[test]
    fn axis_distance_is_rotation_invariant() {
        let p = BallPoint::new(0.3, -0.2, 0.45).unwrap();
        let d0 = distance_to_z_axis(p);
        for j in 1..16 {
            let theta = 2.0 * core::f64::consts::PI * j as f64 / 16.0;
            let d = distance_to_z_axis(rotate_about_z(p, theta));
            assert!((d - d0).abs() < 1e-12);
        }
    }

    #[test]
    fn generator_parameter_domain() {
        let g = skew_generator();
        assert!(distance_to_axis(&g, 0.0).is_err());
        assert!(distance_to_axis(&g, 1.0).is_err());
        assert!(distance_to_axis(&g, -0.2).is_err());
        assert!(distance_to_axis(&g, 0.5).is_ok());
    }

    #[test]
    fn crossing_generator_has_zero_minimum() {
        // A diameter through the origin meets the axis; the function itself
        // is still well defined and its minimum is essentially zero.
        let g = Geodesic3::new(
            IdealEndpoint::from_polar(0.9, 0.0),
            IdealEndpoint::from_polar(core::f64::consts::PI - 0.9, core::f64::consts::PI),
        )
        .unwrap();
        let (_, min) = super::min_distance_to_axis(&g);
        assert!(min < 1e-9);
        assert!(CylinderSurface::from_generator(g).is_err());
    }

    #[test]
    fn asymptotic_generator_is_rejected() {
        let g = Geodesic3::new(
            IdealEndpoint::new(0.0, 0.0, 1.0).unwrap(),
            IdealEndpoint::from_polar(1.2, 0.3),
        )
        .unwrap();
        assert!(CylinderSurface::from_generator(g).is_err());
    }

    #[test]
    fn symmetric_neck_sits_on_the_equator() {
        let c = CylinderSurface::from_generator(symmetric_generator(1.0)).unwrap();
        let neck = c.neck();
        assert!(neck.height.abs() < 1e-9, "height {}", neck.height);
        assert!(neck.hyperbolic_radius > 0.0);
        let expect = 2.0 * core::f64::consts::PI * neck.hyperbolic_radius.sinh();
        assert_eq!(neck.circumference, expect);
    }

    #[test]
    fn golden_section_agrees_with_a_dense_grid() {
        let g = skew_generator();
        let (t_gold, d_gold) = super::min_distance_to_axis(&g);
        let mut best = (0.0f64, f64::INFINITY);
        let n = 10_000;
        for i in 1..n {
            let t = i as f64 / n as f64;
            let d = distance_to_axis(&g, t).unwrap();
            if d < best.1 {
                best = (t, d);
            }
        }
        assert!((d_gold - best.1).abs() < 1e-6);
        assert!((t_gold - best.0).abs() < 1e-3);
    }

    #[test]
    fn distance_is_convex_along_the_generator() {
        // Chord condition on arclength-parametrized samples.
        let g = skew_generator();
        let samples: Vec<(f64, f64)> = (1..200)
            .map(|i| {
                let t = i as f64 / 200.0;
                let p = g.point_at(t).unwrap();
                let mid = g.point_at(0.5).unwrap();
                let s = ball_distance(mid, p) * if t < 0.5 { -1.0 } else { 1.0 };
                (s, distance_to_axis(&g, t).unwrap())
            })
            .collect();
        let mut descents = 0;
        let mut ascents = 0;
        for w in samples.windows(3) {
            let (s1, f1) = w[0];
            let (s2, f2) = w[1];
            let (s3, f3) = w[2];
            let chord = ((s3 - s2) * f1 + (s2 - s1) * f3) / (s3 - s1);
            assert!(f2 <= chord + 1e-9, "convexity violated near s = {s2}");
            if f3 < f2 {
                descents += 1;
            }
            if f3 > f2 {
                ascents += 1;
            }
        }
        assert!(descents > 0 && ascents > 0);
    }

    #[test]
    fn neck_radius_is_rotation_invariant() {
        let base = symmetric_generator(0.8);
        let r0 = CylinderSurface::from_generator(base)
            .unwrap()
            .neck()
            .hyperbolic_radius;
        for j in 1..16 {
            let theta = 2.0 * core::f64::consts::PI * j as f64 / 16.0;
            let c = CylinderSurface::from_generator(base.rotated_z(theta)).unwrap();
            assert!((c.neck().hyperbolic_radius - r0).abs() < 1e-12);
        }
    }

    #[test]
    fn mirrored_generator_mirrors_the_neck() {
        let g = skew_generator();
        let up = CylinderSurface::from_generator(g).unwrap().neck();
        let down = CylinderSurface::from_generator(g.mirrored_z())
            .unwrap()
            .neck();
        assert!((up.height + down.height).abs() < 1e-9);
        assert!((up.hyperbolic_radius - down.hyperbolic_radius).abs() < 1e-12);
    }

    #[test]
    fn arbitrary_diameter_axes_are_normalized() {
        // The same configuration handed in with the x-diameter as axis.
        let axis = Geodesic3::new(
            IdealEndpoint::new(1.0, 0.0, 0.0).unwrap(),
            IdealEndpoint::new(-1.0, 0.0, 0.0).unwrap(),
        )
        .unwrap();
        // Generator symmetric around the x-axis, built by rotating the
        // z-frame picture: endpoints at polar angle 1.0 from the x-poles.
        let g = Geodesic3::new(
            IdealEndpoint::new(1.0f64.cos(), 0.0, 1.0f64.sin()).unwrap(),
            IdealEndpoint::new(-(1.0f64.cos()), 0.0, 1.0f64.sin()).unwrap(),
        )
        .unwrap();
        let tilted = CylinderSurface::new(axis, g).unwrap();
        let reference = CylinderSurface::from_generator(symmetric_generator(1.0)).unwrap();
        let a = tilted.neck();
        let b = reference.neck();
        assert!((a.hyperbolic_radius - b.hyperbolic_radius).abs() < 1e-9);
        assert!(a.height.abs() < 1e-9);

        let bad_axis = Geodesic3::new(
            IdealEndpoint::from_polar(0.3, 0.0),
            IdealEndpoint::from_polar(2.0, 1.0),
        )
        .unwrap();
        assert!(CylinderSurface::new(bad_axis, skew_generator()).is_err());
    }

    #[test]
    fn surface_points_respect_the_rotation() {
        let c = CylinderSurface::from_generator(symmetric_generator(1.1)).unwrap();
        let p0 = c.surface_point(0.3, 0.0).unwrap();
        let on_generator = c.generator().point_at(0.3).unwrap();
        assert_eq!(p0, on_generator);
        let full_turn = c.surface_point(0.3, 2.0 * core::f64::consts::PI).unwrap();
        assert!((full_turn.x() - p0.x()).abs() < 1e-12);
        assert!((full_turn.y() - p0.y()).abs() < 1e-12);
        assert_eq!(full_turn.z(), p0.z());
        // Distance to the axis does not depend on the rotation angle.
        for (t, theta) in [(0.2, 1.0), (0.5, 2.5), (0.77, 4.0)] {
            let p = c.surface_point(t, theta).unwrap();
            let q = c.generator().point_at(t).unwrap();
            assert!((distance_to_z_axis(p) - distance_to_z_axis(q)).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_cylinder_mesh_is_the_bare_ring() {
        let m = build_cylinder_mesh(0, 9).unwrap();
        assert_eq!(m.vertex_count(), 9);
        assert_eq!(m.face_count(), 0);
        assert!(build_cylinder_mesh(2, 2).is_err());
    }

    #[test]
    fn cylinder_mesh_is_an_annulus_of_degree_eight() {
        let m = build_cylinder_mesh(2, 8).unwrap();
        assert_eq!(m.vertex_count(), 152);
        assert_eq!(m.face_count(), 192);
        assert_eq!(m.euler_characteristic(), 0);
        let mut interior = 0;
        for v in 0..m.vertex_count() as u32 {
            if !m.is_boundary_vertex(v).unwrap() {
                interior += 1;
                assert_eq!(m.face_degree(v).unwrap(), 8);
                assert_eq!(m.degree(v).unwrap(), 8);
            }
        }
        assert_eq!(interior, 8 + 2 * 16);
        // Discrete Gauss-Bonnet for the annulus: total defect zero.
        assert_eq!(m.curvature_report().total_sixths, 0);
    }

    #[test]
    fn euler_characteristic_zero_across_sizes() {
        for (rows, neck) in [(1u32, 3u32), (1, 12), (2, 5), (3, 4)] {
            let m = build_cylinder_mesh(rows, neck).unwrap();
            assert_eq!(m.euler_characteristic(), 0, "rows {rows}, neck {neck}");
        }
    }
}
