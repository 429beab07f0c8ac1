//! Point types and distance / isometry computations in the Beltrami-Klein
//! disk model of the hyperbolic plane and the Poincare ball model of
//! hyperbolic 3-space.
//!
//! All operations are pure functions on immutable values. Distances route
//! through log-form expressions, `d = ln(c + sqrt((c - 1) (c + 1)))` with
//! `c = cosh d` clamped to `>= 1`, so deep-layer points stay finite.

pub(crate) mod hyperboloid;

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Module-wide Euclidean tolerance, in model coordinates, below which two
/// points are treated as the same vertex. Used by tiling deduplication.
pub const POINT_TOLERANCE: f64 = 1e-9;

/// Points whose Euclidean norm exceeds `1 - BOUNDARY_MARGIN` are rejected:
/// the conformal factors blow up there and distances stop being trustworthy.
pub const BOUNDARY_MARGIN: f64 = 1e-12;

fn check_disk<T: Real>(norm_sq: T) -> Result<()> {
    let bound = T::one() - real::<T>(BOUNDARY_MARGIN);
    if norm_sq > bound * bound {
        return Err(Error::OutsideModel {
            norm_sq: norm_sq.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Stable `acosh` for arguments that may sit just below 1 from rounding.
fn acosh_clamped<T: Real>(c: T) -> T {
    if c <= T::one() {
        return T::zero();
    }
    (c + ((c - T::one()) * (c + T::one())).sqrt()).ln()
}

/// A point of the projective (Beltrami-Klein) disk model of the hyperbolic
/// plane. Geodesics through such points are straight chords of the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KleinPoint<T> {
    x: T,
    y: T,
}

impl<T: Real> KleinPoint<T> {
    /// Builds a disk point, rejecting coordinates on or outside the boundary.
    pub fn new(x: T, y: T) -> Result<Self> {
        check_disk(x * x + y * y)?;
        Ok(KleinPoint { x, y })
    }

    pub fn origin() -> Self {
        KleinPoint {
            x: T::zero(),
            y: T::zero(),
        }
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn y(&self) -> T {
        self.y
    }

    pub fn norm_sq(&self) -> T {
        self.x * self.x + self.y * self.y
    }
}

/// A point of the Poincare ball model of hyperbolic 3-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallPoint<T> {
    x: T,
    y: T,
    z: T,
}

impl<T: Real> BallPoint<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        check_disk(x * x + y * y + z * z)?;
        Ok(BallPoint { x, y, z })
    }

    pub fn origin() -> Self {
        BallPoint {
            x: T::zero(),
            y: T::zero(),
            z: T::zero(),
        }
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn y(&self) -> T {
        self.y
    }

    pub fn z(&self) -> T {
        self.z
    }

    pub fn norm_sq(&self) -> T {
        self.x * self.x + self.y * self.y + self.z * self.z
    }
}

/// A point of the Poincare disk model of the hyperbolic plane, produced by
/// [`klein_to_poincare`]. Geodesics through such points are circular arcs
/// orthogonal to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincarePoint<T> {
    x: T,
    y: T,
}

impl<T: Real> PoincarePoint<T> {
    pub fn new(x: T, y: T) -> Result<Self> {
        check_disk(x * x + y * y)?;
        Ok(PoincarePoint { x, y })
    }

    pub fn x(&self) -> T {
        self.x
    }

    pub fn y(&self) -> T {
        self.y
    }

    pub fn norm_sq(&self) -> T {
        self.x * self.x + self.y * self.y
    }
}

/// An ideal point: a direction on the boundary sphere of the Poincare ball,
/// at infinite hyperbolic distance from every interior point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealEndpoint<T> {
    u: [T; 3],
}

impl<T: Real> IdealEndpoint<T> {
    /// Normalizes a nonzero vector onto the unit sphere.
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if n < real::<T>(POINT_TOLERANCE) {
            return Err(Error::domain(
                "ideal endpoint direction must be a nonzero vector",
            ));
        }
        Ok(IdealEndpoint {
            u: [x / n, y / n, z / n],
        })
    }

    /// Unit vector from spherical angles: `theta` is the polar angle from the
    /// positive z-axis, `phi` the azimuth in the xy-plane.
    pub fn from_polar(theta: T, phi: T) -> Self {
        IdealEndpoint {
            u: [
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ],
        }
    }

    pub fn unit(&self) -> [T; 3] {
        self.u
    }

    /// Euclidean rotation about the z-axis, a hyperbolic isometry of the ball.
    pub fn rotated_z(&self, theta: T) -> Self {
        let (s, c) = (theta.sin(), theta.cos());
        IdealEndpoint {
            u: [
                self.u[0] * c - self.u[1] * s,
                self.u[0] * s + self.u[1] * c,
                self.u[2],
            ],
        }
    }

    /// Mirror image across the equatorial plane z = 0.
    pub fn mirrored_z(&self) -> Self {
        IdealEndpoint {
            u: [self.u[0], self.u[1], -self.u[2]],
        }
    }

    fn dist_sq(&self, o: &IdealEndpoint<T>) -> T {
        let d = [self.u[0] - o.u[0], self.u[1] - o.u[1], self.u[2] - o.u[2]];
        d[0] * d[0] + d[1] * d[1] + d[2] * d[2]
    }
}

/// A geodesic of hyperbolic 3-space given by its two ideal endpoints; in the
/// Poincare ball it is the circular arc through them orthogonal to the
/// boundary sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic3<T> {
    e1: IdealEndpoint<T>,
    e2: IdealEndpoint<T>,
}

impl<T: Real> Geodesic3<T> {
    pub fn new(e1: IdealEndpoint<T>, e2: IdealEndpoint<T>) -> Result<Self> {
        if e1.dist_sq(&e2) <= real::<T>(POINT_TOLERANCE * POINT_TOLERANCE) {
            return Err(Error::domain(
                "geodesic endpoints must be distinct ideal points",
            ));
        }
        Ok(Geodesic3 { e1, e2 })
    }

    /// The diameter from the south to the north pole of the ball.
    pub fn z_diameter() -> Self {
        Geodesic3 {
            e1: IdealEndpoint {
                u: [T::zero(), T::zero(), -T::one()],
            },
            e2: IdealEndpoint {
                u: [T::zero(), T::zero(), T::one()],
            },
        }
    }

    pub fn endpoints(&self) -> (IdealEndpoint<T>, IdealEndpoint<T>) {
        (self.e1, self.e2)
    }

    /// Point on the geodesic at chord parameter `t` in the open interval
    /// (0, 1). The chord between the ideal endpoints is read as a projective
    /// (Klein) model point of hyperbolic 3-space and converted to the ball,
    /// so the result really lies on the Poincare geodesic arc.
    pub fn point_at(&self, t: T) -> Result<BallPoint<T>> {
        if t.is_nan() || t <= T::zero() || t >= T::one() {
            return Err(Error::domain(
                "chord parameter must lie strictly between 0 and 1; the endpoints are ideal",
            ));
        }
        let s = T::one() - t;
        let c = [
            s * self.e1.u[0] + t * self.e2.u[0],
            s * self.e1.u[1] + t * self.e2.u[1],
            s * self.e1.u[2] + t * self.e2.u[2],
        ];
        let norm_sq = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
        // Klein -> Poincare radial map in 3 dimensions.
        let denom = T::one() + (T::one() - norm_sq).max(T::zero()).sqrt();
        BallPoint::new(c[0] / denom, c[1] / denom, c[2] / denom)
    }

    pub fn rotated_z(&self, theta: T) -> Self {
        Geodesic3 {
            e1: self.e1.rotated_z(theta),
            e2: self.e2.rotated_z(theta),
        }
    }

    pub fn mirrored_z(&self) -> Self {
        Geodesic3 {
            e1: self.e1.mirrored_z(),
            e2: self.e2.mirrored_z(),
        }
    }
}

/// Hyperbolic distance between two Klein-model points:
/// `cosh d = (1 - P.Q) / (sqrt(1 - |P|^2) sqrt(1 - |Q|^2))`.
pub fn klein_distance<T: Real>(p: KleinPoint<T>, q: KleinPoint<T>) -> T {
    if p == q {
        return T::zero();
    }
    let dot = p.x * q.x + p.y * q.y;
    let denom = ((T::one() - p.norm_sq()) * (T::one() - q.norm_sq())).sqrt();
    acosh_clamped((T::one() - dot) / denom)
}

/// Klein radius of the circle at hyperbolic distance `d` from the origin;
/// the inverse of `klein_distance(O, (r, 0))`, which is `r = tanh d`.
pub fn klein_radius_for_distance<T: Real>(d: T) -> Result<T> {
    if d < T::zero() {
        return Err(Error::domain("distance must be nonnegative"));
    }
    Ok(d.tanh())
}

/// Radial map from the projective disk to the Poincare disk:
/// `r_p = r_k / (1 + sqrt(1 - r_k^2))`, direction preserved. The map is an
/// isometry between the two models of the same hyperbolic plane.
pub fn klein_to_poincare<T: Real>(p: KleinPoint<T>) -> PoincarePoint<T> {
    let denom = T::one() + (T::one() - p.norm_sq()).max(T::zero()).sqrt();
    PoincarePoint {
        x: p.x / denom,
        y: p.y / denom,
    }
}

/// Hyperbolic distance between two Poincare-ball points:
/// `cosh d = 1 + 2 |p - q|^2 / ((1 - |p|^2) (1 - |q|^2))`.
pub fn ball_distance<T: Real>(p: BallPoint<T>, q: BallPoint<T>) -> T {
    if p == q {
        return T::zero();
    }
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let dz = p.z - q.z;
    let diff_sq = dx * dx + dy * dy + dz * dz;
    let denom = (T::one() - p.norm_sq()) * (T::one() - q.norm_sq());
    acosh_clamped(T::one() + real::<T>(2.0) * diff_sq / denom)
}

/// Euclidean rotation of the xy-coordinates about the z-axis. This is a
/// hyperbolic isometry of the ball fixing the z-diameter geodesic.
pub fn rotate_about_z<T: Real>(p: BallPoint<T>, theta: T) -> BallPoint<T> {
    let (s, c) = (theta.sin(), theta.cos());
    BallPoint {
        x: p.x * c - p.y * s,
        y: p.x * s + p.y * c,
        z: p.z,
    }
}
