//! Internal hyperboloid (Minkowski) model of the hyperbolic plane.
//!
//! Reflections across geodesics are linear maps here, so composing many of
//! them stays numerically tight where Klein coordinates of deep-layer points
//! crowd against the disk boundary. Not part of the public API.

use super::KleinPoint;
use crate::scalar::Real;

/// Point on the upper sheet of `t^2 - x^2 - y^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct HPoint<T> {
    pub t: T,
    pub x: T,
    pub y: T,
}

/// Minkowski bilinear form of signature (+, -, -).
#[inline]
pub(crate) fn mdot<T: Real>(a: HPoint<T>, b: HPoint<T>) -> T {
    a.t * b.t - a.x * b.x - a.y * b.y
}

impl<T: Real> HPoint<T> {
    pub fn origin() -> Self {
        HPoint {
            t: T::one(),
            x: T::zero(),
            y: T::zero(),
        }
    }

    /// Point at hyperbolic distance `d` from the origin in direction `theta`.
    pub fn from_polar(d: T, theta: T) -> Self {
        HPoint {
            t: d.cosh(),
            x: d.sinh() * theta.cos(),
            y: d.sinh() * theta.sin(),
        }
    }

    pub fn to_klein(self) -> KleinPoint<T> {
        KleinPoint {
            x: self.x / self.t,
            y: self.y / self.t,
        }
    }

    /// Projects back onto the hyperboloid sheet, removing rounding drift.
    fn renormalized(self) -> Self {
        let q = mdot(self, self);
        let s = q.max(T::min_positive_value()).sqrt();
        HPoint {
            t: self.t / s,
            x: self.x / s,
            y: self.y / s,
        }
    }
}

/// Reflection across the geodesic through `a` and `b`.
///
/// The plane spanned by two hyperboloid points has a spacelike Minkowski
/// normal `n = J (a x b)` with `J = diag(1, -1, -1)`; after normalizing to
/// `<n, n> = -1` the reflection is `p -> p + 2 <p, n> n`.
pub(crate) fn reflect_across<T: Real>(a: HPoint<T>, b: HPoint<T>, p: HPoint<T>) -> HPoint<T> {
    let cross = [
        a.x * b.y - a.y * b.x,
        a.y * b.t - a.t * b.y,
        a.t * b.x - a.x * b.t,
    ];
    let mut n = HPoint {
        t: cross[0],
        x: -cross[1],
        y: -cross[2],
    };
    let nn = mdot(n, n);
    debug_assert!(nn < T::zero(), "geodesic normal must be spacelike");
    let scale = (-nn).sqrt();
    n = HPoint {
        t: n.t / scale,
        x: n.x / scale,
        y: n.y / scale,
    };
    let two = T::one() + T::one();
    let coeff = two * mdot(p, n);
    HPoint {
        t: p.t + coeff * n.t,
        x: p.x + coeff * n.x,
        y: p.y + coeff * n.y,
    }
    .renormalized()
}
