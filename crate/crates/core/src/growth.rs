//! Circumference growth of hyperbolic disks compared with Euclidean ones.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// One comparison row: circle radius, both circumferences, and their ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRow<T> {
    pub r: T,
    pub c_euclidean: T,
    pub c_hyperbolic: T,
    pub ratio: T,
}

/// Table of [`GrowthRow`]s over a uniform radius grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthTable<T> {
    pub rows: Vec<GrowthRow<T>>,
}

/// Circumference of a Euclidean circle: `2 pi r`.
pub fn circumference_euclidean<T: Real>(r: T) -> Result<T> {
    if r < T::zero() {
        return Err(Error::domain("radius must be nonnegative"));
    }
    Ok((T::PI() + T::PI()) * r)
}

/// Circumference of a hyperbolic circle: `2 pi sinh r`. Dominates the
/// Euclidean value for every positive radius.
pub fn circumference_hyperbolic<T: Real>(r: T) -> Result<T> {
    if r < T::zero() {
        return Err(Error::domain("radius must be nonnegative"));
    }
    Ok((T::PI() + T::PI()) * r.sinh())
}

/// Uniform grid of `steps` rows from 0 to `r_max` inclusive. The ratio
/// column is `sinh(r) / r`, continuously extended to 1 at r = 0.
pub fn growth_table<T: Real>(r_max: T, steps: usize) -> Result<GrowthTable<T>> {
    if r_max.is_nan() || r_max <= T::zero() {
        return Err(Error::domain("r_max must be positive"));
    }
    if steps < 2 {
        return Err(Error::domain("grid needs at least 2 steps"));
    }
    let n = T::from_usize(steps - 1).unwrap();
    let rows = (0..steps)
        .map(|i| {
            let r = r_max * (T::from_usize(i).unwrap() / n);
            let c_euclidean = circumference_euclidean(r).expect("grid radius is nonnegative");
            let c_hyperbolic = circumference_hyperbolic(r).expect("grid radius is nonnegative");
            let ratio = if r > T::zero() {
                r.sinh() / r
            } else {
                T::one()
            };
            GrowthRow {
                r,
                c_euclidean,
                c_hyperbolic,
                ratio,
            }
        })
        .collect();
    Ok(GrowthTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn euclidean_values() {
        assert_eq!(circumference_euclidean(0.0).unwrap(), 0.0);
        assert_eq!(circumference_euclidean(1.0).unwrap(), 2.0 * PI);
        assert!((circumference_euclidean(2.5).unwrap() - 5.0 * PI).abs() < 1e-12);
        assert!(circumference_euclidean(-0.1).is_err());
    }

    #[test]
    fn hyperbolic_values() {
        assert_eq!(circumference_hyperbolic(0.0).unwrap(), 0.0);
        let c = circumference_hyperbolic(1.0).unwrap();
        assert!((c - 2.0 * PI * 1.0f64.sinh()).abs() < 1e-12);
        assert!((c - 7.384).abs() < 1e-3);
        assert!(circumference_hyperbolic(-1e-9).is_err());
    }

    #[test]
    fn hyperbolic_dominates_and_ratio_increases() {
        let mut prev = 1.0;
        for i in 1..=50 {
            let r = 0.1 * i as f64;
            let ce = circumference_euclidean(r).unwrap();
            let ch = circumference_hyperbolic(r).unwrap();
            assert!(ch > ce);
            let ratio = ch / ce;
            assert!(ratio > prev, "ratio must increase at r = {r}");
            prev = ratio;
        }
    }

    #[test]
    fn table_endpoints_and_shape() {
        let t = growth_table(1.0, 2).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[0].r, 0.0);
        assert_eq!(t.rows[0].ratio, 1.0);
        assert_eq!(t.rows[1].r, 1.0);

        let t = growth_table(5.0, 51).unwrap();
        assert_eq!(t.rows.len(), 51);
        for w in t.rows.windows(2).skip(1) {
            assert!(w[1].ratio > w[0].ratio);
        }
        // sinh(5) / 5 is a little under 15.
        let last = t.rows.last().unwrap();
        assert!(last.ratio > 14.0);
        assert!((last.ratio - 5.0f64.sinh() / 5.0).abs() < 1e-12);
    }

    #[test]
    fn table_rejects_bad_grids() {
        assert!(growth_table(0.0, 10).is_err());
        assert!(growth_table(-1.0, 10).is_err());
        assert!(growth_table(1.0, 1).is_err());
    }

    #[test]
    fn successive_ratio_approaches_e() {
        for r in [5.0, 6.0, 8.0] {
            let a = circumference_hyperbolic(r).unwrap();
            let b = circumference_hyperbolic(r + 1.0).unwrap();
            let ratio: f64 = b / a;
            assert!((ratio - core::f64::consts::E).abs() / core::f64::consts::E < 0.05);
        }
    }
}
