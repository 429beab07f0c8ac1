//! Constructions around triangulated models of the hyperbolic plane:
//! {3,k} equilateral tilings solved and expanded in the Beltrami-Klein disk,
//! layered combinatorial disk meshes with discrete curvature, circumference
//! growth tables, piecewise-linear embedding of unit-edge meshes into
//! 3-space by energy relaxation, surfaces of revolution around a geodesic
//! axis of the Poincare ball, and row-by-row crochet programs realizing the
//! triangulated disks in yarn.
//!
//! Core math is generic over the scalar type through [`Real`]; the crate
//! root exports `f64` aliases for everyday use.

pub mod crochet;
pub mod cylinder;
pub mod embed;
mod error;
pub mod growth;
pub mod hypmath;
pub mod mesh;
mod scalar;
pub mod tiling;
pub mod vec3;

pub use error::{Error, Result};
pub use scalar::Real;

/// Point of the projective (Beltrami-Klein) disk, `f64`.
pub type KleinPoint = hypmath::KleinPoint<f64>;
/// Point of the Poincare ball, `f64`.
pub type BallPoint = hypmath::BallPoint<f64>;
/// Point of the Poincare disk, `f64`.
pub type PoincarePoint = hypmath::PoincarePoint<f64>;
/// Ideal boundary point, `f64`.
pub type IdealEndpoint = hypmath::IdealEndpoint<f64>;
/// Geodesic of hyperbolic 3-space, `f64`.
pub type Geodesic3 = hypmath::Geodesic3<f64>;
/// Solved equilateral tiling triangle, `f64`.
pub type EquilateralSpec = tiling::EquilateralSpec<f64>;
/// Expanded tiling patch, `f64`.
pub type TilingPatch = tiling::TilingPatch<f64>;
/// Growth comparison table, `f64`.
pub type GrowthTable = growth::GrowthTable<f64>;
/// Optimizer configuration, `f64`.
pub type EmbedParams = embed::EmbedParams<f64>;
/// Optimizer state, `f64`.
pub type EmbeddingState = embed::EmbeddingState<f64>;
/// Optimizer report, `f64`.
pub type EmbedReport = embed::EmbedReport<f64>;
/// Cylinder surface of revolution, `f64`.
pub type CylinderSurface = cylinder::CylinderSurface<f64>;
/// Cylinder neck circle, `f64`.
pub type NeckCircle = cylinder::NeckCircle<f64>;
/// Euclidean 3-vector, `f64`.
pub type Vec3 = vec3::Vec3<f64>;

#[cfg(test)]
mod tests {
    #[test]
    fn f32_instantiations_compile_and_behave() {
        let e7 = crate::tiling::edge_length::<f32>(7).unwrap();
        assert!((e7 - 1.0905).abs() < 1e-3);
        let p = crate::hypmath::KleinPoint::<f32>::new(0.5, 0.0).unwrap();
        let d = crate::hypmath::klein_distance(crate::hypmath::KleinPoint::origin(), p);
        assert!((d - 0.5f32.atanh()).abs() < 1e-5);
        let t = crate::growth::growth_table::<f32>(2.0, 5).unwrap();
        assert_eq!(t.rows.len(), 5);
    }
}
