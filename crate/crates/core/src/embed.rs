//! Piecewise-linear embedding of unit-edge triangulated meshes into 3-space
//! by minimizing a quadratic edge-length distortion energy with gradient
//! descent and backtracking line search.
//!
//! The energy is `sum over edges (|pi - pj| - target)^2`, zero exactly when
//! every edge attains the target length. Termination is measured by the
//! maximum relative edge distortion, which reads directly as isometry defect.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mesh::TriMesh;
use crate::scalar::{real, Real};
use crate::vec3::Vec3;

/// Optimizer configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedParams<T> {
    pub max_iterations: usize,
    /// Initial step length tried at each iteration before halving.
    pub step_size: T,
    /// Stop once the maximum relative edge distortion drops below this.
    pub tolerance: T,
    /// Seed for the initialization jitter.
    pub seed: u64,
    /// Jitter magnitude in units of the target edge length.
    pub jitter_scale: T,
}

impl<T: Real> Default for EmbedParams<T> {
    fn default() -> Self {
        EmbedParams {
            max_iterations: 50_000,
            step_size: real(0.25),
            tolerance: real(0.02),
            seed: 7,
            jitter_scale: real(0.01),
        }
    }
}

impl<T: Real> EmbedParams<T> {
    fn validate(&self) -> Result<()> {
        if self.step_size.is_nan() || self.step_size <= T::zero() {
            return Err(Error::domain("step_size must be positive"));
        }
        if self.tolerance.is_nan() || self.tolerance <= T::zero() {
            return Err(Error::domain("tolerance must be positive"));
        }
        if self.jitter_scale < T::zero() {
            return Err(Error::domain("jitter_scale must be nonnegative"));
        }
        Ok(())
    }
}

/// Per-vertex positions in 3-space plus the common target edge length.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingState<T> {
    pub positions: Vec<Vec3<T>>,
    pub target_length: T,
}

/// Outcome metrics of a relaxation run.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbedReport<T> {
    pub iterations_used: usize,
    pub final_energy: T,
    pub max_relative_distortion: T,
    /// Largest distance from the position centroid; the embedding always
    /// occupies a ball of this radius.
    pub bounding_radius: T,
    /// Energy after the initial state and after every accepted step.
    pub energy_trace: Vec<T>,
}

const MAX_HALVINGS: u32 = 30;

/// Deterministic cone initialization: the vertices of ring L sit evenly on a
/// circle of radius `L * target` at height `-0.1 * L * target`, plus a seeded
/// uniform jitter of magnitude `jitter_scale * target` that breaks the
/// rotational symmetry. Meshes whose innermost ring is itself a cycle (the
/// cylinder) get a base radius that makes that ring's edges unit length.
pub fn init_embedding<T: Real>(mesh: &TriMesh, params: &EmbedParams<T>) -> EmbeddingState<T> {
    init_embedding_scaled(mesh, params, T::one())
}

/// As [`init_embedding`] with an explicit target edge length.
pub fn init_embedding_scaled<T: Real>(
    mesh: &TriMesh,
    params: &EmbedParams<T>,
    target_length: T,
) -> EmbeddingState<T> {
    init_with_shape(mesh, params, target_length, false)
}

fn init_with_shape<T: Real>(
    mesh: &TriMesh,
    params: &EmbedParams<T>,
    target_length: T,
    planar: bool,
) -> EmbeddingState<T> {
    let mut ring_sizes = std::collections::BTreeMap::new();
    for v in mesh.vertices() {
        *ring_sizes.entry(v.layer).or_insert(0usize) += 1;
    }
    let innermost = ring_sizes.get(&0).copied().unwrap_or(1);
    let base = if innermost > 1 {
        // Annulus seed ring: radius that gives the ring itself unit edges.
        real::<T>(0.5) / (T::PI() / T::from_usize(innermost).unwrap()).sin()
    } else {
        T::zero()
    };

    let mut counters = std::collections::BTreeMap::new();
    let mut positions = Vec::with_capacity(mesh.vertex_count());
    for v in mesh.vertices() {
        let layer = T::from_u32(v.layer).unwrap();
        let n = T::from_usize(ring_sizes[&v.layer]).unwrap();
        let slot = counters.entry(v.layer).or_insert(0usize);
        let angle = (T::PI() + T::PI()) * T::from_usize(*slot).unwrap() / n;
        *slot += 1;
        let radius = (layer + base) * target_length;
        let height = if planar {
            T::zero()
        } else {
            -real::<T>(0.1) * layer * target_length
        };
        positions.push(Vec3::new(
            radius * angle.cos(),
            radius * angle.sin(),
            height,
        ));
    }

    if params.jitter_scale > T::zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let amp = params.jitter_scale * target_length;
        for p in &mut positions {
            p.x += amp * real::<T>(rng.gen_range(-1.0..1.0));
            p.y += amp * real::<T>(rng.gen_range(-1.0..1.0));
            let jz = amp * real::<T>(rng.gen_range(-1.0..1.0));
            if !planar {
                p.z += jz;
            }
        }
    }

    EmbeddingState {
        positions,
        target_length,
    }
}

/// Total edge-length distortion energy: `sum over edges (|pi - pj| - target)^2`.
pub fn energy<T: Real>(mesh: &TriMesh, state: &EmbeddingState<T>) -> T {
    let mut total = T::zero();
    for &(a, b) in mesh.edges() {
        let d = (state.positions[a as usize] - state.positions[b as usize]).norm();
        let excess = d - state.target_length;
        total += excess * excess;
    }
    total
}

/// Analytic gradient of [`energy`] with respect to every coordinate. The
/// per-edge contribution to vertex i is
/// `2 (|pi - pj| - target) (pi - pj) / |pi - pj|`.
pub fn energy_gradient<T: Real>(mesh: &TriMesh, state: &EmbeddingState<T>) -> Result<Vec<Vec3<T>>> {
    let mut grad = vec![Vec3::zero(); state.positions.len()];
    let eps = real::<T>(1e-12);
    let two = T::one() + T::one();
    for &(a, b) in mesh.edges() {
        let diff = state.positions[a as usize] - state.positions[b as usize];
        let d = diff.norm();
        if d <= eps {
            return Err(Error::DegenerateEdge { a, b });
        }
        let pull = diff * (two * (d - state.target_length) / d);
        grad[a as usize] += pull;
        grad[b as usize] -= pull;
    }
    Ok(grad)
}

/// Largest relative edge-length error of the state.
pub fn max_relative_distortion<T: Real>(mesh: &TriMesh, state: &EmbeddingState<T>) -> T {
    let mut worst = T::zero();
    for &(a, b) in mesh.edges() {
        let d = (state.positions[a as usize] - state.positions[b as usize]).norm();
        let rel = ((d - state.target_length) / state.target_length).abs();
        worst = worst.max(rel);
    }
    worst
}

fn bounding_radius<T: Real>(state: &EmbeddingState<T>) -> T {
    if state.positions.is_empty() {
        return T::zero();
    }
    let n = T::from_usize(state.positions.len()).unwrap();
    let mut centroid = Vec3::zero();
    for p in &state.positions {
        centroid += *p;
    }
    let centroid = centroid * (T::one() / n);
    state
        .positions
        .iter()
        .map(|&p| (p - centroid).norm())
        .fold(T::zero(), T::max)
}

/// Metrics of an existing state without running the optimizer.
pub fn embed_report_metrics<T: Real>(mesh: &TriMesh, state: &EmbeddingState<T>) -> EmbedReport<T> {
    let e = energy(mesh, state);
    EmbedReport {
        iterations_used: 0,
        final_energy: e,
        max_relative_distortion: max_relative_distortion(mesh, state),
        bounding_radius: bounding_radius(state),
        energy_trace: vec![e],
    }
}

/// Relaxes the mesh toward unit edge lengths in 3-space.
///
/// Non-convergence is not an error; the report's distortion field tells
/// whether the tolerance was reached.
pub fn relax<T: Real>(
    mesh: &TriMesh,
    params: &EmbedParams<T>,
) -> Result<(EmbeddingState<T>, EmbedReport<T>)> {
    relax_with_shape(mesh, params, T::one(), false)
}

/// As [`relax`] with an explicit target edge length.
pub fn relax_scaled<T: Real>(
    mesh: &TriMesh,
    params: &EmbedParams<T>,
    target_length: T,
) -> Result<(EmbeddingState<T>, EmbedReport<T>)> {
    relax_with_shape(mesh, params, target_length, false)
}

/// Relaxation constrained to the z = 0 plane: initialization is flat and the
/// gradient's z-components are discarded, so the state never leaves the
/// plane. Used to witness that these meshes cannot flatten.
pub fn relax_planar<T: Real>(
    mesh: &TriMesh,
    params: &EmbedParams<T>,
) -> Result<(EmbeddingState<T>, EmbedReport<T>)> {
    relax_with_shape(mesh, params, T::one(), true)
}

fn relax_with_shape<T: Real>(
    mesh: &TriMesh,
    params: &EmbedParams<T>,
    target_length: T,
    planar: bool,
) -> Result<(EmbeddingState<T>, EmbedReport<T>)> {
    params.validate()?;
    if target_length.is_nan() || target_length <= T::zero() {
        return Err(Error::domain("target edge length must be positive"));
    }
    let mut state = init_with_shape(mesh, params, target_length, planar);
    let mut current = energy(mesh, &state);
    let mut trace = vec![current];
    let mut iterations = 0usize;
    let half = real::<T>(0.5);

    while iterations < params.max_iterations {
        if max_relative_distortion(mesh, &state) <= params.tolerance {
            break;
        }
        let mut grad = energy_gradient(mesh, &state)?;
        if planar {
            for g in &mut grad {
                g.z = T::zero();
            }
        }
        let mut step = params.step_size * target_length;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<Vec3<T>> = state
                .positions
                .iter()
                .zip(&grad)
                .map(|(&p, &g)| p - g * step)
                .collect();
            let trial_state = EmbeddingState {
                positions: trial,
                target_length,
            };
            let trial_energy = energy(mesh, &trial_state);
            if trial_energy <= current {
                state = trial_state;
                current = trial_energy;
                accepted = true;
                break;
            }
            step *= half;
        }
        if !accepted {
            // No step of any length decreases the energy: numerically stalled.
            break;
        }
        iterations += 1;
        trace.push(current);
    }

    let report = EmbedReport {
        iterations_used: iterations,
        final_energy: current,
        max_relative_distortion: max_relative_distortion(mesh, &state),
        bounding_radius: bounding_radius(&state),
        energy_trace: trace,
    };
    Ok((state, report))
}
