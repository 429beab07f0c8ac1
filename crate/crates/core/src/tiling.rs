//! Equilateral {3,k} triangle tilings of the hyperbolic plane, solved in the
//! projective disk and expanded layer by layer around the origin.
//!
//! A patch is generated by reflecting the base fan across triangle edges.
//! Reflections are evaluated in an internal hyperboloid representation, where
//! they are linear, and vertices are deduplicated with a spatial hash on the
//! hyperboloid coordinates; Klein coordinates of distinct deep vertices crowd
//! together near the boundary circle, hyperboloid coordinates do not.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypmath::hyperboloid::{reflect_across, HPoint};
use crate::hypmath::{KleinPoint, POINT_TOLERANCE};
use crate::scalar::{real, Real};

/// What gluing `k` equilateral triangles around every vertex produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GluingName {
    TrianglePillow,
    Tetrahedron,
    Octahedron,
    Icosahedron,
    EuclideanPlane,
    HyperbolicPlane,
}

/// Classification record for a vertex count `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GluingClass {
    pub k: u32,
    pub name: GluingName,
}

/// Classifies the surface obtained by gluing `k` equilateral triangles at
/// each vertex: closed positively curved solids for k < 6, the Euclidean
/// plane for k = 6, the hyperbolic plane beyond.
pub fn classify_gluing(k: u32) -> Result<GluingClass> {
    let name = match k {
        0 | 1 => return Err(Error::domain("need at least two triangles per vertex")),
        2 => GluingName::TrianglePillow,
        3 => GluingName::Tetrahedron,
        4 => GluingName::Octahedron,
        5 => GluingName::Icosahedron,
        6 => GluingName::EuclideanPlane,
        _ => GluingName::HyperbolicPlane,
    };
    Ok(GluingClass { k, name })
}

/// Hyperbolic edge length of the equilateral triangle whose three angles are
/// `2 pi / k`, from the closed form `cosh a = cos(2 pi / k) / (1 - cos(2 pi / k))`.
/// k = 6 is the Euclidean degeneration and returns exactly 0.
pub fn edge_length<T: Real>(k: u32) -> Result<T> {
    if k < 6 {
        return Err(Error::domain(
            "k < 6 closes up into a spherical solid; no hyperbolic edge length exists",
        ));
    }
    if k == 6 {
        return Ok(T::zero());
    }
    let alpha = (T::PI() + T::PI()) / T::from_u32(k).unwrap();
    let c = alpha.cos() / (T::one() - alpha.cos());
    Ok((c + ((c - T::one()) * (c + T::one())).sqrt()).ln())
}

/// Sum of the interior angles, `6 pi / k`; always below pi for k >= 7.
pub fn angle_sum<T: Real>(k: u32) -> Result<T> {
    if k < 7 {
        return Err(Error::domain(
            "angle sum is only defined for hyperbolic k >= 7",
        ));
    }
    Ok(real::<T>(6.0) * T::PI() / T::from_u32(k).unwrap())
}

/// The solved equilateral triangle for a hyperbolic vertex count `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilateralSpec<T> {
    pub k: u32,
    pub vertex_angle: T,
    pub edge_length: T,
    pub angle_sum: T,
}

impl<T: Real> EquilateralSpec<T> {
    pub fn solve(k: u32) -> Result<Self> {
        if k < 7 {
            return Err(Error::domain("hyperbolic tilings need k >= 7"));
        }
        Ok(EquilateralSpec {
            k,
            vertex_angle: (T::PI() + T::PI()) / T::from_u32(k).unwrap(),
            edge_length: edge_length(k)?,
            angle_sum: angle_sum(k)?,
        })
    }
}

/// Representative equilateral triangle in the Klein disk: one vertex at the
/// origin, one on the positive x-axis, the third in the first quadrant. The
/// other three solutions of the defining equations are its sign flips.
pub fn base_triangle<T: Real>(k: u32) -> Result<(KleinPoint<T>, KleinPoint<T>, KleinPoint<T>)> {
    let spec = EquilateralSpec::<T>::solve(k)?;
    let r = spec.edge_length.tanh();
    let o = KleinPoint::origin();
    let a = KleinPoint::new(r, T::zero())?;
    // The Klein model is angle-faithful at the origin, so a Euclidean
    // rotation by the vertex angle produces the third vertex.
    let b = KleinPoint::new(r * spec.vertex_angle.cos(), r * spec.vertex_angle.sin())?;
    Ok((o, a, b))
}

/// Vertex of a [`TilingPatch`]: Klein position plus its ring index
/// (edge-graph distance from the origin vertex).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatchVertex<T> {
    pub position: KleinPoint<T>,
    pub layer: u32,
}

/// A patch of the {3,k} tiling around the origin.
///
/// Triangles carry a layer index: the fan around the origin is layer 0 and
/// layer L holds the triangles between ring L and ring L + 1 of vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct TilingPatch<T> {
    pub k: u32,
    pub layers: u32,
    pub vertices: Vec<PatchVertex<T>>,
    pub triangles: Vec<[u32; 3]>,
    pub triangle_layers: Vec<u32>,
}

impl<T: Real> TilingPatch<T> {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// Undirected edge set of the patch.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut set = std::collections::BTreeSet::new();
        for t in &self.triangles {
            for i in 0..3 {
                let (a, b) = (t[i], t[(i + 1) % 3]);
                set.insert((a.min(b), a.max(b)));
            }
        }
        set.into_iter().collect()
    }

    /// Hyperbolic length of every edge, in edge order of [`Self::edges`].
    pub fn edge_lengths(&self) -> Vec<T> {
        self.edges()
            .iter()
            .map(|&(a, b)| {
                crate::hypmath::klein_distance(
                    self.vertices[a as usize].position,
                    self.vertices[b as usize].position,
                )
            })
            .collect()
    }

    /// Combinatorial image of the patch as a [`crate::mesh::TriMesh`].
    pub fn to_mesh(&self) -> Result<crate::mesh::TriMesh> {
        let vertex_layers = self.vertices.iter().map(|v| v.layer).collect();
        crate::mesh::TriMesh::from_oriented_faces(
            self.vertices.len(),
            self.triangles.clone(),
            vertex_layers,
            self.triangle_layers.clone(),
        )
    }
}

/// Knobs for [`expand_tiling_with`].
#[derive(Debug, Clone)]
pub struct TilingOptions {
    /// Hard cap on the number of triangles a single expansion may create.
    pub budget: usize,
    /// When set, frontier edges are processed in seeded random order instead
    /// of breadth-first order. The resulting complex is the same.
    pub shuffle_seed: Option<u64>,
}

pub const DEFAULT_TRIANGLE_BUDGET: usize = 1_000_000;

impl Default for TilingOptions {
    fn default() -> Self {
        TilingOptions {
            budget: DEFAULT_TRIANGLE_BUDGET,
            shuffle_seed: None,
        }
    }
}

/// Spatial hash for deduplicating hyperboloid points.
struct VertexDedup<T> {
    points: Vec<HPoint<T>>,
    cells: HashMap<(i64, i64, i64), Vec<u32>>,
}

const DEDUP_CELL: f64 = 1e-6;

impl<T: Real> VertexDedup<T> {
    fn new() -> Self {
        VertexDedup {
            points: Vec::new(),
            cells: HashMap::new(),
        }
    }

    fn key(p: HPoint<T>) -> (i64, i64, i64) {
        let q = |v: T| (v.to_f64().unwrap() / DEDUP_CELL).round() as i64;
        (q(p.t), q(p.x), q(p.y))
    }

    /// Returns the id of a stored point within [`POINT_TOLERANCE`] of `p` in
    /// Klein coordinates, if any.
    fn find(&self, p: HPoint<T>) -> Option<u32> {
        let (kt, kx, ky) = Self::key(p);
        let kp = p.to_klein();
        let tol = real::<T>(POINT_TOLERANCE);
        let tol_sq = tol * tol;
        for dt in -1..=1 {
            for dx in -1..=1 {
                for dy in -1..=1 {
                    let Some(ids) = self.cells.get(&(kt + dt, kx + dx, ky + dy)) else {
                        continue;
                    };
                    for &id in ids {
                        let kq = self.points[id as usize].to_klein();
                        let ddx = kp.x() - kq.x();
                        let ddy = kp.y() - kq.y();
                        if ddx * ddx + ddy * ddy <= tol_sq {
                            return Some(id);
                        }
                    }
                }
            }
        }
        None
    }

    fn insert(&mut self, p: HPoint<T>) -> u32 {
        let id = self.points.len() as u32;
        self.points.push(p);
        self.cells.entry(Self::key(p)).or_default().push(id);
        id
    }
}

/// Expands the {3,k} tiling out to the requested layer with default options.
pub fn expand_tiling<T: Real>(k: u32, layers: u32) -> Result<TilingPatch<T>> {
    expand_tiling_with(k, layers, &TilingOptions::default())
}

/// Expands the {3,k} tiling by reflecting across frontier edges.
///
/// Every generated vertex must satisfy `|v| <= 1 - 1e-9` in Klein
/// coordinates; beyond that the dedup tolerance can no longer separate
/// vertices and the expansion is refused.
pub fn expand_tiling_with<T: Real>(
    k: u32,
    layers: u32,
    options: &TilingOptions,
) -> Result<TilingPatch<T>> {
    if k < 7 {
        return Err(Error::domain("hyperbolic tilings need k >= 7"));
    }
    let edge = edge_length::<T>(k)?;
    let step = (T::PI() + T::PI()) / T::from_u32(k).unwrap();

    let mut dedup = VertexDedup::new();
    let mut rings: Vec<u32> = Vec::new();
    let mut faces: Vec<[u32; 3]> = Vec::new();
    let mut face_set: HashSet<[u32; 3]> = HashSet::new();
    let mut edge_use: HashMap<(u32, u32), u8> = HashMap::new();

    let radius_bound = T::one() - real::<T>(1e-9);
    let bound_sq = radius_bound * radius_bound;
    let push_vertex = |dedup: &mut VertexDedup<T>,
                       rings: &mut Vec<u32>,
                       p: HPoint<T>,
                       ring: u32|
     -> Result<u32> {
        if p.to_klein().norm_sq() > bound_sq {
            return Err(Error::domain(
                "tiling layer reaches the disk boundary resolution limit (|v| > 1 - 1e-9)",
            ));
        }
        let id = dedup.insert(p);
        rings.push(ring);
        Ok(id)
    };

    // Base fan: origin plus k ring-1 vertices at distance edge_length(k).
    let center = push_vertex(&mut dedup, &mut rings, HPoint::origin(), 0)?;
    for j in 0..k {
        let theta = step * T::from_u32(j).unwrap();
        push_vertex(&mut dedup, &mut rings, HPoint::from_polar(edge, theta), 1)?;
    }

    let add_face = |faces: &mut Vec<[u32; 3]>,
                    face_set: &mut HashSet<[u32; 3]>,
                    edge_use: &mut HashMap<(u32, u32), u8>,
                    f: [u32; 3]|
     -> Result<bool> {
        let mut key = f;
        key.sort_unstable();
        if !face_set.insert(key) {
            return Ok(false);
        }
        if faces.len() + 1 > options.budget {
            return Err(Error::BudgetExceeded {
                budget: options.budget,
            });
        }
        for i in 0..3 {
            let (a, b) = (f[i], f[(i + 1) % 3]);
            *edge_use.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
        faces.push(f);
        Ok(true)
    };

    // Frontier records: directed edge (a, b) as traversed by the existing
    // triangle, plus that triangle's third vertex for the reflection.
    //
    // The frontier is processed in breadth-first waves. Ring labels for new
    // vertices come from their discovery edge, which is exact within a wave;
    // reordering across waves could expand a deep edge before the vertex's
    // shallow creator runs and overestimate the label.
    let mut wave: Vec<(u32, u32, u32)> = Vec::new();
    for j in 0..k {
        let a = 1 + j;
        let b = 1 + (j + 1) % k;
        add_face(&mut faces, &mut face_set, &mut edge_use, [center, a, b])?;
        wave.push((a, b, center));
    }

    let mut rng = options.shuffle_seed.map(ChaCha8Rng::seed_from_u64);

    while !wave.is_empty() {
        if let Some(rng) = &mut rng {
            wave.shuffle(rng);
        }
        let mut next_wave: Vec<(u32, u32, u32)> = Vec::new();
        for &(a, b, c) in &wave {
            let edge_key = (a.min(b), a.max(b));
            if edge_use.get(&edge_key).copied().unwrap_or(0) >= 2 {
                continue;
            }
            // Triangles whose innermost vertex ring exceeds the requested
            // layer belong to deeper bands and are not generated.
            if rings[a as usize].min(rings[b as usize]) > layers {
                continue;
            }
            let pa = dedup.points[a as usize];
            let pb = dedup.points[b as usize];
            let pc = dedup.points[c as usize];
            let pd = reflect_across(pa, pb, pc);
            let d = match dedup.find(pd) {
                Some(id) => id,
                None => {
                    let ring = rings[a as usize].min(rings[b as usize]) + 1;
                    push_vertex(&mut dedup, &mut rings, pd, ring)?
                }
            };
            // Neighbor across (a, b) traverses the edge in reverse.
            if add_face(&mut faces, &mut face_set, &mut edge_use, [b, a, d])? {
                next_wave.push((a, d, b));
                next_wave.push((d, b, a));
            }
        }
        wave = next_wave;
    }

    // Exact ring labels from the final edge graph; the incremental labels
    // above only steer generation.
    let rings = vertex_rings_by_bfs(dedup.points.len(), center, &faces);

    let vertices = dedup
        .points
        .iter()
        .zip(&rings)
        .map(|(p, &ring)| PatchVertex {
            position: p.to_klein(),
            layer: ring,
        })
        .collect();
    let triangle_layers = faces
        .iter()
        .map(|f| f.iter().map(|&v| rings[v as usize]).min().unwrap())
        .collect();

    Ok(TilingPatch {
        k,
        layers,
        vertices,
        triangles: faces,
        triangle_layers,
    })
}

/// Edge-graph distance of every vertex from the seed vertex.
fn vertex_rings_by_bfs(vertex_count: usize, seed: u32, faces: &[[u32; 3]]) -> Vec<u32> {
    let mut adjacency = vec![Vec::new(); vertex_count];
    for f in faces {
        for i in 0..3 {
            let (a, b) = (f[i] as usize, f[(i + 1) % 3] as usize);
            adjacency[a].push(b as u32);
            adjacency[b].push(a as u32);
        }
    }
    let mut rings = vec![u32::MAX; vertex_count];
    let mut queue = VecDeque::new();
    rings[seed as usize] = 0;
    queue.push_back(seed);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v as usize] {
            if rings[w as usize] == u32::MAX {
                rings[w as usize] = rings[v as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    rings
}
