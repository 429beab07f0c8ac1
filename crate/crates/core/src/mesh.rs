//! Combinatorial triangulated surfaces: layered disks with k triangles at
//! each interior vertex, Euler characteristics, boundary statistics, and
//! discrete curvature as angle defect.
//!
//! Faces are unit Euclidean equilateral triangles for curvature purposes, so
//! every corner contributes pi/3 and defects are exact integer multiples of
//! pi/3. Meshes are immutable after construction; the edge table is derived
//! lazily from the face list.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::tiling::DEFAULT_TRIANGLE_BUDGET;

/// Mesh vertex: the ring it belongs to (edge-graph distance from the center
/// vertex or seed ring) and whether it lies on the mesh boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexRecord {
    pub layer: u32,
    pub boundary: bool,
}

#[derive(Debug)]
struct EdgeTable {
    /// Undirected edges in sorted order.
    list: Vec<(u32, u32)>,
}

/// An oriented triangulated surface stored as an indexed face set.
#[derive(Debug)]
pub struct TriMesh {
    vertices: Vec<VertexRecord>,
    faces: Vec<[u32; 3]>,
    face_layers: Vec<u32>,
    edge_table: OnceLock<EdgeTable>,
}

impl Clone for TriMesh {
    fn clone(&self) -> Self {
        TriMesh {
            vertices: self.vertices.clone(),
            faces: self.faces.clone(),
            face_layers: self.face_layers.clone(),
            edge_table: OnceLock::new(),
        }
    }
}

/// Discrete curvature summary of a mesh.
///
/// Defects are reported both in radians and as exact integer multiples of
/// pi/3, so Gauss-Bonnet checks can be carried out without rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub per_vertex: Vec<f64>,
    pub per_vertex_sixths: Vec<i64>,
    pub total: f64,
    pub total_sixths: i64,
    /// The common interior defect in radians, when all interior vertices
    /// agree (they do for every disk and cylinder built here).
    pub interior_defect: Option<f64>,
}

impl TriMesh {
    /// Builds a mesh from oriented faces, checking the complex invariants:
    /// every edge borders one or two faces, interior edges are traversed once
    /// in each direction, and the face adjacency graph is connected.
    pub fn from_oriented_faces(
        vertex_count: usize,
        faces: Vec<[u32; 3]>,
        vertex_layers: Vec<u32>,
        face_layers: Vec<u32>,
    ) -> Result<TriMesh> {
        if vertex_layers.len() != vertex_count {
            return Err(Error::domain("one layer index per vertex required"));
        }
        if face_layers.len() != faces.len() {
            return Err(Error::domain("one layer index per face required"));
        }
        let mut directed: HashMap<(u32, u32), u32> = HashMap::new();
        let mut undirected: HashMap<(u32, u32), u32> = HashMap::new();
        for f in &faces {
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::domain("degenerate face with repeated vertex"));
            }
            for i in 0..3 {
                let (a, b) = (f[i], f[(i + 1) % 3]);
                if a as usize >= vertex_count || b as usize >= vertex_count {
                    return Err(Error::UnknownVertex(a.max(b)));
                }
                *directed.entry((a, b)).or_insert(0) += 1;
                *undirected.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        for (&(a, b), &n) in &undirected {
            if n > 2 {
                return Err(Error::domain(format!(
                    "edge ({a}, {b}) is shared by {n} faces; at most 2 allowed"
                )));
            }
            if n == 2 {
                let fwd = directed.get(&(a, b)).copied().unwrap_or(0);
                let bwd = directed.get(&(b, a)).copied().unwrap_or(0);
                if fwd != 1 || bwd != 1 {
                    return Err(Error::domain(format!(
                        "inconsistent orientation across edge ({a}, {b})"
                    )));
                }
            }
        }
        if !faces.is_empty() {
            // Face adjacency graph must be connected.
            let mut edge_to_faces: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
            for (fi, f) in faces.iter().enumerate() {
                for i in 0..3 {
                    let (a, b) = (f[i], f[(i + 1) % 3]);
                    edge_to_faces
                        .entry((a.min(b), a.max(b)))
                        .or_default()
                        .push(fi);
                }
            }
            let mut seen = vec![false; faces.len()];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut reached = 1usize;
            while let Some(fi) = stack.pop() {
                let f = faces[fi];
                for i in 0..3 {
                    let (a, b) = (f[i], f[(i + 1) % 3]);
                    for &nf in &edge_to_faces[&(a.min(b), a.max(b))] {
                        if !seen[nf] {
                            seen[nf] = true;
                            reached += 1;
                            stack.push(nf);
                        }
                    }
                }
            }
            if reached != faces.len() {
                return Err(Error::domain("face adjacency graph is not connected"));
            }
        }
        let mut boundary = vec![false; vertex_count];
        for (&(a, b), &n) in &undirected {
            if n == 1 {
                boundary[a as usize] = true;
                boundary[b as usize] = true;
            }
        }
        let vertices = vertex_layers
            .into_iter()
            .zip(boundary)
            .map(|(layer, boundary)| VertexRecord { layer, boundary })
            .collect();
        Ok(TriMesh {
            vertices,
            faces,
            face_layers,
            edge_table: OnceLock::new(),
        })
    }

    fn edge_table(&self) -> &EdgeTable {
        self.edge_table.get_or_init(|| {
            let mut set: std::collections::BTreeSet<(u32, u32)> = std::collections::BTreeSet::new();
            for f in &self.faces {
                for i in 0..3 {
                    let (a, b) = (f[i], f[(i + 1) % 3]);
                    set.insert((a.min(b), a.max(b)));
                }
            }
            EdgeTable {
                list: set.into_iter().collect(),
            }
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_table().list.len()
    }

    pub fn vertices(&self) -> &[VertexRecord] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[u32; 3]] {
        &self.faces
    }

    pub fn face_layers(&self) -> &[u32] {
        &self.face_layers
    }

    /// Undirected edges in sorted order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edge_table().list
    }

    fn check_vertex(&self, v: u32) -> Result<()> {
        if (v as usize) < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Number of edges incident to `v`.
    pub fn degree(&self, v: u32) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self
            .edge_table()
            .list
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count())
    }

    /// Number of faces incident to `v`.
    pub fn face_degree(&self, v: u32) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.faces.iter().filter(|f| f.contains(&v)).count())
    }

    pub fn is_boundary_vertex(&self, v: u32) -> Result<bool> {
        self.check_vertex(v)?;
        Ok(self.vertices[v as usize].boundary)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Angle defect at `v` in exact units of pi/3: `6 - faces` at an interior
    /// vertex, `3 - faces` at a boundary vertex, faces being unit equilateral.
    pub fn angle_defect_sixths(&self, v: u32) -> Result<i64> {
        let faces = self.face_degree(v)? as i64;
        Ok(if self.vertices[v as usize].boundary {
            3 - faces
        } else {
            6 - faces
        })
    }

    /// Angle defect at `v` in radians.
    pub fn angle_defect(&self, v: u32) -> Result<f64> {
        Ok(self.angle_defect_sixths(v)? as f64 * core::f64::consts::FRAC_PI_3)
    }

    /// Per-vertex defects, their exact total, and the common interior value.
    pub fn curvature_report(&self) -> CurvatureReport {
        let per_vertex_sixths: Vec<i64> = (0..self.vertex_count() as u32)
            .map(|v| self.angle_defect_sixths(v).expect("vertex id in range"))
            .collect();
        let per_vertex = per_vertex_sixths
            .iter()
            .map(|&s| s as f64 * core::f64::consts::FRAC_PI_3)
            .collect();
        let total_sixths = per_vertex_sixths.iter().sum();
        let mut interior = (0..self.vertex_count())
            .filter(|&v| !self.vertices[v].boundary)
            .map(|v| per_vertex_sixths[v]);
        let interior_defect = match interior.next() {
            Some(first) if interior.all(|s| s == first) => {
                Some(first as f64 * core::f64::consts::FRAC_PI_3)
            }
            _ => None,
        };
        CurvatureReport {
            per_vertex,
            per_vertex_sixths,
            total: total_sixths as f64 * core::f64::consts::FRAC_PI_3,
            total_sixths,
            interior_defect,
        }
    }

    /// Boundary edge count of the sub-mesh truncated at each face layer,
    /// from layer 0 up to the deepest layer present.
    pub fn boundary_stats(&self) -> Vec<usize> {
        let max_layer = self.face_layers.iter().copied().max().unwrap_or(0);
        (0..=max_layer)
            .map(|cut| {
                let mut counts: HashMap<(u32, u32), u32> = HashMap::new();
                for (f, &layer) in self.faces.iter().zip(&self.face_layers) {
                    if layer > cut {
                        continue;
                    }
                    for i in 0..3 {
                        let (a, b) = (f[i], f[(i + 1) % 3]);
                        *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
                    }
                }
                counts.values().filter(|&&n| n == 1).count()
            })
            .collect()
    }

    /// Edge-degree histogram as (degree, vertex count) pairs in degree order.
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![0usize; self.vertex_count()];
        for &(a, b) in self.edges() {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut hist = std::collections::BTreeMap::new();
        for d in deg {
            *hist.entry(d).or_insert(0usize) += 1;
        }
        hist.into_iter().collect()
    }
}

/// Grows one band of triangles outward from the cyclic ring `inner`, giving
/// the j-th inner vertex exactly `up[j]` outer neighbors. Returns the new
/// outer ring (cyclic order) and each outer vertex's inner-neighbor count.
///
/// Consecutive inner vertices share exactly one outer neighbor, so the band
/// holds `sum(up)` triangles and the outer ring `sum(up) - inner.len()`
/// vertices. Orientation matches the convention that a face with an inner
/// base edge traverses it forward and the next band traverses it backward.
pub(crate) fn grow_band(
    next_id: &mut u32,
    inner: &[u32],
    up: &[u32],
    faces: &mut Vec<[u32; 3]>,
) -> (Vec<u32>, Vec<u32>) {
    let n = inner.len();
    debug_assert!(n >= 3);
    debug_assert!(up.iter().all(|&m| m >= 3));
    let mut alloc = || {
        let id = *next_id;
        *next_id += 1;
        id
    };
    let first_outer = alloc();
    let mut outer = vec![first_outer];
    let mut outer_down = vec![1u32];
    for j in 0..n {
        let v = inner[j];
        let m = up[j] as usize;
        let start = outer.len() - 1;
        let new_count = if j + 1 == n { m - 2 } else { m - 1 };
        for _ in 0..new_count {
            outer.push(alloc());
            outer_down.push(1);
        }
        let fan = |i: usize| -> u32 {
            if j + 1 == n && i == m - 1 {
                first_outer
            } else {
                outer[start + i]
            }
        };
        for i in 0..m - 1 {
            faces.push([v, fan(i), fan(i + 1)]);
        }
        let u_last = fan(m - 1);
        faces.push([inner[(j + 1) % n], v, u_last]);
        if j + 1 == n {
            outer_down[0] = 2;
        } else {
            outer_down[start + m - 1] = 2;
        }
    }
    (outer, outer_down)
}

/// Builds the combinatorial disk with `k` triangles at every interior vertex,
/// out to the given triangle layer, with the default triangle budget.
pub fn build_disk(k: u32, layers: u32) -> Result<TriMesh> {
    build_disk_with_budget(k, layers, DEFAULT_TRIANGLE_BUDGET)
}

/// As [`build_disk`] with an explicit triangle budget.
///
/// Layer 0 is the fan of k triangles around the center vertex; layer L adds
/// the band of triangles between vertex rings L and L + 1. Interior vertex
/// degrees are forced to `k` by giving each ring vertex `(k - 2) - down`
/// outer neighbors, `down` being its edge count into the previous ring.
pub fn build_disk_with_budget(k: u32, layers: u32, budget: usize) -> Result<TriMesh> {
    if k < 7 {
        return Err(Error::domain("hyperbolic disks need k >= 7"));
    }
    if k as usize > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut faces: Vec<[u32; 3]> = Vec::new();
    let mut face_layers: Vec<u32> = Vec::new();
    let mut vertex_layers: Vec<u32> = vec![0];
    let mut next_id: u32 = 1;

    let ring1: Vec<u32> = (0..k).map(|j| 1 + j).collect();
    next_id += k;
    vertex_layers.extend(std::iter::repeat_n(1, k as usize));
    for j in 0..k as usize {
        faces.push([0, ring1[j], ring1[(j + 1) % k as usize]]);
        face_layers.push(0);
    }

    let mut ring = ring1;
    let mut down = vec![1u32; k as usize];
    for band in 1..=layers {
        let up: Vec<u32> = down.iter().map(|&d| (k - 2) - d).collect();
        let band_size: usize = up.iter().map(|&m| m as usize).sum();
        if faces.len() + band_size > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let (outer, outer_down) = grow_band(&mut next_id, &ring, &up, &mut faces);
        face_layers.extend(std::iter::repeat_n(band, band_size));
        vertex_layers.extend(std::iter::repeat_n(band + 1, outer.len()));
        ring = outer;
        down = outer_down;
    }

    TriMesh::from_oriented_faces(next_id as usize, faces, vertex_layers, face_layers)
}
