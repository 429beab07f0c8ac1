//! File emitters for the hyptile command line tool: SVG tiling renders, CSV
//! tables, OBJ meshes, mesh statistics, and structured crochet documents.
//!
//! Every emitter is deterministic: identical inputs produce byte-identical
//! output. Numbers are written with Rust's shortest round-trip formatting.

use hyptile::crochet::Pattern;
use hyptile::embed::{EmbedReport, EmbeddingState};
use hyptile::growth::GrowthTable;
use hyptile::hypmath::klein_to_poincare;
use hyptile::mesh::TriMesh;
use hyptile::tiling::TilingPatch;
use hyptile::{CylinderSurface, Error, Result};

/// Disk model used for rendering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiskModel {
    /// Projective model: geodesics are straight chords.
    Klein,
    /// Conformal model: geodesics are circular arcs meeting the boundary at
    /// right angles.
    Poincare,
}

/// Options for [`tiling_svg`].
#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub model: DiskModel,
    pub width_px: u32,
    /// Stroke width in model coordinates (the viewBox spans 2.1 units).
    pub stroke_width: f64,
    pub show_disk_boundary: bool,
    /// Color faces by their layer index through a fixed 8-color palette.
    pub depth_coloring: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            model: DiskModel::Klein,
            width_px: 800,
            stroke_width: 0.004,
            show_disk_boundary: true,
            depth_coloring: false,
        }
    }
}

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc949", "#b07aa1", "#9c755f",
];

/// Straight-line fallback when the Poincare arc radius exceeds this bound;
/// near-diameter geodesics have numerically unstable arc parameters.
const ARC_RADIUS_LIMIT: f64 = 1e4;

fn arc_segment(p: (f64, f64), q: (f64, f64)) -> String {
    // Circle through p and q orthogonal to the unit circle: |c|^2 = r^2 + 1
    // reduces to the linear system 2 p . c = |p|^2 + 1, 2 q . c = |q|^2 + 1.
    let rhs_p = p.0 * p.0 + p.1 * p.1 + 1.0;
    let rhs_q = q.0 * q.0 + q.1 * q.1 + 1.0;
    let det = 4.0 * (p.0 * q.1 - p.1 * q.0);
    if det.abs() < 1e-9 {
        return format!("L {} {}", q.0, q.1);
    }
    let cx = (2.0 * q.1 * rhs_p - 2.0 * p.1 * rhs_q) / det;
    let cy = (-2.0 * q.0 * rhs_p + 2.0 * p.0 * rhs_q) / det;
    let r_sq = cx * cx + cy * cy - 1.0;
    if r_sq <= 0.0 {
        return format!("L {} {}", q.0, q.1);
    }
    let r = r_sq.sqrt();
    if r > ARC_RADIUS_LIMIT {
        return format!("L {} {}", q.0, q.1);
    }
    let angle_p = (p.1 - cy).atan2(p.0 - cx);
    let angle_q = (q.1 - cy).atan2(q.0 - cx);
    let mut delta = angle_q - angle_p;
    while delta > std::f64::consts::PI {
        delta -= std::f64::consts::TAU;
    }
    while delta < -std::f64::consts::PI {
        delta += std::f64::consts::TAU;
    }
    let sweep = if delta > 0.0 { 1 } else { 0 };
    format!("A {} {} 0 0 {} {} {}", r, r, sweep, q.0, q.1)
}

/// Renders a tiling patch as an SVG document: one polygon (Klein) or one
/// arc path (Poincare) per triangle inside the unit-circle view box.
pub fn tiling_svg(patch: &TilingPatch<f64>, options: &RenderOptions) -> Result<String> {
    if options.width_px < 64 {
        return Err(Error::Domain("width_px must be at least 64".into()));
    }
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{w}\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n",
        w = options.width_px
    ));
    svg.push_str("<g transform=\"scale(1,-1)\">\n");
    if options.show_disk_boundary {
        svg.push_str(&format!(
            "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888888\" stroke-width=\"{}\"/>\n",
            options.stroke_width
        ));
    }
    let positions: Vec<(f64, f64)> = patch
        .vertices
        .iter()
        .map(|v| match options.model {
            DiskModel::Klein => (v.position.x(), v.position.y()),
            DiskModel::Poincare => {
                let p = klein_to_poincare(v.position);
                (p.x(), p.y())
            }
        })
        .collect();
    for (triangle, &layer) in patch.triangles.iter().zip(&patch.triangle_layers) {
        let fill = if options.depth_coloring {
            PALETTE[(layer as usize) % PALETTE.len()]
        } else {
            "none"
        };
        let corners = [
            positions[triangle[0] as usize],
            positions[triangle[1] as usize],
            positions[triangle[2] as usize],
        ];
        match options.model {
            DiskModel::Klein => {
                svg.push_str(&format!(
                    "<polygon points=\"{},{} {},{} {},{}\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"{}\"/>\n",
                    corners[0].0, corners[0].1, corners[1].0, corners[1].1,
                    corners[2].0, corners[2].1, fill, options.stroke_width
                ));
            }
            DiskModel::Poincare => {
                svg.push_str(&format!(
                    "<path d=\"M {} {} {} {} {} Z\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"{}\"/>\n",
                    corners[0].0,
                    corners[0].1,
                    arc_segment(corners[0], corners[1]),
                    arc_segment(corners[1], corners[2]),
                    arc_segment(corners[2], corners[0]),
                    fill,
                    options.stroke_width
                ));
            }
        }
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

/// Growth comparison as CSV with the fixed header
/// `r,c_euclidean,c_hyperbolic,ratio`.
pub fn growth_csv(table: &GrowthTable<f64>) -> String {
    let mut out = String::from("r,c_euclidean,c_hyperbolic,ratio\n");
    for row in &table.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.r, row.c_euclidean, row.c_hyperbolic, row.ratio
        ));
    }
    out
}

/// Mesh statistics: counts, degree histogram, and the angle-defect table in
/// exact multiples of pi/3 alongside radians.
pub fn mesh_stats_text(mesh: &TriMesh) -> String {
    let mut out = String::new();
    let boundary = mesh.vertices().iter().filter(|v| v.boundary).count();
    out.push_str(&format!("vertices: {}\n", mesh.vertex_count()));
    out.push_str(&format!("edges: {}\n", mesh.edge_count()));
    out.push_str(&format!("faces: {}\n", mesh.face_count()));
    out.push_str(&format!(
        "euler_characteristic: {}\n",
        mesh.euler_characteristic()
    ));
    out.push_str(&format!("boundary_vertices: {boundary}\n"));
    out.push_str(&format!(
        "interior_vertices: {}\n",
        mesh.vertex_count() - boundary
    ));

    let mut per_layer = std::collections::BTreeMap::new();
    for &layer in mesh.face_layers() {
        *per_layer.entry(layer).or_insert(0usize) += 1;
    }
    out.push_str("faces_per_layer:");
    for (layer, count) in per_layer {
        out.push_str(&format!(" {layer}:{count}"));
    }
    out.push('\n');

    out.push_str("degree_histogram:");
    for (degree, count) in mesh.degree_histogram() {
        out.push_str(&format!(" {degree}:{count}"));
    }
    out.push('\n');

    let mut defect_classes: std::collections::BTreeMap<(bool, usize), usize> =
        std::collections::BTreeMap::new();
    for v in 0..mesh.vertex_count() as u32 {
        let key = (
            mesh.is_boundary_vertex(v).expect("vertex in range"),
            mesh.face_degree(v).expect("vertex in range"),
        );
        *defect_classes.entry(key).or_insert(0) += 1;
    }
    for ((is_boundary, faces), count) in defect_classes {
        let sixths = if is_boundary {
            3 - faces as i64
        } else {
            6 - faces as i64
        };
        out.push_str(&format!(
            "defect boundary={} faces={} defect_pi3={} defect_rad={} count={}\n",
            is_boundary,
            faces,
            sixths,
            sixths as f64 * std::f64::consts::FRAC_PI_3,
            count
        ));
    }
    let report = mesh.curvature_report();
    out.push_str(&format!("total_defect_pi3: {}\n", report.total_sixths));
    out.push_str(&format!("total_defect_rad: {}\n", report.total));
    out
}

/// Wavefront OBJ for an embedded mesh: `v x y z` records then 1-based
/// `f i j k` records, counterclockwise per mesh orientation.
pub fn embedding_obj(mesh: &TriMesh, state: &EmbeddingState<f64>) -> String {
    let mut out = String::new();
    for p in &state.positions {
        out.push_str(&format!("v {} {} {}\n", p.x, p.y, p.z));
    }
    for f in mesh.faces() {
        out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    out
}

/// Wavefront OBJ of the sampled surface of revolution: `rings` chord
/// parameters by `segments` rotation angles, closed around the axis.
pub fn cylinder_surface_obj(
    cylinder: &CylinderSurface,
    rings: u32,
    segments: u32,
) -> Result<String> {
    if rings < 2 || segments < 3 {
        return Err(Error::Domain(
            "surface sampling needs rings >= 2 and segments >= 3".into(),
        ));
    }
    let mut out = String::new();
    for i in 1..=rings {
        let t = i as f64 / (rings + 1) as f64;
        for j in 0..segments {
            let theta = std::f64::consts::TAU * j as f64 / segments as f64;
            let p = cylinder.surface_point(t, theta)?;
            out.push_str(&format!("v {} {} {}\n", p.x(), p.y(), p.z()));
        }
    }
    let index = |i: u32, j: u32| -> u32 { (i - 1) * segments + (j % segments) + 1 };
    for i in 1..rings {
        for j in 0..segments {
            let a = index(i, j);
            let b = index(i, j + 1);
            let c = index(i + 1, j + 1);
            let d = index(i + 1, j);
            out.push_str(&format!("f {a} {b} {c}\n"));
            out.push_str(&format!("f {a} {c} {d}\n"));
        }
    }
    Ok(out)
}

/// Neck diagnostics: distance to the axis along the generator as CSV with
/// header `t,distance_to_axis`.
pub fn neck_csv(cylinder: &CylinderSurface, samples: u32) -> Result<String> {
    if samples < 2 {
        return Err(Error::Domain("need at least 2 samples".into()));
    }
    let mut out = String::from("t,distance_to_axis\n");
    let generator = cylinder.generator();
    for i in 1..=samples {
        let t = i as f64 / (samples + 1) as f64;
        let d = hyptile::cylinder::distance_to_axis(&generator, t)?;
        out.push_str(&format!("{t},{d}\n"));
    }
    Ok(out)
}

/// Structured crochet document: JSON with fields `k`, `rows` (each row
/// `index` and `steps` of `{stitches, anchor, repeat}`), and `metadata`.
pub fn pattern_json(pattern: &Pattern) -> String {
    let mut out = serde_json::to_string_pretty(pattern).expect("pattern serializes");
    out.push('\n');
    out
}

/// Relaxation report as stable `key: value` lines.
pub fn embed_report_text(report: &EmbedReport<f64>) -> String {
    format!(
        "iterations_used: {}\nfinal_energy: {}\nmax_relative_distortion: {}\nbounding_radius: {}\n",
        report.iterations_used,
        report.final_energy,
        report.max_relative_distortion,
        report.bounding_radius
    )
}

/// Neck summary as stable `key: value` lines.
pub fn neck_report_text(cylinder: &CylinderSurface) -> String {
    let neck = cylinder.neck();
    format!(
        "neck_height: {}\nneck_hyperbolic_radius: {}\nneck_circumference: {}\n",
        neck.height, neck.hyperbolic_radius, neck.circumference
    )
}
