use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use hyptile::crochet;
use hyptile::cylinder::build_cylinder_mesh;
use hyptile::embed;
use hyptile::growth::growth_table;
use hyptile::mesh::build_disk_with_budget;
use hyptile::tiling::{edge_length, expand_tiling_with, TilingOptions};
use hyptile::{CylinderSurface, EmbedParams, Geodesic3, IdealEndpoint};
use hyptile_cli::{
    cylinder_surface_obj, embed_report_text, embedding_obj, growth_csv, mesh_stats_text, neck_csv,
    neck_report_text, pattern_json, tiling_svg, DiskModel, RenderOptions,
};

/// Hyperbolic tilings, triangulated disk meshes, relaxed embeddings,
/// cylinders in the Poincare ball, and crochet patterns.
#[derive(Parser)]
#[command(name = "hyptile", version)]
struct Cli {
    /// Write the primary output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized initialization
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Triangle budget for tiling and mesh construction
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Klein,
    Poincare,
}

#[derive(Subcommand)]
enum Command {
    /// Render a {3,k} tiling patch as SVG
    Tile {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        layers: u32,
        #[arg(long, value_enum, default_value = "klein")]
        model: ModelArg,
        #[arg(long, default_value_t = 800)]
        width_px: u32,
        /// Stroke width in model coordinates
        #[arg(long, default_value_t = 0.004)]
        stroke_width: f64,
        /// Draw the unit circle
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        disk_boundary: bool,
        /// Color faces by layer index
        #[arg(long, action = ArgAction::SetTrue)]
        depth_coloring: bool,
    },
    /// Combinatorial disk mesh statistics (counts, degrees, angle defects)
    Mesh {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        layers: u32,
    },
    /// Circumference growth table as CSV
    Growth {
        #[arg(long)]
        r_max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Relax a disk mesh into 3-space and write the embedding as OBJ
    Embed {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        layers: u32,
        #[arg(long, default_value_t = 50_000)]
        iterations: usize,
        #[arg(long, default_value_t = 0.25)]
        step_size: f64,
        #[arg(long, default_value_t = 0.02)]
        tolerance: f64,
        #[arg(long, default_value_t = 0.01)]
        jitter_scale: f64,
        /// Constrain the relaxation to the z = 0 plane
        #[arg(long, action = ArgAction::SetTrue)]
        planar: bool,
    },
    /// Cylinder around the z-diameter: neck diagnostics CSV, optional OBJ
    Cylinder {
        /// Polar angle of the first generator endpoint
        #[arg(long, default_value_t = 1.0)]
        theta1: f64,
        /// Azimuth of the first generator endpoint
        #[arg(long, default_value_t = 0.0)]
        phi1: f64,
        /// Polar angle of the second generator endpoint
        #[arg(long, default_value_t = std::f64::consts::PI - 1.0)]
        theta2: f64,
        /// Azimuth of the second generator endpoint
        #[arg(long, default_value_t = 0.0)]
        phi2: f64,
        /// Rows of the neck diagnostics CSV
        #[arg(long, default_value_t = 200)]
        samples: u32,
        /// Also write the sampled surface of revolution as OBJ
        #[arg(long)]
        surface_obj: Option<PathBuf>,
        #[arg(long, default_value_t = 24)]
        rings: u32,
        #[arg(long, default_value_t = 32)]
        segments: u32,
        /// Also write a relaxed degree-8 cylinder mesh as OBJ
        #[arg(long)]
        mesh_obj: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        rows_per_side: u32,
        #[arg(long, default_value_t = 8)]
        neck_count: u32,
        #[arg(long, default_value_t = 20_000)]
        relax_iterations: usize,
    },
    /// Compile a crochet pattern as text or a structured JSON document
    Crochet {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        rows: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: PatternFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternFormat {
    Text,
    Json,
}

#[derive(Debug)]
enum RunError {
    Lib(hyptile::Error),
    Io(std::io::Error),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Lib(e) => write!(f, "{e}"),
            RunError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<hyptile::Error> for RunError {
    fn from(e: hyptile::Error) -> Self {
        RunError::Lib(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), RunError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn write_file(path: &Path, content: &str) -> Result<(), RunError> {
    std::fs::write(path, content)?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Tile {
            k,
            layers,
            model,
            width_px,
            stroke_width,
            disk_boundary,
            depth_coloring,
        } => {
            let options = TilingOptions {
                budget: cli.budget,
                shuffle_seed: None,
            };
            let patch = expand_tiling_with::<f64>(k, layers, &options)?;
            let render = RenderOptions {
                model: match model {
                    ModelArg::Klein => DiskModel::Klein,
                    ModelArg::Poincare => DiskModel::Poincare,
                },
                width_px,
                stroke_width,
                show_disk_boundary: disk_boundary,
                depth_coloring,
            };
            let svg = tiling_svg(&patch, &render)?;
            emit(&cli.out, &svg)
        }
        Command::Mesh { k, layers } => {
            let mesh = build_disk_with_budget(k, layers, cli.budget)?;
            emit(&cli.out, &mesh_stats_text(&mesh))
        }
        Command::Growth { r_max, steps } => {
            let table = growth_table(r_max, steps)?;
            emit(&cli.out, &growth_csv(&table))
        }
        Command::Embed {
            k,
            layers,
            iterations,
            step_size,
            tolerance,
            jitter_scale,
            planar,
        } => {
            let mesh = build_disk_with_budget(k, layers, cli.budget)?;
            let params = EmbedParams {
                max_iterations: iterations,
                step_size,
                tolerance,
                seed: cli.seed,
                jitter_scale,
            };
            let (state, report) = if planar {
                embed::relax_planar(&mesh, &params)?
            } else {
                embed::relax(&mesh, &params)?
            };
            let obj = embedding_obj(&mesh, &state);
            emit(&cli.out, &obj)?;
            eprint!("{}", embed_report_text(&report));
            Ok(())
        }
        Command::Cylinder {
            theta1,
            phi1,
            theta2,
            phi2,
            samples,
            surface_obj,
            rings,
            segments,
            mesh_obj,
            rows_per_side,
            neck_count,
            relax_iterations,
        } => {
            let generator = Geodesic3::new(
                IdealEndpoint::from_polar(theta1, phi1),
                IdealEndpoint::from_polar(theta2, phi2),
            )?;
            let cylinder = CylinderSurface::from_generator(generator)?;
            let csv = neck_csv(&cylinder, samples)?;
            if let Some(path) = &surface_obj {
                let obj = cylinder_surface_obj(&cylinder, rings, segments)?;
                write_file(path, &obj)?;
            }
            if let Some(path) = &mesh_obj {
                let mesh = build_cylinder_mesh(rows_per_side, neck_count)?;
                let params = EmbedParams {
                    max_iterations: relax_iterations,
                    seed: cli.seed,
                    ..EmbedParams::default()
                };
                let target = edge_length::<f64>(8)?;
                let (state, report) = embed::relax_scaled(&mesh, &params, target)?;
                write_file(path, &embedding_obj(&mesh, &state))?;
                eprint!("{}", embed_report_text(&report));
            }
            emit(&cli.out, &csv)?;
            eprint!("{}", neck_report_text(&cylinder));
            Ok(())
        }
        Command::Crochet { k, rows, format } => {
            let pattern = crochet::compile_pattern(k, rows)?;
            let rendered = match format {
                PatternFormat::Text => crochet::render_text(&pattern),
                PatternFormat::Json => pattern_json(&pattern),
            };
            emit(&cli.out, &rendered)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                RunError::Lib(hyptile::Error::BudgetExceeded { .. }) => ExitCode::from(4),
                RunError::Lib(_) => ExitCode::from(3),
                RunError::Io(_) => ExitCode::from(1),
            }
        }
    }
}
