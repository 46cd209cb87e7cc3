use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dccube::analysis::{classify, ClassifyOptions, SingularLocus};
use dccube::canonical::{catalog, family};
use dccube::construct::{complete_cube, offset_cube};
use dccube::io::{
    export_singular_curves, export_surface_mesh, load_cube, load_patch, render_classification, render_cube, save_cube,
    write_polylines, CubeFile, MeshOptions,
};
use dccube::qb::{Direction, ProjParam};
use dccube::{Cube, Error, Param, Tol};
use serde_json::json;

#[derive(Parser)]
#[command(name = "dccube", version, about = "Build, classify and export Dupin cyclidic cubes")]
struct Cli {
    /// Absolute tolerance of vanishing tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_abs: f64,
    /// Relative tolerance of vanishing tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_rel: f64,
    /// Seed for randomized sample points.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a cube and write it as a CubeFile.
    Build(BuildArgs),
    /// Classify a cube up to Möbius transformations.
    Classify {
        file: PathBuf,
        /// Also report the degree.
        #[arg(long)]
        degree: bool,
    },
    /// Write coordinate-surface meshes and singular curves.
    Export(ExportArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Catalog family: A, A4, TP, B, S1, S2, S3, S4, O1, O2.
    #[arg(long, group = "source")]
    family: Option<String>,
    /// Comma-separated family parameters.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    params: Option<Vec<f64>>,
    /// Three face patch files (the faces i = 0, j = 0, k = 0).
    #[arg(long, group = "source", num_args = 3)]
    from_faces: Option<Vec<PathBuf>>,
    /// Patch file to offset.
    #[arg(long, group = "source", requires = "distance")]
    offset: Option<PathBuf>,
    /// Offset distance.
    #[arg(long, allow_hyphen_values = true)]
    distance: Option<f64>,
    /// Output CubeFile; without it the CubeFile goes to stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    /// CubeFile to export (not needed with --gallery).
    #[arg(required_unless_present = "gallery")]
    file: Option<PathBuf>,
    /// Coordinate surfaces such as `u=0,0.5,1`; repeatable. `inf` is accepted as a value.
    #[arg(long)]
    surfaces: Vec<String>,
    /// Write the singular curves.
    #[arg(long)]
    singular: bool,
    /// Mesh cells per side and contour cells per side.
    #[arg(long, default_value_t = 32)]
    resolution: usize,
    /// Clipping radius; defaults to ten times the control-net diameter.
    #[arg(long)]
    clip_radius: Option<f64>,
    /// Regenerate a gallery configuration for a subtype label (A1, O2, B, ...).
    #[arg(long)]
    gallery: Option<String>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

fn at(path: &Path) -> impl FnOnce(Error) -> Error + '_ {
    move |e| match e {
        Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
        e => e,
    }
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::DegenerateCube(_) | Error::DegenerateSlice | Error::IdenticallyZero => 3,
        Error::Unclassifiable(_) | Error::SolverInconclusive(_) | Error::PointNearSingularity => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if cli.json {
                emit(&format!("{}\n", json!({ "error": e.to_string(), "exit_code": exit_code(&e) })));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> dccube::Result<()> {
    let tol = Tol::new(cli.tol_abs, cli.tol_rel);
    match &cli.cmd {
        Cmd::Build(args) => build(cli, args, &tol),
        Cmd::Classify { file, degree } => {
            let cube = load_cube(file, &tol).map_err(at(file))?.cube;
            let c = classify(&cube, &ClassifyOptions { tol, seed: cli.seed })?;
            if cli.json {
                emit(&(serde_json::to_string_pretty(&c).expect("serializable") + "\n"));
            } else {
                emit(&render_classification(&c, *degree));
            }
            Ok(())
        }
        Cmd::Export(args) => export(cli, args, &tol),
    }
}

fn build(cli: &Cli, args: &BuildArgs, tol: &Tol) -> dccube::Result<()> {
    let file = if let Some(label) = &args.family {
        let params = args.params.clone().unwrap_or_default();
        let f = family(label, &params)?;
        CubeFile::with_family(f.cube, label, &params)
    } else if let Some(faces) = &args.from_faces {
        let p = [
            load_patch(&faces[0]).map_err(at(&faces[0]))?,
            load_patch(&faces[1]).map_err(at(&faces[1]))?,
            load_patch(&faces[2]).map_err(at(&faces[2]))?,
        ];
        CubeFile::new(complete_cube(p, tol)?)
    } else if let Some(path) = &args.offset {
        let d = args.distance.expect("clap enforces --distance");
        CubeFile::new(offset_cube(&load_patch(path).map_err(at(path))?, d)?)
    } else {
        return Err(Error::InvalidParameter("one of --family, --from-faces, --offset is required".into()));
    };
    if let Some(out) = &args.output {
        save_cube(out, &file).map_err(at(out))?;
    }
    if cli.json {
        let sp = file.cube.spherical_polys();
        let sigma: Vec<_> =
            Direction::ALL.iter().map(|&d| json!({ "direction": d.name(), "coefficients": sp.get(d).c })).collect();
        let v = json!({
            "family": file.family,
            "params": file.params,
            "points": file.cube.net,
            "sigma": sigma,
            "output": args.output,
        });
        emit(&(serde_json::to_string_pretty(&v).expect("serializable") + "\n"));
    } else if args.output.is_some() {
        emit(&render_cube(&file.cube));
    } else {
        let mut text: String = render_cube(&file.cube).lines().map(|l| format!("# {l}\n")).collect();
        text.push_str(&file.to_toml()?);
        emit(&text);
    }
    Ok(())
}

fn parse_surfaces(spec: &str) -> dccube::Result<(Direction, Vec<Param>)> {
    let bad = || Error::InvalidParameter(format!("surface spec `{spec}` is not of the form u=0,0.5,1"));
    let (d, vals) = spec.split_once('=').ok_or_else(bad)?;
    let dir: Direction = d.trim().parse().map_err(|_| bad())?;
    let mut out = Vec::new();
    for v in vals.split(',') {
        let v = v.trim();
        out.push(if v == "inf" {
            ProjParam::infinity()
        } else {
            ProjParam::affine(v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad)?)
        });
    }
    Ok((dir, out))
}

fn param_label(p: &Param) -> String {
    p.to_affine().map_or_else(|| "inf".to_string(), |v| v.to_string())
}

fn export(cli: &Cli, args: &ExportArgs, tol: &Tol) -> dccube::Result<()> {
    let (cube, stem, mut surfaces, singular) = match &args.gallery {
        Some(label) => {
            let f = catalog()
                .into_iter()
                .find(|f| f.expected.subtype.is_some_and(|s| s.to_string() == *label))
                .ok_or_else(|| Error::InvalidParameter(format!("no gallery configuration for `{label}`")))?;
            let sample = ["0.25", "0.5", "0.75"].join(",");
            let surfaces = Direction::ALL.iter().map(|d| format!("{}={sample}", d.name())).collect();
            (f.cube, format!("gallery_{label}"), surfaces, true)
        }
        None => {
            let path = args.file.as_ref().expect("clap enforces the file");
            let stem = path.file_stem().map_or("cube".into(), |s| s.to_string_lossy().into_owned());
            (load_cube(path, tol).map_err(at(path))?.cube, stem, Vec::new(), args.singular)
        }
    };
    surfaces.extend(args.surfaces.iter().cloned());
    std::fs::create_dir_all(&args.out_dir)?;

    let mut written = Vec::new();
    let mesh_opts =
        MeshOptions { resolution: args.resolution, clip_radius: args.clip_radius, ..MeshOptions::default() };
    for spec in &surfaces {
        let (dir, values) = parse_surfaces(spec)?;
        for v in values {
            let mesh = export_surface_mesh(&cube, dir, v, &mesh_opts)?;
            let path = args.out_dir.join(format!("{stem}_{}{}.obj", dir.name(), param_label(&v)));
            let header =
                format!("dccube coordinate surface {}={}\nresolution {}", dir.name(), param_label(&v), args.resolution);
            mesh.write_obj(&mut BufWriter::new(File::create(&path)?), &header)?;
            written.push(
                json!({ "path": path, "kind": "mesh", "vertices": mesh.vertices.len(), "faces": mesh.faces.len() }),
            );
        }
    }
    if singular {
        let locus = dccube::analysis::singular_locus(&cube, tol)?;
        let path = args.out_dir.join(format!("{stem}_singular.txt"));
        let n = write_curves(&cube, &locus, args.resolution, args.clip_radius, &path)?;
        written.push(json!({ "path": path, "kind": "curves", "curves": n }));
    }
    if cli.json {
        emit(&(serde_json::to_string_pretty(&written).expect("serializable") + "\n"));
    } else {
        let lines: String = written
            .iter()
            .map(|w| format!("{} {}\n", w["kind"].as_str().unwrap_or(""), w["path"].as_str().unwrap_or("")))
            .collect();
        emit(&lines);
    }
    Ok(())
}

fn write_curves(
    cube: &Cube,
    locus: &SingularLocus,
    resolution: usize,
    radius: Option<f64>,
    path: &Path,
) -> dccube::Result<usize> {
    let radius = radius.unwrap_or_else(|| {
        let (c, d) = dccube::io::control_net_bounds(cube);
        10.0 * d + c.iter().map(|x| x * x).sum::<f64>().sqrt()
    });
    let curves = export_singular_curves(locus, resolution.max(64), radius);
    write_polylines(&mut BufWriter::new(File::create(path)?), &curves)?;
    Ok(curves.len())
}
