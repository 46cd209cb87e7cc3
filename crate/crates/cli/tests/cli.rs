use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use dccube::analysis::{classify, ClassifyOptions};
use dccube::canonical::{type_a_cube, type_b_cube};
use dccube::io::{patch_to_toml, render_classification, render_cube, CubeFile};
use dccube::qb::Direction;
use dccube::{Param, Tol};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dccube"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dccube-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_then_classify_type_a() {
    let dir = scratch("a");
    let file = dir.join("a.toml");
    let o = run(&["build", "--family", "A", "--params", "1,2,3", "-o", path(&file)]);
    assert!(o.status.success(), "{o:?}");
    let cube = type_a_cube(1.0, 2.0, 3.0);
    assert_eq!(stdout(&o), render_cube(&cube));

    let o = run(&["classify", path(&file), "--degree"]);
    assert!(o.status.success(), "{o:?}");
    let expected = render_classification(&classify(&cube, &ClassifyOptions::default()).unwrap(), true);
    assert_eq!(stdout(&o), expected);
    assert!(stdout(&o).starts_with("A1, singular: 3 focal 1-oval bicircular quartics, degree 4\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn build_stdout_is_a_cubefile() {
    let o = run(&["build", "--family", "B", "--params", "2,-3"]);
    assert!(o.status.success(), "{o:?}");
    let f = CubeFile::parse_validated(&stdout(&o), &Tol::default()).unwrap();
    assert_eq!(f.cube, type_b_cube(2.0, -3.0).unwrap());
    assert_eq!(f.family.as_deref(), Some("B"));
}

#[test]
fn classify_reads_stdin_path() {
    let built = run(&["build", "--family", "S1", "--params", "0.5"]);
    let mut child =
        bin().args(["classify", "/dev/stdin"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(&built.stdout).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("S1, singular: "), "{}", stdout(&o));
}

#[test]
fn json_outputs() {
    let dir = scratch("json");
    let file = dir.join("o2.toml");
    let o = run(&["--json", "build", "--family", "O2", "-o", path(&file)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["family"], "O2");
    assert_eq!(v["points"].as_array().unwrap().len(), 8);
    assert_eq!(v["sigma"].as_array().unwrap().len(), 3);

    let o = run(&["classify", path(&file), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coarse"], "O");
    assert_eq!(v["subtype"], "O2");
    assert_eq!(v["sigma"][0]["direction"], "S");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let dir = scratch("codes");
    // Invalid input: missing file, bad family, bad parameters.
    let o = run(&["classify", path(&dir.join("missing.toml"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.toml"));
    assert_eq!(run(&["build", "--family", "Q"]).status.code(), Some(2));
    assert_eq!(run(&["build", "--family", "B", "--params", "1,1"]).status.code(), Some(2));

    // Degenerate cube: both u-faces coincide.
    let mut cube = type_a_cube(1.0, 2.0, 3.0);
    for n in 4..8 {
        cube.net[n] = cube.net[n - 4];
    }
    let file = dir.join("flat.toml");
    std::fs::write(&file, CubeFile::new(cube).to_toml().unwrap()).unwrap();
    let o = run(&["--json", "classify", path(&file)]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_code"], 3);
    assert!(v["error"].as_str().unwrap().contains("degenerate"));

    // Off the Study quadric.
    let mut cube = type_a_cube(1.0, 2.0, 3.0);
    cube.net[7].u += dccube::Quat::real(1e-3);
    std::fs::write(&file, CubeFile::new(cube).to_toml().unwrap()).unwrap();
    assert_eq!(run(&["classify", path(&file)]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn near_spherical_cube_is_unclassifiable() {
    // a + c = −1e−6: too close to the spherical degeneration for either tolerance setting.
    let dir = scratch("tight");
    let file = dir.join("a.toml");
    assert!(run(&["build", "--family", "A", "--params", "1,2,-1.000001", "-o", path(&file)]).status.success());
    for tol in ["1e-9", "1e-4"] {
        let o = run(&["--json", "--tol-abs", tol, "--tol-rel", tol, "classify", path(&file)]);
        assert_eq!(o.status.code(), Some(4), "{o:?}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["exit_code"], 4);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn build_from_faces_and_offset() {
    let dir = scratch("faces");
    let cube = type_a_cube(1.0, 2.0, 3.0);
    let z = Param::affine(0.0);
    let mut paths = Vec::new();
    for (n, d) in [Direction::U, Direction::T, Direction::S].into_iter().enumerate() {
        let p = dir.join(format!("face{n}.toml"));
        std::fs::write(&p, patch_to_toml(&cube.slice(d, z)).unwrap()).unwrap();
        paths.push(p);
    }
    let out = dir.join("done.toml");
    let o = run(&["build", "--from-faces", path(&paths[0]), path(&paths[1]), path(&paths[2]), "-o", path(&out)]);
    assert!(o.status.success(), "{o:?}");
    let done = CubeFile::parse_validated(&std::fs::read_to_string(&out).unwrap(), &Tol::default()).unwrap();
    let (a, b) = (done.cube.control_points().unwrap(), cube.control_points().unwrap());
    assert!(a.iter().zip(b.iter()).all(|(x, y)| x.chordal_distance(y) < 1e-12));

    let o = run(&["build", "--offset", path(&paths[0]), "--distance", "-0.5"]);
    assert!(o.status.success(), "{o:?}");
    CubeFile::parse_validated(&stdout(&o), &Tol::default()).unwrap();
    assert_eq!(run(&["build", "--offset", path(&paths[0])]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn export_writes_meshes_and_curves() {
    let dir = scratch("export");
    let file = dir.join("o2.toml");
    assert!(run(&["build", "--family", "O2", "-o", path(&file)]).status.success());
    let o = run(&[
        "--json",
        "export",
        path(&file),
        "--surfaces",
        "u=0,0.5,2",
        "--singular",
        "--out-dir",
        path(&dir),
        "--resolution",
        "16",
    ]);
    assert!(o.status.success(), "{o:?}");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let items = v.as_array().unwrap();
    assert_eq!(items.iter().filter(|w| w["kind"] == "mesh").count(), 3);
    let curves = items.iter().find(|w| w["kind"] == "curves").unwrap();
    assert_eq!(curves["curves"], 2);

    let obj = std::fs::read_to_string(dir.join("o2_u0.5.obj")).unwrap();
    assert!(obj.starts_with("# dccube coordinate surface u=0.5\n# resolution 16\n"));
    assert!(dir.join("o2_u2.obj").exists());
    let txt = std::fs::read_to_string(dir.join("o2_singular.txt")).unwrap();
    assert_eq!(txt.lines().filter(|l| *l == "type parabola").count(), 2);

    assert_eq!(run(&["export", path(&file), "--surfaces", "w=1"]).status.code(), Some(2));
    // The u-slice at ∞ of this offset system collapses to a point.
    assert_eq!(run(&["export", path(&file), "--surfaces", "u=inf", "--out-dir", path(&dir)]).status.code(), Some(3));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn gallery_export() {
    let dir = scratch("gallery");
    let o = run(&["export", "--gallery", "A4", "--out-dir", path(&dir), "--resolution", "8"]);
    assert!(o.status.success(), "{o:?}");
    let files: Vec<_> =
        std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(files.iter().filter(|f| f.ends_with(".obj")).count(), 9);
    assert!(files.iter().any(|f| f == "gallery_A4_singular.txt"));
    assert_eq!(run(&["export", "--gallery", "Z9", "--out-dir", path(&dir)]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
