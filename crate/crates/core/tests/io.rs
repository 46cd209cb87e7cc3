use dccube::analysis::{classify, implicitize_slice, singular_locus, ClassifyOptions};
use dccube::canonical::{catalog, offset_o1, offset_o2, type_a4_cube, type_a_cube};
use dccube::io::{
    export_singular_curves, export_surface_mesh, load_cube, parse_patch, patch_to_toml, render_classification,
    render_cube, save_cube, singular_summary, write_polylines, CubeFile, MeshDomain, MeshOptions,
};
use dccube::qb::Direction;
use dccube::quat::MobiusMap;
use dccube::{Error, Param, Tol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn cubefile_round_trip_is_bit_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cat = catalog();
    for n in 0..1000 {
        let f = &cat[n % cat.len()];
        let gens = rng.gen_range(1..5);
        let m = MobiusMap::<f64>::random(&mut rng, gens);
        let cube = f.cube.apply_mobius(&m).right_mul(dccube::Quat::new(rng.gen(), rng.gen(), rng.gen(), 1.0));
        let file = CubeFile::with_family(cube, &f.label, &f.params);
        let back = CubeFile::parse(&file.to_toml().unwrap()).unwrap();
        assert_eq!(back, file);
        for (a, b) in back.cube.net.iter().zip(file.cube.net.iter()) {
            for (x, y) in
                a.u.to_array()
                    .iter()
                    .chain(a.w.to_array().iter())
                    .zip(b.u.to_array().iter().chain(b.w.to_array().iter()))
            {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}

#[test]
fn cubefile_layout() {
    let text = CubeFile::with_family(type_a_cube(1.0, 2.0, 3.0), "A", &[1.0, 2.0, 3.0]).to_toml().unwrap();
    assert!(text.starts_with("schema = 1\nfamily = \"A\"\n"));
    assert!(text.contains("flat index i + 2j + 4k"));
    // p7 row: u = d + i + j + k, w = 1 − bi − cj − ak.
    let row = text.lines().filter(|l| l.trim_start().starts_with('[')).nth(7).unwrap();
    let vals: Vec<f64> =
        row.trim().trim_start_matches('[').trim_end_matches("],").split(", ").map(|v| v.parse().unwrap()).collect();
    assert_eq!(vals, vec![6.0, 1.0, 1.0, 1.0, 1.0, -2.0, -3.0, -1.0]);
    assert!(row.contains("6.0000000000000000e0"));
}

#[test]
fn cubefile_parse_errors() {
    let good = CubeFile::new(type_a_cube(1.0, 2.0, 3.0)).to_toml().unwrap();
    let seven: String = {
        let mut lines: Vec<&str> = good.lines().collect();
        let last_row = lines.iter().rposition(|l| l.trim_start().starts_with('[')).unwrap();
        lines.remove(last_row);
        lines.join("\n")
    };
    assert!(matches!(CubeFile::parse(&seven), Err(Error::Parse(m)) if m.contains("expected 8")));
    let v2 = good.replace("schema = 1", "schema = 2");
    assert!(matches!(CubeFile::parse(&v2), Err(Error::Parse(m)) if m.contains("schema")));
    assert!(matches!(CubeFile::parse("schema = 1\npoints = 3\n"), Err(Error::Parse(_))));
    assert!(matches!(CubeFile::parse(&format!("{good}extra = 1\n")), Err(Error::Parse(_))));
    let short_row = good.replacen(", 0.0000000000000000e0]", "]", 1);
    assert!(matches!(CubeFile::parse(&short_row), Err(Error::Parse(m)) if m.contains("reals")));
}

#[test]
fn cubefile_validation() {
    let tol = Tol::default();
    let mut cube = type_a_cube(1.0, 2.0, 3.0);
    cube.net[7].u = cube.net[7].u + dccube::Quat::real(1e-3);
    let text = CubeFile::new(cube).to_toml().unwrap();
    assert!(CubeFile::parse(&text).is_ok());
    assert!(matches!(CubeFile::parse_validated(&text, &tol), Err(Error::InvariantViolation(_))));
}

#[test]
fn cubefile_on_disk() {
    let dir = std::env::temp_dir().join(format!("dccube-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("o2.toml");
    let file = CubeFile::with_family(offset_o2(), "O2", &[]);
    save_cube(&path, &file).unwrap();
    assert_eq!(load_cube(&path, &Tol::default()).unwrap(), file);
    assert!(matches!(load_cube(&dir.join("missing.toml"), &Tol::default()), Err(Error::Io(_))));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn patch_files() {
    let patch = type_a_cube(1.0, 2.0, 3.0).slice(Direction::U, Param::affine(0.0));
    let text = patch_to_toml(&patch).unwrap();
    assert!(text.contains("flat index i + 2j;"));
    assert_eq!(parse_patch(&text).unwrap(), patch);
    let cube_text = CubeFile::new(type_a_cube(1.0, 2.0, 3.0)).to_toml().unwrap();
    assert!(matches!(parse_patch(&cube_text), Err(Error::Parse(_))));
}

#[test]
fn mesh_vertices_lie_on_the_slice() {
    let cube = offset_o1(0.5).unwrap();
    for u in [0.0, 0.5, -0.5] {
        let v = Param::affine(u);
        let mesh = export_surface_mesh(&cube, Direction::U, v, &MeshOptions::default()).unwrap();
        let f = implicitize_slice(&cube, Direction::U, v).unwrap();
        assert!(!mesh.faces.is_empty());
        for p in &mesh.vertices {
            assert!(f.relative_residual(*p) < 1e-6, "u = {u}: {p:?}");
        }
        for q in &mesh.faces {
            assert!(q.iter().all(|&i| i < mesh.vertices.len()));
        }
    }
}

#[test]
fn mesh_on_the_unit_patch() {
    let cube = type_a_cube(0.0, 0.0, 0.0);
    let opts = MeshOptions { resolution: 4, domain: MeshDomain::Patch, clip_radius: None };
    let mesh = export_surface_mesh(&cube, Direction::U, Param::affine(0.25), &opts).unwrap();
    assert_eq!(mesh.vertices.len(), 25);
    assert_eq!(mesh.faces.len(), 16);
    for p in &mesh.vertices {
        assert!((p[2] - 0.25).abs() < 1e-15 && (0.0..=1.0).contains(&p[0]) && (0.0..=1.0).contains(&p[1]));
    }
    let mut obj = Vec::new();
    mesh.write_obj(&mut obj, "first\nsecond").unwrap();
    let obj = String::from_utf8(obj).unwrap();
    assert!(obj.starts_with("# first\n# second\n"));
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 25);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 16);
    // OBJ indices are 1-based.
    assert!(obj.lines().filter(|l| l.starts_with("f ")).all(|l| !l.split_whitespace().any(|t| t == "0")));
}

#[test]
fn mesh_clipping_drops_far_faces() {
    let cube = offset_o2();
    let opts = MeshOptions { clip_radius: Some(3.0), ..MeshOptions::default() };
    let mesh = export_surface_mesh(&cube, Direction::U, Param::affine(0.3), &opts).unwrap();
    let (c, _) = dccube::io::control_net_bounds(&cube);
    let far = |p: &[f64; 3]| ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) + (p[2] - c[2]).powi(2)).sqrt() > 3.0;
    for q in &mesh.faces {
        assert!(!q.iter().all(|&i| far(&mesh.vertices[i])));
    }
    assert!(!mesh.clipped_edges.is_empty());
}

#[test]
fn singular_curve_exports() {
    let tol = Tol::default();
    let o2 = export_singular_curves(&singular_locus(&offset_o2(), &tol).unwrap(), 96, 50.0);
    assert_eq!(o2.len(), 2);
    assert!(o2.iter().all(|c| c.kind == "parabola" && !c.polylines.is_empty()));

    let a1 = export_singular_curves(&singular_locus(&type_a_cube(1.0, 2.0, 3.0), &tol).unwrap(), 96, 50.0);
    assert_eq!(a1.len(), 3);
    for c in &a1 {
        assert!(c.kind.contains("1-oval"), "{}", c.kind);
        assert!(c.polylines.iter().any(|(closed, pts)| *closed && pts.len() > 10));
    }

    let a4 = export_singular_curves(&singular_locus(&type_a4_cube(0.5).unwrap(), &tol).unwrap(), 96, 50.0);
    let lines: usize = a4.iter().filter(|c| c.kind.contains("line")).map(|c| c.polylines.len()).sum();
    assert!(lines >= 2, "{a4:?}");

    let mut out = Vec::new();
    write_polylines(&mut out, &o2).unwrap();
    let text = String::from_utf8(out).unwrap();
    assert!(text.starts_with("# dccube singular curves\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("curve ")).count(), 2);
    assert_eq!(text.lines().filter(|l| *l == "end").count(), 2);
    assert!(text.lines().any(|l| l == "type parabola"));
}

#[test]
fn reports() {
    let c = classify(&type_a_cube(1.0, 2.0, 3.0), &ClassifyOptions::default()).unwrap();
    assert_eq!(singular_summary(&c), "3 focal 1-oval bicircular quartics");
    let text = render_classification(&c, false);
    assert!(text.starts_with("A1, singular: 3 focal 1-oval bicircular quartics\n"), "{text}");
    assert!(text.contains("coarse type: A"));
    let with_degree = render_classification(&c, true);
    assert!(with_degree.lines().next().unwrap().contains("degree"));

    let cube = render_cube(&type_a_cube(1.0, 2.0, 3.0));
    assert!(cube.lines().any(|l| l.starts_with("p7 (1,1,1):")), "{cube}");
    assert!(cube.contains("sigma_s"));
}
