//! Acceptance criteria 1–8. Runs as a plain binary and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use dccube::analysis::*;
use dccube::canonical::*;
use dccube::construct::{miquel_point, offset_cube, side_points};
use dccube::qb::{Direction, ProjParam, QuadPoly};
use dccube::quat::{cross, cross_ratio, dot3, norm3, MobiusMap};
use dccube::{Cube, Param, Point, Quat, Tol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Distance between coefficient vectors after scaling both to unit max norm with aligned sign.
fn scale_distance(a: &[f64], b: &[f64]) -> f64 {
    let unit = |v: &[f64]| {
        let (mut m, mut s) = (0.0f64, 1.0);
        for &x in v {
            if x.abs() > m {
                m = x.abs();
                s = x.signum();
            }
        }
        v.iter().map(|x| x * s / m).collect::<Vec<_>>()
    };
    let (a, b) = (unit(a), unit(b));
    a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------- 1

fn sigma_matches(cube: &Cube, expected: [[f64; 3]; 3], tol: f64) -> Result<f64, String> {
    let sp = cube.spherical_polys();
    let mut worst = 0.0f64;
    for d in Direction::ALL {
        let got = sp.get(d).c;
        let e = expected[d.index()];
        let dist = scale_distance(&got, &e);
        worst = worst.max(dist);
        check(dist <= tol, || format!("sigma_{} = {got:?}, expected {e:?} up to scale", d.name()))?;
    }
    Ok(worst)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    let mut n = 0;
    for _ in 0..50 {
        let (a, b, c) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        worst = worst.max(sigma_matches(
            &type_a_cube(a, b, c),
            [[0.0, a + c, 0.0], [0.0, a + b, 0.0], [0.0, b + c, 0.0]],
            1e-10,
        )?);
        worst = worst.max(sigma_matches(
            &two_plane_cube(a, b, c),
            [[1.0, 2.0 * a, c], [0.0, -2.0 * (b - c), 0.0], [0.0, -2.0 * (a + b + c), 0.0]],
            1e-10,
        )?);
        let h: f64 = rng.gen_range(0.1..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        if (h.abs() - 1.0).abs() > 1e-3 {
            let cube = offset_o1(h).map_err(|e| e.to_string())?;
            worst = worst.max(sigma_matches(
                &cube,
                [[0.0, 1.0 - h, -(1.0 - h)], [0.0, -(1.0 + h), 1.0 + h], [2.0 * h, 0.0, 0.0]],
                1e-10,
            )?);
        }
        n += 1;
    }
    worst = worst.max(sigma_matches(&offset_o2(), [[0.0, -1.0, 1.0], [0.0, 1.0, -1.0], [-4.0, 0.0, 0.0]], 1e-10)?);
    let secs = start.elapsed().as_secs_f64();
    check(secs < 1.0, || format!("took {secs:.2} s"))?;
    Ok(format!("{n} parameter samples per family, max deviation {worst:.1e}, {secs:.3} s"))
}

// ---------------------------------------------------------------- 2

fn x() -> Poly3 {
    Poly3::var(0)
}
fn y() -> Poly3 {
    Poly3::var(1)
}
fn z() -> Poly3 {
    Poly3::var(2)
}
fn k(c: f64) -> Poly3 {
    Poly3::constant(c)
}
fn sq(p: &Poly3) -> Poly3 {
    p.mul(p)
}

fn quartic_cyclide(h: f64, u: f64) -> Poly3 {
    let r2 = sq(&x()).add(&sq(&y())).add(&sq(&z()));
    let a = r2.add(&k(h - u * u));
    let b = x().scale(1.0 + h).add(&k(-u * (1.0 - h)));
    sq(&a).sub(&sq(&b)).sub(&sq(&y()).scale(4.0 * h))
}

fn parabolic_cyclide(u: f64) -> Poly3 {
    let a = x().add(&k(3.0 - u));
    let b = x().add(&k(-1.0 - u));
    let c = x().add(&k(-1.0 + u));
    sq(&z()).mul(&a).add(&sq(&y()).mul(&b)).add(&a.mul(&b).mul(&c))
}

fn proof_cubic(h1: f64, h2: f64, h3: f64) -> Poly3 {
    let x1 = x().add(&k(-h1));
    let x2 = x().add(&k(-h2));
    let x3 = x().add(&k(-h3));
    x1.mul(&x2).mul(&x3).add(&x1.mul(&sq(&y()))).add(&x2.mul(&sq(&z()))).scale(h1 - h2)
}

fn proof_patch(h1: f64, h2: f64, h3: f64) -> dccube::Patch {
    let q = Quat::new;
    dccube::Patch::from_pairs([
        (Quat::one(), Quat::zero()),
        (q(0.0, 0.0, 0.0, -h1), q(0.0, 0.0, -1.0, 0.0)),
        (q(0.0, 0.0, h2, 0.0), q(0.0, 0.0, 0.0, -1.0)),
        (q(0.0, -(h1 - h2) * h3, 0.0, 0.0), q(h2 - h1, 0.0, 0.0, 0.0)),
    ])
}

/// Worst relative residual of `f` on a 20 × 20 grid of the patch.
fn grid_residual(f: &ImplicitSurface, patch: &dccube::Patch) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..20 {
        for j in 0..20 {
            let (s, t) = (-0.95 + 0.1 * i as f64, -0.95 + 0.1 * j as f64);
            if let Ok(Point::Finite(p)) = patch.eval_affine(s, t) {
                worst = worst.max(f.relative_residual(p.vec3()));
            }
        }
    }
    worst
}

fn implicit_case(cube: &Cube, dir: Direction, value: f64, printed: &Poly3, what: &str) -> Result<(f64, f64), String> {
    let f = implicitize_slice(cube, dir, ProjParam::affine(value)).map_err(|e| format!("{what}: {e}"))?;
    let dev = f.poly.distance_up_to_scale(printed);
    check(dev <= 1e-8, || format!("{what}: coefficient deviation {dev:.2e}\n got {}\n printed {printed}", f.poly))?;
    let res = grid_residual(&f, &cube.slice(dir, ProjParam::affine(value)));
    check(res <= 1e-7, || format!("{what}: residual {res:.2e}"))?;
    Ok((dev, res))
}

fn criterion_2() -> Outcome {
    let (mut dev, mut res) = (0.0f64, 0.0f64);
    let mut cases = 0;
    let mut acc = |r: (f64, f64)| {
        dev = dev.max(r.0);
        res = res.max(r.1);
        cases += 1;
    };
    for h in [0.5, 2.0, -0.3] {
        let cube = offset_o1(h).map_err(|e| e.to_string())?;
        for u in [0.0, 0.5, -0.7, 1.3] {
            acc(implicit_case(&cube, Direction::U, u, &quartic_cyclide(h, u), "quartic cyclide")?);
        }
    }
    let cube = offset_o2();
    for u in [0.0, 0.3, -1.2, 2.0] {
        acc(implicit_case(&cube, Direction::U, u, &parabolic_cyclide(u), "parabolic cyclide")?);
    }
    for (h1, h2, h3) in [(1.0, 2.0, 3.0), (-0.5, 0.7, 0.2), (2.0, -1.0, 4.0)] {
        let patch = proof_patch(h1, h2, h3);
        let cube = offset_cube(&patch, 0.5).map_err(|e| format!("offset of the cubic patch: {e}"))?;
        acc(implicit_case(&cube, Direction::U, 0.0, &proof_cubic(h1, h2, h3), "cubic cyclide")?);
    }
    Ok(format!("{cases} slices, max coefficient deviation {dev:.1e}, max residual {res:.1e}"))
}

// ---------------------------------------------------------------- 3

/// Printed curve of a quartic component in the natural axes of its coordinate plane.
fn plane_of(c: &SingularComponent) -> Option<usize> {
    let s = c.carrier.normalized();
    let n = s.b;
    if s.a.abs() > 1e-9 || s.c.abs() > 1e-9 {
        return None;
    }
    (0..3).find(|&i| (n[i].abs() - norm3(n)).abs() <= 1e-9 * norm3(n))
}

fn bq(l: f64, lx: f64, qa: f64, qb: f64, qx: f64, q0: f64) -> BicircularQuartic {
    BicircularQuartic::from_coeffs(&[l, lx, 0.0, qa, 0.0, qb, qx, 0.0, q0])
}

fn quartics(locus: &SingularLocus) -> Vec<(usize, BicircularQuartic)> {
    locus
        .components
        .iter()
        .filter_map(|c| match (&c.curve, plane_of(c)) {
            (Some(PlaneCurve::Quartic(q)), Some(p)) => Some((p, *q)),
            _ => None,
        })
        .collect()
}

fn conics(locus: &SingularLocus) -> Vec<(usize, Conic)> {
    locus
        .components
        .iter()
        .filter_map(|c| match (&c.curve, plane_of(c)) {
            (Some(PlaneCurve::Conic(q)), Some(p)) => Some((p, *q)),
            _ => None,
        })
        .collect()
}

/// Worst Jacobian over the traced singular points, relative to the cube of the largest partial.
fn locus_jacobian(cube: &Cube, locus: &SingularLocus) -> f64 {
    let mut worst = 0.0f64;
    for c in &locus.components {
        for b in &c.branches {
            let [d1, d2] = b.direction.others();
            for ang in b.angles.iter().step_by(7) {
                let mut p = [Param::affine(0.0); 3];
                p[b.direction.index()] = b.root;
                p[d1.index()] = Param::from_angle(ang[0]);
                p[d2.index()] = Param::from_angle(ang[1]);
                let parts: Option<Vec<[f64; 3]>> = Direction::ALL.iter().map(|&d| cube.partial(d, p).ok()).collect();
                let Some(v) = parts else { continue };
                // Partials are mutually orthogonal, so the Jacobian vanishes through one of them.
                let den = v.iter().map(|w| norm3(*w)).fold(0.0, f64::max).powi(3);
                if den > 0.0 {
                    worst = worst.max(dot3(v[0], cross(v[1], v[2])).abs() / den);
                }
            }
        }
    }
    worst
}

fn criterion_3() -> Outcome {
    let tol = Tol::default();
    let mut worst = 0.0f64;
    let mut jac = 0.0f64;
    let mut relation = 0.0f64;
    let mut cases = 0;
    let locus = |cube: &Cube| singular_locus(cube, &tol).map_err(|e| e.to_string());

    // Type A: three printed quartics.
    for (a, b, c) in [(1.0, 2.0, 3.0), (2.0, 3.0, -0.5), (0.7, -0.2, 1.4), (-1.5, 2.5, 0.8)] {
        let cube = type_a_cube(a, b, c);
        let l = locus(&cube)?;
        jac = jac.max(locus_jacobian(&cube, &l));
        let d = a + b + c;
        let printed = [
            bq(a * b * c, 0.0, b * c - a * d, c * d - a * b, 0.0, -d),
            bq(a * b * c, 0.0, a * d - b * c, a * c - b * d, 0.0, -d),
            bq(a * b * c, 0.0, a * b - c * d, b * d - a * c, 0.0, -d),
        ];
        let found = quartics(&l);
        let want = if d / (a * b * c) > 0.0 { 3 } else { 2 };
        check(found.len() == want, || format!("A({a},{b},{c}): {} quartics, expected {want}", found.len()))?;
        let mut forms = [None; 3];
        for (p, q) in &found {
            let dev = q.distance_up_to_scale(&printed[*p]);
            check(dev <= 1e-8, || format!("A({a},{b},{c}) plane {p}: deviation {dev:.2e}"))?;
            worst = worst.max(dev);
            forms[*p] = bq_canonicalize(q).ok();
        }
        // Canonical forms on z = 0 (K, M) and y = 0 (N, M) share M and satisfy the relation.
        if let (Some(BqForm::Symmetric { k, m, delta }), Some(BqForm::Symmetric { k: k2, m: m2, .. })) =
            (forms[2], forms[1])
        {
            let (n, m2) = (-k2, -m2);
            check((m - m2).abs() <= 1e-9 * (1.0 + m.abs()), || format!("A({a},{b},{c}): M = {m} vs {m2}"))?;
            let r = (k * m + m * n + n * k + delta).abs();
            relation = relation.max(r);
            check(r <= 1e-10, || format!("A({a},{b},{c}): focal relation residual {r:.2e}"))?;
        }
        cases += 1;
    }

    // Two-plane family with an imaginary sphere of symmetry.
    for (a, b, c) in [(0.0, 1.0, 2.0), (0.5, 0.3, 1.0), (-0.3, 2.0, 0.5)] {
        let cube = two_plane_cube(a, b, c);
        let l = locus(&cube)?;
        jac = jac.max(locus_jacobian(&cube, &l));
        let b1 = bq(
            c * b * (a + c),
            -c * (a - b + c),
            -(a * a + a * b + a * c + 2.0 * b * c + c),
            a * b + a * c + b * b + c * c,
            -(a + b - c),
            a + b,
        );
        let b2 = bq(
            c * (4.0 * a * b + 4.0 * b * c + c),
            4.0 * c * (b - c),
            -2.0 * (2.0 * a * b + 2.0 * a * c + 4.0 * b * c + c),
            -2.0 * (2.0 * a * b + 2.0 * a * c + 2.0 * b * b + 2.0 * c * c + c),
            -4.0 * (b - c),
            4.0 * a + 4.0 * b + 1.0,
        );
        let found = quartics(&l);
        check(found.len() == 2, || format!("two-plane ({a},{b},{c}): {} quartics", found.len()))?;
        for (p, q) in &found {
            let printed = if *p == 2 { &b1 } else { &b2 };
            let dev = q.distance_up_to_scale(printed);
            check(dev <= 1e-8, || format!("two-plane ({a},{b},{c}) plane {p}: deviation {dev:.2e}"))?;
            worst = worst.max(dev);
        }
        cases += 1;
    }

    // Type B canonical cube: the focal 2-oval quartics.
    for (km, mm) in [(2.0, 1.5), (3.0, -0.6), (2.5, -2.0), (1.8, 0.8)] {
        let cube = type_b_cube(km, mm).map_err(|e| e.to_string())?;
        let f = focal_params(1.0, km * km, -mm * mm).map_err(|e| format!("B({km},{mm}): {e}"))?;
        let r = f.relation().abs();
        relation = relation.max(r);
        check(r <= 1e-10, || format!("B({km},{mm}): focal relation residual {r:.2e}"))?;
        let curves = f.curves();
        let l = locus(&cube)?;
        jac = jac.max(locus_jacobian(&cube, &l));
        let found = quartics(&l);
        check(found.len() == 2, || format!("B({km},{mm}): {} quartics", found.len()))?;
        for (p, q) in &found {
            let printed = if *p == 2 { &curves[0] } else { &curves[1] };
            let dev = q.distance_up_to_scale(printed);
            check(dev <= 1e-8, || format!("B({km},{mm}) plane {p}: deviation {dev:.2e}"))?;
            worst = worst.max(dev);
        }
        cases += 1;
    }

    // Offset families: focal conics.
    for h in [0.5, 2.0, 0.3] {
        let cube = offset_o1(h).map_err(|e| e.to_string())?;
        let l = locus(&cube)?;
        jac = jac.max(locus_jacobian(&cube, &l));
        let e = (1.0 - h) / 2.0;
        let f = (1.0 + h) / 2.0;
        let on_y = [1.0 / (e * e), 0.0, -1.0 / h, 0.0, 0.0, -1.0];
        let on_z = [1.0 / (f * f), 0.0, 1.0 / h, 0.0, 0.0, -1.0];
        let found = conics(&l);
        check(found.len() == 2, || format!("O1({h}): {} conics", found.len()))?;
        for (p, q) in &found {
            let printed = if *p == 1 { on_y } else { on_z };
            let dev = scale_distance(&q.c, &printed);
            check(dev <= 1e-8, || format!("O1({h}) plane {p}: {:?} vs {printed:?}", q.c))?;
            worst = worst.max(dev);
        }
        cases += 1;
    }
    {
        let cube = offset_o2();
        let l = locus(&cube)?;
        jac = jac.max(locus_jacobian(&cube, &l));
        let found = conics(&l);
        check(found.len() == 2, || format!("O2: {} conics", found.len()))?;
        for (p, q) in &found {
            // y = 0: z² − 8(x + 1); z = 0: y² + 8(x − 1), in (x, z) and (x, y).
            let printed = if *p == 1 { [0.0, 0.0, 1.0, -8.0, 0.0, -8.0] } else { [0.0, 0.0, 1.0, 8.0, 0.0, -8.0] };
            let dev = scale_distance(&q.c, &printed);
            check(dev <= 1e-8, || format!("O2 plane {p}: {:?} vs {printed:?}", q.c))?;
            worst = worst.max(dev);
        }
        cases += 1;
    }
    check(jac <= 1e-6, || format!("singular points with normalized |Jac| = {jac:.2e}"))?;
    Ok(format!("{cases} systems, max curve deviation {worst:.1e}, focal relation {relation:.1e}, max |Jac| {jac:.1e}"))
}

// ---------------------------------------------------------------- 4

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let table: [(&str, Cube, u32); 8] = [
        ("O/EH", offset_o1(0.5).map_err(|e| e.to_string())?, 4),
        ("O/2P", offset_o2(), 3),
        ("A/BQ-", type_a_cube(1.0, 2.0, 3.0), 4),
        ("A/BQ+", type_a_cube(2.0, 3.0, -0.5), 4),
        ("A/EH", type_a_cube(0.0, 2.0, 1.0), 3),
        ("A/2L", type_a4_cube(0.7).map_err(|e| e.to_string())?, 2),
        ("B", type_b_cube(2.0, 1.5).map_err(|e| e.to_string())?, 4),
        ("B (two-plane)", two_plane_cube(0.0, 1.0, 2.0), 4),
    ];
    let mut parts = Vec::new();
    for (name, cube, want) in table {
        let r = degree(&cube, None, None, &DegreeOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        check(r.counts.len() == 3 && r.counts.iter().all(|&c| c == want), || {
            format!("{name}: counts {:?}, expected {want}", r.counts)
        })?;
        parts.push(format!("{name} {}", r.degree));
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{} ({secs:.1} s)", parts.join(", ")))
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let opts = ClassifyOptions::default();
    let cat = catalog();
    let mut runs = 0;
    for f in &cat {
        let base = classify(&f.cube, &opts).map_err(|e| format!("{} {:?}: {e}", f.label, f.params))?;
        for _ in 0..5 {
            let m = MobiusMap::random(&mut rng, 3);
            let moved = f.cube.apply_mobius(&m);
            let c = classify(&moved, &opts).map_err(|e| format!("{} {:?} moved: {e}", f.label, f.params))?;
            check(c.coarse == base.coarse && c.subtype == base.subtype, || {
                format!("{} {:?}: {} became {}", f.label, f.params, base.subtype, c.subtype)
            })?;
            runs += 1;
        }
    }
    Ok(format!("{} catalog cubes, {runs} conjugations, 100% agreement", cat.len()))
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let tight = Tol::new(1e-8, 1e-8);
    let cat = catalog();
    let mut ortho = 0.0f64;
    for f in &cat {
        f.cube.check_invariants(&tight).map_err(|e| format!("{} {:?}: {e}", f.label, f.params))?;
        let mut n = 0;
        while n < 1000 {
            let (s, t, u) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let Ok(p) = f.cube.partials(s, t, u) else { continue };
            let norms = p.map(norm3);
            if norms.iter().any(|v| *v < 1e-6 || !v.is_finite()) {
                continue;
            }
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let c = dot3(p[i], p[j]).abs() / (norms[i] * norms[j]);
                ortho = ortho.max(c);
            }
            n += 1;
        }
    }
    check(ortho <= 1e-8, || format!("partial derivatives: max |cos| = {ortho:.2e}"))?;

    let mut cr_im = 0.0f64;
    for _ in 0..50 {
        let pts =
            [0; 3].map(|_| Quat::imag(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
        let lam = [0; 3].map(|_| rng.gen_range(0.1..0.9));
        let m = miquel_point(pts.map(Point::finite), lam).map_err(|e| e.to_string())?;
        let q = side_points(pts, lam);
        let fp = Point::finite;
        for quad in [
            [fp(pts[0]), fp(q[1]), fp(q[2]), m],
            [fp(pts[1]), fp(q[2]), fp(q[0]), m],
            [fp(pts[2]), fp(q[0]), fp(q[1]), m],
        ] {
            let cr = cross_ratio(quad).map_err(|e| e.to_string())?;
            cr_im = cr_im.max(cr.im().norm() / cr.norm().max(1.0));
        }
    }
    check(cr_im <= 1e-9, || format!("Miquel cross-ratios: |Im| = {cr_im:.2e}"))?;

    let mut dist = 0.0f64;
    let mut angle = 0.0f64;
    let faces = [
        offset_o1(0.5).map_err(|e| e.to_string())?.slice(Direction::U, ProjParam::affine(0.0)),
        bipolar_patch(0.6),
        type_a_cube(1.0, 2.0, 3.0).slice(Direction::U, ProjParam::affine(0.0)),
    ];
    for patch in &faces {
        for d in [0.4, -0.9, 1.5] {
            let cube = offset_cube(patch, d).map_err(|e| e.to_string())?;
            let mut n = 0;
            while n < 200 {
                let (s, t) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                let (Ok(Point::Finite(a)), Ok(Point::Finite(b))) =
                    (cube.eval_affine(s, t, 0.0), cube.eval_affine(s, t, 1.0))
                else {
                    continue;
                };
                let Ok(p) = cube.partials(s, t, 0.0) else { continue };
                let nrm = cross(p[0], p[1]);
                if norm3(nrm) < 1e-6 {
                    continue;
                }
                let seg = (b - a).vec3();
                dist = dist.max((norm3(seg) - d.abs()).abs());
                let sin = norm3(cross(seg, nrm)) / (norm3(seg) * norm3(nrm));
                angle = angle.max(sin.asin());
                n += 1;
            }
        }
    }
    check(dist <= 1e-8 && angle < 1e-6, || format!("offsets: distance error {dist:.2e}, angle {angle:.2e}"))?;
    Ok(format!(
        "{} cubes cospherical at 1e-8, orthogonality {ortho:.1e}, Miquel |Im| {cr_im:.1e}, offset distance {dist:.1e} angle {angle:.1e}",
        cat.len()
    ))
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tol = Tol::default();
    let mut samples = 0;
    let mut worst = 0.0f64;
    let mut points = 0usize;
    while samples < 10 {
        let (km, mm) = (rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
        let Ok(cube) = type_b_cube(km, mm) else { continue };
        if focal_params(1.0, km * km, -mm * mm).is_err() {
            continue;
        }
        // t- and u-surfaces are preserved; s-surfaces are swapped in pairs by the involution
        // of the s-line fixing the complex roots of sigma_s.
        let sigma_s = *cube.spherical_polys().get(Direction::S);
        for dir in Direction::ALL {
            for _ in 0..4 {
                let v = ProjParam::affine(rng.gen_range(-2.0..2.0));
                let image = if dir == Direction::S { sigma_s.polar(v) } else { v };
                let f = implicitize_slice(&cube, dir, image).map_err(|e| e.to_string())?;
                let patch = cube.slice(dir, v);
                let mut n = 0;
                while n < 84 {
                    let Ok(Point::Finite(p)) = patch.eval_affine(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
                    else {
                        continue;
                    };
                    let r2 = p.norm_sqr();
                    if r2 < 1e-6 {
                        continue;
                    }
                    let img = p.vec3().map(|c| -c / r2);
                    worst = worst.max(f.relative_residual(img));
                    n += 1;
                }
                points += n;
            }
        }
        let l = singular_locus(&cube, &tol).map_err(|e| e.to_string())?;
        let qs = quartics(&l);
        check(qs.len() == 2, || format!("B({km:.3},{mm:.3}): {} singular quartics", qs.len()))?;
        for (p, q) in &qs {
            let n = q.component_count(400);
            check(n == Some(2), || format!("B({km:.3},{mm:.3}) plane {p}: {n:?} components"))?;
        }
        samples += 1;
    }
    check(worst <= 1e-7, || format!("inverted points: residual {worst:.2e}"))?;
    Ok(format!("{samples} (k, m) samples, {points} inverted points, max residual {worst:.1e}, 2 + 2 components"))
}

// ---------------------------------------------------------------- 8

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut counter = 0;
    let mut inconsistent = 0;
    let mut oracle = 0.0f64;
    let n = 100_000;
    for i in 0..n {
        let [g, h, a, b, c] = [0; 5].map(|_| rng.gen_range(-3.0..3.0));
        let r = discriminant_region(g, h, a, b, c);
        if r.negatives() == 3 {
            counter += 1;
        }
        if !r.separated(a, b, c, h) {
            inconsistent += 1;
        }
        // The discriminants are those of the σ polynomials of the general cube.
        if i % 100 == 0 {
            let sp = general_cube(g, h, a, b, c).spherical_polys();
            for (d, want) in [(Direction::S, r.ds), (Direction::T, r.dt), (Direction::U, r.du)] {
                let q: &QuadPoly<f64> = sp.get(d);
                let got = q.c[1] * q.c[1] - 4.0 * q.c[0] * q.c[2];
                oracle = oracle.max((got - want).abs() / (1.0 + want.abs()));
            }
        }
    }
    check(counter == 0 && inconsistent == 0, || {
        format!("{counter} counterexamples, {inconsistent} inconsistent separations")
    })?;
    check(oracle <= 1e-9, || format!("sigma discriminants differ from the closed forms by {oracle:.2e}"))?;
    Ok(format!("{n} samples, 0 counterexamples, separation consistent, closed forms agree to {oracle:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("sigma polynomials", criterion_1),
        ("implicit equations", criterion_2),
        ("singular curves", criterion_3),
        ("degree table", criterion_4),
        ("Moebius invariance", criterion_5),
        ("structural properties", criterion_6),
        ("type B symmetry", criterion_7),
        ("discriminant lemma", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
