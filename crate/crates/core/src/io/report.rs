//! Plain-text renderings of cubes and classification results.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::analysis::{Classification, CoarseType};
use crate::qb::{Direction, ProjParam, QuadPoly, RootSet};
use crate::Cube;

fn num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.10}").trim_end_matches('0').trim_end_matches('.').to_string()
}

fn param(p: &ProjParam<f64>) -> String {
    p.to_affine().map_or_else(|| "inf".to_string(), num)
}

pub fn quad_poly(p: &QuadPoly<f64>, var: &str) -> String {
    format!("{} {} {var} {} {var}^2", num(p.c[0]), signed(p.c[1]), signed(p.c[2]))
}

fn signed(v: f64) -> String {
    if v < 0.0 {
        format!("- {}", num(-v))
    } else {
        format!("+ {}", num(v))
    }
}

pub fn roots(r: &RootSet<f64>) -> String {
    match r {
        RootSet::Identically => "identically zero".into(),
        RootSet::Complex => "complex roots".into(),
        RootSet::Double(a) => format!("double root {}", param(a)),
        RootSet::Distinct(a, b) => format!("roots {}, {}", param(a), param(b)),
    }
}

/// Control points as `p<n> (i,j,k): U | W` followed by the three σ polynomials.
pub fn render_cube(cube: &Cube) -> String {
    let mut out = String::new();
    for (n, p) in cube.net.iter().enumerate() {
        let _ = writeln!(out, "p{n} ({},{},{}): U = {} | W = {}", n & 1, (n >> 1) & 1, n >> 2, p.u, p.w);
    }
    let sp = cube.spherical_polys();
    for d in Direction::ALL {
        let _ = writeln!(out, "sigma_{} = {}", d.name(), quad_poly(sp.get(d), d.name()));
    }
    out
}

/// "3 focal 1-oval bicircular quartics", "two intersecting lines", ...
pub fn singular_summary(c: &Classification) -> String {
    let Some(locus) = &c.locus else { return "none".into() };
    if locus.components.is_empty() {
        return "none".into();
    }
    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    for comp in &locus.components {
        let what = comp.curve.as_ref().map_or_else(|| "curve".to_string(), |k| k.describe());
        *kinds.entry(what).or_default() += 1;
    }
    let focal = c.coarse == CoarseType::A;
    kinds
        .into_iter()
        .map(|(k, n)| {
            let k = if focal && k.contains("quartic") { format!("focal {k}") } else { k };
            if n == 1 {
                k
            } else if k.ends_with("lines") {
                format!("{n} x {k}")
            } else if k.ends_with("sis") {
                format!("{n} {}", k.trim_end_matches("is").to_string() + "es")
            } else {
                format!("{n} {k}s")
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Headline `"<subtype>, singular: ..., degree n"`, then σ data and one line per component.
pub fn render_classification(c: &Classification, with_degree: bool) -> String {
    let mut out = format!("{}, singular: {}", c.subtype, singular_summary(c));
    if with_degree {
        match c.degree {
            Some(d) => {
                let _ = write!(out, ", degree {d}");
            }
            None => out.push_str(", degree n/a"),
        }
    }
    out.push('\n');
    let _ = writeln!(out, "coarse type: {}", c.coarse);
    let _ = writeln!(out, "subtype: {}", c.subtype);
    for s in &c.sigma {
        let _ = writeln!(
            out,
            "sigma_{} = {}: {}",
            s.direction.name(),
            quad_poly(&s.sigma, s.direction.name()),
            roots(&s.roots)
        );
    }
    for (name, v) in &c.parameters {
        let _ = writeln!(out, "{name}: {}", num(*v));
    }
    for d in &c.singular {
        let _ = writeln!(out, "singular {d}");
    }
    out
}
