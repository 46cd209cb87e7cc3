//! Marching squares with bisection-refined edge crossings, on a box or on a torus.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

/// Sampling grid. With `periodic` both axes wrap around (`x1`, `y1` identified with `x0`, `y0`).
#[derive(Clone, Copy, Debug)]
pub struct Grid {
    pub x0: f64,
    pub x1: f64,
    pub nx: usize,
    pub y0: f64,
    pub y1: f64,
    pub ny: usize,
    pub periodic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polyline2 {
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

type EdgeId = (u8, usize, usize);

impl Grid {
    fn x(&self, i: usize) -> f64 {
        self.x0 + (self.x1 - self.x0) * i as f64 / self.nx as f64
    }

    fn y(&self, j: usize) -> f64 {
        self.y0 + (self.y1 - self.y0) * j as f64 / self.ny as f64
    }

    fn wrap(&self, i: usize, j: usize) -> (usize, usize) {
        if self.periodic {
            (i % self.nx, j % self.ny)
        } else {
            (i, j)
        }
    }
}

fn bisect<F: Fn(f64, f64) -> f64>(f: &F, a: [f64; 2], b: [f64; 2], fa: f64) -> [f64; 2] {
    let (mut lo, mut hi) = (0.0, 1.0);
    let pa = fa > 0.0;
    for _ in 0..52 {
        let m = 0.5 * (lo + hi);
        let v = f(a[0] + (b[0] - a[0]) * m, a[1] + (b[1] - a[1]) * m);
        if (v > 0.0) == pa {
            lo = m;
        } else {
            hi = m;
        }
    }
    let m = 0.5 * (lo + hi);
    [a[0] + (b[0] - a[0]) * m, a[1] + (b[1] - a[1]) * m]
}

/// Zero set of `f` as polylines. `keep` can reject crossing points; rejected points split
/// the polylines they belong to.
pub fn trace<F, K>(f: &F, grid: &Grid, keep: K) -> Vec<Polyline2>
where
    F: Fn(f64, f64) -> f64,
    K: Fn([f64; 2]) -> bool,
{
    let (vx, vy) = if grid.periodic { (grid.nx, grid.ny) } else { (grid.nx + 1, grid.ny + 1) };
    let mut v = vec![vec![0.0; vy]; vx];
    for (i, col) in v.iter_mut().enumerate() {
        for (j, val) in col.iter_mut().enumerate() {
            *val = f(grid.x(i), grid.y(j));
        }
    }
    let val = |i: usize, j: usize| {
        let (a, b) = grid.wrap(i, j);
        v[a][b]
    };
    let pos = |x: f64| x > 0.0;

    let mut crossings: BTreeMap<EdgeId, [f64; 2]> = BTreeMap::new();
    let mut crossing = |id: EdgeId, a: [f64; 2], b: [f64; 2], fa: f64, fb: f64| -> Option<EdgeId> {
        if pos(fa) == pos(fb) {
            return None;
        }
        crossings.entry(id).or_insert_with(|| bisect(f, a, b, fa));
        Some(id)
    };

    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for i in 0..grid.nx {
        for j in 0..grid.ny {
            let (x0, x1, y0, y1) = (grid.x(i), grid.x(i + 1), grid.y(j), grid.y(j + 1));
            let (v00, v10, v11, v01) = (val(i, j), val(i + 1, j), val(i + 1, j + 1), val(i, j + 1));
            let hid = |a: usize, b: usize| {
                let (a, b) = grid.wrap(a, b);
                (0u8, a, b)
            };
            let vid = |a: usize, b: usize| {
                let (a, b) = grid.wrap(a, b);
                (1u8, a, b)
            };
            let bottom = crossing(hid(i, j), [x0, y0], [x1, y0], v00, v10);
            let right = crossing(vid(i + 1, j), [x1, y0], [x1, y1], v10, v11);
            let top = crossing(hid(i, j + 1), [x0, y1], [x1, y1], v01, v11);
            let left = crossing(vid(i, j), [x0, y0], [x0, y1], v00, v01);
            let found: Vec<EdgeId> = [bottom, right, top, left].into_iter().flatten().collect();
            match found.len() {
                2 => segments.push((found[0], found[1])),
                4 => {
                    let c = f(0.5 * (x0 + x1), 0.5 * (y0 + y1));
                    let (b, r, t, l) = (bottom.unwrap(), right.unwrap(), top.unwrap(), left.unwrap());
                    if pos(c) == pos(v00) {
                        segments.push((b, r));
                        segments.push((t, l));
                    } else {
                        segments.push((l, b));
                        segments.push((r, t));
                    }
                }
                _ => {}
            }
        }
    }

    let rejected: BTreeSet<EdgeId> = crossings.iter().filter(|(_, p)| !keep(**p)).map(|(id, _)| *id).collect();
    let mut adj: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    for (a, b) in segments {
        if rejected.contains(&a) || rejected.contains(&b) || a == b {
            continue;
        }
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    link(&adj, &crossings)
}

fn link(adj: &BTreeMap<EdgeId, Vec<EdgeId>>, pts: &BTreeMap<EdgeId, [f64; 2]>) -> Vec<Polyline2> {
    let mut used: BTreeSet<(EdgeId, EdgeId)> = BTreeSet::new();
    let key = |a: EdgeId, b: EdgeId| if a < b { (a, b) } else { (b, a) };
    let mut out = Vec::new();
    let walk = |start: EdgeId, used: &mut BTreeSet<(EdgeId, EdgeId)>| -> Option<Polyline2> {
        let mut path = vec![start];
        let mut cur = start;
        loop {
            let next = adj[&cur].iter().copied().find(|n| !used.contains(&key(cur, *n)));
            match next {
                None => break,
                Some(n) => {
                    used.insert(key(cur, n));
                    if n == start {
                        let points = path.iter().map(|id| pts[id]).collect();
                        return Some(Polyline2 { points, closed: true });
                    }
                    path.push(n);
                    cur = n;
                }
            }
        }
        if path.len() < 2 {
            return None;
        }
        Some(Polyline2 { points: path.iter().map(|id| pts[id]).collect(), closed: false })
    };
    let ends: Vec<EdgeId> = adj.iter().filter(|(_, n)| n.len() == 1).map(|(id, _)| *id).collect();
    for e in ends {
        if adj[&e].iter().all(|n| used.contains(&key(e, *n))) {
            continue;
        }
        if let Some(p) = walk(e, &mut used) {
            out.push(p);
        }
    }
    let ids: Vec<EdgeId> = adj.keys().copied().collect();
    for id in ids {
        while adj[&id].iter().any(|n| !used.contains(&key(id, *n))) {
            if let Some(p) = walk(id, &mut used) {
                out.push(p);
            } else {
                break;
            }
        }
    }
    out
}
