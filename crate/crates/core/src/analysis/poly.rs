//! Small dense polynomial helpers: trivariate polynomials for implicit equations and real
//! roots of univariate polynomials.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::Serialize;

/// Polynomial in `(x, y, z)` stored as exponent triple → coefficient.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Poly3 {
    pub terms: BTreeMap<[u8; 3], f64>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Self::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    /// Coordinate variable 0, 1 or 2.
    pub fn var(i: usize) -> Self {
        let mut e = [0u8; 3];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, 1.0);
        p
    }

    /// `a·(x, y, z) + c`.
    pub fn affine(a: [f64; 3], c: f64) -> Self {
        let mut p = Self::constant(c);
        for (i, &ai) in a.iter().enumerate() {
            let mut e = [0u8; 3];
            e[i] = 1;
            p.add_term(e, ai);
        }
        p
    }

    pub fn add_term(&mut self, e: [u8; 3], c: f64) {
        if c == 0.0 {
            return;
        }
        let v = self.terms.entry(e).or_insert(0.0);
        *v += c;
        if *v == 0.0 {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: [u8; 3]) -> f64 {
        self.terms.get(&e).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| (e[0] + e[1] + e[2]) as usize).max().unwrap_or(0)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * p[0].powi(e[0] as i32) * p[1].powi(e[1] as i32) * p[2].powi(e[2] as i32))
            .sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * s);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, *c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1.0))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }

    /// Drops coefficients below `eps · max_abs`.
    pub fn pruned(&self, eps: f64) -> Self {
        let m = self.max_abs();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if c.abs() > eps * m {
                out.add_term(*e, *c);
            }
        }
        out
    }

    /// Scaled so that the coefficient of largest magnitude is `+1`.
    pub fn normalized(&self) -> Self {
        let mut big = 0.0f64;
        for c in self.terms.values() {
            if c.abs() > big.abs() {
                big = *c;
            }
        }
        if big == 0.0 {
            return self.clone();
        }
        self.scale(1.0 / big)
    }

    /// Largest coefficient difference after normalizing both sides.
    pub fn distance_up_to_scale(&self, o: &Self) -> f64 {
        let a = self.normalized();
        let b = o.normalized();
        let mut keys: Vec<[u8; 3]> = a.terms.keys().copied().collect();
        keys.extend(b.terms.keys().copied());
        keys.iter().fold(0.0, |m, e| m.max((a.coeff(*e) - b.coeff(*e)).abs()))
    }

    /// `g(x) = self((x − c) / σ)`.
    pub fn substitute_affine(&self, c: [f64; 3], sigma: f64) -> Self {
        let v: Vec<Poly3> = (0..3)
            .map(|i| {
                let mut a = [0.0; 3];
                a[i] = 1.0 / sigma;
                Poly3::affine(a, -c[i] / sigma)
            })
            .collect();
        let mut out = Poly3::zero();
        for (e, coef) in &self.terms {
            let mut t = Poly3::constant(*coef);
            for i in 0..3 {
                for _ in 0..e[i] {
                    t = t.mul(&v[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Monomials of total degree ≤ `deg` in a fixed order.
    pub fn monomials(deg: usize) -> Vec<[u8; 3]> {
        let mut out = Vec::new();
        for d in 0..=deg {
            for a in (0..=d).rev() {
                for b in (0..=d - a).rev() {
                    out.push([a as u8, b as u8, (d - a - b) as u8]);
                }
            }
        }
        out
    }

    pub fn from_coeffs(monomials: &[[u8; 3]], coeffs: &[f64]) -> Self {
        let mut p = Poly3::zero();
        for (e, c) in monomials.iter().zip(coeffs) {
            p.add_term(*e, *c);
        }
        p
    }
}

impl std::fmt::Display for Poly3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{c:+.6}")?;
            for (v, k) in ["x", "y", "z"].iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Determinant of a 4×4 matrix of polynomials by cofactor expansion.
pub fn det4(m: &[[Poly3; 4]; 4]) -> Poly3 {
    let det3 = |r: [usize; 3], c: [usize; 3]| -> Poly3 {
        let mut acc = Poly3::zero();
        let perms = [
            ([0, 1, 2], 1.0),
            ([1, 2, 0], 1.0),
            ([2, 0, 1], 1.0),
            ([0, 2, 1], -1.0),
            ([2, 1, 0], -1.0),
            ([1, 0, 2], -1.0),
        ];
        for (p, sgn) in perms {
            let t = m[r[0]][c[p[0]]].mul(&m[r[1]][c[p[1]]]).mul(&m[r[2]][c[p[2]]]);
            acc = acc.add(&t.scale(sgn));
        }
        acc
    };
    let mut out = Poly3::zero();
    for col in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&c| c != col).collect();
        let minor = det3([1, 2, 3], [cols[0], cols[1], cols[2]]);
        let sgn = if col % 2 == 0 { 1.0 } else { -1.0 };
        out = out.add(&m[0][col].mul(&minor).scale(sgn));
    }
    out
}

/// Real roots of `Σ cₖ xᵏ` (ascending coefficients). Leading coefficients below
/// `1e-13 · max|c|` are dropped; roots come from companion-matrix eigenvalues and are
/// polished by Newton steps.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let m = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if m == 0.0 {
        return Vec::new();
    }
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].abs() <= 1e-13 * m {
        deg -= 1;
    }
    if deg == 0 {
        return Vec::new();
    }
    let c: Vec<f64> = coeffs[..=deg].iter().map(|v| v / coeffs[deg]).collect();
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -c[i];
    }
    let eig = comp.complex_eigenvalues();
    let eval = |x: f64| {
        let mut v = 0.0;
        let mut dv = 0.0;
        for k in (0..=deg).rev() {
            dv = dv * x + v;
            v = v * x + c[k];
        }
        (v, dv)
    };
    let mut out = Vec::new();
    for z in eig.iter() {
        if z.im.abs() > 1e-7 * (1.0 + z.re.abs()) {
            continue;
        }
        let mut x = z.re;
        for _ in 0..4 {
            let (v, dv) = eval(x);
            if dv == 0.0 {
                break;
            }
            let nx = x - v / dv;
            if !nx.is_finite() {
                break;
            }
            x = nx;
        }
        out.push(x);
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}
