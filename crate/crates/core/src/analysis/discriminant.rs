//! Discriminants of the spherical conditions of a general cube whose three coordinate
//! M-circles through `p₀` are inverted into lines, with the separating slabs in `(a, b, c)`.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscriminantReport {
    pub ds: f64,
    pub dt: f64,
    pub du: f64,
    /// `η = g² + h²`.
    pub eta: f64,
    /// `h²/(η+1) ≤ a ≤ η/(η+1)`.
    pub a_slab: bool,
    /// `0 ≤ b ≤ h²/η`.
    pub b_slab: bool,
    /// `0 ≤ c ≤ 1`.
    pub c_slab: bool,
}

impl DiscriminantReport {
    pub fn negatives(&self) -> usize {
        [self.ds, self.dt, self.du].iter().filter(|v| **v < 0.0).count()
    }

    /// Each negative discriminant puts `(a, b, c)` on the far side of the slabs:
    /// `Δu < 0 ⇒ a > η/(η+1), b < 0`; `Δs < 0 ⇒ c < 0, b > h²/η`; `Δt < 0 ⇒ c > 1, a < h²/(η+1)`.
    pub fn separated(&self, a: f64, b: f64, c: f64, h: f64) -> bool {
        let e = self.eta;
        let u = self.du >= 0.0 || (a > e / (e + 1.0) && b < 0.0);
        let s = self.ds >= 0.0 || (c < 0.0 && b > h * h / e);
        let t = self.dt >= 0.0 || (c > 1.0 && a < h * h / (e + 1.0));
        u && s && t
    }
}

pub fn discriminant_region(g: f64, h: f64, a: f64, b: f64, c: f64) -> DiscriminantReport {
    let eta = g * g + h * h;
    let du = (eta * (1.0 - b - a) - a + 1.0).powi(2) + 4.0 * eta * b;
    let ds = (eta * (1.0 - b) - c).powi(2) + 4.0 * g * g * c;
    let dt = (eta * a + c + a - 1.0).powi(2) + 4.0 * h * h * (1.0 - c);
    DiscriminantReport {
        ds,
        dt,
        du,
        eta,
        a_slab: h * h / (eta + 1.0) <= a && a <= eta / (eta + 1.0),
        b_slab: 0.0 <= b && b <= h * h / eta,
        c_slab: (0.0..=1.0).contains(&c),
    }
}
