//! Parameter involutions of planar subsystems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qb::ProjParam;
use crate::Patch;

/// `(s, t) ↦ (1/(as), −1/(at))` on homogeneous parameters.
pub fn bipolar_involution(a: f64) -> impl Fn(ProjParam<f64>, ProjParam<f64>) -> (ProjParam<f64>, ProjParam<f64>) {
    move |s, t| (ProjParam::new(s.den, a * s.num), ProjParam::new(-t.den, a * t.num))
}

/// Checks `F(s, t) = F(φ(s, t))` at `samples` random parameters (chordal tolerance `tol`).
pub fn involution_holds<M>(patch: &Patch, map: M, samples: usize, tol: f64, seed: u64) -> bool
where
    M: Fn(ProjParam<f64>, ProjParam<f64>) -> (ProjParam<f64>, ProjParam<f64>),
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < samples {
        let s = ProjParam::from_angle(rng.gen_range(0.0..std::f64::consts::PI));
        let t = ProjParam::from_angle(rng.gen_range(0.0..std::f64::consts::PI));
        let (s2, t2) = map(s, t);
        let (Ok(p), Ok(q)) = (patch.eval(s, t), patch.eval(s2, t2)) else { continue };
        if p.chordal_distance(&q) > tol {
            return false;
        }
        checked += 1;
    }
    true
}

/// Involution check for the bipolar face with parameter `a`; `None` when `a = 0`
/// (Cartesian face, the involution degenerates).
pub fn involution_check(patch: &Patch, a: f64) -> Option<bool> {
    if a == 0.0 {
        return None;
    }
    Some(involution_holds(patch, bipolar_involution(a), 200, 1e-9, 3))
}
