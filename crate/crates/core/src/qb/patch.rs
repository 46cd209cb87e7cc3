use serde::{Deserialize, Serialize};

use super::{proj_div, HomogeneousPoint, ProjParam};
use crate::error::{Error, Result};
use crate::quat::{MPoint, MobiusMap, Quaternion};
use crate::Scalar;

/// Bilinear net `P = U W⁻¹`; entry `i + 2j` holds the control point with `s`-index `i`
/// and `t`-index `j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DcPatch<T> {
    pub net: [HomogeneousPoint<T>; 4],
}

impl<T: Scalar> DcPatch<T> {
    pub fn new(net: [HomogeneousPoint<T>; 4]) -> Self {
        Self { net }
    }

    /// Patch from `(u_n, w_n)` pairs in flat order.
    pub fn from_pairs(pairs: [(Quaternion<T>, Quaternion<T>); 4]) -> Self {
        Self { net: pairs.map(|(u, w)| HomogeneousPoint::new(u, w)) }
    }

    pub fn get(&self, i: usize, j: usize) -> &HomogeneousPoint<T> {
        &self.net[i + 2 * j]
    }

    pub fn homogeneous(&self, s: ProjParam<T>, t: ProjParam<T>) -> (Quaternion<T>, Quaternion<T>) {
        let bs = s.bernstein();
        let bt = t.bernstein();
        let mut u = Quaternion::zero();
        let mut w = Quaternion::zero();
        for j in 0..2 {
            for i in 0..2 {
                let b = bs[i] * bt[j];
                let p = self.get(i, j);
                u += p.u.scale(b);
                w += p.w.scale(b);
            }
        }
        (u, w)
    }

    pub fn eval(&self, s: ProjParam<T>, t: ProjParam<T>) -> Result<MPoint<T>> {
        let (u, w) = self.homogeneous(s, t);
        proj_div(u, w).map_err(|_| Error::IndeterminatePoint)
    }

    pub fn eval_affine(&self, s: T, t: T) -> Result<MPoint<T>> {
        self.eval(ProjParam::affine(s), ProjParam::affine(t))
    }

    /// `(∂_s P, ∂_t P)` at affine parameters.
    pub fn partials(&self, s: T, t: T) -> Result<([T; 3], [T; 3])> {
        let (u, w) = self.homogeneous(ProjParam::affine(s), ProjParam::affine(t));
        let winv = w.checked_inv().ok_or(Error::PoleEncountered)?;
        let f = u * winv;
        let d = |ds: [T; 2], dt: [T; 2]| {
            let mut du = Quaternion::zero();
            let mut dw = Quaternion::zero();
            for j in 0..2 {
                for i in 0..2 {
                    let b = ds[i] * dt[j];
                    du += self.get(i, j).u.scale(b);
                    dw += self.get(i, j).w.scale(b);
                }
            }
            ((du - f * dw) * winv).vec3()
        };
        let db = [-T::one(), T::one()];
        let bs = [T::one() - s, s];
        let bt = [T::one() - t, t];
        Ok((d(db, bt), d(bs, db)))
    }

    pub fn corners(&self) -> Result<[MPoint<T>; 4]> {
        Ok([self.net[0].proj_div()?, self.net[1].proj_div()?, self.net[2].proj_div()?, self.net[3].proj_div()?])
    }

    pub fn apply(&self, m: &MobiusMap<T>) -> Self {
        Self { net: self.net.map(|p| p.apply(m)) }
    }

    pub fn right_mul(&self, q: Quaternion<T>) -> Self {
        Self { net: self.net.map(|p| p.right_mul(q)) }
    }

    /// Exchanges the roles of `s` and `t`.
    pub fn transposed(&self) -> Self {
        Self { net: [self.net[0], self.net[2], self.net[1], self.net[3]] }
    }

    pub fn max_norm(&self) -> T {
        self.net.iter().fold(T::zero(), |m, p| m.max(p.norm()))
    }
}
