//! Single-point Evans evaluation away from the contour machinery: reach any
//! λ with ℜλ ≥ 0 by continuing the Kato bases from a real-axis anchor along
//! the real axis and then a circular arc. All evaluations sharing one
//! evaluator share the anchor basis, hence one normalization of D.

use crate::error::Result;
use crate::eigensystem::{Side, C};
use crate::evans::kato::{KatoContinuation, KatoPoint};
use crate::evans::{EvansEvaluator, EvansSystem};

pub struct PointEvaluator<'a, S: EvansSystem + ?Sized> {
    pub evaluator: EvansEvaluator<'a, S>,
    anchor: f64,
    start_minus: KatoPoint,
    start_plus: KatoPoint,
}

impl<'a, S: EvansSystem + ?Sized> PointEvaluator<'a, S> {
    pub fn new(evaluator: EvansEvaluator<'a, S>, anchor: f64) -> Result<Self> {
        let kato_m = KatoContinuation::new(evaluator.system, Side::Minus);
        let kato_p = KatoContinuation::new(evaluator.system, Side::Plus);
        let lam = C::new(anchor, 0.0);
        let start_minus = kato_m.start(lam)?;
        let start_plus = kato_p.start(lam)?;
        Ok(PointEvaluator { evaluator, anchor, start_minus, start_plus })
    }

    fn bases_at(&self, lambda: C) -> Result<(KatoPoint, KatoPoint)> {
        let kato_m = KatoContinuation::new(self.evaluator.system, Side::Minus);
        let kato_p = KatoContinuation::new(self.evaluator.system, Side::Plus);
        let r = lambda.norm();
        let angle = lambda.arg();
        let anchor = self.anchor;
        // leg 1: real axis from the anchor to |λ|
        let radial = move |t: f64| C::new(anchor + (r - anchor) * t, 0.0);
        let m1 = kato_m.continue_along(&self.start_minus, &radial)?;
        let p1 = kato_p.continue_along(&self.start_plus, &radial)?;
        if angle == 0.0 {
            return Ok((m1, p1));
        }
        // leg 2: arc at radius |λ| to arg λ
        let arc = move |t: f64| C::new(0.0, angle * t).exp() * r;
        let m2 = kato_m.continue_along(&m1, &arc)?;
        let p2 = kato_p.continue_along(&p1, &arc)?;
        Ok((m2, p2))
    }

    /// Evans value (exterior backend) at an arbitrary point of ℜλ ≥ 0.
    pub fn d_at(&self, lambda: C) -> Result<C> {
        let (m, p) = self.bases_at(lambda)?;
        self.evaluator.exterior(lambda, &m.basis, &p.basis, m.rate_sum, p.rate_sum)
    }

    /// Both backends at once, for cross-method checks.
    pub fn d_both(&self, lambda: C) -> Result<(C, C)> {
        let (m, p) = self.bases_at(lambda)?;
        let de = self.evaluator.exterior(lambda, &m.basis, &p.basis, m.rate_sum, p.rate_sum)?;
        let dp = self.evaluator.polar(lambda, &m.basis, &p.basis, m.rate_sum, p.rate_sum)?.value;
        Ok((de, dp))
    }
}
