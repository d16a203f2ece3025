//! Semicircular contour sampling of the Evans function with adaptive
//! argument-step refinement and the winding count.

use crate::error::{Error, Result};
use crate::eigensystem::{Side, C};
use crate::evans::kato::{KatoContinuation, KatoPoint};
use crate::evans::winding::winding_from_samples;
use crate::evans::{EvansEvaluator, EvansSystem};
use serde::{Deserialize, Serialize};

/// Contour ∂{ℜλ ≥ 0, |λ| ≤ Λ} sampled with uniform angle on the arc and
/// quadratic modulus spacing on the imaginary legs, never touching λ = 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContourSpec {
    pub radius: f64,
    /// samples on the upper half-path (quarter arc + upper leg); the closed
    /// contour adds the conjugate reflection
    pub n_points: usize,
    pub max_arg_step: f64,
    pub max_refinement_depth: usize,
    pub compute_polar: bool,
}

impl ContourSpec {
    pub fn new(radius: f64) -> Self {
        ContourSpec {
            radius,
            n_points: 180,
            max_arg_step: std::f64::consts::FRAC_PI_8,
            max_refinement_depth: 8,
            compute_polar: true,
        }
    }

    /// Path parameter s ∈ [0, 2): s ≤ 1 is the arc λ = Λe^{isπ/2}, s > 1 the
    /// upper imaginary leg λ = iΛ(2-s)² descending toward the origin.
    pub fn lambda_of(&self, s: f64) -> C {
        if s <= 1.0 {
            C::new(0.0, s * std::f64::consts::FRAC_PI_2).exp() * self.radius
        } else {
            let w = 2.0 - s;
            C::new(0.0, self.radius * w * w)
        }
    }

    fn initial_params(&self) -> Vec<f64> {
        let n_arc = (self.n_points / 2).max(8);
        let n_leg = (self.n_points - self.n_points / 2).max(8);
        let mut s = Vec::with_capacity(n_arc + n_leg);
        for j in 0..=n_arc {
            s.push(j as f64 / n_arc as f64);
        }
        for m in (1..n_leg).rev() {
            s.push(2.0 - m as f64 / n_leg as f64);
        }
        s
    }
}

/// One sampled contour point with the values of both backends.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ContourSample {
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub d_exterior_re: f64,
    pub d_exterior_im: f64,
    pub d_polar_re: f64,
    pub d_polar_im: f64,
}

impl ContourSample {
    pub fn lambda(&self) -> C {
        C::new(self.lambda_re, self.lambda_im)
    }
    pub fn d_exterior(&self) -> C {
        C::new(self.d_exterior_re, self.d_exterior_im)
    }
    pub fn d_polar(&self) -> C {
        C::new(self.d_polar_re, self.d_polar_im)
    }
}

/// Fully sampled closed contour with its winding count.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvansContour {
    pub spec: ContourSpec,
    /// closed loop in counterclockwise order; first sample repeated at the end
    pub samples: Vec<ContourSample>,
    pub winding: i64,
    pub max_arg_step: f64,
    pub refinement_depth: usize,
    /// max over samples of the relative gap between the two backends
    pub method_agreement: f64,
}

struct UpperNode {
    s: f64,
    minus: KatoPoint,
    plus: KatoPoint,
    d_ext: C,
    d_polar: C,
}

/// Sample the Evans function on the closed contour, refining until every
/// argument step is below the threshold, and count the winding number.
pub fn run_contour<S: EvansSystem + ?Sized>(
    system: &S,
    evaluator: &EvansEvaluator<'_, S>,
    spec: &ContourSpec,
) -> Result<EvansContour> {
    let kato_m = KatoContinuation::new(system, Side::Minus);
    let kato_p = KatoContinuation::new(system, Side::Plus);

    let make_node = |s: f64, prev: Option<&UpperNode>| -> Result<UpperNode> {
        let (minus, plus) = match prev {
            None => {
                let lam = spec.lambda_of(s);
                (kato_m.start(lam)?, kato_p.start(lam)?)
            }
            Some(p) => {
                let (s0, s1) = (p.s, s);
                let sp = spec.clone();
                let path = move |t: f64| sp.lambda_of(s0 + (s1 - s0) * t);
                (kato_m.continue_along(&p.minus, &path)?, kato_p.continue_along(&p.plus, &path)?)
            }
        };
        let lam = minus.lambda;
        let d_ext = evaluator.exterior(lam, &minus.basis, &plus.basis, minus.rate_sum, plus.rate_sum)?;
        let d_polar = if spec.compute_polar {
            evaluator.polar(lam, &minus.basis, &plus.basis, minus.rate_sum, plus.rate_sum)?.value
        } else {
            d_ext
        };
        Ok(UpperNode { s, minus, plus, d_ext, d_polar })
    };

    // initial sweep in path order
    let mut nodes: Vec<UpperNode> = vec![];
    for s in spec.initial_params() {
        let node = make_node(s, nodes.last())?;
        nodes.push(node);
    }

    // refinement: argument steps along the upper path plus the origin gap
    let mut depth = 0usize;
    loop {
        let mut insertions: Vec<usize> = vec![];
        for i in 0..nodes.len() - 1 {
            let step = (nodes[i + 1].d_ext / nodes[i].d_ext).arg().abs();
            if step > spec.max_arg_step {
                insertions.push(i);
            }
        }
        let last = nodes.last().unwrap();
        let gap_step = 2.0 * last.d_ext.arg().abs();
        let refine_gap = gap_step > spec.max_arg_step;
        if insertions.is_empty() && !refine_gap {
            break;
        }
        if depth >= spec.max_refinement_depth {
            let worst = insertions
                .iter()
                .map(|&i| (nodes[i + 1].d_ext / nodes[i].d_ext).arg().abs())
                .fold(gap_step, f64::max);
            return Err(Error::UnresolvedWinding { arg_step: worst, depth });
        }
        depth += 1;
        // insert midpoints from the back to keep indices stable
        for &i in insertions.iter().rev() {
            let s_mid = 0.5 * (nodes[i].s + nodes[i + 1].s);
            let node = make_node(s_mid, Some(&nodes[i]))?;
            nodes.insert(i + 1, node);
        }
        if refine_gap {
            let s_last = nodes.last().unwrap().s;
            let w_last = 2.0 - s_last;
            let s_new = 2.0 - 0.5 * w_last;
            let node = make_node(s_new, Some(nodes.last().unwrap()))?;
            nodes.push(node);
        }
    }

    // assemble the closed loop: lower arc (conjugate, reversed), upper path,
    // lower leg (conjugate, reversed); close with the first sample
    let n_arc_nodes = nodes.iter().filter(|n| n.s <= 1.0).count();
    let mut samples: Vec<ContourSample> = Vec::with_capacity(2 * nodes.len() + 1);
    let push = |samples: &mut Vec<ContourSample>, lam: C, de: C, dp: C| {
        samples.push(ContourSample {
            lambda_re: lam.re,
            lambda_im: lam.im,
            d_exterior_re: de.re,
            d_exterior_im: de.im,
            d_polar_re: dp.re,
            d_polar_im: dp.im,
        });
    };
    for node in nodes[..n_arc_nodes].iter().rev() {
        let lam = node.minus.lambda;
        push(&mut samples, lam.conj(), node.d_ext.conj(), node.d_polar.conj());
    }
    for node in nodes[1..].iter() {
        push(&mut samples, node.minus.lambda, node.d_ext, node.d_polar);
    }
    for node in nodes[n_arc_nodes..].iter().rev() {
        let lam = node.minus.lambda;
        push(&mut samples, lam.conj(), node.d_ext.conj(), node.d_polar.conj());
    }
    let first = samples[0];
    samples.push(first);

    let values: Vec<C> = samples[..samples.len() - 1].iter().map(|s| s.d_exterior()).collect();
    let (winding, max_step) = winding_from_samples(&values)?;
    if spec.compute_polar {
        let values_polar: Vec<C> = samples[..samples.len() - 1].iter().map(|s| s.d_polar()).collect();
        let (winding_polar, _) = winding_from_samples(&values_polar)?;
        if winding_polar != winding {
            return Err(Error::Numerical(format!(
                "backends disagree on the winding number: exterior {winding}, polar {winding_polar}"
            )));
        }
    }

    let method_agreement = samples
        .iter()
        .map(|s| {
            let de = s.d_exterior();
            let dp = s.d_polar();
            (de - dp).norm() / de.norm().max(dp.norm())
        })
        .fold(0.0, f64::max);

    Ok(EvansContour {
        spec: spec.clone(),
        samples,
        winding,
        max_arg_step: max_step,
        refinement_depth: depth,
        method_agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evans::ConstantSystem;
    use crate::gas::ModelParams;

    #[test]
    fn contour_spec_mesh_is_quadratic_and_avoids_origin() {
        let spec = ContourSpec::new(10.0);
        let params = spec.initial_params();
        assert_eq!(params.len(), 180);
        let lams: Vec<C> = params.iter().map(|&s| spec.lambda_of(s)).collect();
        assert!((lams[0] - C::new(10.0, 0.0)).norm() < 1e-14);
        let min_mod = lams.iter().map(|l| l.norm()).fold(f64::INFINITY, f64::min);
        assert!(min_mod > 0.0);
        // quadratic law on the leg: |λ| of the last nodes shrink like w²
        let tail: Vec<f64> = lams[lams.len() - 3..].iter().map(|l| l.norm()).collect();
        let r = (tail[0] / tail[1], tail[1] / tail[2]);
        assert!(r.0 > 1.5 && r.1 > 1.5, "leg moduli decrease superlinearly: {tail:?}");
    }

    #[test]
    fn constant_system_contour_winds_zero_and_closes() {
        let p = ModelParams::new(2.0 / 3.0, 1.0, 1.0, 0.5).unwrap();
        let sys = ConstantSystem::from_endstates(&p).unwrap();
        let eval = EvansEvaluator::new(&sys, 8.0, 8.0);
        let mut spec = ContourSpec::new(5.0);
        spec.n_points = 40;
        let contour = run_contour(&sys, &eval, &spec).unwrap();
        assert_eq!(contour.winding, 0);
        let first = contour.samples.first().unwrap();
        let last = contour.samples.last().unwrap();
        assert_eq!(first.lambda(), last.lambda());
        // constant-coefficient: D constant to tight relative accuracy
        let d0 = contour.samples[0].d_exterior();
        for s in &contour.samples {
            assert!((s.d_exterior() - d0).norm() <= 1e-8 * d0.norm());
        }
        assert!(contour.method_agreement < 1e-6);
    }
}
