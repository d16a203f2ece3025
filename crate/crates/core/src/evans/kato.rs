//! Analytic continuation of invariant-subspace bases along λ-paths by the
//! projector-commutator ODE V' = (PP' - P'P)V, discretized with a
//! midpoint-commutator Magnus step and adaptive bisection.

use crate::error::{Error, Result};
use crate::evans::EvansSystem;
use crate::eigensystem::{splitting_for_matrix, Side, C, CMat5};
use nalgebra::{Dyn, OMatrix, U5};

pub type Basis = OMatrix<C, U5, Dyn>;

/// Orthonormalize the real span of a conjugation-invariant complex basis, so
/// continuation launched from a real λ starts from a real frame.
pub fn realify(basis: &Basis) -> Option<Basis> {
    let k = basis.ncols();
    let mut candidates: Vec<nalgebra::OVector<f64, U5>> = vec![];
    for j in 0..k {
        candidates.push(basis.column(j).map(|z| z.re));
        candidates.push(basis.column(j).map(|z| z.im));
    }
    // Gram-Schmidt, keeping the first k independent directions
    let mut ortho: Vec<nalgebra::OVector<f64, U5>> = vec![];
    for mut c in candidates {
        for o in &ortho {
            c -= o * o.dot(&c);
        }
        let n = c.norm();
        if n > 1e-8 {
            ortho.push(c / n);
            if ortho.len() == k {
                break;
            }
        }
    }
    if ortho.len() < k {
        return None;
    }
    Some(Basis::from_fn(k, |i, j| C::new(ortho[j][i], 0.0)))
}

fn expm_small(g: &CMat5) -> CMat5 {
    let mut term = CMat5::identity();
    let mut sum = CMat5::identity();
    for k in 1..=14 {
        term = (term * g) / C::new(k as f64, 0.0);
        sum += term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    sum
}

/// One Magnus midpoint step of the commutator ODE from λa to λb.
fn kato_step(p_a: &CMat5, p_m: &CMat5, p_b: &CMat5, v: &Basis) -> Basis {
    let dp = p_b - p_a;
    let g = p_m * dp - dp * p_m;
    let moved = expm_small(&g) * v;
    // re-anchor onto the subspace (analyticity-preserving)
    p_b * moved
}

/// Path-ordered continuation machinery. The path is given by a parametric
/// map t -> λ(t); projectors are evaluated exactly at every substep point.
pub struct KatoContinuation<'a, S: EvansSystem + ?Sized> {
    pub system: &'a S,
    pub side: Side,
    pub tol: f64,
}

pub struct KatoPoint {
    pub lambda: C,
    pub basis: Basis,
    pub projector: CMat5,
    /// sum of the cluster eigenvalues at this λ
    pub rate_sum: C,
}

impl<'a, S: EvansSystem + ?Sized> KatoContinuation<'a, S> {
    pub fn new(system: &'a S, side: Side) -> Self {
        KatoContinuation { system, side, tol: 1e-12 }
    }

    pub fn splitting(&self, lambda: C) -> Result<crate::eigensystem::SubspaceBasis> {
        let a = self.system.limit_matrix(self.side, lambda);
        splitting_for_matrix(&a, lambda, self.side)
    }

    fn projector(&self, lambda: C) -> Result<(CMat5, C)> {
        let s = self.splitting(lambda)?;
        Ok((s.projector, s.rate_sum))
    }

    /// Initial point of a path at a real anchor λ; the basis is chosen real.
    pub fn start(&self, lambda: C) -> Result<KatoPoint> {
        let s = self.splitting(lambda)?;
        let k = s.vectors.len();
        let complex_basis = Basis::from_fn(k, |i, j| s.vectors[j][i]);
        let basis = if lambda.im == 0.0 {
            realify(&complex_basis).unwrap_or(complex_basis)
        } else {
            complex_basis
        };
        Ok(KatoPoint { lambda, basis, projector: s.projector, rate_sum: s.rate_sum })
    }

    /// Continue `from` along the parametric segment path(0) = from.lambda,
    /// path(1) = target, with adaptive bisection in the parameter.
    pub fn continue_along(&self, from: &KatoPoint, path: &dyn Fn(f64) -> C) -> Result<KatoPoint> {
        let mut basis = from.basis.clone();
        let mut p_a = from.projector;
        let mut t = 0.0f64;
        let mut dt = 1.0f64;
        let mut guard = 0usize;
        while t < 1.0 {
            guard += 1;
            if guard > 100_000 {
                return Err(Error::Numerical("Kato continuation stalled".into()));
            }
            if t + dt > 1.0 {
                dt = 1.0 - t;
            }
            let t_b = t + dt;
            let lam_m = path(t + 0.5 * dt);
            let lam_b = path(t_b);
            let (p_m, _) = self.projector(lam_m)?;
            let (p_b, _) = self.projector(lam_b)?;
            // one step vs two half steps
            let one = kato_step(&p_a, &p_m, &p_b, &basis);
            let lam_q1 = path(t + 0.25 * dt);
            let lam_q3 = path(t + 0.75 * dt);
            let (p_q1, _) = self.projector(lam_q1)?;
            let (p_q3, _) = self.projector(lam_q3)?;
            let half = kato_step(&p_a, &p_q1, &p_m, &basis);
            let two = kato_step(&p_m, &p_q3, &p_b, &half);
            let err = (&one - &two).norm();
            let scale = basis.norm().max(1e-30);
            if err <= self.tol * scale || dt < 1e-8 {
                basis = two;
                p_a = p_b;
                t = t_b;
                if err < 0.1 * self.tol * scale {
                    dt = (dt * 2.0).min(1.0);
                }
            } else {
                dt *= 0.5;
            }
        }
        let lambda = path(1.0);
        let (projector, rate_sum) = self.projector(lambda)?;
        Ok(KatoPoint { lambda, basis, projector, rate_sum })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evans::ConstantSystem;
    use crate::gas::ModelParams;
    use crate::eigensystem::endstate_matrix;

    fn test_system() -> ConstantSystem {
        let p = ModelParams::new(2.0 / 3.0, 1.0, 1.0, 0.5).unwrap();
        ConstantSystem::from_endstates(&p).unwrap()
    }

    #[test]
    fn constant_projector_path_keeps_basis_constant() {
        // a path along which A (hence P) is constant: λ fixed, parameter moves
        let sys = test_system();
        let k = KatoContinuation::new(&sys, Side::Minus);
        let start = k.start(C::new(3.0, 0.0)).unwrap();
        let path = |_t: f64| C::new(3.0, 0.0);
        let end = k.continue_along(&start, &path).unwrap();
        assert!((&end.basis - &start.basis).norm() < 1e-14);
    }

    #[test]
    fn basis_stays_in_subspace_along_arc() {
        let sys = test_system();
        for side in [Side::Minus, Side::Plus] {
            let k = KatoContinuation::new(&sys, side);
            let start = k.start(C::new(10.0, 0.0)).unwrap();
            let path = |t: f64| C::new(10.0, 0.0) * C::new(0.0, t * std::f64::consts::FRAC_PI_2).exp();
            let end = k.continue_along(&start, &path).unwrap();
            // P V = V to tight tolerance at the endpoint
            let res = (&end.projector * &end.basis) - &end.basis;
            assert!(res.norm() <= 1e-10 * end.basis.norm(), "residual {}", res.norm());
            // columns remain independent
            let gram = end.basis.adjoint() * &end.basis;
            assert!(gram.determinant().norm() > 1e-6);
        }
    }

    #[test]
    fn two_half_paths_match_single_pass() {
        let sys = test_system();
        let k = KatoContinuation::new(&sys, Side::Plus);
        let radius = 8.0;
        let start = k.start(C::new(radius, 0.0)).unwrap();
        let quarter = std::f64::consts::FRAC_PI_2;
        let one_pass = {
            let path = move |t: f64| C::new(radius, 0.0) * C::new(0.0, t * quarter).exp();
            k.continue_along(&start, &path).unwrap()
        };
        let two_pass = {
            let path1 = move |t: f64| C::new(radius, 0.0) * C::new(0.0, 0.5 * t * quarter).exp();
            let mid = k.continue_along(&start, &path1).unwrap();
            let path2 = move |t: f64| C::new(radius, 0.0) * C::new(0.0, (0.5 + 0.5 * t) * quarter).exp();
            k.continue_along(&mid, &path2).unwrap()
        };
        assert!((&one_pass.basis - &two_pass.basis).norm() <= 1e-8 * one_pass.basis.norm());
        // oracle: 10x-resolution re-integration by fixed fine substeps
        let fine = {
            let mut point = k.start(C::new(radius, 0.0)).unwrap();
            let n = 400;
            for j in 0..n {
                let a = j as f64 / n as f64;
                let b = (j + 1) as f64 / n as f64;
                let path = move |t: f64| {
                    C::new(radius, 0.0) * C::new(0.0, (a + (b - a) * t) * quarter).exp()
                };
                point = k.continue_along(&point, &path).unwrap();
            }
            point
        };
        assert!((&one_pass.basis - &fine.basis).norm() <= 1e-8 * fine.basis.norm());
    }

    #[test]
    fn conjugate_path_gives_conjugate_basis() {
        let sys = test_system();
        let k = KatoContinuation::new(&sys, Side::Minus);
        let start = k.start(C::new(5.0, 0.0)).unwrap();
        // the start basis is real
        assert!(start.basis.iter().all(|z| z.im == 0.0));
        let up = |t: f64| C::new(5.0, 0.0) * C::new(0.0, t).exp();
        let down = |t: f64| C::new(5.0, 0.0) * C::new(0.0, -t).exp();
        let a = k.continue_along(&start, &up).unwrap();
        let b = k.continue_along(&start, &down).unwrap();
        let conj_a = a.basis.map(|z| z.conj());
        assert!((&conj_a - &b.basis).norm() < 1e-10 * a.basis.norm());
    }

    #[test]
    fn realify_recovers_real_basis_of_conjugation_invariant_subspace() {
        let p = ModelParams::new(0.4, 1.47, 1.0, 0.6).unwrap();
        let a = endstate_matrix(C::new(2.0, 0.0), Side::Plus, &p).unwrap();
        let s = splitting_for_matrix(&a, C::new(2.0, 0.0), Side::Plus).unwrap();
        let complex_basis = Basis::from_fn(s.vectors.len(), |i, j| s.vectors[j][i]);
        let real = realify(&complex_basis).expect("conjugation-invariant subspace has a real basis");
        // spans agree: P * real = real
        let res = (s.projector * &real) - &real;
        assert!(res.norm() < 1e-9);
    }
}
