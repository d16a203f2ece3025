//! First-order eigenvalue system W' = A(x,λ)W in the integrated variables
//! W = (ε, ε', u, v, v'), its endstate limits, consistent-splitting subspaces,
//! and exterior-power (lifted) operators.

pub mod lift;
pub mod schur;

use crate::error::{Error, Result};
use crate::gas::{rankine_hugoniot, ModelParams};
use crate::profile::{ProfilePoint, ShockProfile};
use nalgebra::{Complex, SMatrix, SVector};

pub type C = Complex<f64>;
pub type CMat5 = SMatrix<C, 5, 5>;
pub type CVec5 = SVector<C, 5>;

pub use schur::op_norm2_c5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

fn require_unit_viscosity(params: &ModelParams) -> Result<()> {
    if (params.mu - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "eigenvalue system is derived under the normalization mu = 1, got mu = {}",
            params.mu
        )));
    }
    Ok(())
}

/// Coefficient functions of the eigenvalue system at a profile point:
/// f = 2v̂ - 1 - Γe₋,
/// g = ν⁻¹(Γê - (ν+1)û_x),
/// h = -ê_x / v̂.
pub fn coefficients(point: &ProfilePoint, params: &ModelParams, e_minus: f64) -> (f64, f64, f64) {
    let g_const = params.gruneisen;
    let nu = params.nu;
    let f = 2.0 * point.v - 1.0 - g_const * e_minus;
    let g = (g_const * point.e - (nu + 1.0) * point.v_x) / nu;
    let h = -point.e_x / point.v;
    (f, g, h)
}

/// A(x,λ) assembled from profile data; affine in λ.
pub fn assemble_a(x: f64, lambda: C, profile: &ShockProfile) -> Result<CMat5> {
    let params = &profile.params;
    require_unit_viscosity(params)?;
    if x < -profile.l_minus - 1e-9 || x > profile.l_plus + 1e-9 {
        return Err(Error::OutsideDomain { x, lo: -profile.l_minus, hi: profile.l_plus });
    }
    let pt = profile.eval(x);
    Ok(a_from_point(&pt, params, profile.endstates.e_minus, lambda))
}

/// The matrix entries, usable both for profile points and endstate limits.
pub fn a_from_point(pt: &ProfilePoint, params: &ModelParams, e_minus: f64, lambda: C) -> CMat5 {
    let (f, g, h) = coefficients(pt, params, e_minus);
    let nu = params.nu;
    let gamma = params.gruneisen;
    let v = pt.v;
    let ux = pt.v_x;
    let uxx = pt.u_xx;
    let z = C::new(0.0, 0.0);
    let re = |t: f64| C::new(t, 0.0);
    let mut a = CMat5::zeros();
    // row 1: ε' definition
    a[(0, 1)] = re(1.0);
    // row 2: ε'' equation
    a[(1, 0)] = lambda * re(v / nu);
    a[(1, 1)] = re(v / nu);
    a[(1, 2)] = re(v * ux / nu - uxx);
    a[(1, 3)] = lambda * re(g);
    a[(1, 4)] = re(g - h);
    // row 3: u' = λv + v'
    a[(2, 2)] = z;
    a[(2, 3)] = lambda;
    a[(2, 4)] = re(1.0);
    // row 4: v' definition
    a[(3, 4)] = re(1.0);
    // row 5: v'' equation
    a[(4, 1)] = re(gamma);
    a[(4, 2)] = lambda * re(v) + re(gamma * ux);
    a[(4, 3)] = lambda * re(v);
    a[(4, 4)] = re(f) - lambda;
    a
}

/// Endstate limit A±(λ): profile derivatives vanish, state at (v±, e±).
pub fn endstate_matrix(lambda: C, side: Side, params: &ModelParams) -> Result<CMat5> {
    require_unit_viscosity(params)?;
    let ends = rankine_hugoniot(params)?;
    let (v, e) = match side {
        Side::Minus => (1.0, ends.e_minus),
        Side::Plus => (ends.v_plus, ends.e_plus),
    };
    let pt = ProfilePoint { x: 0.0, v, u: v - 1.0, e, v_x: 0.0, e_x: 0.0, u_xx: 0.0 };
    Ok(a_from_point(&pt, params, ends.e_minus, lambda))
}

/// Invariant subspace of an endstate matrix: the 2-dim unstable space at -∞
/// or the 3-dim stable space at +∞, with spectral projector and eigenvalues
/// sorted by real part. Selection is by real-part rank, which stays robust
/// where one weak mode touches the imaginary axis.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    pub lambda: C,
    pub side: Side,
    pub vectors: Vec<CVec5>,
    pub projector: CMat5,
    pub eigenvalues: Vec<C>,
    /// sum of the cluster eigenvalues: the wedge growth rate at this endstate
    pub rate_sum: C,
}

pub fn splitting_for_matrix(a: &CMat5, lambda: C, side: Side) -> Result<SubspaceBasis> {
    let mut eigs: Vec<C> = {
        let schur = a.schur();
        let (_, t) = schur.unpack();
        (0..5).map(|i| t[(i, i)]).collect()
    };
    eigs.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap());
    let (cut, dim) = match side {
        Side::Minus => (0.5 * (eigs[2].re + eigs[3].re), 2usize),
        Side::Plus => (0.5 * (eigs[2].re + eigs[3].re), 3usize),
    };
    let gap = eigs[3].re - eigs[2].re;
    if !(gap > 1e-9) {
        return Err(Error::Splitting(format!(
            "no spectral gap between candidate clusters at lambda = {lambda}: eigenvalues {eigs:?}"
        )));
    }
    let cs = match side {
        Side::Minus => schur::cluster_subspace(a, |l| l.re > cut)?,
        Side::Plus => schur::cluster_subspace(a, |l| l.re < cut)?,
    };
    if cs.basis.len() != dim {
        return Err(Error::Splitting(format!(
            "expected a {dim}-dimensional cluster on side {side:?}, found {}",
            cs.basis.len()
        )));
    }
    Ok(SubspaceBasis {
        lambda,
        side,
        vectors: cs.basis,
        projector: cs.projector,
        eigenvalues: cs.eigenvalues,
        rate_sum: cs.rate_sum,
    })
}

/// Consistent splitting of the endstate matrices on ℜλ ≥ 0.
pub fn endstate_splitting(lambda: C, side: Side, params: &ModelParams) -> Result<SubspaceBasis> {
    let a = endstate_matrix(lambda, side, params)?;
    splitting_for_matrix(&a, lambda, side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::solve_profile;

    fn params(g: f64, nu: f64, vp: f64) -> ModelParams {
        ModelParams::new(g, nu, 1.0, vp).unwrap()
    }

    fn strong_point(v: f64, e: f64) -> ProfilePoint {
        ProfilePoint { x: 0.0, v, u: v - 1.0, e, v_x: 0.0, e_x: 0.0, u_xx: 0.0 }
    }

    #[test]
    fn coefficients_at_left_endstate() {
        let p = params(2.0 / 3.0, 1.7, 0.4);
        let e = rankine_hugoniot(&p).unwrap();
        let pt = strong_point(1.0, e.e_minus);
        let (f, g, h) = coefficients(&pt, &p, e.e_minus);
        assert!((f - (1.0 - p.gruneisen * e.e_minus)).abs() < 1e-15);
        assert!((g - p.gruneisen * e.e_minus / p.nu).abs() < 1e-15);
        assert_eq!(h, 0.0);
    }

    #[test]
    fn coefficients_at_strong_shock_right_endstate() {
        // Γ=2/3, ν=1 at U₊ = (1/4, 9/32): f = (Γ-2)/(Γ+2) = -1/2, g = Γe₊ = 0.1875
        let p = params(2.0 / 3.0, 1.0, 0.25);
        let pt = strong_point(0.25, 9.0 / 32.0);
        let (f, g, h) = coefficients(&pt, &p, 0.0);
        assert!((f + 0.5).abs() < 1e-15);
        assert!((g - 0.1875).abs() < 1e-15);
        assert_eq!(h, 0.0);
    }

    #[test]
    fn structural_rows_are_parameter_free() {
        let p = params(1.3, 2.0, 0.6);
        let prof = solve_profile(&p, 1e-3, None).unwrap();
        let lam = C::new(0.7, 1.1);
        let a = assemble_a(0.3, lam, &prof).unwrap();
        // row 1 = (0,1,0,0,0); row 4 = (0,0,0,0,1); row 3 = (0,0,0,λ,1)
        for j in 0..5 {
            let expect1 = if j == 1 { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) };
            assert_eq!(a[(0, j)], expect1);
            let expect4 = if j == 4 { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) };
            assert_eq!(a[(3, j)], expect4);
        }
        assert_eq!(a[(2, 3)], lam);
        assert_eq!(a[(2, 4)], C::new(1.0, 0.0));
    }

    #[test]
    fn strong_shock_minus_limit_matches_block_matrix() {
        // at the strong-shock limit, A₋(λ) has the explicit block triangular form
        let p = params(2.0 / 3.0, 1.3, 0.25);
        let lam = C::new(0.4, 0.9);
        let a = endstate_matrix(lam, Side::Minus, &p).unwrap();
        let nu = p.nu;
        let g = p.gruneisen;
        let mut expect = CMat5::zeros();
        expect[(0, 1)] = C::new(1.0, 0.0);
        expect[(1, 0)] = lam / C::new(nu, 0.0);
        expect[(1, 1)] = C::new(1.0 / nu, 0.0);
        expect[(2, 3)] = lam;
        expect[(2, 4)] = C::new(1.0, 0.0);
        expect[(3, 4)] = C::new(1.0, 0.0);
        expect[(4, 1)] = C::new(g, 0.0);
        expect[(4, 2)] = lam;
        expect[(4, 3)] = lam;
        expect[(4, 4)] = C::new(1.0, 0.0) - lam;
        assert!((a - expect).norm() < 1e-14);
    }

    #[test]
    fn strong_shock_plus_limit_matches_coefficient_values() {
        let p = params(2.0 / 3.0, 1.0, 0.25);
        let lam = C::new(1.3, -0.2);
        let a = endstate_matrix(lam, Side::Plus, &p).unwrap();
        let vstar = 0.25;
        let f = -0.5;
        let g = 0.1875;
        assert!((a[(1, 0)] - lam * C::new(vstar / p.nu, 0.0)).norm() < 1e-14);
        assert!((a[(1, 3)] - lam * C::new(g, 0.0)).norm() < 1e-14);
        assert!((a[(1, 4)] - C::new(g, 0.0)).norm() < 1e-14);
        assert!((a[(4, 2)] - lam * C::new(vstar, 0.0)).norm() < 1e-14);
        assert!((a[(4, 4)] - (C::new(f, 0.0) - lam)).norm() < 1e-14);
    }

    #[test]
    fn affine_in_lambda() {
        let p = params(0.9, 0.7, 0.55);
        let prof = solve_profile(&p, 1e-3, None).unwrap();
        for &x in &[-2.0, 0.0, 3.7] {
            let a0 = assemble_a(x, C::new(0.0, 0.0), &prof).unwrap();
            let a1 = assemble_a(x, C::new(1.0, 0.0), &prof).unwrap();
            let lam = C::new(-0.3, 2.2);
            let a = assemble_a(x, lam, &prof).unwrap();
            let affine = a0 + (a1 - a0) * lam;
            assert!((a - affine).norm() < 1e-13);
        }
    }

    #[test]
    fn conjugate_symmetry_of_assembled_matrix() {
        let p = params(0.4, 1.47, 0.5);
        let prof = solve_profile(&p, 1e-3, None).unwrap();
        let lam = C::new(0.8, 1.9);
        let a = assemble_a(1.2, lam, &prof).unwrap();
        let ac = assemble_a(1.2, lam.conj(), &prof).unwrap();
        assert!((ac - a.map(|z| z.conj())).norm() < 1e-14);
    }

    #[test]
    fn nonunit_viscosity_is_rejected() {
        let p = ModelParams::new(0.4, 1.47, 2.0, 0.5).unwrap();
        assert!(matches!(endstate_matrix(C::new(1.0, 0.0), Side::Minus, &p), Err(Error::Domain(_))));
    }

    #[test]
    fn strong_shock_minus_eigenvalues_at_unit_lambda() {
        // at λ=1, ν=1 the spectrum contains (1±√5)/2 (each doubled) and -λ
        let p = params(2.0 / 3.0, 1.0, 0.25);
        let lam = C::new(1.0, 0.0);
        let a = endstate_matrix(lam, Side::Minus, &p).unwrap();
        let (_, t) = a.schur().unpack();
        let mut eigs: Vec<f64> = (0..5).map(|i| t[(i, i)].re).collect();
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let phi_plus = 0.5 * (1.0 + 5.0f64.sqrt());
        let phi_minus = 0.5 * (1.0 - 5.0f64.sqrt());
        assert!((eigs[0] - (-1.0)).abs() < 1e-9);
        assert!((eigs[1] - phi_minus).abs() < 1e-7);
        assert!((eigs[2] - phi_minus).abs() < 1e-7);
        assert!((eigs[3] - phi_plus).abs() < 1e-7);
        assert!((eigs[4] - phi_plus).abs() < 1e-7);
    }

    #[test]
    fn splitting_dimensions_on_contour_samples() {
        let cases = [params(2.0 / 3.0, 1.0, 0.25), params(0.4, 1.47, 0.5), params(1.8, 5.0, 0.8)];
        for p in cases {
            for i in 0..20 {
                let theta = std::f64::consts::PI * (i as f64 / 19.0 - 0.5);
                let lam = C::new(10.0 * theta.cos(), 10.0 * theta.sin());
                let minus = endstate_splitting(lam, Side::Minus, &p).unwrap();
                assert_eq!(minus.vectors.len(), 2);
                let plus = endstate_splitting(lam, Side::Plus, &p).unwrap();
                assert_eq!(plus.vectors.len(), 3);
                // projector-invariance of the basis
                let a_minus = endstate_matrix(lam, Side::Minus, &p).unwrap();
                for v in &minus.vectors {
                    let av = a_minus * v;
                    let res = av - minus.projector * av;
                    assert!(res.norm() <= 1e-10 * av.norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn real_lambda_gives_conjugate_symmetric_spectrum() {
        let p = params(0.7, 2.0, 0.5);
        let basis = endstate_splitting(C::new(2.5, 0.0), Side::Plus, &p).unwrap();
        let mut ims: Vec<f64> = basis.eigenvalues.iter().map(|l| l.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let sum: f64 = ims.iter().sum();
        assert!(sum.abs() < 1e-9, "imaginary parts pair off: {ims:?}");
        assert!(basis.rate_sum.im.abs() < 1e-9);
    }

    #[test]
    fn endstate_consistency_with_profile_tails() {
        let p = params(2.0 / 3.0, 1.875, 0.4);
        let prof = solve_profile(&p, 1e-3, None).unwrap();
        let lam = C::new(3.0, 4.0);
        for (side, x) in [(Side::Minus, -prof.l_minus), (Side::Plus, prof.l_plus)] {
            let a_end = endstate_matrix(lam, side, &p).unwrap();
            let a_x = assemble_a(x, lam, &prof).unwrap();
            let theta = if side == Side::Minus { prof.theta_minus } else { prof.theta_plus };
            let l = x.abs();
            // deviation consistent with the exponential approach rate
            let bound = 1e3 * (1.0 + lam.norm()) * (-theta * l).exp();
            assert!((a_x - a_end).norm() < bound.max(1e-8), "deviation {}", (a_x - a_end).norm());
        }
    }
}
