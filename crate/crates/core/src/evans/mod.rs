//! Evans function computation along contours by two independent backends
//! (exterior-product and polar-coordinate), with analytic Kato initialization
//! at the endstates and winding-number eigenvalue counts.

pub mod contour;
pub mod kato;
pub mod point;
pub mod winding;

use crate::error::{Error, Result};
use crate::eigensystem::lift::{dual_3form, lift2_fast, lift3_fast, wedge_columns_2, wedge_columns_3};
use crate::eigensystem::{a_from_point, endstate_matrix, Side, C, CMat5};
use crate::gas::ModelParams;
use crate::ode::{integrate, OdeTol};
use crate::profile::ShockProfile;
use kato::Basis;
use nalgebra::{SMatrix, SVector};

pub use contour::{ContourSpec, ContourSample, EvansContour};

/// The coefficient family the Evans machinery operates on: the interior
/// matrix A(x,λ) and its limits A±(λ).
pub trait EvansSystem: Sync {
    fn interior_matrix(&self, x: f64, lambda: C) -> CMat5;
    fn limit_matrix(&self, side: Side, lambda: C) -> CMat5;
}

/// The physical system: A(x,λ) assembled from a solved shock profile.
pub struct ProfileSystem<'a> {
    pub profile: &'a ShockProfile,
}

impl<'a> ProfileSystem<'a> {
    pub fn new(profile: &'a ShockProfile) -> Result<Self> {
        if (profile.params.mu - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("Evans system requires the mu = 1 normalization".into()));
        }
        Ok(ProfileSystem { profile })
    }
}

impl<'a> EvansSystem for ProfileSystem<'a> {
    fn interior_matrix(&self, x: f64, lambda: C) -> CMat5 {
        let pt = self.profile.eval(x);
        a_from_point(&pt, &self.profile.params, self.profile.endstates.e_minus, lambda)
    }

    fn limit_matrix(&self, side: Side, lambda: C) -> CMat5 {
        let ends = &self.profile.endstates;
        let (v, e) = match side {
            Side::Minus => (1.0, ends.e_minus),
            Side::Plus => (ends.v_plus, ends.e_plus),
        };
        let pt = crate::profile::ProfilePoint { x: 0.0, v, u: v - 1.0, e, v_x: 0.0, e_x: 0.0, u_xx: 0.0 };
        a_from_point(&pt, &self.profile.params, ends.e_minus, lambda)
    }
}

/// x-independent coefficients: A(x,λ) ≡ A₀(λ). The induced Evans function is
/// constant in λ, which pins down the Kato initialization.
pub struct ConstantSystem {
    matrix_of_lambda: Box<dyn Fn(C) -> CMat5 + Sync + Send>,
}

impl ConstantSystem {
    pub fn new(f: impl Fn(C) -> CMat5 + Sync + Send + 'static) -> Self {
        ConstantSystem { matrix_of_lambda: Box::new(f) }
    }

    /// Constant system frozen at the minus endstate of a parameter point.
    pub fn from_endstates(params: &ModelParams) -> Result<Self> {
        let p = *params;
        endstate_matrix(C::new(1.0, 0.0), Side::Minus, &p)?;
        Ok(ConstantSystem::new(move |lam| endstate_matrix(lam, Side::Minus, &p).expect("validated params")))
    }
}

impl EvansSystem for ConstantSystem {
    fn interior_matrix(&self, _x: f64, lambda: C) -> CMat5 {
        (self.matrix_of_lambda)(lambda)
    }

    fn limit_matrix(&self, _side: Side, lambda: C) -> CMat5 {
        (self.matrix_of_lambda)(lambda)
    }
}

/// How the stable-side (three-dimensional) wedge is propagated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlusFormulation {
    /// adjoint lifted system paired against the k=2 wedge at x = 0
    #[default]
    Adjoint,
    /// direct k=3 wedge, contracted through the duality pairing
    DirectWedge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvansMethod {
    Exterior,
    Polar,
}

/// Evans evaluation engine on a truncated domain [-L₋, L₊].
pub struct EvansEvaluator<'a, S: EvansSystem + ?Sized> {
    pub system: &'a S,
    pub l_minus: f64,
    pub l_plus: f64,
    pub tol: OdeTol,
    pub plus_form: PlusFormulation,
}

/// Result of evaluating one method at one λ.
#[derive(Debug, Clone, Copy)]
pub struct MethodValue {
    pub value: C,
    /// polar-only diagnostic: re-orthonormalizations triggered
    pub renormalizations: usize,
}

impl<'a, S: EvansSystem + ?Sized> EvansEvaluator<'a, S> {
    pub fn new(system: &'a S, l_minus: f64, l_plus: f64) -> Self {
        EvansEvaluator { system, l_minus, l_plus, tol: OdeTol::default(), plus_form: PlusFormulation::default() }
    }

    fn basis_fixed_2(v: &Basis) -> SMatrix<C, 5, 2> {
        SMatrix::<C, 5, 2>::from_fn(|i, j| v[(i, j)])
    }

    fn basis_fixed_3(v: &Basis) -> SMatrix<C, 5, 3> {
        SMatrix::<C, 5, 3>::from_fn(|i, j| v[(i, j)])
    }

    /// Exterior-product backend: the unstable wedge rides the k=2 lift from
    /// -L₋, the stable side comes in through the adjoint (or direct k=3)
    /// lifted flow from +L₊; both rescaled by their endstate growth rates.
    pub fn exterior(
        &self,
        lambda: C,
        basis_minus: &Basis,
        basis_plus: &Basis,
        rate_minus: C,
        rate_plus: C,
    ) -> Result<C> {
        let sys = self.system;
        let w_minus0: SVector<C, 10> = wedge_columns_2(&Self::basis_fixed_2(basis_minus));
        let y_minus = integrate(
            |x, y: &SVector<C, 10>| {
                let a2 = lift2_fast(&sys.interior_matrix(x, lambda));
                a2 * y - y * rate_minus
            },
            -self.l_minus,
            0.0,
            w_minus0,
            self.tol,
            None,
        )?;

        let y_plus = match self.plus_form {
            PlusFormulation::Adjoint => {
                let w0 = dual_3form(&wedge_columns_3(&Self::basis_fixed_3(basis_plus)));
                integrate(
                    |x, y: &SVector<C, 10>| {
                        let a = sys.interior_matrix(x, lambda);
                        let tr = a.trace();
                        let m = lift2_fast(&a).transpose();
                        y * (tr - rate_plus) - m * y
                    },
                    self.l_plus,
                    0.0,
                    w0,
                    self.tol,
                    None,
                )?
            }
            PlusFormulation::DirectWedge => {
                let w0 = wedge_columns_3(&Self::basis_fixed_3(basis_plus));
                let y3 = integrate(
                    |x, y: &SVector<C, 10>| {
                        let a3 = lift3_fast(&sys.interior_matrix(x, lambda));
                        a3 * y - y * rate_plus
                    },
                    self.l_plus,
                    0.0,
                    w0,
                    self.tol,
                    None,
                )?;
                dual_3form(&y3)
            }
        };
        Ok(y_plus.dot(&y_minus))
    }

    /// Polar-coordinate backend: orthonormal frame by continuous
    /// orthogonalization, radius by the Abel relation γ'/γ = tr(Ω*AΩ) - rate.
    pub fn polar(
        &self,
        lambda: C,
        basis_minus: &Basis,
        basis_plus: &Basis,
        rate_minus: C,
        rate_plus: C,
    ) -> Result<MethodValue> {
        let (omega_m, log_gamma_m, renorm_m) =
            self.polar_side::<2, 11>(lambda, &Self::basis_fixed_2(basis_minus).into(), rate_minus, false)?;
        let (omega_p, log_gamma_p, renorm_p) =
            self.polar_side::<3, 16>(lambda, &Self::basis_fixed_3(basis_plus).into(), rate_plus, true)?;
        // D = γ⁺γ⁻ det[Ω⁺ | Ω⁻] at x = 0
        let full = SMatrix::<C, 5, 5>::from_fn(|i, j| if j < 3 { omega_p[(i, j)] } else { omega_m[(i, j - 3)] });
        let det = full.determinant();
        Ok(MethodValue {
            value: det * (log_gamma_m + log_gamma_p).exp(),
            renormalizations: renorm_m + renorm_p,
        })
    }

    fn polar_side<const K: usize, const N: usize>(
        &self,
        lambda: C,
        init: &nalgebra::OMatrix<C, nalgebra::Const<5>, nalgebra::Const<K>>,
        rate: C,
        from_plus: bool,
    ) -> Result<(nalgebra::OMatrix<C, nalgebra::Const<5>, nalgebra::Const<K>>, C, usize)>
    where
        nalgebra::Const<5>: nalgebra::DimMin<nalgebra::Const<K>, Output = nalgebra::Const<K>>,
    {
        assert_eq!(N, 5 * K + 1);
        let sys = self.system;
        let qr = init.clone().qr();
        let mut omega = qr.q();
        let r = qr.r();
        let mut log_gamma = (0..K).map(|i| r[(i, i)].ln()).sum::<C>();
        let mut renorms = 0usize;

        let pack = |om: &nalgebra::OMatrix<C, nalgebra::Const<5>, nalgebra::Const<K>>, lg: C| {
            SVector::<C, N>::from_fn(|i, _| if i < 5 * K { om[(i % 5, i / 5)] } else { lg })
        };
        let unpack_frame = |y: &SVector<C, N>| {
            nalgebra::OMatrix::<C, nalgebra::Const<5>, nalgebra::Const<K>>::from_fn(|i, j| y[j * 5 + i])
        };

        let (mut x0, x_end) = if from_plus { (self.l_plus, 0.0) } else { (-self.l_minus, 0.0) };
        // integrate in stretches, re-orthonormalizing when the frame drifts
        let chunk = 5.0f64;
        while x0 != x_end {
            let x1 = if from_plus { (x0 - chunk).max(0.0) } else { (x0 + chunk).min(0.0) };
            let y0 = pack(&omega, log_gamma);
            let y = integrate(
                |x, y: &SVector<C, N>| {
                    let om = unpack_frame(y);
                    let a = sys.interior_matrix(x, lambda);
                    let aom = a * &om;
                    let g = om.adjoint() * &aom;
                    let dom = aom - &om * &g;
                    let dlg = g.trace() - rate;
                    SVector::<C, N>::from_fn(|i, _| if i < 5 * K { dom[(i % 5, i / 5)] } else { dlg })
                },
                x0,
                x1,
                y0,
                self.tol,
                None,
            )?;
            omega = unpack_frame(&y);
            log_gamma = y[5 * K];
            let gram = omega.adjoint() * &omega;
            let drift = (gram - nalgebra::OMatrix::<C, nalgebra::Const<K>, nalgebra::Const<K>>::identity()).norm();
            if drift > 1e-8 {
                let qr = omega.clone().qr();
                omega = qr.q();
                let r = qr.r();
                log_gamma += (0..K).map(|i| r[(i, i)].ln()).sum::<C>();
                renorms += 1;
                log::debug!("polar frame re-orthonormalized at x = {x1} (drift {drift:.2e})");
            }
            x0 = x1;
        }
        Ok((omega, log_gamma, renorms))
    }
}
