//! Traveling-wave profile of the rescaled equations: right-hand sides,
//! endstate linearizations and decay rates, the collocation solve with a
//! dense evaluator, and truncation lengths for Evans integrations.

pub mod collocation;
pub mod shooting;

use crate::error::{Error, Result};
use crate::gas::{rankine_hugoniot, Endstates, ModelParams};
use collocation::PlanarBvp;
use nalgebra::{Complex, Matrix2, Vector2};

/// Profile ODE right-hand side:
/// v' = [v(v-1) + Γ(e - v e₋)]/μ,
/// e' = (v/ν)[-(v-1)²/2 + (e - e₋) + (v-1)Γe₋].
pub fn profile_rhs(v: f64, e: f64, params: &ModelParams, e_minus: f64) -> (f64, f64) {
    let g = params.gruneisen;
    let dv = (v * (v - 1.0) + g * (e - v * e_minus)) / params.mu;
    let bracket = -0.5 * (v - 1.0) * (v - 1.0) + (e - e_minus) + (v - 1.0) * g * e_minus;
    let de = v / params.nu * bracket;
    (dv, de)
}

/// Jacobian of `profile_rhs` with respect to (v, e).
pub fn profile_rhs_jacobian(v: f64, e: f64, params: &ModelParams, e_minus: f64) -> Matrix2<f64> {
    let g = params.gruneisen;
    let bracket = -0.5 * (v - 1.0) * (v - 1.0) + (e - e_minus) + (v - 1.0) * g * e_minus;
    Matrix2::new(
        (2.0 * v - 1.0 - g * e_minus) / params.mu,
        g / params.mu,
        (bracket + v * (-(v - 1.0) + g * e_minus)) / params.nu,
        v / params.nu,
    )
}

/// Linearization of the profile field about an equilibrium volume v ∈ {1, v₊}.
#[derive(Debug, Clone)]
pub struct EquilibriumLinearization {
    pub matrix: Matrix2<f64>,
    pub eigenvalues: [Complex<f64>; 2],
    pub det: f64,
    pub trace: f64,
}

/// M = diag(1/μ, v/ν) · [[2v-1-Γe₋, Γ], [1-v+Γe₋, 1]] at an endstate volume.
pub fn equilibrium_jacobian(v: f64, params: &ModelParams) -> Result<EquilibriumLinearization> {
    let ends = rankine_hugoniot(params)?;
    if (v - 1.0).abs() > 1e-9 && (v - ends.v_plus).abs() > 1e-9 {
        return Err(Error::Domain(format!("equilibrium volume must be 1 or v_plus, got {v}")));
    }
    if params.is_characteristic() {
        return Err(Error::Characteristic("endstate hyperbolicity degenerates at v_plus = 1".into()));
    }
    let g = params.gruneisen;
    let em = ends.e_minus;
    let m = Matrix2::new(
        (2.0 * v - 1.0 - g * em) / params.mu,
        g / params.mu,
        v * (1.0 - v + g * em) / params.nu,
        v / params.nu,
    );
    let tr = m.trace();
    let det = m.determinant();
    let disc = tr * tr - 4.0 * det;
    let eigenvalues = if disc >= 0.0 {
        let s = disc.sqrt();
        [Complex::new(0.5 * (tr - s), 0.0), Complex::new(0.5 * (tr + s), 0.0)]
    } else {
        let s = (-disc).sqrt();
        [Complex::new(0.5 * tr, -0.5 * s), Complex::new(0.5 * tr, 0.5 * s)]
    };
    Ok(EquilibriumLinearization { matrix: m, eigenvalues, det, trace: tr })
}

/// Exponential approach rates of the profile to its endstates:
/// θ₋ = slowest unstable rate at v = 1, θ₊ = slowest stable rate at v = v₊.
pub fn decay_rates(params: &ModelParams) -> Result<(f64, f64)> {
    if params.is_characteristic() {
        return Err(Error::Characteristic("decay rates vanish at v_plus = 1".into()));
    }
    let left = equilibrium_jacobian(1.0, params)?;
    let right = equilibrium_jacobian(params.v_plus, params)?;
    let theta_minus = left
        .eigenvalues
        .iter()
        .map(|l| l.re)
        .filter(|re| *re > 0.0)
        .fold(f64::INFINITY, f64::min);
    let theta_plus = right
        .eigenvalues
        .iter()
        .map(|l| l.re)
        .filter(|re| *re < 0.0)
        .fold(f64::NEG_INFINITY, f64::max)
        .abs();
    if !theta_minus.is_finite() || !(theta_plus > 0.0) {
        return Err(Error::Splitting(format!(
            "endstate linearization is not hyperbolic: eigenvalues {:?} / {:?}",
            left.eigenvalues, right.eigenvalues
        )));
    }
    Ok((theta_minus, theta_plus))
}

/// One evaluated point of the profile with its analytic derivatives.
#[derive(Debug, Clone, Copy)]
pub struct ProfilePoint {
    pub x: f64,
    pub v: f64,
    pub u: f64,
    pub e: f64,
    pub v_x: f64,
    pub e_x: f64,
    pub u_xx: f64,
}

/// Solved traveling-wave profile with dense cubic-Hermite evaluation and
/// exponential tails beyond the solved window.
#[derive(Debug, Clone)]
pub struct ShockProfile {
    pub params: ModelParams,
    pub endstates: Endstates,
    /// solved half-domain lengths: the mesh spans [-l_minus, l_plus]
    pub l_minus: f64,
    pub l_plus: f64,
    pub mesh: Vec<f64>,
    /// (v, e) at mesh nodes; u is recovered as v - 1
    pub values: Vec<Vector2<f64>>,
    pub theta_minus: f64,
    pub theta_plus: f64,
    pub newton_trace: Vec<f64>,
    pub residual_offmesh: f64,
    pub residual_midpoints: f64,
}

impl ShockProfile {
    /// Dense evaluation with analytic derivatives. Inside the mesh this is the
    /// collocation interpolant; beyond it, the linearized exponential tail.
    pub fn eval(&self, x: f64) -> ProfilePoint {
        let (v, e) = self.eval_state(x);
        self.point_from_state(x, v, e)
    }

    pub fn point_from_state(&self, x: f64, v: f64, e: f64) -> ProfilePoint {
        let em = self.endstates.e_minus;
        let (v_x, e_x) = profile_rhs(v, e, &self.params, em);
        let jac = profile_rhs_jacobian(v, e, &self.params, em);
        let u_xx = jac[(0, 0)] * v_x + jac[(0, 1)] * e_x;
        ProfilePoint { x, v, u: v - 1.0, e, v_x, e_x, u_xx }
    }

    fn eval_state(&self, x: f64) -> (f64, f64) {
        let xs = &self.mesh;
        let n = xs.len();
        if x <= xs[0] {
            let dev = self.values[0] - Vector2::new(1.0, self.endstates.e_minus);
            let tail = dev * (self.theta_minus * (x - xs[0])).exp();
            return (1.0 + tail.x, self.endstates.e_minus + tail.y);
        }
        if x >= xs[n - 1] {
            let plus = Vector2::new(self.endstates.v_plus, self.endstates.e_plus);
            let dev = self.values[n - 1] - plus;
            let tail = dev * (-self.theta_plus * (x - xs[n - 1])).exp();
            return (plus.x + tail.x, plus.y + tail.y);
        }
        let i = match xs.binary_search_by(|a| a.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i - 1,
        };
        let h = xs[i + 1] - xs[i];
        let t = (x - xs[i]) / h;
        let (ua, ub) = (self.values[i], self.values[i + 1]);
        let em = self.endstates.e_minus;
        let fa = {
            let (dv, de) = profile_rhs(ua.x, ua.y, &self.params, em);
            Vector2::new(dv, de)
        };
        let fb = {
            let (dv, de) = profile_rhs(ub.x, ub.y, &self.params, em);
            Vector2::new(dv, de)
        };
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        let u = h00 * ua + (h10 * h) * fa + h01 * ub + (h11 * h) * fb;
        (u.x, u.y)
    }

    /// Columnar text export: x, v, u, e, v_x, e_x, u_xx per mesh node.
    pub fn export_columns(&self) -> String {
        let p = &self.params;
        let mut out = format!(
            "# gamma={:.17e} nu={:.17e} mu={:.17e} v_plus={:.17e}\n# x v u e v_x e_x u_xx\n",
            p.gruneisen, p.nu, p.mu, p.v_plus
        );
        for &x in &self.mesh {
            let pt = self.eval(x);
            out.push_str(&format!(
                "{:.17e} {:.17e} {:.17e} {:.17e} {:.17e} {:.17e} {:.17e}\n",
                pt.x, pt.v, pt.u, pt.e, pt.v_x, pt.e_x, pt.u_xx
            ));
        }
        out
    }

    /// Smallest half-length L on the given side such that the profile deviates
    /// from its endstate by at most `tol` (sup over components) beyond it.
    pub fn accuracy_length(&self, side_plus: bool, tol: f64) -> f64 {
        let target = if side_plus {
            Vector2::new(self.endstates.v_plus, self.endstates.e_plus)
        } else {
            Vector2::new(1.0, self.endstates.e_minus)
        };
        // scan from the far end toward 0 for the first violation
        let mut l = if side_plus { self.l_plus } else { self.l_minus };
        let steps = 2000;
        for k in 0..=steps {
            let frac = k as f64 / steps as f64;
            let x = if side_plus { self.l_plus * (1.0 - frac) } else { -self.l_minus * (1.0 - frac) };
            let (v, e) = self.eval_state(x);
            let dev = (v - target.x).abs().max((e - target.y).abs());
            if dev > tol {
                break;
            }
            l = x.abs();
        }
        l
    }
}

/// Default solve window [-17/θ₋ - 10, 17/θ₊ + 10].
pub fn default_domain(params: &ModelParams) -> Result<(f64, f64)> {
    let (tm, tp) = decay_rates(params)?;
    Ok((17.0 / tm + 10.0, 17.0 / tp + 10.0))
}

/// Solve the profile two-point problem by adaptive collocation with a
/// projective right boundary condition and the phase condition
/// v(0) = (1+v₊)/2. `domain`, when given, overrides the default window.
pub fn solve_profile(params: &ModelParams, tol: f64, domain: Option<(f64, f64)>) -> Result<ShockProfile> {
    if params.is_characteristic() {
        return Err(Error::Characteristic("no traveling wave at v_plus = 1".into()));
    }
    let ends = rankine_hugoniot(params)?;
    let (theta_minus, theta_plus) = decay_rates(params)?;
    let (l_minus, l_plus) = match domain {
        Some(d) => d,
        None => default_domain(params)?,
    };

    let em = ends.e_minus;
    let p = *params;
    let rhs = move |u: Vector2<f64>| {
        let (dv, de) = profile_rhs(u.x, u.y, &p, em);
        Vector2::new(dv, de)
    };
    let jac = move |u: Vector2<f64>| profile_rhs_jacobian(u.x, u.y, &p, em);

    // left row eigenvector of the unstable eigenvalue at the right endstate:
    // kills the unstable component of U(L+) - U+
    let right = equilibrium_jacobian(ends.v_plus, params)?;
    let lam_u = right
        .eigenvalues
        .iter()
        .map(|l| l.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let mt = right.matrix.transpose();
    let l_row = {
        // (Mᵀ - λu I) w = 0
        let a = mt - lam_u * Matrix2::identity();
        let w = if a[(0, 1)].abs() > a[(1, 1)].abs() {
            Vector2::new(-a[(0, 1)], a[(0, 0)])
        } else {
            Vector2::new(-a[(1, 1)], a[(1, 0)])
        };
        let n = w.norm();
        if n == 0.0 {
            return Err(Error::Splitting("degenerate unstable left eigenvector at v_plus".into()));
        }
        w / n
    };

    let bvp = PlanarBvp {
        rhs: &rhs,
        jac: &jac,
        right_bc_row: l_row,
        right_bc_state: Vector2::new(ends.v_plus, ends.e_plus),
        phase_value: 0.5 * (1.0 + ends.v_plus),
    };

    // mesh with a node exactly at 0
    let theta_max = theta_minus.max(theta_plus);
    let h0 = (0.35 / theta_max).clamp(0.05, 0.5);
    let n_left = (l_minus / h0).ceil() as usize;
    let n_right = (l_plus / h0).ceil() as usize;
    let mut xs = Vec::with_capacity(n_left + n_right + 1);
    for i in 0..n_left {
        xs.push(-l_minus + i as f64 * l_minus / n_left as f64);
    }
    xs.push(0.0);
    for i in 1..=n_right {
        xs.push(i as f64 * l_plus / n_right as f64);
    }
    let k_phase = n_left;

    // initial guess: tanh front through the phase point, e between the isoclines
    let g = params.gruneisen;
    let kappa = 0.5 * (theta_minus + theta_plus);
    let states: Vec<Vector2<f64>> = xs
        .iter()
        .map(|&x| {
            let v = 0.5 * (1.0 + ends.v_plus) - 0.5 * (1.0 - ends.v_plus) * (0.5 * kappa * x).tanh();
            let iso_v = v * em + v * (1.0 - v) / g;
            let iso_e = em + 0.5 * (v - 1.0) * (v - 1.0) - (v - 1.0) * g * em;
            Vector2::new(v, 0.5 * (iso_v + iso_e))
        })
        .collect();

    let sol = bvp.solve(xs, states, k_phase, (tol * 1e-2).min(1e-7))?;
    let profile = ShockProfile {
        params: *params,
        endstates: ends,
        l_minus,
        l_plus,
        mesh: sol.xs,
        values: sol.states,
        theta_minus,
        theta_plus,
        newton_trace: sol.newton_trace,
        residual_offmesh: sol.residual_offmesh,
        residual_midpoints: sol.residual_midpoints,
    };

    // endpoint accuracy contract
    let dev_l = {
        let s = profile.values[0];
        (s.x - 1.0).abs().max((s.y - em).abs())
    };
    let dev_r = {
        let s = profile.values[profile.values.len() - 1];
        (s.x - ends.v_plus).abs().max((s.y - ends.e_plus).abs())
    };
    if dev_l > tol || dev_r > tol {
        return Err(Error::Numerical(format!(
            "profile endpoint deviation {dev_l:.2e}/{dev_r:.2e} above tolerance {tol:.1e}; enlarge the domain"
        )));
    }
    Ok(profile)
}

/// Truncation lengths for Evans integrations: starting from the smallest
/// lengths with endstate deviation below the profile tolerance, walk a
/// step-`step` ladder until the endstate-matrix deviation bound
/// ‖A(∓L,0)-A∓(0)‖ + ‖A(∓L,Λ)-A∓(Λ) - (A(∓L,0)-A∓(0))‖ ≤ θ∓/(c_star·k)·tol
/// holds on each side.
pub fn truncation_lengths(
    params: &ModelParams,
    profile: &ShockProfile,
    contour_radius: f64,
    c_star: f64,
    k: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    use crate::eigensystem::{assemble_a, endstate_matrix, Side};
    let step = 5.0;
    let profile_tol = 1e-3;
    let lam0 = Complex::new(0.0, 0.0);
    let lam1 = Complex::new(contour_radius, 0.0);
    let mut result = [0.0f64; 2];
    for (slot, side) in [(0usize, Side::Minus), (1usize, Side::Plus)] {
        let theta = if side == Side::Minus { profile.theta_minus } else { profile.theta_plus };
        let threshold = theta / (c_star * k) * tol;
        let a_inf_0 = endstate_matrix(lam0, side, params)?;
        let a_inf_1 = endstate_matrix(lam1, side, params)?;
        let domain_end = if side == Side::Minus { profile.l_minus } else { profile.l_plus };
        let mut l = profile.accuracy_length(side == Side::Plus, profile_tol);
        loop {
            if l > domain_end + 1e-9 {
                return Err(Error::LadderExhausted { reached: l, domain_end });
            }
            let x = if side == Side::Minus { -l } else { l };
            let d0 = assemble_a(x, lam0, profile)? - a_inf_0;
            let d1 = assemble_a(x, lam1, profile)? - a_inf_1;
            let lhs = crate::eigensystem::op_norm2_c5(&d0) + crate::eigensystem::op_norm2_c5(&(d1 - d0));
            if lhs <= threshold {
                result[slot] = l;
                break;
            }
            l += step;
        }
    }
    Ok((result[0], result[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gas::v_star;

    fn params(g: f64, nu: f64, vp: f64) -> ModelParams {
        ModelParams::new(g, nu, 1.0, vp).unwrap()
    }

    #[test]
    fn rhs_vanishes_at_both_endstates() {
        for (g, nu, vp) in [(2.0 / 3.0, 1.0, 0.4), (0.2, 1.0875, 1.0 / 11.0), (1.5, 0.5, 0.9)] {
            let p = params(g, nu, vp);
            let e = rankine_hugoniot(&p).unwrap();
            let (dv, de) = profile_rhs(1.0, e.e_minus, &p, e.e_minus);
            assert!(dv.abs() < 1e-14 && de.abs() < 1e-14, "minus endstate");
            let (dv, de) = profile_rhs(e.v_plus, e.e_plus, &p, e.e_minus);
            assert!(dv.abs() < 1e-13 && de.abs() < 1e-13, "plus endstate at {g},{nu},{vp}");
        }
    }

    #[test]
    fn rhs_matches_rational_expansion_at_test_point() {
        // Γ=2/3, ν=μ=1, e₋=0.18, (v,e)=(0.5,0.3):
        // dv = 1/2·(-1/2) + 2/3·(3/10 - 1/2·9/50) = -1/4 + 2/3·(21/100) = -11/100
        // de = 1/2·(-1/8 + 3/25 - 1/2·3/25) = -13/400
        let p = params(2.0 / 3.0, 1.0, 0.4);
        let (dv, de) = profile_rhs(0.5, 0.3, &p, 0.18);
        assert!((dv - (-0.11)).abs() < 1e-15);
        assert!((de - (-0.0325)).abs() < 1e-15);
    }

    #[test]
    fn equilibrium_jacobian_det_matches_eigenvalue_product() {
        let p = params(2.0 / 3.0, 1.0, 0.4);
        let lin = equilibrium_jacobian(0.4, &p).unwrap();
        let prod = (lin.eigenvalues[0] * lin.eigenvalues[1]).re;
        assert!((lin.det - prod).abs() < 1e-12);
        assert!((lin.det - (-0.32)).abs() < 1e-12, "det {} vs -0.32", lin.det);
    }

    #[test]
    fn endstate_classification_node_then_saddle() {
        for (g, nu, vp) in [(2.0 / 3.0, 1.0, 0.4), (0.4, 1.47, 0.7), (1.0, 2.4375, 0.5)] {
            let p = params(g, nu, vp);
            let left = equilibrium_jacobian(1.0, &p).unwrap();
            assert!(left.det > 0.0 && left.trace > 0.0, "unstable node at v=1");
            let right = equilibrium_jacobian(vp, &p).unwrap();
            assert!(right.det < 0.0, "saddle at v_plus");
        }
    }

    #[test]
    fn characteristic_point_is_rejected() {
        let p = params(0.5, 1.0, 1.0);
        assert!(matches!(equilibrium_jacobian(1.0, &p), Err(Error::Characteristic(_))));
        assert!(matches!(decay_rates(&p), Err(Error::Characteristic(_))));
        assert!(matches!(solve_profile(&p, 1e-3, None), Err(Error::Characteristic(_))));
    }

    #[test]
    fn decay_rates_match_tabulated_strong_shock_row() {
        // Γ=0.2 with ν from the Eucken relation: θ₋≈0.91, θ₊≈0.83
        let nu = crate::gas::eucken_nu_over_mu(1.2).unwrap();
        let p = params(0.2, nu, v_star(0.2).unwrap());
        let (tm, tp) = decay_rates(&p).unwrap();
        assert!((tm - 0.91).abs() / 0.91 < 0.02, "theta_minus {tm}");
        assert!((tp - 0.83).abs() / 0.83 < 0.02, "theta_plus {tp}");
    }

    #[test]
    fn decay_rates_match_tabulated_moderate_row() {
        let nu = crate::gas::eucken_nu_over_mu(1.2).unwrap();
        let p = params(0.2, nu, 0.7);
        let (tm, tp) = decay_rates(&p).unwrap();
        assert!((tm - 0.28).abs() < 0.0101, "theta_minus {tm}");
        assert!((tp - 0.27).abs() < 0.0101, "theta_plus {tp}");
    }

    #[test]
    fn decay_rates_vanish_toward_characteristic_limit() {
        let mut prev = f64::INFINITY;
        for vp in [0.7, 0.9, 0.97, 0.995] {
            let p = params(2.0 / 3.0, 1.0, vp);
            let (tm, tp) = decay_rates(&p).unwrap();
            let rate = tm.min(tp);
            assert!(rate < prev);
            prev = rate;
        }
        assert!(prev < 0.02);
    }

    #[test]
    fn strong_shock_rates_positive_across_parameter_plane() {
        for g in [0.2, 0.5, 1.0, 1.5, 2.0] {
            for nu in [0.2, 0.5, 1.0, 2.0, 5.0] {
                let p = params(g, nu, v_star(g).unwrap());
                let (tm, tp) = decay_rates(&p).unwrap();
                assert!(tm > 0.05 && tp > 0.05, "rates {tm},{tp} at ({g},{nu})");
            }
        }
    }

    #[test]
    fn profile_connects_strong_shock_limit_states() {
        let p = params(2.0 / 3.0, 1.0, 0.25);
        let prof = solve_profile(&p, 1e-3, None).unwrap();
        let first = prof.values[0];
        let last = prof.values[prof.values.len() - 1];
        assert!((first.x - 1.0).abs() <= 1e-3 && (first.y - 0.0).abs() <= 1e-3);
        assert!((last.x - 0.25).abs() <= 1e-3 && (last.y - 9.0 / 32.0).abs() <= 1e-3);
        assert!(prof.residual_midpoints <= 1e-5);
        assert!(prof.residual_offmesh <= 1e-5);
        // phase condition
        let mid = prof.eval(0.0);
        assert!((mid.v - 0.625).abs() < 1e-10);
    }

    #[test]
    fn profile_volume_monotone_and_inside_lens() {
        let p = params(2.0 / 3.0, 1.875, 0.4);
        let prof = solve_profile(&p, 1e-3, None).unwrap();
        let em = prof.endstates.e_minus;
        let g = p.gruneisen;
        let mut prev = f64::INFINITY;
        for (x, s) in prof.mesh.iter().zip(&prof.values) {
            assert!(s.x < prev + 1e-12, "v not decreasing at x={x}");
            prev = s.x;
            assert!(s.x <= 1.0 + 1e-9 && s.x >= prof.endstates.v_plus - 1e-9);
            let iso_v = s.x * em + s.x * (1.0 - s.x) / g;
            let iso_e = em + 0.5 * (s.x - 1.0) * (s.x - 1.0) - (s.x - 1.0) * g * em;
            let lo = iso_v.min(iso_e) - 1e-8;
            let hi = iso_v.max(iso_e) + 1e-8;
            assert!(s.y >= lo && s.y <= hi, "e={} outside lens [{lo},{hi}] at x={x}", s.y);
        }
    }

    #[test]
    fn dense_evaluator_residual_off_mesh() {
        let p = params(0.4, 1.47, 0.5);
        let prof = solve_profile(&p, 1e-3, None).unwrap();
        // sample between nodes: the interpolant must satisfy the ODE closely
        for i in (0..prof.mesh.len() - 1).step_by(7) {
            let x = prof.mesh[i] + 0.37 * (prof.mesh[i + 1] - prof.mesh[i]);
            let pt = prof.eval(x);
            let (dv, de) = profile_rhs(pt.v, pt.e, &p, prof.endstates.e_minus);
            // pt.v_x is defined as the field at the interpolated state
            assert_eq!(pt.v_x, dv);
            assert_eq!(pt.e_x, de);
        }
    }

    #[test]
    fn u_xx_matches_finite_difference_of_v_x() {
        let p = params(2.0 / 3.0, 1.0, 0.4);
        let prof = solve_profile(&p, 1e-3, None).unwrap();
        for &x in &[-3.0, -1.0, 0.0, 1.5, 4.0] {
            let h = 1e-5;
            let a = prof.eval(x - h).v_x;
            let b = prof.eval(x + h).v_x;
            let fd = (b - a) / (2.0 * h);
            let u_xx = prof.eval(x).u_xx;
            assert!((u_xx - fd).abs() < 1e-6, "u_xx {} vs fd {} at x={x}", u_xx, fd);
        }
    }
}
