//! Ideal-gas thermodynamics in rescaled Lagrangian coordinates: jump
//! conditions, shock-strength diagnostics, and physical-constant helpers.
//!
//! The shock is normalized to speed s = -1 with left state v = 1, u = 0, so a
//! single point is described by (Γ, ν, μ, v₊) with Γ = γ - 1 the Gruneisen
//! constant, ν = κ/c_v the rescaled heat conduction, and μ the viscosity.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Compact parameter point (Γ, ν, μ, v₊) defining one shock problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub gruneisen: f64,
    pub nu: f64,
    pub mu: f64,
    pub v_plus: f64,
}

impl ModelParams {
    /// Validating constructor. The strong-shock endpoint v₊ = v* is a valid
    /// input; the characteristic point v₊ = 1 is representable here but
    /// rejected by profile and Evans operations downstream.
    pub fn new(gruneisen: f64, nu: f64, mu: f64, v_plus: f64) -> Result<Self> {
        if !(gruneisen > 0.0) {
            return Err(Error::Domain(format!("Gruneisen constant must be positive, got {gruneisen}")));
        }
        if !(nu > 0.0) {
            return Err(Error::Domain(format!("heat conduction nu must be positive, got {nu}")));
        }
        if !(mu > 0.0) {
            return Err(Error::Domain(format!("viscosity mu must be positive, got {mu}")));
        }
        let vs = v_star(gruneisen)?;
        if v_plus < vs - 1e-14 {
            return Err(Error::Physicality { v_plus, v_star: vs });
        }
        if v_plus > 1.0 + 1e-14 {
            return Err(Error::Domain(format!("v_plus must satisfy v_plus <= 1, got {v_plus}")));
        }
        Ok(Self { gruneisen, nu, mu, v_plus: v_plus.clamp(vs, 1.0) })
    }

    pub fn v_star(&self) -> f64 {
        self.gruneisen / (self.gruneisen + 2.0)
    }

    /// Shock amplitude measured as the offset of v₊ above the strong-shock floor.
    pub fn offset_above_star(&self) -> f64 {
        self.v_plus - self.v_star()
    }

    pub fn is_strong_shock_limit(&self) -> bool {
        self.offset_above_star() <= 0.0
    }

    pub fn is_characteristic(&self) -> bool {
        self.v_plus >= 1.0
    }
}

/// Six rescaled end values plus v* and shock-strength diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Endstates {
    pub v_minus: f64,
    pub u_minus: f64,
    pub e_minus: f64,
    pub v_plus: f64,
    pub u_plus: f64,
    pub e_plus: f64,
    pub v_star: f64,
}

impl Endstates {
    /// Residuals of the three jump conditions in the rescaled frame:
    /// mass       u₊ - (v₊ - 1),
    /// momentum   u₊ + Γ(e₊/v₊ - e₋),
    /// energy     (e₊ - e₋) + u₊²/2 + Γ e₊ u₊ / v₊.
    pub fn jump_residuals(&self, gruneisen: f64) -> [f64; 3] {
        let g = gruneisen;
        let r_mass = self.u_plus - (self.v_plus - 1.0);
        let r_mom = self.u_plus + g * (self.e_plus / self.v_plus - self.e_minus);
        let r_en =
            (self.e_plus - self.e_minus) + 0.5 * self.u_plus * self.u_plus + g * self.e_plus * self.u_plus / self.v_plus;
        [r_mass, r_mom, r_en]
    }
}

/// Physicality threshold v*(Γ) = Γ/(Γ+2).
pub fn v_star(gruneisen: f64) -> Result<f64> {
    if !(gruneisen > 0.0) {
        return Err(Error::Domain(format!("Gruneisen constant must be positive, got {gruneisen}")));
    }
    Ok(gruneisen / (gruneisen + 2.0))
}

/// Solve the jump conditions for the right state and the left internal energy:
/// u₊ = v₊ - 1, e₋ = (Γ+2)(v₊-v*)/(2Γ(Γ+1)), e₊ = v₊(Γ+2-Γv₊)/(2Γ(Γ+1)).
pub fn rankine_hugoniot(params: &ModelParams) -> Result<Endstates> {
    let g = params.gruneisen;
    let vs = v_star(g)?;
    let vp = params.v_plus;
    if vp < vs - 1e-14 {
        return Err(Error::Physicality { v_plus: vp, v_star: vs });
    }
    let denom = 2.0 * g * (g + 1.0);
    let e_minus = ((g + 2.0) * (vp - vs)).max(0.0) / denom;
    let e_plus = vp * (g + 2.0 - g * vp) / denom;
    Ok(Endstates {
        v_minus: 1.0,
        u_minus: 0.0,
        e_minus,
        v_plus: vp,
        u_plus: vp - 1.0,
        e_plus,
        v_star: vs,
    })
}

/// Mach number M = √2 / √((Γ+2)(v₊-v*)) of the shock. Tends to 1 at the
/// characteristic point and diverges at the strong-shock limit, where the
/// distinguished value `f64::INFINITY` is returned rather than an error.
pub fn mach_number(params: &ModelParams) -> Result<f64> {
    let g = params.gruneisen;
    let vs = v_star(g)?;
    let gap = params.v_plus - vs;
    if gap < -1e-14 {
        return Err(Error::Physicality { v_plus: params.v_plus, v_star: vs });
    }
    if gap <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((2.0 / ((g + 2.0) * gap)).sqrt())
}

/// Invert the Mach relation: the v₊ on the iso-Mach curve at a given Γ.
pub fn v_plus_for_mach(gruneisen: f64, mach: f64) -> Result<f64> {
    let vs = v_star(gruneisen)?;
    if !(mach >= 1.0) {
        return Err(Error::Domain(format!("Mach number must be >= 1, got {mach}")));
    }
    Ok(vs + 2.0 / ((gruneisen + 2.0) * mach * mach))
}

/// Eucken relation for an ideal gas: ν/μ = (3/4)(9γ-5)/4.
pub fn eucken_nu_over_mu(gamma: f64) -> Result<f64> {
    if !(gamma >= 1.0) {
        return Err(Error::Domain(format!("adiabatic index must satisfy gamma >= 1, got {gamma}")));
    }
    Ok(0.75 * (9.0 * gamma - 5.0) / 4.0)
}

/// Dry-air constants: Γ = 0.4, ν/μ = 1.47, μ = 1. The caller picks v₊.
pub fn air_defaults(v_plus: f64) -> Result<ModelParams> {
    ModelParams::new(0.4, 1.47, 1.0, v_plus)
}
