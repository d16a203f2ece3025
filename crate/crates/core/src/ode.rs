//! Adaptive embedded Runge–Kutta integration (Dormand–Prince 5(4)) for real
//! and complex linear/nonlinear systems, with optional per-step observers.

use crate::error::{Error, Result};
use nalgebra::{ComplexField, SVector};

/// Tolerances of the embedded pair. Step acceptance uses the max over
/// components of |err_i| / (abs_tol + rel_tol * |y_i|).
#[derive(Debug, Clone, Copy)]
pub struct OdeTol {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for OdeTol {
    fn default() -> Self {
        // contour integrations run at AbsTol 1e-6 / RelTol 1e-8
        Self { abs_tol: 1e-6, rel_tol: 1e-8 }
    }
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 4th-order weights of the embedded solution
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

/// Integrate y' = f(x, y) from (x0, y0) to x1. The direction may be either
/// sign. `observer`, when given, is called after every accepted step with
/// (x, y); returning false stops the integration early, yielding the current
/// state.
pub fn integrate<T, const N: usize, F>(
    mut f: F,
    x0: f64,
    x1: f64,
    y0: SVector<T, N>,
    tol: OdeTol,
    mut observer: Option<&mut dyn FnMut(f64, &SVector<T, N>) -> bool>,
) -> Result<SVector<T, N>>
where
    T: ComplexField<RealField = f64> + Copy,
    F: FnMut(f64, &SVector<T, N>) -> SVector<T, N>,
{
    let span = x1 - x0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let mut x = x0;
    let mut y = y0;
    let mut h = (span.abs() / 100.0).clamp(1e-8, 1.0) * dir;
    let h_min = span.abs() * 1e-14;
    let mut k1 = f(x, &y);
    let max_steps = 2_000_000usize;

    let sc = |v: f64| T::from_real(v);

    for _ in 0..max_steps {
        if (x1 - x) * dir <= 0.0 {
            return Ok(y);
        }
        if (x + h - x1) * dir > 0.0 {
            h = x1 - x;
        }

        let y2 = y + k1 * sc(A21 * h);
        let k2 = f(x + C2 * h, &y2);
        let y3 = y + k1 * sc(A31 * h) + k2 * sc(A32 * h);
        let k3 = f(x + C3 * h, &y3);
        let y4 = y + k1 * sc(A41 * h) + k2 * sc(A42 * h) + k3 * sc(A43 * h);
        let k4 = f(x + C4 * h, &y4);
        let y5 = y + k1 * sc(A51 * h) + k2 * sc(A52 * h) + k3 * sc(A53 * h) + k4 * sc(A54 * h);
        let k5 = f(x + C5 * h, &y5);
        let y6 = y + k1 * sc(A61 * h) + k2 * sc(A62 * h) + k3 * sc(A63 * h) + k4 * sc(A64 * h) + k5 * sc(A65 * h);
        let k6 = f(x + h, &y6);
        let y_new = y + k1 * sc(B1 * h) + k3 * sc(B3 * h) + k4 * sc(B4 * h) + k5 * sc(B5 * h) + k6 * sc(B6 * h);
        let k7 = f(x + h, &y_new);
        let y_hat = y
            + k1 * sc(E1 * h)
            + k3 * sc(E3 * h)
            + k4 * sc(E4 * h)
            + k5 * sc(E5 * h)
            + k6 * sc(E6 * h)
            + k7 * sc(E7 * h);

        let mut err: f64 = 0.0;
        for i in 0..N {
            let scale = tol.abs_tol + tol.rel_tol * y[i].modulus().max(y_new[i].modulus());
            err = err.max((y_new[i] - y_hat[i]).modulus() / scale);
        }

        if err <= 1.0 || h.abs() <= h_min {
            x += h;
            y = y_new;
            k1 = k7; // FSAL
            if let Some(obs) = observer.as_deref_mut() {
                if !obs(x, &y) {
                    return Ok(y);
                }
            }
        }
        let factor = if err > 0.0 { (1.0 / err).powf(0.2) } else { 5.0 };
        h *= (0.9 * factor).clamp(0.2, 5.0);
        if h.abs() < h_min {
            h = h_min * dir;
        }
    }
    Err(Error::Numerical(format!(
        "step budget exhausted integrating from {x0} toward {x1}; reached x = {x}"
    )))
}
