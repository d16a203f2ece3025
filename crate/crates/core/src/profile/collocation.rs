//! Fourth-order mono-implicit Runge–Kutta collocation on a nonuniform mesh,
//! solved by damped Newton over a banded Jacobian.

use crate::error::{Error, Result};
use nalgebra::{Matrix2, Vector2};

/// General banded matrix with partial-pivoting LU, LAPACK band storage.
pub struct Banded {
    n: usize,
    kl: usize,
    ku: usize,
    ldab: usize,
    data: Vec<f64>,
    pivots: Vec<usize>,
}

impl Banded {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ldab = 2 * kl + ku + 1;
        Banded { n, kl, ku, ldab, data: vec![0.0; ldab * n], pivots: vec![0; n] }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i + self.ku >= j && j + self.kl >= i, "entry ({i},{j}) outside band");
        (self.kl + self.ku + i - j) * self.n + j
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let k = self.idx(i, j);
        self.data[k] += value;
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let k = self.idx(i, j);
        self.data[k] = value;
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[(self.kl + self.ku + i - j) * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        let k = (self.kl + self.ku + i - j) * self.n + j;
        &mut self.data[k]
    }

    /// In-place LU with partial pivoting. Fill-in stays inside the widened band.
    pub fn lu_factor(&mut self) -> Result<()> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let mut ju = 0usize;
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let mut jp = 0usize;
            let mut pmax = self.at(j, j).abs();
            for i in 1..=km {
                let v = self.at(j + i, j).abs();
                if v > pmax {
                    pmax = v;
                    jp = i;
                }
            }
            self.pivots[j] = j + jp;
            if pmax == 0.0 {
                return Err(Error::Numerical(format!("banded LU: zero pivot column {j}")));
            }
            ju = ju.max((j + ku + jp).min(n - 1));
            if jp != 0 {
                for c in j..=ju {
                    // swapped rows both lie in the widened band
                    let a = self.at(j, c);
                    let b = self.at(j + jp, c);
                    *self.at_mut(j, c) = b;
                    *self.at_mut(j + jp, c) = a;
                }
            }
            let pivot = self.at(j, j);
            for i in 1..=km {
                *self.at_mut(j + i, j) /= pivot;
            }
            for c in (j + 1)..=ju {
                let ajc = self.at(j, c);
                if ajc != 0.0 {
                    for i in 1..=km {
                        let lij = self.at(j + i, j);
                        *self.at_mut(j + i, c) -= lij * ajc;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        let kl = self.kl;
        for j in 0..n.saturating_sub(1) {
            let jp = self.pivots[j];
            if jp != j {
                b.swap(j, jp);
            }
            let lm = kl.min(n - 1 - j);
            for i in 1..=lm {
                b[j + i] -= self.at(j + i, j) * b[j];
            }
        }
        for j in (0..n).rev() {
            b[j] /= self.at(j, j);
            let lm = (self.kl + self.ku).min(j);
            for i in 1..=lm {
                b[j - i] -= self.at(j - i, j) * b[j];
            }
        }
    }
}

/// Two-point boundary value problem for a planar autonomous field:
/// collocation equations per interval, one linear right boundary condition,
/// and one phase condition v(x_phase) = phase_value pinning translation.
pub struct PlanarBvp<'a> {
    pub rhs: &'a dyn Fn(Vector2<f64>) -> Vector2<f64>,
    pub jac: &'a dyn Fn(Vector2<f64>) -> Matrix2<f64>,
    /// row vector l such that l · (U(x_end) - u_end) = 0
    pub right_bc_row: Vector2<f64>,
    pub right_bc_state: Vector2<f64>,
    pub phase_value: f64,
}

pub struct BvpSolution {
    pub xs: Vec<f64>,
    pub states: Vec<Vector2<f64>>,
    pub newton_trace: Vec<f64>,
    /// sup over interval quarter points of the interpolant's ODE residual
    pub residual_offmesh: f64,
    /// sup over interval midpoints (collocation points) of the same residual
    pub residual_midpoints: f64,
}

impl<'a> PlanarBvp<'a> {
    /// Solve on the given mesh (must contain the phase abscissa as a node),
    /// refining intervals until the off-collocation residual is below
    /// `residual_tol` or the refinement budget is exhausted.
    pub fn solve(
        &self,
        mut xs: Vec<f64>,
        mut states: Vec<Vector2<f64>>,
        phase_index: usize,
        residual_tol: f64,
    ) -> Result<BvpSolution> {
        assert_eq!(xs.len(), states.len());
        let mut k_phase = phase_index;
        let mut trace_all: Vec<f64> = vec![];
        for _pass in 0..12 {
            let trace = self.newton(&xs, &mut states, k_phase)?;
            trace_all.extend(trace);
            let (worst, refine) = self.flag_intervals(&xs, &states, residual_tol);
            if refine.is_empty() || xs.len() > 40_000 {
                let (residual_offmesh, residual_midpoints) = self.residual_report(&xs, &states);
                if residual_offmesh > residual_tol * 10.0 {
                    return Err(Error::Numerical(format!(
                        "collocation residual {residual_offmesh:.3e} above tolerance after refinement"
                    )));
                }
                return Ok(BvpSolution { xs, states, newton_trace: trace_all, residual_offmesh, residual_midpoints });
            }
            let _ = worst;
            // split flagged intervals, warm-starting new nodes from the interpolant
            let mut new_xs = Vec::with_capacity(xs.len() + refine.len());
            let mut new_states = Vec::with_capacity(xs.len() + refine.len());
            let mut flag_iter = refine.iter().peekable();
            for i in 0..xs.len() - 1 {
                new_xs.push(xs[i]);
                new_states.push(states[i]);
                if flag_iter.peek() == Some(&&i) {
                    flag_iter.next();
                    let xm = 0.5 * (xs[i] + xs[i + 1]);
                    new_xs.push(xm);
                    new_states.push(self.interpolate(&xs, &states, i, xm));
                }
            }
            new_xs.push(*xs.last().unwrap());
            new_states.push(*states.last().unwrap());
            k_phase = new_xs
                .iter()
                .position(|&x| x == xs[k_phase])
                .expect("phase node preserved by refinement");
            xs = new_xs;
            states = new_states;
        }
        Err(Error::Numerical("collocation refinement did not converge in 12 passes".into()))
    }

    fn newton(&self, xs: &[f64], states: &mut [Vector2<f64>], k_phase: usize) -> Result<Vec<f64>> {
        let n_nodes = xs.len();
        let n = 2 * n_nodes;
        let mut trace = vec![];
        let mut res = vec![0.0; n];
        self.residual_vector(xs, states, k_phase, &mut res);
        let mut rnorm = inf_norm(&res);
        trace.push(rnorm);

        for _iter in 0..60 {
            if rnorm < 1e-12 {
                return Ok(trace);
            }
            let mut jac = Banded::zeros(n, 2, 3);
            self.assemble_jacobian(xs, states, k_phase, &mut jac);
            jac.lu_factor()?;
            let mut step: Vec<f64> = res.iter().map(|r| -r).collect();
            jac.solve_in_place(&mut step);

            // damped update
            let mut lambda = 1.0f64;
            let backup: Vec<Vector2<f64>> = states.to_vec();
            let mut accepted = false;
            for _ in 0..10 {
                for (i, s) in states.iter_mut().enumerate() {
                    s.x = backup[i].x + lambda * step[2 * i];
                    s.y = backup[i].y + lambda * step[2 * i + 1];
                }
                self.residual_vector(xs, states, k_phase, &mut res);
                let new_norm = inf_norm(&res);
                if new_norm < rnorm * (1.0 - 0.25 * lambda) || new_norm < 1e-13 {
                    rnorm = new_norm;
                    trace.push(rnorm);
                    accepted = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !accepted {
                states.copy_from_slice(&backup);
                return Err(Error::SolverNonconvergence {
                    iterations: trace.len(),
                    last_residual: rnorm,
                    trace,
                });
            }
        }
        if rnorm < 1e-10 {
            Ok(trace)
        } else {
            Err(Error::SolverNonconvergence { iterations: trace.len(), last_residual: rnorm, trace })
        }
    }

    #[inline]
    fn row_of_interval(&self, i: usize, k_phase: usize) -> usize {
        2 * i + usize::from(i >= k_phase)
    }

    fn interval_residual(&self, h: f64, ua: Vector2<f64>, ub: Vector2<f64>) -> Vector2<f64> {
        let fa = (self.rhs)(ua);
        let fb = (self.rhs)(ub);
        let um = 0.5 * (ua + ub) + (h / 8.0) * (fa - fb);
        let fm = (self.rhs)(um);
        ub - ua - (h / 6.0) * (fa + 4.0 * fm + fb)
    }

    fn residual_vector(&self, xs: &[f64], states: &[Vector2<f64>], k_phase: usize, out: &mut [f64]) {
        let n_int = xs.len() - 1;
        for i in 0..n_int {
            let h = xs[i + 1] - xs[i];
            let r = self.interval_residual(h, states[i], states[i + 1]);
            let row = self.row_of_interval(i, k_phase);
            out[row] = r.x;
            out[row + 1] = r.y;
        }
        out[2 * k_phase] = states[k_phase].x - self.phase_value;
        let dev = states[xs.len() - 1] - self.right_bc_state;
        out[2 * xs.len() - 1] = self.right_bc_row.dot(&dev);
    }

    fn assemble_jacobian(&self, xs: &[f64], states: &[Vector2<f64>], k_phase: usize, jac: &mut Banded) {
        let n_int = xs.len() - 1;
        let id = Matrix2::identity();
        for i in 0..n_int {
            let h = xs[i + 1] - xs[i];
            let (ua, ub) = (states[i], states[i + 1]);
            let fa = (self.rhs)(ua);
            let fb = (self.rhs)(ub);
            let um = 0.5 * (ua + ub) + (h / 8.0) * (fa - fb);
            let ja = (self.jac)(ua);
            let jb = (self.jac)(ub);
            let jm = (self.jac)(um);
            let da: Matrix2<f64> = -id - (h / 6.0) * (ja + 4.0 * jm * (0.5 * id + (h / 8.0) * ja));
            let db: Matrix2<f64> = id - (h / 6.0) * (jb + 4.0 * jm * (0.5 * id - (h / 8.0) * jb));
            let row = self.row_of_interval(i, k_phase);
            for r in 0..2 {
                for c in 0..2 {
                    jac.set(row + r, 2 * i + c, da[(r, c)]);
                    jac.set(row + r, 2 * (i + 1) + c, db[(r, c)]);
                }
            }
        }
        jac.set(2 * k_phase, 2 * k_phase, 1.0);
        let last = xs.len() - 1;
        jac.set(2 * xs.len() - 1, 2 * last, self.right_bc_row.x);
        jac.set(2 * xs.len() - 1, 2 * last + 1, self.right_bc_row.y);
    }

    /// Cubic Hermite interpolant on interval i, built from node values and the
    /// exact vector field at the nodes.
    pub fn interpolate(&self, xs: &[f64], states: &[Vector2<f64>], i: usize, x: f64) -> Vector2<f64> {
        let h = xs[i + 1] - xs[i];
        let t = (x - xs[i]) / h;
        let (ua, ub) = (states[i], states[i + 1]);
        let fa = (self.rhs)(ua);
        let fb = (self.rhs)(ub);
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        h00 * ua + (h10 * h) * fa + h01 * ub + (h11 * h) * fb
    }

    fn interp_derivative(&self, xs: &[f64], states: &[Vector2<f64>], i: usize, x: f64) -> Vector2<f64> {
        let h = xs[i + 1] - xs[i];
        let t = (x - xs[i]) / h;
        let (ua, ub) = (states[i], states[i + 1]);
        let fa = (self.rhs)(ua);
        let fb = (self.rhs)(ub);
        let dh00 = 6.0 * t * (t - 1.0) / h;
        let dh10 = (1.0 - t) * (1.0 - 3.0 * t);
        let dh01 = -6.0 * t * (t - 1.0) / h;
        let dh11 = t * (3.0 * t - 2.0);
        dh00 * ua + dh10 * fa + dh01 * ub + dh11 * fb
    }

    fn flag_intervals(&self, xs: &[f64], states: &[Vector2<f64>], tol: f64) -> (f64, Vec<usize>) {
        let mut worst = 0.0f64;
        let mut flagged = vec![];
        for i in 0..xs.len() - 1 {
            let mut local = 0.0f64;
            for frac in [0.25, 0.75] {
                let x = xs[i] + frac * (xs[i + 1] - xs[i]);
                let u = self.interpolate(xs, states, i, x);
                let d = self.interp_derivative(xs, states, i, x);
                let r = (d - (self.rhs)(u)).abs().max();
                local = local.max(r);
            }
            worst = worst.max(local);
            if local > tol {
                flagged.push(i);
            }
        }
        (worst, flagged)
    }

    fn residual_report(&self, xs: &[f64], states: &[Vector2<f64>]) -> (f64, f64) {
        let mut off = 0.0f64;
        let mut mid = 0.0f64;
        for i in 0..xs.len() - 1 {
            for frac in [0.25, 0.5, 0.75] {
                let x = xs[i] + frac * (xs[i + 1] - xs[i]);
                let u = self.interpolate(xs, states, i, x);
                let d = self.interp_derivative(xs, states, i, x);
                let r = (d - (self.rhs)(u)).abs().max();
                if frac == 0.5 {
                    mid = mid.max(r);
                } else {
                    off = off.max(r);
                }
            }
        }
        (off, mid)
    }
}

#[inline]
fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, b| a.max(b.abs()))
}
