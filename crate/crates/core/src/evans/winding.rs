//! Winding-number computation from sampled values on a closed contour.

use crate::error::{Error, Result};
use crate::eigensystem::C;

/// Sum of principal argument increments around a closed sample loop
/// (first sample = last sample not required; the loop is closed cyclically).
/// Returns (winding, max |arg step|).
pub fn winding_from_samples(values: &[C]) -> Result<(i64, f64)> {
    if values.len() < 3 {
        return Err(Error::Domain("winding needs at least three samples".into()));
    }
    let max_mag = values.iter().map(|d| d.norm()).fold(0.0f64, f64::max);
    if max_mag == 0.0 {
        return Err(Error::ZeroOnContour { re: f64::NAN, im: f64::NAN, magnitude: 0.0 });
    }
    let mut total = 0.0f64;
    let mut max_step = 0.0f64;
    let n = values.len();
    for i in 0..n {
        let a = values[i];
        let b = values[(i + 1) % n];
        if a.norm() < 1e-12 * max_mag || b.norm() < 1e-12 * max_mag {
            let z = if a.norm() < b.norm() { a } else { b };
            return Err(Error::ZeroOnContour { re: z.re, im: z.im, magnitude: z.norm() });
        }
        let step = (b / a).arg();
        max_step = max_step.max(step.abs());
        total += step;
    }
    let winding = (total / (2.0 * std::f64::consts::PI)).round();
    if (total / (2.0 * std::f64::consts::PI) - winding).abs() > 1e-6 {
        return Err(Error::Numerical(format!("argument sum {total} is not a multiple of 2π")));
    }
    Ok((winding as i64, max_step))
}
