//! Spectral stability toolkit for viscous shock layers of 1-D compressible
//! Navier–Stokes with an ideal-gas closure, in rescaled Lagrangian coordinates.
//!
//! The pipeline per parameter point is: Rankine–Hugoniot endstates, traveling
//! wave profile, rigorous high-frequency radius, Evans function samples on a
//! semicircular contour, and a winding-number count of unstable eigenvalues.

pub mod eigensystem;
pub mod error;
pub mod evans;
pub mod gas;
pub mod ode;
pub mod profile;

pub use error::Error;
pub use gas::{Endstates, ModelParams};
