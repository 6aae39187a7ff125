//! Solvers for the Cauchy problem of the Laplace equation in the annulus
//! `ρ < |z| < 1`: integral-kernel representations, an exact
//! separation-of-variables oracle, Hadamard's instability example and a
//! spectral-cutoff regularizer.

pub mod boundary;
pub mod cli;
pub mod error;
pub mod hadamard;
pub mod kernels;
pub mod oracle;

pub use boundary::{CauchyData, SobolevOrder, TrigSeries};
pub use error::{Error, Result};
pub use oracle::{Annulus, Field, ModeKind, PolarGrid, PolarPoint};
