//! Exact computations for moduli spaces of abelian vortices on compact Kähler
//! manifolds.
//!
//! All scalars live in ℚ[π] ([`scalars::PiPoly`]); signs are decided
//! rigorously. The crate covers stability cones of gauged linear sigma
//! models, the graded cohomology rings of the resulting moduli spaces, the
//! Fourier–Mukai calculus on abelian varieties, and the volume, curvature and
//! energy formulas assembled from them.

pub mod cohomring;
pub mod cones;
pub mod error;
pub mod fourier_mukai;
pub mod geometry;
pub(crate) mod linalg;
pub(crate) mod lp;
pub mod maps;
pub mod metrics;
pub mod model_file;
pub mod moduli;
pub mod report;
pub mod scalars;
pub mod selftest;

pub use error::{Error, Result};
pub use scalars::PiPoly;
