//! Existence atlas and numerical solution families for the one- and
//! n-dimensional equation `-Delta u = |x|^sigma u^p`.
//!
//! The crate is organized around the problem's structure:
//!
//! - [`numerics`] — adaptive RK45 integration with event detection,
//!   quadratic characteristic roots, fixed-point harness.
//! - [`atlas`] — the complete existence/non-existence decision table over
//!   `(n, p, sigma, domain)` with citation-stable rationale tags.
//! - [`closed_form`] — every explicit solution family, with exact
//!   derivatives and a strong-form residual check.
//! - [`transforms`] — Kelvin duality, the scaling group, and the reduction
//!   to the autonomous phase-plane equation.
//! - [`lienard`] — the autonomous system `V'' + (2a-1)V' + a(1-a)(V^p - V) = 0`:
//!   equilibria, linearization, energy, orbit integration and classification.
//! - [`family`] — the one-parameter local family via Picard iteration on the
//!   singular integral equation, global continuation, and the below-power-law
//!   failure and Sturm oscillation experiments.
//! - [`radial`] — radial shooting in dimension n >= 2 and non-existence scans.
//! - [`verify`] — the machine-checkable verification suites behind the CLI.

pub mod atlas;
pub mod closed_form;
pub mod exec;
pub mod family;
pub mod io;
pub mod lienard;
pub mod numerics;
pub mod radial;
pub mod transforms;
pub mod verify;

pub use atlas::{classify, critical_exponent, Domain, ProblemParams, RegimeVerdict};
pub use closed_form::ClosedForm;
pub use numerics::{Event, Trajectory};
