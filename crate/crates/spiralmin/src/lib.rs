//! Generating curves for spiral minimal products of spherical minimal
//! submanifolds.
//!
//! A spiral minimal product spins a pair of minimal immersions
//! f1: M1 -> S^{n1} and f2: M2 -> S^{n2} by a curve
//! gamma(t) = (a e^{i s1}, b e^{i s2}) in S^3 so that the combined map
//! (gamma_1 f1, gamma_2 f2) is again minimal.  The admissible curves form a
//! two-parameter pendulum family indexed by the angular-momentum ratio C and
//! an integration constant Ctilde.  This crate
//!
//! * evaluates the pendulum profile and its basic domain ([`profile`]),
//! * integrates the angle-rate system through its turning points and extends
//!   it by rotational reflection ([`pendulum`]),
//! * computes the per-pass complex angle advances and their analytic limits
//!   ([`quadrature`]),
//! * searches for parameters whose angle advances are rational multiples of
//!   pi and certifies the resulting closed curves with exact arithmetic
//!   ([`closure`]),
//! * solves the steady-magnitude family in closed form ([`steady`]),
//! * assembles full product immersions and verifies minimality through
//!   shape-operator traces, a finite-difference mean-curvature oracle, the
//!   Legendrian angle, and the Laplacian eigenfunction identity
//!   ([`geometry`]).
//!
//! The `spiralmin` binary exposes the same operations as subcommands; see the
//! crate examples for library usage.

pub mod closure;
pub mod config;
pub mod error;
pub mod export;
pub mod geometry;
pub mod integrate;
pub mod interp;
pub mod pendulum;
pub mod profile;
pub mod quadrature;
pub mod steady;

pub mod cli;

pub use config::NumericConfig;
pub use error::{Error, Result};
pub use profile::{basic_domain, critical_point, profile_value, threshold, BasicDomain, SpinParams};
