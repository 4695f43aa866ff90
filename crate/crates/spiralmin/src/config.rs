//! Numeric configuration and the tolerances used by the verification layers.
//!
//! Every threshold referenced by a check or an acceptance test is named here
//! rather than inlined at the call site.

use serde::{Deserialize, Serialize};

/// Tolerances and sample counts shared by the numeric routines.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct NumericConfig {
    /// Absolute residual target for scalar root finding (bisection + polish).
    pub root_tol: f64,
    /// Relative tolerance for adaptive quadrature.
    pub quad_tol: f64,
    /// Number of stored samples per basic-domain pass.
    pub n_samples: usize,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            root_tol: 1e-12,
            quad_tol: 1e-11,
            n_samples: 512,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.root_tol > 0.0) || !(self.quad_tol > 0.0) {
            return Err(crate::Error::Domain("tolerances must be positive".into()));
        }
        if self.n_samples < 16 {
            return Err(crate::Error::Domain(format!(
                "n_samples = {} below minimum 16",
                self.n_samples
            )));
        }
        Ok(())
    }
}

/// Named verification tolerances.
pub mod tol {
    /// Residual bound on the profile critical-point equation.
    pub const CRITICAL_POINT_RESIDUAL: f64 = 1e-12;
    /// Absolute bound on the radicand at computed domain endpoints
    /// (moderate parameter scales).
    pub const ENDPOINT_RADICAND: f64 = 1e-12;
    /// Relative gap below which the pendulum amplitude counts as degenerate.
    pub const DEGENERATE_REL_GAP: f64 = 1e-12;
    /// Relative gap below which angle integrals switch to analytic
    /// threshold limits.
    pub const NEAR_THRESHOLD_REL_GAP: f64 = 1e-9;
    /// Agreement between the quadrature J1 and the pendulum delta_s1.
    pub const J1_CROSS_CHECK: f64 = 1e-10;
    /// Residual for solved closure targets |J1 - pi q|.
    pub const TARGET_RESIDUAL: f64 = 1e-9;
    /// Residual for the 2x2 double-closure Newton solve.
    pub const DOUBLE_CLOSURE_RESIDUAL: f64 = 1e-8;
    /// Shape-operator trace bound along solution curves.
    pub const TRACE_RESIDUAL: f64 = 1e-8;
    /// Finite-difference mean-curvature bound at h = 1e-3 with Richardson.
    pub const MEAN_CURVATURE_FD: f64 = 1e-4;
    /// Legendrian angle constancy bound for C = -1 curves.
    pub const LEGENDRIAN_CONST: f64 = 1e-8;
    /// C-totally-real defect bound (max of |a^2 s1' + b^2 s2'|).
    pub const CTOTALLY_REAL: f64 = 1e-10;
    /// Laplacian eigenvalue residual bound along solution curves.
    pub const TAKAHASHI_RESIDUAL: f64 = 1e-7;
    /// Great-circle second-derivative bound for k1 = k2 = 0 curves.
    pub const GREAT_CIRCLE_SECOND: f64 = 1e-6;
    /// Great-circle unit-speed bound.
    pub const GREAT_CIRCLE_SPEED: f64 = 1e-8;
    /// Trace ratio identity |b^2 s2' - C a^2 s1'| at interior samples.
    pub const RATIO_IDENTITY: f64 = 1e-12;
    /// Theta cross-identity relative bound.
    pub const THETA_IDENTITY: f64 = 1e-10;
    /// Arc-parameter rate identity relative bound.
    pub const ARC_RATE_IDENTITY: f64 = 1e-9;
    /// Steady trace residual at steady_ratio outputs.
    pub const STEADY_TRACE: f64 = 1e-12;
}
