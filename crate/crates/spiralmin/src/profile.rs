//! Pendulum profile function, its critical point, and the basic domain.
//!
//! The magnitude pair (a, b) = (cos s, sin s) of a generating curve swings
//! over the interval of s where
//!
//!   R(s) = Ctilde cos^(2k1+2)s sin^(2k2+2)s - (1 + (C^2 - 1) cos^2 s) > 0,
//!
//! equivalently where the profile
//!
//!   P_C(s) = (1 + (C^2 - 1) cos^2 s) / (cos^(2k1+2)s sin^(2k2+2)s)
//!
//! stays below Ctilde.  P_C has a single interior minimum, so the domain is
//! one interval whose endpoints are the pendulum turning points.

use crate::config::tol;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

/// Full parameter point of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinParams {
    /// Dimension of the first factor.
    pub k1: u32,
    /// Dimension of the second factor.
    pub k2: u32,
    /// Signed ratio of angular momenta of the two complex components.
    pub c: f64,
    /// Integration constant fixing the pendulum amplitude.
    pub ctilde: f64,
}

impl SpinParams {
    pub fn new(k1: u32, k2: u32, c: f64, ctilde: f64) -> Result<Self> {
        if !c.is_finite() {
            return Err(Error::Domain(format!("C must be finite, got {c}")));
        }
        if !(ctilde > 0.0) || !ctilde.is_finite() {
            return Err(Error::Domain(format!("Ctilde must be positive, got {ctilde}")));
        }
        Ok(SpinParams { k1, k2, c, ctilde })
    }

    /// Profile minimum below which the basic domain is empty.
    pub fn threshold(&self) -> f64 {
        threshold(self.k1, self.k2, self.c)
    }

    /// Radicand R(s) under the angle-rate square root.
    pub fn radicand(&self, s: f64) -> f64 {
        let (cs, sn) = (s.cos(), s.sin());
        let d = cs.powi(2 * self.k1 as i32 + 2) * sn.powi(2 * self.k2 as i32 + 2);
        self.ctilde * d - numerator(self.c, s)
    }

    /// d/ds of the radicand.
    pub fn radicand_deriv(&self, s: f64) -> f64 {
        let (cs, sn) = (s.cos(), s.sin());
        let d = cs.powi(2 * self.k1 as i32 + 2) * sn.powi(2 * self.k2 as i32 + 2);
        let dlog = -(2.0 * self.k1 as f64 + 2.0) * (sn / cs) + (2.0 * self.k2 as f64 + 2.0) * (cs / sn);
        self.ctilde * d * dlog + (self.c * self.c - 1.0) * (2.0 * sn * cs)
    }
}

/// The pendulum interval with its critical point and threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasicDomain {
    /// Left turning point (0 exactly when C = k2 = 0).
    pub z_l: f64,
    /// Right turning point.
    pub z_r: f64,
    /// Location of the profile minimum.
    pub s_crit: f64,
    /// Profile minimum P_C(s_crit), or 1 when C = k2 = 0.
    pub threshold: f64,
}

impl BasicDomain {
    pub fn width(&self) -> f64 {
        self.z_r - self.z_l
    }

    pub fn contains(&self, s: f64) -> bool {
        s > self.z_l && s < self.z_r
    }
}

/// 1 + (C^2 - 1) cos^2 s, computed as sin^2 s + C^2 cos^2 s to stay exact
/// near s = 0 where the naive form cancels completely.
pub(crate) fn numerator(c: f64, s: f64) -> f64 {
    let (cs, sn) = (s.cos(), s.sin());
    sn * sn + c * c * cs * cs
}

/// Evaluates the profile P_C(s) on (0, pi/2).
pub fn profile_value(k1: u32, k2: u32, c: f64, s: f64) -> Result<f64> {
    if !(s > 0.0 && s < FRAC_PI_2) {
        return Err(Error::Domain(format!("profile argument s = {s} outside (0, pi/2)")));
    }
    let (cs, sn) = (s.cos(), s.sin());
    let den = cs.powi(2 * k1 as i32 + 2) * sn.powi(2 * k2 as i32 + 2);
    Ok(numerator(c, s) / den)
}

/// Derivative in t = cos^2 s of the transformed profile numerator; the
/// profile critical point is its unique zero.  Strictly increasing in t.
fn t_derivative_numerator(k1: u32, k2: u32, c: f64, t: f64) -> f64 {
    let c2m1 = c * c - 1.0;
    c2m1 - (1.0 + c2m1 * t) * ((k1 as f64 + 1.0) / t - (k2 as f64 + 1.0) / (1.0 - t))
}

/// Unique critical point of the profile in (0, pi/2).
///
/// Returns 0 for C = k2 = 0 where the infimum sits at the boundary.  The
/// result depends on C only through C^2, so it is exactly even in C.
pub fn critical_point(k1: u32, k2: u32, c: f64) -> f64 {
    if c == 0.0 && k2 == 0 {
        return 0.0;
    }
    let g = |t: f64| t_derivative_numerator(k1, k2, c, t);
    // g is strictly increasing with g(0+) = -inf and g(1-) > 0
    let (mut lo, mut hi) = (1e-15, 1.0 - 1e-15);
    debug_assert!(g(lo) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-17 * hi {
            break;
        }
    }
    let t_c = 0.5 * (lo + hi);
    (t_c.sqrt()).acos()
}

/// Profile minimum P_C(s_C); 1 when C = k2 = 0.
pub fn threshold(k1: u32, k2: u32, c: f64) -> f64 {
    if c == 0.0 && k2 == 0 {
        return 1.0;
    }
    let s_c = critical_point(k1, k2, c);
    profile_value(k1, k2, c, s_c).expect("critical point is interior")
}

/// Solves for the maximal interval on which the radicand is positive.
///
/// ```
/// use spiralmin::{basic_domain, SpinParams};
/// // the classical singly spiral torus setting: domain (0, pi/3)
/// let dom = basic_domain(&SpinParams::new(0, 0, 0.0, 4.0).unwrap()).unwrap();
/// assert_eq!(dom.z_l, 0.0);
/// assert!((dom.z_r - std::f64::consts::FRAC_PI_3).abs() < 1e-14);
/// ```
pub fn basic_domain(params: &SpinParams) -> Result<BasicDomain> {
    let s_crit = critical_point(params.k1, params.k2, params.c);
    let m = params.threshold();
    if params.ctilde <= m {
        return Err(Error::EmptyDomain {
            ctilde: params.ctilde,
            threshold: m,
        });
    }
    let rel_gap = (params.ctilde - m) / m;
    if rel_gap < tol::DEGENERATE_REL_GAP {
        return Err(Error::Degenerate { rel_gap });
    }

    if params.c == 0.0 && params.k2 == 0 {
        // the radicand factors as sin^2 s (Ctilde cos^(2k1+2)s - 1):
        // the left endpoint is 0 and the right one has a closed form
        let z_r = params
            .ctilde
            .powf(-1.0 / (2.0 * params.k1 as f64 + 2.0))
            .acos();
        return Ok(BasicDomain {
            z_l: 0.0,
            z_r,
            s_crit,
            threshold: m,
        });
    }

    // bracket ends: shrink geometrically toward the interval ends until the
    // radicand turns negative (large Ctilde pushes the turning points out)
    let mut lo = 1e-9;
    while params.radicand(lo) >= 0.0 && lo > 1e-300 {
        lo *= 1e-3;
    }
    let mut gap = 1e-9;
    while params.radicand(FRAC_PI_2 - gap) >= 0.0 && gap > 1e-16 {
        gap *= 1e-3;
    }
    if params.radicand(lo) >= 0.0 || params.radicand(FRAC_PI_2 - gap) >= 0.0 {
        return Err(Error::Domain(format!(
            "turning points unresolvable in double precision at Ctilde = {}",
            params.ctilde
        )));
    }
    let z_l = bisect_radicand(params, lo, s_crit, true)?;
    let z_r = bisect_radicand(params, s_crit, FRAC_PI_2 - gap, false)?;
    Ok(BasicDomain {
        z_l,
        z_r,
        s_crit,
        threshold: m,
    })
}

/// Bisection on the radicand over a bracket with R < 0 on the outer side,
/// followed by a few Newton polish steps.
fn bisect_radicand(params: &SpinParams, lo0: f64, hi0: f64, left_side: bool) -> Result<f64> {
    let (mut lo, mut hi) = (lo0, hi0);
    let (r_lo, r_hi) = (params.radicand(lo), params.radicand(hi));
    let ok = if left_side { r_lo < 0.0 && r_hi > 0.0 } else { r_lo > 0.0 && r_hi < 0.0 };
    if !ok {
        return Err(Error::Domain(format!(
            "radicand does not change sign on [{lo0}, {hi0}]"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let neg = params.radicand(mid) < 0.0;
        if neg == left_side {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < f64::EPSILON * hi.abs() {
            break;
        }
    }
    let mut z = 0.5 * (lo + hi);
    for _ in 0..4 {
        let r = params.radicand(z);
        let dr = params.radicand_deriv(z);
        if dr == 0.0 {
            break;
        }
        let step = r / dr;
        let z_new = z - step;
        if z_new > lo0.min(hi0) && z_new < lo0.max(hi0) {
            z = z_new;
        } else {
            break;
        }
    }
    Ok(z)
}
