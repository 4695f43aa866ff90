//! Per-pass complex angle advances J1, J2 and their analytic limit values.
//!
//! J1 integrates tan s / sqrt(R) over the basic domain and equals the s1
//! advance of one pass; J2 integrates cot s / sqrt(R), so the s2 advance is
//! C * J2.  Both are evaluated on grids independent of the pendulum
//! integration so the cross-check against `delta_s1` is a real consistency
//! test.

use crate::config::tol;
use crate::integrate::{integrate, integrate_sqrt_endpoints, SqrtFactoredHalf};
use crate::profile::{basic_domain, critical_point, threshold, SpinParams};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Angle integrals over one basic-domain pass.
#[derive(Debug, Clone, Copy)]
pub struct AngleIntegrals {
    /// Advance of s1 per pass; positive.
    pub j1: f64,
    /// The cot-weighted integral; the s2 advance per pass is C * j2.
    /// Infinite for C = 0 with k2 = 0.
    pub j2: f64,
    pub estimated_error: f64,
}

/// Computes J1 and J2 by adaptive singular quadrature.
///
/// Within a relative gap of 1e-9 of the threshold, direct quadrature loses
/// precision and the analytic limits of the localized quadratic model are
/// returned instead.
pub fn angle_integrals(params: &SpinParams) -> Result<AngleIntegrals> {
    let dom = basic_domain(params)?;
    let m = dom.threshold;
    let rel_gap = (params.ctilde - m) / m;
    if rel_gap < tol::NEAR_THRESHOLD_REL_GAP {
        let j1 = threshold_limit_j1(params.k1, params.k2, params.c);
        let cot2 = 1.0 / dom.s_crit.tan().powi(2);
        return Ok(AngleIntegrals {
            j1,
            j2: j1 * cot2,
            estimated_error: j1 * rel_gap.sqrt(),
        });
    }

    let h1 = |s: f64| s.tan();
    let h2 = |s: f64| 1.0 / s.tan();
    let r = |s: f64| params.radicand(s);
    let rd = |s: f64| params.radicand_deriv(s);
    let quad_tol = 1e-12;

    let (j1, e1);
    let (mut j2, mut e2) = (f64::INFINITY, 0.0);
    if params.c == 0.0 && params.k2 == 0 {
        // regular left endpoint at 0; only the right endpoint is a turning
        // point, and the cot-weighted integrand diverges
        let split = 0.5 * dom.z_r;
        let half = SqrtFactoredHalf::right(dom.z_r, split);
        let f1 = |s: f64| h1(s) / r(s).sqrt();
        let (a, ea) = integrate(&f1, 1e-300, split, quad_tol);
        let (b, eb) = half.segment(&h1, &r, &rd, split, dom.z_r, quad_tol);
        j1 = a + b;
        e1 = ea + eb;
    } else {
        let split = dom.s_crit;
        let (v1, er1) = integrate_sqrt_endpoints(&h1, &r, &rd, dom.z_l, dom.z_r, split, 2, quad_tol);
        j1 = v1;
        e1 = er1;
        let (v2, er2) = integrate_sqrt_endpoints(&h2, &r, &rd, dom.z_l, dom.z_r, split, 2, quad_tol);
        j2 = v2;
        e2 = er2;
    }

    Ok(AngleIntegrals {
        j1,
        j2,
        estimated_error: e1 + e2,
    })
}

/// Limit of J1 as Ctilde grows without bound: pi / (2 (k1 + 1)), for every C.
pub fn limit_j1_infinity(k1: u32) -> f64 {
    PI / (2.0 * (k1 as f64 + 1.0))
}

/// Limit of J1 as Ctilde decreases to the threshold, for C in {0, -1}.
pub fn limit_j1_threshold(k1: u32, k2: u32, c: f64) -> Result<f64> {
    if c == 0.0 {
        if k2 == 0 {
            Ok(PI / (2.0 * (k1 as f64 + 1.0).sqrt()))
        } else {
            Ok(PI / (2.0 * (k1 as f64 + 1.0)).sqrt())
        }
    } else if c == -1.0 || c == 1.0 {
        let (x1, x2) = (k1 as f64 + 1.0, k2 as f64 + 1.0);
        Ok(x2.sqrt() * PI / (2.0 * x1 * (x1 + x2)).sqrt())
    } else {
        Err(Error::Domain(format!(
            "threshold limit only stated for C in {{0, -1}}, got {c}"
        )))
    }
}

/// Limit of J2 as Ctilde grows without bound: pi / (2 |C| (k2 + 1)).
pub fn limit_j2_infinity(k2: u32, c: f64) -> Result<f64> {
    if c == 0.0 {
        return Err(Error::Domain("J2 infinity limit requires C != 0".into()));
    }
    Ok(PI / (2.0 * c.abs() * (k2 as f64 + 1.0)))
}

/// Threshold limit of J1 for arbitrary C from the quadratic model of the
/// radicand at the profile minimum.
///
/// Specializes to the stated closed forms at C in {0, -1}; for C = k2 = 0
/// the domain loses the half around s = 0 and the limit halves.
pub(crate) fn threshold_limit_j1(k1: u32, k2: u32, c: f64) -> f64 {
    if let Ok(stated) = limit_j1_threshold(k1, k2, c) {
        return stated;
    }
    let s_c = critical_point(k1, k2, c);
    let m = threshold(k1, k2, c);
    // W(s) = m D(s) - N(s) has a maximum 0 at s_c; J1 -> tan(s_c) pi sqrt(2/|W''|)
    let w = |s: f64| {
        let (cs, sn) = (s.cos(), s.sin());
        m * cs.powi(2 * k1 as i32 + 2) * sn.powi(2 * k2 as i32 + 2)
            - crate::profile::numerator(c, s)
    };
    let h = 1e-4;
    let wpp = (w(s_c + h) - 2.0 * w(s_c) + w(s_c - h)) / (h * h);
    s_c.tan() * PI * (2.0 / wpp.abs()).sqrt()
}
