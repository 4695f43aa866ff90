//! Integration of the pendulum angle-rate system and the rotational
//! reflection extension producing sampled generating curves in S^3.
//!
//! Over the basic domain the angle rates are
//!
//!   (s1', s2') = (tan s, C cot s) / sqrt(R(s)),     R from [`crate::profile`],
//!
//! with the sign convention s1' > 0, so s2' carries sign(C).  The rates blow
//! up integrably at the turning points; every cumulative integral runs
//! through the factored square-root substitution of [`crate::integrate`].
//! A curve stores one fundamental pass and resolves further passes through
//! the reflection rule (pass index -> parity and angle offsets) instead of
//! duplicated samples.

use crate::integrate::SqrtFactoredHalf;
use crate::interp::MonotoneCubic;
use crate::profile::{basic_domain, BasicDomain, SpinParams};
use crate::{Error, Result};
use std::f64::consts::PI;

/// One stored state of a generating curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    /// Global pendulum coordinate (unfolded across passes).
    pub s: f64,
    /// Arc length along the curve.
    pub t_arc: f64,
    pub a: f64,
    pub b: f64,
    pub s1: f64,
    pub s2: f64,
}

/// Magnitudes and phases of a curve point.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub a: f64,
    pub b: f64,
    pub s1: f64,
    pub s2: f64,
}

impl CurvePoint {
    /// Ambient coordinates (Re g1, Im g1, Re g2, Im g2) in S^3.
    pub fn ambient(&self) -> [f64; 4] {
        [
            self.a * self.s1.cos(),
            self.a * self.s1.sin(),
            self.b * self.s2.cos(),
            self.b * self.s2.sin(),
        ]
    }
}

/// Analytic 2-jet of a curve in its arc parameter.
#[derive(Debug, Clone, Copy)]
pub struct CurveJet2 {
    pub a: f64,
    pub a_d: f64,
    pub a_dd: f64,
    pub b: f64,
    pub b_d: f64,
    pub b_dd: f64,
    pub s1: f64,
    pub s1_d: f64,
    pub s1_dd: f64,
    pub s2: f64,
    pub s2_d: f64,
    pub s2_dd: f64,
}

/// Common interface of pendulum and steady generating curves.
pub trait SphereCurve {
    /// Covered arc-length range, starting at 0.
    fn arc_span(&self) -> f64;
    /// Interpolated evaluation.
    fn point(&self, t_arc: f64) -> Result<CurvePoint>;
    /// Evaluation refined to quadrature accuracy; the finite-difference
    /// verification layers use this.
    fn point_precise(&self, t_arc: f64) -> Result<CurvePoint>;
    /// Analytic derivatives in the arc parameter at an interior point.
    fn jet2(&self, t_arc: f64) -> Result<CurveJet2>;
}

/// Theta = (a s1')^2 + (b s2')^2 expressed through the radicand.
pub fn theta(params: &SpinParams, s: f64) -> Result<f64> {
    let r = interior_radicand(params, s)?;
    Ok(crate::profile::numerator(params.c, s) / r)
}

/// Angle rates (s1', s2') in the pendulum coordinate.
pub fn angle_rates(params: &SpinParams, s: f64) -> Result<(f64, f64)> {
    let r = interior_radicand(params, s)?;
    let sqrt_r = r.sqrt();
    Ok((s.tan() / sqrt_r, params.c / s.tan() / sqrt_r))
}

fn interior_radicand(params: &SpinParams, s: f64) -> Result<f64> {
    if !(s > 0.0 && s < PI / 2.0) {
        return Err(Error::Domain(format!("s = {s} outside (0, pi/2)")));
    }
    let r = params.radicand(s);
    if r <= 0.0 {
        return Err(Error::Domain(format!(
            "s = {s} outside the open basic domain (radicand {r:e})"
        )));
    }
    Ok(r)
}

/// Rates, their s-derivatives and Theta at one interior point.
#[derive(Debug, Clone, Copy)]
pub struct RateJet {
    pub s: f64,
    pub a: f64,
    pub b: f64,
    pub s1_d: f64,
    pub s2_d: f64,
    pub s1_dd: f64,
    pub s2_dd: f64,
    pub theta: f64,
    pub theta_d: f64,
}

/// Closed-form rate data with an optional scale factor on the rates.
///
/// `rate_scale` = 1 is the solution curve; any other value yields an
/// off-solution curve used by the perturbation studies.
pub fn rate_jet(params: &SpinParams, s: f64, rate_scale: f64) -> Result<RateJet> {
    let r = interior_radicand(params, s)?;
    let (cs, sn) = (s.cos(), s.sin());
    let (tan, cot) = (sn / cs, cs / sn);
    let r_d = params.radicand_deriv(s);
    let sqrt_r = r.sqrt();
    let l = rate_scale;

    let s1_d = l * tan / sqrt_r;
    let s2_d = l * params.c * cot / sqrt_r;
    let s1_dd = l * (1.0 / (cs * cs) / sqrt_r - tan * r_d / (2.0 * r * sqrt_r));
    let s2_dd = l * params.c * (-1.0 / (sn * sn) / sqrt_r - cot * r_d / (2.0 * r * sqrt_r));

    let n = crate::profile::numerator(params.c, s);
    let n_d = -(params.c * params.c - 1.0) * (2.0 * sn * cs);
    let theta = l * l * n / r;
    let theta_d = l * l * (n_d * r - n * r_d) / (r * r);

    Ok(RateJet {
        s,
        a: cs,
        b: sn,
        s1_d,
        s2_d,
        s1_dd,
        s2_dd,
        theta,
        theta_d,
    })
}

/// The three cumulative integrands in h/sqrt(R) form: arc speed and the two
/// angle rates.
struct PassIntegrands {
    params: SpinParams,
    lambda: f64,
}

impl PassIntegrands {
    fn radicand(&self) -> impl Fn(f64) -> f64 + '_ {
        move |s| self.params.radicand(s)
    }

    fn radicand_deriv(&self) -> impl Fn(f64) -> f64 + '_ {
        move |s| self.params.radicand_deriv(s)
    }

    /// dt_arc/ds = sqrt(1 + lambda^2 Theta) = sqrt(R + lambda^2 N) / sqrt(R)
    fn h_speed(&self) -> impl Fn(f64) -> f64 + '_ {
        move |s| {
            let n = crate::profile::numerator(self.params.c, s);
            (self.params.radicand(s) + self.lambda * self.lambda * n).sqrt()
        }
    }

    fn h_rate1(&self) -> impl Fn(f64) -> f64 + '_ {
        |s: f64| s.tan()
    }

    fn h_rate2(&self) -> impl Fn(f64) -> f64 + '_ {
        move |s: f64| self.params.c / s.tan()
    }

    /// (dt, ds1, ds2) over [sa, sb] contained in one half of the domain.
    fn half_segment(&self, half: &SqrtFactoredHalf, sa: f64, sb: f64, tol: f64) -> (f64, f64, f64) {
        let r = self.radicand();
        let rd = self.radicand_deriv();
        let dt = half.segment(&self.h_speed(), &r, &rd, sa, sb, tol).0;
        let d1 = self.lambda * half.segment(&self.h_rate1(), &r, &rd, sa, sb, tol).0;
        let d2 = if self.params.c == 0.0 {
            0.0
        } else {
            self.lambda * half.segment(&self.h_rate2(), &r, &rd, sa, sb, tol).0
        };
        (dt, d1, d2)
    }

    /// (dt, ds1, ds2) over [sa, sb] where the integrands are regular (the
    /// flat left portion of the C = k2 = 0 domain).
    fn plain_segment(&self, sa: f64, sb: f64, tol: f64) -> (f64, f64, f64) {
        let r = self.radicand();
        let speed = self.h_speed();
        let f_t = |s: f64| speed(s) / r(s).sqrt();
        let rate1 = self.h_rate1();
        let f_1 = |s: f64| rate1(s) / r(s).sqrt();
        let dt = crate::integrate::integrate(&f_t, sa, sb, tol).0;
        let d1 = self.lambda * crate::integrate::integrate(&f_1, sa, sb, tol).0;
        (dt, d1, 0.0)
    }

    /// (dt, ds1, ds2) over an arbitrary [sa, sb] inside the domain, split
    /// according to the pass geometry.
    fn segment(&self, geo: &PassGeometry, sa: f64, sb: f64, tol: f64) -> (f64, f64, f64) {
        let right = SqrtFactoredHalf::right(geo.z_r, geo.split);
        let left_part = |a: f64, b: f64| -> (f64, f64, f64) {
            if geo.left_singular {
                let left = SqrtFactoredHalf::left(geo.z_l, geo.split);
                self.half_segment(&left, a, b, tol)
            } else {
                self.plain_segment(a.max(1e-300), b, tol)
            }
        };
        if sb <= geo.split {
            left_part(sa, sb)
        } else if sa >= geo.split {
            self.half_segment(&right, sa, sb, tol)
        } else {
            let a = left_part(sa, geo.split);
            let b = self.half_segment(&right, geo.split, sb, tol);
            (a.0 + b.0, a.1 + b.1, a.2 + b.2)
        }
    }
}

/// How one pass splits into its regular and turning-point regions.
///
/// Generically both ends are simple turning points and the split sits at
/// the profile critical point; for C = k2 = 0 the left end is the regular
/// boundary s = 0 and the split is the domain midpoint.
#[derive(Debug, Clone, Copy)]
struct PassGeometry {
    z_l: f64,
    z_r: f64,
    split: f64,
    left_singular: bool,
}

impl PassGeometry {
    fn of(dom: &BasicDomain) -> Self {
        let left_singular = dom.s_crit > dom.z_l;
        PassGeometry {
            z_l: dom.z_l,
            z_r: dom.z_r,
            split: if left_singular {
                dom.s_crit
            } else {
                0.5 * (dom.z_l + dom.z_r)
            },
            left_singular,
        }
    }
}

/// Sampled generating curve: one fundamental pass plus the unfolding rule.
#[derive(Debug, Clone)]
pub struct GammaCurve {
    pub params: SpinParams,
    pub domain: BasicDomain,
    /// Completed basic-domain passes (pendulum half-periods).
    pub rounds: u32,
    /// Angle advance of s1 over one pass.
    pub delta_s1: f64,
    /// Angle advance of s2 over one pass (carries sign(C)).
    pub delta_s2: f64,
    /// Arc length of one pass.
    pub pass_arc: f64,
    rate_scale: f64,
    base: Vec<CurveSample>,
    sigma_of_t: MonotoneCubic,
    s1_of_t: MonotoneCubic,
    s2_of_t: MonotoneCubic,
}

/// Integrates one basic-domain pass with initial phases s1 = s2 = 0.
///
/// ```
/// use spiralmin::pendulum::integrate_basic;
/// use spiralmin::SpinParams;
/// // for k1 = k2 = 0 every pass advances s1 by exactly pi/2
/// let curve = integrate_basic(&SpinParams::new(0, 0, 1.0, 8.0).unwrap(), 64).unwrap();
/// assert!((curve.delta_s1 - std::f64::consts::FRAC_PI_2).abs() < 1e-10);
/// ```
pub fn integrate_basic(params: &SpinParams, n_samples: usize) -> Result<GammaCurve> {
    integrate_basic_tol(params, n_samples, crate::config::NumericConfig::default().quad_tol)
}

/// Integration at an explicit relative quadrature tolerance.
pub fn integrate_basic_tol(
    params: &SpinParams,
    n_samples: usize,
    quad_tol: f64,
) -> Result<GammaCurve> {
    integrate_basic_inner(params, n_samples, 1.0, quad_tol)
}

/// Integration with the angle rates multiplied by `rate_scale`.
///
/// For `rate_scale != 1` the result is deliberately *not* a solution curve:
/// uniformly perturbing Ctilde only moves within the solution family, so the
/// perturbation studies scale the rates instead (equivalent to perturbing
/// Ctilde in the leading radicand term alone).
pub fn integrate_basic_scaled(
    params: &SpinParams,
    n_samples: usize,
    rate_scale: f64,
) -> Result<GammaCurve> {
    integrate_basic_inner(
        params,
        n_samples,
        rate_scale,
        crate::config::NumericConfig::default().quad_tol,
    )
}

fn integrate_basic_inner(
    params: &SpinParams,
    n_samples: usize,
    rate_scale: f64,
    quad_tol: f64,
) -> Result<GammaCurve> {
    if n_samples < 16 {
        return Err(Error::Domain(format!("n_samples = {n_samples} < 16")));
    }
    let domain = basic_domain(params)?;
    let ints = PassIntegrands {
        params: *params,
        lambda: rate_scale,
    };

    let geo = PassGeometry::of(&domain);
    let n_half = n_samples / 2;
    let u_top = (geo.split - geo.z_l).sqrt();
    let v_top = (geo.z_r - geo.split).sqrt();

    let mut samples = Vec::with_capacity(2 * n_half + 1);
    samples.push(CurveSample {
        s: domain.z_l,
        t_arc: 0.0,
        a: domain.z_l.cos(),
        b: domain.z_l.sin(),
        s1: 0.0,
        s2: 0.0,
    });
    let mut acc = (0.0_f64, 0.0_f64, 0.0_f64);
    let mut push = |samples: &mut Vec<CurveSample>, s: f64, d: (f64, f64, f64)| {
        acc = (acc.0 + d.0, acc.1 + d.1, acc.2 + d.2);
        samples.push(CurveSample {
            s,
            t_arc: acc.0,
            a: s.cos(),
            b: s.sin(),
            s1: acc.1,
            s2: acc.2,
        });
    };

    for i in 1..=n_half {
        // singular left ends cluster knots by the square-root substitution;
        // the regular flat case uses a uniform grid
        let (s0, s1) = if geo.left_singular {
            (
                geo.z_l + (u_top * (i - 1) as f64 / n_half as f64).powi(2),
                geo.z_l + (u_top * i as f64 / n_half as f64).powi(2),
            )
        } else {
            (
                geo.z_l + (geo.split - geo.z_l) * (i - 1) as f64 / n_half as f64,
                geo.z_l + (geo.split - geo.z_l) * i as f64 / n_half as f64,
            )
        };
        let d = ints.segment(&geo, s0, s1, quad_tol);
        push(&mut samples, s1, d);
    }
    for j in (0..n_half).rev() {
        let s0 = geo.z_r - (v_top * (j + 1) as f64 / n_half as f64).powi(2);
        let s1 = geo.z_r - (v_top * j as f64 / n_half as f64).powi(2);
        let d = ints.segment(&geo, s0, s1, quad_tol);
        push(&mut samples, s1, d);
    }

    let last = *samples.last().unwrap();
    let (delta_s1, delta_s2, pass_arc) = (last.s1, last.s2, last.t_arc);

    let t_knots: Vec<f64> = samples.iter().map(|p| p.t_arc).collect();
    let sigma_of_t = MonotoneCubic::new(t_knots.clone(), samples.iter().map(|p| p.s).collect());
    let s1_of_t = MonotoneCubic::new(t_knots.clone(), samples.iter().map(|p| p.s1).collect());
    let s2_of_t = MonotoneCubic::new(t_knots, samples.iter().map(|p| p.s2).collect());

    Ok(GammaCurve {
        params: *params,
        domain,
        rounds: 1,
        delta_s1,
        delta_s2,
        pass_arc,
        rate_scale,
        base: samples,
        sigma_of_t,
        s1_of_t,
        s2_of_t,
    })
}

/// Extends a one-pass curve to `rounds` passes through the reflection rule.
pub fn extend_reflect(curve: &GammaCurve, rounds: u32) -> Result<GammaCurve> {
    if curve.rounds != 1 {
        return Err(Error::Domain(
            "extend_reflect expects a curve covering exactly one pass".into(),
        ));
    }
    if rounds == 0 {
        return Err(Error::Domain("rounds must be positive".into()));
    }
    let mut out = curve.clone();
    out.rounds = rounds;
    Ok(out)
}

/// Curve point as a unit 4-vector (two complex slots).
pub fn gamma_point(curve: &GammaCurve, t_arc: f64) -> Result<[f64; 4]> {
    Ok(curve.point(t_arc)?.ambient())
}

struct Unfold {
    pass: u32,
    even: bool,
    /// arc offset into the fundamental pass
    t_base: f64,
}

impl GammaCurve {
    pub fn rate_scale(&self) -> f64 {
        self.rate_scale
    }

    /// Arc length at pendulum coordinate s on the fundamental pass.
    pub fn arc_at(&self, s: f64) -> Result<f64> {
        if !(s >= self.domain.z_l && s <= self.domain.z_r) {
            return Err(Error::Domain(format!(
                "s = {s} outside the basic domain [{}, {}]",
                self.domain.z_l, self.domain.z_r
            )));
        }
        Ok(self.base_state_precise(s).0)
    }

    /// Samples of the fundamental pass.
    pub fn base_samples(&self) -> &[CurveSample] {
        &self.base
    }

    /// Materialized samples over all covered passes, strictly increasing in
    /// arc length.
    pub fn samples(&self) -> Vec<CurveSample> {
        let width = self.domain.width();
        let mut out = Vec::with_capacity(self.base.len() * self.rounds as usize);
        for pass in 0..self.rounds {
            let even = pass % 2 == 0;
            let iter: Box<dyn Iterator<Item = &CurveSample>> = if even {
                Box::new(self.base.iter())
            } else {
                Box::new(self.base.iter().rev())
            };
            for (idx, p) in iter.enumerate() {
                if pass > 0 && idx == 0 {
                    continue; // joint already emitted by the previous pass
                }
                let (s1, s2) = self.unfolded_angles(pass, p.s1, p.s2);
                let local = if even { p.s - self.domain.z_l } else { self.domain.z_r - p.s };
                let t = if even {
                    pass as f64 * self.pass_arc + p.t_arc
                } else {
                    (pass + 1) as f64 * self.pass_arc - p.t_arc
                };
                out.push(CurveSample {
                    s: self.domain.z_l + pass as f64 * width + local,
                    t_arc: t,
                    a: p.a,
                    b: p.b,
                    s1,
                    s2,
                });
            }
        }
        out
    }

    /// Angle values on pass `pass` given the base-pass values at the folded
    /// representative.
    fn unfolded_angles(&self, pass: u32, s1_base: f64, s2_base: f64) -> (f64, f64) {
        let l = pass as f64;
        let (s1, mut s2) = if pass % 2 == 0 {
            (l * self.delta_s1 + s1_base, l * self.delta_s2 + s2_base)
        } else {
            (
                (l + 1.0) * self.delta_s1 - s1_base,
                (l + 1.0) * self.delta_s2 - s2_base,
            )
        };
        if self.domain.z_l == 0.0 {
            // reflections across b = 0 flip the sign of the second slot,
            // recorded as a pi phase jump to keep b >= 0
            s2 += PI * (pass / 2) as f64;
        }
        (s1, s2)
    }

    fn unfold(&self, t_arc: f64) -> Result<Unfold> {
        let span = self.arc_span();
        let slack = 1e-9 * self.pass_arc;
        if !(t_arc >= -slack && t_arc <= span + slack) {
            return Err(Error::Domain(format!(
                "t_arc = {t_arc} outside the sampled range [0, {span}]"
            )));
        }
        let t = t_arc.clamp(0.0, span);
        let mut pass = (t / self.pass_arc).floor() as u32;
        if pass >= self.rounds {
            pass = self.rounds - 1;
        }
        let tau = t - pass as f64 * self.pass_arc;
        let even = pass % 2 == 0;
        let t_base = if even { tau } else { self.pass_arc - tau };
        Ok(Unfold { pass, even, t_base })
    }

    /// (t_arc, s1, s2) on the fundamental pass at sigma, anchored at the
    /// nearest stored sample and refined by local quadrature.
    fn base_state_precise(&self, sigma: f64) -> (f64, f64, f64) {
        let ints = PassIntegrands {
            params: self.params,
            lambda: self.rate_scale,
        };
        let quad_tol = 1e-13;
        let idx = match self
            .base
            .binary_search_by(|p| p.s.partial_cmp(&sigma).unwrap())
        {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        };
        let anchor = &self.base[idx.min(self.base.len() - 1)];
        let geo = PassGeometry::of(&self.domain);
        let d = if sigma >= anchor.s {
            ints.segment(&geo, anchor.s, sigma, quad_tol)
        } else {
            let d = ints.segment(&geo, sigma, anchor.s, quad_tol);
            (-d.0, -d.1, -d.2)
        };
        (anchor.t_arc + d.0, anchor.s1 + d.1, anchor.s2 + d.2)
    }

    /// Solves t_base(sigma) = t for sigma on the fundamental pass.
    ///
    /// The iteration runs in the substituted coordinate u = sqrt(distance to
    /// the turning point), where the arc length has a bounded nonzero slope
    /// even at the pass ends; a bracket guards the Newton steps.
    fn sigma_precise(&self, t_base: f64) -> f64 {
        let edge = 1e-12 * self.pass_arc;
        if t_base <= edge {
            return self.domain.z_l;
        }
        if t_base >= self.pass_arc - edge {
            return self.domain.z_r;
        }
        let geo = PassGeometry::of(&self.domain);
        let mid = (self.base.len() - 1) / 2;
        let t_mid = self.base[mid].t_arc;
        debug_assert!((self.base[mid].s - geo.split).abs() < 1e-12);

        // seed from the interpolant
        let sigma0 = self
            .sigma_of_t
            .eval(t_base)
            .clamp(self.domain.z_l, self.domain.z_r);

        if t_base <= t_mid && !geo.left_singular {
            // the flat left portion is regular: safeguarded Newton in s
            let (mut lo, mut hi) = (geo.z_l, geo.split);
            let mut sigma = sigma0.clamp(lo, hi);
            for _ in 0..60 {
                let t = self.base_state_precise(sigma).0;
                if t < t_base {
                    lo = sigma;
                } else {
                    hi = sigma;
                }
                let slope = rate_jet(&self.params, sigma.max(1e-12), self.rate_scale)
                    .map(|j| (1.0 + j.theta).sqrt())
                    .unwrap_or(f64::INFINITY);
                let newton = sigma - (t - t_base) / slope;
                let next = if newton > lo && newton < hi {
                    newton
                } else {
                    0.5 * (lo + hi)
                };
                if (next - sigma).abs() < 1e-16 {
                    break;
                }
                sigma = next;
            }
            return sigma;
        }

        let (root, sign, top) = if t_base <= t_mid {
            (geo.z_l, 1.0, (geo.split - geo.z_l).sqrt())
        } else {
            (geo.z_r, -1.0, (geo.z_r - geo.split).sqrt())
        };
        // residual is increasing in u on the left half, decreasing on the
        // right; normalize so that f(lo) < 0 < f(hi)
        let orient = sign;
        let f = |u: f64| -> (f64, f64) {
            let sigma = root + sign * u * u;
            let t = self.base_state_precise(sigma).0;
            // theta blows up at the root; a clamped evaluation keeps the
            // Newton slope finite and the bracket absorbs the mismatch
            let u_eval = u.max(1e-7);
            let theta = rate_jet(&self.params, root + sign * u_eval * u_eval, self.rate_scale)
                .map(|j| j.theta)
                .unwrap_or(0.0);
            let df = (1.0 + theta).sqrt() * 2.0 * u.max(1e-300);
            (orient * (t - t_base), orient * sign * df)
        };

        let (mut lo, mut hi) = (0.0f64, top);
        let mut u = (sign * (sigma0 - root)).max(0.0).sqrt().clamp(1e-3 * top, top);
        for _ in 0..60 {
            let (fu, dfu) = f(u);
            if fu == 0.0 {
                break;
            }
            if fu < 0.0 {
                lo = u;
            } else {
                hi = u;
            }
            let newton = u - fu / dfu;
            let next = if dfu.is_finite() && dfu > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (next - u).abs() < 1e-16 * top {
                u = next;
                break;
            }
            u = next;
            if hi - lo < 1e-16 * top {
                break;
            }
        }
        (root + sign * u * u).clamp(self.domain.z_l, self.domain.z_r)
    }
}

impl SphereCurve for GammaCurve {
    fn arc_span(&self) -> f64 {
        self.rounds as f64 * self.pass_arc
    }

    fn point(&self, t_arc: f64) -> Result<CurvePoint> {
        let u = self.unfold(t_arc)?;
        let t = u.t_base.clamp(0.0, self.pass_arc);
        let sigma = self
            .sigma_of_t
            .eval(t)
            .clamp(self.domain.z_l, self.domain.z_r);
        let (s1, s2) = self.unfolded_angles(u.pass, self.s1_of_t.eval(t), self.s2_of_t.eval(t));
        Ok(CurvePoint {
            a: sigma.cos(),
            b: sigma.sin(),
            s1,
            s2,
        })
    }

    fn point_precise(&self, t_arc: f64) -> Result<CurvePoint> {
        let u = self.unfold(t_arc)?;
        let sigma = self.sigma_precise(u.t_base);
        if sigma <= self.domain.z_l || sigma >= self.domain.z_r {
            let (s1b, s2b) = if sigma <= self.domain.z_l {
                (0.0, 0.0)
            } else {
                (self.delta_s1, self.delta_s2)
            };
            let (s1, s2) = self.unfolded_angles(u.pass, s1b, s2b);
            return Ok(CurvePoint {
                a: sigma.cos(),
                b: sigma.sin(),
                s1,
                s2,
            });
        }
        let (_, s1b, s2b) = self.base_state_precise(sigma);
        let (s1, s2) = self.unfolded_angles(u.pass, s1b, s2b);
        Ok(CurvePoint {
            a: sigma.cos(),
            b: sigma.sin(),
            s1,
            s2,
        })
    }

    fn jet2(&self, t_arc: f64) -> Result<CurveJet2> {
        let u = self.unfold(t_arc)?;
        let sigma = self.sigma_precise(u.t_base);
        if sigma <= self.domain.z_l + 1e-13 || sigma >= self.domain.z_r - 1e-13 {
            return Err(Error::Domain(
                "jet evaluation rejected at a turning point".into(),
            ));
        }
        let jet = rate_jet(&self.params, sigma, self.rate_scale)?;
        let (_, s1b, s2b) = self.base_state_precise(sigma);
        let (s1, s2) = self.unfolded_angles(u.pass, s1b, s2b);

        let p = if u.even { 1.0 } else { -1.0 };
        let one_theta = 1.0 + jet.theta;
        let sigma_d = p / one_theta.sqrt();
        let sigma_dd = -jet.theta_d / (2.0 * one_theta * one_theta);
        let (a, b) = (jet.a, jet.b);

        Ok(CurveJet2 {
            a,
            a_d: -b * sigma_d,
            a_dd: -a * sigma_d * sigma_d - b * sigma_dd,
            b,
            b_d: a * sigma_d,
            b_dd: -b * sigma_d * sigma_d + a * sigma_dd,
            s1,
            s1_d: jet.s1_d / one_theta.sqrt(),
            s1_dd: p * (jet.s1_dd / one_theta - jet.s1_d * jet.theta_d / (2.0 * one_theta * one_theta)),
            s2,
            s2_d: jet.s2_d / one_theta.sqrt(),
            s2_dd: p * (jet.s2_dd / one_theta - jet.s2_d * jet.theta_d / (2.0 * one_theta * one_theta)),
        })
    }
}

/// Closed-form phase antiderivatives for k1 = k2 = 0, C != 0.
///
/// Differences of the returned values across the domain match the numeric
/// integrals; the additive constants are the preferred ones for which the
/// endpoint limits are -pi/4 and +pi/4.
pub fn closed_form_angles_00(params: &SpinParams, s: f64) -> Result<(f64, f64)> {
    if params.k1 != 0 || params.k2 != 0 {
        return Err(Error::Domain("closed forms require k1 = k2 = 0".into()));
    }
    if params.c == 0.0 {
        return Err(Error::Domain("closed forms require C != 0".into()));
    }
    let r = interior_radicand(params, s)?;
    let (ct, c2) = (params.ctilde, params.c * params.c);
    let cos2 = s.cos() * s.cos();
    let s1 = -0.5 * ((-2.0 + (1.0 + ct - c2) * cos2) / (2.0 * r.sqrt())).atan();
    let s2 = 0.5 * ((-1.0 + ct - c2 + (1.0 - ct - c2) * cos2) / (2.0 * params.c * r.sqrt())).atan();
    Ok((s1, s2))
}

/// Closed-form s1 antiderivative for C = k1 = k2 = 0 (allowed Ctilde > 1).
pub fn closed_form_s1_000(ctilde: f64, s: f64) -> Result<f64> {
    let params = SpinParams::new(0, 0, 0.0, ctilde)?;
    let r = interior_radicand(&params, s)?;
    let cos2 = s.cos() * s.cos();
    Ok(-0.5 * ((-2.0 + (1.0 + ctilde) * cos2) / (2.0 * r.sqrt())).atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::tol;
    use crate::profile::threshold;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn params(k1: u32, k2: u32, c: f64, ct_mult: f64) -> SpinParams {
        let m = threshold(k1, k2, c);
        SpinParams::new(k1, k2, c, ct_mult * m).unwrap()
    }

    #[test]
    fn theta_values_at_known_points() {
        let p = SpinParams::new(0, 0, 1.0, 8.0).unwrap();
        assert!((theta(&p, FRAC_PI_4).unwrap() - 1.0).abs() < 1e-14);
        let q = SpinParams::new(0, 0, 0.0, 4.0).unwrap();
        assert!((theta(&q, FRAC_PI_4).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn theta_midpoint_fixture() {
        // at Ctilde = 2 threshold with k1 = k2, the radicand at the domain
        // midpoint equals the numerator, so Theta = 1 exactly
        let p = params(1, 1, -1.0, 2.0);
        let dom = basic_domain(&p).unwrap();
        let mid = 0.5 * (dom.z_l + dom.z_r);
        assert!((theta(&p, mid).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn theta_matches_rate_identity() {
        for p in [params(1, 1, -1.0, 2.0), params(0, 1, 0.0, 3.0), params(2, 1, 0.7, 5.0)] {
            let dom = basic_domain(&p).unwrap();
            for i in 1..50 {
                let s = dom.z_l + dom.width() * i as f64 / 50.0;
                let (r1, r2) = angle_rates(&p, s).unwrap();
                let th = theta(&p, s).unwrap();
                let lhs = (s.cos() * r1).powi(2) + (s.sin() * r2).powi(2);
                assert!((lhs - th).abs() < tol::THETA_IDENTITY * th.max(1.0));
            }
        }
    }

    #[test]
    fn rates_blow_up_at_endpoints_and_error_outside() {
        let p = params(1, 1, 1.0, 2.0);
        let dom = basic_domain(&p).unwrap();
        assert!(angle_rates(&p, dom.z_l - 1e-6).is_err());
        assert!(angle_rates(&p, dom.z_r + 1e-6).is_err());
        let near = angle_rates(&p, dom.z_l + 1e-10).unwrap();
        assert!(near.0 > 1e3);
    }

    #[test]
    fn angular_momentum_ratio_identity() {
        // b^2 s2' = C a^2 s1' at interior samples
        for p in [params(1, 2, -1.0, 3.0), params(0, 1, 0.5, 2.0), params(2, 2, 3.0, 4.0)] {
            let dom = basic_domain(&p).unwrap();
            for i in 1..100 {
                let s = dom.z_l + dom.width() * i as f64 / 100.0;
                let (r1, r2) = angle_rates(&p, s).unwrap();
                let lhs = s.sin().powi(2) * r2;
                let rhs = p.c * s.cos().powi(2) * r1;
                assert!((lhs - rhs).abs() <= tol::RATIO_IDENTITY * (1.0 + lhs.abs()));
            }
        }
    }

    #[test]
    fn zero_c_freezes_second_angle() {
        let p = params(0, 1, 0.0, 3.0);
        let dom = basic_domain(&p).unwrap();
        let s = 0.5 * (dom.z_l + dom.z_r);
        let (_, r2) = angle_rates(&p, s).unwrap();
        assert_eq!(r2, 0.0);
        let curve = integrate_basic(&p, 64).unwrap();
        assert_eq!(curve.delta_s2, 0.0);
    }

    #[test]
    fn rate_at_quarter_pi_for_flat_singly_case() {
        // s1' = sqrt(2) at s = pi/4 for (0,0,C=0,Ctilde=4)
        let p = SpinParams::new(0, 0, 0.0, 4.0).unwrap();
        let (r1, _) = angle_rates(&p, FRAC_PI_4).unwrap();
        assert!((r1 - 2.0_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn universal_half_pi_advance_for_zero_dims() {
        for c in [-2.0, -1.0, -0.5, 0.5, 1.0, 2.0] {
            for mult in [1.5, 3.0, 10.0] {
                let p = params(0, 0, c, mult);
                let curve = integrate_basic(&p, 64).unwrap();
                assert!(
                    (curve.delta_s1 - FRAC_PI_2).abs() < 1e-10,
                    "c={c} mult={mult}: {}",
                    curve.delta_s1
                );
                assert!((curve.delta_s2 - c.signum() * FRAC_PI_2).abs() < 1e-10);
            }
        }
        // C = 0 as well (threshold 1)
        for ct in [2.0, 4.0, 50.0] {
            let p = SpinParams::new(0, 0, 0.0, ct).unwrap();
            let curve = integrate_basic(&p, 64).unwrap();
            assert!((curve.delta_s1 - FRAC_PI_2).abs() < 1e-10);
        }
    }

    #[test]
    fn quadrature_converges_under_mesh_halving() {
        // crude fixed-panel estimates of delta_s1 must gain a factor >= 3
        // per halving, consistent with the square-root substitution
        let p = params(1, 2, -1.0, 2.5);
        let dom = basic_domain(&p).unwrap();
        let reference = integrate_basic(&p, 64).unwrap().delta_s1;
        let estimate = |subdivisions: usize| {
            let mut total = 0.0;
            for half in 0..2 {
                let (lo, top, sign) = if half == 0 {
                    (dom.z_l, (dom.s_crit - dom.z_l).sqrt(), 1.0)
                } else {
                    (dom.z_r, (dom.z_r - dom.s_crit).sqrt(), -1.0)
                };
                // midpoint rule on the substituted integrand
                let g = |u: f64| {
                    let s = lo + sign * u * u;
                    2.0 * s.tan() / (p.radicand(s) / (sign * (s - lo))).sqrt()
                };
                for k in 0..subdivisions {
                    let mid = top * (k as f64 + 0.5) / subdivisions as f64;
                    total += g(mid) * top / subdivisions as f64;
                }
            }
            total
        };
        let mut prev_err = (estimate(8) - reference).abs().max(1e-30);
        for subdivisions in [16, 32] {
            let err = (estimate(subdivisions) - reference).abs().max(1e-30);
            assert!(err * 3.0 <= prev_err, "err {err:e} prev {prev_err:e}");
            prev_err = err;
        }
    }

    #[test]
    fn reflection_extension_repeats_magnitudes_and_advances_angles() {
        let p = params(1, 1, 1.0, 2.0);
        let base = integrate_basic(&p, 64).unwrap();
        let curve = extend_reflect(&base, 4).unwrap();
        let dom = curve.domain;

        // after one full pendulum round the magnitudes return
        let p0 = curve.point(0.0).unwrap();
        let p2 = curve.point(2.0 * curve.pass_arc).unwrap();
        assert!((p0.a - p2.a).abs() < 1e-12 && (p0.b - p2.b).abs() < 1e-12);
        assert!((p2.s1 - 2.0 * curve.delta_s1).abs() < 1e-12);
        assert!((p0.a - dom.z_l.cos()).abs() < 1e-14);

        // joints carry the extremal magnitudes and continuous phases
        let eps = 1e-6 * curve.pass_arc;
        for joint in 1..4 {
            let t = joint as f64 * curve.pass_arc;
            let before = curve.point_precise(t - eps).unwrap();
            let after = curve.point_precise(t + eps).unwrap();
            assert!((before.s1 - after.s1).abs() < 1e-5);
            assert!((before.s2 - after.s2).abs() < 1e-5);
            let extremal = if joint % 2 == 1 { dom.z_r } else { dom.z_l };
            assert!((before.a - extremal.cos()).abs() < 1e-5);
        }
    }

    #[test]
    fn four_passes_close_the_zero_dimension_curve() {
        let p = params(0, 0, 1.0, 2.0);
        let curve = extend_reflect(&integrate_basic(&p, 64).unwrap(), 4).unwrap();
        let start = gamma_point(&curve, 0.0).unwrap();
        let end = gamma_point(&curve, curve.arc_span()).unwrap();
        for i in 0..4 {
            assert!((start[i] - end[i]).abs() < 1e-9, "slot {i}");
        }
        let p1 = curve.point(curve.arc_span()).unwrap();
        assert!((p1.s1 - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn joint_derivatives_match_one_sided_differences() {
        let p = params(1, 1, -1.0, 2.0);
        let curve = extend_reflect(&integrate_basic(&p, 128).unwrap(), 2).unwrap();
        let t = curve.pass_arc;
        let h = 1e-4;
        let amb = |t: f64| curve.point_precise(t).unwrap().ambient();
        let (before, at, after) = (amb(t - h), amb(t), amb(t + h));
        for i in 0..4 {
            let left = (at[i] - before[i]) / h;
            let right = (after[i] - at[i]) / h;
            assert!((left - right).abs() < 20.0 * h, "slot {i}: {left} vs {right}");
        }
    }

    #[test]
    fn gamma_point_is_unit_norm_and_matches_start() {
        let p = params(0, 1, 0.0, 4.0);
        let curve = extend_reflect(&integrate_basic(&p, 64).unwrap(), 3).unwrap();
        let start = gamma_point(&curve, 0.0).unwrap();
        assert!((start[0] - curve.domain.z_l.cos()).abs() < 1e-14);
        assert!((start[1]).abs() < 1e-14);
        assert!((start[2] - curve.domain.z_l.sin()).abs() < 1e-14);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let t = rng.gen_range(0.0..curve.arc_span());
            let v = gamma_point(&curve, t).unwrap();
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        assert!(gamma_point(&curve, curve.arc_span() + 1.0).is_err());
        assert!(gamma_point(&curve, -1.0).is_err());
    }

    #[test]
    fn arc_parameter_rates_match_closed_forms() {
        // ds1/dt = 1/(sqrt(Ctilde) a^(k1+2) b^k2), ds2/dt = C/(sqrt(Ctilde) a^k1 b^(k2+2))
        for p in [params(1, 1, -1.0, 2.0), params(2, 1, 0.6, 3.0)] {
            let curve = integrate_basic(&p, 64).unwrap();
            for frac in [0.2, 0.45, 0.7, 0.9] {
                let t = frac * curve.pass_arc;
                let j = curve.jet2(t).unwrap();
                let sc = p.ctilde.sqrt();
                let expect1 = 1.0 / (sc * j.a.powi(p.k1 as i32 + 2) * j.b.powi(p.k2 as i32));
                let expect2 = p.c / (sc * j.a.powi(p.k1 as i32) * j.b.powi(p.k2 as i32 + 2));
                assert!((j.s1_d - expect1).abs() < tol::ARC_RATE_IDENTITY * expect1.abs());
                assert!((j.s2_d - expect2).abs() < tol::ARC_RATE_IDENTITY * expect2.abs().max(1e-12));
            }
        }
    }

    #[test]
    fn jet_matches_finite_differences_of_precise_points() {
        let p = params(1, 2, 0.8, 2.5);
        let curve = integrate_basic(&p, 128).unwrap();
        let t = 0.37 * curve.pass_arc;
        let j = curve.jet2(t).unwrap();
        let h = 1e-5;
        let plus = curve.point_precise(t + h).unwrap();
        let minus = curve.point_precise(t - h).unwrap();
        let mid = curve.point_precise(t).unwrap();
        assert!(((plus.a - minus.a) / (2.0 * h) - j.a_d).abs() < 1e-7);
        assert!(((plus.s1 - minus.s1) / (2.0 * h) - j.s1_d).abs() < 1e-7);
        assert!(((plus.s2 - minus.s2) / (2.0 * h) - j.s2_d).abs() < 1e-7);
        let add = (plus.a - 2.0 * mid.a + minus.a) / (h * h);
        assert!((add - j.a_dd).abs() < 1e-4);
        let s1dd = (plus.s1 - 2.0 * mid.s1 + minus.s1) / (h * h);
        assert!((s1dd - j.s1_dd).abs() < 1e-3 * (1.0 + j.s1_dd.abs()));
    }

    #[test]
    fn closed_forms_match_numeric_integration() {
        let p = SpinParams::new(0, 0, 1.0, 8.0).unwrap();
        let curve = integrate_basic(&p, 64).unwrap();
        let dom = curve.domain;
        let s_ref = 0.5 * (dom.z_l + dom.z_r);
        let (cf1_ref, cf2_ref) = closed_form_angles_00(&p, s_ref).unwrap();
        let (_, n1_ref, n2_ref) = curve.base_state_precise(s_ref);
        for i in 1..20 {
            let s = dom.z_l + dom.width() * i as f64 / 20.0;
            let (cf1, cf2) = closed_form_angles_00(&p, s).unwrap();
            let (_, n1, n2) = curve.base_state_precise(s);
            assert!(((cf1 - cf1_ref) - (n1 - n1_ref)).abs() < 1e-8, "s={s}");
            assert!(((cf2 - cf2_ref) - (n2 - n2_ref)).abs() < 1e-8, "s={s}");
        }
    }

    #[test]
    fn closed_form_numerators_flip_sign_across_the_domain() {
        // the fractions inside the arctan antiderivatives have numerators
        // of opposite signs at the two turning points
        for c in [0.5, 1.0, 2.0] {
            let p = params(0, 0, c, 3.0);
            let dom = basic_domain(&p).unwrap();
            let eps = 1e-9 * dom.width();
            let num1 = |s: f64| -2.0 + (1.0 + p.ctilde - c * c) * s.cos().powi(2);
            let num2 = |s: f64| {
                -1.0 + p.ctilde - c * c + (1.0 - p.ctilde - c * c) * s.cos().powi(2)
            };
            assert!(num1(dom.z_l + eps) * num1(dom.z_r - eps) < 0.0, "c={c}");
            assert!(num2(dom.z_l + eps) * num2(dom.z_r - eps) < 0.0, "c={c}");
        }
    }

    #[test]
    fn reflected_samples_carry_the_folded_representative() {
        // global s unfolds pass by pass; the magnitudes always come from
        // the folded representative inside [z_L, z_R]
        let p = params(1, 2, -1.0, 2.0);
        let curve = extend_reflect(&integrate_basic(&p, 32).unwrap(), 5).unwrap();
        let (zl, w) = (curve.domain.z_l, curve.domain.width());
        for sample in curve.samples() {
            let local = (sample.s - zl).rem_euclid(2.0 * w);
            let folded = zl + if local <= w { local } else { 2.0 * w - local };
            assert!((sample.a - folded.cos()).abs() < 1e-12);
            assert!((sample.b - folded.sin()).abs() < 1e-12);
            assert!((sample.a * sample.a + sample.b * sample.b - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_endpoint_difference_is_half_pi() {
        for c in [1.0, 2.0, -1.0] {
            let p = params(0, 0, c, 2.0);
            let dom = basic_domain(&p).unwrap();
            let eps = dom.width() * 1e-12;
            let (a1, a2) = closed_form_angles_00(&p, dom.z_l + eps).unwrap();
            let (b1, b2) = closed_form_angles_00(&p, dom.z_r - eps).unwrap();
            assert!((b1 - a1 - FRAC_PI_2).abs() < 1e-5, "c={c}");
            assert!((b2 - a2 - c.signum() * FRAC_PI_2).abs() < 1e-5, "c={c}");
        }
    }

    #[test]
    fn scaled_rates_scale_the_angle_advance() {
        let p = params(1, 1, -1.0, 2.0);
        let base = integrate_basic(&p, 64).unwrap();
        let scaled = integrate_basic_scaled(&p, 64, 1.01).unwrap();
        assert!((scaled.delta_s1 - 1.01 * base.delta_s1).abs() < 1e-10);
    }

    #[test]
    fn rejects_too_few_samples() {
        let p = params(1, 1, 1.0, 2.0);
        assert!(integrate_basic(&p, 8).is_err());
    }
}
