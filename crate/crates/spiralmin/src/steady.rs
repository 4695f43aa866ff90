//! The steady-magnitude family: curves with constant (a, b) and linear
//! phases s1 = t, s2 = c t.
//!
//! Such a curve generates a minimal product exactly when the weighted trace
//!
//!   trace(A_eta0) = -(b/a) k1 + (a/b) k2 + a b (c^2 - 1) / (a^2 + b^2 c^2)
//!
//! vanishes.  For fixed spin ratio c the magnitudes follow in closed form;
//! the admissible band of a^2/b^2 is [k1/(k2+1), (k1+1)/k2] with the
//! endpoints realized by c^2 = infinity and c^2 = 0.

use crate::pendulum::{CurveJet2, CurvePoint, SphereCurve};
use crate::{Error, Result};
use std::f64::consts::PI;

/// Ratio ds2/ds1 of the steady phases; infinite means the spin sits purely
/// in the second slot (ds1 = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpinRatio {
    Finite(f64),
    Infinite,
}

impl SpinRatio {
    pub fn as_finite(&self) -> Option<f64> {
        match self {
            SpinRatio::Finite(c) => Some(*c),
            SpinRatio::Infinite => None,
        }
    }
}

/// Weighted trace of the steady shape operator.
pub fn steady_trace(k1: u32, k2: u32, a: f64, b: f64, c: SpinRatio) -> f64 {
    let (k1, k2) = (k1 as f64, k2 as f64);
    match c {
        SpinRatio::Finite(c) => {
            -(b / a) * k1 + (a / b) * k2 + a * b * (c * c - 1.0) / (a * a + b * b * c * c)
        }
        SpinRatio::Infinite => -(b / a) * k1 + (a / b) * (k2 + 1.0),
    }
}

/// Solves for the unique positive magnitude pair with vanishing trace.
pub fn steady_ratio(k1: u32, k2: u32, c: SpinRatio) -> Result<(f64, f64)> {
    let ratio_b2_over_a2 = match (k1, k2, c) {
        (0, 0, _) => {
            return Err(Error::InfeasibleRatio(
                "k1 = k2 = 0 forces c = +-1 with arbitrary magnitudes".into(),
            ))
        }
        (k1, 0, SpinRatio::Infinite) => 1.0 / k1 as f64,
        (k1, 0, SpinRatio::Finite(c)) => {
            let c2 = c * c;
            if c2 <= k1 as f64 + 1.0 {
                return Err(Error::InfeasibleRatio(format!(
                    "k2 = 0 requires c^2 > k1 + 1 = {}, got c^2 = {c2}",
                    k1 + 1
                )));
            }
            (c2 - (k1 as f64 + 1.0)) / (k1 as f64 * c2)
        }
        (0, k2, SpinRatio::Infinite) => {
            return Err(Error::InfeasibleRatio(format!(
                "k1 = 0 requires c^2 < 1/(k2 + 1) = 1/{}",
                k2 + 1
            )))
        }
        (0, k2, SpinRatio::Finite(c)) => {
            let c2 = c * c;
            if c2 >= 1.0 / (k2 as f64 + 1.0) {
                return Err(Error::InfeasibleRatio(format!(
                    "k1 = 0 requires c^2 < 1/(k2 + 1) = 1/{}, got c^2 = {c2}",
                    k2 + 1
                )));
            }
            k2 as f64 / (1.0 - (k2 as f64 + 1.0) * c2)
        }
        (k1, k2, SpinRatio::Infinite) => (k2 as f64 + 1.0) / k1 as f64,
        (k1, k2, SpinRatio::Finite(c)) => {
            if c == 0.0 {
                return Err(Error::InfeasibleRatio(
                    "c = 0 is the constant minimal product of the spun first factor".into(),
                ));
            }
            let (k1f, k2f) = (k1 as f64, k2 as f64);
            let c2 = c * c;
            let q = (k1f + 1.0) - (k2f + 1.0) * c2;
            let closed = (-q + (q * q + 4.0 * k1f * k2f * c2).sqrt()) / (2.0 * k1f * c2);
            if closed.is_finite() && closed > 0.0 && c2 > 1e-6 {
                closed
            } else {
                // near c = 0 the closed form cancels catastrophically;
                // bisect the trace in the magnitude angle instead
                bisect_trace(k1f, k2f, c)
            }
        }
    };

    let a = (1.0 / (1.0 + ratio_b2_over_a2)).sqrt();
    let b = (ratio_b2_over_a2 / (1.0 + ratio_b2_over_a2)).sqrt();
    Ok((a, b))
}

fn bisect_trace(k1: f64, k2: f64, c: f64) -> f64 {
    // trace is increasing in a; solve trace = 0 for b^2/a^2
    let trace = |a: f64| {
        let b = (1.0 - a * a).sqrt();
        -(b / a) * k1 + (a / b) * k2 + a * b * (c * c - 1.0) / (a * a + b * b * c * c)
    };
    let (mut lo, mut hi) = (1e-12, 1.0 - 1e-12);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if trace(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    (1.0 - a * a) / (a * a)
}

/// Coefficients of the classical constant minimal product.
pub fn constant_product_coefficients(k1: u32, k2: u32) -> Result<(f64, f64)> {
    if k1 + k2 == 0 {
        return Err(Error::Domain(
            "constant minimal product requires k1 + k2 >= 1".into(),
        ));
    }
    let total = (k1 + k2) as f64;
    Ok(((k1 as f64 / total).sqrt(), (k2 as f64 / total).sqrt()))
}

/// Steady generating curve (a e^{i t}, b e^{i c t}) in its native parameter.
#[derive(Debug, Clone)]
pub struct SteadyCurve {
    pub a: f64,
    pub b: f64,
    pub c: SpinRatio,
    /// Native parameter range covered by `samples`.
    pub t_max: f64,
    pub n_samples: usize,
}

/// Builds a steady curve; magnitudes must satisfy a^2 + b^2 = 1 with ab != 0.
pub fn steady_curve(a: f64, b: f64, c: SpinRatio, n_samples: usize) -> Result<SteadyCurve> {
    if (a * a + b * b - 1.0).abs() > 1e-12 || a <= 0.0 || b <= 0.0 {
        return Err(Error::Domain(format!(
            "magnitudes must satisfy a^2 + b^2 = 1 with a, b > 0, got ({a}, {b})"
        )));
    }
    Ok(SteadyCurve {
        a,
        b,
        c,
        t_max: 2.0 * PI,
        n_samples: n_samples.max(16),
    })
}

impl SteadyCurve {
    /// Constant speed |gamma'| in the native parameter.
    pub fn speed(&self) -> f64 {
        match self.c {
            SpinRatio::Finite(c) => (self.a * self.a + self.b * self.b * c * c).sqrt(),
            SpinRatio::Infinite => self.b,
        }
    }

    fn phases(&self, t_native: f64) -> (f64, f64) {
        match self.c {
            SpinRatio::Finite(c) => (t_native, c * t_native),
            SpinRatio::Infinite => (0.0, t_native),
        }
    }

    /// Smallest native period after which the curve closes, when the spin
    /// ratio is (numerically) rational with denominator at most `max_den`.
    pub fn closure_period(&self, max_den: u64) -> Option<f64> {
        let c = match self.c {
            SpinRatio::Finite(c) => c,
            SpinRatio::Infinite => return Some(2.0 * PI),
        };
        if c == 0.0 {
            return Some(2.0 * PI);
        }
        let (_, den) = rational_reconstruct(c, max_den, 1e-12)?;
        Some(2.0 * PI * den as f64)
    }

    /// Curve samples over the native range.
    pub fn samples(&self) -> Vec<crate::pendulum::CurveSample> {
        let speed = self.speed();
        (0..=self.n_samples)
            .map(|i| {
                let t = self.t_max * i as f64 / self.n_samples as f64;
                let (s1, s2) = self.phases(t);
                crate::pendulum::CurveSample {
                    s: self.b.atan2(self.a),
                    t_arc: t * speed,
                    a: self.a,
                    b: self.b,
                    s1,
                    s2,
                }
            })
            .collect()
    }
}

/// Continued-fraction reconstruction of x as p/q with q <= max_den.
pub(crate) fn rational_reconstruct(x: f64, max_den: u64, tol: f64) -> Option<(i64, u64)> {
    let sign = if x < 0.0 { -1 } else { 1 };
    let target = x.abs();
    let mut frac = target;
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0u64, target.floor() as i64, 1u64);
    for _ in 0..64 {
        if q1 != 0 && (p1 as f64 / q1 as f64 - target).abs() < tol {
            return Some((sign * p1, q1));
        }
        let rem = frac - frac.floor();
        if rem.abs() < 1e-15 {
            break;
        }
        frac = 1.0 / rem;
        let a = frac.floor() as i64;
        let p2 = a * p1 + p0;
        let q2 = a as u64 * q1 + q0;
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

impl SphereCurve for SteadyCurve {
    fn arc_span(&self) -> f64 {
        self.t_max * self.speed()
    }

    fn point(&self, t_arc: f64) -> Result<CurvePoint> {
        let (s1, s2) = self.phases(t_arc / self.speed());
        Ok(CurvePoint {
            a: self.a,
            b: self.b,
            s1,
            s2,
        })
    }

    fn point_precise(&self, t_arc: f64) -> Result<CurvePoint> {
        self.point(t_arc)
    }

    fn jet2(&self, t_arc: f64) -> Result<CurveJet2> {
        let speed = self.speed();
        let (s1, s2) = self.phases(t_arc / speed);
        let (w1, w2) = match self.c {
            SpinRatio::Finite(c) => (1.0 / speed, c / speed),
            SpinRatio::Infinite => (0.0, 1.0 / speed),
        };
        Ok(CurveJet2 {
            a: self.a,
            a_d: 0.0,
            a_dd: 0.0,
            b: self.b,
            b_d: 0.0,
            b_dd: 0.0,
            s1,
            s1_d: w1,
            s1_dd: 0.0,
            s2,
            s2_d: w2,
            s2_dd: 0.0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::tol;
    use crate::profile::{critical_point, threshold};
    use crate::quadrature::angle_integrals;
    use crate::SpinParams;

    #[test]
    fn symmetric_case_balances() {
        let r = 1.0 / 2f64.sqrt();
        assert!(steady_trace(1, 1, r, r, SpinRatio::Finite(1.0)).abs() < 1e-15);
        let (a, b) = steady_ratio(1, 1, SpinRatio::Finite(1.0)).unwrap();
        assert!((a - r).abs() < 1e-14);
        assert!((b - r).abs() < 1e-14);
    }

    #[test]
    fn trace_vanishes_at_solved_ratios() {
        for (k1, k2) in [(1u32, 1u32), (2, 3), (1, 4), (5, 2)] {
            for c in [-3.0, -1.0, 0.3, 1.0, 2.0, 10.0] {
                let (a, b) = steady_ratio(k1, k2, SpinRatio::Finite(c)).unwrap();
                let t = steady_trace(k1, k2, a, b, SpinRatio::Finite(c));
                assert!(t.abs() < tol::STEADY_TRACE, "({k1},{k2},{c}): {t:e}");
            }
            let (a, b) = steady_ratio(k1, k2, SpinRatio::Infinite).unwrap();
            let t = steady_trace(k1, k2, a, b, SpinRatio::Infinite);
            assert!(t.abs() < tol::STEADY_TRACE);
        }
    }

    #[test]
    fn singly_spun_first_factor_magnitudes() {
        // a = sqrt(k1/(k1+1)), b = sqrt(1/(k1+1)) at k2 = 0 with infinite c
        for k1 in [1u32, 2, 7] {
            let (a, b) = steady_ratio(k1, 0, SpinRatio::Infinite).unwrap();
            assert!((a - (k1 as f64 / (k1 as f64 + 1.0)).sqrt()).abs() < 1e-12);
            assert!((b - (1.0 / (k1 as f64 + 1.0)).sqrt()).abs() < 1e-12);
        }
        // c^2 <= k1 + 1 sits outside the feasibility band (b = 0 boundary)
        assert!(steady_ratio(1, 0, SpinRatio::Finite(1.4)).is_err());
        let (_, b) = steady_ratio(1, 0, SpinRatio::Finite(1.5)).unwrap();
        assert!(b > 0.0 && b < 0.35);
    }

    #[test]
    fn infeasible_ratios_are_rejected() {
        assert!(steady_ratio(2, 0, SpinRatio::Finite(1.0)).is_err());
        assert!(steady_ratio(0, 2, SpinRatio::Finite(1.0)).is_err());
        assert!(steady_ratio(0, 2, SpinRatio::Infinite).is_err());
        assert!(steady_ratio(0, 0, SpinRatio::Finite(1.0)).is_err());
        assert!(steady_ratio(1, 1, SpinRatio::Finite(0.0)).is_err());
    }

    #[test]
    fn feasibility_band_of_magnitude_ratio() {
        // a^2/b^2 stays in [k1/(k2+1), (k1+1)/k2]
        for (k1, k2) in [(1u32, 1u32), (2, 3), (4, 1)] {
            let (lo, hi) = (k1 as f64 / (k2 as f64 + 1.0), (k1 as f64 + 1.0) / k2 as f64);
            for c in [-20.0, -2.0, -0.4, 0.05, 0.7, 5.0, 100.0] {
                let (a, b) = steady_ratio(k1, k2, SpinRatio::Finite(c)).unwrap();
                let r = a * a / (b * b);
                assert!(r >= lo - 1e-9 && r <= hi + 1e-9, "({k1},{k2},{c}): {r}");
            }
        }
    }

    #[test]
    fn large_spin_limit_approaches_adjacent_constant_product() {
        // b/a -> sqrt((k2+1)/k1), the constant product of f1 and the spun f2
        for (k1, k2) in [(1u32, 1u32), (3, 2)] {
            let (a, b) = steady_ratio(k1, k2, SpinRatio::Finite(1e8)).unwrap();
            let lim = ((k2 as f64 + 1.0) / k1 as f64).sqrt();
            assert!((b / a - lim).abs() < 1e-6);
            let (ai, bi) = steady_ratio(k1, k2, SpinRatio::Infinite).unwrap();
            let (ca, cb) = constant_product_coefficients(k1, k2 + 1).unwrap();
            assert!((ai - ca).abs() < 1e-12 && (bi - cb).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_product_coefficient_values() {
        let (l, m) = constant_product_coefficients(1, 1).unwrap();
        assert!((l - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((m - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        let (l, m) = constant_product_coefficients(2, 3).unwrap();
        assert!((l - (0.4f64).sqrt()).abs() < 1e-15);
        assert!((m - (0.6f64).sqrt()).abs() < 1e-15);
        let (l, m) = constant_product_coefficients(1, 0).unwrap();
        assert_eq!((l, m), (1.0, 0.0));
        assert!(constant_product_coefficients(0, 0).is_err());
    }

    #[test]
    fn closure_periods() {
        let s = steady_curve(0.6, 0.8, SpinRatio::Finite(1.5), 32).unwrap();
        assert!((s.closure_period(1000).unwrap() - 4.0 * PI).abs() < 1e-12);
        let irr = steady_curve(0.6, 0.8, SpinRatio::Finite(2f64.sqrt()), 32).unwrap();
        assert!(irr.closure_period(10_000).is_none());
    }

    #[test]
    fn pendulum_degenerates_to_steady_ratio() {
        // near threshold the mean spin ratio C J2/J1 approaches C cot^2 s_C
        for (k1, k2, c) in [(1u32, 1u32, -1.0), (2, 1, 0.7), (1, 2, 2.0)] {
            let m = threshold(k1, k2, c);
            let p = SpinParams::new(k1, k2, c, m * (1.0 + 1e-8)).unwrap();
            let ai = angle_integrals(&p).unwrap();
            let expect = c / critical_point(k1, k2, c).tan().powi(2);
            let got = c * ai.j2 / ai.j1;
            assert!(
                (got - expect).abs() < 1e-6 * expect.abs().max(1.0),
                "({k1},{k2},{c}): {got} vs {expect}"
            );
        }
    }

    #[test]
    fn steady_curve_validates_magnitudes() {
        assert!(steady_curve(0.5, 0.5, SpinRatio::Finite(1.0), 32).is_err());
        assert!(steady_curve(0.6, 0.8, SpinRatio::Finite(1.0), 32).is_ok());
    }
}
