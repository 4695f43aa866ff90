//! Rational-closure search and exact certification.
//!
//! A generating curve closes up when its per-pass angle advances are
//! rational multiples of pi: after l pendulum rounds (2l passes) the phases
//! have advanced by 2l J1 and 2l C J2.  All certificate arithmetic runs over
//! exact rationals; floating-point values never get promoted to rationals
//! unless the user supplied them as p/q targets.

use crate::profile::{critical_point, threshold, SpinParams};
use crate::quadrature::{angle_integrals, limit_j1_infinity, threshold_limit_j1};
use crate::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use std::f64::consts::PI;

pub type Rational = Ratio<i64>;

/// Parses an exact rational of the form "p/q" or "p"; floating-point
/// strings are rejected by the exactness policy.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let reject = |why: &str| {
        Error::Parse(format!(
            "closure targets must be exact rationals like 3/5; {why}: {text:?}"
        ))
    };
    if text.contains(['.', 'e', 'E']) {
        return Err(reject("floating-point form"));
    }
    let mut parts = text.splitn(2, '/');
    let num: i64 = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|_| reject("bad numerator"))?;
    let den: i64 = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| reject("bad denominator"))?,
        None => 1,
    };
    if den == 0 {
        return Err(reject("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Quotient topology of a closed spiral minimal product, following the
/// case split on (round parity, pi-parity of the second angle).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientClass {
    /// [-1,1] x M1 x M2 glued by (-1,-x,-y) ~ (1,x,y).
    CylinderGlueBothFlip,
    /// [-1,1] x M1 x M2 glued by (-1,x,-y) ~ (1,x,y).
    CylinderGlueSecondFlip,
    /// [-1,1] x M1 x M2 glued by (-1,-x,y) ~ (1,x,y).
    CylinderGlueFirstFlip,
    /// S^1 x M1 x M2 with no gluing twist.
    TrivialCircleProduct,
    SinglyEmbedded,
    SelfIntersecting,
}

impl QuotientClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            QuotientClass::CylinderGlueBothFlip => "CylinderGlueBothFlip",
            QuotientClass::CylinderGlueSecondFlip => "CylinderGlueSecondFlip",
            QuotientClass::CylinderGlueFirstFlip => "CylinderGlueFirstFlip",
            QuotientClass::TrivialCircleProduct => "TrivialCircleProduct",
            QuotientClass::SinglyEmbedded => "SinglyEmbedded",
            QuotientClass::SelfIntersecting => "SelfIntersecting",
        }
    }
}

/// Antipodal behaviour of a factor image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntipodalSymmetry {
    /// -M = M as sets.
    Antipodal,
    /// M contains no antipodal pairs at all.
    NoAntipodalPairs,
    /// Some antipodal pairs, but not full symmetry.
    Partial,
}

/// Exact-rational record certifying a closed generating curve.
#[derive(Debug, Clone)]
pub struct ClosureCertificate {
    pub k1: u32,
    pub k2: u32,
    pub c: f64,
    pub ctilde: f64,
    /// J1 / pi.
    pub q1: Rational,
    /// Per-pass s2 advance over pi (C J2 / pi).
    pub q2: Rational,
    pub rounds_to_close: u64,
    pub quotient_class: QuotientClass,
    pub antipodal_disjoint: bool,
}

/// Per-pass advance J1 for one parameter point.
fn j1(params: &SpinParams) -> Result<f64> {
    Ok(angle_integrals(params)?.j1)
}

/// Solves J1(Ctilde) = pi q, reporting every root found.
///
/// J1 is not assumed monotone: a logarithmic scan over the gap to the
/// threshold brackets every sign change and each bracket is bisected.
pub fn solve_for_target(k1: u32, k2: u32, c: f64, q: Rational) -> Result<Vec<f64>> {
    solve_for_targets(k1, k2, c, &[q]).pop().unwrap()
}

/// Batch version of [`solve_for_target`] sharing one scan of the
/// integration constant.
pub fn solve_for_targets(k1: u32, k2: u32, c: f64, targets: &[Rational]) -> Vec<Result<Vec<f64>>> {
    let m = threshold(k1, k2, c);
    let lim_inf = limit_j1_infinity(k1);
    let lim_thr = threshold_limit_j1(k1, k2, c);
    let (lo, hi) = (lim_inf.min(lim_thr), lim_inf.max(lim_thr));

    // 512 logarithmically spaced points in the relative gap above the
    // threshold, plus an extension toward very large Ctilde: J1 approaches
    // its limit only like Ctilde^(-1/(k1+1)), so targets near pi/(2(k1+1))
    // sit far outside the base window.  The cap keeps the right turning
    // point resolvable in double precision (cos z_R ~ Ctilde^(-1/(2k1+2))).
    let ctilde_at = move |lambda: f64| m * (1.0 + 10f64.powf(lambda));
    let lambda_max = (13.0 * (2.0 * k1 as f64 + 2.0)).min(260.0);
    let mut lambdas: Vec<f64> = (0..512).map(|i| -6.0 + 12.0 * i as f64 / 511.0).collect();
    let mut lambda = 6.25;
    while lambda <= lambda_max {
        lambdas.push(lambda);
        lambda += 0.25;
    }
    let grid: Vec<(f64, f64)> = lambdas
        .into_par_iter()
        .map(|lambda| {
            let params = SpinParams::new(k1, k2, c, ctilde_at(lambda)).unwrap();
            (lambda, j1(&params).unwrap_or(f64::NAN))
        })
        .collect();

    targets
        .iter()
        .map(|&q| {
            let target = PI * rational_to_f64(q);
            if !(target > lo && target < hi) {
                return Err(Error::TargetOutOfRange(format!(
                    "pi*{q} = {target:.6} outside the attainable open interval ({lo:.6}, {hi:.6})"
                )));
            }
            let mut roots = Vec::new();
            for w in grid.windows(2) {
                let (l0, f0) = (w[0].0, w[0].1 - target);
                let (l1, f1) = (w[1].0, w[1].1 - target);
                if !(f0.is_finite() && f1.is_finite()) || f0 * f1 > 0.0 {
                    continue;
                }
                let (mut a, mut b) = (l0, l1);
                let mut fa = f0;
                for _ in 0..60 {
                    let mid = 0.5 * (a + b);
                    let params = SpinParams::new(k1, k2, c, ctilde_at(mid)).unwrap();
                    let fm = j1(&params)? - target;
                    if fa * fm <= 0.0 {
                        b = mid;
                    } else {
                        a = mid;
                        fa = fm;
                    }
                }
                let ctilde = ctilde_at(0.5 * (a + b));
                let residual = (j1(&SpinParams::new(k1, k2, c, ctilde)?)? - target).abs();
                if residual < crate::config::tol::TARGET_RESIDUAL {
                    roots.push(ctilde);
                }
            }
            roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
            roots.dedup_by(|x, y| (*x - *y).abs() < 1e-9 * y.abs());
            if roots.is_empty() {
                return Err(Error::NoRootFound(format!(
                    "scan found no crossing of J1 with pi*{q} (only values near the interval ends are guaranteed)"
                )));
            }
            Ok(roots)
        })
        .collect()
}

pub(crate) fn rational_to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Solves the 2x2 system J1 = pi q1, C J2 = pi q2 by damped Newton with a
/// finite-difference Jacobian, keeping iterates in {C > 0, Ctilde >
/// threshold}.
pub fn double_closure_solve(
    k1: u32,
    k2: u32,
    q1: Rational,
    q2: Rational,
    seed: (f64, f64),
) -> Result<(f64, f64)> {
    let target = (PI * rational_to_f64(q1), PI * rational_to_f64(q2));
    let residual = |c: f64, ctilde: f64| -> Result<(f64, f64)> {
        let ai = angle_integrals(&SpinParams::new(k1, k2, c, ctilde)?)?;
        Ok((ai.j1 - target.0, c * ai.j2 - target.1))
    };
    let inside = |c: f64, ctilde: f64| c > 0.0 && ctilde > threshold(k1, k2, c);

    let (mut c, mut ct) = seed;
    if !inside(c, ct) {
        return Err(Error::LeftDomain);
    }
    let norm = |f: (f64, f64)| f.0.hypot(f.1);
    let mut f = residual(c, ct)?;
    for iter in 0..100 {
        if norm(f) < crate::config::tol::DOUBLE_CLOSURE_RESIDUAL {
            return Ok((c, ct));
        }
        // finite-difference Jacobian
        let (hc, ht) = (1e-6 * c.max(1e-3), 1e-6 * ct);
        let fc = residual(c + hc, ct)?;
        let ft = residual(c, ct + ht)?;
        let jac = [
            [(fc.0 - f.0) / hc, (ft.0 - f.0) / ht],
            [(fc.1 - f.1) / hc, (ft.1 - f.1) / ht],
        ];
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det.abs() < 1e-300 {
            return Err(Error::NonConvergence {
                iterations: iter,
                residual: norm(f),
            });
        }
        let dc = -(jac[1][1] * f.0 - jac[0][1] * f.1) / det;
        let dt = -(-jac[1][0] * f.0 + jac[0][0] * f.1) / det;

        // step halving down to 2^-10 with domain projection
        let mut accepted = false;
        let mut damp = 1.0;
        for _ in 0..=10 {
            let (c_new, ct_new) = (c + damp * dc, ct + damp * dt);
            if inside(c_new, ct_new) {
                if let Ok(f_new) = residual(c_new, ct_new) {
                    if norm(f_new) < norm(f) {
                        c = c_new;
                        ct = ct_new;
                        f = f_new;
                        accepted = true;
                        break;
                    }
                }
            }
            damp *= 0.5;
        }
        if !accepted {
            return Err(
                if inside(c + dc * 2f64.powi(-10), ct + dt * 2f64.powi(-10)) {
                    Error::NonConvergence {
                        iterations: iter,
                        residual: norm(f),
                    }
                } else {
                    Error::LeftDomain
                },
            );
        }
    }
    Err(Error::NonConvergence {
        iterations: 100,
        residual: norm(f),
    })
}

/// Smallest number of pendulum rounds after which both angles return to the
/// identification lattice.
///
/// With the pi-identification (antipodally symmetric factors) the angles
/// must reach integer multiples of pi: 2l q in Z.  Without it they must
/// reach multiples of 2 pi: 2l q in 2Z.
/// ```
/// use spiralmin::closure::{certify_closure, Rational};
/// // quarter-pi advances with the antipodal identification close in 2 rounds
/// assert_eq!(certify_closure(Rational::new(1, 4), Rational::new(1, 2), true), 2);
/// ```
pub fn certify_closure(q1: Rational, q2: Rational, pi_identification: bool) -> u64 {
    let rounds_for = |q: Rational| -> u64 {
        if *q.numer() == 0 {
            return 1;
        }
        if pi_identification {
            // 2l q in Z  <=>  den(2q) | l
            *(q * Rational::new(2, 1)).denom() as u64
        } else {
            // 2l q in 2Z  <=>  l q in Z  <=>  den(q) | l
            *q.denom() as u64
        }
    };
    rounds_for(q1).lcm(&rounds_for(q2))
}

/// Embeddedness of a singly spiral product by the rational class of
/// r = I(Ctilde)/pi and the antipodal behaviour of the spun factor.
pub fn classify_singly(q: Rational, symmetry: AntipodalSymmetry) -> QuotientClass {
    let unit_numerator = *q.numer() == 1;
    match symmetry {
        AntipodalSymmetry::Antipodal => {
            if unit_numerator && q.denom() % 2 == 0 {
                QuotientClass::SinglyEmbedded
            } else {
                QuotientClass::SelfIntersecting
            }
        }
        AntipodalSymmetry::NoAntipodalPairs => {
            if unit_numerator {
                QuotientClass::SinglyEmbedded
            } else {
                QuotientClass::SelfIntersecting
            }
        }
        AntipodalSymmetry::Partial => QuotientClass::SelfIntersecting,
    }
}

/// Quotient type of a doubly spiral product with J1 = pi/(2l) and second
/// angle advance pi q2_side per pass, for antipodally symmetric factors.
///
/// tau is the smallest positive integer with 2 l tau q2_side integral; the
/// four cases follow the parities of tau and of that integer.
pub fn classify_doubly(q1: Rational, q2_side: Rational) -> Result<QuotientClass> {
    if *q1.numer() != 1 || q1.denom() % 2 != 0 {
        return Err(Error::Domain(format!(
            "doubly classification requires J1/pi = 1/(2l), got {q1}"
        )));
    }
    let two_l = *q1.denom();
    // smallest tau with two_l * tau * q2 in Z
    let tau = if *q2_side.numer() == 0 {
        1
    } else {
        q2_side.denom() / q2_side.denom().gcd(&two_l)
    };
    let value = q2_side * Rational::from_integer(two_l * tau);
    debug_assert!(value.is_integer());
    let value_odd = value.numer().abs() % 2 == 1;
    let tau_odd = tau % 2 == 1;
    Ok(match (tau_odd, value_odd) {
        (true, true) => QuotientClass::CylinderGlueBothFlip,
        (false, true) => QuotientClass::CylinderGlueSecondFlip,
        (true, false) => QuotientClass::CylinderGlueFirstFlip,
        (false, false) => QuotientClass::TrivialCircleProduct,
    })
}

/// True iff no even multiple of the passes lands both angles on odd
/// multiples of pi simultaneously, so the turning-point minima set is
/// disjoint from its antipode.
///
/// Decided by 2-adic valuations: 2n q can be an odd integer exactly when
/// the reduced denominator of q is even, with v2(n) pinned to v2(den) - 1;
/// a common n for both angles exists iff those valuations agree.
pub fn antipodal_disjoint(q1: Rational, q2: Rational) -> bool {
    let odd_hit_depth = |q: Rational| -> Option<u32> {
        if *q.numer() == 0 {
            return None;
        }
        let den = *q.denom() as u64;
        let v2 = den.trailing_zeros();
        if v2 >= 1 {
            Some(v2 - 1)
        } else {
            None
        }
    };
    match (odd_hit_depth(q1), odd_hit_depth(q2)) {
        (Some(a), Some(b)) => a != b,
        _ => true,
    }
}

/// The spin ratio R = C J2 / J1; approaches C cot^2(s_C) at the threshold.
pub fn ratio_r(k1: u32, k2: u32, c: f64, ctilde: f64) -> Result<f64> {
    if c == 0.0 {
        return Err(Error::Domain("ratio R requires C != 0".into()));
    }
    let ai = angle_integrals(&SpinParams::new(k1, k2, c, ctilde)?)?;
    Ok(c * ai.j2 / ai.j1)
}

/// Boundary value of R as Ctilde decreases to the threshold.
pub fn ratio_r_boundary(k1: u32, k2: u32, c: f64) -> f64 {
    c / critical_point(k1, k2, c).tan().powi(2)
}
