//! Assembly of full product immersions and the verification layers:
//! shape-operator traces, a finite-difference mean-curvature oracle, the
//! Legendrian angle, the Laplacian eigenfunction identity, and the
//! great-circle degeneration checks.
//!
//! The trace formulas are analytic in the curve 2-jet; the mean-curvature
//! oracle differentiates the assembled immersion by central differences
//! only, so the two routes are independent.

pub mod factors;

pub use factors::{ComplexVec, FactorImmersion, FactorKind};

use crate::pendulum::{rate_jet, CurveJet2, GammaCurve, SphereCurve};
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// A curve spun pair of factor immersions.
pub struct ProductImmersion<'a> {
    pub curve: &'a dyn SphereCurve,
    pub f1: FactorImmersion,
    pub f2: FactorImmersion,
    /// Chart base point indices for the two factors.
    pub base1: usize,
    pub base2: usize,
}

impl<'a> ProductImmersion<'a> {
    pub fn new(curve: &'a dyn SphereCurve, f1: FactorImmersion, f2: FactorImmersion) -> Self {
        ProductImmersion {
            curve,
            f1,
            f2,
            base1: 0,
            base2: 0,
        }
    }

    pub fn ambient_real_dim(&self) -> usize {
        2 * (self.f1.ambient_complex_dim() + self.f2.ambient_complex_dim())
    }

    pub fn intrinsic_dim(&self) -> usize {
        1 + self.f1.intrinsic_dim() + self.f2.intrinsic_dim()
    }

    /// Evaluates (gamma_1 f_1(x), gamma_2 f_2(y)) at arc parameter t_arc.
    pub fn eval(&self, t_arc: f64, x_chart: &[f64], y_chart: &[f64]) -> Result<Vec<f64>> {
        let p = self.curve.point_precise(t_arc)?;
        let slot1 = self.f1.eval(x_chart, self.base1)?.spin(p.a, p.s1);
        let slot2 = self.f2.eval(y_chart, self.base2)?.spin(p.b, p.s2);
        let mut out = slot1.to_real();
        out.extend_from_slice(&slot2.to_real());
        Ok(out)
    }
}

/// Shape-operator traces from a curve 2-jet, valid in any parametrization.
///
/// Returns (trace of A_eta1, weighted trace of A_eta0); both vanish exactly
/// along solution curves.  The eta1 trace is the obstruction to a constant
/// angular-momentum ratio, the eta0 trace the pendulum equation itself.
pub fn trace_from_jet(jet: &CurveJet2, k1: u32, k2: u32) -> (f64, f64) {
    let (a, b) = (jet.a, jet.b);
    let theta = (a * jet.s1_d).powi(2) + (b * jet.s2_d).powi(2);
    let speed2 = jet.a_d * jet.a_d + jet.b_d * jet.b_d + theta;
    let v = jet.a_d * b - a * jet.b_d;

    let circ = (-2.0 * jet.s1_d * jet.s2_d * v
        - a * b * (jet.s1_dd * jet.s2_d - jet.s1_d * jet.s2_dd))
        / speed2;

    let braces = (jet.a_dd - a * jet.s1_d * jet.s1_d) * b - (jet.b_dd - b * jet.s2_d * jet.s2_d) * a;
    let momentum = (2.0 * jet.a_d * jet.s1_d + a * jet.s1_dd) * a * jet.s1_d
        + (2.0 * jet.b_d * jet.s2_d + b * jet.s2_dd) * b * jet.s2_d;
    let boxed = (braces - v / theta * momentum) / speed2;

    let trace_eta0 = -(b / a) * k1 as f64 + (a / b) * k2 as f64 + boxed;
    (circ, trace_eta0)
}

/// Traces at pendulum coordinate s, using the analytic closed-form rates
/// and their s-derivatives (never finite differences).
pub fn shape_traces(curve: &GammaCurve, s: f64) -> Result<(f64, f64)> {
    let r = rate_jet(&curve.params, s, curve.rate_scale())?;
    let jet = CurveJet2 {
        a: r.a,
        a_d: -r.b,
        a_dd: -r.a,
        b: r.b,
        b_d: r.a,
        b_dd: -r.b,
        s1: 0.0,
        s1_d: r.s1_d,
        s1_dd: r.s1_dd,
        s2: 0.0,
        s2_d: r.s2_d,
        s2_dd: r.s2_dd,
    };
    Ok(trace_from_jet(&jet, curve.params.k1, curve.params.k2))
}

/// Largest trace magnitudes over an interior sample sweep.
pub fn sweep_traces(curve: &GammaCurve, n: usize) -> Result<(f64, f64)> {
    let dom = curve.domain;
    let mut worst = (0.0f64, 0.0f64);
    for i in 1..n {
        let s = dom.z_l + dom.width() * i as f64 / n as f64;
        let (t1, t0) = shape_traces(curve, s)?;
        worst.0 = worst.0.max(t1.abs());
        worst.1 = worst.1.max(t0.abs());
    }
    Ok(worst)
}

/// Norm of the sphere mean-curvature vector of the assembled immersion,
/// computed purely by central differences with Richardson extrapolation.
///
/// This is the independent oracle for minimality: it never touches the
/// analytic rate formulas.
pub fn mean_curvature_fd(
    prod: &ProductImmersion,
    t_arc: f64,
    x_chart: &[f64],
    y_chart: &[f64],
    h: f64,
) -> Result<f64> {
    if !(1e-6..=1e-2).contains(&h) {
        return Err(Error::Domain(format!("step h = {h} outside [1e-6, 1e-2]")));
    }
    let coarse = mean_curvature_vec(prod, t_arc, x_chart, y_chart, h)?;
    let fine = mean_curvature_vec(prod, t_arc, x_chart, y_chart, 0.5 * h)?;
    let extrapolated: Vec<f64> = fine
        .iter()
        .zip(&coarse)
        .map(|(f, c)| (4.0 * f - c) / 3.0)
        .collect();
    Ok(extrapolated.iter().map(|x| x * x).sum::<f64>().sqrt())
}

fn mean_curvature_vec(
    prod: &ProductImmersion,
    t_arc: f64,
    x_chart: &[f64],
    y_chart: &[f64],
    h: f64,
) -> Result<Vec<f64>> {
    let (d1, d2) = (prod.f1.intrinsic_dim(), prod.f2.intrinsic_dim());
    let d = 1 + d1 + d2;
    let amb = prod.ambient_real_dim();

    let phi = |du: &[f64]| -> Result<DVector<f64>> {
        let mut x = x_chart.to_vec();
        let mut y = y_chart.to_vec();
        for i in 0..d1 {
            x[i] += du[1 + i];
        }
        for i in 0..d2 {
            y[i] += du[1 + d1 + i];
        }
        Ok(DVector::from_vec(prod.eval(t_arc + du[0], &x, &y)?))
    };

    let p = phi(&vec![0.0; d])?;
    let mut first = Vec::with_capacity(d);
    let mut second = vec![vec![DVector::<f64>::zeros(amb); d]; d];

    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = h;
        let plus = phi(&e)?;
        e[i] = -h;
        let minus = phi(&e)?;
        first.push((&plus - &minus) / (2.0 * h));
        second[i][i] = (&plus - 2.0 * &p + &minus) / (h * h);
    }
    for i in 0..d {
        for j in 0..i {
            let mut e = vec![0.0; d];
            let assemble = |si: f64, sj: f64, e: &mut Vec<f64>| {
                e[i] = si * h;
                e[j] = sj * h;
            };
            assemble(1.0, 1.0, &mut e);
            let pp = phi(&e)?;
            assemble(1.0, -1.0, &mut e);
            let pm = phi(&e)?;
            assemble(-1.0, 1.0, &mut e);
            let mp = phi(&e)?;
            assemble(-1.0, -1.0, &mut e);
            let mm = phi(&e)?;
            let mixed = (pp - pm - mp + mm) / (4.0 * h * h);
            second[i][j] = mixed.clone();
            second[j][i] = mixed;
        }
    }

    let mut gram = DMatrix::<f64>::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            gram[(i, j)] = first[i].dot(&first[j]);
        }
    }
    let gram_inv = gram
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Domain("degenerate chart metric".into()))?;

    let mut h_amb = DVector::<f64>::zeros(amb);
    for i in 0..d {
        for j in 0..d {
            h_amb += gram_inv[(i, j)] * &second[i][j];
        }
    }

    // subtract the tangential part and the sphere normal direction
    let mut tangential = DVector::<f64>::zeros(amb);
    for k in 0..d {
        for l in 0..d {
            tangential += gram_inv[(k, l)] * h_amb.dot(&first[k]) * &first[l];
        }
    }
    let mut h_sphere = h_amb - tangential;
    let p_hat = &p / p.norm();
    h_sphere -= &p_hat * h_sphere.dot(&p_hat);
    Ok(h_sphere.iter().cloned().collect())
}

/// Legendrian angle (mod 2 pi, up to the construction's additive constant)
/// from a curve 2-jet.
pub fn legendrian_angle_from_jet(jet: &CurveJet2, k1: u32, k2: u32) -> f64 {
    // gamma1 gamma2' - gamma1' gamma2 =
    //   e^{i(s1+s2)} [(a b' - a' b) + i a b (s2' - s1')]
    let re = jet.a * jet.b_d - jet.a_d * jet.b;
    let im = jet.a * jet.b * (jet.s2_d - jet.s1_d);
    let phase = k1 as f64 * std::f64::consts::PI
        + (k1 as f64 + 1.0) * jet.s1
        + (k2 as f64 + 1.0) * jet.s2;
    let (c, s) = (phase.cos(), phase.sin());
    (s * re + c * im).atan2(c * re - s * im)
}

/// Legendrian angle at pendulum coordinate s on the fundamental pass.
pub fn legendrian_angle(curve: &GammaCurve, s: f64, k1: u32, k2: u32) -> Result<f64> {
    let t = curve.arc_at(s)?;
    Ok(legendrian_angle_from_jet(&curve.jet2(t)?, k1, k2))
}

/// Maximal circular spread of the Legendrian angle over a sample sweep.
pub fn legendrian_variation(curve: &impl SphereCurve, k1: u32, k2: u32, n: usize) -> Result<f64> {
    let span = curve.arc_span();
    let mut ref_angle = None;
    let mut worst = 0.0f64;
    for i in 1..n {
        let t = span * i as f64 / n as f64;
        let jet = match curve.jet2(t) {
            Ok(j) => j,
            Err(_) => continue, // turning-point samples are skipped
        };
        let beta = legendrian_angle_from_jet(&jet, k1, k2);
        let r = *ref_angle.get_or_insert(beta);
        // distance on the circle
        let mut d = (beta - r).rem_euclid(2.0 * std::f64::consts::PI);
        if d > std::f64::consts::PI {
            d = 2.0 * std::f64::consts::PI - d;
        }
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Largest defect of the C-totally-real relation a^2 s1' + b^2 s2' = 0
/// over interior samples; the relation holds exactly when C = -1.
pub fn ctotally_real_defect(curve: &impl SphereCurve, n: usize) -> Result<f64> {
    let span = curve.arc_span();
    let mut worst = 0.0f64;
    for i in 1..n {
        let t = span * i as f64 / n as f64;
        if let Ok(jet) = curve.jet2(t) {
            // normalize to the unit-speed parametrization of (a, b) so the
            // defect is comparable with the pendulum-coordinate statement
            let speed2 =
                jet.a_d * jet.a_d + jet.b_d * jet.b_d + (jet.a * jet.s1_d).powi(2) + (jet.b * jet.s2_d).powi(2);
            let defect = (jet.a * jet.a * jet.s1_d + jet.b * jet.b * jet.s2_d) * speed2.sqrt()
                / (jet.a_d * jet.a_d + jet.b_d * jet.b_d).sqrt().max(1e-300);
            worst = worst.max(defect.abs());
        }
    }
    Ok(worst)
}

/// True iff the curve satisfies the C-totally-real relation to tolerance.
pub fn ctotally_real_check(curve: &GammaCurve) -> Result<bool> {
    let dom = curve.domain;
    let mut worst = 0.0f64;
    for i in 1..128 {
        let s = dom.z_l + dom.width() * i as f64 / 128.0;
        let jet = rate_jet(&curve.params, s, curve.rate_scale())?;
        let defect = jet.a * jet.a * jet.s1_d + jet.b * jet.b * jet.s2_d;
        worst = worst.max(defect.abs());
    }
    Ok(worst < crate::config::tol::CTOTALLY_REAL)
}

/// Deviations of the two Laplacian eigenvalue brackets from -(k1 + k2 + 1).
///
/// The brackets are complex; the returned residuals are their moduli of
/// deviation.  Derivatives are taken in the arc parameter.
pub fn takahashi_residual_from_jet(jet: &CurveJet2, k1: u32, k2: u32) -> (f64, f64) {
    use num_complex::Complex64 as C64;
    let expect = -(k1 as f64 + k2 as f64 + 1.0);
    let (k1f, k2f) = (k1 as f64, k2 as f64);

    let slot = |m: f64, md: f64, mdd: f64, sd: f64, sdd: f64, k_self: f64| -> (C64, C64) {
        // gamma = m e^{i s}: gamma'/gamma and gamma''/gamma with the phase cancelled
        let ratio1 = C64::new(md / m, sd);
        let ratio2 = C64::new(mdd / m - sd * sd, 2.0 * md * sd / m + sdd);
        let _ = k_self;
        (ratio1, ratio2)
    };
    let (r1a, r2a) = slot(jet.a, jet.a_d, jet.a_dd, jet.s1_d, jet.s1_dd, k1f);
    let (r1b, r2b) = slot(jet.b, jet.b_d, jet.b_dd, jet.s2_d, jet.s2_dd, k2f);

    let mix = k1f * jet.a_d / jet.a + k2f * jet.b_d / jet.b;
    let bracket1 = C64::new(-k1f / (jet.a * jet.a), 0.0) + r2a + mix * r1a;
    let bracket2 = C64::new(-k2f / (jet.b * jet.b), 0.0) + r2b + mix * r1b;
    (
        (bracket1 - C64::new(expect, 0.0)).norm(),
        (bracket2 - C64::new(expect, 0.0)).norm(),
    )
}

/// Laplacian residuals at pendulum coordinate s on the fundamental pass.
pub fn takahashi_residual(curve: &GammaCurve, s: f64, k1: u32, k2: u32) -> Result<(f64, f64)> {
    let t = curve.arc_at(s)?;
    Ok(takahashi_residual_from_jet(&curve.jet2(t)?, k1, k2))
}

/// Largest Laplacian residuals over an interior sweep.
pub fn sweep_takahashi(curve: &impl SphereCurve, k1: u32, k2: u32, n: usize) -> Result<(f64, f64)> {
    let span = curve.arc_span();
    let mut worst = (0.0f64, 0.0f64);
    for i in 1..n {
        let t = span * i as f64 / n as f64;
        if let Ok(jet) = curve.jet2(t) {
            let (r1, r2) = takahashi_residual_from_jet(&jet, k1, k2);
            worst.0 = worst.0.max(r1);
            worst.1 = worst.1.max(r2);
        }
    }
    Ok(worst)
}

/// Report of the great-circle degeneration checks for k1 = k2 = 0.
#[derive(Debug, Clone, Copy)]
pub struct GreatCircleReport {
    /// max over samples of |G'' + G| (h = 1e-3 central difference).
    pub max_second_defect: f64,
    /// max over samples of ||G'| - 1| (fourth-order stencil).
    pub max_speed_defect: f64,
    pub passed: bool,
}

/// Verifies G'' = -G and |G'| = 1 by finite differences in the arc
/// parameter; only meaningful for k1 = k2 = 0 with point factors.
pub fn great_circle_check(curve: &GammaCurve) -> Result<GreatCircleReport> {
    if curve.params.k1 != 0 || curve.params.k2 != 0 {
        return Err(Error::Domain(
            "great-circle check requires k1 = k2 = 0".into(),
        ));
    }
    let h = 1e-3;
    let span = curve.arc_span();
    let n = 40;
    let mut max_second = 0.0f64;
    let mut max_speed = 0.0f64;
    for i in 1..n {
        let t = span * i as f64 / n as f64;
        if t < 2.0 * h || t > span - 2.0 * h {
            continue;
        }
        let amb = |t: f64| -> Result<[f64; 4]> { Ok(curve.point_precise(t)?.ambient()) };
        let (m2, m1, p0, p1, p2) = (
            amb(t - 2.0 * h)?,
            amb(t - h)?,
            amb(t)?,
            amb(t + h)?,
            amb(t + 2.0 * h)?,
        );
        let mut second = 0.0;
        let mut speed = 0.0;
        for j in 0..4 {
            let dd = (p1[j] - 2.0 * p0[j] + m1[j]) / (h * h);
            second += (dd + p0[j]).powi(2);
            let d = (8.0 * (p1[j] - m1[j]) - (p2[j] - m2[j])) / (12.0 * h);
            speed += d * d;
        }
        max_second = max_second.max(second.sqrt());
        max_speed = max_speed.max((speed.sqrt() - 1.0).abs());
    }
    Ok(GreatCircleReport {
        max_second_defect: max_second,
        max_speed_defect: max_speed,
        passed: max_second < crate::config::tol::GREAT_CIRCLE_SECOND
            && max_speed < crate::config::tol::GREAT_CIRCLE_SPEED,
    })
}

/// Maximal distance of 4-dimensional samples to their best-fit 2-plane
/// through the origin.
pub fn plane_fit_residual(points: &[[f64; 4]]) -> f64 {
    let mut gram = DMatrix::<f64>::zeros(4, 4);
    for p in points {
        for i in 0..4 {
            for j in 0..4 {
                gram[(i, j)] += p[i] * p[j];
            }
        }
    }
    let eig = gram.symmetric_eigen();
    // the two smallest eigendirections span the normal space of the plane
    let mut idx: Vec<usize> = (0..4).collect();
    idx.sort_by(|&i, &j| {
        let (a, b): (f64, f64) = (eig.eigenvalues[i], eig.eigenvalues[j]);
        a.partial_cmp(&b).unwrap()
    });
    let mut worst = 0.0f64;
    for p in points {
        let mut d2 = 0.0;
        for &k in &idx[..2] {
            let dir = eig.eigenvectors.column(k);
            let c: f64 = (0..4).map(|i| p[i] * dir[i]).sum();
            d2 += c * c;
        }
        worst = worst.max(d2.sqrt());
    }
    worst
}

/// Residual of the best origin-centered conic A x^2 + B xy + C y^2 = 1
/// through planar samples.
pub fn ellipse_fit_residual(points: &[(f64, f64)]) -> f64 {
    let mut ata = DMatrix::<f64>::zeros(3, 3);
    let mut atb = DVector::<f64>::zeros(3);
    for &(x, y) in points {
        let row = [x * x, x * y, y * y];
        for i in 0..3 {
            for j in 0..3 {
                ata[(i, j)] += row[i] * row[j];
            }
            atb[i] += row[i];
        }
    }
    let coeffs = match ata.lu().solve(&atb) {
        Some(c) => c,
        None => return f64::INFINITY,
    };
    let mut worst = 0.0f64;
    for &(x, y) in points {
        let v: f64 = coeffs[0] * x * x + coeffs[1] * x * y + coeffs[2] * y * y - 1.0;
        worst = worst.max(v.abs());
    }
    worst
}

/// Maximal distance of planar samples to their best line through the origin.
pub fn collinearity_residual(points: &[(f64, f64)]) -> f64 {
    let (mut xx, mut xy, mut yy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        xx += x * x;
        xy += x * y;
        yy += y * y;
    }
    // normal direction of the best line: smaller eigenvector of the 2x2 Gram
    let tr = xx + yy;
    let det = xx * yy - xy * xy;
    let lam = 0.5 * (tr - (tr * tr - 4.0 * det).max(0.0).sqrt());
    let (nx, ny) = if xy.abs() > 1e-300 {
        (lam - yy, xy)
    } else if xx < yy {
        (1.0, 0.0)
    } else {
        (0.0, 1.0)
    };
    let norm = (nx * nx + ny * ny).sqrt();
    let mut worst = 0.0f64;
    for &(x, y) in points {
        worst = worst.max((x * nx + y * ny).abs() / norm);
    }
    worst
}

/// Scales a point of C^m (block layout) by the unit complex number making
/// its first nonzero complex coordinate real and positive; representatives
/// of the same Hopf fiber map to the same output.
pub fn hopf_project(point: &ComplexVec) -> Result<ComplexVec> {
    let scale = point.norm();
    if scale == 0.0 {
        return Err(Error::Domain("cannot project the zero vector".into()));
    }
    for j in 0..point.complex_dim() {
        let (re, im) = (point.re[j], point.im[j]);
        let mag = (re * re + im * im).sqrt();
        if mag > 1e-12 * scale {
            // multiply by conj(z_j)/|z_j|
            let (c, s) = (re / mag, -im / mag);
            let mut out = ComplexVec::zeros(point.complex_dim());
            for k in 0..point.complex_dim() {
                out.re[k] = c * point.re[k] - s * point.im[k];
                out.im[k] = s * point.re[k] + c * point.im[k];
            }
            return Ok(out);
        }
    }
    Err(Error::Domain("cannot project the zero vector".into()))
}

/// Hopf projection on a real block-layout vector of even dimension.
pub fn hopf_project_real(point: &[f64]) -> Result<Vec<f64>> {
    if point.len() % 2 != 0 {
        return Err(Error::Domain("even real dimension required".into()));
    }
    let m = point.len() / 2;
    let cv = ComplexVec {
        re: point[..m].to_vec(),
        im: point[m..].to_vec(),
    };
    Ok(hopf_project(&cv)?.to_real())
}
