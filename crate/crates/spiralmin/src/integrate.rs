//! Adaptive composite Gauss-Legendre quadrature with a square-root
//! substitution for integrable inverse-square-root endpoint singularities.
//!
//! The pendulum angle rates blow up like 1/sqrt(distance) at the turning
//! points because the radicand has simple zeros there.  Substituting
//! u = sqrt(s - z) straightens the singularity into an analytic integrand,
//! after which plain Gauss-Legendre panels converge spectrally.

use std::sync::OnceLock;

const GL_N: usize = 32;

fn gl_nodes() -> &'static ([f64; GL_N], [f64; GL_N]) {
    static NODES: OnceLock<([f64; GL_N], [f64; GL_N])> = OnceLock::new();
    NODES.get_or_init(|| {
        // Newton iteration on P_n with the standard asymptotic initial guess.
        let n = GL_N;
        let mut xs = [0.0; GL_N];
        let mut ws = [0.0; GL_N];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0_f64, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            xs[i] = x;
            ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (xs, ws)
    })
}

/// Single 32-point Gauss-Legendre panel on [a, b].
pub fn gl_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (xs, ws) = gl_nodes();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..GL_N {
        acc += ws[i] * f(mid + half * xs[i]);
    }
    acc * half
}

fn adaptive_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    min_width: f64,
    depth: usize,
    budget: &mut u32,
    err: &mut f64,
) -> f64 {
    let mid = 0.5 * (a + b);
    let left = gl_panel(f, a, mid);
    let right = gl_panel(f, mid, b);
    let delta = left + right - whole;
    // the budget bounds total work when roundoff noise keeps panels from
    // ever meeting a tolerance that shrinks with the panel width
    if !(delta.abs() > tol) || depth >= 40 || b - a <= min_width || *budget == 0 {
        *err += delta.abs();
        return left + right + delta / 15.0;
    }
    *budget -= 1;
    adaptive_rec(f, a, mid, left, 0.5 * tol, min_width, depth + 1, budget, err)
        + adaptive_rec(f, mid, b, right, 0.5 * tol, min_width, depth + 1, budget, err)
}

/// Adaptive integral of a smooth integrand with an error estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> (f64, f64) {
    integrate_floored(f, a, b, rel_tol, 0.0)
}

/// Adaptive integral that never subdivides below `min_width`.
///
/// The floor keeps the rule from drilling into sub-roundoff boundary layers
/// of regularized turning-point integrands (see
/// [`SqrtFactoredHalf::segment`]); the layers carry no true mass at the
/// working precision.
pub fn integrate_floored<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    min_width: f64,
) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let whole = gl_panel(f, a, b);
    let scale = whole.abs().max(1e-30);
    let mut err = 0.0;
    let mut budget = 2048;
    let val = adaptive_rec(f, a, b, whole, rel_tol * scale, min_width, 0, &mut budget, &mut err);
    (val, err)
}

/// One half of an interval whose integrands look like h(s)/sqrt(R(s)) with a
/// simple zero of R at `root`.
///
/// The substitution s = root + sign u^2 together with the algebraic
/// cancellation sqrt(R) = u sqrt(R(s)/|s - root|) turns the integrand into
/// the bounded 2 h / sqrt(Q).  Q is evaluated as a ratio, so quadrature
/// nodes never probe the cancellation-dominated region next to the root and
/// a turning point placed within roundoff of the true zero costs no
/// accuracy.
#[derive(Debug, Clone, Copy)]
pub struct SqrtFactoredHalf {
    /// Endpoint of the interval carrying the zero of R.
    pub root: f64,
    /// +1 when the interval extends to the right of the root.
    pub sign: f64,
    /// Far end of the half (the interior split point).
    pub far: f64,
}

impl SqrtFactoredHalf {
    pub fn left(root: f64, far: f64) -> Self {
        SqrtFactoredHalf { root, sign: 1.0, far }
    }

    pub fn right(root: f64, far: f64) -> Self {
        SqrtFactoredHalf { root, sign: -1.0, far }
    }

    pub fn u_of(&self, s: f64) -> f64 {
        (self.sign * (s - self.root)).max(0.0).sqrt()
    }

    /// Integral of h(s)/sqrt(r(s)) over the s-interval [sa, sb], which must
    /// lie inside this half.  `r_deriv` is the analytic derivative of r.
    pub fn segment<H, R, D>(
        &self,
        h: &H,
        r: &R,
        r_deriv: &D,
        sa: f64,
        sb: f64,
        rel_tol: f64,
    ) -> (f64, f64)
    where
        H: Fn(f64) -> f64,
        R: Fn(f64) -> f64,
        D: Fn(f64) -> f64,
    {
        let (ua, ub) = (self.u_of(sa), self.u_of(sb));
        let (lo, hi) = if ua <= ub { (ua, ub) } else { (ub, ua) };
        // Within ~sqrt(ulp) of the root the ratio r/(s - root) is pure
        // cancellation noise.  There the mean-value identity
        // r(s)/(s - root) = r'(root + (s - root)/2) + O((s - root)^2)
        // supplies Q from the noise-free derivative; the integral is split
        // at the hand-over point so every panel sees an analytic integrand.
        let u_safe = 1e-4 * (1.0 + self.root.abs());
        let mut total = 0.0;
        let mut err = 0.0;
        if lo < u_safe {
            let g_in = |u: f64| {
                let s = self.root + self.sign * u * u;
                let q = self.sign * r_deriv(self.root + self.sign * u * u * 0.5);
                2.0 * h(s) / q.sqrt()
            };
            let (v, e) = integrate_floored(&g_in, lo, hi.min(u_safe), rel_tol, 0.0);
            total += v;
            err += e;
        }
        if hi > u_safe {
            let g_out = |u: f64| {
                let s = self.root + self.sign * u * u;
                let q = r(s) / (self.sign * (s - self.root));
                2.0 * h(s) / q.sqrt()
            };
            let floor = 3e-5 * self.u_of(self.far).max(hi);
            let (v, e) = integrate_floored(&g_out, lo.max(u_safe), hi, rel_tol, floor);
            total += v;
            err += e;
        }
        (total, err)
    }
}

/// Integral of h(s)/sqrt(r(s)) over (left, right) where r has simple zeros
/// at both endpoints; `split` is any interior point and `panels` seeds the
/// composite rule so independent evaluations run on different grids.
pub fn integrate_sqrt_endpoints<H, R, D>(
    h: &H,
    r: &R,
    r_deriv: &D,
    left: f64,
    right: f64,
    split: f64,
    panels: usize,
    rel_tol: f64,
) -> (f64, f64)
where
    H: Fn(f64) -> f64,
    R: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    assert!(left < split && split < right);
    let halves = [
        SqrtFactoredHalf::left(left, split),
        SqrtFactoredHalf::right(right, split),
    ];
    let mut total = 0.0;
    let mut err = 0.0;
    for half in halves {
        let m = panels.max(1) as f64;
        let (sa, sb) = if half.sign > 0.0 { (left, split) } else { (split, right) };
        let (ua, ub) = (half.u_of(sb).min(half.u_of(sa)), half.u_of(sb).max(half.u_of(sa)));
        for k in 0..panels.max(1) {
            let x0 = ua + (ub - ua) * k as f64 / m;
            let x1 = ua + (ub - ua) * (k + 1) as f64 / m;
            let (s0, s1) = (
                half.root + half.sign * x0 * x0,
                half.root + half.sign * x1 * x1,
            );
            let (v, e) = half.segment(h, r, r_deriv, s0.min(s1), s0.max(s1), rel_tol);
            total += v;
            err += e;
        }
    }
    (total, err)
}
