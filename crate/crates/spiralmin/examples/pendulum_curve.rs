//! Integrating a generating curve through its turning points and extending
//! it by the rotational reflection rule.
//!
//! The zero-dimension case closes up as a great circle after two pendulum
//! rounds; higher-dimensional parameters give spiralling curves whose angle
//! advances decide closure.
//!
//! Run with: cargo run --release --example pendulum_curve

use spiralmin::pendulum::{extend_reflect, gamma_point, integrate_basic, SphereCurve};
use spiralmin::{threshold, SpinParams};
use std::f64::consts::PI;

fn main() -> spiralmin::Result<()> {
    // a great circle in disguise: k1 = k2 = 0
    let params = SpinParams::new(0, 0, 1.0, 8.0)?;
    let curve = extend_reflect(&integrate_basic(&params, 256)?, 4)?;
    println!("k1 = k2 = 0, C = 1, Ctilde = 8:");
    println!("  delta_s1 per pass = {:.12} ({:.4} pi)", curve.delta_s1, curve.delta_s1 / PI);
    let start = gamma_point(&curve, 0.0)?;
    let end = gamma_point(&curve, curve.arc_span())?;
    let gap: f64 = start
        .iter()
        .zip(&end)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    println!("  |gamma(0) - gamma(4 passes)| = {gap:.3e}  (closes as a great circle)");

    // a doubly spiral curve
    let m = threshold(1, 2, -1.0);
    let params = SpinParams::new(1, 2, -1.0, 2.5 * m)?;
    let curve = extend_reflect(&integrate_basic(&params, 256)?, 6)?;
    println!("\nk1 = 1, k2 = 2, C = -1, Ctilde = 2.5 threshold:");
    println!("  domain ({:.6}, {:.6})", curve.domain.z_l, curve.domain.z_r);
    println!("  per-pass advances: s1 += {:.6} pi, s2 += {:.6} pi", curve.delta_s1 / PI, curve.delta_s2 / PI);
    println!("  arc length per pass = {:.6}", curve.pass_arc);
    println!("  samples along three passes:");
    for i in 0..=6 {
        let t = curve.arc_span() * i as f64 / 6.0;
        let p = curve.point(t)?;
        println!(
            "    t = {t:>8.4}: a = {:.4}, b = {:.4}, s1 = {:>8.4}, s2 = {:>8.4}",
            p.a, p.b, p.s1, p.s2
        );
    }
    Ok(())
}
