//! The k1 = k2 = 0 degeneration: every generating curve runs a great
//! circle, its first complex slot draws an ellipse, and for C = 0 the
//! second slot runs a straight segment back and forth.
//!
//! Run with: cargo run --release --example great_circle_degeneration

use spiralmin::geometry::{
    collinearity_residual, ellipse_fit_residual, great_circle_check, plane_fit_residual,
};
use spiralmin::pendulum::{extend_reflect, integrate_basic, SphereCurve};
use spiralmin::{threshold, SpinParams};

fn main() -> spiralmin::Result<()> {
    for c in [1.0, -0.5, 0.0] {
        let m = threshold(0, 0, c);
        let params = SpinParams::new(0, 0, c, 2.0 * m.max(1.0) + 2.0)?;
        let curve = extend_reflect(&integrate_basic(&params, 256)?, 4)?;
        let report = great_circle_check(&curve)?;
        println!("C = {c}:");
        println!(
            "  |G'' + G| = {:.2e}, ||G'| - 1| = {:.2e}  -> great circle: {}",
            report.max_second_defect, report.max_speed_defect, report.passed
        );

        let pts: Vec<[f64; 4]> = (0..400)
            .map(|i| {
                let t = curve.arc_span() * i as f64 / 400.0;
                curve.point_precise(t).unwrap().ambient()
            })
            .collect();
        println!("  distance to best 2-plane: {:.2e}", plane_fit_residual(&pts));
        let slot1: Vec<(f64, f64)> = pts.iter().map(|p| (p[0], p[1])).collect();
        println!("  first-slot conic residual: {:.2e}", ellipse_fit_residual(&slot1));
        if c == 0.0 {
            let slot2: Vec<(f64, f64)> = pts.iter().map(|p| (p[2], p[3])).collect();
            println!("  second-slot collinearity: {:.2e}", collinearity_residual(&slot2));
        }
    }
    Ok(())
}
