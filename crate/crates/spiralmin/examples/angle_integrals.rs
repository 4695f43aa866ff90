//! The per-pass complex angle advances J1 and J2, the weighted identity at
//! C = -1, and the analytic limits at both ends of the Ctilde range.
//!
//! Run with: cargo run --release --example angle_integrals

use spiralmin::quadrature::{angle_integrals, limit_j1_infinity, limit_j1_threshold, limit_j2_infinity};
use spiralmin::{threshold, SpinParams};
use std::f64::consts::PI;

fn main() -> spiralmin::Result<()> {
    let (k1, k2) = (1u32, 2u32);
    let m = threshold(k1, k2, -1.0);
    println!("(k1, k2) = ({k1}, {k2}), C = -1, threshold = {m:.6}");
    println!("{:>12} {:>14} {:>14} {:>16}", "Ctilde/m", "J1/pi", "J2/pi", "(k1+1)J1-(k2+1)J2");
    for mult in [1.001, 1.1, 2.0, 10.0, 1e3, 1e6] {
        let ai = angle_integrals(&SpinParams::new(k1, k2, -1.0, mult * m)?)?;
        let identity = (k1 as f64 + 1.0) * ai.j1 - (k2 as f64 + 1.0) * ai.j2;
        println!(
            "{mult:>12.3e} {:>14.8} {:>14.8} {identity:>16.2e}",
            ai.j1 / PI,
            ai.j2 / PI
        );
    }
    println!(
        "limits: J1 -> {:.8} pi at the threshold, -> {:.8} pi at infinity",
        limit_j1_threshold(k1, k2, -1.0)? / PI,
        limit_j1_infinity(k1) / PI
    );
    println!(
        "        J2 -> {:.8} pi at infinity",
        limit_j2_infinity(k2, -1.0)? / PI
    );

    // the singly spiral integral I(Ctilde) for C = 0
    println!("\n(k1, k2) = (0, 1), C = 0:");
    let m = threshold(0, 1, 0.0);
    for mult in [1.01, 2.0, 100.0] {
        let ai = angle_integrals(&SpinParams::new(0, 1, 0.0, mult * m)?)?;
        println!("  Ctilde = {:>8.3}: I = {:.8} pi", mult * m, ai.j1 / PI);
    }
    println!(
        "  range of I: ({:.6} pi, {:.6} pi)",
        limit_j1_infinity(0) / PI,
        limit_j1_threshold(0, 1, 0.0)? / PI
    );
    Ok(())
}
