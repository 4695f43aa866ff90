//! Solving the two-parameter closure system J1 = pi q1, C J2 = pi q2 by
//! damped Newton over (C, Ctilde).
//!
//! Run with: cargo run --release --example double_closure

use spiralmin::closure::{double_closure_solve, Rational};
use spiralmin::quadrature::angle_integrals;
use spiralmin::{threshold, SpinParams};
use std::f64::consts::PI;

fn main() -> spiralmin::Result<()> {
    let (k1, k2) = (1u32, 2u32);
    let m = threshold(k1, k2, 1.0);

    // map the attainable (J1, C J2) region coarsely before solving
    println!("coarse map of (J1/pi, C J2/pi) over the positive-spin region:");
    for c in [0.5, 1.0, 2.0] {
        let mc = threshold(k1, k2, c);
        for mult in [1.5, 4.0, 50.0] {
            let ai = angle_integrals(&SpinParams::new(k1, k2, c, mult * mc)?)?;
            println!(
                "  C = {c:>4.1}, Ctilde = {:>10.3}: ({:.4}, {:.4})",
                mult * mc,
                ai.j1 / PI,
                c * ai.j2 / PI
            );
        }
    }

    let q1 = Rational::new(5, 16);
    let q2 = Rational::new(1, 4);
    println!("\nsolving J1 = {q1} pi and C J2 = {q2} pi:");
    match double_closure_solve(k1, k2, q1, q2, (1.0, 2.0 * m)) {
        Ok((c, ct)) => {
            let ai = angle_integrals(&SpinParams::new(k1, k2, c, ct)?)?;
            println!("  (C, Ctilde) = ({c:.10}, {ct:.10})");
            println!(
                "  residuals: {:.2e}, {:.2e}",
                (ai.j1 - PI * 5.0 / 16.0).abs(),
                (c * ai.j2 - PI / 4.0).abs()
            );
        }
        Err(e) => println!("  {e}"),
    }

    // the zero-dimension system is rank deficient: every point solves it
    let seed = (1.3, 9.0);
    let got = double_closure_solve(0, 0, Rational::new(1, 2), Rational::new(1, 2), seed)?;
    println!("\nk1 = k2 = 0 with targets (1/2, 1/2): returns the seed {got:?}");
    Ok(())
}
