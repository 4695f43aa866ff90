//! Searching for rational closure and certifying the result exactly.
//!
//! Solving J1 = pi q in the integration constant gives a closed generating
//! curve; the certificate records the exact angle lattice, the number of
//! pendulum rounds to close, and the quotient topology.
//!
//! Run with: cargo run --release --example closure_search

use spiralmin::closure::{
    antipodal_disjoint, certify_closure, classify_doubly, classify_singly, solve_for_target,
    AntipodalSymmetry, Rational,
};
use spiralmin::quadrature::angle_integrals;
use spiralmin::SpinParams;
use std::f64::consts::PI;

fn main() -> spiralmin::Result<()> {
    // a singly spiral product of a circle and a sphere: I(Ctilde) = 3 pi/5
    let q = Rational::new(3, 5);
    let roots = solve_for_target(0, 1, 0.0, q)?;
    println!("targets I = 3 pi / 5 at (k1, k2, C) = (0, 1, 0):");
    for ct in &roots {
        let ai = angle_integrals(&SpinParams::new(0, 1, 0.0, *ct)?)?;
        println!("  Ctilde = {ct:.10}, residual {:.2e}", (ai.j1 - PI * 0.6).abs());
    }
    println!(
        "  class (antipodally symmetric factor): {:?}",
        classify_singly(q, AntipodalSymmetry::Antipodal).as_str()
    );
    println!(
        "  rounds to close: {}",
        certify_closure(q, Rational::new(0, 1), true)
    );

    // an embedded example: J1 = pi/4 at C = -1 forces J2 = 3 pi/4 exactly
    let q1 = Rational::new(1, 4);
    let roots = solve_for_target(2, 1, -1.0, q1)?;
    let q2 = q1 * Rational::new(-3, 2); // -(k1+1)/(k2+1) q1
    println!("\ndoubly spiral embedding at (k1, k2, C) = (2, 1, -1):");
    println!("  Ctilde = {:.10}", roots[0]);
    println!("  q1 = {q1}, q2 = {q2}");
    println!("  class: {}", classify_doubly(q1, q2)?.as_str());
    println!("  rounds to close: {}", certify_closure(q1, q2, true));
    println!("  minima set antipodally disjoint: {}", antipodal_disjoint(q1, q2));
    Ok(())
}
