//! The steady-magnitude family: closed-form magnitude pairs, the
//! feasibility band, and the degeneration of pendulum curves onto steady
//! ones as the integration constant drops to the threshold.
//!
//! Run with: cargo run --release --example steady_family

use spiralmin::closure::ratio_r_boundary;
use spiralmin::quadrature::angle_integrals;
use spiralmin::steady::{constant_product_coefficients, steady_ratio, steady_trace, SpinRatio};
use spiralmin::{threshold, SpinParams};

fn main() -> spiralmin::Result<()> {
    let (k1, k2) = (2u32, 3u32);
    println!("steady magnitudes for (k1, k2) = ({k1}, {k2}):");
    println!("{:>10} {:>12} {:>12} {:>12}", "c", "a", "b", "trace");
    for c in [-5.0, -1.0, -0.3, 0.4, 1.0, 2.0, 20.0] {
        let (a, b) = steady_ratio(k1, k2, SpinRatio::Finite(c))?;
        let t = steady_trace(k1, k2, a, b, SpinRatio::Finite(c));
        println!("{c:>10.2} {a:>12.8} {b:>12.8} {t:>12.2e}");
    }
    let (a, b) = steady_ratio(k1, k2, SpinRatio::Infinite)?;
    println!("{:>10} {a:>12.8} {b:>12.8}", "inf");
    let (l, mu) = constant_product_coefficients(k1, k2)?;
    println!("constant minimal product coefficients: ({l:.8}, {mu:.8})");
    println!(
        "feasibility band for a^2/b^2: [{:.6}, {:.6}]",
        k1 as f64 / (k2 as f64 + 1.0),
        (k1 as f64 + 1.0) / k2 as f64
    );

    // the singly case with a flat second factor
    let (a, b) = steady_ratio(3, 0, SpinRatio::Infinite)?;
    println!("\nsingly steady (k1 = 3, k2 = 0): a = {a:.8} = sqrt(3)/2, b = {b:.8} = 1/2");

    // pendulum curves near the threshold carry the steady spin ratio
    println!("\npendulum -> steady degeneration at (1, 2), C = 2:");
    let m = threshold(1, 2, 2.0);
    let boundary = ratio_r_boundary(1, 2, 2.0);
    for gap in [1e-2, 1e-4, 1e-6, 1e-8] {
        let ai = angle_integrals(&SpinParams::new(1, 2, 2.0, m * (1.0 + gap))?)?;
        let r = 2.0 * ai.j2 / ai.j1;
        println!(
            "  gap {gap:>8.0e}: C J2/J1 = {r:.10}  (boundary value C cot^2 s_C = {boundary:.10})"
        );
    }
    Ok(())
}
