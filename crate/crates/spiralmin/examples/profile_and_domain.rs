//! The pendulum profile P_C and its basic domain.
//!
//! For each parameter point the generating curve's magnitude angle swings
//! over the interval where Ctilde exceeds the profile; the profile minimum
//! is the threshold below which no curve exists.
//!
//! Run with: cargo run --release --example profile_and_domain

use spiralmin::{basic_domain, critical_point, profile_value, threshold, SpinParams};
use std::f64::consts::PI;

fn main() -> spiralmin::Result<()> {
    for (k1, k2, c) in [(0u32, 0u32, 1.0), (1, 1, -1.0), (2, 0, 1.0), (0, 1, 0.0)] {
        let s_c = critical_point(k1, k2, c);
        let m = threshold(k1, k2, c);
        println!("(k1, k2, C) = ({k1}, {k2}, {c})");
        println!("  critical point s_C = {:.12} = {:.6} pi", s_c, s_c / PI);
        println!("  threshold P_C(s_C) = {m:.12}");

        if s_c > 0.0 {
            println!("  profile near the minimum:");
            for ds in [-0.2, -0.1, 0.0, 0.1, 0.2] {
                let s = s_c + ds;
                println!("    P_C({s:.4}) = {:.6}", profile_value(k1, k2, c, s)?);
            }
        }

        // the domain pinches onto the critical point as Ctilde drops
        for mult in [8.0, 2.0, 1.0 + 1e-4] {
            let params = SpinParams::new(k1, k2, c, mult * m)?;
            match basic_domain(&params) {
                Ok(dom) => println!(
                    "  Ctilde = {:>10.4}: domain ({:.6}, {:.6}), width {:.3e}",
                    params.ctilde,
                    dom.z_l,
                    dom.z_r,
                    dom.width()
                ),
                Err(e) => println!("  Ctilde = {:>10.4}: {e}", params.ctilde),
            }
        }
        println!();
    }
    Ok(())
}
