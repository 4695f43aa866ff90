//! C = -1 products: the totally-real relation, the Legendrian angle, and
//! the classical Clifford-circle example written as a steady product.
//!
//! Run with: cargo run --release --example legendrian_products

use spiralmin::geometry::{
    ctotally_real_check, hopf_project_real, legendrian_variation, mean_curvature_fd,
    FactorImmersion, ProductImmersion,
};
use spiralmin::pendulum::{integrate_basic, SphereCurve};
use spiralmin::steady::{steady_curve, steady_ratio, SpinRatio};
use spiralmin::{threshold, SpinParams};

fn main() -> spiralmin::Result<()> {
    // the totally-real relation a^2 s1' + b^2 s2' = 0 holds exactly at C = -1
    for c in [-1.0, 0.0, -0.999] {
        let m = threshold(1, 2, c);
        let curve = integrate_basic(&SpinParams::new(1, 2, c, 2.0 * m)?, 128)?;
        println!("C = {c:>7}: totally real = {}", ctotally_real_check(&curve)?);
    }

    // the Legendrian angle is constant exactly along C = -1 solutions
    for (k1, k2, c) in [(1u32, 2u32, -1.0), (0, 1, 0.0)] {
        let m = threshold(k1, k2, c);
        let curve = integrate_basic(&SpinParams::new(k1, k2, c, 3.0 * m)?, 128)?;
        let var = legendrian_variation(&curve, k1, k2, 64)?;
        println!("(k1, k2, C) = ({k1}, {k2}, {c}): Legendrian angle varies by {var:.2e}");
    }

    // a minimal torus in S^5 as the steady C = -1 product of a Clifford
    // circle and a point, covering its Hopf image three times
    let c = -2.0;
    let (a, b) = steady_ratio(1, 0, SpinRatio::Finite(c))?;
    let curve = steady_curve(a, b, SpinRatio::Finite(c), 64)?;
    let prod = ProductImmersion::new(
        &curve,
        FactorImmersion::clifford_circle(3f64.sqrt()),
        FactorImmersion::point(),
    );
    let h = mean_curvature_fd(&prod, 0.37 * curve.arc_span(), &[0.3], &[], 1e-3)?;
    println!("\nClifford-circle x point steady product (a = sqrt(2/3)):");
    println!("  FD mean curvature = {h:.2e}");

    // Hopf projection identifies fiber-rotated representatives
    let p = prod.eval(1.0, &[0.2], &[])?;
    // regroup the two slots into one complex vector (re..., im...)
    let regroup = |v: &[f64]| -> Vec<f64> {
        let (s1, s2) = v.split_at(4);
        let mut re = s1[..2].to_vec();
        re.extend_from_slice(&s2[..1]);
        let mut im = s1[2..].to_vec();
        im.extend_from_slice(&s2[1..]);
        re.extend(im);
        re
    };
    let proj = hopf_project_real(&regroup(&p))?;
    println!("  Hopf representative of a sample: {proj:.4?}");
    Ok(())
}
