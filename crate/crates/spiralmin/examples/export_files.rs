//! Writing curve and mesh files: deterministic JSON, CSV, and OBJ-style
//! vertex lists with a JSON sidecar.
//!
//! Run with: cargo run --release --example export_files

use spiralmin::export::{curve_to_csv, curve_to_json, curve_to_obj, mesh_to_obj, CurveFile};
use spiralmin::geometry::{FactorImmersion, ProductImmersion};
use spiralmin::pendulum::{extend_reflect, integrate_basic};
use spiralmin::{threshold, SpinParams};

fn main() -> spiralmin::Result<()> {
    let m = threshold(1, 1, -1.0);
    let params = SpinParams::new(1, 1, -1.0, 2.0 * m)?;
    let curve = extend_reflect(&integrate_basic(&params, 64)?, 2)?;

    let dir = std::env::temp_dir().join("spiralmin_export");
    std::fs::create_dir_all(&dir)?;

    let json = curve_to_json(&curve);
    std::fs::write(dir.join("curve.json"), &json)?;
    std::fs::write(dir.join("curve.csv"), curve_to_csv(&curve))?;
    std::fs::write(dir.join("curve.obj"), curve_to_obj(&curve))?;

    // identical inputs produce byte-identical files
    let again = curve_to_json(&extend_reflect(&integrate_basic(&params, 64)?, 2)?);
    println!("deterministic JSON: {}", json == again);

    // the file round-trips through the reader
    let file = CurveFile::parse(&json)?;
    file.validate()?;
    let rebuilt = file.rebuild(64)?;
    println!("round trip identical: {}", curve_to_json(&rebuilt) == json);

    let prod = ProductImmersion::new(&curve, FactorImmersion::equator(1), FactorImmersion::equator(1));
    let (obj, sidecar) = mesh_to_obj(&prod, 48, 7, 0.5)?;
    std::fs::write(dir.join("mesh.obj"), &obj)?;
    std::fs::write(dir.join("mesh.meta.json"), &sidecar)?;
    println!("mesh sidecar: {sidecar}");
    println!("files written under {}", dir.display());
    Ok(())
}
