//! Deterministic file formats: curve JSON/CSV, closure certificates,
//! verification reports, and OBJ-style vertex exports.
//!
//! Identical inputs must produce byte-identical files, so the JSON writer
//! fixes the field order and serializes every float with 17 significant
//! digits (which round-trips f64 exactly).

use crate::closure::{ClosureCertificate, Rational};
use crate::geometry::ProductImmersion;
use crate::pendulum::GammaCurve;
use crate::profile::SpinParams;
use crate::{Error, Result};

/// Serializes a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x)
    } else if x.is_nan() {
        "null".into()
    } else if x > 0.0 {
        "\"inf\"".into()
    } else {
        "\"-inf\"".into()
    }
}

/// Minimal deterministic JSON assembly.
#[derive(Default)]
pub struct JsonObject {
    parts: Vec<String>,
}

impl JsonObject {
    pub fn new() -> Self {
        JsonObject::default()
    }

    pub fn field_f64(mut self, key: &str, value: f64) -> Self {
        self.parts.push(format!("\"{key}\":{}", fmt_f64(value)));
        self
    }

    pub fn field_u64(mut self, key: &str, value: u64) -> Self {
        self.parts.push(format!("\"{key}\":{value}"));
        self
    }

    pub fn field_bool(mut self, key: &str, value: bool) -> Self {
        self.parts.push(format!("\"{key}\":{value}"));
        self
    }

    pub fn field_str(mut self, key: &str, value: &str) -> Self {
        self.parts.push(format!("\"{key}\":\"{value}\""));
        self
    }

    pub fn field_raw(mut self, key: &str, value: &str) -> Self {
        self.parts.push(format!("\"{key}\":{value}"));
        self
    }

    pub fn finish(self) -> String {
        format!("{{{}}}", self.parts.join(","))
    }
}

/// Curve export with the fixed field order of the file schema.
pub fn curve_to_json(curve: &GammaCurve) -> String {
    let samples: Vec<String> = curve
        .samples()
        .iter()
        .map(|p| {
            JsonObject::new()
                .field_f64("s", p.s)
                .field_f64("t_arc", p.t_arc)
                .field_f64("a", p.a)
                .field_f64("b", p.b)
                .field_f64("s1", p.s1)
                .field_f64("s2", p.s2)
                .finish()
        })
        .collect();
    JsonObject::new()
        .field_u64("k1", curve.params.k1 as u64)
        .field_u64("k2", curve.params.k2 as u64)
        .field_f64("C", curve.params.c)
        .field_f64("Ctilde", curve.params.ctilde)
        .field_f64("z_L", curve.domain.z_l)
        .field_f64("z_R", curve.domain.z_r)
        .field_f64("delta_s1", curve.delta_s1)
        .field_f64("delta_s2", curve.delta_s2)
        .field_raw("samples", &format!("[{}]", samples.join(",")))
        .finish()
}

/// CSV with a header row; RFC 4180 quoting is trivial here because every
/// cell is numeric.
pub fn curve_to_csv(curve: &GammaCurve) -> String {
    let mut out = String::from("s,t_arc,a,b,s1,s2\n");
    for p in curve.samples() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            trimmed(p.s),
            trimmed(p.t_arc),
            trimmed(p.a),
            trimmed(p.b),
            trimmed(p.s1),
            trimmed(p.s2)
        ));
    }
    out
}

fn trimmed(x: f64) -> String {
    format!("{:.16e}", x)
}

/// A curve file read back from JSON.
#[derive(Debug, Clone, serde::Deserialize)]
pub struct CurveFile {
    pub k1: u32,
    pub k2: u32,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "Ctilde")]
    pub ctilde: f64,
    #[serde(rename = "z_L")]
    pub z_l: f64,
    #[serde(rename = "z_R")]
    pub z_r: f64,
    pub delta_s1: f64,
    pub delta_s2: f64,
    pub samples: Vec<SampleFile>,
}

#[derive(Debug, Clone, serde::Deserialize)]
pub struct SampleFile {
    pub s: f64,
    pub t_arc: f64,
    pub a: f64,
    pub b: f64,
    pub s1: f64,
    pub s2: f64,
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("curve file: {e}")))
    }

    pub fn params(&self) -> Result<SpinParams> {
        SpinParams::new(self.k1, self.k2, self.c, self.ctilde)
    }

    /// Number of covered basic-domain passes, inferred from the arc range.
    pub fn rounds(&self) -> u32 {
        let total = self.samples.last().map(|p| p.t_arc).unwrap_or(0.0);
        let width = self.z_r - self.z_l;
        if width <= 0.0 {
            return 1;
        }
        let per_pass = self
            .samples
            .iter()
            .position(|p| (p.s - self.z_r).abs() < 1e-12)
            .map(|i| self.samples[i].t_arc)
            .unwrap_or(total);
        (total / per_pass).round().max(1.0) as u32
    }

    /// Validates the stored samples against the structural invariants.
    pub fn validate(&self) -> Result<()> {
        if self.samples.len() < 2 {
            return Err(Error::Parse("curve file holds fewer than 2 samples".into()));
        }
        let mut prev = f64::NEG_INFINITY;
        for (i, p) in self.samples.iter().enumerate() {
            if p.t_arc <= prev {
                return Err(Error::Parse(format!("t_arc not increasing at row {i}")));
            }
            prev = p.t_arc;
            if (p.a * p.a + p.b * p.b - 1.0).abs() > 1e-12 {
                return Err(Error::Parse(format!("magnitudes off the circle at row {i}")));
            }
        }
        Ok(())
    }

    /// Rebuilds the generating curve from the stored parameters.
    pub fn rebuild(&self, n_samples: usize) -> Result<GammaCurve> {
        let curve = crate::pendulum::integrate_basic(&self.params()?, n_samples)?;
        crate::pendulum::extend_reflect(&curve, self.rounds())
    }
}

pub fn certificate_to_json(cert: &ClosureCertificate) -> String {
    JsonObject::new()
        .field_u64("k1", cert.k1 as u64)
        .field_u64("k2", cert.k2 as u64)
        .field_f64("C", cert.c)
        .field_f64("Ctilde", cert.ctilde)
        .field_str("q1", &rational_str(cert.q1))
        .field_str("q2", &rational_str(cert.q2))
        .field_u64("rounds", cert.rounds_to_close)
        .field_str("class", cert.quotient_class.as_str())
        .field_bool("antipodal_disjoint", cert.antipodal_disjoint)
        .finish()
}

pub fn rational_str(q: Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// One verification measurement.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.residual < self.tolerance
    }
}

pub fn report_to_json(suite: &str, checks: &[CheckResult]) -> String {
    let all = checks.iter().all(|c| c.passed());
    let rows: Vec<String> = checks
        .iter()
        .map(|c| {
            JsonObject::new()
                .field_str("name", &c.name)
                .field_bool("passed", c.passed())
                .field_f64("residual", c.residual)
                .field_f64("tolerance", c.tolerance)
                .finish()
        })
        .collect();
    JsonObject::new()
        .field_str("suite", suite)
        .field_bool("passed", all)
        .field_raw("checks", &format!("[{}]", rows.join(",")))
        .finish()
}

/// OBJ-style vertex list of curve samples in S^3; the comment header
/// carries the parameters.
pub fn curve_to_obj(curve: &GammaCurve) -> String {
    curve_to_obj_phased(curve, 0.0, 0.0)
}

/// OBJ export with starting phases applied through the torus action
/// (rotating the two complex slots by fixed offsets); the construction
/// itself always starts at zero phases.
pub fn curve_to_obj_phased(curve: &GammaCurve, phase1: f64, phase2: f64) -> String {
    let mut out = format!(
        "# spiralmin curve k1={} k2={} C={} Ctilde={} rounds={} phase1={} phase2={}\n# columns: Re g1, Im g1, Re g2, Im g2\n",
        curve.params.k1,
        curve.params.k2,
        curve.params.c,
        curve.params.ctilde,
        curve.rounds,
        phase1,
        phase2
    );
    for p in curve.samples() {
        let amb = crate::pendulum::CurvePoint {
            a: p.a,
            b: p.b,
            s1: p.s1 + phase1,
            s2: p.s2 + phase2,
        }
        .ambient();
        out.push_str(&format!(
            "v {} {} {} {}\n",
            trimmed(amb[0]),
            trimmed(amb[1]),
            trimmed(amb[2]),
            trimmed(amb[3])
        ));
    }
    out
}

/// OBJ-style vertex list of a sampled product immersion plus a JSON sidecar
/// describing the chart layout.
pub fn mesh_to_obj(
    prod: &ProductImmersion,
    n_t: usize,
    n_chart: usize,
    chart_range: f64,
) -> Result<(String, String)> {
    let (d1, d2) = (prod.f1.intrinsic_dim(), prod.f2.intrinsic_dim());
    let span = prod.curve.arc_span();
    let mut obj = format!(
        "# spiralmin product mesh ambient_dim={} intrinsic_dim={}\n",
        prod.ambient_real_dim(),
        prod.intrinsic_dim()
    );
    let chart_points = |d: usize| -> Vec<Vec<f64>> {
        if d == 0 {
            return vec![vec![]];
        }
        // a centered axis grid per chart dimension
        let mut pts = vec![vec![0.0; d]];
        for axis in 0..d {
            for i in 0..n_chart {
                let v = -chart_range + 2.0 * chart_range * i as f64 / (n_chart - 1).max(1) as f64;
                let mut p = vec![0.0; d];
                p[axis] = v;
                pts.push(p);
            }
        }
        pts
    };
    let xs = chart_points(d1);
    let ys = chart_points(d2);
    let mut count = 0usize;
    for i in 0..n_t {
        let t = span * i as f64 / (n_t - 1).max(1) as f64;
        let t = t.clamp(0.0, span);
        for x in &xs {
            for y in &ys {
                let v = prod.eval(t, x, y)?;
                obj.push('v');
                for c in &v {
                    obj.push_str(&format!(" {}", trimmed(*c)));
                }
                obj.push('\n');
                count += 1;
            }
        }
    }
    let sidecar = JsonObject::new()
        .field_u64("ambient_real_dim", prod.ambient_real_dim() as u64)
        .field_u64("vertices", count as u64)
        .field_u64("n_t", n_t as u64)
        .field_u64("chart1_dim", d1 as u64)
        .field_u64("chart2_dim", d2 as u64)
        .field_f64("chart_range", chart_range)
        .field_str("layout", "per-slot blocks: re1..., im1..., re2..., im2...")
        .finish();
    Ok((obj, sidecar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pendulum::{extend_reflect, integrate_basic};
    use crate::profile::threshold;

    fn curve() -> GammaCurve {
        let m = threshold(1, 1, -1.0);
        let p = SpinParams::new(1, 1, -1.0, 2.0 * m).unwrap();
        extend_reflect(&integrate_basic(&p, 32).unwrap(), 2).unwrap()
    }

    #[test]
    fn float_format_round_trips_exactly() {
        for x in [0.5, std::f64::consts::PI, 1.0 / 3.0, 2.2250738585072014e-308, -7.1e30] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn curve_json_is_deterministic_and_round_trips() {
        let c = curve();
        let text1 = curve_to_json(&c);
        let text2 = curve_to_json(&c);
        assert_eq!(text1, text2);

        let file = CurveFile::parse(&text1).unwrap();
        file.validate().unwrap();
        assert_eq!(file.rounds(), 2);
        let rebuilt = file.rebuild(32).unwrap();
        let text3 = curve_to_json(&rebuilt);
        assert_eq!(text1, text3, "re-emission differs");
    }

    #[test]
    fn csv_has_header_and_matching_rows() {
        let c = curve();
        let csv = curve_to_csv(&c);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "s,t_arc,a,b,s1,s2");
        let n_rows = csv.lines().count() - 1;
        assert_eq!(n_rows, c.samples().len());
    }

    #[test]
    fn obj_export_has_header_and_vertices() {
        let c = curve();
        let obj = curve_to_obj(&c);
        assert!(obj.starts_with("# spiralmin curve k1=1 k2=1"));
        let n_v = obj.lines().filter(|l| l.starts_with("v ")).count();
        assert_eq!(n_v, c.samples().len());
    }

    #[test]
    fn phase_offsets_rotate_the_exported_slots() {
        let c = curve();
        let base = curve_to_obj(&c);
        let phased = curve_to_obj_phased(&c, std::f64::consts::PI, 0.0);
        // a pi offset on the first slot flips its two coordinates
        let row = |text: &str| -> Vec<f64> {
            text.lines()
                .find(|l| l.starts_with("v "))
                .unwrap()
                .split_whitespace()
                .skip(1)
                .map(|v| v.parse().unwrap())
                .collect()
        };
        let (b, p) = (row(&base), row(&phased));
        assert!((b[0] + p[0]).abs() < 1e-12 && (b[1] + p[1]).abs() < 1e-12);
        assert!((b[2] - p[2]).abs() < 1e-12 && (b[3] - p[3]).abs() < 1e-12);
    }

    #[test]
    fn certificate_json_field_order() {
        let cert = ClosureCertificate {
            k1: 0,
            k2: 1,
            c: 0.0,
            ctilde: 3.7,
            q1: Rational::new(3, 5),
            q2: Rational::new(0, 1),
            rounds_to_close: 5,
            quotient_class: crate::closure::QuotientClass::SelfIntersecting,
            antipodal_disjoint: true,
        };
        let json = certificate_to_json(&cert);
        assert!(json.starts_with("{\"k1\":0,\"k2\":1,\"C\":"));
        assert!(json.contains("\"q1\":\"3/5\""));
        assert!(json.contains("\"class\":\"SelfIntersecting\""));
        // parses as ordinary JSON
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["rounds"], 5);
    }

    #[test]
    fn report_json_reflects_failures() {
        let checks = vec![
            CheckResult {
                name: "trace_eta0".into(),
                residual: 1e-10,
                tolerance: 1e-8,
            },
            CheckResult {
                name: "legendrian".into(),
                residual: 0.5,
                tolerance: 1e-8,
            },
        ];
        let json = report_to_json("all", &checks);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["passed"], false);
        assert_eq!(v["checks"][0]["passed"], true);
        assert_eq!(v["checks"][1]["passed"], false);
    }

    #[test]
    fn mesh_export_counts_vertices() {
        let c = curve();
        let prod = ProductImmersion::new(
            &c,
            crate::geometry::FactorImmersion::equator(1),
            crate::geometry::FactorImmersion::equator(1),
        );
        let (obj, sidecar) = mesh_to_obj(&prod, 5, 3, 0.4).unwrap();
        let n_v = obj.lines().filter(|l| l.starts_with("v ")).count();
        assert_eq!(n_v, 5 * 4 * 4);
        let v: serde_json::Value = serde_json::from_str(&sidecar).unwrap();
        assert_eq!(v["vertices"], 80);
        assert_eq!(v["ambient_real_dim"], 8);
    }
}
