//! Command-line front end: parameter input, search orchestration,
//! verification suites, and file export.
//!
//! Exit codes: 0 success, 2 domain or argument errors, 3 empty basic
//! domain, 4 unattainable closure target, 5 verification failure.

use crate::closure::{
    self, antipodal_disjoint, certify_closure, classify_doubly, classify_singly, parse_rational,
    AntipodalSymmetry, ClosureCertificate, QuotientClass, Rational,
};
use crate::config::{tol, NumericConfig};
use crate::export::{self, CheckResult, CurveFile};
use crate::geometry::{
    self, great_circle_check, legendrian_variation, sweep_takahashi, sweep_traces,
    FactorImmersion, ProductImmersion,
};
use crate::pendulum::{extend_reflect, integrate_basic_tol, GammaCurve, SphereCurve};
use crate::profile::{basic_domain, critical_point, profile_value, threshold, SpinParams};
use crate::quadrature::angle_integrals;
use crate::steady::{steady_curve, steady_ratio, steady_trace, SpinRatio};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::f64::consts::PI;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "spiralmin",
    about = "Generating curves for spiral minimal products: pendulum integration, rational closure search, minimality verification",
    version
)]
struct Cli {
    /// Optional JSON config file with numeric tolerances and sample counts.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Stored samples per basic-domain pass (>= 16); overrides the config.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    k1: u32,
    #[arg(long)]
    k2: u32,
    #[arg(long, allow_hyphen_values = true, value_name = "C")]
    c: f64,
    #[arg(long, value_name = "CTILDE")]
    ctilde: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<SpinParams> {
        SpinParams::new(self.k1, self.k2, self.c, self.ctilde)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Obj,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Traces,
    Legendrian,
    Takahashi,
    Fd,
    GreatCircle,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SymmetryArg {
    Antipodal,
    None,
    Partial,
}

impl From<SymmetryArg> for AntipodalSymmetry {
    fn from(s: SymmetryArg) -> Self {
        match s {
            SymmetryArg::Antipodal => AntipodalSymmetry::Antipodal,
            SymmetryArg::None => AntipodalSymmetry::NoAntipodalPairs,
            SymmetryArg::Partial => AntipodalSymmetry::Partial,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the pendulum profile, its critical point, and the threshold.
    Profile {
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// Number of interior grid points to print.
        #[arg(long, default_value_t = 9)]
        s_grid: usize,
    },
    /// Solve for the basic pendulum interval of a parameter point.
    Domain(ParamArgs),
    /// Integrate a generating curve and write it to disk.
    SolveCurve {
        #[command(flatten)]
        params: ParamArgs,
        /// Pendulum half-periods (basic-domain passes) to cover.
        #[arg(long, default_value_t = 2)]
        rounds: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Per-pass complex angle advances J1 and J2 with their limits.
    Integrals(ParamArgs),
    /// Steady magnitude pair for a spin ratio c (or the singly limit).
    Steady {
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
        /// Finite spin ratio ds2/ds1.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "c_infinite")]
        c: Option<f64>,
        /// Use the infinite-ratio marker (spin purely in the second slot).
        #[arg(long)]
        c_infinite: bool,
    },
    /// Search for rational closure and write an exact certificate.
    Search {
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        k2: u32,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// Rational target for J1/pi, written as p/q.
        #[arg(long)]
        q: Option<String>,
        /// Second rational target (per-pass s2 advance over pi) for the
        /// two-parameter solve.
        #[arg(long)]
        q2: Option<String>,
        /// Antipodal behaviour of the spun factor, for classification.
        #[arg(long, value_enum, default_value_t = SymmetryArg::Antipodal)]
        symmetry: SymmetryArg,
        /// Scan all attainable targets with denominator at most this bound.
        #[arg(long, conflicts_with = "q")]
        scan_max_denominator: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and emit a machine-readable report.
    Verify {
        /// Curve JSON produced by solve-curve; alternative to giving parameters.
        #[arg(long, conflicts_with_all = ["k1", "k2", "c", "ctilde"])]
        curve: Option<PathBuf>,
        #[arg(long, required_unless_present = "curve")]
        k1: Option<u32>,
        #[arg(long, required_unless_present = "curve")]
        k2: Option<u32>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "curve")]
        c: Option<f64>,
        /// Pendulum integration constant; omit with --steady for the
        /// threshold (steady magnitude) family.
        #[arg(long)]
        ctilde: Option<f64>,
        /// Verify the steady-magnitude curve with spin ratio C cot^2(s_C).
        #[arg(long)]
        steady: bool,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a curve or sampled product mesh as OBJ with a JSON sidecar.
    Export {
        #[arg(long, conflicts_with_all = ["k1", "k2", "c", "ctilde"])]
        curve: Option<PathBuf>,
        #[arg(long, required_unless_present = "curve")]
        k1: Option<u32>,
        #[arg(long, required_unless_present = "curve")]
        k2: Option<u32>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "curve")]
        c: Option<f64>,
        #[arg(long, required_unless_present = "curve")]
        ctilde: Option<f64>,
        #[arg(long, default_value_t = 2)]
        rounds: u32,
        /// Export the full product mesh instead of the bare curve.
        #[arg(long)]
        mesh: bool,
        #[arg(long, default_value_t = 64)]
        mesh_t: usize,
        #[arg(long, default_value_t = 9)]
        mesh_chart: usize,
        #[arg(long, default_value_t = 0.6)]
        chart_range: f64,
        /// Starting phase offset of the first complex slot (torus action).
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phase1: f64,
        /// Starting phase offset of the second complex slot.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phase2: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    configure_threads();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() {
    if let Ok(n) = std::env::var("SPIRALMIN_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn load_config(path: &Option<PathBuf>, samples: Option<usize>) -> Result<NumericConfig> {
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config: {e}")))?
        }
        None => NumericConfig::default(),
    };
    if let Some(n) = samples {
        cfg.n_samples = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn pi_scaled(x: f64) -> String {
    format!("{:.12} ({:.12} pi)", x, x / PI)
}

fn dispatch(cli: Cli) -> Result<()> {
    let cfg = load_config(&cli.config, cli.samples)?;
    match cli.command {
        Command::Profile { k1, k2, c, s_grid } => cmd_profile(k1, k2, c, s_grid),
        Command::Domain(args) => cmd_domain(&args.params()?),
        Command::SolveCurve {
            params,
            rounds,
            out,
            format,
        } => cmd_solve_curve(&params.params()?, rounds, &out, format, &cfg),
        Command::Integrals(args) => cmd_integrals(&args.params()?),
        Command::Steady {
            k1,
            k2,
            c,
            c_infinite,
        } => cmd_steady(k1, k2, c, c_infinite),
        Command::Search {
            k1,
            k2,
            c,
            q,
            q2,
            symmetry,
            scan_max_denominator,
            out,
        } => cmd_search(k1, k2, c, q, q2, symmetry.into(), scan_max_denominator, out),
        Command::Verify {
            curve,
            k1,
            k2,
            c,
            ctilde,
            steady,
            suite,
            out,
        } => cmd_verify(curve, k1, k2, c, ctilde, steady, suite, out, &cfg),
        Command::Export {
            curve,
            k1,
            k2,
            c,
            ctilde,
            rounds,
            mesh,
            mesh_t,
            mesh_chart,
            chart_range,
            phase1,
            phase2,
            out,
        } => cmd_export(
            curve, k1, k2, c, ctilde, rounds, mesh, mesh_t, mesh_chart, chart_range,
            (phase1, phase2), &out, &cfg,
        ),
    }
}

fn cmd_profile(k1: u32, k2: u32, c: f64, s_grid: usize) -> Result<()> {
    let s_c = critical_point(k1, k2, c);
    let m = threshold(k1, k2, c);
    println!("s_C       = {}", pi_scaled(s_c));
    println!("threshold = {:.12}", m);
    println!("{:>12} {:>18}", "s/pi", "P_C(s)");
    for i in 1..=s_grid {
        let s = PI / 2.0 * i as f64 / (s_grid as f64 + 1.0);
        println!("{:>12.6} {:>18.8e}", s / PI, profile_value(k1, k2, c, s)?);
    }
    Ok(())
}

fn cmd_domain(params: &SpinParams) -> Result<()> {
    let dom = basic_domain(params)?;
    println!("z_L       = {}", pi_scaled(dom.z_l));
    println!("z_R       = {}", pi_scaled(dom.z_r));
    println!("s_crit    = {}", pi_scaled(dom.s_crit));
    println!("threshold = {:.12}", dom.threshold);
    println!("width     = {:.12}", dom.width());
    Ok(())
}

fn cmd_solve_curve(
    params: &SpinParams,
    rounds: u32,
    out: &PathBuf,
    format: OutputFormat,
    cfg: &NumericConfig,
) -> Result<()> {
    let curve = extend_reflect(
        &integrate_basic_tol(params, cfg.n_samples, cfg.quad_tol)?,
        rounds.max(1),
    )?;
    let ai = angle_integrals(params)?;
    println!("delta_s1 = {}", pi_scaled(curve.delta_s1));
    println!("delta_s2 = {}", pi_scaled(curve.delta_s2));
    println!("J1       = {}", pi_scaled(ai.j1));
    println!("J2       = {}", pi_scaled(ai.j2));
    let text = match format {
        OutputFormat::Json => export::curve_to_json(&curve),
        OutputFormat::Csv => export::curve_to_csv(&curve),
        OutputFormat::Obj => export::curve_to_obj(&curve),
    };
    std::fs::write(out, text)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_integrals(params: &SpinParams) -> Result<()> {
    let ai = angle_integrals(params)?;
    println!("J1 = {}", pi_scaled(ai.j1));
    if ai.j2.is_finite() {
        println!("J2 = {}", pi_scaled(ai.j2));
        println!("C J2 (s2 advance) = {}", pi_scaled(params.c * ai.j2));
    } else {
        println!("J2 diverges (C = 0 with k2 = 0)");
    }
    println!("estimated error   = {:.3e}", ai.estimated_error);
    println!(
        "J1 limits: threshold -> {:.12}, infinity -> {:.12}",
        crate::quadrature::threshold_limit_j1(params.k1, params.k2, params.c),
        crate::quadrature::limit_j1_infinity(params.k1)
    );
    Ok(())
}

fn cmd_steady(k1: u32, k2: u32, c: Option<f64>, c_infinite: bool) -> Result<()> {
    let ratio = if c_infinite {
        SpinRatio::Infinite
    } else {
        SpinRatio::Finite(c.ok_or_else(|| Error::Parse("pass --c VALUE or --c-infinite".into()))?)
    };
    let (a, b) = steady_ratio(k1, k2, ratio)?;
    println!("a = {:.15}", a);
    println!("b = {:.15}", b);
    println!("trace residual = {:.3e}", steady_trace(k1, k2, a, b, ratio));
    if let Ok((l, m)) = crate::steady::constant_product_coefficients(k1, k2) {
        println!("constant product coefficients: lambda = {l:.15}, mu = {m:.15}");
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    k1: u32,
    k2: u32,
    c: f64,
    q: Option<String>,
    q2: Option<String>,
    symmetry: AntipodalSymmetry,
    scan_max_denominator: Option<i64>,
    out: Option<PathBuf>,
) -> Result<()> {
    let mut certificates = Vec::new();
    if let Some(max_den) = scan_max_denominator {
        let lo = crate::quadrature::limit_j1_infinity(k1)
            .min(crate::quadrature::threshold_limit_j1(k1, k2, c));
        let hi = crate::quadrature::limit_j1_infinity(k1)
            .max(crate::quadrature::threshold_limit_j1(k1, k2, c));
        let mut targets = Vec::new();
        for den in 1..=max_den {
            for num in 1..=den {
                let q = Rational::new(num, den);
                if q != q.reduced() {
                    continue;
                }
                let t = PI * (num as f64) / (den as f64);
                if t > lo && t < hi {
                    targets.push(q);
                }
            }
        }
        targets.sort();
        targets.dedup();
        println!("scanning {} attainable targets", targets.len());
        let solutions = closure::solve_for_targets(k1, k2, c, &targets);
        for (q, sol) in targets.iter().zip(solutions) {
            match sol {
                Ok(roots) => {
                    for ct in roots {
                        let cert = build_certificate(k1, k2, c, ct, *q, symmetry)?;
                        println!(
                            "q = {}: Ctilde = {:.12} class = {} rounds = {}",
                            export::rational_str(*q),
                            ct,
                            cert.quotient_class.as_str(),
                            cert.rounds_to_close
                        );
                        certificates.push(cert);
                    }
                }
                Err(e) => println!("q = {}: {e}", export::rational_str(*q)),
            }
        }
    } else {
        let q = parse_rational(&q.ok_or_else(|| Error::Parse("pass --q p/q or --scan-max-denominator".into()))?)?;
        if let Some(q2_text) = q2 {
            let q2 = parse_rational(&q2_text)?;
            let m = threshold(k1, k2, c.max(0.5));
            let seed = (c.max(0.5), 2.0 * m);
            let (c_sol, ct_sol) = closure::double_closure_solve(k1, k2, q, q2, seed)?;
            println!("solved (C, Ctilde) = ({c_sol:.12}, {ct_sol:.12})");
            let cert = build_double_certificate(k1, k2, c_sol, ct_sol, q, q2)?;
            print_certificate(&cert);
            certificates.push(cert);
        } else {
            let roots = closure::solve_for_target(k1, k2, c, q)?;
            for ct in roots {
                let cert = build_certificate(k1, k2, c, ct, q, symmetry)?;
                print_certificate(&cert);
                certificates.push(cert);
            }
        }
    }

    if let Some(path) = out {
        let body: Vec<String> = certificates.iter().map(export::certificate_to_json).collect();
        let text = if certificates.len() == 1 {
            body.into_iter().next().unwrap()
        } else {
            format!("[{}]", body.join(","))
        };
        std::fs::write(&path, text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn print_certificate(cert: &ClosureCertificate) {
    println!(
        "certificate: q1 = {} q2 = {} rounds = {} class = {} antipodal_disjoint = {}",
        export::rational_str(cert.q1),
        export::rational_str(cert.q2),
        cert.rounds_to_close,
        cert.quotient_class.as_str(),
        cert.antipodal_disjoint
    );
}

/// Certificate for a single-target solve: for C = 0 the second angle is
/// frozen; for C = -1 the weighted identity pins q2 exactly.
fn build_certificate(
    k1: u32,
    k2: u32,
    c: f64,
    ctilde: f64,
    q1: Rational,
    symmetry: AntipodalSymmetry,
) -> Result<ClosureCertificate> {
    let q2 = if c == 0.0 {
        Rational::new(0, 1)
    } else if c == -1.0 || c == 1.0 {
        // (k1+1) J1 = (k2+1) J2 exactly
        let sign = if c < 0.0 { -1 } else { 1 };
        q1 * Rational::new(sign * (k1 as i64 + 1), k2 as i64 + 1)
    } else {
        return Err(Error::Domain(
            "exact single-target certificates require C in {0, 1, -1}; use --q2 for general C".into(),
        ));
    };
    let quotient_class = if c == 0.0 {
        classify_singly(q1, symmetry)
    } else if *q1.numer() == 1 && q1.denom() % 2 == 0 && symmetry == AntipodalSymmetry::Antipodal {
        classify_doubly(q1, q2)?
    } else {
        QuotientClass::SelfIntersecting
    };
    let pi_ident = symmetry == AntipodalSymmetry::Antipodal;
    Ok(ClosureCertificate {
        k1,
        k2,
        c,
        ctilde,
        q1,
        q2,
        rounds_to_close: certify_closure(q1, q2, pi_ident),
        quotient_class,
        antipodal_disjoint: antipodal_disjoint(q1, q2),
    })
}

fn build_double_certificate(
    k1: u32,
    k2: u32,
    c: f64,
    ctilde: f64,
    q1: Rational,
    q2: Rational,
) -> Result<ClosureCertificate> {
    let quotient_class = if *q1.numer() == 1 && q1.denom() % 2 == 0 {
        classify_doubly(q1, q2)?
    } else {
        QuotientClass::SelfIntersecting
    };
    Ok(ClosureCertificate {
        k1,
        k2,
        c,
        ctilde,
        q1,
        q2,
        rounds_to_close: certify_closure(q1, q2, true),
        quotient_class,
        antipodal_disjoint: antipodal_disjoint(q1, q2),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    curve_file: Option<PathBuf>,
    k1: Option<u32>,
    k2: Option<u32>,
    c: Option<f64>,
    ctilde: Option<f64>,
    steady: bool,
    suite: Suite,
    out: Option<PathBuf>,
    cfg: &NumericConfig,
) -> Result<()> {
    let suite_name = format!("{suite:?}").to_lowercase();
    let checks = if let Some(path) = curve_file {
        let file = CurveFile::parse(&std::fs::read_to_string(&path)?)?;
        file.validate()?;
        let curve = file.rebuild(cfg.n_samples)?;
        run_suite(&curve, suite)?
    } else if steady {
        let (k1, k2, c) = (k1.unwrap(), k2.unwrap(), c.unwrap());
        run_steady_suite(k1, k2, c, suite)?
    } else {
        let params = SpinParams::new(
            k1.unwrap(),
            k2.unwrap(),
            c.unwrap(),
            ctilde.ok_or_else(|| Error::Parse("pass --ctilde or --steady".into()))?,
        )?;
        let curve = integrate_basic_tol(&params, cfg.n_samples, cfg.quad_tol)?;
        run_suite(&curve, suite)?
    };

    let report = export::report_to_json(&suite_name, &checks);
    println!("{report}");
    if let Some(path) = out {
        std::fs::write(&path, &report)?;
    }
    if checks.iter().all(|c| c.passed()) {
        Ok(())
    } else {
        let failed: Vec<&str> = checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name.as_str())
            .collect();
        Err(Error::VerificationFailed(failed.join(", ")))
    }
}

fn run_suite(curve: &GammaCurve, suite: Suite) -> Result<Vec<CheckResult>> {
    let (k1, k2) = (curve.params.k1, curve.params.k2);
    let mut checks = Vec::new();
    let n = 64;
    let want = |s: Suite, which: Suite| matches!(s, Suite::All) || std::mem::discriminant(&s) == std::mem::discriminant(&which);

    if want(suite, Suite::Traces) {
        let (t1, t0) = sweep_traces(curve, n)?;
        checks.push(CheckResult {
            name: "trace_eta1".into(),
            residual: t1,
            tolerance: tol::TRACE_RESIDUAL,
        });
        checks.push(CheckResult {
            name: "trace_eta0".into(),
            residual: t0,
            tolerance: tol::TRACE_RESIDUAL,
        });
    }
    if want(suite, Suite::Takahashi) {
        let (r1, r2) = sweep_takahashi(curve, k1, k2, n)?;
        checks.push(CheckResult {
            name: "takahashi_slot1".into(),
            residual: r1,
            tolerance: tol::TAKAHASHI_RESIDUAL,
        });
        checks.push(CheckResult {
            name: "takahashi_slot2".into(),
            residual: r2,
            tolerance: tol::TAKAHASHI_RESIDUAL,
        });
    }
    if want(suite, Suite::Legendrian) && (matches!(suite, Suite::Legendrian) || curve.params.c == -1.0) {
        let var = legendrian_variation(curve, k1, k2, n)?;
        checks.push(CheckResult {
            name: "legendrian_constancy".into(),
            residual: var,
            tolerance: tol::LEGENDRIAN_CONST,
        });
    }
    if want(suite, Suite::Fd) {
        let prod = ProductImmersion::new(curve, FactorImmersion::of_dim(k1), FactorImmersion::of_dim(k2));
        let x = vec![0.0; prod.f1.intrinsic_dim()];
        let y = vec![0.0; prod.f2.intrinsic_dim()];
        let mut worst = 0.0f64;
        for frac in [0.2, 0.37, 0.61, 0.8] {
            let h = geometry::mean_curvature_fd(&prod, frac * curve.arc_span(), &x, &y, 1e-3)?;
            worst = worst.max(h);
        }
        checks.push(CheckResult {
            name: "mean_curvature_fd".into(),
            residual: worst,
            tolerance: tol::MEAN_CURVATURE_FD,
        });
    }
    if want(suite, Suite::GreatCircle) && (matches!(suite, Suite::GreatCircle) || (k1 == 0 && k2 == 0)) {
        let report = great_circle_check(curve)?;
        checks.push(CheckResult {
            name: "great_circle_second_derivative".into(),
            residual: report.max_second_defect,
            tolerance: tol::GREAT_CIRCLE_SECOND,
        });
        checks.push(CheckResult {
            name: "great_circle_unit_speed".into(),
            residual: report.max_speed_defect,
            tolerance: tol::GREAT_CIRCLE_SPEED,
        });
    }
    Ok(checks)
}

fn run_steady_suite(k1: u32, k2: u32, c: f64, suite: Suite) -> Result<Vec<CheckResult>> {
    let ratio = SpinRatio::Finite(c);
    let (a, b) = steady_ratio(k1, k2, ratio)?;
    let curve = steady_curve(a, b, ratio, 64)?;
    let mut checks = Vec::new();
    let want = |s: Suite, which: Suite| matches!(s, Suite::All) || std::mem::discriminant(&s) == std::mem::discriminant(&which);

    if want(suite, Suite::Traces) {
        let jet = curve.jet2(1.0)?;
        let (t1, t0) = geometry::trace_from_jet(&jet, k1, k2);
        checks.push(CheckResult {
            name: "steady_trace_eta1".into(),
            residual: t1.abs(),
            tolerance: tol::STEADY_TRACE,
        });
        checks.push(CheckResult {
            name: "steady_trace_eta0".into(),
            residual: t0.abs(),
            tolerance: tol::STEADY_TRACE,
        });
    }
    if want(suite, Suite::Takahashi) {
        let (r1, r2) = sweep_takahashi(&curve, k1, k2, 16)?;
        checks.push(CheckResult {
            name: "takahashi_slot1".into(),
            residual: r1,
            tolerance: tol::TAKAHASHI_RESIDUAL,
        });
        checks.push(CheckResult {
            name: "takahashi_slot2".into(),
            residual: r2,
            tolerance: tol::TAKAHASHI_RESIDUAL,
        });
    }
    if want(suite, Suite::Fd) {
        let prod = ProductImmersion::new(&curve, FactorImmersion::of_dim(k1), FactorImmersion::of_dim(k2));
        let x = vec![0.0; prod.f1.intrinsic_dim()];
        let y = vec![0.0; prod.f2.intrinsic_dim()];
        let h = geometry::mean_curvature_fd(&prod, 0.37 * curve.arc_span(), &x, &y, 1e-3)?;
        checks.push(CheckResult {
            name: "mean_curvature_fd".into(),
            residual: h,
            tolerance: tol::MEAN_CURVATURE_FD,
        });
    }
    // constancy holds exactly when c matches the C = -1 steady ratio
    let c_legendrian = -((k1 as f64 + 1.0) / (k2 as f64 + 1.0));
    if want(suite, Suite::Legendrian)
        && (matches!(suite, Suite::Legendrian) || (c - c_legendrian).abs() < 1e-12)
    {
        let var = legendrian_variation(&curve, k1, k2, 64)?;
        checks.push(CheckResult {
            name: "legendrian_constancy".into(),
            residual: var,
            tolerance: tol::LEGENDRIAN_CONST,
        });
    }
    Ok(checks)
}

#[allow(clippy::too_many_arguments)]
fn cmd_export(
    curve_file: Option<PathBuf>,
    k1: Option<u32>,
    k2: Option<u32>,
    c: Option<f64>,
    ctilde: Option<f64>,
    rounds: u32,
    mesh: bool,
    mesh_t: usize,
    mesh_chart: usize,
    chart_range: f64,
    phases: (f64, f64),
    out: &PathBuf,
    cfg: &NumericConfig,
) -> Result<()> {
    let curve = if let Some(path) = curve_file {
        let file = CurveFile::parse(&std::fs::read_to_string(&path)?)?;
        file.rebuild(cfg.n_samples)?
    } else {
        let params = SpinParams::new(k1.unwrap(), k2.unwrap(), c.unwrap(), ctilde.unwrap())?;
        extend_reflect(
            &integrate_basic_tol(&params, cfg.n_samples, cfg.quad_tol)?,
            rounds.max(1),
        )?
    };
    if mesh {
        let prod = ProductImmersion::new(
            &curve,
            FactorImmersion::of_dim(curve.params.k1),
            FactorImmersion::of_dim(curve.params.k2),
        );
        let (obj, sidecar) = export::mesh_to_obj(&prod, mesh_t, mesh_chart, chart_range)?;
        std::fs::write(out, obj)?;
        let sidecar_path = out.with_extension("meta.json");
        std::fs::write(&sidecar_path, sidecar)?;
        println!("wrote {} and {}", out.display(), sidecar_path.display());
    } else {
        std::fs::write(out, export::curve_to_obj_phased(&curve, phases.0, phases.1))?;
        println!("wrote {}", out.display());
    }
    Ok(())
}
