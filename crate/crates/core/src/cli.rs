//! Command-line front end.
//!
//! [`run`] parses an argument vector, executes one subcommand and renders a
//! [`RunReport`]. Exit codes: [`EXIT_OK`] when every check passes,
//! [`EXIT_CHECK_FAILED`] when one fails, [`EXIT_USAGE`] for an unknown
//! subcommand or invalid arguments, [`EXIT_CONFIG`] for an unreadable or
//! invalid configuration.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Vector3;
use num_complex::Complex64;

use crate::algebra::{basis01_element, is_permutation, Basis01Variant};
use crate::cavity::{maxwell_residual_sampled, Branch, Cavity};
use crate::config::Config;
use crate::currents::{
    charge_q, charge_scale, continuity_residual, current, current_generic, spin_density,
    spin_density_generic, spirality, spirality_scale, total_charge, ChargeComponent, Family,
    FieldFunctionSet, NoetherContext, SignFamily,
};
use crate::dualsym::{
    boost_fields, boost_magnitudes, complex_invariant, dual_invariants, dual_rotate,
    hyper_invariants, hyper_rotate, FieldPair, HyperParam,
};
use crate::gauge::{gauge_transform, irrep_gamma, GaugeElement, IrrepLabel};
use crate::grid::{Grid, SampledField, UniformAxis};
use crate::qfield::surd::SurdMatrix;
use crate::qfield::{
    commutator, cosine_ansatz_contradiction, heisenberg_evolve, interior_block, position_momentum,
    CMatrix, FieldKind, QuantizedCavity, QuantizedMode,
};
use crate::quatmaxwell::{
    assemble, biquat_gradient, generalized_maxwell_residual, Biquaternion3Field, Components,
    FieldQuaternion, GradientMode,
};
use crate::report::{CheckRecord, ReportFormat, RunReport};
use crate::snapshot::{self, Encoding};
use crate::verify;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

/// Result of one invocation: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "dualfield",
    version,
    about = "Electromagnetic duality, cavity field and quaternion Maxwell checks"
)]
struct Cli {
    /// Configuration file (default: $DUALFIELD_CONFIG, else built-in defaults).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "kv")]
    format: FormatArg,
    /// Append the wall time to the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Kv,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Complex-number matrices, cyclic bases, quaternion tables.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Dual (Rainich) rotations.
    #[command(subcommand)]
    Dual(DualCmd),
    /// Hyperbolic dual transformations and boosts.
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// The gauge group and its representations.
    #[command(subcommand)]
    Gauge(GaugeCmd),
    /// Classical cavity fields.
    #[command(subcommand)]
    Cavity(CavityCmd),
    /// Cavity four-currents, charges and spin.
    #[command(subcommand)]
    Currents(CurrentsCmd),
    /// Quantized cavity field.
    #[command(subcommand)]
    Qfield(QfieldCmd),
    /// Quaternion form of the generalized Maxwell equations.
    #[command(subcommand)]
    Quat(QuatCmd),
    /// Acceptance suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
enum AlgebraCmd {
    /// Check the cyclic bases and quaternion tables.
    Check,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Electric field `x,y,z`.
    #[arg(long = "E", value_parser = parse_vec3, allow_hyphen_values = true)]
    e: [f64; 3],
    /// Magnetic field `x,y,z`.
    #[arg(long = "H", value_parser = parse_vec3, allow_hyphen_values = true)]
    h: [f64; 3],
}

#[derive(Debug, Subcommand)]
enum DualCmd {
    /// Rotate (E, H) by theta.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[command(flatten)]
        fields: FieldArgs,
    },
    /// Invariants `E'^2 - H'^2` and `2 E'.H'` of the rotated pair.
    Invariants {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[command(flatten)]
        fields: FieldArgs,
    },
}

#[derive(Debug, Subcommand)]
enum HyperCmd {
    /// Hyperbolic rotation by vartheta.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        vartheta: f64,
        #[command(flatten)]
        fields: FieldArgs,
    },
    /// Hyperbolic invariants and the W ratio.
    Invariants {
        #[arg(long, allow_hyphen_values = true)]
        vartheta: f64,
        #[command(flatten)]
        fields: FieldArgs,
    },
    /// Boost of field magnitudes at speed `beta c`.
    Boost {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long = "absE")]
        abs_e: f64,
        #[arg(long = "absH")]
        abs_h: f64,
    },
}

#[derive(Debug, Subcommand)]
enum GaugeCmd {
    /// Value of the irreducible representation `(m, k)` at `(alpha, beta)`.
    Irrep {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
    },
    /// Apply `beta exp(i alpha)` to a list of complex values.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Comma-separated complex values such as `1+2i,-0.5i,3`.
        #[arg(long, value_parser = parse_complex, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        u: Vec<Complex64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BranchArg {
    First,
    Second,
    SecondLiteral,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::First => Branch::First,
            BranchArg::Second => Branch::Second,
            BranchArg::SecondLiteral => Branch::SecondLiteral,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EncodingArg {
    F64le,
    Csv,
}

impl From<EncodingArg> for Encoding {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::F64le => Encoding::F64Le,
            EncodingArg::Csv => Encoding::Csv,
        }
    }
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Samples along z.
    #[arg(long, default_value_t = 129)]
    nz: usize,
    /// Samples along t.
    #[arg(long, default_value_t = 129)]
    nt: usize,
}

#[derive(Debug, Subcommand)]
enum CavityCmd {
    /// Ex and Hy at a point, or a sampled snapshot with `--out`.
    Fields {
        #[arg(long, value_enum, default_value = "first")]
        branch: BranchArg,
        #[arg(long, default_value_t = 0.0)]
        z: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        /// Snapshot base path; samples z over the cavity and t over one period.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "f64le")]
        encoding: EncodingArg,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Hamiltonian and quadrature field energy.
    Energy {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 2000)]
        intervals: usize,
    },
    /// Finite-difference Maxwell residual and its convergence, or the
    /// residual of a snapshot given with `--input`.
    Residual {
        #[arg(long, value_enum, default_value = "first")]
        branch: BranchArg,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    J1,
    J2,
    Total,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::J1 => Family::J1,
            FamilyArg::J2 => Family::J2,
            FamilyArg::Total => Family::Total,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Args)]
struct CurrentSetArgs {
    /// Sign family of the field functions.
    #[arg(long, value_enum, default_value = "plus")]
    sign: SignArg,
}

#[derive(Debug, Subcommand)]
enum CurrentsCmd {
    /// Closed-form current against the Noether form.
    Evaluate {
        #[arg(long, value_enum, default_value = "total")]
        family: FamilyArg,
        #[arg(long, default_value_t = 4)]
        mu: usize,
        #[arg(long, default_value_t = 0.25)]
        z: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[command(flatten)]
        set: CurrentSetArgs,
    },
    /// Continuity residual on a (z, t) grid.
    Continuity {
        #[arg(long, value_enum, default_value = "total")]
        family: FamilyArg,
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[command(flatten)]
        set: CurrentSetArgs,
    },
    /// Complex charge and its drift over one period.
    Charge {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[command(flatten)]
        set: CurrentSetArgs,
    },
    /// Spin density and spirality.
    Spin {
        #[arg(long, default_value_t = 4)]
        mu: usize,
        #[arg(long, default_value_t = 0.25)]
        z: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[command(flatten)]
        set: CurrentSetArgs,
    },
}

#[derive(Debug, Args)]
struct FockArgs {
    /// Truncation dimension per mode (default from the configuration).
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum QfieldCmd {
    /// Ladder and canonical commutators.
    Commutators {
        #[command(flatten)]
        fock: FockArgs,
        /// Mode number of the quantized mode.
        #[arg(long, default_value_t = 1)]
        mode: usize,
    },
    /// Hermiticity of the field operators.
    Operators {
        #[command(flatten)]
        fock: FockArgs,
        /// Number of leading cavity modes to quantize.
        #[arg(long, default_value_t = 2)]
        modes: usize,
        #[arg(long, default_value_t = 0.25)]
        z: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
    },
    /// Heisenberg evolution against matrix-exponential conjugation.
    Evolve {
        #[command(flatten)]
        fock: FockArgs,
        #[arg(long, default_value_t = 1)]
        mode: usize,
        /// Phase `omega t`.
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        phase: f64,
    },
    /// Cosine-ansatz certificate at two phases `omega t`.
    Contradiction {
        #[command(flatten)]
        fock: FockArgs,
        #[arg(long, default_value_t = 1)]
        mode: usize,
        #[arg(long, default_value_t = PI / 6.0, allow_hyphen_values = true)]
        phase1: f64,
        #[arg(long, default_value_t = PI / 3.0, allow_hyphen_values = true)]
        phase2: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GradientArg {
    Spatial,
    Spacetime,
}

#[derive(Debug, Args)]
struct QuatSource {
    /// Component snapshot; without it the configured cavity is embedded
    /// (first branch in slot 1, second branch in slot 2).
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Debug, Subcommand)]
enum QuatCmd {
    /// Pack components into quaternions and check the round trip.
    Assemble {
        #[command(flatten)]
        source: QuatSource,
        /// Write the packed quaternion coefficients as a snapshot.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "f64le")]
        encoding: EncodingArg,
    },
    /// Generalized Maxwell residual.
    Residual {
        #[command(flatten)]
        source: QuatSource,
        /// Fail when the largest residual exceeds this value.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Biquaternion gradient of the Riemann-Silberstein field.
    Gradient {
        #[command(flatten)]
        source: QuatSource,
        #[arg(long, value_enum, default_value = "spacetime")]
        mode: GradientArg,
    },
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Run every acceptance criterion.
    All {
        /// Seed of the randomized checks (default from the configuration).
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_vec3(s: &str) -> std::result::Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    v.try_into()
        .map_err(|v: Vec<f64>| format!("expected 3 comma-separated numbers, got {}", v.len()))
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|e| format!("{s:?}: {e}"))
}

/// Run the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let cfg = match Config::resolve(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return failure(EXIT_CONFIG, &e),
    };
    let start = Instant::now();
    let mut report = RunReport::new(
        &command_name(&cli.command),
        &format!("{:?}\n{cfg:?}", cli.command),
    );
    if let Err(e) = execute(&cli.command, &cfg, &mut report) {
        let code = if matches!(e, Error::Config(_)) {
            EXIT_CONFIG
        } else {
            EXIT_USAGE
        };
        return failure(code, &e);
    }
    report.wall_time = start.elapsed();
    let format = match cli.format {
        FormatArg::Kv => ReportFormat::KeyValue,
        FormatArg::Csv => ReportFormat::Csv,
    };
    let code = if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Outcome {
        code,
        stdout: report.render(format, cli.timing),
        stderr: String::new(),
    }
}

fn failure(code: i32, e: &Error) -> Outcome {
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn command_name(c: &Command) -> String {
    let (group, sub) = match c {
        Command::Algebra(AlgebraCmd::Check) => ("algebra", "check"),
        Command::Dual(DualCmd::Transform { .. }) => ("dual", "transform"),
        Command::Dual(DualCmd::Invariants { .. }) => ("dual", "invariants"),
        Command::Hyper(HyperCmd::Transform { .. }) => ("hyper", "transform"),
        Command::Hyper(HyperCmd::Invariants { .. }) => ("hyper", "invariants"),
        Command::Hyper(HyperCmd::Boost { .. }) => ("hyper", "boost"),
        Command::Gauge(GaugeCmd::Irrep { .. }) => ("gauge", "irrep"),
        Command::Gauge(GaugeCmd::Transform { .. }) => ("gauge", "transform"),
        Command::Cavity(CavityCmd::Fields { .. }) => ("cavity", "fields"),
        Command::Cavity(CavityCmd::Energy { .. }) => ("cavity", "energy"),
        Command::Cavity(CavityCmd::Residual { .. }) => ("cavity", "residual"),
        Command::Currents(CurrentsCmd::Evaluate { .. }) => ("currents", "evaluate"),
        Command::Currents(CurrentsCmd::Continuity { .. }) => ("currents", "continuity"),
        Command::Currents(CurrentsCmd::Charge { .. }) => ("currents", "charge"),
        Command::Currents(CurrentsCmd::Spin { .. }) => ("currents", "spin"),
        Command::Qfield(QfieldCmd::Commutators { .. }) => ("qfield", "commutators"),
        Command::Qfield(QfieldCmd::Operators { .. }) => ("qfield", "operators"),
        Command::Qfield(QfieldCmd::Evolve { .. }) => ("qfield", "evolve"),
        Command::Qfield(QfieldCmd::Contradiction { .. }) => ("qfield", "contradiction"),
        Command::Quat(QuatCmd::Assemble { .. }) => ("quat", "assemble"),
        Command::Quat(QuatCmd::Residual { .. }) => ("quat", "residual"),
        Command::Quat(QuatCmd::Gradient { .. }) => ("quat", "gradient"),
        Command::Verify(VerifyCmd::All { .. }) => ("verify", "all"),
    };
    format!("{group} {sub}")
}

fn execute(c: &Command, cfg: &Config, r: &mut RunReport) -> Result<()> {
    match c {
        Command::Algebra(AlgebraCmd::Check) => algebra_check(r),
        Command::Dual(cmd) => dual(cmd, r),
        Command::Hyper(cmd) => hyper(cmd, cfg, r),
        Command::Gauge(cmd) => gauge(cmd, r),
        Command::Cavity(cmd) => cavity(cmd, cfg, r),
        Command::Currents(cmd) => currents(cmd, cfg, r),
        Command::Qfield(cmd) => qfield(cmd, cfg, r),
        Command::Quat(cmd) => quat(cmd, cfg, r),
        Command::Verify(VerifyCmd::All { seed }) => verify_all(seed.unwrap_or(cfg.verify.seed), r),
    }
}

fn num(x: f64) -> String {
    format!("{x:?}")
}

fn out_vec(r: &mut RunReport, name: &str, v: &Vector3<Complex64>) {
    let text: Vec<String> = if v.iter().all(|z| z.im == 0.0) {
        v.iter().map(|z| num(z.re)).collect()
    } else {
        v.iter()
            .map(|z| format!("{}{:+?}i", num(z.re), z.im))
            .collect()
    };
    r.output(name, text.join(","));
}

fn out_complex(r: &mut RunReport, name: &str, z: Complex64) {
    r.output(&format!("{name}.re"), num(z.re));
    r.output(&format!("{name}.im"), num(z.im));
}

fn rel_err(got: Complex64, want: Complex64) -> f64 {
    let d = (got - want).norm();
    if d == 0.0 {
        0.0
    } else {
        d / want.norm()
    }
}

fn algebra_check(r: &mut RunReport) -> Result<()> {
    for v in Basis01Variant::ALL {
        let perms = (1..=4)
            .map(|k| basis01_element(v, k))
            .collect::<Result<Vec<_>>>()?;
        r.check(CheckRecord::exact(
            &format!("permutation_{v:?}").to_lowercase(),
            "every basis element is a 4x4 permutation matrix",
            perms.iter().all(is_permutation),
        ));
    }
    for c in verify::criterion_bases().checks {
        r.check(c);
    }
    Ok(())
}

fn dual(cmd: &DualCmd, r: &mut RunReport) -> Result<()> {
    match cmd {
        DualCmd::Transform { theta, fields } => {
            let fp = FieldPair::real(fields.e, fields.h);
            let out = dual_rotate(&fp, *theta);
            out_vec(r, "E", &out.e);
            out_vec(r, "H", &out.h);
            let want = Complex64::from_polar(1.0, -2.0 * theta) * complex_invariant(&fp);
            r.check(CheckRecord::at_most(
                "complex_invariant_covariance",
                "K(E',H') = exp(-2i theta) K(E,H), relative error",
                rel_err(complex_invariant(&out), want),
                verify::DUAL_COVARIANCE_TOL,
            ));
        }
        DualCmd::Invariants { theta, fields } => {
            let (i1, i2) = dual_invariants(&FieldPair::real(fields.e, fields.h), *theta);
            r.output("I1", num(i1));
            r.output("I2", num(i2));
        }
    }
    Ok(())
}

fn hyper(cmd: &HyperCmd, cfg: &Config, r: &mut RunReport) -> Result<()> {
    match cmd {
        HyperCmd::Transform { vartheta, fields } => {
            let fp = FieldPair::real(fields.e, fields.h);
            let out = hyper_rotate(&fp, HyperParam::new(*vartheta));
            out_vec(r, "E", &out.e);
            out_vec(r, "H", &out.h);
            r.check(CheckRecord::at_most(
                "complex_invariant_covariance",
                "K(E',H') = exp(2 vartheta) K(E,H), relative error",
                rel_err(
                    complex_invariant(&out),
                    complex_invariant(&fp) * (2.0 * vartheta).exp(),
                ),
                verify::HYPER_COVARIANCE_TOL,
            ));
        }
        HyperCmd::Invariants { vartheta, fields } => {
            let fp = FieldPair::real(fields.e, fields.h);
            let inv = hyper_invariants(&fp, HyperParam::new(*vartheta));
            r.output("I1", num(inv.i1));
            r.output("I2", num(inv.i2));
            r.output("W", num(inv.w));
            let w0 = hyper_invariants(&fp, HyperParam::new(0.0)).w;
            if w0.is_finite() {
                r.check(CheckRecord::at_most(
                    "w_ratio_constant",
                    "W(vartheta) = W(0), relative deviation",
                    (inv.w - w0).abs() / w0.abs().max(f64::MIN_POSITIVE),
                    verify::W_RATIO_TOL,
                ));
            }
        }
        HyperCmd::Boost { beta, abs_e, abs_h } => {
            let (e, h) = boost_magnitudes(*abs_e, *abs_h, *beta)?;
            r.output("absE", num(e));
            r.output("absH", num(h));
            let c = cfg.constants()?.c;
            let fp = FieldPair::real([*abs_e, 0.0, 0.0], [0.0, 0.0, 0.0]);
            let boosted = boost_fields(&fp, &Vector3::new(0.0, 0.0, beta * c), c)?;
            r.check(CheckRecord::at_most(
                "vector_form_electric",
                "|E''| from the vector boost with H = 0 equals the magnitude boost, relative error",
                rel_err(
                    Complex64::from(boosted.e.norm()),
                    Complex64::from(boost_magnitudes(*abs_e, 0.0, *beta)?.0),
                ),
                1e-12,
            ));
        }
    }
    Ok(())
}

fn gauge(cmd: &GaugeCmd, r: &mut RunReport) -> Result<()> {
    match cmd {
        GaugeCmd::Irrep { alpha, beta, m, k } => {
            let g = GaugeElement::new(*alpha, *beta)?;
            let label = IrrepLabel { m: *m, k: *k };
            let v = irrep_gamma(&g, label)?;
            out_complex(r, "gamma", v);
            let sq = irrep_gamma(&g.compose(&g), label)?;
            r.check(CheckRecord::at_most(
                "homomorphism",
                "Gamma(g g) = Gamma(g)^2, relative error",
                rel_err(sq, v * v),
                1e-12,
            ));
        }
        GaugeCmd::Transform { alpha, beta, u } => {
            let g = GaugeElement::new(*alpha, *beta)?;
            let out = gauge_transform(u, &g)?;
            for (i, z) in out.iter().enumerate() {
                out_complex(r, &format!("u{i}"), *z);
            }
            let worst = u
                .iter()
                .zip(&out)
                .map(|(a, b)| {
                    rel_err(
                        Complex64::from(b.norm()),
                        Complex64::from(a.norm() * beta.abs()),
                    )
                })
                .fold(0.0, f64::max);
            r.check(CheckRecord::at_most(
                "modulus_scaling",
                "|u'| = |beta| |u|, relative error",
                worst,
                1e-12,
            ));
        }
    }
    Ok(())
}

fn period(cav: &Cavity) -> Result<f64> {
    cav.modes
        .first()
        .map(|m| 2.0 * PI / m.omega)
        .ok_or_else(|| Error::InvalidParameter("cavity has no modes".into()))
}

/// `z` over the cavity, `t` over half a light-crossing time. The time step
/// is then half the space step over `c`, away from the ratio at which the
/// central-difference errors of a standing wave cancel.
fn residual_grid(cav: &Cavity, g: &GridArgs) -> Result<Grid> {
    Ok(Grid::zt(
        UniformAxis::linspace(0.0, cav.length, g.nz)?,
        UniformAxis::linspace(0.0, 0.5 * cav.length / cav.constants.c, g.nt)?,
    ))
}

fn cavity(cmd: &CavityCmd, cfg: &Config, r: &mut RunReport) -> Result<()> {
    let cav = cfg.cavity()?;
    match cmd {
        CavityCmd::Fields {
            branch,
            z,
            t,
            out,
            encoding,
            grid,
        } => match out {
            Some(base) => {
                let g = Grid::zt(
                    UniformAxis::linspace(0.0, cav.length, grid.nz)?,
                    UniformAxis::linspace(0.0, period(&cav)?, grid.nt)?,
                );
                let field = cav.sample((*branch).into(), &g)?;
                let path = snapshot::save(&field, base, (*encoding).into())?;
                r.output("data", path.display());
                r.output("nodes", g.len());
                r.output("max_abs", num(field.max_abs()));
            }
            None => {
                let b: Branch = (*branch).into();
                out_complex(r, "Ex", cav.field_e(*z, *t, b)?[0]);
                out_complex(r, "Hy", cav.field_h(*z, *t, b)?[1]);
            }
        },
        CavityCmd::Energy { t, intervals } => {
            let h = cav.hamiltonian(*t);
            let h0 = cav.hamiltonian(0.0);
            let q = cav.field_energy_quadrature(*t, *intervals)?;
            r.output("hamiltonian", num(h));
            r.output("field_energy", num(q));
            r.check(CheckRecord::at_most(
                "hamiltonian_drift",
                "H(t) = H(0), relative deviation",
                (h - h0).abs() / h0,
                verify::HAMILTONIAN_DRIFT_TOL,
            ));
            r.check(CheckRecord::at_most(
                "field_energy",
                "H = (1/2) integral (eps0 E^2 + mu0 H^2), relative deviation of the quadrature",
                (h - q).abs() / h,
                1e-6,
            ));
        }
        CavityCmd::Residual {
            branch,
            input,
            grid,
        } => match input {
            Some(base) => {
                let field = snapshot::load(base)?;
                let (r1, r2) = maxwell_residual_sampled(&field, &cav.constants)?;
                r.output("r1", num(r1));
                r.output("r2", num(r2));
            }
            None => {
                let g = residual_grid(&cav, grid)?;
                let b: Branch = (*branch).into();
                let (a1, a2) = cav.maxwell_residual(b, &g)?;
                let (f1, f2) = cav.maxwell_residual(b, &g.refined())?;
                r.output("r1", num(a1));
                r.output("r2", num(a2));
                r.output("r1_refined", num(f1));
                r.output("r2_refined", num(f2));
                let (lo, hi) = verify::CONVERGENCE_RATIO;
                r.check(CheckRecord::within(
                    "ratio_r1",
                    "dEx/dz + mu0 dHy/dt residual ratio under halving",
                    a1 / f1,
                    lo,
                    hi,
                ));
                r.check(CheckRecord::within(
                    "ratio_r2",
                    "dHy/dz + eps0 dEx/dt residual ratio under halving",
                    a2 / f2,
                    lo,
                    hi,
                ));
            }
        },
    }
    Ok(())
}

fn field_set(cfg: &Config, set: &CurrentSetArgs) -> Result<FieldFunctionSet> {
    let sign = match set.sign {
        SignArg::Plus => SignFamily::Plus,
        SignArg::Minus => SignFamily::Minus,
    };
    Ok(FieldFunctionSet::new(cfg.cavity()?, sign))
}

fn currents(cmd: &CurrentsCmd, cfg: &Config, r: &mut RunReport) -> Result<()> {
    let ctx = NoetherContext::default();
    match cmd {
        CurrentsCmd::Evaluate {
            family,
            mu,
            z,
            t,
            set,
        } => {
            let ffs = field_set(cfg, set)?;
            let f: Family = (*family).into();
            let closed = current(&ffs, f, *mu, *z, *t)?;
            let generic = current_generic(&ffs, &ctx, f, *mu, *z, *t)?;
            out_complex(r, "closed_form", closed);
            out_complex(r, "noether", generic);
            let scale = [3, 4]
                .iter()
                .map(|&m| current(&ffs, f, m, *z, *t).map(|v| v.norm()))
                .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))?;
            let diff = (closed - generic).norm();
            r.check(CheckRecord::at_most(
                "closed_vs_noether",
                "closed-form current = Noether current, relative to max(|j3|, |j4|)",
                if diff == 0.0 { 0.0 } else { diff / scale },
                verify::GENERIC_CURRENT_TOL,
            ));
        }
        CurrentsCmd::Continuity { family, n, set } => {
            let ffs = field_set(cfg, set)?;
            let g = Grid::zt(
                UniformAxis::linspace(0.0, ffs.cavity.length, *n)?,
                UniformAxis::linspace(0.0, period(&ffs.cavity)?, *n)?,
            );
            let rep = continuity_residual(&ffs, &g, (*family).into())?;
            r.output("max_abs", num(rep.max_abs));
            r.output("scale", num(rep.scale));
            r.check(CheckRecord::at_most(
                "continuity",
                "dj3/dz + (1/ic) dj4/dt = 0, relative to term size",
                rep.relative(),
                verify::CONTINUITY_TOL,
            ));
        }
        CurrentsCmd::Charge { t, set } => {
            let ffs = field_set(cfg, set)?;
            let q = total_charge(&ffs, *t);
            out_complex(r, "Q1", charge_q(&ffs, ChargeComponent::Q1, *t));
            out_complex(r, "Q2", charge_q(&ffs, ChargeComponent::Q2, *t));
            out_complex(r, "Q", q);
            let p = period(&ffs.cavity)?;
            let series: Vec<Complex64> = (0..=200)
                .map(|i| total_charge(&ffs, t + p * f64::from(i) / 200.0))
                .collect();
            let size = (0..=200)
                .map(|i| charge_scale(&ffs, t + p * f64::from(i) / 200.0))
                .chain(series.iter().map(|v| v.norm()))
                .fold(0.0, f64::max);
            let change = series.iter().map(|v| (v - q).norm()).fold(0.0, f64::max);
            r.check(CheckRecord::at_most(
                "charge_drift",
                "Q(t + s) = Q(t) for s over one period, relative to the charge term scale",
                if change == 0.0 { 0.0 } else { change / size },
                verify::CHARGE_DRIFT_TOL,
            ));
        }
        CurrentsCmd::Spin { mu, z, t, set } => {
            let ffs = field_set(cfg, set)?;
            let s = spin_density(&ffs, *mu, *z, *t)?;
            let sg = spin_density_generic(&ffs, &ctx, *mu, *z, *t)?;
            r.output("spin_density", num(s));
            r.output("spin_density_noether", num(sg));
            let sp = spirality(&ffs, *t);
            let scale = spirality_scale(&ffs, *t);
            out_complex(r, "spirality", sp);
            r.output("spirality_scale", num(scale));
            let p = period(&ffs.cavity)?;
            let drift = (0..=200)
                .map(|i| (spirality(&ffs, t + p * f64::from(i) / 200.0) - sp).norm() / scale)
                .fold(0.0, f64::max);
            r.check(CheckRecord::at_most(
                "spirality_drift",
                "S43(t + s) = S43(t) for s over one period, relative to spirality scale",
                drift,
                verify::CHARGE_DRIFT_TOL,
            ));
        }
    }
    Ok(())
}

fn pick_mode(cav: &Cavity, index: usize) -> Result<crate::cavity::CavityMode> {
    index
        .checked_sub(1)
        .and_then(|i| cav.modes.get(i))
        .copied()
        .ok_or(Error::IndexOutOfRange {
            index: index as i64,
            lo: 1,
            hi: cav.modes.len() as i64,
        })
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn qfield(cmd: &QfieldCmd, cfg: &Config, r: &mut RunReport) -> Result<()> {
    let cav = cfg.cavity()?;
    let pc = cav.constants;
    match cmd {
        QfieldCmd::Commutators { fock, mode } => {
            let d = fock.dim.unwrap_or(cfg.qfield.dim);
            let qm = QuantizedMode::new(pick_mode(&cav, *mode)?, d)?;
            let a = SurdMatrix::annihilation(d);
            let diag = a.commutator(&a.transpose()).integer_diagonal();
            let mut want = vec![1i64; d];
            want[d - 1] = 1 - d as i64;
            r.output("corner", want[d - 1]);
            r.check(CheckRecord::exact(
                "ladder_commutator_exact",
                "[a, a+] = diag(1, ..., 1, 1-D) in exact surd arithmetic",
                diag == Some(want),
            ));
            let (q, p) = position_momentum(&qm, &pc);
            let ihbar = CMatrix::identity(d - 1, d - 1) * Complex64::new(0.0, pc.hbar);
            let qp = interior_block(&commutator(&q.matrix, &p.matrix), d - 1);
            let pq = interior_block(&commutator(&p.matrix, &q.matrix), d - 1);
            r.check(CheckRecord::at_most(
                "canonical_qp",
                "[q, p] = i hbar I on the interior block, max deviation / hbar",
                max_abs(&(qp - &ihbar)) / pc.hbar,
                verify::COMMUTATOR_TOL,
            ));
            r.check(CheckRecord::at_most(
                "canonical_pq",
                "[p, q] = i hbar I on the interior block, max deviation / hbar",
                max_abs(&(pq - &ihbar)) / pc.hbar,
                verify::COMMUTATOR_TOL,
            ));
        }
        QfieldCmd::Operators { fock, modes, z, t } => {
            let d = fock.dim.unwrap_or(cfg.qfield.dim);
            let mut sub = cav.clone();
            sub.modes.truncate(*modes);
            let qc = QuantizedCavity::new(sub, d, cfg.qfield.dim_cap)?;
            r.output("total_dim", qc.total_dim);
            for kind in FieldKind::ALL {
                r.check(CheckRecord::at_most(
                    &format!("hermitian_{kind:?}").to_lowercase(),
                    "||O - O+|| / ||O||",
                    qc.field_operator(kind, *z, *t)?
                        .relative_hermiticity_defect(),
                    verify::HERMITICITY_TOL,
                ));
            }
        }
        QfieldCmd::Evolve { fock, mode, phase } => {
            let d = fock.dim.unwrap_or(cfg.qfield.dim);
            let qm = QuantizedMode::new(pick_mode(&cav, *mode)?, d)?;
            let t = phase / qm.mode.omega;
            let n_op = &qm.a_dag.matrix * &qm.a.matrix;
            let gen = (n_op + CMatrix::identity(d, d) * Complex64::from(0.5))
                * Complex64::new(0.0, -phase);
            let u = gen.exp();
            let a_t = u.adjoint() * &qm.a.matrix * &u;
            let (ea, _) = heisenberg_evolve(&qm, t);
            r.output("t", num(t));
            out_complex(r, "a_01", ea.matrix[(0, 1)]);
            r.check(CheckRecord::at_most(
                "heisenberg_vs_exponential",
                "a(t) = U+ a U, U = exp(-i H t / hbar), interior block max deviation",
                max_abs(&(interior_block(&a_t, d - 1) - interior_block(&ea.matrix, d - 1))),
                verify::HEISENBERG_TOL,
            ));
        }
        QfieldCmd::Contradiction {
            fock,
            mode,
            phase1,
            phase2,
        } => {
            let d = fock.dim.unwrap_or(cfg.qfield.dim);
            let qm = QuantizedMode::new(pick_mode(&cav, *mode)?, d)?;
            let w = qm.mode.omega;
            let rep = cosine_ansatz_contradiction(&qm, phase1 / w, phase2 / w)?;
            r.output("tan_t1", num(rep.tan_t1));
            r.output("tan_t2", num(rep.tan_t2));
            r.output("lhs_variation", num(rep.lhs_variation));
            r.output("rhs_gap", num(rep.rhs_gap));
            r.output("contradiction", rep.contradiction);
            r.check(CheckRecord::at_most(
                "lhs_time_independent",
                "(a+ - a)^-1 (a+ + a) identical at both times",
                rep.lhs_variation,
                0.0,
            ));
            r.check(CheckRecord::above(
                "rhs_gap",
                "|tan(omega t1) - tan(omega t2)|",
                rep.rhs_gap,
                verify::CONTRADICTION_GAP,
            ));
        }
    }
    Ok(())
}

const QUANTITIES: [&str; 4] = ["E", "H", "Je", "Jg"];
const AXES: [&str; 3] = ["x", "y", "z"];

fn quantity_mut<'a>(c: &'a mut Components, name: &str) -> Option<&'a mut [[Vec<f64>; 3]; 4]> {
    match name {
        "E" => Some(&mut c.e),
        "H" => Some(&mut c.h),
        "Je" => Some(&mut c.je),
        "Jg" => Some(&mut c.jg),
        _ => None,
    }
}

/// Components from a snapshot whose channels are named `E1x`, `H2y`,
/// `Je3z`, `Jg4x`, `RhoE1`, `RhoG4`, ... (quantity, slot 1..=4, axis).
/// Absent channels are zero; imaginary parts must vanish.
pub fn components_from_snapshot(field: &SampledField) -> Result<Components> {
    let n = field.grid.len();
    let mut c = Components::zeros(n);
    for (label, values) in field.labels.iter().zip(&field.channels) {
        if values.iter().any(|z| z.im != 0.0) {
            return Err(Error::Format(format!(
                "channel {label} has a nonzero imaginary part"
            )));
        }
        let re: Vec<f64> = values.iter().map(|z| z.re).collect();
        let bad = || Error::Format(format!("unknown component channel {label:?}"));
        let slot_of = |s: &str| match s.parse::<usize>() {
            Ok(k @ 1..=4) => Ok(k - 1),
            _ => Err(bad()),
        };
        if let Some(rest) = label.strip_prefix("RhoE") {
            c.rho_e[slot_of(rest)?] = re;
        } else if let Some(rest) = label.strip_prefix("RhoG") {
            c.rho_g[slot_of(rest)?] = re;
        } else {
            let split = label.find(|ch: char| ch.is_ascii_digit()).ok_or_else(bad)?;
            let (name, rest) = label.split_at(split);
            if rest.len() != 2 {
                return Err(bad());
            }
            let slot = slot_of(&rest[..1])?;
            let axis = AXES.iter().position(|a| *a == &rest[1..]).ok_or_else(bad)?;
            quantity_mut(&mut c, name).ok_or_else(bad)?[slot][axis] = re;
        }
    }
    Ok(c)
}

/// Snapshot of components with the channel names read by
/// [`components_from_snapshot`].
pub fn components_to_snapshot(grid: &Grid, c: &Components) -> Result<SampledField> {
    let mut labels = Vec::new();
    let mut channels = Vec::new();
    let mut push = |label: String, v: &[f64]| {
        labels.push(label);
        channels.push(v.iter().map(|&x| Complex64::from(x)).collect());
    };
    for (name, q) in QUANTITIES.iter().zip([&c.e, &c.h, &c.je, &c.jg]) {
        for (slot, vf) in q.iter().enumerate() {
            for (axis, v) in AXES.iter().zip(vf) {
                push(format!("{name}{}{axis}", slot + 1), v);
            }
        }
    }
    for (name, q) in [("RhoE", &c.rho_e), ("RhoG", &c.rho_g)] {
        for (slot, v) in q.iter().enumerate() {
            push(format!("{name}{}", slot + 1), v);
        }
    }
    SampledField::new(grid.clone(), labels, channels)
}

fn packed_snapshot(fq: &FieldQuaternion) -> Result<SampledField> {
    let mut labels = Vec::new();
    let mut channels = Vec::new();
    for (name, q) in QUANTITIES.iter().zip([&fq.e, &fq.h, &fq.je, &fq.jg]) {
        for (axis, s) in AXES.iter().zip(q) {
            labels.push(format!("{name}{axis}.1"));
            channels.push(s.one.clone());
            labels.push(format!("{name}{axis}.j"));
            channels.push(s.j.clone());
        }
    }
    for (name, s) in [("RhoE", &fq.rho_e), ("RhoG", &fq.rho_g)] {
        labels.push(format!("{name}.1"));
        channels.push(s.one.clone());
        labels.push(format!("{name}.j"));
        channels.push(s.j.clone());
    }
    SampledField::new(fq.grid.clone(), labels, channels)
}

fn embedded_grid(cav: &Cavity, g: &GridArgs) -> Result<Grid> {
    Ok(Grid::xyzt(
        UniformAxis::point(0.0),
        UniformAxis::point(0.0),
        UniformAxis::linspace(0.0, cav.length, g.nz)?,
        UniformAxis::linspace(0.0, 0.5 * cav.length / cav.constants.c, g.nt)?,
    ))
}

fn embedded(cav: &Cavity, grid: &Grid) -> Result<Components> {
    let mut c = Components::zeros(grid.len());
    c.embed_cavity(cav, Branch::First, 1, grid)?;
    c.embed_cavity(cav, Branch::Second, 2, grid)?;
    Ok(c)
}

fn load_source(src: &QuatSource, cfg: &Config) -> Result<(Grid, Components, Option<Cavity>)> {
    match &src.input {
        Some(base) => {
            let field = snapshot::load(base)?;
            let c = components_from_snapshot(&field)?;
            Ok((field.grid, c, None))
        }
        None => {
            let cav = cfg.cavity()?;
            let g = embedded_grid(&cav, &src.grid)?;
            let c = embedded(&cav, &g)?;
            Ok((g, c, Some(cav)))
        }
    }
}

fn quat(cmd: &QuatCmd, cfg: &Config, r: &mut RunReport) -> Result<()> {
    let pc = cfg.constants()?;
    match cmd {
        QuatCmd::Assemble {
            source,
            out,
            encoding,
        } => {
            let (g, c, _) = load_source(source, cfg)?;
            let fq = assemble(&g, &c)?;
            r.output("nodes", g.len());
            if let Some(base) = out {
                let path = snapshot::save(&packed_snapshot(&fq)?, base, (*encoding).into())?;
                r.output("data", path.display());
            }
            r.check(CheckRecord::exact(
                "round_trip",
                "decompose(assemble(c)) = c bit for bit",
                fq.decompose() == c,
            ));
        }
        QuatCmd::Residual { source, tolerance } => {
            let (g, c, cav) = load_source(source, cfg)?;
            let res = generalized_maxwell_residual(&assemble(&g, &c)?, &pc)?;
            for (name, v) in ["faraday", "ampere", "gauss_e", "gauss_h"]
                .iter()
                .zip(res.as_array())
            {
                r.output(name, num(v));
            }
            if let Some(tol) = tolerance {
                r.check(CheckRecord::at_most(
                    "residual",
                    "largest generalized Maxwell residual",
                    res.max(),
                    *tol,
                ));
            }
            if let Some(cav) = cav {
                let fine_grid = g.refined();
                let fine = generalized_maxwell_residual(
                    &assemble(&fine_grid, &embedded(&cav, &fine_grid)?)?,
                    &pc,
                )?;
                let (lo, hi) = verify::CONVERGENCE_RATIO;
                r.check(CheckRecord::within(
                    "ratio_faraday",
                    "curl E + mu0 dH/dt + J_g residual ratio under halving",
                    res.faraday / fine.faraday,
                    lo,
                    hi,
                ));
                r.check(CheckRecord::within(
                    "ratio_ampere",
                    "curl H - eps0 dE/dt - J_e residual ratio under halving",
                    res.ampere / fine.ampere,
                    lo,
                    hi,
                ));
            }
        }
        QuatCmd::Gradient { source, mode } => {
            let (g, c, _) = load_source(source, cfg)?;
            let phi = Biquaternion3Field::riemann_silberstein(&g, &c, &pc)?;
            let m = match mode {
                GradientArg::Spatial => GradientMode::Spatial,
                GradientArg::Spacetime => GradientMode::Spacetime,
            };
            let grad = biquat_gradient(&phi, m, &pc)?;
            r.output("max_scalar", num(grad.max_scalar()));
            r.output("max_vector", num(grad.max_vector()));
            r.output("max_modulus", num(grad.max_modulus()));
        }
    }
    Ok(())
}

fn verify_all(seed: u64, r: &mut RunReport) -> Result<()> {
    r.output("seed", seed);
    for crit in verify::verify_all(seed)? {
        r.output(
            &format!("criterion_{}", crit.id),
            if crit.pass() { "PASS" } else { "FAIL" },
        );
        for mut c in crit.checks {
            c.name = format!("c{}.{}", crit.id, c.name);
            r.check(c);
        }
    }
    Ok(())
}

/// Write a component snapshot of the configured cavity embedded on a
/// `(x, y, z, t)` grid, for use with `quat --input`.
pub fn write_embedded_snapshot(
    cfg: &Config,
    nz: usize,
    nt: usize,
    base: &Path,
    encoding: Encoding,
) -> Result<PathBuf> {
    let cav = cfg.cavity()?;
    let g = embedded_grid(&cav, &GridArgs { nz, nt })?;
    snapshot::save(
        &components_to_snapshot(&g, &embedded(&cav, &g)?)?,
        base,
        encoding,
    )
}
