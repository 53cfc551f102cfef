//! `symgate` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

pub mod angle;
pub mod format;
pub mod matrix_file;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use symgate_core::entanglement::{
    analyze, concurrence, entangling_power, lmg_entanglement_profile, separable_state,
    EntanglementReport,
};
use symgate_core::gates::{
    gate, lmg_gate, special_perfect_entangler_theta, LmgParams, SymmetricGate,
};
use symgate_core::linalg::{ComplexMatrix, ONE, ZERO};
use symgate_core::spin::{decompose, hermitian_basis, reconstruct, SpinLabel, TensorComponent};
use symgate_core::su3::{
    all_m, build_hamiltonian, decompose_hamiltonian, from_qubit_basis, verify_algebra_tables,
    verify_gellmann, MIndex, TABLE_TOL,
};
use symgate_core::Error as CoreError;

use crate::angle::{parse_angle, parse_spin};
use crate::format::{complex, matrix, num, vector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Residual above which a reconstruction counts as a verification failure.
const RECONSTRUCT_TOL: f64 = 1e-12;
/// Tolerance for the Gell-Mann relations.
const GELLMANN_TOL: f64 = 1e-14;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => EXIT_USAGE,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NoConvergence { .. } | CoreError::Inconsistent(_) => {
                CliError::Verification(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "symgate",
    version,
    about = "Symmetric two-qubit (spin-1) gates, operator bases and entangling power"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the spin-1 basis M0..M8 (or a tensor basis) and verify its algebra
    Basis(BasisArgs),
    /// Analyze B_k(theta): matrices, Makhlin G1, entangling power, class
    Gate(GateArgs),
    /// Sweep theta for B_k and write `theta,g1_abs,ep,class` CSV
    Sweep(SweepArgs),
    /// Apply B_k(theta) to the symmetric product state at (alpha, phi)
    Act(ActArgs),
    /// LMG gate: single-time report or `t,ep,concurrence` CSV series
    Lmg(LmgArgs),
    /// Expand a Hermitian matrix from a JSON file over the operator basis
    Decompose(DecomposeArgs),
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    /// Only run the algebra-table and Gell-Mann checks
    #[arg(long)]
    pub verify: bool,
    /// Print a single basis matrix, e.g. M3
    #[arg(long, value_name = "Mk", value_parser = parse_m_name)]
    pub show: Option<usize>,
    /// Print the Hermitian tensor basis for spin j (0 ..= 5/2) instead
    #[arg(long, value_name = "J", value_parser = parse_spin_label)]
    pub j: Option<SpinLabel>,
    /// With --j: print only the number of basis operators
    #[arg(long, requires = "j")]
    pub count: bool,
}

#[derive(Debug, Args)]
pub struct GateSelect {
    /// Gate index k in 1..=8
    #[arg(value_parser = clap::value_parser!(u8).range(1..=8))]
    pub k: u8,
    /// Gate parameter: radians or symbolic (pi/2, sqrt3*pi/2)
    #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true, required_unless_present = "spe")]
    pub theta: Option<f64>,
    /// Use the parameter at which B_k reaches e_p = 2/9 (k = 4..=8)
    #[arg(long, conflicts_with = "theta")]
    pub spe: bool,
}

impl GateSelect {
    fn theta(&self) -> Result<f64, CliError> {
        match self.theta {
            Some(t) => Ok(t),
            None => special_perfect_entangler_theta(self.k as usize)
                .map_err(|e| CliError::Usage(e.to_string())),
        }
    }

    fn build(&self) -> Result<SymmetricGate, CliError> {
        Ok(gate(self.k as usize, self.theta()?)?)
    }
}

#[derive(Debug, Args)]
pub struct GateArgs {
    #[command(flatten)]
    pub select: GateSelect,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Gate index k in 1..=8
    #[arg(value_parser = clap::value_parser!(u8).range(1..=8))]
    pub k: u8,
    #[arg(long, alias = "from", value_parser = parse_angle_arg, allow_hyphen_values = true, default_value = "0")]
    pub theta_min: f64,
    #[arg(long, alias = "to", value_parser = parse_angle_arg, allow_hyphen_values = true)]
    pub theta_max: f64,
    /// Number of grid points, endpoints included
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub steps: u64,
    /// Output CSV path; standard output when omitted
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ActArgs {
    #[command(flatten)]
    pub select: GateSelect,
    /// Polar angle of the single-qubit spinor
    #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Azimuthal angle of the single-qubit spinor
    #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true, default_value = "0")]
    pub phi: f64,
}

#[derive(Debug, Args)]
pub struct LmgArgs {
    #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true)]
    pub g1: f64,
    #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true, required_unless_present = "g2_spe")]
    pub g2: Option<f64>,
    /// Choose g2 so that 2 g2 t = pi/2 + 2 g1 t (single-time mode only)
    #[arg(long, conflicts_with = "g2", requires = "t")]
    pub g2_spe: bool,
    /// Evolution time for a single report
    #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true, conflicts_with_all = ["t_max", "steps"], required_unless_present = "t_max")]
    pub t: Option<f64>,
    #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true, default_value = "0")]
    pub t_min: f64,
    /// End of the time series
    #[arg(long, value_parser = parse_angle_arg, allow_hyphen_values = true, requires = "steps")]
    pub t_max: Option<f64>,
    /// Number of time points, endpoints included
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..), requires = "t_max")]
    pub steps: Option<u64>,
    /// Output CSV path for a series; standard output when omitted
    #[arg(long, short, requires = "t_max")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// JSON file: {"dim": n, "entries": [[[re, im], ...], ...]}
    pub matrix_file: PathBuf,
}

fn parse_angle_arg(s: &str) -> Result<f64, String> {
    parse_angle(s).map_err(|e| e.reason)
}

fn parse_spin_label(s: &str) -> Result<SpinLabel, String> {
    let two_j = parse_spin(s)?;
    SpinLabel::from_two_j(two_j).map_err(|e| e.to_string())
}

fn parse_m_name(s: &str) -> Result<usize, String> {
    let digits = s
        .strip_prefix('M')
        .or_else(|| s.strip_prefix('m'))
        .unwrap_or(s);
    match digits.parse::<usize>() {
        Ok(k) if k <= 8 => Ok(k),
        _ => Err(format!("expected M0..M8, got '{s}'")),
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match dispatch(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Basis(a) => cmd_basis(a, out, err),
        Command::Gate(a) => cmd_gate(a, out).map(|_| EXIT_OK),
        Command::Sweep(a) => cmd_sweep(a, out).map(|_| EXIT_OK),
        Command::Act(a) => cmd_act(a, out).map(|_| EXIT_OK),
        Command::Lmg(a) => cmd_lmg(a, out).map(|_| EXIT_OK),
        Command::Decompose(a) => cmd_decompose(a, out),
    }
}

// basis -----------------------------------------------------------------

fn tensor_name(component: TensorComponent, k: usize, q: i32) -> String {
    let tag = match component {
        TensorComponent::Zero => "T0",
        TensorComponent::Plus => "T+",
        TensorComponent::Minus => "T-",
        TensorComponent::Spherical => "tau",
    };
    format!("({tag})^{k}_{q}")
}

fn cmd_basis(a: &BasisArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(spin) = a.j {
        let basis = hermitian_basis(spin);
        if a.count {
            writeln!(out, "{}", basis.len()).map_err(io_err)?;
            return Ok(EXIT_OK);
        }
        if !a.verify {
            writeln!(
                out,
                "Hermitian tensor basis for j = {spin} ({} operators)",
                basis.len()
            )
            .map_err(io_err)?;
            for t in &basis {
                writeln!(out, "{}:", tensor_name(t.component, t.k, t.q)).map_err(io_err)?;
                write!(out, "{}", matrix(&t.matrix)).map_err(io_err)?;
            }
            return Ok(EXIT_OK);
        }
        let mut worst: f64 = 0.0;
        for (ia, x) in basis.iter().enumerate() {
            for (ib, y) in basis.iter().enumerate() {
                let want = if ia == ib { ONE } else { ZERO };
                worst = worst.max((x.matrix.trace_product(&y.matrix)? - want).norm());
            }
        }
        let ok = worst < 1e-12;
        writeln!(
            out,
            "j = {spin}: {} Hermitian tensor operators, orthonormality residual {}",
            basis.len(),
            num(worst)
        )
        .map_err(io_err)?;
        if !ok {
            return Ok(EXIT_VERIFY);
        }
        return Ok(EXIT_OK);
    }

    if let Some(k) = a.show {
        writeln!(out, "M{k} =").map_err(io_err)?;
        write!(out, "{}", matrix(&all_m()[k])).map_err(io_err)?;
        return Ok(EXIT_OK);
    }

    if !a.verify {
        for (k, mk) in all_m().iter().enumerate() {
            writeln!(out, "M{k} =").map_err(io_err)?;
            write!(out, "{}", matrix(mk)).map_err(io_err)?;
        }
    }
    verify_basis(out, err)
}

/// Runs the table and Gell-Mann checks. A table entry counts as verified
/// when it matches as printed or is one of the documented sign misprints
/// and the computation reproduces its corrected value.
fn verify_basis(out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let report = verify_algebra_tables();
    let unexplained = report.unexplained_mismatches();
    let verified = report.entries_checked - unexplained.len();
    let misprints: Vec<String> = report
        .mismatches
        .iter()
        .filter(|mm| {
            !unexplained
                .iter()
                .any(|u| u.k == mm.k && u.kp == mm.kp && u.kind == mm.kind)
        })
        .map(|mm| format!("[M{}, M{}]", mm.k, mm.kp))
        .collect();
    let gm = verify_gellmann();
    let gm_passed = gm.passed(GELLMANN_TOL);
    let gm_total = gm.relations.len();

    let mut line = format!(
        "{verified}/{} table entries verified",
        report.entries_checked
    );
    if !misprints.is_empty() {
        line.push_str(&format!(
            " ({} as printed, {} against corrected sign misprints {})",
            report.entries_matched(),
            misprints.len(),
            misprints.join(", ")
        ));
    }
    line.push_str(&format!(
        ", {gm_passed}/{gm_total} Gell-Mann relations verified"
    ));
    writeln!(out, "{line}").map_err(io_err)?;

    let ids_ok = report.identities_hold(TABLE_TOL);
    let ids_passed = report
        .identities
        .iter()
        .filter(|c| c.residual < TABLE_TOL)
        .count();
    writeln!(
        out,
        "{ids_passed}/{} structural identities verified (vector triplets, vanishing commutators)",
        report.identities.len()
    )
    .map_err(io_err)?;

    for mm in &report.mismatches {
        let note = if unexplained
            .iter()
            .any(|u| u.k == mm.k && u.kp == mm.kp && u.kind == mm.kind)
        {
            "mismatch"
        } else {
            "known misprint"
        };
        writeln!(err, "{note}: {mm}").map_err(io_err)?;
    }
    for (rel, r) in &gm.relations {
        if *r > GELLMANN_TOL {
            writeln!(
                err,
                "Gell-Mann relation failed: {rel} (residual {})",
                num(*r)
            )
            .map_err(io_err)?;
        }
    }
    for id in report.identities.iter().filter(|c| c.residual >= TABLE_TOL) {
        writeln!(
            err,
            "identity failed: {} (residual {})",
            id.description,
            num(id.residual)
        )
        .map_err(io_err)?;
    }

    if unexplained.is_empty() && gm_passed == gm_total && ids_ok {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_VERIFY)
    }
}

// gate ------------------------------------------------------------------

fn write_report(out: &mut dyn Write, r: &EntanglementReport) -> Result<(), CliError> {
    writeln!(out, "G1 = {}", complex(r.g1)).map_err(io_err)?;
    writeln!(out, "|G1| = {}", num(r.g1_abs)).map_err(io_err)?;
    writeln!(out, "e_p = {}", num(r.ep)).map_err(io_err)?;
    writeln!(out, "class: {}", r.classification).map_err(io_err)?;
    Ok(())
}

fn gate_header(g: &SymmetricGate) -> String {
    match g.theta() {
        Some(t) => format!("gate {} (theta = {})", g.label, num(t)),
        None => format!("gate {}", g.label),
    }
}

fn cmd_gate(a: &GateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = a.select.build()?;
    let report = analyze(&g)?;
    writeln!(out, "{}", gate_header(&g)).map_err(io_err)?;
    writeln!(out, "spin-1 basis (|1 1>, |1 0>, |1 -1>):").map_err(io_err)?;
    write!(out, "{}", matrix(&g.u3)).map_err(io_err)?;
    writeln!(out, "qubit basis (uu, ud, du, dd):").map_err(io_err)?;
    write!(out, "{}", matrix(&g.u4)).map_err(io_err)?;
    write_report(out, &report)
}

// sweep -----------------------------------------------------------------

fn grid(lo: f64, hi: f64, steps: u64) -> Result<Vec<f64>, CliError> {
    if hi <= lo {
        return Err(CliError::Usage(format!(
            "grid end {} must exceed its start {}",
            num(hi),
            num(lo)
        )));
    }
    let n = steps as usize;
    Ok((0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect())
}

/// Builds the CSV text for a `B_k` sweep.
pub fn sweep_csv(k: u8, theta_min: f64, theta_max: f64, steps: u64) -> Result<String, CliError> {
    let mut csv = String::from("theta,g1_abs,ep,class\n");
    for theta in grid(theta_min, theta_max, steps)? {
        let r = entangling_power(&gate(k as usize, theta)?.u4)?;
        csv.push_str(&format!(
            "{},{},{},{}\n",
            num(theta),
            num(r.g1_abs),
            num(r.ep),
            r.classification.tag()
        ));
    }
    Ok(csv)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(io_err),
    }
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let csv = sweep_csv(a.k, a.theta_min, a.theta_max, a.steps)?;
    emit(&csv, a.out.as_deref(), out)?;
    if let Some(p) = &a.out {
        writeln!(out, "wrote {} rows to {}", a.steps, p.display()).map_err(io_err)?;
    }
    Ok(())
}

// act -------------------------------------------------------------------

fn cmd_act(a: &ActArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = a.select.build()?;
    let st = separable_state(a.alpha, a.phi);
    let out3 = g.u3.apply(&st.vec3)?;
    let out4 = g.u4.apply(&st.vec4)?;
    writeln!(out, "{}", gate_header(&g)).map_err(io_err)?;
    writeln!(
        out,
        "input: alpha = {}, phi = {}",
        num(st.alpha),
        num(st.phi)
    )
    .map_err(io_err)?;
    writeln!(out, "input (spin-1): {}", vector(&st.vec3)).map_err(io_err)?;
    writeln!(out, "input (uu, ud, du, dd): {}", vector(&st.vec4)).map_err(io_err)?;
    writeln!(out, "output (spin-1): {}", vector(&out3)).map_err(io_err)?;
    writeln!(out, "output (uu, ud, du, dd): {}", vector(&out4)).map_err(io_err)?;
    writeln!(out, "concurrence = {}", num(concurrence(&out4)?)).map_err(io_err)?;
    Ok(())
}

// lmg -------------------------------------------------------------------

/// Builds the CSV text for an LMG time series.
pub fn lmg_csv(g1: f64, g2: f64, t_min: f64, t_max: f64, steps: u64) -> Result<String, CliError> {
    let mut csv = String::from("t,ep,concurrence\n");
    for s in lmg_entanglement_profile(g1, g2, &grid(t_min, t_max, steps)?)? {
        csv.push_str(&format!(
            "{},{},{}\n",
            num(s.t),
            num(s.ep),
            num(s.concurrence)
        ));
    }
    Ok(csv)
}

fn cmd_lmg(a: &LmgArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if let (Some(t_max), Some(steps)) = (a.t_max, a.steps) {
        let g2 =
            a.g2.expect("clap requires g2 without --g2-spe, which requires --t");
        let csv = lmg_csv(a.g1, g2, a.t_min, t_max, steps)?;
        emit(&csv, a.out.as_deref(), out)?;
        if let Some(p) = &a.out {
            writeln!(out, "wrote {steps} rows to {}", p.display()).map_err(io_err)?;
        }
        return Ok(());
    }
    let t = a.t.expect("clap requires --t or --t-max");
    let g2 = match a.g2 {
        Some(g2) => g2,
        None => {
            if t == 0.0 {
                return Err(CliError::Usage("--g2-spe needs t != 0".into()));
            }
            LmgParams::spe_coupling(a.g1, t)
        }
    };
    let p = LmgParams::new(a.g1, g2, t);
    let g = lmg_gate(p)?;
    let report = entangling_power(&g.u4)?;
    let image = g.u4.apply(&[ONE, ZERO, ZERO, ZERO])?;
    writeln!(
        out,
        "LMG gate (g1 = {}, g2 = {}, t = {})",
        num(p.g1),
        num(p.g2),
        num(p.t)
    )
    .map_err(io_err)?;
    writeln!(out, "xi = {}, beta = {}", num(p.xi()), num(p.beta())).map_err(io_err)?;
    writeln!(out, "spin-1 basis (|1 1>, |1 0>, |1 -1>):").map_err(io_err)?;
    write!(out, "{}", matrix(&g.u3)).map_err(io_err)?;
    write_report(out, &report)?;
    writeln!(out, "B_L|uu> = {}", vector(&image)).map_err(io_err)?;
    writeln!(out, "concurrence = {}", num(concurrence(&image)?)).map_err(io_err)?;
    Ok(())
}

// decompose -------------------------------------------------------------

fn cmd_decompose(a: &DecomposeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let h = matrix_file::read(&a.matrix_file)?;
    h.ensure_hermitian(symgate_core::linalg::HERMITIAN_TOL)
        .map_err(|e| CliError::Parse(format!("input is not Hermitian: {e}")))?;
    match h.dim() {
        3 => decompose_spin1(&h, out),
        4 => {
            let (h3, singlet) = from_qubit_basis(&h).map_err(|e| {
                CliError::Parse(format!(
                    "4x4 input must act within the triplet and singlet separately: {e}"
                ))
            })?;
            writeln!(
                out,
                "two-qubit input: triplet block expanded below; singlet eigenvalue {}",
                num(singlet.re)
            )
            .map_err(io_err)?;
            decompose_spin1(&h3, out)
        }
        _ => decompose_tensor(&h, SpinLabel::HALF, out),
    }
}

fn decompose_spin1(h: &ComplexMatrix, out: &mut dyn Write) -> Result<i32, CliError> {
    let coeffs = decompose_hamiltonian(h)?;
    writeln!(out, "H = 1/2 * sum_k h_k M_k with h_k = Tr(H M_k):").map_err(io_err)?;
    for k in MIndex::all() {
        writeln!(out, "h{} = {}", k.get(), num(coeffs.get(k))).map_err(io_err)?;
    }
    let residual = build_hamiltonian(&coeffs).max_abs_diff(h);
    writeln!(out, "reconstruction residual = {}", num(residual)).map_err(io_err)?;
    Ok(if residual < RECONSTRUCT_TOL {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

fn decompose_tensor(
    h: &ComplexMatrix,
    spin: SpinLabel,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let p = decompose(h, spin)?;
    writeln!(
        out,
        "H = (2j+1)^-1 * sum h^k_q tau^k_q^dagger with h^k_q = Tr(H tau^k_q), j = {spin}:"
    )
    .map_err(io_err)?;
    for (k, q, v) in p.iter() {
        writeln!(out, "h^{k}_{q} = {}", complex(v)).map_err(io_err)?;
    }
    let residual = reconstruct(&p).max_abs_diff(h);
    writeln!(out, "reconstruction residual = {}", num(residual)).map_err(io_err)?;
    Ok(if residual < RECONSTRUCT_TOL {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}
