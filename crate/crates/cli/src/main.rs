use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use dipole_gauge_cli::config::OutputFormat;
use dipole_gauge_cli::{exit_code, run, CliError, CommandKind};

/// Checks of the operator-valued Göppert-Mayer gauge transformation on a
/// finite-mode quantized field.
#[derive(Parser)]
#[command(name = "dipole-gauge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; overrides the config's `format` key.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Subcommand)]
enum Command {
    /// Equal-time commutator by mode summation vs the closed form
    /// [A_m(R),E_m'(R')] = (iħ/4πε₀)(1/ρ³)(δ_mm' − 3ρ̂_mρ̂_m'), ρ = R − R'.
    VerifyCommutator(IoArgs),
    /// Transformed Hamiltonian H₀ + H_ext + Σ_{q>q'} ε_dip(R_q − R_q', d_q, d_q') + ε_self with
    /// ε_dip(R,d,d') = (1/4πε₀)(1/R³){d·d' − 3(d·R̂)(d'·R̂)}; pair energies also from −(iħ/2)[X,Y].
    DipoleEnergy(IoArgs),
    /// Field-operator shift E(R) = Ẽ(R) + Σ_q E_dip(R − R_q, d_q) with
    /// E_dip(R,d) = −(1/4πε₀)(1/R³){d − 3(d·R̂)R̂}; optional check via −[X, E(R)].
    FieldShift(IoArgs),
    /// Line-integral generator X = (i/ħ) q ∫ A(s)·ds: Ẽ(r) = E(r) − (q/4πε₀) r/r³ and
    /// independence of the result from the path.
    CoulombPath(IoArgs),
    /// BCH closed form e^{sX} Y e^{−sX} = Y + s[X,Y] for central [X,Y], against a
    /// truncated-Fock matrix exponential.
    BchCheck(IoArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, io) = match cli.command {
        Command::VerifyCommutator(a) => (CommandKind::VerifyCommutator, a),
        Command::DipoleEnergy(a) => (CommandKind::DipoleEnergy, a),
        Command::FieldShift(a) => (CommandKind::FieldShift, a),
        Command::CoulombPath(a) => (CommandKind::CoulombPath, a),
        Command::BchCheck(a) => (CommandKind::BchCheck, a),
    };
    match execute(kind, &io) {
        Ok(pass) => ExitCode::from(if pass { exit_code::PASS } else { exit_code::TOLERANCE_FAILURE } as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code::VALIDATION_ERROR as u8)
        }
    }
}

fn execute(kind: CommandKind, io: &IoArgs) -> Result<bool, CliError> {
    let start = Instant::now();
    let text = std::fs::read_to_string(&io.config)?;
    let (cfg, mut rec) = run(kind, &text)?;
    rec.duration_seconds = start.elapsed().as_secs_f64();
    let format = io.format.or(cfg.format).unwrap_or(OutputFormat::Json);
    let rendered = rec.render(format);
    match &io.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(rec.pass)
}
