//! Command-line drivers for the gauge-transformation checks.

pub mod commands;
pub mod config;
pub mod record;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::config::RunConfig;
use crate::record::ResultRecord;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] dipole_gauge::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Process exit status.
pub mod exit_code {
    pub const PASS: i32 = 0;
    pub const TOLERANCE_FAILURE: i32 = 1;
    pub const VALIDATION_ERROR: i32 = 2;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    VerifyCommutator,
    DipoleEnergy,
    FieldShift,
    CoulombPath,
    BchCheck,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses and validates `config_text`, then runs one command.
pub fn run(kind: CommandKind, config_text: &str) -> Result<(RunConfig, ResultRecord), CliError> {
    let cfg = RunConfig::parse(config_text)?;
    let d = digest(config_text.as_bytes());
    let rec = match kind {
        CommandKind::VerifyCommutator => commands::verify_commutator(&cfg, d)?,
        CommandKind::DipoleEnergy => commands::dipole_energy(&cfg, d)?,
        CommandKind::FieldShift => commands::field_shift_cmd(&cfg, d)?,
        CommandKind::CoulombPath => commands::coulomb_path_cmd(&cfg, d)?,
        CommandKind::BchCheck => commands::bch_check(&cfg, d)?,
    };
    Ok((cfg, rec))
}
