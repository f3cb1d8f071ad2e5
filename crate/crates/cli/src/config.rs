//! JSON run configuration and the defaults table.

use serde::{Deserialize, Serialize};

use dipole_gauge::{ChargePath, Dipole, DipoleConfig, ModeLattice, UnitSystem, Vec3};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Every default used by the commands.
///
/// | key | value |
/// |---|---|
/// | box length L | 1 |
/// | half extent N | 24 |
/// | verify-commutator sweep | N ∈ {12, 24} |
/// | separations | (0, 0, 0.1) |
/// | regulator σ | smallest separation / 6 |
/// | path endpoint | 200·\|r\| |
/// | BCH ξ | {0.1, 0.3, 1.0} |
/// | BCH truncation | 40, interior below 20 |
/// | Fock dimension cap | 4096 |
/// | commutator, pair energy, field shift | 2% relative |
/// | Coulomb recovery | 1e-3 relative to \|E_c\| |
/// | path-independence residual | 1e-6 |
/// | BCH interior deviation | 1e-8 absolute |
/// | oracle unitarity | 1e-10 absolute |
pub mod defaults {
    pub const BOX_LENGTH: f64 = 1.0;
    pub const HALF_EXTENT: usize = 24;
    pub const SWEEP: [usize; 2] = [12, 24];
    pub const SEPARATION: [f64; 3] = [0.0, 0.0, 0.1];
    pub const SIGMA_DIVISOR: f64 = 6.0;
    pub const ENDPOINT_FACTOR: f64 = 200.0;
    pub const PATH_DIRECTION: [f64; 3] = [1.0 / 3.0, 2.0 / 3.0, -2.0 / 3.0];
    pub const BCH_XI: [f64; 3] = [0.1, 0.3, 1.0];
    pub const BCH_TRUNCATION: usize = 40;
    pub const FOCK_CAP: usize = 4096;

    pub const COMMUTATOR_REL: f64 = 0.02;
    pub const ENERGY_REL: f64 = 0.02;
    pub const FIELD_SHIFT_REL: f64 = 0.02;
    pub const COULOMB_REL: f64 = 1e-3;
    pub const PATH_RESIDUAL: f64 = 1e-6;
    pub const BCH_ABS: f64 = 1e-8;
    pub const UNITARITY_ABS: f64 = 1e-10;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsConfig {
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub epsilon0: f64,
    #[serde(default = "one")]
    pub c: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for UnitsConfig {
    fn default() -> Self {
        Self { hbar: 1.0, epsilon0: 1.0, c: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    #[serde(default = "default_box_length")]
    pub box_length: f64,
    #[serde(default = "default_half_extent")]
    pub half_extent: usize,
}

fn default_box_length() -> f64 {
    defaults::BOX_LENGTH
}

fn default_half_extent() -> usize {
    defaults::HALF_EXTENT
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DipoleEntry {
    pub position: [f64; 3],
    pub moment: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathEntry {
    pub charge: f64,
    pub vertices: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BchConfig {
    #[serde(default = "default_xi")]
    pub xi: Vec<f64>,
    #[serde(default = "default_truncations")]
    pub truncations: Vec<usize>,
    #[serde(default = "default_cap")]
    pub max_dimension: usize,
}

fn default_xi() -> Vec<f64> {
    defaults::BCH_XI.to_vec()
}

fn default_truncations() -> Vec<usize> {
    vec![defaults::BCH_TRUNCATION]
}

fn default_cap() -> usize {
    defaults::FOCK_CAP
}

impl Default for BchConfig {
    fn default() -> Self {
        Self { xi: default_xi(), truncations: default_truncations(), max_dimension: default_cap() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub commutator_rel: f64,
    pub energy_rel: f64,
    pub field_shift_rel: f64,
    pub coulomb_rel: f64,
    pub path_residual: f64,
    pub bch_abs: f64,
    pub unitarity_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            commutator_rel: defaults::COMMUTATOR_REL,
            energy_rel: defaults::ENERGY_REL,
            field_shift_rel: defaults::FIELD_SHIFT_REL,
            coulomb_rel: defaults::COULOMB_REL,
            path_residual: defaults::PATH_RESIDUAL,
            bch_abs: defaults::BCH_ABS,
            unitarity_abs: defaults::UNITARITY_ABS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub units: UnitsConfig,
    /// Used by `dipole-energy` and `field-shift` for the commutator route and
    /// the self energy; `verify-commutator` takes its box length from here.
    #[serde(default)]
    pub lattice: Option<LatticeConfig>,
    #[serde(default)]
    pub sweep_half_extents: Option<Vec<usize>>,
    #[serde(default)]
    pub sigma: Option<f64>,
    #[serde(default)]
    pub separations: Option<Vec<[f64; 3]>>,
    #[serde(default)]
    pub dipoles: Vec<DipoleEntry>,
    #[serde(default)]
    pub field_points: Vec<[f64; 3]>,
    #[serde(default)]
    pub paths: Vec<PathEntry>,
    #[serde(default)]
    pub path_pairs: Vec<[usize; 2]>,
    #[serde(default)]
    pub bch: BchConfig,
    #[serde(default)]
    pub format: Option<OutputFormat>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn vec3(a: [f64; 3]) -> Vec3<f64> {
    Vec3::from_array(a)
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks everything that does not depend on the command being run.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Validation(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        self.unit_system()?;
        if let Some(l) = &self.lattice {
            ModeLattice::new(l.box_length, l.half_extent, self.unit_system()?)?;
        }
        if let Some(s) = self.sigma {
            if !(s.is_finite() && s > 0.0) {
                return Err(CliError::Validation(format!("sigma must be positive, got {s}")));
            }
        }
        if let Some(sweep) = &self.sweep_half_extents {
            if sweep.iter().any(|&n| n < 1) {
                return Err(CliError::Validation("sweep half extents must be at least 1".into()));
            }
        }
        self.dipole_config()?;
        for p in &self.field_points {
            if !vec3(*p).is_finite() {
                return Err(CliError::Validation("field points must be finite".into()));
            }
        }
        let paths = self.charge_paths()?;
        for &[a, b] in &self.path_pairs {
            if a >= paths.len() || b >= paths.len() {
                return Err(CliError::Validation(format!("path pair [{a}, {b}] refers to a missing path")));
            }
        }
        if self.bch.truncations.iter().any(|&t| t < 2) {
            return Err(CliError::Validation("BCH truncations must be at least 2".into()));
        }
        if self.bch.xi.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Validation("BCH xi values must be finite".into()));
        }
        let t = &self.tolerances;
        for v in [t.commutator_rel, t.energy_rel, t.field_shift_rel, t.coulomb_rel, t.path_residual, t.bch_abs, t.unitarity_abs] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Validation(format!("tolerances must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn unit_system(&self) -> Result<UnitSystem<f64>, CliError> {
        Ok(UnitSystem::new(self.units.hbar, self.units.epsilon0, self.units.c)?)
    }

    pub fn lattice(&self) -> Result<Option<ModeLattice<f64>>, CliError> {
        match &self.lattice {
            Some(l) => Ok(Some(ModeLattice::new(l.box_length, l.half_extent, self.unit_system()?)?)),
            None => Ok(None),
        }
    }

    pub fn dipole_config(&self) -> Result<DipoleConfig<f64>, CliError> {
        let dipoles = self.dipoles.iter().map(|d| Dipole::new(vec3(d.position), vec3(d.moment))).collect();
        Ok(DipoleConfig::new(dipoles, self.unit_system()?)?)
    }

    pub fn field_points(&self) -> Vec<Vec3<f64>> {
        self.field_points.iter().copied().map(vec3).collect()
    }

    pub fn charge_paths(&self) -> Result<Vec<ChargePath<f64>>, CliError> {
        self.paths
            .iter()
            .enumerate()
            .map(|(i, p)| {
                ChargePath::new(p.vertices.iter().copied().map(vec3).collect(), p.charge)
                    .map_err(|e| CliError::Validation(format!("path {i}: {e}")))
            })
            .collect()
    }

    pub fn separations(&self) -> Vec<Vec3<f64>> {
        match &self.separations {
            Some(s) => s.iter().copied().map(vec3).collect(),
            None => vec![vec3(defaults::SEPARATION)],
        }
    }
}
