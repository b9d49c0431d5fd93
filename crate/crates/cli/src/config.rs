//! Resolved settings: defaults, then a TOML file, then the environment, then
//! command-line flags.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thetacalc_core::mukai::{NSLattice, SurfaceKind};
use thetacalc_core::verlinde::DEFAULT_TERM_BUDGET;

use crate::error::{CliError, CliResult};
use crate::output::Format;

pub const BUDGET_ENV: &str = "THETACALC_TERM_BUDGET";

#[derive(Debug, Clone)]
pub struct CliConfig {
    pub output_format: Format,
    pub term_budget: u64,
    pub lattice_preset: String,
    pub precision: u32,
    pub lattices: BTreeMap<String, LatticeSpec>,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            output_format: Format::Json,
            term_budget: DEFAULT_TERM_BUDGET,
            lattice_preset: "k3_elliptic".into(),
            precision: 30,
            lattices: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub kind: SurfaceKind,
    pub gram: Vec<Vec<i64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    output_format: Option<Format>,
    term_budget: Option<u64>,
    lattice_preset: Option<String>,
    precision: Option<u32>,
    #[serde(default)]
    lattices: BTreeMap<String, LatticeSpec>,
}

#[derive(Debug, Default)]
pub struct Overrides {
    pub config: Option<std::path::PathBuf>,
    pub format: Option<Format>,
    pub term_budget: Option<u64>,
    pub precision: Option<u32>,
    pub lattice: Option<String>,
}

impl CliConfig {
    pub fn resolve(flags: &Overrides, env_budget: Option<&str>) -> CliResult<Self> {
        let mut cfg = CliConfig::default();
        if let Some(path) = &flags.config {
            cfg.apply_file(path)?;
        }
        if let Some(raw) = env_budget {
            cfg.term_budget = raw.trim().parse().map_err(|_| {
                CliError::Input(format!(
                    "{BUDGET_ENV} must be a non-negative integer, got {raw:?}"
                ))
            })?;
        }
        if let Some(f) = flags.format {
            cfg.output_format = f;
        }
        if let Some(b) = flags.term_budget {
            cfg.term_budget = b;
        }
        if let Some(p) = flags.precision {
            cfg.precision = p;
        }
        if let Some(l) = &flags.lattice {
            cfg.lattice_preset = l.clone();
        }
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> CliResult<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))?;
        let file: ConfigFile = toml::from_str(&text)
            .map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))?;
        if let Some(f) = file.output_format {
            self.output_format = f;
        }
        if let Some(b) = file.term_budget {
            self.term_budget = b;
        }
        if let Some(l) = file.lattice_preset {
            self.lattice_preset = l;
        }
        if let Some(p) = file.precision {
            self.precision = p;
        }
        self.lattices = file.lattices;
        Ok(())
    }

    /// The active lattice; user-defined lattices shadow the built-in presets.
    pub fn lattice(&self) -> CliResult<Arc<NSLattice>> {
        let name = &self.lattice_preset;
        if let Some(spec) = self.lattices.get(name) {
            return Ok(Arc::new(NSLattice::new(
                name.clone(),
                spec.kind,
                spec.gram.clone(),
            )?));
        }
        NSLattice::preset(name).map(Arc::new).ok_or_else(|| {
            CliError::Input(format!(
                "unknown lattice {name:?}; presets are {}",
                NSLattice::PRESETS.join(", ")
            ))
        })
    }
}
