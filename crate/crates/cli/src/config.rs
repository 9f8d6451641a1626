use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sle_core::formulas::QuadratureSpec;
use sle_core::KappaParams;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Trace,
    AkappaTable,
    SignatureMc,
    LeftPassage,
    Crossings,
    Dimension,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Trace,
        Command::AkappaTable,
        Command::SignatureMc,
        Command::LeftPassage,
        Command::Crossings,
        Command::Dimension,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Trace => "trace",
            Command::AkappaTable => "akappa-table",
            Command::SignatureMc => "signature-mc",
            Command::LeftPassage => "left-passage",
            Command::Crossings => "crossings",
            Command::Dimension => "dimension",
        }
    }

    /// Extension of the output file.
    pub fn extension(self) -> &'static str {
        match self {
            Command::SignatureMc | Command::LeftPassage => "json",
            _ => "csv",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown command '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceDomain {
    HalfPlane,
    UnitDisk,
    SmallDisk,
}

/// Everything needed to reproduce a run. Serialized into every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Command,
    pub kappa: f64,
    pub n_paths: u64,
    /// Capacity step of uniform grids (`trace`).
    pub dt: f64,
    pub n_steps: usize,
    pub seed: u64,
    pub closure_delta: f64,
    pub output_path: Option<PathBuf>,

    pub trace_domain: TraceDomain,
    /// Richardson extrapolation over n, n/2, n/4 steps in `signature-mc`.
    pub extrapolate: bool,
    pub quadrature: QuadratureSpec,

    /// `left-passage` points `r·e^{iθ}`.
    pub radii: Vec<f64>,
    pub thetas: Vec<f64>,

    /// `crossings`: annuli share the center and outer radius.
    pub center: [f64; 2],
    pub outer_radius: f64,
    pub ratios: Vec<f64>,
    pub k_values: Vec<usize>,

    /// `dimension` ladder `ell0·2^{-j}`, `j = 0..=j_max`.
    pub ell0: f64,
    pub j_max: u32,
    pub discard: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            command: Command::Trace,
            kappa: 2.0,
            n_paths: 1000,
            dt: 1e-3,
            n_steps: 1000,
            seed: 0,
            closure_delta: 0.01,
            output_path: None,
            trace_domain: TraceDomain::HalfPlane,
            extrapolate: true,
            quadrature: QuadratureSpec::default(),
            radii: vec![1.0],
            thetas: vec![PI / 3.0, PI / 2.0, 2.0 * PI / 3.0],
            center: [0.0, 0.0],
            outer_radius: 0.9,
            ratios: vec![0.5, 0.25, 0.125],
            k_values: vec![4],
            ell0: 0.25,
            j_max: 4,
            discard: 0,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name} must be positive, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn params(&self) -> Result<KappaParams, CliError> {
        KappaParams::new(self.kappa).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.params()?;
        positive("dt", self.dt)?;
        positive("closure_delta", self.closure_delta)?;
        if self.n_steps == 0 {
            return Err(CliError::Config("n_steps must be positive".into()));
        }
        if self.n_paths == 0 {
            return Err(CliError::Config("n_paths must be positive".into()));
        }
        self.quadrature
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        match self.command {
            Command::SignatureMc => {
                if self.closure_delta >= 0.5 {
                    return Err(CliError::Config("closure_delta must be below 1/2".into()));
                }
                if self.extrapolate && self.n_steps % 4 != 0 {
                    return Err(CliError::Config(
                        "n_steps must be a multiple of 4 when extrapolating".into(),
                    ));
                }
            }
            Command::LeftPassage => {
                if self.radii.is_empty() || self.thetas.is_empty() {
                    return Err(CliError::Config("need at least one radius and one angle".into()));
                }
                for &r in &self.radii {
                    positive("radius", r)?;
                }
                if let Some(t) = self.thetas.iter().find(|t| !(**t > 0.0 && **t < PI)) {
                    return Err(CliError::Config(format!("angle {t} is not in (0, π)")));
                }
            }
            Command::Crossings => {
                positive("outer_radius", self.outer_radius)?;
                if self.ratios.is_empty() || self.k_values.is_empty() {
                    return Err(CliError::Config("need at least one ratio and one k".into()));
                }
                if let Some(r) = self.ratios.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
                    return Err(CliError::Config(format!("ratio {r} is not in (0, 1)")));
                }
                if self.k_values.contains(&0) {
                    return Err(CliError::Config("k must be at least 1".into()));
                }
            }
            Command::Dimension => {
                positive("ell0", self.ell0)?;
                if self.j_max as usize + 1 < self.discard + 2 {
                    return Err(CliError::Config("ladder too short for the fit".into()));
                }
            }
            Command::Trace | Command::AkappaTable => {}
        }
        Ok(())
    }

    /// Output file: `output_path`, else `<dir>/<command>-k<kappa>-s<seed>.<ext>`
    /// with `dir` from `default_dir` or the working directory.
    pub fn resolve_output(&self, default_dir: Option<&str>) -> PathBuf {
        if let Some(p) = &self.output_path {
            return p.clone();
        }
        let dir = PathBuf::from(default_dir.unwrap_or("."));
        dir.join(format!(
            "{}-k{}-s{}.{}",
            self.command,
            self.kappa,
            self.seed,
            self.command.extension()
        ))
    }
}
