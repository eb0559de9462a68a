//! Run configuration (TOML).
//!
//! Every table rejects unknown keys. Errors carry the dotted key path.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Model;
use crate::params::{DraftProfile, PhysicalParams, RadialGrid, SolidShape};
use crate::quadrature::CompositeRule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Coupled,
    Prescribed,
    Picard,
    CheckCompat,
    Audit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    pub params: ParamsConfig,
    /// Absent: flat bottom at the hydrostatic draft h0 − m/(ρπR²).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeConfig>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub time: TimeConfig,
    #[serde(default)]
    pub initial: InitialConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prescribed: Option<SignalConfig>,
    #[serde(default)]
    pub picard: PicardConfig,
    #[serde(default)]
    pub numerics: NumericsConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditConfig>,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

fn default_g() -> f64 {
    9.81
}

fn default_rho() -> f64 {
    1000.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    #[serde(default = "default_g")]
    pub g: f64,
    #[serde(default = "default_rho")]
    pub rho: f64,
    pub h0: f64,
    #[serde(rename = "R")]
    pub radius: f64,
    pub m: f64,
    #[serde(rename = "P_atm", default)]
    pub p_atm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    pub points: usize,
    pub panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            points: 32,
            panels: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ShapeConfig {
    Flat {
        draft: f64,
    },
    /// h_w,eq(r) = centre + (edge − centre)(r/R)².
    Parabolic {
        centre: f64,
        edge: f64,
        #[serde(default)]
        quadrature: QuadratureConfig,
    },
    /// Flat bottom handled by quadrature instead of closed forms.
    ConstantProfile {
        draft: f64,
        #[serde(default)]
        quadrature: QuadratureConfig,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Defaults to 50 R.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
    #[serde(rename = "N", default = "default_cells")]
    pub cells: usize,
}

fn default_cells() -> usize {
    2000
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            r_max: None,
            cells: default_cells(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    #[serde(rename = "T_end", default = "default_t_end")]
    pub t_end: f64,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    /// Snapshot cadence in steps; 0 disables snapshots.
    #[serde(default)]
    pub snapshot_every: usize,
}

fn default_t_end() -> f64 {
    10.0
}

fn default_cfl() -> f64 {
    0.9
}

impl Default for TimeConfig {
    fn default() -> Self {
        TimeConfig {
            t_end: default_t_end(),
            cfl: default_cfl(),
            snapshot_every: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialConfig {
    #[default]
    Equilibrium,
    /// Solid displaced by `delta0` at rest over compatible fluid data.
    Release {
        delta0: f64,
        /// Decay length of the elevation profile; defaults to 2 R.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        decay_length: Option<f64>,
    },
    /// Fluid from a CSV with columns `r,zeta,q` at the cell centres.
    Csv {
        path: PathBuf,
        #[serde(default)]
        delta0: f64,
        #[serde(default)]
        w0: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "signal", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SignalConfig {
    /// w_G(t) = amplitude · sin(omega t).
    Sine { amplitude: f64, omega: f64 },
    /// Piecewise-linear w_G from a CSV with columns `t,w`.
    Csv { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicardConfig {
    #[serde(default = "default_iterations")]
    pub iterations: usize,
    #[serde(default = "default_picard_cfl")]
    pub cfl: f64,
}

fn default_iterations() -> usize {
    20
}

fn default_picard_cfl() -> f64 {
    0.5
}

impl Default for PicardConfig {
    fn default() -> Self {
        PicardConfig {
            iterations: default_iterations(),
            cfl: default_picard_cfl(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsConfig {
    #[serde(default = "default_true")]
    pub pressure_corrector: bool,
    /// Symmetrizer weight M for the wall dissipativity report; absent = auto.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetrizer_weight: Option<f64>,
}

fn default_true() -> bool {
    true
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            pressure_corrector: true,
            symmetrizer_weight: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_trajectory")]
    pub trajectory: PathBuf,
    #[serde(default = "default_summary")]
    pub summary: PathBuf,
    /// Directory for `snapshot_<step>.csv` files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshots_dir: Option<PathBuf>,
}

fn default_trajectory() -> PathBuf {
    PathBuf::from("trajectory.csv")
}

fn default_summary() -> PathBuf {
    PathBuf::from("summary.json")
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            trajectory: default_trajectory(),
            summary: default_summary(),
            snapshots_dir: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditConfig {
    pub inputs: Vec<PathBuf>,
}

fn param_key(field: &str) -> String {
    let name = match field {
        "R" | "P_atm" => field.to_string(),
        "h_w_eq" => return "shape".into(),
        other => other.to_string(),
    };
    format!("params.{name}")
}

fn remap(e: Error, prefix: &str) -> Error {
    match e {
        Error::NonPositiveParameter { field, value } => {
            let key = if prefix == "params" {
                param_key(field)
            } else {
                prefix.to_string()
            };
            Error::config(key, format!("must be positive, got {value}"))
        }
        Error::InvalidGrid(reason) => Error::config(prefix, reason),
        other => other,
    }
}

impl RunConfig {
    pub fn physical_params(&self) -> Result<PhysicalParams> {
        let p = &self.params;
        PhysicalParams::new(p.g, p.rho, p.h0, p.radius, p.m, p.p_atm)
            .map_err(|e| remap(e, "params"))
    }

    pub fn solid_shape(&self, params: &PhysicalParams) -> Result<SolidShape> {
        let radius = params.solid_radius();
        let rule = |q: &QuadratureConfig| -> Result<CompositeRule> {
            if q.points == 0 || q.panels == 0 {
                return Err(Error::config(
                    "shape.quadrature",
                    "points and panels must be positive",
                ));
            }
            Ok(CompositeRule::new(q.points, q.panels))
        };
        let shape = match &self.shape {
            None => {
                let draft = params.rest_depth()
                    - params.solid_mass()
                        / (params.density() * std::f64::consts::PI * radius * radius);
                SolidShape::flat(draft).map_err(|_| {
                    Error::config(
                        "shape",
                        format!(
                            "hydrostatic draft {draft} is not positive; give [shape] explicitly"
                        ),
                    )
                })?
            }
            Some(ShapeConfig::Flat { draft }) => {
                SolidShape::flat(*draft).map_err(|e| remap(e, "shape.draft"))?
            }
            Some(ShapeConfig::Parabolic {
                centre,
                edge,
                quadrature,
            }) => SolidShape::profiled(
                DraftProfile::parabolic(*centre, *edge, radius),
                radius,
                rule(quadrature)?,
            )
            .map_err(|e| remap(e, "shape"))?,
            Some(ShapeConfig::ConstantProfile { draft, quadrature }) => {
                SolidShape::profiled(DraftProfile::constant(*draft), radius, rule(quadrature)?)
                    .map_err(|e| remap(e, "shape.draft"))?
            }
        };
        Ok(shape)
    }

    pub fn r_max(&self) -> f64 {
        self.grid.r_max.unwrap_or(50.0 * self.params.radius)
    }

    pub fn build_model(&self) -> Result<Model> {
        let params = self.physical_params()?;
        let shape = self.solid_shape(&params)?;
        let grid = RadialGrid::new(params.solid_radius(), self.r_max(), self.grid.cells)
            .map_err(|e| remap(e, "grid"))?;
        let mut model = Model::new(params, shape, grid)?;
        model.pressure_corrector = self.numerics.pressure_corrector;
        Ok(model)
    }

    /// Checks everything that can be checked without touching the file system.
    pub fn validate(&self) -> Result<Model> {
        let model = self.build_model()?;
        let t = &self.time;
        if !(t.t_end > 0.0) || !t.t_end.is_finite() {
            return Err(Error::config(
                "time.T_end",
                format!("must be positive, got {}", t.t_end),
            ));
        }
        if !(t.cfl > 0.0 && t.cfl <= 1.0) {
            return Err(Error::config(
                "time.cfl",
                format!("must lie in (0, 1], got {}", t.cfl),
            ));
        }
        if !(self.picard.cfl > 0.0 && self.picard.cfl <= 1.0) {
            return Err(Error::config(
                "picard.cfl",
                format!("must lie in (0, 1], got {}", self.picard.cfl),
            ));
        }
        if let Some(m) = self.numerics.symmetrizer_weight {
            if !(m > 0.0) {
                return Err(Error::config(
                    "numerics.symmetrizer_weight",
                    "must be positive",
                ));
            }
        }
        if let InitialConfig::Release {
            decay_length: Some(l),
            ..
        } = self.initial
        {
            if !(l > 0.0) {
                return Err(Error::config("initial.decay_length", "must be positive"));
            }
        }
        if self.mode == Mode::Prescribed && self.prescribed.is_none() {
            return Err(Error::config(
                "prescribed",
                "required when mode = \"prescribed\"",
            ));
        }
        if self.mode == Mode::Audit && self.audit.as_ref().is_none_or(|a| a.inputs.is_empty()) {
            return Err(Error::config(
                "audit.inputs",
                "at least one trajectory is required",
            ));
        }
        Ok(model)
    }

    /// Canonical TOML text; the config hash is taken over this.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Relative paths are taken from `base` (the config file's directory).
    /// The paths themselves are left as written so the hash does not depend
    /// on where the config lives.
    pub fn with_base_dir(mut self, base: &Path) -> Self {
        self.base_dir = base.to_path_buf();
        self
    }

    pub fn resolve(&self, path: &Path) -> PathBuf {
        self.base_dir.join(path)
    }
}

/// Parses and validates a configuration.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let de = toml::Deserializer::new(text);
    let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let message = e.inner().message().to_string();
        if let Some(rest) = message.strip_prefix("unknown field `") {
            let field = rest.split('`').next().unwrap_or_default();
            let key = if path == "." || path.is_empty() {
                field.to_string()
            } else if path == field || path.ends_with(&format!(".{field}")) {
                path.clone()
            } else {
                format!("{path}.{field}")
            };
            return Error::config(key, format!("unknown key: {message}"));
        }
        let key = if path == "." { String::new() } else { path };
        Error::config(key, message)
    })?;
    cfg.validate()?;
    Ok(cfg)
}
