//! Run configuration: TOML file, then the output-directory environment
//! variable, then command-line flags. Later sources win.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use apcsf_core::flow::{Budget, DichotomyConfig, FlowConfig, Thresholds, MIN_NODES};
use apcsf_core::quadrature::QuadratureConfig;
use apcsf_core::shrinker::{CertificationTolerances, ShrinkerConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Overrides `output.dir` from the config file.
pub const OUT_DIR_ENV: &str = "APCSF_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format `{other}` (expected csv, json or svg)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// `|Θ − qπ|` target of the closing-energy root.
    pub root: f64,
    /// Absolute and relative target of the period quadrature.
    pub quadrature: f64,
    /// Relative bracket width of the length fixed point.
    pub fixed_point: f64,
    /// Closure defect over diameter accepted by certification.
    pub closure: f64,
    /// Area, mean-curvature and length residuals accepted by certification.
    pub certification: f64,
    /// Soliton residual accepted by certification.
    pub soliton: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let s = ShrinkerConfig::default();
        Self {
            root: s.closing_tolerance,
            quadrature: s.quadrature.abs_tol,
            fixed_point: s.fixed_point_tolerance,
            closure: s.certification.closure,
            certification: s.certification.area,
            soliton: s.certification.soliton,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    pub samples_per_half_period: usize,
    pub max_samples_per_half_period: usize,
}

impl Default for Grid {
    fn default() -> Self {
        let s = ShrinkerConfig::default().shooting;
        Self {
            samples_per_half_period: s.samples_per_half_period,
            max_samples_per_half_period: s.max_samples_per_half_period,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Flow {
    pub node_count: usize,
    pub dt_max: f64,
    pub cfl: f64,
    pub max_steps: u64,
    pub max_time: f64,
    pub blowup_curvature_factor: f64,
    pub blowup_spacing_factor: f64,
    pub cluster_percentile: f64,
    pub circle_relative_std: f64,
    pub circle_sustain_steps: u64,
    pub circle_turning_tolerance: f64,
    pub log_every: u64,
    /// SVG frame every this many steps; 0 keeps only the first and last frame.
    pub snapshot_every: u64,
}

impl Default for Flow {
    fn default() -> Self {
        let d = DichotomyConfig::default();
        Self {
            node_count: d.node_count,
            dt_max: d.flow.dt_max,
            cfl: d.flow.cfl,
            max_steps: d.budget.max_steps,
            max_time: d.budget.max_time,
            blowup_curvature_factor: d.thresholds.blowup_curvature_factor,
            blowup_spacing_factor: d.thresholds.blowup_spacing_factor,
            cluster_percentile: d.thresholds.cluster_percentile,
            circle_relative_std: d.thresholds.circle_relative_std,
            circle_sustain_steps: d.thresholds.circle_sustain_steps,
            circle_turning_tolerance: d.thresholds.circle_turning_tolerance,
            log_every: d.log_every,
            snapshot_every: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Output {
    pub dir: PathBuf,
    pub formats: Vec<Format>,
    /// SVG user units per curve unit.
    pub svg_scale: f64,
    /// SVG stroke width as a fraction of the curve diameter.
    pub stroke: f64,
}

impl Default for Output {
    fn default() -> Self {
        Self { dir: PathBuf::from("out"), formats: vec![Format::Csv, Format::Json, Format::Svg], svg_scale: 100.0, stroke: 0.004 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub grid: Grid,
    pub flow: Flow,
    pub output: Output,
}

/// Command-line values that take precedence over the file and environment.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out_dir: Option<PathBuf>,
    pub formats: Option<Vec<Format>>,
    pub node_count: Option<usize>,
    pub dt_max: Option<f64>,
}

impl RunConfig {
    pub fn from_toml_str(text: &str, origin: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|source| CliError::Config { path: origin.to_path_buf(), source })
    }

    /// Builds the effective configuration and validates it.
    pub fn resolve(file: Option<&Path>, env_out_dir: Option<String>, overrides: &Overrides) -> Result<Self> {
        let mut cfg = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
                Self::from_toml_str(&text, path)?
            }
            None => Self::default(),
        };
        if let Some(dir) = env_out_dir.filter(|d| !d.is_empty()) {
            cfg.output.dir = PathBuf::from(dir);
        }
        if let Some(dir) = &overrides.out_dir {
            cfg.output.dir = dir.clone();
        }
        if let Some(formats) = &overrides.formats {
            cfg.output.formats = formats.clone();
        }
        if let Some(n) = overrides.node_count {
            cfg.flow.node_count = n;
        }
        if let Some(dt) = overrides.dt_max {
            cfg.flow.dt_max = dt;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        let f = &self.flow;
        let positive = [
            ("tolerances.root", t.root),
            ("tolerances.quadrature", t.quadrature),
            ("tolerances.fixed_point", t.fixed_point),
            ("tolerances.closure", t.closure),
            ("tolerances.certification", t.certification),
            ("tolerances.soliton", t.soliton),
            ("flow.dt_max", f.dt_max),
            ("flow.cfl", f.cfl),
            ("flow.max_time", f.max_time),
            ("flow.blowup_curvature_factor", f.blowup_curvature_factor),
            ("flow.blowup_spacing_factor", f.blowup_spacing_factor),
            ("flow.circle_relative_std", f.circle_relative_std),
            ("flow.circle_turning_tolerance", f.circle_turning_tolerance),
            ("output.svg_scale", self.output.svg_scale),
            ("output.stroke", self.output.stroke),
        ];
        for (name, value) in positive {
            if !(value > 0.0 && value.is_finite()) {
                return Err(CliError::Usage(format!("{name} must be positive and finite, got {value}")));
            }
        }
        if f.node_count < MIN_NODES {
            return Err(CliError::Usage(format!("flow.node_count must be at least {MIN_NODES}, got {}", f.node_count)));
        }
        if !(f.cluster_percentile > 0.0 && f.cluster_percentile < 1.0) {
            return Err(CliError::Usage("flow.cluster_percentile must lie in (0, 1)".into()));
        }
        if self.grid.samples_per_half_period < 16 || self.grid.max_samples_per_half_period < self.grid.samples_per_half_period {
            return Err(CliError::Usage("grid sizes must satisfy 16 <= samples_per_half_period <= max_samples_per_half_period".into()));
        }
        if self.output.formats.is_empty() {
            return Err(CliError::Usage("output.formats must not be empty".into()));
        }
        Ok(())
    }

    pub fn wants(&self, format: Format) -> bool {
        self.output.formats.contains(&format)
    }

    pub fn shrinker_config(&self) -> ShrinkerConfig {
        let t = &self.tolerances;
        let mut s = ShrinkerConfig::default();
        s.closing_tolerance = t.root;
        s.quadrature = QuadratureConfig { abs_tol: t.quadrature, rel_tol: t.quadrature, ..s.quadrature };
        s.fixed_point_tolerance = t.fixed_point;
        s.shooting.samples_per_half_period = self.grid.samples_per_half_period;
        s.shooting.max_samples_per_half_period = self.grid.max_samples_per_half_period;
        s.certification = CertificationTolerances {
            area: t.certification,
            soliton: t.soliton,
            kappa_bar: t.certification,
            closure: t.closure,
            length: t.certification,
        };
        s
    }

    pub fn dichotomy_config(&self) -> DichotomyConfig {
        let f = &self.flow;
        DichotomyConfig {
            node_count: f.node_count,
            flow: FlowConfig { cfl: f.cfl, dt_max: f.dt_max, ..FlowConfig::default() },
            thresholds: Thresholds {
                blowup_curvature_factor: f.blowup_curvature_factor,
                blowup_spacing_factor: f.blowup_spacing_factor,
                cluster_percentile: f.cluster_percentile,
                circle_relative_std: f.circle_relative_std,
                circle_sustain_steps: f.circle_sustain_steps,
                circle_turning_tolerance: f.circle_turning_tolerance,
            },
            budget: Budget { max_steps: f.max_steps, max_time: f.max_time },
            log_every: f.log_every,
            snapshot_every: f.snapshot_every,
            ..DichotomyConfig::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_match_core() {
        let cfg = RunConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.dichotomy_config(), DichotomyConfig::default());
        let s = cfg.shrinker_config();
        let d = ShrinkerConfig::default();
        assert_eq!(s.closing_tolerance, d.closing_tolerance);
        assert_eq!(s.certification, d.certification);
    }

    #[test]
    fn precedence_file_env_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "[output]\ndir = \"from_file\"\nformats = [\"json\"]\n[flow]\nnode_count = 128\n").unwrap();
        let cfg = RunConfig::resolve(Some(&path), None, &Overrides::default()).unwrap();
        assert_eq!(cfg.output.dir, PathBuf::from("from_file"));
        assert_eq!(cfg.output.formats, vec![Format::Json]);
        assert_eq!(cfg.flow.node_count, 128);

        let cfg = RunConfig::resolve(Some(&path), Some("from_env".into()), &Overrides::default()).unwrap();
        assert_eq!(cfg.output.dir, PathBuf::from("from_env"));

        let flags = Overrides { out_dir: Some("from_flag".into()), node_count: Some(256), ..Default::default() };
        let cfg = RunConfig::resolve(Some(&path), Some("from_env".into()), &flags).unwrap();
        assert_eq!(cfg.output.dir, PathBuf::from("from_flag"));
        assert_eq!(cfg.flow.node_count, 256);
    }

    #[test]
    fn invalid_values_rejected() {
        let flags = Overrides { node_count: Some(10), ..Default::default() };
        assert!(matches!(RunConfig::resolve(None, None, &flags), Err(CliError::Usage(_))));
        let flags = Overrides { formats: Some(vec![]), ..Default::default() };
        assert!(RunConfig::resolve(None, None, &flags).is_err());
        let mut cfg = RunConfig::default();
        cfg.tolerances.root = 0.0;
        assert!(cfg.validate().is_err());
        assert!(RunConfig::from_toml_str("[flow]\nnodes = 3\n", Path::new("x.toml")).is_err());
    }

    #[test]
    fn format_parsing() {
        assert_eq!("SVG".parse::<Format>().unwrap(), Format::Svg);
        assert!("png".parse::<Format>().is_err());
    }
}
