//! Run configuration: preset, then TOML file, then command-line flags.
//!
//! ```toml
//! preset = "fig6"
//!
//! [params]
//! g0as = 0.05
//!
//! [spectrum]
//! min = -1.2
//! max = 1.2
//! count = 2401
//!
//! [sweep]
//! axis1 = { param = "g1as", min = 0.25, max = 0.45, count = 21 }
//! axis2 = { param = "delta", min = 0.3, max = 0.5, count = 21 }
//! outputs = ["n0", "contributions", "stability", "qnoise_prediction"]
//!
//! [quadrature]
//! rel_tol = 1e-9
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use hybridcool::presets::{self, PresetAxis};
use hybridcool::{QuadratureSpec, SystemParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_PRESET: &str = "fig2";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse config {path}: {source}")]
    Parse {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error("unknown preset {0:?} (see `presets`)")]
    UnknownPreset(String),
    #[error("unknown parameter {0:?}")]
    UnknownParam(String),
    #[error("malformed {flag} value {value:?}: {reason}")]
    Malformed {
        flag: &'static str,
        value: String,
        reason: String,
    },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub preset: Option<String>,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    pub spectrum: Option<GridSpec>,
    pub sweep: Option<SweepSection>,
    pub quadrature: Option<QuadSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            min: -1.2,
            max: 1.2,
            count: 2401,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        check_range("spectrum grid", self.min, self.max, self.count)
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.count)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub log: bool,
}

impl From<&PresetAxis> for AxisSpec {
    fn from(a: &PresetAxis) -> Self {
        AxisSpec {
            param: a.param.to_string(),
            min: a.min,
            max: a.max,
            count: a.count,
            log: a.log,
        }
    }
}

impl AxisSpec {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !SystemParams::FIELDS.contains(&self.param.as_str()) {
            return Err(ConfigError::UnknownParam(self.param.clone()));
        }
        check_range(
            &format!("axis {}", self.param),
            self.min,
            self.max,
            self.count,
        )?;
        if self.log && self.min <= 0.0 {
            return Err(ConfigError::Invalid(format!(
                "log axis {} needs min > 0",
                self.param
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        if !self.log {
            return linspace(self.min, self.max, self.count);
        }
        let mut pts: Vec<f64> = linspace(self.min.log10(), self.max.log10(), self.count)
            .into_iter()
            .map(|e| 10f64.powf(e))
            .collect();
        pts[0] = self.min;
        pts[self.count - 1] = self.max;
        pts
    }

    /// Parses `param:min:max:count[:log]`.
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        let bad = |reason: &str| ConfigError::Malformed {
            flag: "--axis",
            value: s.to_string(),
            reason: reason.to_string(),
        };
        let parts: Vec<&str> = s.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(bad("expected param:min:max:count[:log]"));
        }
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| bad(&e.to_string()));
        let log = match parts.get(4).map(|x| x.trim()) {
            None | Some("lin") => false,
            Some("log") => true,
            Some(_) => return Err(bad("scale must be `lin` or `log`")),
        };
        Ok(AxisSpec {
            param: parts[0].trim().to_string(),
            min: num(parts[1])?,
            max: num(parts[2])?,
            count: parts[3]
                .trim()
                .parse()
                .map_err(|e: std::num::ParseIntError| bad(&e.to_string()))?,
            log,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    N0,
    Contributions,
    Stability,
    QnoisePrediction,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis1: Option<AxisSpec>,
    pub axis2: Option<AxisSpec>,
    pub outputs: Option<Vec<OutputKind>>,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadSection {
    pub rel_tol: Option<f64>,
    pub window_factor: Option<f64>,
    pub max_panels: Option<usize>,
}

/// Everything the command line can override.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub preset: Option<String>,
    pub config: Option<PathBuf>,
    /// `key=value` assignments for [`SystemParams`] fields.
    pub set: Vec<String>,
    pub quad_tol: Option<f64>,
    pub axes: Vec<String>,
    pub grid: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub axis1: AxisSpec,
    pub axis2: Option<AxisSpec>,
    pub outputs: Vec<OutputKind>,
}

impl SweepSpec {
    pub fn wants(&self, k: OutputKind) -> bool {
        self.outputs.contains(&k)
    }

    /// Grid points in row-major order (`axis1` outer).
    pub fn points(&self, base: &SystemParams) -> Vec<SystemParams> {
        let outer = self.axis1.points();
        let inner = self.axis2.as_ref().map(|a| a.points());
        let mut out = Vec::new();
        for &x in &outer {
            let p = base.with(&self.axis1.param, x);
            match (&self.axis2, &inner) {
                (Some(a2), Some(ys)) => out.extend(ys.iter().map(|&y| p.with(&a2.param, y))),
                _ => out.push(p),
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset: String,
    pub params: SystemParams,
    pub quad: QuadratureSpec,
    pub grid: GridSpec,
    /// Present when any axis is configured (flags, file, or preset).
    pub sweep: Option<SweepSpec>,
}

fn check_range(what: &str, min: f64, max: f64, count: usize) -> Result<(), ConfigError> {
    if count < 2 {
        return Err(ConfigError::Invalid(format!("{what}: count must be >= 2")));
    }
    if !(min.is_finite() && max.is_finite() && min < max) {
        return Err(ConfigError::Invalid(format!(
            "{what}: need finite min < max"
        )));
    }
    Ok(())
}

/// `count` points from `min` to `max`, endpoints exact.
pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    let n = (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i == count - 1 {
                max
            } else {
                min + (max - min) * (i as f64 / n)
            }
        })
        .collect()
}

fn apply_param(p: &mut SystemParams, key: &str, value: f64) -> Result<(), ConfigError> {
    if p.set(key, value) {
        Ok(())
    } else {
        Err(ConfigError::UnknownParam(key.to_string()))
    }
}

fn parse_set(s: &str) -> Result<(String, f64), ConfigError> {
    let bad = |reason: String| ConfigError::Malformed {
        flag: "--set",
        value: s.to_string(),
        reason,
    };
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| bad("expected key=value".into()))?;
    let v = v.trim().parse::<f64>().map_err(|e| bad(e.to_string()))?;
    Ok((k.trim().to_string(), v))
}

fn parse_grid(s: &str) -> Result<GridSpec, ConfigError> {
    let bad = |reason: String| ConfigError::Malformed {
        flag: "--grid",
        value: s.to_string(),
        reason,
    };
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected min:max:count".into()));
    }
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| bad(e.to_string()));
    Ok(GridSpec {
        min: num(parts[0])?,
        max: num(parts[1])?,
        count: parts[2].trim().parse().map_err(|e| bad(format!("{e}")))?,
    })
}

pub fn load_file(path: &PathBuf) -> Result<ConfigFile, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.clone(),
        source,
    })?;
    toml::from_str(&text).map_err(|source| ConfigError::Parse {
        path: path.clone(),
        source,
    })
}

/// Merges preset, file and flags, and validates the result.
pub fn resolve(ov: &Overrides) -> Result<RunConfig, ConfigError> {
    let file = match &ov.config {
        Some(path) => load_file(path)?,
        None => ConfigFile::default(),
    };
    let name = ov
        .preset
        .clone()
        .or_else(|| file.preset.clone())
        .unwrap_or_else(|| DEFAULT_PRESET.to_string());
    let preset = presets::by_name(&name).ok_or_else(|| ConfigError::UnknownPreset(name.clone()))?;

    let mut params = preset.params;
    for (k, v) in &file.params {
        apply_param(&mut params, k, *v)?;
    }
    for s in &ov.set {
        let (k, v) = parse_set(s)?;
        apply_param(&mut params, &k, v)?;
    }
    let report = params.validate();
    if !report.is_valid() {
        return Err(ConfigError::Invalid(report.violations.join("; ")));
    }

    let mut quad = QuadratureSpec::default();
    if let Some(q) = file.quadrature {
        quad.rel_tol = q.rel_tol.unwrap_or(quad.rel_tol);
        quad.window_factor = q.window_factor.unwrap_or(quad.window_factor);
        quad.max_panels = q.max_panels.unwrap_or(quad.max_panels);
    }
    if let Some(t) = ov.quad_tol {
        quad.rel_tol = t;
    }
    if quad.rel_tol.is_nan() || quad.rel_tol <= 0.0 || quad.rel_tol >= 1.0 {
        return Err(ConfigError::Invalid(format!(
            "quadrature tolerance must lie in (0, 1), got {}",
            quad.rel_tol
        )));
    }
    if quad.window_factor.is_nan() || quad.window_factor < 1.0 || quad.max_panels == 0 {
        return Err(ConfigError::Invalid(
            "quadrature window_factor must be >= 1 and max_panels > 0".into(),
        ));
    }

    let grid = match &ov.grid {
        Some(s) => parse_grid(s)?,
        None => file.spectrum.unwrap_or_default(),
    };
    grid.validate()?;

    let section = file.sweep.unwrap_or_default();
    let mut axes: Vec<AxisSpec> = if !ov.axes.is_empty() {
        ov.axes
            .iter()
            .map(|s| AxisSpec::parse(s))
            .collect::<Result<_, _>>()?
    } else if section.axis1.is_some() || section.axis2.is_some() {
        let a1 = section
            .axis1
            .clone()
            .ok_or_else(|| ConfigError::Invalid("sweep.axis2 given without sweep.axis1".into()))?;
        std::iter::once(a1).chain(section.axis2.clone()).collect()
    } else {
        preset.axes.iter().map(AxisSpec::from).collect()
    };
    if axes.len() > 2 {
        return Err(ConfigError::Invalid("at most two sweep axes".into()));
    }
    for a in &axes {
        a.validate()?;
    }
    if axes.len() == 2 && axes[0].param == axes[1].param {
        return Err(ConfigError::Invalid("the two axes must differ".into()));
    }
    let sweep = if axes.is_empty() {
        None
    } else {
        let axis2 = if axes.len() == 2 { axes.pop() } else { None };
        let axis1 = axes.pop().unwrap();
        let mut outputs = section.outputs.unwrap_or_else(|| {
            vec![
                OutputKind::N0,
                OutputKind::Contributions,
                OutputKind::Stability,
                OutputKind::QnoisePrediction,
            ]
        });
        outputs.sort();
        outputs.dedup();
        let spec = SweepSpec {
            axis1,
            axis2,
            outputs,
        };
        for p in spec.points(&params) {
            let report = p.validate();
            if !report.is_valid() {
                return Err(ConfigError::Invalid(format!(
                    "sweep leaves the valid domain: {}",
                    report.violations.join("; ")
                )));
            }
        }
        Some(spec)
    };

    Ok(RunConfig {
        preset: name,
        params,
        quad,
        grid,
        sweep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_flags_over_file_over_preset() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(
            &path,
            "preset = \"fig3\"\n[params]\ng0as = 0.05\ndelta = 0.4\n",
        )
        .unwrap();
        let ov = Overrides {
            config: Some(path),
            set: vec!["delta=0.41".into()],
            ..Overrides::default()
        };
        let cfg = resolve(&ov).unwrap();
        assert_eq!(cfg.preset, "fig3");
        assert_eq!(cfg.params.g0as, 0.05);
        assert_eq!(cfg.params.delta, 0.41);
        assert_eq!(cfg.params.omega0, 0.76);

        let ov = Overrides {
            preset: Some("fig4b".into()),
            ..ov
        };
        assert_eq!(resolve(&ov).unwrap().params.kappa, 7000.0);
    }

    #[test]
    fn rejects_bad_input() {
        let unknown = Overrides {
            set: vec!["gamma2=1".into()],
            ..Overrides::default()
        };
        assert!(matches!(
            resolve(&unknown),
            Err(ConfigError::UnknownParam(_))
        ));

        let axis = Overrides {
            axes: vec!["chi:0:1:5".into()],
            ..Overrides::default()
        };
        assert!(matches!(resolve(&axis), Err(ConfigError::UnknownParam(_))));

        let single = Overrides {
            axes: vec!["delta:0.3:0.5:1".into()],
            ..Overrides::default()
        };
        assert!(matches!(resolve(&single), Err(ConfigError::Invalid(_))));

        let grid = Overrides {
            grid: Some("-1:1:1".into()),
            ..Overrides::default()
        };
        assert!(matches!(resolve(&grid), Err(ConfigError::Invalid(_))));

        let preset = Overrides {
            preset: Some("fig9".into()),
            ..Overrides::default()
        };
        assert!(matches!(
            resolve(&preset),
            Err(ConfigError::UnknownPreset(_))
        ));

        let domain = Overrides {
            axes: vec!["kappa:-1:1:3".into()],
            ..Overrides::default()
        };
        assert!(matches!(resolve(&domain), Err(ConfigError::Invalid(_))));
    }

    #[test]
    fn unknown_file_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.toml");
        std::fs::write(&path, "[params]\nfoo = 1.0\n").unwrap();
        let ov = Overrides {
            config: Some(path.clone()),
            ..Overrides::default()
        };
        assert!(matches!(resolve(&ov), Err(ConfigError::UnknownParam(_))));
        std::fs::write(&path, "[sweeps]\n").unwrap();
        assert!(matches!(resolve(&ov), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn preset_axes_used_by_default() {
        let ov = Overrides {
            preset: Some("fig6".into()),
            ..Overrides::default()
        };
        let s = resolve(&ov).unwrap().sweep.unwrap();
        assert_eq!(s.axis1.param, "g1as");
        assert_eq!(s.axis2.unwrap().count, 21);
    }

    #[test]
    fn axis_points() {
        let a = AxisSpec::parse("g0as:1e-4:0.2:31:log").unwrap();
        let pts = a.points();
        assert_eq!((pts[0], pts[30]), (1e-4, 0.2));
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        let l = linspace(0.3, 0.5, 21);
        assert_eq!(l[20], 0.5);
        assert!((l[10] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn row_major_order() {
        let spec = SweepSpec {
            axis1: AxisSpec::parse("g1as:0.3:0.4:2").unwrap(),
            axis2: Some(AxisSpec::parse("delta:0.3:0.5:3").unwrap()),
            outputs: vec![OutputKind::N0],
        };
        let pts = spec.points(&presets::fig6());
        assert_eq!(pts.len(), 6);
        assert_eq!((pts[0].g1as, pts[0].delta), (0.3, 0.3));
        assert_eq!((pts[2].g1as, pts[2].delta), (0.3, 0.5));
        assert_eq!(pts[3].g1as, 0.4);
    }
}
