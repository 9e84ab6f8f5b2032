//! TOML run configuration: strict schema, defaults and validation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::emit::Format;
use crate::curvature::{CurvatureMap, GatedPulseSpec, QixChainConfig, SignConvention};
use crate::error::{ensure_positive, Error, Result};
use crate::model::{make_grid_st, Grid1D, GridST, PhysicalConstants, UnitMode};
use crate::observables::{ClockSpec, InterferometerSpec};
use crate::snr::{NoiseFloorTable3, PlatformNoise};
use crate::stress_energy::{
    Architecture, ArrayConfig, GaussianPulse, InterferenceConfig, COVERAGE_WIDTHS, DEFAULT_BRANCH_WIDTH,
};
use crate::sweep::{AxisSpec, ModelKind, Scale, SweepModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    SnrSweep,
    CurvatureProfile,
    QixSim,
    Observables,
    GatedPulse,
}

impl Command {
    pub fn id(self) -> &'static str {
        match self {
            Command::SnrSweep => "snr-sweep",
            Command::CurvatureProfile => "curvature-profile",
            Command::QixSim => "qix-sim",
            Command::Observables => "observables",
            Command::GatedPulse => "gated-pulse",
        }
    }

    /// Config section holding this command's parameters.
    pub fn section(self) -> &'static str {
        match self {
            Command::SnrSweep => "sweep",
            Command::CurvatureProfile => "profile",
            Command::QixSim => "qix",
            Command::Observables => "observables",
            Command::GatedPulse => "gated",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Command::SnrSweep,
            Command::CurvatureProfile,
            Command::QixSim,
            Command::Observables,
            Command::GatedPulse,
        ]
        .into_iter()
        .find(|c| c.id() == s)
        .ok_or_else(|| Error::invalid("command", format!("unknown command `{s}`")))
    }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_formats() -> Vec<Format> {
    vec![Format::Csv, Format::Json]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub units: UnitMode,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_formats")]
    pub formats: Vec<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qix: Option<QixSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observables: Option<ObservablesSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gated: Option<GatedSection>,
    /// Free-form annotations, carried into output metadata.
    #[serde(default, skip_serializing_if = "toml::Table::is_empty")]
    pub metadata: toml::Table,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub model: ModelKind,
    #[serde(default)]
    pub contour_levels: Vec<f64>,
    #[serde(default)]
    pub contour_scale: Scale,
    /// Fixed model parameters by name; unset ones take model defaults.
    #[serde(default)]
    pub fixed: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseSection>,
    pub axes: Vec<AxisSpec>,
}

/// Noise floors for the SNR models. Temperature, mass and quality factor are
/// recorded but do not enter any formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseSection {
    pub detector_floor: f64,
    pub technical_floor: f64,
    pub gap_coeff: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quality_factor: Option<f64>,
}

impl Default for NoiseSection {
    fn default() -> Self {
        let t = NoiseFloorTable3::default();
        Self {
            detector_floor: t.detector_floor,
            technical_floor: t.technical_floor,
            gap_coeff: t.gap_coeff,
            temperature: None,
            mass: None,
            quality_factor: None,
        }
    }
}

impl NoiseSection {
    pub fn table(&self) -> NoiseFloorTable3 {
        NoiseFloorTable3 {
            detector_floor: self.detector_floor,
            technical_floor: self.technical_floor,
            gap_coeff: self.gap_coeff,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProfileSection {
    pub x_min: f64,
    pub x_max: f64,
    pub n_x: usize,
    /// Evaluation time.
    pub t: f64,
    pub sign: SignConvention,
    pub calibration: f64,
    pub arrays: Vec<ArraySection>,
    pub interference: Vec<InterferenceSection>,
}

impl Default for ProfileSection {
    fn default() -> Self {
        Self {
            x_min: -1.0,
            x_max: 1.0,
            n_x: 1001,
            t: 0.0,
            sign: SignConvention::DipNegative,
            calibration: 1.0,
            arrays: Vec::new(),
            interference: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ArraySection {
    pub label: String,
    pub architecture: Architecture,
    pub n_units: usize,
    pub spacing: f64,
    pub epsilon: f64,
    pub sigma: f64,
    pub tau: f64,
    pub x0: f64,
    pub t0: f64,
    /// Placement seed for uncoordinated arrays; defaults to the run seed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Default for ArraySection {
    fn default() -> Self {
        Self {
            label: String::new(),
            architecture: Architecture::SinglePair,
            n_units: 1,
            spacing: 0.0,
            epsilon: 1e-11,
            sigma: 0.1,
            tau: 1.0,
            x0: 0.0,
            t0: 0.0,
            seed: None,
        }
    }
}

impl ArraySection {
    pub fn build(&self, run_seed: u64) -> Result<ArrayConfig> {
        let pulse = GaussianPulse::new(self.epsilon, self.x0, self.t0, self.sigma, self.tau)?;
        ArrayConfig::new(
            self.architecture,
            self.n_units,
            self.spacing,
            pulse,
            self.seed.unwrap_or(run_seed),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InterferenceSection {
    pub label: String,
    pub lambda_strength: f64,
    pub x_left: f64,
    pub x_right: f64,
    pub rel_phase: f64,
    pub branch_width: f64,
}

impl Default for InterferenceSection {
    fn default() -> Self {
        Self {
            label: String::new(),
            lambda_strength: 1e-11,
            x_left: -0.25,
            x_right: 0.25,
            rel_phase: 0.0,
            branch_width: DEFAULT_BRANCH_WIDTH,
        }
    }
}

impl InterferenceSection {
    pub fn build(&self) -> Result<InterferenceConfig> {
        InterferenceConfig::new(self.lambda_strength, self.x_left, self.x_right, self.rel_phase)?
            .with_branch_width(self.branch_width)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QixMode {
    /// Retarded response of a timed event chain.
    #[default]
    Chain,
    /// Closed-form traveling Gaussian.
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QixSection {
    pub mode: QixMode,
    pub n_events: usize,
    pub spacing: f64,
    pub sigma: f64,
    pub gate_interval: f64,
    pub epsilon: f64,
    /// Event duration; defaults to `sigma / c`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_e: Option<f64>,
    /// Analytic-mode speed; defaults to `spacing / gate_interval`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub velocity: Option<f64>,
    pub sign: SignConvention,
    pub calibration: f64,
    pub kappa: f64,
    pub edge_fraction: f64,
    pub n_x: usize,
    pub n_t: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
}

impl Default for QixSection {
    fn default() -> Self {
        Self {
            mode: QixMode::Chain,
            n_events: 10,
            spacing: 1.0,
            sigma: 0.5,
            gate_interval: 0.375,
            epsilon: 1.0,
            tau_e: None,
            velocity: None,
            sign: SignConvention::DipNegative,
            calibration: 1.0,
            kappa: 1.0,
            edge_fraction: crate::curvature::DEFAULT_EDGE_FRACTION,
            n_x: 256,
            n_t: 256,
            x_min: None,
            x_max: None,
            t_min: None,
            t_max: None,
        }
    }
}

impl QixSection {
    pub fn chain(&self, constants: PhysicalConstants) -> Result<QixChainConfig> {
        let mut c = QixChainConfig::new(
            self.n_events,
            self.spacing,
            self.sigma,
            self.gate_interval,
            self.epsilon,
        )?;
        c.tau_e = self.tau_e;
        c.constants = constants;
        c.sign = self.sign;
        c.validate()?;
        Ok(c)
    }

    pub fn map(&self, constants: PhysicalConstants) -> Result<CurvatureMap> {
        CurvatureMap::new(constants, self.sign)
            .with_calibration(self.calibration)?
            .with_kappa(self.kappa)
    }

    /// Fills unset grid bounds from the event layout.
    fn resolve_grid(&mut self, constants: PhysicalConstants) -> Result<()> {
        let chain = self.chain(constants)?;
        let last = (self.n_events - 1) as f64;
        let reach = COVERAGE_WIDTHS * self.sigma;
        let tau = chain.event_tau();
        let (t_lo, t_hi) = match self.mode {
            QixMode::Chain => (
                -COVERAGE_WIDTHS * tau,
                last * self.gate_interval + COVERAGE_WIDTHS * tau,
            ),
            QixMode::Analytic => (0.0, last * self.gate_interval),
        };
        self.t_min.get_or_insert(t_lo);
        self.t_max.get_or_insert(t_hi);
        let (x_lo, x_hi) = match self.mode {
            QixMode::Chain => (-reach, last * self.spacing + reach),
            QixMode::Analytic => {
                let v = *self.velocity.get_or_insert(chain.v_eff());
                let ends = [v * self.t_min.unwrap(), v * self.t_max.unwrap()];
                (ends[0].min(ends[1]) - reach, ends[0].max(ends[1]) + reach)
            }
        };
        self.x_min.get_or_insert(x_lo);
        self.x_max.get_or_insert(x_hi);
        Ok(())
    }

    pub fn grid(&self) -> Result<GridST> {
        let missing = || Error::invalid("qix grid", "bounds unresolved");
        let space = Grid1D::new(
            self.x_min.ok_or_else(missing)?,
            self.x_max.ok_or_else(missing)?,
            self.n_x,
        )?;
        make_grid_st(
            space,
            self.t_min.ok_or_else(missing)?,
            self.t_max.ok_or_else(missing)?,
            self.n_t,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ObservablesSection {
    pub delta_r: f64,
    /// Array size for the curvature SNR.
    pub n_units: f64,
    /// Baseline for strain and the clock frequency shift.
    pub length: f64,
    pub interferometer: InterferometerSection,
    pub clock: ClockSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub platform: Option<PlatformNoise>,
}

impl Default for ObservablesSection {
    fn default() -> Self {
        Self {
            delta_r: 1e-36,
            n_units: 1.0,
            length: 1.0,
            interferometer: InterferometerSection::default(),
            clock: ClockSection::default(),
            platform: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InterferometerSection {
    pub arm_length: f64,
    pub wavelength: f64,
    pub baseline: f64,
}

impl Default for InterferometerSection {
    fn default() -> Self {
        Self {
            arm_length: 1.0,
            wavelength: 1.064e-6,
            baseline: 1.0,
        }
    }
}

impl InterferometerSection {
    pub fn build(&self) -> Result<InterferometerSpec> {
        InterferometerSpec::new(self.arm_length, self.wavelength, self.baseline)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClockSection {
    pub extent: f64,
    pub duration: f64,
    pub stability: f64,
}

impl Default for ClockSection {
    fn default() -> Self {
        Self {
            extent: 1e-3,
            duration: 1e-3,
            stability: 1e-18,
        }
    }
}

impl ClockSection {
    pub fn build(&self) -> Result<ClockSpec> {
        ClockSpec::new(self.extent, self.duration, self.stability)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GatedSection {
    pub n_units: usize,
    pub delta_r0: f64,
    pub t0: f64,
    pub sigma_t: f64,
    pub sign: SignConvention,
    pub t_min: f64,
    pub t_max: f64,
    pub n_t: usize,
    /// Adds a path-shift column for this interferometer baseline.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<f64>,
    /// Adds a strain column for this arm length.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
}

impl Default for GatedSection {
    fn default() -> Self {
        Self {
            n_units: 10,
            delta_r0: 1e-36,
            t0: 0.5,
            sigma_t: 0.1,
            sign: SignConvention::DipNegative,
            t_min: 0.0,
            t_max: 1.0,
            n_t: 1001,
            baseline: None,
            length: None,
        }
    }
}

impl GatedSection {
    pub fn spec(&self) -> Result<GatedPulseSpec> {
        GatedPulseSpec::new(self.n_units, self.delta_r0, self.t0, self.sigma_t)
    }

    pub fn times(&self) -> Result<Vec<f64>> {
        Ok(Grid1D::new(self.t_min, self.t_max, self.n_t)?.coords())
    }
}

impl SweepSection {
    pub fn build_model(&self, constants: PhysicalConstants) -> Result<SweepModel> {
        let mut model = SweepModel::with_defaults(self.model, constants);
        if let Some(n) = &self.noise {
            match &mut model {
                SweepModel::SnrParametric { noise, .. } | SweepModel::SnrNormalized { noise, .. } => {
                    *noise = Some(n.table());
                }
                _ => {
                    return Err(schema(
                        "sweep.noise",
                        format!("noise floors only apply to SNR models, not {}", model.id()),
                    ))
                }
            }
        }
        for (k, v) in &self.fixed {
            model.set(k, *v).map_err(|_| {
                schema(
                    &format!("sweep.fixed.{k}"),
                    format!("unknown parameter of {}", model.id()),
                )
            })?;
        }
        Ok(model)
    }
}

/// A validated config plus the dotted keys that were filled by defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedConfig {
    pub config: RunConfig,
    pub defaulted: Vec<String>,
}

fn schema(key: &str, message: impl Into<String>) -> Error {
    Error::ConfigSchema {
        key: key.to_string(),
        message: message.into(),
    }
}

/// Re-labels a domain validation error under config key `prefix`.
fn under(prefix: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Validation { what, reason } => schema(prefix, format!("{what}: {reason}")),
        other => other,
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Dotted key at byte `offset`: the enclosing table header plus the key on
/// that line.
fn key_at(text: &str, offset: usize) -> Option<String> {
    let offset = offset.min(text.len());
    let start = text[..offset].rfind('\n').map_or(0, |i| i + 1);
    let line = text[start..].lines().next().unwrap_or("");
    let key = line
        .split_once('=')
        .map(|(k, _)| k.trim().trim_matches('"').to_string());
    let table = text[..start]
        .lines()
        .rev()
        .map(str::trim)
        .find(|l| l.starts_with('['))
        .map(|l| l.trim_matches(|c| c == '[' || c == ']').trim().to_string());
    match (table, key) {
        (Some(t), Some(k)) => Some(format!("{t}.{k}")),
        (None, Some(k)) => Some(k),
        (Some(t), None) => Some(t),
        (None, None) => None,
    }
}

fn between<'a>(msg: &'a str, open: &str) -> Option<&'a str> {
    let rest = &msg[msg.find(open)? + open.len()..];
    Some(&rest[..rest.find('`')?])
}

fn schema_error(text: &str, err: &toml::de::Error) -> Error {
    let msg = err.message().trim().to_string();
    let located = err.span().and_then(|s| key_at(text, s.start));
    let key = if let Some(name) = between(&msg, "unknown field `") {
        match located.as_deref().and_then(|k| k.rsplit_once('.')) {
            Some((table, _)) => format!("{table}.{name}"),
            None => name.to_string(),
        }
    } else if let Some(name) = between(&msg, "missing field `") {
        match err.span().and_then(|s| key_at(text, s.start)) {
            Some(t) if !t.contains('.') && text.contains(&format!("[{t}")) => format!("{t}.{name}"),
            _ => name.to_string(),
        }
    } else {
        located.unwrap_or_else(|| "<root>".into())
    };
    schema(&key, msg)
}

pub fn parse_config_str(text: &str) -> Result<ParsedConfig> {
    parse_config_with(text, &toml::Table::new())
}

/// Parses `text`, then lets top-level `overrides` replace its keys before
/// validation (used for command-line flags).
pub fn parse_config_with(text: &str, overrides: &toml::Table) -> Result<ParsedConfig> {
    let mut raw: toml::Table = text.parse().map_err(|e: toml::de::Error| {
        let (line, column) = e.span().map_or((0, 0), |s| line_col(text, s.start));
        Error::ConfigParse {
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })?;
    let mut config: RunConfig = toml::from_str(text).map_err(|e| schema_error(text, &e))?;
    if !overrides.is_empty() {
        for (k, v) in overrides {
            raw.insert(k.clone(), v.clone());
        }
        config = toml::Value::Table(raw.clone())
            .try_into()
            .map_err(|e: toml::de::Error| schema("<command line>", e.message().trim().to_string()))?;
    }
    config.resolve()?;
    let resolved = toml::Table::try_from(&config).map_err(|e| schema("<root>", e.to_string()))?;
    let mut defaulted = Vec::new();
    diff_keys(&raw, &resolved, "", &mut defaulted);
    defaulted.retain(|k| k != "metadata" && !k.starts_with("metadata."));
    Ok(ParsedConfig { config, defaulted })
}

pub fn parse_config(path: &Path) -> Result<ParsedConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_str(&text)
}

fn diff_keys(raw: &toml::Table, resolved: &toml::Table, prefix: &str, out: &mut Vec<String>) {
    for (k, v) in resolved {
        let path = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match (raw.get(k), v) {
            (None, _) => out.push(path),
            (Some(toml::Value::Table(r)), toml::Value::Table(t)) => diff_keys(r, t, &path, out),
            (Some(toml::Value::Array(r)), toml::Value::Array(a)) => {
                for (i, (x, y)) in r.iter().zip(a).enumerate() {
                    if let (toml::Value::Table(x), toml::Value::Table(y)) = (x, y) {
                        diff_keys(x, y, &format!("{path}[{i}]"), out);
                    }
                }
            }
            _ => {}
        }
    }
}

fn check_label(key: &str, label: &str, seen: &mut Vec<String>) -> Result<()> {
    if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return Err(schema(
            key,
            format!("label must be non-empty [A-Za-z0-9_-] (got `{label}`)"),
        ));
    }
    if seen.iter().any(|s| s == label) {
        return Err(schema(key, format!("duplicate label `{label}`")));
    }
    seen.push(label.to_string());
    Ok(())
}

impl RunConfig {
    pub fn constants(&self) -> PhysicalConstants {
        PhysicalConstants::for_mode(self.units)
    }

    /// Fills derived defaults and validates the section for `command`.
    pub fn resolve(&mut self) -> Result<()> {
        let own = self.command.section();
        let present = [
            ("sweep", self.sweep.is_some()),
            ("profile", self.profile.is_some()),
            ("qix", self.qix.is_some()),
            ("observables", self.observables.is_some()),
            ("gated", self.gated.is_some()),
        ];
        for (name, is_set) in present {
            if is_set && name != own {
                return Err(schema(
                    name,
                    format!("section not used by command {}", self.command.id()),
                ));
            }
        }
        if self.formats.is_empty() {
            return Err(schema("formats", "at least one output format is required"));
        }
        let constants = self.constants();
        match self.command {
            Command::SnrSweep => {
                let s = self
                    .sweep
                    .as_mut()
                    .ok_or_else(|| schema("sweep", "snr-sweep needs a [sweep] section"))?;
                resolve_sweep(s, constants)
            }
            Command::CurvatureProfile => {
                let p = self
                    .profile
                    .as_mut()
                    .ok_or_else(|| schema("profile", "curvature-profile needs a [profile] section"))?;
                resolve_profile(p, self.seed)
            }
            Command::QixSim => {
                let q = self.qix.get_or_insert_with(QixSection::default);
                q.chain(constants).map_err(under("qix"))?;
                q.map(constants).map_err(under("qix"))?;
                if !(0.0..0.5).contains(&q.edge_fraction) {
                    return Err(schema("qix.edge_fraction", "must be in [0, 0.5)"));
                }
                q.resolve_grid(constants).map_err(under("qix"))?;
                q.grid().map_err(under("qix"))?;
                Ok(())
            }
            Command::Observables => {
                let o = self.observables.get_or_insert_with(ObservablesSection::default);
                crate::error::ensure_finite("delta_r", o.delta_r).map_err(under("observables.delta_r"))?;
                ensure_positive("length", o.length).map_err(under("observables.length"))?;
                if !(o.n_units >= 0.0 && o.n_units.is_finite()) {
                    return Err(schema("observables.n_units", "must be >= 0"));
                }
                o.interferometer.build().map_err(under("observables.interferometer"))?;
                o.clock.build().map_err(under("observables.clock"))?;
                if let Some(p) = &o.platform {
                    p.validate().map_err(under("observables.platform"))?;
                }
                Ok(())
            }
            Command::GatedPulse => {
                let g = self.gated.get_or_insert_with(GatedSection::default);
                g.spec().map_err(under("gated"))?;
                g.times().map_err(under("gated"))?;
                for (k, v) in [("gated.baseline", g.baseline), ("gated.length", g.length)] {
                    if let Some(v) = v {
                        ensure_positive(k, v).map_err(under(k))?;
                    }
                }
                Ok(())
            }
        }
    }
}

fn resolve_sweep(s: &mut SweepSection, constants: PhysicalConstants) -> Result<()> {
    let mut model = s.build_model(constants)?;
    if s.axes.is_empty() || s.axes.len() > 2 {
        return Err(schema(
            "sweep.axes",
            format!("needs 1 or 2 axes (got {})", s.axes.len()),
        ));
    }
    for (i, a) in s.axes.iter().enumerate() {
        let key = format!("sweep.axes[{i}]");
        if model.get(&a.param).is_none() {
            return Err(schema(
                &format!("{key}.param"),
                format!(
                    "`{}` is not a parameter of {} ({:?})",
                    a.param,
                    model.id(),
                    model.param_names()
                ),
            ));
        }
        a.validate().map_err(under(&key))?;
    }
    if s.axes.len() == 2 && s.axes[0].param == s.axes[1].param {
        return Err(schema("sweep.axes", "both axes sweep the same parameter"));
    }
    if let Some(n) = &s.noise {
        n.table().validate().map_err(under("sweep.noise"))?;
    }
    for &l in &s.contour_levels {
        if !l.is_finite() || (s.contour_scale == Scale::Log10 && l <= 0.0) {
            return Err(schema(
                "sweep.contour_levels",
                format!("level {l} is not usable on a {:?} scale", s.contour_scale),
            ));
        }
    }
    if !s.contour_levels.is_empty() && s.axes.len() != 2 {
        return Err(schema("sweep.contour_levels", "contours need a 2D sweep"));
    }
    s.fixed = model.params().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    // Range check with the axes at their lower ends.
    for a in &s.axes {
        model.set(&a.param, a.min)?;
    }
    model.evaluate().map_err(|e| match e {
        Error::Validation { what, reason } => {
            let key = if s.fixed.contains_key(&what) {
                format!("sweep.fixed.{what}")
            } else {
                "sweep.fixed".into()
            };
            schema(&key, format!("{what} {reason}"))
        }
        other => other,
    })?;
    Ok(())
}

fn resolve_profile(p: &mut ProfileSection, seed: u64) -> Result<()> {
    if p.arrays.is_empty() && p.interference.is_empty() {
        return Err(schema(
            "profile",
            "needs at least one [[profile.arrays]] or [[profile.interference]] source",
        ));
    }
    ensure_positive("calibration", p.calibration).map_err(under("profile.calibration"))?;
    crate::error::ensure_finite("t", p.t).map_err(under("profile.t"))?;
    let grid = Grid1D::new(p.x_min, p.x_max, p.n_x).map_err(under("profile"))?;
    let mut seen = Vec::new();
    for (i, a) in p.arrays.iter().enumerate() {
        let key = format!("profile.arrays[{i}]");
        check_label(&format!("{key}.label"), &a.label, &mut seen)?;
        let cfg = a.build(seed).map_err(under(&key))?;
        crate::stress_energy::sample_array_t00(&cfg, &grid, p.t).map_err(under(&key))?;
    }
    for (i, s) in p.interference.iter().enumerate() {
        let key = format!("profile.interference[{i}]");
        check_label(&format!("{key}.label"), &s.label, &mut seen)?;
        let cfg = s.build().map_err(under(&key))?;
        crate::stress_energy::interference_t00(&cfg, &grid).map_err(under(&key))?;
    }
    Ok(())
}
