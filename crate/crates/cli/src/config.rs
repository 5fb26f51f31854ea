//! Resolved run configuration: defaults, then `--config` JSON, then explicit flags.

use std::path::Path;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use iwatsuka::hull::MeasureNormalization;
use iwatsuka::invariants::{BicSpec, TraceSpec};
use iwatsuka::model::{FieldSpec, IwatsukaField, Phase, SlopeSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Butterfly,
    Spectrum,
    Hull,
    Chern,
    Conductance,
    VerifyBic,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Butterfly => "butterfly",
            Command::Spectrum => "spectrum",
            Command::Hull => "hull",
            Command::Chern => "chern",
            Command::Conductance => "conductance",
            Command::VerifyBic => "verify-bic",
        }
    }
}

/// Everything a run depends on. Serialized verbatim into every output header.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub field: FieldSpec,
    /// Half width `M` of square windows (`spectrum`, real-space Chern).
    pub window: i64,
    /// Bloch mesh for band edges.
    pub k_grid: usize,
    /// Plaquette mesh for momentum-space Chern numbers.
    pub chern_grid: usize,
    /// Fermi level; overrides `gap_index`.
    pub mu: Option<f64>,
    /// Common gap counted from the bottom; the widest gap when absent.
    pub gap_index: Option<usize>,
    pub slab_length: f64,
    /// Conductance sweep over slab lengths; `[slab_length]` when empty.
    pub lengths: Vec<f64>,
    pub half_normal: f64,
    pub normal_cutoff: f64,
    pub taper: f64,
    pub end_margin: f64,
    pub switch_fraction: f64,
    pub convention: MeasureNormalization,
    pub qmax: i64,
    /// Momentum samples per direction for `butterfly`.
    pub k_points: usize,
    pub m_max: i64,
    /// Extra fluxes for `chern`; the two bulk values are always included.
    pub fluxes: Vec<Phase>,
    /// Also evaluate the real-space Chern number on the square window.
    pub realspace: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let bic = BicSpec::default();
        Self {
            field: FieldSpec {
                slope: SlopeSpec::Rational { p: 1, q: 2 },
                b_plus: Phase::turns(1, 3),
                b_minus: Phase::turns(2, 3),
                perturbation: Vec::new(),
            },
            window: 10,
            k_grid: bic.band_grid,
            chern_grid: bic.chern_grid,
            mu: None,
            gap_index: None,
            slab_length: bic.trace.length,
            lengths: Vec::new(),
            half_normal: bic.half_normal,
            normal_cutoff: bic.trace.normal_cutoff,
            taper: bic.trace.taper,
            end_margin: bic.trace.end_margin,
            switch_fraction: bic.switch_fraction,
            convention: MeasureNormalization::TangentialSlab,
            qmax: 20,
            k_points: 4,
            m_max: 8,
            fluxes: Vec::new(),
            realspace: false,
        }
    }
}

/// Flags shared by every subcommand; each one overrides the config file.
#[derive(Clone, Debug, Default, Args)]
pub struct Overrides {
    /// JSON file whose fields override the defaults.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    /// Output directory; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// rational:p,q | quadratic:a,b,c,d | float:x | +inf | -inf
    #[arg(long, global = true)]
    pub slope: Option<SlopeSpec>,
    /// Flux above the interface, e.g. 2pi*1/3 or a value in radians.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub bplus: Option<Phase>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub bminus: Option<Phase>,
    /// Plaquette perturbation n1,n2,delta_b (repeatable).
    #[arg(long = "perturb", global = true, allow_hyphen_values = true)]
    pub perturb: Vec<String>,
    #[arg(long, global = true)]
    pub window: Option<i64>,
    #[arg(long, global = true)]
    pub k_grid: Option<usize>,
    #[arg(long, global = true)]
    pub chern_grid: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, global = true)]
    pub gap_index: Option<usize>,
    #[arg(long = "L", alias = "slab-length", global = true)]
    pub slab_length: Option<f64>,
    /// Comma-separated slab lengths for `conductance`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub lengths: Vec<f64>,
    #[arg(long, global = true)]
    pub half_normal: Option<f64>,
    #[arg(long, global = true)]
    pub normal_cutoff: Option<f64>,
    #[arg(long, global = true)]
    pub taper: Option<f64>,
    #[arg(long, global = true)]
    pub end_margin: Option<f64>,
    #[arg(long, global = true)]
    pub switch_fraction: Option<f64>,
    /// tangential-slab | unit-x
    #[arg(long, global = true)]
    pub convention: Option<String>,
    #[arg(long, global = true)]
    pub qmax: Option<i64>,
    #[arg(long, global = true)]
    pub k_points: Option<usize>,
    #[arg(long = "Mmax", alias = "m-max", global = true)]
    pub m_max: Option<i64>,
    /// Comma-separated extra fluxes for `chern`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub fluxes: Vec<Phase>,
    #[arg(long, global = true)]
    pub realspace: bool,
}

/// A rejected configuration, reported with the offending field.
#[derive(Debug)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(field: &str, message: impl Into<String>) -> Self {
        Self { field: field.to_string(), message: message.into() }
    }
}

fn parse_perturbation(text: &str) -> Result<(i64, i64, Phase), ConfigError> {
    let bad = || ConfigError::new("perturbation", format!("expected n1,n2,delta_b, got {text:?}"));
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [n1, n2, db] = parts[..] else { return Err(bad()) };
    Ok((n1.parse().map_err(|_| bad())?, n2.parse().map_err(|_| bad())?, db.parse().map_err(|_| bad())?))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| {
            ConfigError::new("config", format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()))
        })
    }

    pub fn resolve(o: &Overrides) -> Result<Self, ConfigError> {
        let mut c = match &o.config {
            Some(path) => Self::load(path)?,
            None => Self::default(),
        };
        macro_rules! take {
            ($($name:ident),*) => { $(if let Some(v) = o.$name.clone() { c.$name = v; })* };
        }
        take!(window, k_grid, chern_grid, slab_length, half_normal, normal_cutoff, taper, end_margin, switch_fraction);
        take!(qmax, k_points, m_max);
        if let Some(s) = &o.slope {
            c.field.slope = s.clone();
        }
        if let Some(b) = o.bplus {
            c.field.b_plus = b;
        }
        if let Some(b) = o.bminus {
            c.field.b_minus = b;
        }
        if !o.perturb.is_empty() {
            c.field.perturbation = o.perturb.iter().map(|t| parse_perturbation(t)).collect::<Result<_, _>>()?;
        }
        if o.mu.is_some() {
            c.mu = o.mu;
        }
        if o.gap_index.is_some() {
            c.gap_index = o.gap_index;
        }
        if !o.lengths.is_empty() {
            c.lengths = o.lengths.clone();
        }
        if !o.fluxes.is_empty() {
            c.fluxes = o.fluxes.clone();
        }
        if let Some(conv) = &o.convention {
            c.convention = serde_json::from_value(serde_json::Value::String(conv.clone()))
                .map_err(|_| ConfigError::new("convention", format!("expected tangential-slab or unit-x, got {conv:?}")))?;
        }
        c.realspace |= o.realspace;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(ConfigError::new(name, format!("must be positive, got {v}")))
            }
        };
        self.field.slope.resolve().map_err(|e| ConfigError::new("field.slope", e.to_string()))?;
        if !(0..=32).contains(&self.window) {
            return Err(ConfigError::new("window", format!("half width must lie in 0..=32, got {}", self.window)));
        }
        if self.k_grid < 4 || self.chern_grid < 4 {
            return Err(ConfigError::new("k_grid", "momentum meshes need at least 4 points per direction"));
        }
        positive("slab_length", self.slab_length)?;
        for &l in &self.lengths {
            positive("lengths", l)?;
        }
        positive("half_normal", self.half_normal)?;
        positive("normal_cutoff", self.normal_cutoff)?;
        positive("end_margin", self.end_margin)?;
        if self.taper < 0.0 {
            return Err(ConfigError::new("taper", "must be nonnegative"));
        }
        if !(self.switch_fraction > 0.0 && self.switch_fraction < 1.0) {
            return Err(ConfigError::new("switch_fraction", "must lie in (0, 1)"));
        }
        if !(1..=60).contains(&self.qmax) {
            return Err(ConfigError::new("qmax", "must lie in 1..=60"));
        }
        if self.k_points == 0 {
            return Err(ConfigError::new("k_points", "must be positive"));
        }
        if !(1..=40).contains(&self.m_max) {
            return Err(ConfigError::new("m_max", "must lie in 1..=40"));
        }
        if let Some(mu) = self.mu {
            if !mu.is_finite() {
                return Err(ConfigError::new("mu", "must be finite"));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> iwatsuka::Result<IwatsukaField> {
        self.field.resolve()
    }

    pub fn trace(&self, length: f64) -> TraceSpec {
        TraceSpec {
            length,
            taper: self.taper,
            normal_cutoff: self.normal_cutoff,
            end_margin: self.end_margin,
            convention: self.convention,
            ..TraceSpec::new(length)
        }
    }

    pub fn bic_spec(&self, length: f64) -> BicSpec {
        BicSpec {
            trace: self.trace(length),
            half_normal: self.half_normal,
            band_grid: self.k_grid,
            chern_grid: self.chern_grid,
            switch_fraction: self.switch_fraction,
        }
    }
}
