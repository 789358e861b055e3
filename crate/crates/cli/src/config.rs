//! Run configuration: command-line flags over a JSON config file over defaults.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use relspec::quad::QuadratureSpec;
use relspec::thermo::ThermalState;
use relspec::{OnePointModel, SpectralMeasure, TwoPointModel};
use serde::Deserialize;

/// Bad input: unknown model, missing or out-of-range parameters, unreadable
/// config. Mapped to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    OnePoint,
    TwoPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Operator pair
    #[arg(long, value_enum, global = true)]
    pub model: Option<ModelKind>,
    /// Coupling of the one-point model
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// First coupling of the two-point model
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha0: Option<f64>,
    /// Second coupling of the two-point model
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha1: Option<f64>,
    /// Separation of the two centres
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Inverse temperature (circumference of the thermal circle)
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Renormalization length
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub ell: Option<f64>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Absolute quadrature tolerance
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub abs_tol: Option<f64>,
    /// Relative quadrature tolerance
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rel_tol: Option<f64>,
    /// Worker threads for sweeps
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// JSON file with defaults for any of the options above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Contents of a `--config` file; keys are the long flag names.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    model: Option<ModelKind>,
    alpha: Option<f64>,
    alpha0: Option<f64>,
    alpha1: Option<f64>,
    a: Option<f64>,
    beta: Option<f64>,
    ell: Option<f64>,
    format: Option<Format>,
    out: Option<PathBuf>,
    #[serde(alias = "abs_tol")]
    abs_tol: Option<f64>,
    #[serde(alias = "rel_tol")]
    rel_tol: Option<f64>,
    jobs: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| usage(format!("invalid config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
pub enum Model {
    One(OnePointModel),
    Two(TwoPointModel),
}

impl Model {
    pub fn measure(&self) -> SpectralMeasure {
        match self {
            Model::One(m) => m.into(),
            Model::Two(m) => m.into(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::One(_) => "one-point",
            Model::Two(_) => "two-point",
        }
    }
}

/// Model parameters as given; the model itself is built on demand so that
/// sweeps over the separation can skip inadmissible points.
#[derive(Debug, Clone, Copy)]
pub struct ModelParams {
    pub kind: ModelKind,
    /// Whether `kind` was chosen explicitly rather than defaulted.
    pub explicit: bool,
    pub alpha: f64,
    pub alpha0: f64,
    pub alpha1: f64,
    pub a: f64,
}

impl ModelParams {
    pub fn build(&self) -> relspec::Result<Model> {
        Ok(match self.kind {
            ModelKind::OnePoint => Model::One(OnePointModel::new(self.alpha)?),
            ModelKind::TwoPoint => Model::Two(TwoPointModel::new(self.alpha0, self.alpha1, self.a)?),
        })
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ModelParams,
    pub thermal: ThermalState,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub spec: QuadratureSpec,
    pub jobs: usize,
}

fn positive(name: &str, x: f64) -> anyhow::Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(usage(format!("--{name} must be positive and finite, got {x}")))
    }
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> anyhow::Result<Self> {
        let file = match &args.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let chosen = args.model.or(file.model);
        let params = ModelParams {
            kind: chosen.unwrap_or(ModelKind::OnePoint),
            explicit: chosen.is_some(),
            alpha: args.alpha.or(file.alpha).unwrap_or(0.25),
            alpha0: args.alpha0.or(file.alpha0).unwrap_or(1.0),
            alpha1: args.alpha1.or(file.alpha1).unwrap_or(1.0),
            a: args.a.or(file.a).unwrap_or(1.0),
        };
        let beta = args.beta.or(file.beta).unwrap_or(1.0);
        let ell = args.ell.or(file.ell).unwrap_or(1.0);
        let thermal = ThermalState::new(beta, ell)?;

        let tight = QuadratureSpec::tight();
        let abs_tol = positive("abs-tol", args.abs_tol.or(file.abs_tol).unwrap_or(tight.abs_tol))?;
        let rel_tol = positive("rel-tol", args.rel_tol.or(file.rel_tol).unwrap_or(tight.rel_tol))?;
        let spec = tight.with_tolerances(abs_tol, rel_tol);

        let jobs = args
            .jobs
            .or(file.jobs)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        Ok(Self {
            params,
            thermal,
            format: args.format.or(file.format).unwrap_or(Format::Csv),
            out: args.out.clone().or(file.out),
            spec,
            jobs,
        })
    }

    pub fn model(&self) -> anyhow::Result<Model> {
        Ok(self.params.build()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn flags_override_config_file() {
        let dir = std::env::temp_dir().join(format!("relspec-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, r#"{{"alpha": 0.5, "beta": 3.0, "abs-tol": 1e-9, "format": "json"}}"#).unwrap();
        let args = CommonArgs {
            alpha: Some(2.0),
            config: Some(path),
            ..CommonArgs::default()
        };
        let cfg = RunConfig::resolve(&args).unwrap();
        assert_eq!(cfg.params.alpha, 2.0);
        assert_eq!(cfg.thermal.beta(), 3.0);
        assert_eq!(cfg.spec.abs_tol, 1e-9);
        assert_eq!(cfg.format, Format::Json);
        assert!(!cfg.params.explicit);
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let dir = std::env::temp_dir().join(format!("relspec-config-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        std::fs::write(&path, r#"{"alhpa": 1.0}"#).unwrap();
        let args = CommonArgs {
            config: Some(path),
            ..CommonArgs::default()
        };
        let err = RunConfig::resolve(&args).unwrap_err();
        assert!(err.downcast_ref::<UsageError>().is_some());
    }

    #[test]
    fn defaults_are_tight_tolerances() {
        let cfg = RunConfig::resolve(&CommonArgs::default()).unwrap();
        assert_eq!(cfg.spec, QuadratureSpec::tight());
        assert_eq!(cfg.params.kind, ModelKind::OnePoint);
    }
}
