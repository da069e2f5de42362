//! Run configuration: a strict JSON schema describing the grid, the
//! kernel, and per-command parameters. Unknown keys are rejected so that
//! typos fail loudly, and the resolved configuration is echoed verbatim
//! into `run.json` next to the outputs.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use boxkernel::io::{fmt_complex, parse_complex};
use boxkernel::{CatalogKernel, Complex64, Grid, GridKernel, KernelTag};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Errors raised while loading or validating a configuration.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported configuration version {got} (this build reads version 1)")]
    Version { got: u32 },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// A complex scalar that deserializes from a JSON number or a `re+imj`
/// string and serializes back as a string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffValue(pub Complex64);

impl<'de> Deserialize<'de> for CoeffValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<CoeffValue, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Number(x) => Ok(CoeffValue(Complex64::new(x, 0.0))),
            Raw::Text(s) => parse_complex(&s)
                .map(CoeffValue)
                .map_err(|e| DeError::custom(e.to_string())),
        }
    }
}

impl Serialize for CoeffValue {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&fmt_complex(self.0))
    }
}

impl fmt::Display for CoeffValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_complex(self.0))
    }
}

/// Quadrature grid parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Default for GridConfig {
    fn default() -> GridConfig {
        GridConfig {
            lo: 0.0,
            hi: 1.0,
            n: 256,
        }
    }
}

/// Kernel selection: a catalog name, its parameters, and the tag the
/// samples are validated against.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelConfig {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default = "default_tag")]
    pub tag: String,
}

fn default_tag() -> String {
    "graphon".into()
}

impl Default for KernelConfig {
    fn default() -> KernelConfig {
        KernelConfig {
            name: "min".into(),
            params: BTreeMap::new(),
            tag: default_tag(),
        }
    }
}

/// Parameters for the `spectrum` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    /// Number of leading modes to keep and export.
    pub modes: usize,
}

impl Default for SpectrumConfig {
    fn default() -> SpectrumConfig {
        SpectrumConfig { modes: 8 }
    }
}

/// Parameters for the `filter` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterConfig {
    /// Polynomial coefficients, lowest order first.
    pub coefficients: Vec<CoeffValue>,
    /// Optional path to an input signal CSV; a seeded random signal is
    /// used when absent.
    #[serde(default)]
    pub signal: Option<String>,
    /// Relative cutoff for the effective rank of the point-wise route.
    #[serde(default)]
    pub rank_tol: Option<f64>,
}

impl Default for FilterConfig {
    fn default() -> FilterConfig {
        FilterConfig {
            coefficients: vec![
                CoeffValue(Complex64::new(0.0, 0.0)),
                CoeffValue(Complex64::new(1.0, 0.0)),
            ],
            signal: None,
            rank_tol: None,
        }
    }
}

/// Parameters for the `fourier` command.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierConfig {
    /// Optional path to an input signal CSV; a seeded random signal is
    /// used when absent.
    #[serde(default)]
    pub signal: Option<String>,
    /// Node index whose kernel section is analyzed alongside the signal.
    #[serde(default)]
    pub center_index: Option<usize>,
}

/// Parameters for the `graphon` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphonConfig {
    /// Composition order r of the induced kernel of the r-fold box power.
    pub box_order: usize,
    /// Random probes certifying the two-stage diffusion identity.
    pub digraphon_trials: usize,
}

impl Default for GraphonConfig {
    fn default() -> GraphonConfig {
        GraphonConfig {
            box_order: 1,
            digraphon_trials: 5,
        }
    }
}

/// Parameters for the `localize` command.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalizeConfig {
    /// Expansion centers as node indices; evenly spread defaults are
    /// chosen when empty.
    #[serde(default)]
    pub center_indices: Vec<usize>,
    /// Expansion coefficients (band-report mode); all ones when empty
    /// and no targets are given.
    #[serde(default)]
    pub coefficients: Vec<CoeffValue>,
    /// Bandwidth separating the constrained low band.
    #[serde(default)]
    pub bandwidth: Option<usize>,
    /// Low-band targets (design mode): when present, coefficients are
    /// designed instead of read.
    #[serde(default)]
    pub targets: Vec<CoeffValue>,
}

/// Parameters for the `fit` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    /// Number of leading eigenvalues used as fitting abscissae.
    pub q: usize,
    /// Center of the Gaussian bump target response.
    pub sigma_c: f64,
    /// Width parameter of the bump target (denominator of the exponent).
    pub gamma: f64,
    /// Ridge regularization weight.
    pub lambda_reg: f64,
    /// Width of the Gaussian design kernel over the spectral axis.
    pub design_width: f64,
}

impl Default for FitConfig {
    fn default() -> FitConfig {
        FitConfig {
            q: 20,
            sigma_c: 1e-3,
            gamma: 1e-5,
            lambda_reg: 1e-8,
            design_width: 2e-3,
        }
    }
}

/// The complete run configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Schema version; this build reads version 1.
    pub version: u32,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub kernel: KernelConfig,
    /// Seed for every random draw the run makes.
    #[serde(default)]
    pub seed: u64,
    /// Output directory, overridable with `--out`.
    #[serde(default = "default_output_dir")]
    pub output_dir: String,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
    #[serde(default)]
    pub filter: FilterConfig,
    #[serde(default)]
    pub fourier: FourierConfig,
    #[serde(default)]
    pub graphon: GraphonConfig,
    #[serde(default)]
    pub localize: LocalizeConfig,
    #[serde(default)]
    pub fit: FitConfig,
}

fn default_output_dir() -> String {
    "out".into()
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            version: 1,
            grid: GridConfig::default(),
            kernel: KernelConfig::default(),
            seed: 0,
            output_dir: default_output_dir(),
            spectrum: SpectrumConfig::default(),
            filter: FilterConfig::default(),
            fourier: FourierConfig::default(),
            graphon: GraphonConfig::default(),
            localize: LocalizeConfig::default(),
            fit: FitConfig::default(),
        }
    }
}

impl RunConfig {
    /// Loads and validates a configuration file.
    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        let config: RunConfig = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    /// Structural checks beyond what the schema enforces.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.version != 1 {
            return Err(ConfigError::Version { got: self.version });
        }
        self.parse_tag()?;
        if self.spectrum.modes == 0 {
            return Err(ConfigError::Invalid(
                "spectrum.modes must be at least 1".into(),
            ));
        }
        if self.graphon.box_order == 0 {
            return Err(ConfigError::Invalid(
                "graphon.box_order must be at least 1".into(),
            ));
        }
        if self.graphon.digraphon_trials == 0 {
            return Err(ConfigError::Invalid(
                "graphon.digraphon_trials must be at least 1".into(),
            ));
        }
        if self.fit.q == 0 {
            return Err(ConfigError::Invalid("fit.q must be at least 1".into()));
        }
        Ok(())
    }

    /// The kernel tag named by the configuration.
    pub fn parse_tag(&self) -> Result<KernelTag, ConfigError> {
        match self.kernel.tag.as_str() {
            "symbol" => Ok(KernelTag::Symbol),
            "kernel" => Ok(KernelTag::Kernel),
            "graphon" => Ok(KernelTag::Graphon),
            other => Err(ConfigError::Invalid(format!(
                "kernel.tag must be \"symbol\", \"kernel\", or \"graphon\", got {other:?}"
            ))),
        }
    }

    /// Builds the configured grid.
    pub fn build_grid(&self) -> boxkernel::Result<Arc<Grid>> {
        Grid::new(self.grid.lo, self.grid.hi, self.grid.n)
    }

    /// Samples the configured kernel on the configured grid.
    pub fn build_kernel(&self, grid: &Arc<Grid>) -> Result<GridKernel, ConfigError> {
        let tag = self.parse_tag()?;
        let rule = CatalogKernel::parse(&self.kernel.name, &self.kernel.params)
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        GridKernel::sample(grid, &rule, tag).map_err(|e| ConfigError::Invalid(e.to_string()))
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let config = RunConfig::default();
        config.validate().unwrap();
        let grid = config.build_grid().unwrap();
        assert_eq!(grid.len(), 256);
        config.build_kernel(&grid).unwrap();
    }

    #[test]
    fn coefficients_accept_numbers_and_strings() {
        let json = r#"{"version":1,"filter":{"coefficients":[1, "0.5-2j", "3j"]}}"#;
        let config: RunConfig = serde_json::from_str(json).unwrap();
        let coeffs = &config.filter.coefficients;
        assert_eq!(coeffs[0].0, Complex64::new(1.0, 0.0));
        assert_eq!(coeffs[1].0, Complex64::new(0.5, -2.0));
        assert_eq!(coeffs[2].0, Complex64::new(0.0, 3.0));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let json = r#"{"version":1,"grdi":{"lo":0,"hi":1,"n":4}}"#;
        assert!(serde_json::from_str::<RunConfig>(json).is_err());
        let nested = r#"{"version":1,"grid":{"lo":0,"hi":1,"n":4,"step":0.1}}"#;
        assert!(serde_json::from_str::<RunConfig>(nested).is_err());
    }

    #[test]
    fn wrong_version_is_rejected() {
        let json = r#"{"version":2}"#;
        let config: RunConfig = serde_json::from_str(json).unwrap();
        assert!(matches!(
            config.validate(),
            Err(ConfigError::Version { got: 2 })
        ));
    }

    #[test]
    fn config_round_trips_through_json() {
        let config = RunConfig::default();
        let text = serde_json::to_string_pretty(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&back).unwrap();
        assert_eq!(text, again);
    }

    #[test]
    fn bad_tag_is_reported() {
        let json = r#"{"version":1,"kernel":{"name":"min","tag":"spectral"}}"#;
        let config: RunConfig = serde_json::from_str(json).unwrap();
        assert!(config.validate().is_err());
    }
}
