//! Scenario configuration, read from and written to TOML.

use std::fmt;
use std::path::PathBuf;

use cmspin::analysis::DEFAULT_ERROR_EPS;
use cmspin::{FlowParams, InitialData};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Spectrum,
    Simulate,
    Converge,
    Viscosity,
    Errorsweep,
    Weaktest,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scenario::Spectrum => "spectrum",
            Scenario::Simulate => "simulate",
            Scenario::Converge => "converge",
            Scenario::Viscosity => "viscosity",
            Scenario::Errorsweep => "errorsweep",
            Scenario::Weaktest => "weaktest",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A single lattice size or a list of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sizes {
    One(usize),
    Many(Vec<usize>),
}

impl Sizes {
    pub fn to_vec(&self) -> Vec<usize> {
        match self {
            Sizes::One(n) => vec![*n],
            Sizes::Many(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisKnobs {
    /// `eps` of the `H^{-1/2-eps}` error norm.
    pub error_eps: f64,
    /// Final time of sweeps; omitted means the measured horizon (converge)
    /// or `t_max` (other sweeps).
    pub t_end: Option<f64>,
    pub t_max: f64,
    pub n_ref: usize,
    pub snapshots: usize,
    pub cfl: f64,
    /// Viscosities for the `viscosity` scenario; the inviscid run is implicit.
    pub epsilons: Vec<f64>,
}

impl Default for AnalysisKnobs {
    fn default() -> Self {
        Self {
            error_eps: DEFAULT_ERROR_EPS,
            t_end: None,
            t_max: 1.0,
            n_ref: 1025,
            snapshots: 20,
            cfl: 0.5,
            epsilons: vec![1e-1, 1e-2, 1e-3],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: PathBuf,
    pub format: Format,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            format: Format::Csv,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub n: Sizes,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub data: InitialData,
    #[serde(default)]
    pub flow: FlowParams,
    #[serde(default)]
    pub analysis: AnalysisKnobs,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

impl ScenarioConfig {
    /// Defaults used when no config file is given.
    pub fn default_for(scenario: Scenario) -> Self {
        let mut c = ScenarioConfig {
            scenario,
            n: Sizes::One(31),
            seed: None,
            data: InitialData::smooth(),
            flow: FlowParams {
                record_every: 100,
                ..FlowParams::default()
            },
            analysis: AnalysisKnobs::default(),
            output: OutputSpec::default(),
        };
        match scenario {
            Scenario::Spectrum => c.n = Sizes::One(5),
            Scenario::Simulate => {}
            Scenario::Converge => c.n = Sizes::Many(vec![33, 65, 129, 257]),
            Scenario::Viscosity => c.n = Sizes::One(63),
            Scenario::Errorsweep => {
                c.n = Sizes::Many(vec![33, 65, 129, 257]);
                c.data = InitialData::finite_regularity();
            }
            Scenario::Weaktest => {
                c.n = Sizes::Many(vec![33, 65, 129]);
                c.flow.t_end = 0.5;
                c.flow.record_every = 10;
            }
        }
        c
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| invalid(format!("config parse error: {e}")))
    }

    pub fn emit(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    /// SHA-256 of the config with the output directory blanked, so identical
    /// runs written to different places carry the same hash.
    pub fn content_hash(&self) -> String {
        let mut c = self.clone();
        c.output.dir = PathBuf::new();
        let digest = Sha256::digest(c.emit().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Applies `--seed` to the random data families.
    pub fn apply_seed(&mut self, seed: u64) {
        self.seed = Some(seed);
        match &mut self.data {
            InitialData::RandomBandLimited { seed: s, .. }
            | InitialData::RandomSpins { seed: s } => *s = seed,
            _ => {}
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let sizes = self.n.to_vec();
        if sizes.is_empty() {
            return Err(invalid("`n` must list at least one lattice size"));
        }
        if let Some(bad) = sizes.iter().find(|&&n| n < 3 || n % 2 == 0) {
            return Err(invalid(format!("every N must be odd and >= 3, got {bad}")));
        }
        self.data
            .validate()
            .map_err(|e| invalid(format!("[data]: {e}")))?;
        let single = |what: &str| -> Result<usize, ConfigError> {
            match sizes.as_slice() {
                [n] => Ok(*n),
                _ => Err(invalid(format!(
                    "scenario `{what}` takes a single N, got {sizes:?}"
                ))),
            }
        };
        let a = &self.analysis;
        match self.scenario {
            Scenario::Spectrum => {}
            Scenario::Simulate => {
                let n = single("simulate")?;
                self.flow
                    .validate(n)
                    .map_err(|e| invalid(format!("[flow]: {e}")))?;
            }
            Scenario::Converge => {
                if sizes.len() < 2 {
                    return Err(invalid("scenario `converge` needs at least two N values"));
                }
                let max = *sizes.iter().max().expect("nonempty");
                if a.n_ref <= 2 * max {
                    return Err(invalid(format!(
                        "[analysis] n_ref = {} must exceed 2 * max(N) = {}",
                        a.n_ref,
                        2 * max
                    )));
                }
                if a.n_ref % 2 == 0 {
                    return Err(invalid(format!(
                        "[analysis] n_ref must be odd, got {}",
                        a.n_ref
                    )));
                }
            }
            Scenario::Viscosity => {
                single("viscosity")?;
                if a.epsilons.is_empty() || a.epsilons.iter().any(|e| !(*e > 0.0)) {
                    return Err(invalid(
                        "[analysis] epsilons must be a nonempty list of positive values",
                    ));
                }
            }
            Scenario::Errorsweep => {
                if !(a.error_eps > 0.0) {
                    return Err(invalid("[analysis] error_eps must be > 0"));
                }
            }
            Scenario::Weaktest => {
                for &n in &sizes {
                    self.flow
                        .validate(n)
                        .map_err(|e| invalid(format!("[flow] at N = {n}: {e}")))?;
                }
            }
        }
        if matches!(
            self.scenario,
            Scenario::Converge | Scenario::Viscosity | Scenario::Errorsweep
        ) {
            if a.snapshots == 0 {
                return Err(invalid("[analysis] snapshots must be >= 1"));
            }
            if !(a.cfl > 0.0 && a.cfl <= 1.0) {
                return Err(invalid("[analysis] cfl must lie in (0, 1]"));
            }
        }
        Ok(())
    }
}
