//! Run configuration: a TOML file with optional sections, overridden by
//! command-line flags.
//!
//! ```toml
//! model = "GM3"
//!
//! [params]
//! a = 1.0
//! b = 1.0
//! c = 1.0
//! d = 0.5
//!
//! [state]
//! preset = "entangled-11-33"      # or: amplitudes = [[re, im], ...]
//!
//! [strategies]
//! pa = 0.0
//! pa1 = 1.0
//! qb = 0.0
//! qb1 = 1.0
//!
//! [options]
//! grid = 10                       # or "1/10"
//! samples = 1000
//! seed = 2016
//! normalize = false
//! ```

use std::path::Path;

use mw_opinion::{GameParams, MixedStrategy, Model, StateVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::CliError;

/// Seed used when neither the file nor the flags give one.
pub const DEFAULT_SEED: u64 = 2016;

/// Amplitudes must already be this close to unit norm unless
/// normalization is requested explicitly.
pub const INPUT_NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub model: Option<String>,
    #[serde(default)]
    pub params: ParamsSection,
    #[serde(default)]
    pub state: StateSection,
    #[serde(default)]
    pub strategies: StrategiesSection,
    #[serde(default)]
    pub options: OptionsSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub d: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSection {
    pub preset: Option<String>,
    pub amplitudes: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategiesSection {
    pub pa: Option<f64>,
    pub pa1: Option<f64>,
    pub qb: Option<f64>,
    pub qb1: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Divisions(usize),
    Text(String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSection {
    pub grid: Option<GridSpec>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub normalize: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))
    }
}

/// Parses `"10"` or `"1/10"` into a number of grid divisions.
pub fn parse_grid(text: &str) -> Result<usize, CliError> {
    let text = text.trim();
    let digits = text.strip_prefix("1/").unwrap_or(text);
    match digits.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(CliError::Usage(format!(
            "grid resolution {text:?} must be a positive integer N or 1/N"
        ))),
    }
}

/// Where the initial state comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSource {
    /// `basis-ij`, `entangled-11-33`, `uniform` or `random`.
    Preset(String),
    Amplitudes(Vec<[f64; 2]>),
}

/// Flag values; `None` leaves the file (or default) value in place.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub model: Option<String>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub d: Option<f64>,
    pub state: Option<String>,
    pub pa: Option<f64>,
    pub pa1: Option<f64>,
    pub qb: Option<f64>,
    pub qb1: Option<f64>,
    pub grid: Option<String>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub normalize: bool,
}

/// Fully resolved configuration for one command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: Model,
    pub params: GameParams,
    /// Parameters set explicitly by the user.
    pub given_params: Vec<&'static str>,
    pub state: Option<StateSource>,
    pub strategies: StrategiesSection,
    pub grid: usize,
    pub samples: Option<usize>,
    pub seed: u64,
    pub normalize: bool,
}

fn is_preset(text: &str) -> bool {
    matches!(text, "entangled-11-33" | "uniform" | "random") || text.starts_with("basis-")
}

fn load_state_file(path: &Path) -> Result<Vec<[f64; 2]>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read state file {}: {e}", path.display())))?;
    if let Ok(amplitudes) = serde_json::from_str::<Vec<[f64; 2]>>(&text) {
        return Ok(amplitudes);
    }
    let section: StateSection = toml::from_str(&text)
        .map_err(|e| CliError::Config(format!("invalid state file {}: {e}", path.display())))?;
    section.amplitudes.ok_or_else(|| {
        CliError::Config(format!("state file {} has no amplitudes", path.display()))
    })
}

impl RunConfig {
    pub fn resolve(file: FileConfig, flags: Overrides) -> Result<Self, CliError> {
        let model_text = flags
            .model
            .or(file.model)
            .ok_or_else(|| CliError::Usage("missing --model (GM1, GM2 or GM3)".into()))?;
        let model: Model = model_text
            .parse()
            .map_err(|e: mw_opinion::games::GameError| CliError::Usage(e.to_string()))?;

        let mut given_params = Vec::new();
        let mut pick = |name: &'static str, flag: Option<f64>, file: Option<f64>| {
            let value = flag.or(file);
            if value.is_some() {
                given_params.push(name);
            }
            value.unwrap_or(1.0)
        };
        let params = GameParams {
            a: pick("a", flags.a, file.params.a),
            b: pick("b", flags.b, file.params.b),
            c: pick("c", flags.c, file.params.c),
            d: pick("d", flags.d, file.params.d),
        };
        // Surfaces invalid parameters as usage errors before any command runs.
        model
            .build(&params)
            .map_err(|e| CliError::Usage(e.to_string()))?;

        let state = match flags.state {
            Some(text) if is_preset(&text) => Some(StateSource::Preset(text)),
            Some(path) => Some(StateSource::Amplitudes(load_state_file(Path::new(&path))?)),
            None => match (file.state.preset, file.state.amplitudes) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Config(
                        "[state] takes either preset or amplitudes, not both".into(),
                    ))
                }
                (Some(p), None) => Some(StateSource::Preset(p)),
                (None, Some(a)) => Some(StateSource::Amplitudes(a)),
                (None, None) => None,
            },
        };

        let strategies = StrategiesSection {
            pa: flags.pa.or(file.strategies.pa),
            pa1: flags.pa1.or(file.strategies.pa1),
            qb: flags.qb.or(file.strategies.qb),
            qb1: flags.qb1.or(file.strategies.qb1),
        };

        let grid = match (flags.grid, file.options.grid) {
            (Some(text), _) => parse_grid(&text)?,
            (None, Some(GridSpec::Divisions(n))) if n > 0 => n,
            (None, Some(GridSpec::Divisions(_))) => parse_grid("0")?,
            (None, Some(GridSpec::Text(text))) => parse_grid(&text)?,
            (None, None) => mw_opinion::equilibrium::DEFAULT_GRID_RESOLUTION,
        };

        Ok(Self {
            model,
            params,
            given_params,
            state,
            strategies,
            grid,
            samples: flags.samples.or(file.options.samples),
            seed: flags.seed.or(file.options.seed).unwrap_or(DEFAULT_SEED),
            normalize: flags.normalize || file.options.normalize.unwrap_or(false),
        })
    }

    pub fn dim(&self) -> usize {
        self.model.n_strategies()
    }

    /// Explicitly given parameters the chosen model does not use.
    pub fn ignored_params(&self) -> Vec<&'static str> {
        self.model
            .ignored_params()
            .iter()
            .copied()
            .filter(|p| self.given_params.contains(p))
            .collect()
    }

    pub fn initial_state(&self) -> Result<StateVector, CliError> {
        let dim = self.dim();
        let source = self
            .state
            .as_ref()
            .ok_or_else(|| CliError::Usage("missing --state (preset name or file)".into()))?;
        match source {
            StateSource::Preset(name) => preset_state(name, dim, self.seed),
            StateSource::Amplitudes(pairs) => {
                if pairs.len() != dim * dim {
                    return Err(CliError::Config(format!(
                        "{} amplitudes given, {} expected for {}",
                        pairs.len(),
                        dim * dim,
                        self.model
                    )));
                }
                let amps: Vec<Complex64> = pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
                if !self.normalize && (norm_sqr - 1.0).abs() > INPUT_NORM_TOLERANCE {
                    return Err(CliError::Config(format!(
                        "amplitudes have squared norm {norm_sqr}; pass --normalize to rescale"
                    )));
                }
                StateVector::normalized(dim, dim, amps).map_err(|e| CliError::Config(e.to_string()))
            }
        }
    }

    /// The strategy pair from `--pa/--pa1/--qb/--qb1`.
    pub fn strategies(&self) -> Result<(MixedStrategy, MixedStrategy), CliError> {
        let s = &self.strategies;
        let (pa, qb) = match (s.pa, s.qb) {
            (Some(pa), Some(qb)) => (pa, qb),
            _ => return Err(CliError::Usage("both --pa and --qb are required".into())),
        };
        let usage = |e: mw_opinion::mw::MwError| CliError::Usage(e.to_string());
        match self.dim() {
            2 => {
                if s.pa1.is_some() || s.qb1.is_some() {
                    return Err(CliError::Usage(format!(
                        "--pa1/--qb1 do not apply to {}, which has two operators",
                        self.model
                    )));
                }
                Ok((MixedStrategy::two(pa).map_err(usage)?, MixedStrategy::two(qb).map_err(usage)?))
            }
            _ => Ok((
                MixedStrategy::three(pa, s.pa1.unwrap_or(0.0)).map_err(usage)?,
                MixedStrategy::three(qb, s.qb1.unwrap_or(0.0)).map_err(usage)?,
            )),
        }
    }
}

pub fn preset_state(name: &str, dim: usize, seed: u64) -> Result<StateVector, CliError> {
    match name {
        "entangled-11-33" if dim == 3 => Ok(mw_opinion::mw::entangled_11_33()),
        "entangled-11-33" => Err(CliError::Usage(
            "preset entangled-11-33 needs a three-strategy model".into(),
        )),
        "uniform" => Ok(mw_opinion::mw::uniform_state(dim)),
        "random" => Ok(StateVector::random(dim, &mut ChaCha8Rng::seed_from_u64(seed))),
        _ => {
            let label = name.strip_prefix("basis-").unwrap_or("");
            let digits: Vec<usize> = label
                .chars()
                .map(|ch| ch.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .unwrap_or_default();
            match digits.as_slice() {
                [i, j] => StateVector::basis(dim, *i, *j).map_err(|e| CliError::Usage(e.to_string())),
                _ => Err(CliError::Usage(format!("unknown state preset {name:?}"))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(model: &str) -> Overrides {
        Overrides {
            model: Some(model.into()),
            ..Default::default()
        }
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("10").unwrap(), 10);
        assert_eq!(parse_grid("1/5").unwrap(), 5);
        assert!(parse_grid("0").is_err());
        assert!(parse_grid("x").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file: FileConfig = toml::from_str(
            "model = \"GM1\"\n[params]\na = 2.0\nd = 3.0\n[options]\ngrid = \"1/4\"\nseed = 9\n",
        )
        .unwrap();
        let cfg = RunConfig::resolve(
            file,
            Overrides {
                model: Some("GM3".into()),
                a: Some(5.0),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(cfg.model, Model::Gm3);
        assert_eq!(cfg.params.a, 5.0);
        assert_eq!(cfg.params.d, 3.0);
        assert_eq!(cfg.params.b, 1.0);
        assert_eq!(cfg.grid, 4);
        assert_eq!(cfg.seed, 9);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_params() {
        assert!(toml::from_str::<FileConfig>("modle = \"GM1\"").is_err());
        let bad = Overrides {
            a: Some(-1.0),
            ..flags("GM1")
        };
        assert!(matches!(RunConfig::resolve(FileConfig::default(), bad), Err(CliError::Usage(_))));
        assert!(matches!(
            RunConfig::resolve(FileConfig::default(), Overrides::default()),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn ignored_params_are_the_given_unused_ones() {
        let cfg = RunConfig::resolve(
            FileConfig::default(),
            Overrides {
                d: Some(0.3),
                ..flags("GM2")
            },
        )
        .unwrap();
        assert_eq!(cfg.ignored_params(), vec!["d"]);
        let cfg = RunConfig::resolve(FileConfig::default(), flags("GM2")).unwrap();
        assert!(cfg.ignored_params().is_empty());
    }

    #[test]
    fn presets() {
        assert_eq!(preset_state("basis-12", 2, 0).unwrap(), StateVector::basis(2, 1, 2).unwrap());
        assert!(preset_state("basis-33", 2, 0).is_err());
        assert!(preset_state("entangled-11-33", 2, 0).is_err());
        assert_eq!(preset_state("random", 3, 4).unwrap(), preset_state("random", 3, 4).unwrap());
        assert!(preset_state("bell", 2, 0).is_err());
    }

    #[test]
    fn amplitude_normalization_is_opt_in() {
        let file: FileConfig =
            toml::from_str("model = \"GM1\"\n[state]\namplitudes = [[1, 0], [1, 0], [0, 0], [0, 0]]\n").unwrap();
        let cfg = RunConfig::resolve(file.clone(), Overrides::default()).unwrap();
        assert!(matches!(cfg.initial_state(), Err(CliError::Config(_))));
        let cfg = RunConfig::resolve(
            file,
            Overrides {
                normalize: true,
                ..Default::default()
            },
        )
        .unwrap();
        let psi = cfg.initial_state().unwrap();
        assert!((psi.probability(1, 1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn strategy_flags() {
        let mut cfg = RunConfig::resolve(FileConfig::default(), flags("GM1")).unwrap();
        assert!(cfg.strategies().is_err());
        cfg.strategies = StrategiesSection { pa: Some(0.5), qb: Some(1.0), pa1: Some(0.1), qb1: None };
        assert!(cfg.strategies().is_err());
        cfg.strategies.pa1 = None;
        assert!(cfg.strategies().is_ok());

        let mut cfg = RunConfig::resolve(FileConfig::default(), flags("GM3")).unwrap();
        cfg.strategies = StrategiesSection { pa: Some(0.5), qb: Some(0.0), pa1: Some(0.6), qb1: Some(1.0) };
        assert!(cfg.strategies().is_err());
    }
}
