//! Experiment configuration.
//!
//! A configuration starts from a scale preset and is overlaid with an
//! optional TOML file. Unknown keys are rejected.
//!
//! ```toml
//! seed = 42
//!
//! [graph]
//! n = 50
//! radius = 0.2
//!
//! [design]
//! method = "greedy"     # or "subgradient"
//! mode = "C2"           # or "C1"
//! gamma = 0.01
//! k = 300
//!
//! [schedule]
//! Delta = 1
//! ordering = "greedy"   # or "as_given"
//!
//! [dda]
//! T = 5000
//! trials = 20
//! ```

use serde::{Deserialize, Serialize};

use crate::dda::Ordering;
use crate::error::{Error, Result};
use crate::graph::CostModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Desk,
    Paper,
}

impl std::str::FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Scale::Desk),
            "paper" => Ok(Scale::Paper),
            other => Err(Error::Config(format!("unknown scale {other:?} (expected desk or paper)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignMethod {
    Subgradient,
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeName {
    C1,
    C2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphConfig {
    pub n: usize,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignConfig {
    pub method: DesignMethod,
    pub mode: ModeName,
    pub gamma: f64,
    /// Edge count for `C2` and budget for greedy selection.
    pub k: usize,
    pub iters: usize,
    pub step_scale: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleConfig {
    #[serde(rename = "Delta")]
    pub delta: usize,
    pub ordering: Ordering,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DdaConfig {
    #[serde(rename = "T")]
    pub horizon: usize,
    pub p: usize,
    #[serde(rename = "R")]
    pub radius: f64,
    pub trials: usize,
    /// `0` selects `max(1, T / 1000)`.
    pub checkpoint_every: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryConfig {
    pub enabled: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecentralizedConfig {
    #[serde(rename = "N1")]
    pub outer_rounds: usize,
    #[serde(rename = "N2")]
    pub inner_rounds: usize,
    pub enabled: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub graph: GraphConfig,
    pub cost: CostModel,
    pub design: DesignConfig,
    pub schedule: ScheduleConfig,
    pub dda: DdaConfig,
    pub theory: TheoryConfig,
    pub decentralized: DecentralizedConfig,
}

impl ExperimentConfig {
    /// `n = 50`, `T = 5000`, 20 trials.
    pub fn desk() -> Self {
        Self {
            seed: 42,
            graph: GraphConfig { n: 50, radius: 0.2 },
            cost: CostModel::default(),
            design: DesignConfig {
                method: DesignMethod::Greedy,
                mode: ModeName::C2,
                gamma: 0.01,
                k: 300,
                iters: 2000,
                step_scale: 0.2,
            },
            schedule: ScheduleConfig { delta: 1, ordering: Ordering::Greedy },
            dda: DdaConfig { horizon: 5000, p: 5, radius: 5.0, trials: 20, checkpoint_every: 0 },
            theory: TheoryConfig { enabled: true },
            decentralized: DecentralizedConfig { outer_rounds: 300, inner_rounds: 1000, enabled: false },
        }
    }

    /// `n = 100`, `T = 20000`.
    pub fn paper() -> Self {
        let mut c = Self::desk();
        c.graph = GraphConfig { n: 100, radius: 0.15 };
        c.dda.horizon = 20000;
        c.design.k = 1000;
        c
    }

    pub fn preset(scale: Scale) -> Self {
        match scale {
            Scale::Desk => Self::desk(),
            Scale::Paper => Self::paper(),
        }
    }

    /// Overlays TOML text onto `self`.
    pub fn overlay(&self, text: &str) -> Result<Self> {
        let patch: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        let mut base = toml::Table::try_from(self).map_err(|e| Error::Config(e.to_string()))?;
        merge(&mut base, patch);
        let cfg: Self = base.try_into().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(scale: Scale, path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::preset(scale).overlay(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    pub fn checkpoint_every(&self) -> usize {
        if self.dda.checkpoint_every == 0 {
            crate::dda::default_cadence(self.dda.horizon)
        } else {
            self.dda.checkpoint_every
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("graph.n", self.graph.n),
            ("design.iters", self.design.iters),
            ("dda.T", self.dda.horizon),
            ("dda.p", self.dda.p),
            ("dda.trials", self.dda.trials),
            ("decentralized.N1", self.decentralized.outer_rounds),
            ("decentralized.N2", self.decentralized.inner_rounds),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Config(format!("{name} must be positive")));
        }
        if self.graph.n < 2 {
            return Err(Error::Config("graph.n must be at least 2".into()));
        }
        if !(self.graph.radius > 0.0 && self.graph.radius <= std::f64::consts::SQRT_2) {
            return Err(Error::Config(format!("graph.radius {} outside (0, sqrt 2]", self.graph.radius)));
        }
        if self.schedule.delta == 0 || self.schedule.delta > self.dda.horizon {
            return Err(Error::Config(format!("schedule.Delta {} outside [1, T]", self.schedule.delta)));
        }
        let c = &self.cost;
        if !(c.tau1 > 0.0 && c.tau2 >= 0.0 && c.d0.is_finite()) {
            return Err(Error::Config("cost parameters must be positive".into()));
        }
        if !(self.design.gamma >= 0.0) || !(self.design.step_scale > 0.0) {
            return Err(Error::Config("design.gamma must be >= 0 and design.step_scale > 0".into()));
        }
        if !(self.dda.radius > 0.0) {
            return Err(Error::Config("dda.R must be positive".into()));
        }
        Ok(())
    }
}

fn merge(base: &mut toml::Table, patch: toml::Table) {
    for (k, v) in patch {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(p)) => merge(b, p),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        ExperimentConfig::desk().validate().unwrap();
        ExperimentConfig::paper().validate().unwrap();
        assert_eq!(ExperimentConfig::desk().checkpoint_every(), 5);
    }

    #[test]
    fn overlay_and_roundtrip() {
        let c = ExperimentConfig::desk().overlay("seed = 7\n[schedule]\nDelta = 50\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.schedule.delta, 50);
        assert_eq!(c.dda.horizon, 5000);
        let again = ExperimentConfig::desk().overlay(&c.to_toml()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn unknown_keys_fail() {
        assert!(ExperimentConfig::desk().overlay("[dda]\nsteps = 3\n").is_err());
        assert!(ExperimentConfig::desk().overlay("colour = 1\n").is_err());
        assert!(ExperimentConfig::desk().overlay("[schedule]\nDelta = 0\n").is_err());
    }
}
