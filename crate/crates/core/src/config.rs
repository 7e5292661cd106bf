//! Scenario configuration shared by every module.

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::ga::GaParams;
use crate::geom::EnvBounds;

/// How ground agents move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroundMode {
    ClassicBoids,
    RandomWalk,
}

/// Ground force weights. Random walkers have no cohesion or alignment, so
/// those weights are optional and never read in that mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundWeights {
    pub cohesion: Option<f64>,
    pub alignment: Option<f64>,
    pub separation: f64,
}

impl GroundWeights {
    pub const CLASSIC_BOIDS: GroundWeights = GroundWeights {
        cohesion: Some(0.01),
        alignment: Some(0.125),
        separation: 1.0,
    };

    pub const RANDOM_WALK: GroundWeights = GroundWeights {
        cohesion: None,
        alignment: None,
        separation: 1.0,
    };
}

/// Initial UAV layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formation {
    /// Four UAVs on the corners of a centered square. Requires exactly 4 UAVs.
    Square,
    /// UAVs on the vertices of a centered regular polygon.
    Polygon,
}

/// Named parameter presets for the two ground behaviours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Cb,
    Rw,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Cb => "cb",
            Preset::Rw => "rw",
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cb" => Ok(Preset::Cb),
            "rw" => Ok(Preset::Rw),
            _ => Err(ConfigError::UnknownPreset(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// Free-form scenario identifier carried into summaries.
    pub name: String,
    pub env: EnvBounds,
    pub ground_count: usize,
    pub uav_count: usize,
    pub total_steps: usize,
    pub ground_mode: GroundMode,
    pub ground_weights: GroundWeights,
    pub vision_distance: f64,
    /// Full vision cone angle in degrees; 360 means omnidirectional.
    pub vision_angle: f64,
    pub comm_range: f64,
    pub ground_safe_distance: f64,
    pub ground_max_speed: f64,
    /// Ground agents always travel at `ground_max_speed` (classic boids
    /// cruising). When `false` speed is only capped.
    pub ground_constant_speed: bool,
    pub uav_safe_distance: f64,
    pub formation: Formation,
    /// Edge length of the initial UAV formation. Just under the
    /// communication range so adjacent UAVs start linked under the strict
    /// `dist < range` rule.
    pub formation_side: f64,
    /// Optional direct ground-to-ground radio range. `None` means ground
    /// agents only talk through UAV relays.
    pub ground_link_range: Option<f64>,
    pub ga: GaParams,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::preset(Preset::Cb)
    }
}

impl ScenarioConfig {
    pub fn preset(preset: Preset) -> Self {
        let (ground_mode, ground_weights) = match preset {
            Preset::Cb => (GroundMode::ClassicBoids, GroundWeights::CLASSIC_BOIDS),
            Preset::Rw => (GroundMode::RandomWalk, GroundWeights::RANDOM_WALK),
        };
        Self {
            name: preset.name().to_string(),
            env: EnvBounds::default(),
            ground_count: 100,
            uav_count: 4,
            total_steps: 22_000,
            ground_mode,
            ground_weights,
            vision_distance: 30.0,
            vision_angle: 360.0,
            comm_range: 300.0,
            ground_safe_distance: 5.0,
            ground_max_speed: 1.0,
            ground_constant_speed: true,
            uav_safe_distance: 50.0,
            formation: Formation::Square,
            formation_side: 299.9,
            ground_link_range: None,
            ga: GaParams::default(),
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.total_steps = steps;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        positive("environment.width", self.env.width)?;
        positive("environment.height", self.env.height)?;
        nonzero("ground.count", self.ground_count)?;
        nonzero("uav.count", self.uav_count)?;
        nonzero("steps", self.total_steps)?;
        positive("ground.vision_distance", self.vision_distance)?;
        if !(self.vision_angle > 0.0 && self.vision_angle <= 360.0) {
            return Err(ConfigError::out_of_range(
                "ground.vision_angle",
                self.vision_angle,
                "must lie in (0, 360]",
            ));
        }
        positive("uav.range", self.comm_range)?;
        positive("ground.safe_distance", self.ground_safe_distance)?;
        positive("ground.max_speed", self.ground_max_speed)?;
        positive("uav.safe_distance", self.uav_safe_distance)?;
        positive("uav.formation_side", self.formation_side)?;
        if let Some(r) = self.ground_link_range {
            positive("ground.link_range", r)?;
        }
        finite_non_negative("ground.separation", Some(self.ground_weights.separation))?;
        if self.ground_mode == GroundMode::ClassicBoids {
            let w = self.ground_weights;
            if w.cohesion.is_none() {
                return Err(ConfigError::Missing("ground.cohesion"));
            }
            if w.alignment.is_none() {
                return Err(ConfigError::Missing("ground.alignment"));
            }
            finite_non_negative("ground.cohesion", w.cohesion)?;
            finite_non_negative("ground.alignment", w.alignment)?;
        }
        if self.formation == Formation::Square && self.uav_count != 4 {
            return Err(ConfigError::out_of_range(
                "uav.count",
                self.uav_count as f64,
                "square formation needs exactly 4 UAVs; use formation = \"polygon\"",
            ));
        }
        self.ga.validate()
    }
}

fn positive(key: &'static str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::out_of_range(key, v, "must be finite and > 0"))
    }
}

fn nonzero(key: &'static str, v: usize) -> Result<(), ConfigError> {
    if v > 0 {
        Ok(())
    } else {
        Err(ConfigError::out_of_range(key, 0.0, "must be > 0"))
    }
}

fn finite_non_negative(key: &'static str, v: Option<f64>) -> Result<(), ConfigError> {
    match v {
        Some(x) if !(x.is_finite() && x >= 0.0) => {
            Err(ConfigError::out_of_range(key, x, "must be finite and >= 0"))
        }
        _ => Ok(()),
    }
}
