//! TOML scenario files.
//!
//! Every key is optional. A file starts from the `cb` preset (or `rw` when
//! `preset = "rw"` or `ground.mode = "random_walk"` is given) and overrides
//! whatever it names. Unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{Formation, GroundMode, Preset, ScenarioConfig};
use crate::error::{ConfigError, Error, Result};
use crate::ga::ActiveSwap;

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    #[serde(default)]
    environment: EnvSection,
    #[serde(default)]
    ground: GroundSection,
    #[serde(default)]
    uav: UavSection,
    #[serde(default)]
    ga: GaSection,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvSection {
    width: Option<f64>,
    height: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroundSection {
    count: Option<usize>,
    mode: Option<GroundMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cohesion: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alignment: Option<f64>,
    separation: Option<f64>,
    vision_distance: Option<f64>,
    vision_angle: Option<f64>,
    safe_distance: Option<f64>,
    max_speed: Option<f64>,
    constant_speed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    link_range: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UavSection {
    count: Option<usize>,
    range: Option<f64>,
    safe_distance: Option<f64>,
    formation: Option<Formation>,
    formation_side: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaSection {
    population: Option<usize>,
    window: Option<usize>,
    tournament: Option<usize>,
    elites: Option<usize>,
    crossover: Option<f64>,
    mutation: Option<f64>,
    enabled: Option<bool>,
    active_swap: Option<ActiveSwap>,
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

impl ScenarioFile {
    fn resolve(self) -> Result<ScenarioConfig, ConfigError> {
        let preset = match (&self.preset, self.ground.mode) {
            (Some(p), _) => p.parse()?,
            (None, Some(GroundMode::RandomWalk)) => Preset::Rw,
            (None, _) => Preset::Cb,
        };
        let mut c = ScenarioConfig::preset(preset);
        set(&mut c.name, self.name);
        set(&mut c.seed, self.seed);
        set(&mut c.total_steps, self.steps);
        set(&mut c.env.width, self.environment.width);
        set(&mut c.env.height, self.environment.height);

        let g = self.ground;
        set(&mut c.ground_count, g.count);
        set(&mut c.ground_mode, g.mode);
        if g.cohesion.is_some() {
            c.ground_weights.cohesion = g.cohesion;
        }
        if g.alignment.is_some() {
            c.ground_weights.alignment = g.alignment;
        }
        set(&mut c.ground_weights.separation, g.separation);
        set(&mut c.vision_distance, g.vision_distance);
        set(&mut c.vision_angle, g.vision_angle);
        set(&mut c.ground_safe_distance, g.safe_distance);
        set(&mut c.ground_max_speed, g.max_speed);
        set(&mut c.ground_constant_speed, g.constant_speed);
        if g.link_range.is_some() {
            c.ground_link_range = g.link_range;
        }

        let u = self.uav;
        set(&mut c.uav_count, u.count);
        set(&mut c.comm_range, u.range);
        set(&mut c.uav_safe_distance, u.safe_distance);
        set(&mut c.formation, u.formation);
        set(&mut c.formation_side, u.formation_side);

        let ga = self.ga;
        set(&mut c.ga.population_size, ga.population);
        set(&mut c.ga.window, ga.window);
        set(&mut c.ga.tournament_size, ga.tournament);
        set(&mut c.ga.elite_count, ga.elites);
        set(&mut c.ga.crossover_prob, ga.crossover);
        set(&mut c.ga.mutation_prob, ga.mutation);
        set(&mut c.ga.enabled, ga.enabled);
        set(&mut c.ga.active_swap, ga.active_swap);

        c.validate()?;
        Ok(c)
    }

    fn from_config(c: &ScenarioConfig) -> Self {
        let preset = match c.ground_mode {
            GroundMode::ClassicBoids => Preset::Cb,
            GroundMode::RandomWalk => Preset::Rw,
        };
        ScenarioFile {
            preset: Some(preset.name().to_string()),
            name: Some(c.name.clone()),
            seed: Some(c.seed),
            steps: Some(c.total_steps),
            environment: EnvSection {
                width: Some(c.env.width),
                height: Some(c.env.height),
            },
            ground: GroundSection {
                count: Some(c.ground_count),
                mode: Some(c.ground_mode),
                cohesion: c.ground_weights.cohesion,
                alignment: c.ground_weights.alignment,
                separation: Some(c.ground_weights.separation),
                vision_distance: Some(c.vision_distance),
                vision_angle: Some(c.vision_angle),
                safe_distance: Some(c.ground_safe_distance),
                max_speed: Some(c.ground_max_speed),
                constant_speed: Some(c.ground_constant_speed),
                link_range: c.ground_link_range,
            },
            uav: UavSection {
                count: Some(c.uav_count),
                range: Some(c.comm_range),
                safe_distance: Some(c.uav_safe_distance),
                formation: Some(c.formation),
                formation_side: Some(c.formation_side),
            },
            ga: GaSection {
                population: Some(c.ga.population_size),
                window: Some(c.ga.window),
                tournament: Some(c.ga.tournament_size),
                elites: Some(c.ga.elite_count),
                crossover: Some(c.ga.crossover_prob),
                mutation: Some(c.ga.mutation_prob),
                enabled: Some(c.ga.enabled),
                active_swap: Some(c.ga.active_swap),
            },
        }
    }
}

/// Parses and validates scenario text.
pub fn parse_scenario_str(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let file: ScenarioFile = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.message().to_string()))?;
    file.resolve()
}

pub fn parse_scenario(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_scenario_str(&text)?)
}

/// Fully explicit scenario text for `config`; parses back to the same value.
pub fn scenario_to_string(config: &ScenarioConfig) -> String {
    toml::to_string(&ScenarioFile::from_config(config)).expect("scenario serializes")
}
