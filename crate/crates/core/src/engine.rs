//! The simulation loop.
//!
//! Each step runs in a fixed order:
//!
//! 1. ground agents move (they never react to UAVs);
//! 2. every UAV senses its surroundings and moves under its active genome;
//! 3. every UAV's GA flies its shadow genomes through what that UAV sensed;
//! 4. the sensed observation is appended to the GA's window record;
//! 5. at a window boundary every GA evolves and promotes its best genome;
//! 6. the step's [`MetricsRecord`] is computed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Formation, ScenarioConfig};
use crate::error::Result;
use crate::ga::{ActiveSwap, GaInstance, Observation, ShadowContext};
use crate::geom::Vec2;
use crate::ground::{step_ground, GroundAgent, GroundParams};
use crate::metrics::{timeline_summaries, MetricsRecord, TimelineSummary};
use crate::rng::{RngStream, StreamRole};
use crate::uav::{count_covered, covered_ground, step_uav, uav_neighbors, AirView, UavAgent, UavParams};

/// Initial UAV positions: the corners of a centred square for
/// [`Formation::Square`], or a centred regular polygon with the same edge
/// length otherwise.
pub fn formation_positions(config: &ScenarioConfig) -> Vec<Vec2> {
    let c = config.env.center();
    let side = config.formation_side;
    match config.formation {
        Formation::Square => {
            let h = side / 2.0;
            vec![
                c + Vec2::new(-h, -h),
                c + Vec2::new(h, -h),
                c + Vec2::new(-h, h),
                c + Vec2::new(h, h),
            ]
        }
        Formation::Polygon => {
            let n = config.uav_count;
            if n == 1 {
                return vec![c];
            }
            let radius = side / (2.0 * (std::f64::consts::PI / n as f64).sin());
            (0..n)
                .map(|k| {
                    let angle = std::f64::consts::TAU * k as f64 / n as f64 - std::f64::consts::FRAC_PI_2;
                    c + Vec2::from_angle(angle) * radius
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimulationState {
    config: ScenarioConfig,
    step: usize,
    ground: Vec<GroundAgent>,
    ground_rngs: Vec<RngStream>,
    uavs: Vec<UavAgent>,
}

pub fn init_state(config: &ScenarioConfig) -> Result<SimulationState> {
    config.validate()?;
    let mut placement = RngStream::for_agent(config.seed, StreamRole::Scenario, 0);
    let ground = (0..config.ground_count)
        .map(|id| {
            let pos = Vec2::new(
                placement.next_uniform(0.0, config.env.width),
                placement.next_uniform(0.0, config.env.height),
            );
            let vel = placement.unit_vector() * config.ground_max_speed;
            GroundAgent::new(id, pos, vel)
        })
        .collect();
    let ground_rngs = (0..config.ground_count)
        .map(|id| RngStream::for_agent(config.seed, StreamRole::Ground, id))
        .collect();
    let uavs = formation_positions(config)
        .into_iter()
        .enumerate()
        .map(|(id, pos)| UavAgent {
            id,
            pos,
            vel: Vec2::ZERO,
            ga: GaInstance::new(
                config.ga.clone(),
                RngStream::for_agent(config.seed, StreamRole::Genetic, id),
                pos,
                Vec2::ZERO,
            ),
        })
        .collect();
    Ok(SimulationState {
        config: config.clone(),
        step: 0,
        ground,
        ground_rngs,
        uavs,
    })
}

impl SimulationState {
    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    /// Number of steps taken so far.
    pub fn step_index(&self) -> usize {
        self.step
    }

    pub fn ground(&self) -> &[GroundAgent] {
        &self.ground
    }

    pub fn uavs(&self) -> &[UavAgent] {
        &self.uavs
    }

    pub fn ground_positions(&self) -> Vec<Vec2> {
        self.ground.iter().map(|g| g.pos).collect()
    }

    pub fn uav_positions(&self) -> Vec<Vec2> {
        self.uavs.iter().map(|u| u.pos).collect()
    }

    /// Metrics for the current positions without advancing.
    pub fn measure(&self) -> MetricsRecord {
        MetricsRecord::measure(
            self.step,
            &self.ground_positions(),
            &self.uav_positions(),
            self.config.comm_range,
            self.config.ground_link_range,
        )
    }

    /// Advances the whole simulation by one step and returns its metrics.
    pub fn step(&mut self) -> MetricsRecord {
        let cfg = &self.config;
        let range = cfg.comm_range;
        let uav_params = UavParams::from(cfg);

        self.ground = step_ground(&self.ground, &mut self.ground_rngs, &GroundParams::from(cfg));
        let ground = &self.ground;

        let views: Vec<AirView> = self
            .uavs
            .iter()
            .map(|u| u.view(count_covered(u.pos, ground, range)))
            .collect();

        let ga_enabled = cfg.ga.enabled;
        let swap_every_step = cfg.ga.active_swap == ActiveSwap::EveryStep;
        let boundary = (self.step + 1) % cfg.ga.window == 0;
        self.uavs.par_iter_mut().for_each(|uav| {
            let (pos, vel) = step_uav(uav.id, uav.pos, uav.vel, uav.active_genome(), &views, ground, &uav_params);
            if ga_enabled {
                let sensed = Observation {
                    ground: covered_ground(uav.pos, ground, range).into_iter().copied().collect(),
                    neighbors: uav_neighbors(uav.id, uav.pos, &views, range).into_iter().copied().collect(),
                };
                let ctx = ShadowContext {
                    uav_id: uav.id,
                    uav: uav_params,
                };
                uav.ga.observe(sensed, &ctx);
                if boundary {
                    uav.ga.evolve_window(pos, vel, &ctx);
                } else if swap_every_step {
                    uav.ga.reselect_active(&ctx);
                }
            }
            uav.pos = pos;
            uav.vel = vel;
        });

        let record = MetricsRecord::measure(
            self.step,
            &self.ground_positions(),
            &self.uav_positions(),
            range,
            self.config.ground_link_range,
        );
        self.step += 1;
        record
    }
}

/// Records and summary of one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub scenario: String,
    pub seed: u64,
    pub records: Vec<MetricsRecord>,
    pub summary: TimelineSummary,
}

pub fn run_scenario(config: &ScenarioConfig) -> Result<RunOutput> {
    let mut state = init_state(config)?;
    let records: Vec<MetricsRecord> = (0..config.total_steps).map(|_| state.step()).collect();
    let summary = timeline_summaries(&records)?;
    Ok(RunOutput {
        scenario: config.name.clone(),
        seed: config.seed,
        records,
        summary,
    })
}

/// Per-seed runs of one scenario and the index of the best one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub runs: Vec<RunOutput>,
    pub best: usize,
}

impl Sweep {
    pub fn best_run(&self) -> &RunOutput {
        &self.runs[self.best]
    }
}

/// Runs `config` once per seed. `parallel` fans runs out over the rayon pool;
/// results are identical either way.
pub fn sweep(config: &ScenarioConfig, seeds: &[u64], parallel: bool) -> Result<Sweep> {
    config.validate()?;
    let run = |&seed: &u64| run_scenario(&config.clone().with_seed(seed));
    let runs: Vec<RunOutput> = if parallel {
        seeds.par_iter().map(run).collect::<Result<_>>()?
    } else {
        seeds.iter().map(run).collect::<Result<_>>()?
    };
    let summaries: Vec<&TimelineSummary> = runs.iter().map(|r| &r.summary).collect();
    let best = best_run_index(&summaries).unwrap_or(0);
    Ok(Sweep { runs, best })
}

/// Best run: highest fraction of steps fully connected. Ties fall back to
/// the large-component fractions (90 then 70 agents), then to the lower
/// mean component count, then to the earlier run.
pub fn best_run_index(summaries: &[&TimelineSummary]) -> Option<usize> {
    let key = |s: &TimelineSummary| {
        let at = |t| s.largest_at_least.get(&t).copied().unwrap_or(0.0);
        [s.connected_fraction, at(90), at(70), -s.mean_components]
    };
    (0..summaries.len()).reduce(|best, i| {
        let (a, b) = (key(summaries[i]), key(summaries[best]));
        match a.iter().zip(&b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()) {
            Some(std::cmp::Ordering::Greater) => i,
            _ => best,
        }
    })
}
