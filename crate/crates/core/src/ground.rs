//! Ground agents: classic boids or separation-only random walkers.
//!
//! Ground motion never depends on the UAVs. Every step reads one snapshot of
//! all agents and writes a fresh state, so agent order does not matter.

use serde::{Deserialize, Serialize};

use crate::config::{GroundMode, GroundWeights, ScenarioConfig};
use crate::forces;
use crate::geom::{bounce_reflect, clamp_magnitude, EnvBounds, Vec2};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundAgent {
    pub id: usize,
    pub pos: Vec2,
    pub vel: Vec2,
    /// Last non-zero direction of travel, used for the vision cone.
    pub heading: Vec2,
}

impl GroundAgent {
    pub fn new(id: usize, pos: Vec2, vel: Vec2) -> Self {
        Self {
            id,
            pos,
            vel,
            heading: vel.normalized().unwrap_or(Vec2::new(1.0, 0.0)),
        }
    }

    fn facing(&self) -> Vec2 {
        self.vel.normalized().unwrap_or(self.heading)
    }
}

/// The subset of scenario parameters that drive ground motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundParams {
    pub mode: GroundMode,
    pub weights: GroundWeights,
    pub vision_distance: f64,
    pub vision_angle: f64,
    pub safe_distance: f64,
    pub max_speed: f64,
    pub constant_speed: bool,
    pub env: EnvBounds,
}

impl From<&ScenarioConfig> for GroundParams {
    fn from(c: &ScenarioConfig) -> Self {
        Self {
            mode: c.ground_mode,
            weights: c.ground_weights,
            vision_distance: c.vision_distance,
            vision_angle: c.vision_angle,
            safe_distance: c.ground_safe_distance,
            max_speed: c.ground_max_speed,
            constant_speed: c.ground_constant_speed,
            env: c.env,
        }
    }
}

/// Agents closer than `vision_distance` and inside the vision cone of full
/// angle `vision_angle` degrees centred on `agent`'s heading.
pub fn ground_neighbors<'a>(
    agent: &GroundAgent,
    all: &'a [GroundAgent],
    vision_distance: f64,
    vision_angle: f64,
) -> Vec<&'a GroundAgent> {
    let omni = vision_angle >= 360.0;
    let min_cos = (vision_angle.to_radians() / 2.0).cos();
    let heading = agent.facing();
    let range_sq = vision_distance * vision_distance;
    all.iter()
        .filter(|other| other.id != agent.id)
        .filter(|other| {
            let d = other.pos - agent.pos;
            let dist_sq = d.norm_sq();
            if dist_sq >= range_sq {
                return false;
            }
            if omni || dist_sq == 0.0 {
                return true;
            }
            heading.dot(d) / dist_sq.sqrt() >= min_cos
        })
        .collect()
}

pub fn cohesion_force(agent: &GroundAgent, neighbors: &[&GroundAgent]) -> Vec2 {
    forces::cohesion(agent.pos, neighbors.iter().map(|n| n.pos))
}

pub fn alignment_force(agent: &GroundAgent, neighbors: &[&GroundAgent]) -> Vec2 {
    forces::alignment(agent.vel, neighbors.iter().map(|n| n.vel))
}

/// Separation from neighbours inside `safe_distance`; coincident neighbours
/// push in a direction drawn from the agent's own stream.
pub fn separation_force(
    agent: &GroundAgent,
    neighbors: &[&GroundAgent],
    safe_distance: f64,
    rng: &mut RngStream,
) -> Vec2 {
    forces::separation(
        agent.pos,
        neighbors.iter().map(|n| (n.id, n.pos)),
        safe_distance,
        |_| rng.unit_vector(),
    )
}

/// Advances one agent against the snapshot `all`.
pub fn step_agent(
    agent: &GroundAgent,
    all: &[GroundAgent],
    params: &GroundParams,
    rng: &mut RngStream,
) -> GroundAgent {
    let neighbors = ground_neighbors(agent, all, params.vision_distance, params.vision_angle);
    let separation = separation_force(agent, &neighbors, params.safe_distance, rng);
    let steer = match params.mode {
        GroundMode::ClassicBoids => {
            let wc = params.weights.cohesion.unwrap_or(0.0);
            let wa = params.weights.alignment.unwrap_or(0.0);
            cohesion_force(agent, &neighbors) * wc
                + alignment_force(agent, &neighbors) * wa
                + separation * params.weights.separation
        }
        GroundMode::RandomWalk => rng.unit_vector() + separation * params.weights.separation,
    };
    let vel = agent.vel + steer;
    let vel = if params.constant_speed {
        vel.normalized().unwrap_or(agent.heading) * params.max_speed
    } else {
        clamp_magnitude(vel, params.max_speed)
    };
    let (pos, vel) = bounce_reflect(agent.pos, vel, params.env);
    GroundAgent {
        id: agent.id,
        pos,
        vel,
        heading: vel.normalized().unwrap_or(agent.heading),
    }
}

/// Synchronous update of every ground agent. `rngs[i]` belongs to `agents[i]`.
pub fn step_ground(
    agents: &[GroundAgent],
    rngs: &mut [RngStream],
    params: &GroundParams,
) -> Vec<GroundAgent> {
    assert_eq!(agents.len(), rngs.len(), "one stream per ground agent");
    agents
        .iter()
        .zip(rngs.iter_mut())
        .map(|(agent, rng)| step_agent(agent, agents, params, rng))
        .collect()
}
