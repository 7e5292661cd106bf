//! UAV kinematics under the five-force model.
//!
//! A UAV steers by cohesion, alignment and separation against UAVs inside its
//! communication range, plus cohesion and alignment toward the ground agents
//! it currently covers. There is no UAV-to-ground separation term.

use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::forces;
use crate::ga::{GaInstance, Genome};
use crate::geom::{bounce_reflect, clamp_magnitude, EnvBounds, Vec2};
use crate::ground::GroundAgent;

/// The state a UAV broadcasts to its one-hop neighbours each step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AirView {
    pub id: usize,
    pub pos: Vec2,
    pub vel: Vec2,
    /// Number of ground agents inside this UAV's range.
    pub covered: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UavParams {
    pub range: f64,
    pub safe_distance: f64,
    pub env: EnvBounds,
}

impl From<&ScenarioConfig> for UavParams {
    fn from(c: &ScenarioConfig) -> Self {
        Self {
            range: c.comm_range,
            safe_distance: c.uav_safe_distance,
            env: c.env,
        }
    }
}

#[derive(Debug, Clone)]
pub struct UavAgent {
    pub id: usize,
    pub pos: Vec2,
    pub vel: Vec2,
    pub ga: GaInstance,
}

impl UavAgent {
    pub fn active_genome(&self) -> &Genome {
        self.ga.active()
    }

    pub fn view(&self, covered: usize) -> AirView {
        AirView {
            id: self.id,
            pos: self.pos,
            vel: self.vel,
            covered,
        }
    }
}

/// Other UAVs strictly closer than `range` to `pos`.
pub fn uav_neighbors<'a>(id: usize, pos: Vec2, all: &'a [AirView], range: f64) -> Vec<&'a AirView> {
    let range_sq = range * range;
    all.iter()
        .filter(|u| u.id != id && u.pos.distance_sq(pos) < range_sq)
        .collect()
}

/// Ground agents strictly closer than `range` to `pos`.
pub fn covered_ground<'a>(pos: Vec2, ground: &'a [GroundAgent], range: f64) -> Vec<&'a GroundAgent> {
    ground.iter().filter(|g| g.pos.distance(pos) < range).collect()
}

/// Number of ground agents strictly closer than `range` to `pos`.
pub fn count_covered(pos: Vec2, ground: &[GroundAgent], range: f64) -> usize {
    ground.iter().filter(|g| g.pos.distance(pos) < range).count()
}

pub fn air_ground_cohesion(pos: Vec2, ground_neighbors: &[&GroundAgent]) -> Vec2 {
    forces::cohesion(pos, ground_neighbors.iter().map(|g| g.pos))
}

pub fn air_ground_alignment(vel: Vec2, ground_neighbors: &[&GroundAgent]) -> Vec2 {
    forces::alignment(vel, ground_neighbors.iter().map(|g| g.vel))
}

/// Separation between UAVs. Two UAVs at the same point push apart along the
/// x axis, the lower id toward -x.
pub fn uav_separation(id: usize, pos: Vec2, neighbors: &[&AirView], safe_distance: f64) -> Vec2 {
    forces::separation(
        pos,
        neighbors.iter().map(|u| (u.id, u.pos)),
        safe_distance,
        |other| {
            if id < other {
                Vec2::new(-1.0, 0.0)
            } else {
                Vec2::new(1.0, 0.0)
            }
        },
    )
}

/// Sum of the five weighted forces acting on a UAV at `pos` moving at `vel`.
pub fn steering(
    id: usize,
    pos: Vec2,
    vel: Vec2,
    genome: &Genome,
    uavs: &[AirView],
    ground: &[GroundAgent],
    params: &UavParams,
) -> Vec2 {
    let air = uav_neighbors(id, pos, uavs, params.range);
    let below = covered_ground(pos, ground, params.range);
    forces::cohesion(pos, air.iter().map(|u| u.pos)) * genome.uav_cohesion
        + forces::alignment(vel, air.iter().map(|u| u.vel)) * genome.uav_alignment
        + uav_separation(id, pos, &air, params.safe_distance) * genome.uav_separation
        + air_ground_cohesion(pos, &below) * genome.ground_cohesion
        + air_ground_alignment(vel, &below) * genome.ground_alignment
}

/// One kinematic step: add the steering, clamp to the genome's speed, then
/// move with wall reflection. Returns the new `(pos, vel)`.
pub fn step_uav(
    id: usize,
    pos: Vec2,
    vel: Vec2,
    genome: &Genome,
    uavs: &[AirView],
    ground: &[GroundAgent],
    params: &UavParams,
) -> (Vec2, Vec2) {
    let steer = steering(id, pos, vel, genome, uavs, ground, params);
    let vel = clamp_magnitude(vel + steer, genome.speed);
    bounce_reflect(pos, vel, params.env)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn view(id: usize, x: f64, y: f64) -> AirView {
        AirView {
            id,
            pos: Vec2::new(x, y),
            vel: Vec2::ZERO,
            covered: 0,
        }
    }

    fn g(id: usize, x: f64, y: f64) -> GroundAgent {
        GroundAgent::new(id, Vec2::new(x, y), Vec2::ZERO)
    }

    fn params() -> UavParams {
        UavParams::from(&ScenarioConfig::default())
    }

    fn only(mut f: impl FnMut(&mut Genome)) -> Genome {
        let mut genome = Genome {
            speed: 5.0,
            ground_alignment: 0.0,
            ground_cohesion: 0.0,
            uav_alignment: 0.0,
            uav_cohesion: 0.0,
            uav_separation: 0.5,
        };
        f(&mut genome);
        genome
    }

    #[test]
    fn neighbor_range_is_strict() {
        let all = [view(0, 0.0, 0.0), view(1, 299.0, 0.0)];
        assert_eq!(uav_neighbors(0, all[0].pos, &all, 300.0).len(), 1);
        assert_eq!(uav_neighbors(1, all[1].pos, &all, 300.0).len(), 1);
        let all = [view(0, 0.0, 0.0), view(1, 301.0, 0.0)];
        assert!(uav_neighbors(0, all[0].pos, &all, 300.0).is_empty());
    }

    #[test]
    fn initial_square_sees_edge_neighbors_only() {
        let c = 500.0;
        let h = 150.0;
        let all = [
            view(0, c - h, c - h),
            view(1, c + h, c - h),
            view(2, c - h, c + h),
            view(3, c + h, c + h),
        ];
        // side 300 is not < 300, so shrink slightly as the engine does
        let all: Vec<_> = all
            .iter()
            .map(|u| AirView {
                pos: Vec2::new(c, c) + (u.pos - Vec2::new(c, c)) * (299.9 / 300.0),
                ..*u
            })
            .collect();
        for u in &all {
            let n = uav_neighbors(u.id, u.pos, &all, 300.0);
            assert_eq!(n.len(), 2, "uav {}", u.id);
            for other in n {
                let diag = (u.pos.x - other.pos.x).abs() > 1.0 && (u.pos.y - other.pos.y).abs() > 1.0;
                assert!(!diag);
            }
        }
    }

    #[test]
    fn coverage_boundary_excluded() {
        let ground = [g(0, 800.0, 500.0), g(1, 600.0, 500.0)];
        let covered = covered_ground(Vec2::new(500.0, 500.0), &ground, 300.0);
        assert_eq!(covered.iter().map(|a| a.id).collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn air_ground_force_examples() {
        let a = g(0, 90.0, 90.0);
        let b = g(1, 110.0, 110.0);
        assert_eq!(air_ground_cohesion(Vec2::new(100.0, 100.0), &[&a, &b]), Vec2::ZERO);
        assert_eq!(air_ground_cohesion(Vec2::ZERO, &[]), Vec2::ZERO);
        let c = g(2, 30.0, 0.0);
        assert_eq!(air_ground_cohesion(Vec2::ZERO, &[&c]), Vec2::new(30.0, 0.0));

        let m = GroundAgent::new(3, Vec2::ZERO, Vec2::new(1.0, 1.0));
        assert_eq!(air_ground_alignment(Vec2::ZERO, &[&m]), Vec2::new(1.0, 1.0));
        assert_eq!(air_ground_alignment(Vec2::ZERO, &[]), Vec2::ZERO);
        assert_eq!(air_ground_alignment(Vec2::new(1.0, 1.0), &[&m]), Vec2::ZERO);
    }

    #[test]
    fn isolated_uav_coasts() {
        let genome = only(|_| {});
        let (p, v) = step_uav(0, Vec2::new(500.0, 500.0), Vec2::new(2.0, 0.0), &genome, &[], &[], &params());
        assert_eq!(v, Vec2::new(2.0, 0.0));
        assert_eq!(p, Vec2::new(502.0, 500.0));
    }

    #[test]
    fn zero_speed_hovers() {
        let genome = only(|g| {
            g.speed = 0.0;
            g.ground_cohesion = 0.5;
        });
        let ground = [g(0, 550.0, 500.0)];
        let start = Vec2::new(500.0, 500.0);
        let (p, v) = step_uav(0, start, Vec2::new(3.0, 1.0), &genome, &[], &ground, &params());
        assert_eq!(p, start);
        assert_eq!(v, Vec2::ZERO);
    }

    #[test]
    fn ground_cohesion_turns_toward_ground() {
        let genome = only(|g| g.ground_cohesion = 0.1);
        let ground = [g(0, 500.0, 540.0)];
        // (0,40) * 0.1 = (0,4); (1,0) + (0,4) has norm < 5 so no clamping.
        let (p, v) = step_uav(0, Vec2::new(500.0, 500.0), Vec2::new(1.0, 0.0), &genome, &[], &ground, &params());
        assert_eq!(v, Vec2::new(1.0, 4.0));
        assert_eq!(p, Vec2::new(501.0, 504.0));
    }

    #[test]
    fn coincident_uavs_split() {
        let a = view(0, 100.0, 100.0);
        let b = view(1, 100.0, 100.0);
        let all = [a, b];
        let fa = uav_separation(0, a.pos, &uav_neighbors(0, a.pos, &all, 300.0), 50.0);
        let fb = uav_separation(1, b.pos, &uav_neighbors(1, b.pos, &all, 300.0), 50.0);
        assert_eq!(fa, -fb);
        assert_eq!(fa.norm(), 1.0);
    }
}
