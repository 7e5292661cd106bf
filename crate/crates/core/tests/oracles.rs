//! Library results checked against brute-force or independently written
//! reference implementations.

use skyrelay_core::config::{Preset, ScenarioConfig};
use skyrelay_core::geom::{bounce_reflect, EnvBounds, Vec2};
use skyrelay_core::ground::{ground_neighbors, step_ground, GroundAgent, GroundParams};
use skyrelay_core::metrics::{build_comm_graph, connectivity, coverage};
use skyrelay_core::rng::RngStream;
use skyrelay_core::{ga, init_state};

mod common;
use common::{random_points, reachability_components, reference_boids_step};

#[test]
fn connectivity_matches_reachability() {
    let mut rng = RngStream::new(11, 0);
    for _ in 0..1000 {
        let ng = 1 + rng.next_index(30);
        let nu = rng.next_index(5);
        let range = rng.next_uniform(20.0, 300.0);
        let link = rng.chance(0.3).then(|| rng.next_uniform(5.0, 100.0));
        let ground = random_points(&mut rng, ng, 1000.0);
        let uavs = random_points(&mut rng, nu, 1000.0);
        let got = connectivity(&build_comm_graph(&ground, &uavs, range, link));
        let want = reachability_components(&ground, &uavs, range, link);
        assert_eq!(got.sizes, want);
        assert_eq!(got.count, want.len());
    }
}

#[test]
fn coverage_matches_filter() {
    let mut rng = RngStream::new(12, 0);
    for _ in 0..1000 {
        let (ng, nu) = (1 + rng.next_index(30), rng.next_index(5));
        let ground = random_points(&mut rng, ng, 1000.0);
        let uavs = random_points(&mut rng, nu, 1000.0);
        let range = rng.next_uniform(20.0, 400.0);
        let mut want = 0;
        for g in &ground {
            let mut hit = false;
            for u in &uavs {
                if ((g.x - u.x).powi(2) + (g.y - u.y).powi(2)).sqrt() < range {
                    hit = true;
                }
            }
            want += hit as usize;
        }
        assert_eq!(coverage(&ground, &uavs, range), want);
    }
}

#[test]
fn ground_neighbors_match_distance_filter() {
    let mut rng = RngStream::new(13, 0);
    let agents: Vec<GroundAgent> = random_points(&mut rng, 100, 200.0)
        .into_iter()
        .enumerate()
        .map(|(id, p)| GroundAgent::new(id, p, rng.unit_vector()))
        .collect();
    for me in &agents {
        let got: Vec<usize> = ground_neighbors(me, &agents, 30.0, 360.0).iter().map(|a| a.id).collect();
        let want: Vec<usize> = agents
            .iter()
            .filter(|o| o.id != me.id && o.pos.distance(me.pos) < 30.0)
            .map(|o| o.id)
            .collect();
        assert_eq!(got, want);
    }
}

#[test]
fn classic_boids_match_reference_over_ten_steps() {
    // A crowded start so every force is exercised.
    let config = ScenarioConfig::preset(Preset::Cb).with_seed(21);
    let mut rng = RngStream::new(21, 9);
    let agents: Vec<GroundAgent> = random_points(&mut rng, 100, 150.0)
        .into_iter()
        .enumerate()
        .map(|(id, p)| GroundAgent::new(id, p, rng.unit_vector()))
        .collect();
    let mut reference: Vec<_> = agents.iter().map(|a| (a.pos.x, a.pos.y, a.vel.x, a.vel.y)).collect();
    let mut ours = agents;
    let mut rngs: Vec<_> = (0..100).map(|i| RngStream::new(21, i)).collect();
    let params = GroundParams::from(&config);
    for _ in 0..10 {
        ours = step_ground(&ours, &mut rngs, &params);
        reference = reference_boids_step(&reference, &config);
        for (a, &(x, y, vx, vy)) in ours.iter().zip(&reference) {
            for (got, want) in [(a.pos.x, x), (a.pos.y, y), (a.vel.x, vx), (a.vel.y, vy)] {
                assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{got} vs {want}");
            }
        }
    }
}

#[test]
fn engine_ground_matches_reference() {
    let config = ScenarioConfig::preset(Preset::Cb).with_seed(3).with_steps(10);
    let mut state = init_state(&config).unwrap();
    let mut reference: Vec<_> = state.ground().iter().map(|a| (a.pos.x, a.pos.y, a.vel.x, a.vel.y)).collect();
    for _ in 0..10 {
        state.step();
        reference = reference_boids_step(&reference, &config);
    }
    for (a, &(x, y, _, _)) in state.ground().iter().zip(&reference) {
        assert!((a.pos.x - x).abs() < 1e-9 && (a.pos.y - y).abs() < 1e-9);
    }
}

#[test]
fn straight_line_without_cohesion_alignment() {
    let mut config = ScenarioConfig::preset(Preset::Cb);
    config.ground_weights.cohesion = Some(0.0);
    config.ground_weights.alignment = Some(0.0);
    let params = GroundParams::from(&config);
    // Spaced 20 apart: neighbours, but never inside the safe distance.
    let agents: Vec<GroundAgent> = (0..10)
        .map(|i| GroundAgent::new(i, Vec2::new(100.0 + 20.0 * i as f64, 500.0), Vec2::new(0.0, 1.0)))
        .collect();
    let mut rngs: Vec<_> = (0..10).map(|i| RngStream::new(0, i)).collect();
    let out = step_ground(&agents, &mut rngs, &params);
    for (a, b) in agents.iter().zip(&out) {
        assert_eq!(b.pos, a.pos + a.vel);
        assert_eq!(b.vel, a.vel);
    }
}

#[test]
fn prediction_crossing_wall_uses_reflection() {
    let env = EnvBounds::default();
    let mut rng = RngStream::new(14, 0);
    for _ in 0..500 {
        let g = GroundAgent::new(
            0,
            Vec2::new(rng.next_uniform(0.0, 1000.0), rng.next_uniform(0.0, 1000.0)),
            rng.unit_vector() * 3.0,
        );
        let horizon = 1 + rng.next_index(40);
        let got = ga::predict_ground(&[g], horizon, env)[0];
        let (want, _) = bounce_reflect(g.pos, g.vel * horizon as f64, env);
        assert_eq!(got.pos, want);
        assert!(env.contains(got.pos));
    }
}
