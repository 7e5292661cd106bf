//! Reference implementations shared by the integration tests.

#![allow(dead_code)]

use skyrelay_core::config::ScenarioConfig;
use skyrelay_core::geom::Vec2;
use skyrelay_core::rng::RngStream;

pub fn random_points(rng: &mut RngStream, n: usize, side: f64) -> Vec<Vec2> {
    (0..n)
        .map(|_| Vec2::new(rng.next_uniform(0.0, side), rng.next_uniform(0.0, side)))
        .collect()
}

/// Component sizes by breadth-first reachability over a dense adjacency
/// matrix. Components without ground agents are skipped.
pub fn reachability_components(ground: &[Vec2], uavs: &[Vec2], range: f64, link: Option<f64>) -> Vec<usize> {
    let nodes: Vec<(Vec2, bool)> = ground
        .iter()
        .map(|&p| (p, true))
        .chain(uavs.iter().map(|&p| (p, false)))
        .collect();
    let n = nodes.len();
    let linked = |a: usize, b: usize| {
        let ((pa, ga), (pb, gb)) = (nodes[a], nodes[b]);
        let d = pa.distance(pb);
        match (ga, gb) {
            (true, true) => link.is_some_and(|l| d < l),
            _ => d < range,
        }
    };
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut ground_members = 0;
        while let Some(a) = stack.pop() {
            if nodes[a].1 {
                ground_members += 1;
            }
            for b in 0..n {
                if !seen[b] && a != b && linked(a, b) {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        if ground_members > 0 {
            sizes.push(ground_members);
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Reference classic-boids step written from the update rule alone:
/// velocity plus weighted cohesion, alignment and separation, cruise at the
/// maximum speed, then move and reflect off the walls.
pub fn reference_boids_step(agents: &[(f64, f64, f64, f64)], c: &ScenarioConfig) -> Vec<(f64, f64, f64, f64)> {
    let wc = c.ground_weights.cohesion.unwrap();
    let wa = c.ground_weights.alignment.unwrap();
    let ws = c.ground_weights.separation;
    let sd = c.ground_safe_distance;
    agents
        .iter()
        .enumerate()
        .map(|(i, &(x, y, vx, vy))| {
            let (mut sx, mut sy, mut svx, mut svy, mut k) = (0.0, 0.0, 0.0, 0.0, 0.0);
            let (mut rx, mut ry) = (0.0, 0.0);
            for (j, &(ox, oy, ovx, ovy)) in agents.iter().enumerate() {
                let d = ((ox - x).powi(2) + (oy - y).powi(2)).sqrt();
                if i == j || d >= c.vision_distance {
                    continue;
                }
                sx += ox;
                sy += oy;
                svx += ovx;
                svy += ovy;
                k += 1.0;
                if d < sd {
                    assert!(d > 0.0, "oracle does not model coincident agents");
                    rx += (x - ox) / d * (sd - d) / sd;
                    ry += (y - oy) / d * (sd - d) / sd;
                }
            }
            let (mut nvx, mut nvy) = (vx, vy);
            if k > 0.0 {
                nvx += wc * (sx / k - x) + wa * (svx / k - vx) + ws * rx;
                nvy += wc * (sy / k - y) + wa * (svy / k - vy) + ws * ry;
            }
            let speed = (nvx * nvx + nvy * nvy).sqrt();
            nvx *= c.ground_max_speed / speed;
            nvy *= c.ground_max_speed / speed;
            let (mut px, mut py) = (x + nvx, y + nvy);
            if px < 0.0 {
                px = -px;
                nvx = -nvx;
            } else if px > c.env.width {
                px = 2.0 * c.env.width - px;
                nvx = -nvx;
            }
            if py < 0.0 {
                py = -py;
                nvy = -nvy;
            } else if py > c.env.height {
                py = 2.0 * c.env.height - py;
                nvy = -nvy;
            }
            (px, py, nvx, nvy)
        })
        .collect()
}
