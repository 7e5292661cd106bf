//! The three boids steering terms, shared by the ground and air swarms.
//!
//! Forces are raw vectors; callers apply their own weights.

use crate::geom::Vec2;

/// Centre of mass of the neighbours minus `pos`. Zero with no neighbours.
pub fn cohesion<I: IntoIterator<Item = Vec2>>(pos: Vec2, neighbor_positions: I) -> Vec2 {
    let mut it = neighbor_positions.into_iter().peekable();
    if it.peek().is_none() {
        return Vec2::ZERO;
    }
    Vec2::mean(it) - pos
}

/// Mean neighbour velocity minus `vel`. Zero with no neighbours.
pub fn alignment<I: IntoIterator<Item = Vec2>>(vel: Vec2, neighbor_velocities: I) -> Vec2 {
    let mut it = neighbor_velocities.into_iter().peekable();
    if it.peek().is_none() {
        return Vec2::ZERO;
    }
    Vec2::mean(it) - vel
}

/// Repulsion from every neighbour closer than `safe_distance`.
///
/// Each violator contributes the unit vector pointing from it to `pos`,
/// scaled by `(safe_distance - dist) / safe_distance`. A neighbour sitting
/// exactly on `pos` contributes `coincident(neighbor_id)`, which should be a
/// unit vector.
pub fn separation<I, F>(pos: Vec2, neighbors: I, safe_distance: f64, mut coincident: F) -> Vec2
where
    I: IntoIterator<Item = (usize, Vec2)>,
    F: FnMut(usize) -> Vec2,
{
    let mut force = Vec2::ZERO;
    for (id, other) in neighbors {
        let away = pos - other;
        let dist = away.norm();
        if dist >= safe_distance {
            continue;
        }
        if dist == 0.0 {
            force += coincident(id);
        } else {
            force += away / dist * ((safe_distance - dist) / safe_distance);
        }
    }
    force
}
