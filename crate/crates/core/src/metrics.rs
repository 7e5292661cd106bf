//! Survivability metrics: coverage, relay-graph connectivity and the
//! timeline summaries built from them.
//!
//! Ground agents never link to each other directly unless a ground link range
//! is configured; all relaying goes through UAVs. A ground agent outside every
//! UAV's range is its own singleton component, so a perfectly connected
//! swarm scores exactly 1.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Vec2;

/// Largest-component thresholds (in agents) reported by [`timeline_summaries`].
pub const LARGEST_THRESHOLDS: [usize; 2] = [70, 90];
/// Component-count ceiling reported by [`timeline_summaries`].
pub const COMPONENT_CEILING: usize = 20;

/// Number of ground agents within `range` of at least one UAV.
pub fn coverage(ground: &[Vec2], uavs: &[Vec2], range: f64) -> usize {
    let range_sq = range * range;
    ground
        .iter()
        .filter(|g| uavs.iter().any(|u| u.distance_sq(**g) < range_sq))
        .count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Node {
    Ground(usize),
    Uav(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommGraph {
    pub ground_count: usize,
    pub uav_count: usize,
    pub edges: Vec<(Node, Node)>,
}

impl CommGraph {
    fn index(&self, n: Node) -> usize {
        match n {
            Node::Ground(i) => i,
            Node::Uav(i) => self.ground_count + i,
        }
    }

    pub fn has_edge(&self, a: Node, b: Node) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }
}

/// Relay graph: ground-UAV and UAV-UAV edges wherever `dist < range`, plus
/// ground-ground edges under `ground_link_range` when one is given.
pub fn build_comm_graph(
    ground: &[Vec2],
    uavs: &[Vec2],
    range: f64,
    ground_link_range: Option<f64>,
) -> CommGraph {
    let range_sq = range * range;
    let mut edges = Vec::new();
    for (u, up) in uavs.iter().enumerate() {
        for (g, gp) in ground.iter().enumerate() {
            if up.distance_sq(*gp) < range_sq {
                edges.push((Node::Ground(g), Node::Uav(u)));
            }
        }
        for (v, vp) in uavs.iter().enumerate().skip(u + 1) {
            if up.distance_sq(*vp) < range_sq {
                edges.push((Node::Uav(u), Node::Uav(v)));
            }
        }
    }
    if let Some(link) = ground_link_range {
        let link_sq = link * link;
        for (a, ap) in ground.iter().enumerate() {
            for (b, bp) in ground.iter().enumerate().skip(a + 1) {
                if ap.distance_sq(*bp) < link_sq {
                    edges.push((Node::Ground(a), Node::Ground(b)));
                }
            }
        }
    }
    CommGraph {
        ground_count: ground.len(),
        uav_count: uavs.len(),
        edges,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    /// Components containing at least one ground agent.
    pub count: usize,
    /// Ground agents per component, largest first.
    pub sizes: Vec<usize>,
}

pub fn connectivity(graph: &CommGraph) -> Connectivity {
    let total = graph.ground_count + graph.uav_count;
    let mut sets = UnionFind::<usize>::new(total);
    for &(a, b) in &graph.edges {
        sets.union(graph.index(a), graph.index(b));
    }
    let mut per_root: BTreeMap<usize, usize> = BTreeMap::new();
    for g in 0..graph.ground_count {
        *per_root.entry(sets.find_mut(g)).or_default() += 1;
    }
    let mut sizes: Vec<usize> = per_root.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Connectivity {
        count: sizes.len(),
        sizes,
    }
}

/// Metrics for one simulation step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub step: usize,
    pub coverage: usize,
    pub components: usize,
    /// Three largest component sizes, descending, zero padded.
    pub top: [usize; 3],
}

impl MetricsRecord {
    pub fn measure(
        step: usize,
        ground: &[Vec2],
        uavs: &[Vec2],
        range: f64,
        ground_link_range: Option<f64>,
    ) -> Self {
        let conn = connectivity(&build_comm_graph(ground, uavs, range, ground_link_range));
        let mut top = [0; 3];
        for (slot, size) in top.iter_mut().zip(&conn.sizes) {
            *slot = *size;
        }
        Self {
            step,
            coverage: coverage(ground, uavs, range),
            components: conn.count,
            top,
        }
    }

    pub fn largest(&self) -> usize {
        self.top[0]
    }
}

/// Time summaries of a record stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimelineSummary {
    pub steps: usize,
    /// Fraction of steps spent at each observed component count.
    pub component_frequency: BTreeMap<usize, f64>,
    /// Fraction of steps spent at each observed largest-component size.
    pub largest_frequency: BTreeMap<usize, f64>,
    /// Fraction of steps with exactly one component.
    pub connected_fraction: f64,
    /// Fraction of steps whose largest component holds at least N agents.
    pub largest_at_least: BTreeMap<usize, f64>,
    /// Fraction of steps with fewer than [`COMPONENT_CEILING`] components.
    pub components_below_ceiling: f64,
    pub mean_components: f64,
    pub mean_coverage: f64,
}

pub fn timeline_summaries(records: &[MetricsRecord]) -> Result<TimelineSummary> {
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    let n = records.len() as f64;
    let frequency = |key: fn(&MetricsRecord) -> usize| {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for r in records {
            *counts.entry(key(r)).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|(k, c)| (k, c as f64 / n))
            .collect::<BTreeMap<_, _>>()
    };
    let fraction = |pred: &dyn Fn(&MetricsRecord) -> bool| records.iter().filter(|r| pred(r)).count() as f64 / n;
    Ok(TimelineSummary {
        steps: records.len(),
        component_frequency: frequency(|r| r.components),
        largest_frequency: frequency(|r| r.largest()),
        connected_fraction: fraction(&|r| r.components == 1),
        largest_at_least: LARGEST_THRESHOLDS
            .iter()
            .map(|&t| (t, fraction(&|r| r.largest() >= t)))
            .collect(),
        components_below_ceiling: fraction(&|r| r.components < COMPONENT_CEILING),
        mean_components: records.iter().map(|r| r.components as f64).sum::<f64>() / n,
        mean_coverage: records.iter().map(|r| r.coverage as f64).sum::<f64>() / n,
    })
}
