//! Per-UAV real-time genetic algorithm.
//!
//! Each UAV owns one [`GaInstance`]. Exactly one genome of its population is
//! active and drives the real UAV; every other genome flies a virtual
//! "shadow" copy of the UAV through the world the real UAV observed. Every
//! `window` steps the population is scored on those shadow trajectories plus
//! a one-window-ahead prediction, bred, and the best genome becomes active.
//!
//! The GA only ever sees what its UAV sensed locally: ground agents within
//! range and the broadcast state of one-hop neighbour UAVs.

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::geom::{bounce_reflect, EnvBounds, Vec2};
use crate::ground::GroundAgent;
use crate::rng::RngStream;
use crate::uav::{count_covered, step_uav, AirView, UavParams};

pub const GENE_COUNT: usize = 6;

/// Inclusive bounds per gene, in chromosome order
/// `(speed, W_GA, W_GC, W_AA, W_AC, W_AS)`.
pub const GENE_BOUNDS: [(f64, f64); GENE_COUNT] = [
    (0.0, 5.0),
    (0.0, 0.5),
    (0.0, 0.5),
    (0.0, 0.5),
    (0.0, 0.5),
    (0.5, 2.0),
];

/// UAV chromosome: a speed limit and the five force weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Genome {
    pub speed: f64,
    pub ground_alignment: f64,
    pub ground_cohesion: f64,
    pub uav_alignment: f64,
    pub uav_cohesion: f64,
    pub uav_separation: f64,
}

impl Genome {
    pub fn genes(&self) -> [f64; GENE_COUNT] {
        [
            self.speed,
            self.ground_alignment,
            self.ground_cohesion,
            self.uav_alignment,
            self.uav_cohesion,
            self.uav_separation,
        ]
    }

    pub fn from_genes(g: [f64; GENE_COUNT]) -> Self {
        Self {
            speed: g[0],
            ground_alignment: g[1],
            ground_cohesion: g[2],
            uav_alignment: g[3],
            uav_cohesion: g[4],
            uav_separation: g[5],
        }
    }

    pub fn random(rng: &mut RngStream) -> Self {
        Self::from_genes(GENE_BOUNDS.map(|(lo, hi)| rng.next_uniform(lo, hi)))
    }

    pub fn within_bounds(&self) -> bool {
        self.genes()
            .iter()
            .zip(GENE_BOUNDS)
            .all(|(v, (lo, hi))| (lo..=hi).contains(v))
    }
}

/// When the active genome may change.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActiveSwap {
    /// Only at the window boundary, after breeding.
    #[default]
    WindowEnd,
    /// Also between boundaries: after every observed step the genome with
    /// the best partial fitness so far takes over.
    EveryStep,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaParams {
    pub population_size: usize,
    /// Steps per window; also the history span and prediction horizon.
    pub window: usize,
    pub tournament_size: usize,
    pub elite_count: usize,
    pub crossover_prob: f64,
    /// Per-gene resampling probability.
    pub mutation_prob: f64,
    /// `false` freezes every UAV on its initial active genome.
    pub enabled: bool,
    pub active_swap: ActiveSwap,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            population_size: 50,
            window: 20,
            tournament_size: 3,
            elite_count: 2,
            crossover_prob: 0.9,
            mutation_prob: 0.1,
            enabled: true,
            active_swap: ActiveSwap::WindowEnd,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let n = self.population_size;
        if n < 2 {
            return Err(ConfigError::out_of_range("ga.population", n as f64, "must be >= 2"));
        }
        if self.window == 0 {
            return Err(ConfigError::out_of_range("ga.window", 0.0, "must be >= 1"));
        }
        if !(1..=n).contains(&self.tournament_size) {
            return Err(ConfigError::out_of_range(
                "ga.tournament",
                self.tournament_size as f64,
                "must lie in [1, population]",
            ));
        }
        if self.elite_count >= n {
            return Err(ConfigError::out_of_range(
                "ga.elites",
                self.elite_count as f64,
                "must be < population",
            ));
        }
        for (key, p) in [("ga.crossover", self.crossover_prob), ("ga.mutation", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(ConfigError::out_of_range(key, p, "must lie in [0, 1]"));
            }
        }
        Ok(())
    }
}

/// What a UAV sensed at the start of one step.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Observation {
    /// Ground agents inside the UAV's range.
    pub ground: Vec<GroundAgent>,
    /// One-hop neighbour UAVs with their broadcast coverage counts.
    pub neighbors: Vec<AirView>,
}

impl Observation {
    /// Coverage signal a UAV at `pos` would report against this observation.
    pub fn signal_at(&self, id: usize, pos: Vec2, range: f64) -> usize {
        let own = count_covered(pos, &self.ground, range);
        let range_sq = range * range;
        let linked: Vec<usize> = self
            .neighbors
            .iter()
            .filter(|u| u.id != id && u.pos.distance_sq(pos) < range_sq)
            .map(|u| u.covered)
            .collect();
        local_coverage_signal(own, &linked)
    }
}

/// Own coverage plus the plain sum of one-hop neighbours' coverage. Ground
/// agents seen by several UAVs are counted once per UAV.
pub fn local_coverage_signal(own: usize, neighbor_counts: &[usize]) -> usize {
    own + neighbor_counts.iter().sum::<usize>()
}

/// Sum of the historic window signals plus the predicted signal.
pub fn fitness(history: &[usize], predicted: usize) -> f64 {
    (history.iter().sum::<usize>() + predicted) as f64
}

/// Identity and motion limits a GA needs to fly its shadows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowContext {
    pub uav_id: usize,
    pub uav: UavParams,
}

impl ShadowContext {
    pub fn env(&self) -> EnvBounds {
        self.uav.env
    }
}

/// One virtual step for a shadow genome against an observed world.
pub fn shadow_step(
    genome: &Genome,
    pos: Vec2,
    vel: Vec2,
    world: &Observation,
    ctx: &ShadowContext,
) -> (Vec2, Vec2) {
    step_uav(ctx.uav_id, pos, vel, genome, &world.neighbors, &world.ground, &ctx.uav)
}

/// Ground positions extrapolated `horizon` steps along their velocities,
/// reflected at the walls.
pub fn predict_ground(ground: &[GroundAgent], horizon: usize, env: EnvBounds) -> Vec<GroundAgent> {
    ground
        .iter()
        .map(|g| {
            let (pos, vel) = bounce_reflect(g.pos, g.vel * horizon as f64, env);
            GroundAgent {
                pos,
                vel: vel / horizon.max(1) as f64,
                ..*g
            }
        })
        .collect()
}

/// Signal one window ahead: the candidate is flown `horizon` steps against
/// the last observed world, then scored against the extrapolated ground.
pub fn predicted_signal(
    genome: &Genome,
    pos: Vec2,
    vel: Vec2,
    last: &Observation,
    horizon: usize,
    ctx: &ShadowContext,
) -> usize {
    let (mut p, mut v) = (pos, vel);
    for _ in 0..horizon {
        (p, v) = shadow_step(genome, p, v, last, ctx);
    }
    let future = Observation {
        ground: predict_ground(&last.ground, horizon, ctx.env()),
        neighbors: last.neighbors.clone(),
    };
    future.signal_at(ctx.uav_id, p, ctx.uav.range)
}

/// Random population within gene bounds plus a uniformly chosen active index.
pub fn init_population(params: &GaParams, rng: &mut RngStream) -> (Vec<Genome>, usize) {
    let population = (0..params.population_size).map(|_| Genome::random(rng)).collect();
    let active = rng.next_index(params.population_size);
    (population, active)
}

/// Index of the fittest of `k` distinct uniformly sampled members. Ties go to
/// the lower population index.
pub fn tournament_select(fitnesses: &[f64], k: usize, rng: &mut RngStream) -> usize {
    rng.sample_distinct(fitnesses.len(), k)
        .into_iter()
        .reduce(|best, i| {
            if fitnesses[i] > fitnesses[best] || (fitnesses[i] == fitnesses[best] && i < best) {
                i
            } else {
                best
            }
        })
        .expect("tournament of size >= 1")
}

/// Children that take `a`'s genes before `cut` and `b`'s from `cut` on, and
/// the mirror image.
pub fn crossover_at(a: &Genome, b: &Genome, cut: usize) -> (Genome, Genome) {
    let (ga, gb) = (a.genes(), b.genes());
    let mut c1 = ga;
    let mut c2 = gb;
    c1[cut..].copy_from_slice(&gb[cut..]);
    c2[cut..].copy_from_slice(&ga[cut..]);
    (Genome::from_genes(c1), Genome::from_genes(c2))
}

/// One-point crossover with the cut drawn uniformly from `1..=5`.
pub fn one_point_crossover(a: &Genome, b: &Genome, rng: &mut RngStream) -> (Genome, Genome) {
    let cut = 1 + rng.next_index(GENE_COUNT - 1);
    crossover_at(a, b, cut)
}

/// Resamples each gene within its bounds with probability `prob`.
pub fn mutate(g: &Genome, prob: f64, rng: &mut RngStream) -> Genome {
    let mut genes = g.genes();
    for (gene, (lo, hi)) in genes.iter_mut().zip(GENE_BOUNDS) {
        if rng.chance(prob) {
            *gene = rng.next_uniform(lo, hi);
        }
    }
    Genome::from_genes(genes)
}

/// Population indices sorted best first; equal fitness keeps index order.
fn ranking(fitnesses: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..fitnesses.len()).collect();
    order.sort_by(|&a, &b| fitnesses[b].total_cmp(&fitnesses[a]).then(a.cmp(&b)));
    order
}

/// Everything observed during one window, enough to replay any genome.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WindowRecord {
    pub start_pos: Vec2,
    pub start_vel: Vec2,
    /// Signal at the window's opening boundary, when one was measured.
    pub start_signal: Option<usize>,
    pub observations: Vec<Observation>,
}

/// Signal trace of `genome` replayed through `record` from its start state.
pub fn replay_trace(genome: &Genome, record: &WindowRecord, ctx: &ShadowContext) -> (Vec<usize>, Vec2, Vec2) {
    let mut trace: Vec<usize> = record.start_signal.into_iter().collect();
    let (mut pos, mut vel) = (record.start_pos, record.start_vel);
    for obs in &record.observations {
        (pos, vel) = shadow_step(genome, pos, vel, obs, ctx);
        trace.push(obs.signal_at(ctx.uav_id, pos, ctx.uav.range));
    }
    (trace, pos, vel)
}

/// Fitness of `genome` on a recorded window, computed from scratch.
pub fn evaluate_on_window(
    genome: &Genome,
    record: &WindowRecord,
    horizon: usize,
    ctx: &ShadowContext,
) -> f64 {
    let (trace, pos, vel) = replay_trace(genome, record, ctx);
    let predicted = record
        .observations
        .last()
        .map_or(0, |last| predicted_signal(genome, pos, vel, last, horizon, ctx));
    fitness(&trace, predicted)
}

#[derive(Debug, Clone, PartialEq)]
struct Shadow {
    pos: Vec2,
    vel: Vec2,
    trace: Vec<usize>,
}

/// Summary of one generation.
#[derive(Debug, Clone, PartialEq)]
pub struct Generation {
    pub fitnesses: Vec<f64>,
    pub best_fitness: f64,
    /// Old-population index of the genome that became active.
    pub promoted: usize,
}

#[derive(Debug, Clone)]
pub struct GaInstance {
    params: GaParams,
    population: Vec<Genome>,
    active: usize,
    shadows: Vec<Shadow>,
    window: WindowRecord,
    rng: RngStream,
    generation: usize,
}

impl GaInstance {
    pub fn new(params: GaParams, mut rng: RngStream, pos: Vec2, vel: Vec2) -> Self {
        let (population, active) = init_population(&params, &mut rng);
        let mut ga = Self {
            params,
            population,
            active,
            shadows: Vec::new(),
            window: WindowRecord::default(),
            rng,
            generation: 0,
        };
        ga.reset_shadows(pos, vel, None);
        ga
    }

    pub fn params(&self) -> &GaParams {
        &self.params
    }

    pub fn population(&self) -> &[Genome] {
        &self.population
    }

    pub fn active_index(&self) -> usize {
        self.active
    }

    pub fn active(&self) -> &Genome {
        &self.population[self.active]
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn shadow_positions(&self) -> Vec<Vec2> {
        self.shadows.iter().map(|s| s.pos).collect()
    }

    /// Per-genome signal traces accumulated in the current window.
    pub fn traces(&self) -> Vec<&[usize]> {
        self.shadows.iter().map(|s| s.trace.as_slice()).collect()
    }

    pub fn window_record(&self) -> &WindowRecord {
        &self.window
    }

    /// True once a full window of observations has been recorded.
    pub fn window_complete(&self) -> bool {
        self.window.observations.len() >= self.params.window
    }

    /// Flies every shadow one step through `obs` and records the step.
    pub fn observe(&mut self, obs: Observation, ctx: &ShadowContext) {
        for (genome, shadow) in self.population.iter().zip(self.shadows.iter_mut()) {
            let (pos, vel) = shadow_step(genome, shadow.pos, shadow.vel, &obs, ctx);
            shadow.pos = pos;
            shadow.vel = vel;
            shadow.trace.push(obs.signal_at(ctx.uav_id, pos, ctx.uav.range));
        }
        self.window.observations.push(obs);
    }

    /// Fitness of every genome from its shadow trace and prediction.
    pub fn fitnesses(&self, ctx: &ShadowContext) -> Vec<f64> {
        let last = self.window.observations.last();
        self.population
            .iter()
            .zip(&self.shadows)
            .map(|(genome, s)| {
                let predicted = last.map_or(0, |obs| {
                    predicted_signal(genome, s.pos, s.vel, obs, self.params.window, ctx)
                });
                fitness(&s.trace, predicted)
            })
            .collect()
    }

    /// Makes the genome with the best fitness on the partial window active.
    /// Ties keep the lower index.
    pub fn reselect_active(&mut self, ctx: &ShadowContext) {
        self.active = ranking(&self.fitnesses(ctx))[0];
    }

    /// Closes the current window: scores, breeds, promotes the best genome
    /// and restarts all shadows from the real UAV state.
    pub fn evolve_window(&mut self, pos: Vec2, vel: Vec2, ctx: &ShadowContext) -> Generation {
        let fitnesses = self.fitnesses(ctx);
        let closing_signal = self.shadows[self.active].trace.last().copied();
        let generation = self.breed(fitnesses);
        self.reset_shadows(pos, vel, closing_signal);
        generation
    }

    /// One generation scored by replaying every genome through a fixed
    /// record. Shadows restart from the record's start state.
    pub fn evolve_frozen(&mut self, record: &WindowRecord, ctx: &ShadowContext) -> Generation {
        let fitnesses: Vec<f64> = self
            .population
            .iter()
            .map(|g| evaluate_on_window(g, record, self.params.window, ctx))
            .collect();
        let generation = self.breed(fitnesses);
        self.reset_shadows(record.start_pos, record.start_vel, record.start_signal);
        generation
    }

    fn breed(&mut self, fitnesses: Vec<f64>) -> Generation {
        let order = ranking(&fitnesses);
        let n = self.population.len();
        let mut next: Vec<Genome> = order[..self.params.elite_count]
            .iter()
            .map(|&i| self.population[i])
            .collect();
        while next.len() < n {
            let a = self.population[tournament_select(&fitnesses, self.params.tournament_size, &mut self.rng)];
            let b = self.population[tournament_select(&fitnesses, self.params.tournament_size, &mut self.rng)];
            let (c1, c2) = if self.rng.chance(self.params.crossover_prob) {
                one_point_crossover(&a, &b, &mut self.rng)
            } else {
                (a, b)
            };
            next.push(mutate(&c1, self.params.mutation_prob, &mut self.rng));
            if next.len() < n {
                next.push(mutate(&c2, self.params.mutation_prob, &mut self.rng));
            }
        }
        self.population = next;
        // Elites lead the new population, so index 0 is the best survivor.
        self.active = 0;
        self.generation += 1;
        Generation {
            best_fitness: fitnesses[order[0]],
            promoted: order[0],
            fitnesses,
        }
    }

    fn reset_shadows(&mut self, pos: Vec2, vel: Vec2, start_signal: Option<usize>) {
        let trace: Vec<usize> = start_signal.into_iter().collect();
        self.shadows = vec![
            Shadow {
                pos,
                vel,
                trace: trace.clone(),
            };
            self.population.len()
        ];
        self.window = WindowRecord {
            start_pos: pos,
            start_vel: vel,
            start_signal,
            observations: Vec::with_capacity(self.params.window),
        };
    }
}
