//! Seeded random streams.
//!
//! Every agent owns a stream keyed by `(scenario seed, role, agent id)`. The
//! generator is ChaCha8 with the key taken from the seed and the stream
//! selected by the ChaCha stream counter, so sequences are identical across
//! platforms and never depend on the order in which agents are processed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::Vec2;

/// What a stream is used for. Distinct roles never share a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamRole {
    /// Scenario-level draws (initial ground placement).
    Scenario = 0,
    /// A ground agent's own draws (random walk drive, tie-breaks).
    Ground = 1,
    /// A UAV's genetic algorithm.
    Genetic = 2,
}

#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    /// Stream for agent `id` acting in `role`.
    pub fn for_agent(seed: u64, role: StreamRole, id: usize) -> Self {
        Self::new(seed, ((role as u64) << 48) | id as u64)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform draw in `[lo, hi)`; returns `lo` for a degenerate range.
    pub fn next_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        debug_assert!(lo <= hi);
        if lo >= hi {
            return lo;
        }
        let u: f64 = self.rng.random();
        let v = lo + (hi - lo) * u;
        // Rounding can land exactly on `hi` for narrow ranges.
        if v < hi {
            v
        } else {
            lo
        }
    }

    /// Uniform index in `0..n`. `n` must be non-zero.
    pub fn next_index(&mut self, n: usize) -> usize {
        assert!(n > 0, "next_index on empty range");
        self.rng.random_range(0..n)
    }

    /// `k` distinct indices from `0..n`, in draw order.
    pub fn sample_distinct(&mut self, n: usize, k: usize) -> Vec<usize> {
        rand::seq::index::sample(&mut self.rng, n, k.min(n)).into_vec()
    }

    /// Bernoulli trial with success probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        if p <= 0.0 {
            false
        } else if p >= 1.0 {
            true
        } else {
            self.next_uniform(0.0, 1.0) < p
        }
    }

    /// Unit vector with uniformly distributed heading.
    pub fn unit_vector(&mut self) -> Vec2 {
        Vec2::from_angle(self.next_uniform(0.0, std::f64::consts::TAU))
    }
}
