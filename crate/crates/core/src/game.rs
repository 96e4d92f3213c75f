//! The payoff game: walk from `start` until `target`, collecting
//! `λ_k φ_k(w) / deg(w)` at every vertex `w ≠ target` visited (the start
//! included). Its expected payoff is `φ_k(start) − φ_k(target)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hitting::{solve_absorbing, target_mask};
use crate::spectral::EigenPair;

/// Default per-sample step cap.
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000_000;
const SOLVE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub struct GameSpec<'a> {
    graph: &'a Graph,
    pair: &'a EigenPair,
    start: usize,
    target: usize,
}

impl<'a> GameSpec<'a> {
    pub fn new(graph: &'a Graph, pair: &'a EigenPair, start: usize, target: usize) -> Result<Self> {
        graph.check_vertex(start)?;
        graph.check_vertex(target)?;
        if pair.phi.len() != graph.n() {
            return Err(Error::InvalidArgument(format!(
                "eigenvector has {} entries for a graph on {} vertices",
                pair.phi.len(),
                graph.n()
            )));
        }
        graph.require_connected()?;
        Ok(GameSpec {
            graph,
            pair,
            start,
            target,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn pair(&self) -> &EigenPair {
        self.pair
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Payoff collected on a visit to `w`.
    fn reward(&self, w: usize) -> f64 {
        self.pair.lambda * self.pair.phi[w] / self.graph.degree(w) as f64
    }

    /// `φ(start) − φ(target)`, what the game's expectation should equal.
    pub fn predicted(&self) -> f64 {
        self.pair.phi[self.start] - self.pair.phi[self.target]
    }
}

/// Expected payoff from the absorbing system
/// `deg(w)E(w) − Σ_{u∼w, u≠target} E(u) = λ φ(w)`, `E(target) = 0`.
pub fn exact_payoff(spec: &GameSpec<'_>) -> Result<f64> {
    payoff_vector(spec).map(|e| e[spec.start])
}

/// Expected payoff from every start vertex toward `spec.target`.
pub fn payoff_vector(spec: &GameSpec<'_>) -> Result<Vec<f64>> {
    let g = spec.graph;
    let mask = target_mask(g, &[spec.target])?;
    solve_absorbing(g, &mask, |w| spec.reward(w) * g.degree(w) as f64, SOLVE_TOL)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PayoffEstimate {
    pub exact: f64,
    pub mc_mean: f64,
    /// Sample standard deviation over `√samples`.
    pub mc_stderr: f64,
    pub samples: u64,
    pub seed: u64,
    /// Some walk hit the step cap and contributed a partial payoff.
    pub max_steps_hit: bool,
    pub truncated_samples: u64,
}

/// RNG for one sample: the ChaCha8 keystream for `seed`, on stream
/// `sample`. Independent of how samples are scheduled.
pub fn sample_rng(seed: u64, sample: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    rng
}

fn play_once(
    spec: &GameSpec<'_>,
    rewards: &[f64],
    mut rng: ChaCha8Rng,
    max_steps: u64,
) -> (f64, bool) {
    let g = spec.graph;
    let mut payoff = 0.0;
    let mut cur = spec.start;
    let mut steps = 0u64;
    while cur != spec.target {
        if steps >= max_steps {
            return (payoff, true);
        }
        payoff += rewards[cur];
        let nb = g.neighbors(cur);
        cur = nb[rng.gen_range(0..nb.len())];
        steps += 1;
    }
    (payoff, false)
}

/// Neumaier summation.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for x in values {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
    }
    sum + comp
}

/// Monte-Carlo estimate of the expected payoff. Samples run in parallel on
/// the current rayon pool; the result is bit-identical to a sequential run.
pub fn simulate_payoff(
    spec: &GameSpec<'_>,
    samples: u64,
    seed: u64,
    max_steps: u64,
) -> Result<PayoffEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "at least one sample is required".into(),
        ));
    }
    let exact = exact_payoff(spec)?;
    let rewards: Vec<f64> = (0..spec.graph.n()).map(|w| spec.reward(w)).collect();
    let outcomes: Vec<(f64, bool)> = (0..samples)
        .into_par_iter()
        .map(|i| play_once(spec, &rewards, sample_rng(seed, i), max_steps))
        .collect();

    let count = samples as f64;
    let mean = compensated_sum(outcomes.iter().map(|o| o.0)) / count;
    let stderr = if samples > 1 {
        let var = compensated_sum(outcomes.iter().map(|o| (o.0 - mean).powi(2))) / (count - 1.0);
        (var / count).sqrt()
    } else {
        0.0
    };
    let truncated = outcomes.iter().filter(|o| o.1).count() as u64;
    Ok(PayoffEstimate {
        exact,
        mc_mean: mean,
        mc_stderr: stderr,
        samples,
        seed,
        max_steps_hit: truncated > 0,
        truncated_samples: truncated,
    })
}

/// Expected number of visits to each vertex before absorption, counting
/// the visit at time zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EncounterProfile {
    pub start: usize,
    pub target: usize,
    pub visits: Vec<f64>,
}

/// Row `start` of the fundamental matrix `(I − P_NN)⁻¹ = L_NN⁻¹ D`.
pub fn expected_encounters(g: &Graph, target: usize, start: usize) -> Result<EncounterProfile> {
    g.check_vertex(start)?;
    let mask = target_mask(g, &[target])?;
    let mut visits = if start == target {
        vec![0.0; g.n()]
    } else {
        solve_absorbing(g, &mask, |v| f64::from(u8::from(v == start)), SOLVE_TOL)?
    };
    for (v, x) in visits.iter_mut().enumerate() {
        *x *= g.degree(v) as f64;
    }
    Ok(EncounterProfile {
        start,
        target,
        visits,
    })
}
